#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "qmotif/common.hpp"
#include "qmotif/graph.hpp"
#include "qmotif/statevector.hpp"

namespace qmotif {

/// Qubit assignment of a circuit plan. Single-register plans (neighborhood
/// and state-preparation circuits) use only the column register plus its
/// ancilla. Adjacency plans hold |c⟩ in the column register (low bits) and
/// |r⟩ in the row register, so a basis state |r⟩|c⟩ sits at index r·2ⁿ + c,
/// with the two ancillas above the working qubits.
struct RegisterLayout {
  int num_qubits = 0;
  int working_bits = 0;  // width n of each working register
  int col_offset = 0;    // register written by the builders (|c⟩ or |j⟩)
  int row_offset = -1;   // |r⟩ register; -1 when absent
  int col_ancilla = -1;  // ancilla flipped alongside the column register
  int row_ancilla = -1;  // ancilla of the row register; -1 when absent

  bool is_ancilla(int qubit) const { return qubit == col_ancilla || qubit == row_ancilla; }

  static RegisterLayout single(int working_bits) {
    RegisterLayout layout;
    layout.num_qubits = working_bits + 1;
    layout.working_bits = working_bits;
    layout.col_offset = 0;
    layout.col_ancilla = working_bits;
    return layout;
  }

  static RegisterLayout pair(int working_bits) {
    RegisterLayout layout;
    layout.num_qubits = 2 * working_bits + 2;
    layout.working_bits = working_bits;
    layout.col_offset = 0;
    layout.row_offset = working_bits;
    layout.row_ancilla = 2 * working_bits;
    layout.col_ancilla = 2 * working_bits + 1;
    return layout;
  }
};

/// One circuit operation. Unitary matrices are validated on construction;
/// measurement and postselection reference ancilla qubits only.
struct GateOp {
  enum class Kind { controlled_unitary, mcx, measure, postselect };

  Kind kind = Kind::mcx;
  Mat2 unitary{};  // controlled_unitary only
  int target = -1;
  ControlPattern controls;
  int outcome = -1;  // postselect only
  std::string label;

  static GateOp controlled_unitary(Mat2 u, int target, ControlPattern controls, std::string label) {
    if (u.unitarity_defect() > 1e-10)
      throw std::invalid_argument("GateOp: matrix is not unitary within 1e-10");
    GateOp op;
    op.kind = Kind::controlled_unitary;
    op.unitary = u;
    op.target = target;
    op.controls = std::move(controls);
    op.label = std::move(label);
    return op;
  }

  static GateOp mcx_gate(ControlPattern controls, int target, std::string label) {
    GateOp op;
    op.kind = Kind::mcx;
    op.target = target;
    op.controls = std::move(controls);
    op.label = std::move(label);
    return op;
  }

  static GateOp postselect_gate(int qubit, int outcome) {
    GateOp op;
    op.kind = Kind::postselect;
    op.target = qubit;
    op.outcome = outcome;
    op.label = "postselect";
    return op;
  }
};

/// Ordered gate list over a fixed register layout.
struct CircuitPlan {
  RegisterLayout layout;
  std::vector<GateOp> ops;
  std::string name;
};

/// Gate tallies by category. MCX gates targeting an ancilla are the
/// multi-controlled Toffolis of the preparation algorithms and are keyed by
/// their control count; MCX gates targeting a working qubit are the CNOTs
/// (their single nominal control is the ancilla, plus any row-register
/// controls added when a subcircuit is embedded).
struct GateCounts {
  std::uint64_t controlled_2q = 0;
  std::map<int, std::uint64_t> toffoli_by_controls;
  std::uint64_t cnot = 0;

  std::uint64_t toffoli_total() const {
    std::uint64_t total = 0;
    for (const auto& [controls, count] : toffoli_by_controls) total += count;
    return total;
  }

  bool operator==(const GateCounts&) const = default;
};

namespace detail {

/// Common skeleton of the two preparation algorithms: transfer amplitude
/// `rotation` onto basis state |value⟩ of the working register while the
/// ancilla is |0⟩, then flip the ancilla on |value⟩. The rotation acts on the
/// lowest set bit of `value`; ancilla-controlled CNOTs build the remaining
/// bits and are undone after the Toffoli. `value` = 0 needs no rotation: the
/// caller emits only the zero-pattern Toffoli once all other amplitudes have
/// been transferred.
inline void emit_transfer_block(CircuitPlan& plan, std::uint64_t value, const Mat2& rotation,
                                const std::string& tag) {
  const RegisterLayout& reg = plan.layout;
  const int ancilla = reg.col_ancilla;
  const int low = std::countr_zero(value);
  plan.ops.push_back(GateOp::controlled_unitary(rotation, reg.col_offset + low,
                                                ControlPattern{{ancilla, 0}}, "G(" + tag + ")"));
  std::vector<int> other_bits;
  for (int l = low + 1; l < reg.working_bits; ++l)
    if ((value >> l) & 1) other_bits.push_back(l);
  for (int l : other_bits)
    plan.ops.push_back(GateOp::mcx_gate(ControlPattern{{ancilla, 0}}, reg.col_offset + l,
                                        "CX(" + tag + ")"));
  plan.ops.push_back(GateOp::mcx_gate(
      ControlPattern::basis(value, reg.working_bits, reg.col_offset), ancilla, "T(" + tag + ")"));
  for (int l : other_bits)
    plan.ops.push_back(GateOp::mcx_gate(ControlPattern{{ancilla, 0}}, reg.col_offset + l,
                                        "CX(" + tag + ")"));
}

inline void emit_zero_toffoli(CircuitPlan& plan, const std::string& tag) {
  plan.ops.push_back(GateOp::mcx_gate(
      ControlPattern::basis(0, plan.layout.working_bits, plan.layout.col_offset),
      plan.layout.col_ancilla, "T(" + tag + ")"));
}

}  // namespace detail

/// Circuit preparing the vertex neighborhood state: |0⟩|0ⁿ⟩ ↦
/// Σ_{c ∈ N(r)} (1/√d_r) |1⟩|c⟩ on ⌈log₂N⌉ working qubits plus one ancilla,
/// postselected on ancilla 1 (which succeeds with probability one).
/// Neighbors are processed in decreasing label order; neighbor c_j gets the
/// rotation with column (√((d-j-1)/(d-j)), √(1/(d-j))), so the j-th block
/// moves exactly 1/√d of amplitude onto |c_j⟩. Neighbor 0, necessarily last,
/// needs only the all-zero-controlled Toffoli.
inline CircuitPlan build_neighborhood_circuit(const Graph& g, int r) {
  const int d = g.degree(r);
  if (d == 0)
    throw std::invalid_argument("build_neighborhood_circuit: vertex " + std::to_string(r) +
                                " is isolated");
  const int n = ceil_log2(static_cast<std::uint64_t>(g.n_vertices()));
  CircuitPlan plan;
  plan.layout = RegisterLayout::single(n);
  plan.name = "neighborhood r=" + std::to_string(r);

  std::vector<int> nbrs = g.neighbors(r);  // ascending
  std::reverse(nbrs.begin(), nbrs.end());
  for (int j = 0; j < d; ++j) {
    const int c = nbrs[static_cast<std::size_t>(j)];
    const std::string tag = "r" + std::to_string(r) + ",c" + std::to_string(c);
    if (c == 0) {
      detail::emit_zero_toffoli(plan, tag);
      continue;
    }
    const double remaining = static_cast<double>(d - j);
    Mat2 u;
    u(0, 0) = u(1, 1) = Complex{std::sqrt((remaining - 1.0) / remaining), 0.0};
    u(1, 0) = Complex{std::sqrt(1.0 / remaining), 0.0};
    u(0, 1) = -u(1, 0);
    detail::emit_transfer_block(plan, static_cast<std::uint64_t>(c), u, tag);
  }
  plan.ops.push_back(GateOp::postselect_gate(plan.layout.col_ancilla, 1));
  return plan;
}

/// Circuit preparing an arbitrary state from its amplitude vector:
/// |0ⁿ⟩|0⟩ ↦ Σ_j α_j |1⟩|j⟩. Requires unit norm and α₀ real and
/// nonnegative. Indices are processed in ascending order, skipping exact
/// zeros; each index j ≥ 1 transfers amplitude α_j with the rotation
/// G_j = [[√(1-|α_j|²/D), -ᾱ_j/√D], [α_j/√D, √(1-|α_j|²/D)]] where
/// D = 1 - Σ_{1 ≤ l < j} |α_l|². Index 0 is handled by a final
/// all-zero-controlled Toffoli, emitted only when α₀ ≠ 0.
inline CircuitPlan build_state_prep_circuit(const std::vector<Complex>& alphas) {
  const std::size_t size = alphas.size();
  if (size < 2 || (size & (size - 1)) != 0)
    throw std::invalid_argument("build_state_prep_circuit: length must be a power of two >= 2");
  double norm = 0.0;
  for (const Complex& a : alphas) norm += std::norm(a);
  if (std::abs(norm - 1.0) > 1e-10)
    throw std::invalid_argument("build_state_prep_circuit: amplitudes are not unit norm");
  if (alphas[0].imag() != 0.0 || alphas[0].real() < 0.0)
    throw std::invalid_argument("build_state_prep_circuit: alpha_0 must be real and nonnegative");

  const int n = ceil_log2(size);
  CircuitPlan plan;
  plan.layout = RegisterLayout::single(n);
  plan.name = "state-prep n=" + std::to_string(n);

  double assigned = 0.0;  // Σ_{1 <= l < j} |α_l|²
  for (std::size_t j = 1; j < size; ++j) {
    const Complex a = alphas[j];
    if (a == Complex{}) continue;
    const double denom = std::max(1.0 - assigned, std::norm(a));
    const double root = std::sqrt(denom);
    Mat2 gate;
    gate(0, 0) = gate(1, 1) = Complex{std::sqrt(std::max(0.0, 1.0 - std::norm(a) / denom)), 0.0};
    gate(1, 0) = a / root;
    gate(0, 1) = -std::conj(a) / root;
    detail::emit_transfer_block(plan, j, gate, "j" + std::to_string(j));
    assigned += std::norm(a);
  }
  if (alphas[0] != Complex{}) detail::emit_zero_toffoli(plan, "j0");
  plan.ops.push_back(GateOp::postselect_gate(plan.layout.col_ancilla, 1));
  return plan;
}

/// State-preparation circuit specialized to the degree distribution state,
/// α_r = √(d_r / 2|E|).
inline CircuitPlan build_degree_circuit(const Graph& g) {
  if (g.edge_count() == 0) throw std::invalid_argument("build_degree_circuit: graph has no edges");
  const int n = ceil_log2(static_cast<std::uint64_t>(g.n_vertices()));
  std::vector<Complex> alphas(std::size_t{1} << n, Complex{});
  const double two_e = 2.0 * static_cast<double>(g.edge_count());
  for (int r = 0; r < g.n_vertices(); ++r)
    if (g.degree(r) > 0)
      alphas[static_cast<std::size_t>(r)] =
          Complex{std::sqrt(static_cast<double>(g.degree(r)) / two_e), 0.0};
  CircuitPlan plan = build_state_prep_circuit(alphas);
  plan.name = "degree";
  return plan;
}

/// Full adjacency-state preparation over two registers of ⌈log₂N⌉+1 qubits:
/// the degree circuit runs on the row register and is postselected; every
/// gate of each neighborhood circuit is then embedded on the column register
/// with its controls extended by the row-register pattern |r⟩; a final
/// postselection on the column ancilla completes |G⟩. Isolated vertices are
/// skipped: their row amplitude is zero, so the controlled block would be
/// unreachable. Both postselection probabilities equal one.
inline CircuitPlan build_adjacency_circuit(const Graph& g) {
  if (g.edge_count() == 0) throw std::invalid_argument("build_adjacency_circuit: graph has no edges");
  const int n = ceil_log2(static_cast<std::uint64_t>(g.n_vertices()));
  CircuitPlan plan;
  plan.layout = RegisterLayout::pair(n);
  plan.name = "adjacency";

  const CircuitPlan degree = build_degree_circuit(g);
  for (const GateOp& op : degree.ops) {
    if (op.kind == GateOp::Kind::postselect) continue;
    GateOp moved = op;
    moved.target = op.target == degree.layout.col_ancilla ? plan.layout.row_ancilla
                                                          : plan.layout.row_offset + op.target;
    ControlPattern controls;
    for (auto [q, v] : op.controls.bits())
      controls.add(q == degree.layout.col_ancilla ? plan.layout.row_ancilla
                                                  : plan.layout.row_offset + q,
                   v);
    moved.controls = std::move(controls);
    moved.label = "UD:" + op.label;
    plan.ops.push_back(std::move(moved));
  }
  plan.ops.push_back(GateOp::postselect_gate(plan.layout.row_ancilla, 1));

  for (int r = 0; r < g.n_vertices(); ++r) {
    if (g.degree(r) == 0) continue;
    const CircuitPlan inner = build_neighborhood_circuit(g, r);
    for (const GateOp& op : inner.ops) {
      if (op.kind == GateOp::Kind::postselect) continue;
      GateOp moved = op;
      moved.target = op.target == inner.layout.col_ancilla ? plan.layout.col_ancilla : op.target;
      ControlPattern controls;
      for (auto [q, v] : op.controls.bits())
        controls.add(q == inner.layout.col_ancilla ? plan.layout.col_ancilla : q, v);
      for (int l = 0; l < n; ++l)
        controls.add(plan.layout.row_offset + l, static_cast<int>((static_cast<unsigned>(r) >> l) & 1));
      moved.controls = std::move(controls);
      moved.label = "U" + std::to_string(r) + ":" + op.label;
      plan.ops.push_back(std::move(moved));
    }
  }
  plan.ops.push_back(GateOp::postselect_gate(plan.layout.col_ancilla, 1));
  return plan;
}

/// Exact tallies over a plan. Classification is structural: kind plus
/// whether an MCX targets an ancilla (Toffoli) or a working qubit (CNOT).
inline GateCounts tally_gates(const CircuitPlan& plan) {
  GateCounts counts;
  for (const GateOp& op : plan.ops) {
    switch (op.kind) {
      case GateOp::Kind::controlled_unitary:
        ++counts.controlled_2q;
        break;
      case GateOp::Kind::mcx:
        if (plan.layout.is_ancilla(op.target))
          ++counts.toffoli_by_controls[static_cast<int>(op.controls.size())];
        else
          ++counts.cnot;
        break;
      case GateOp::Kind::measure:
      case GateOp::Kind::postselect:
        break;
    }
  }
  return counts;
}

/// Closed-form gate counts for the neighborhood circuit of vertex r:
/// d_r Toffolis with n controls, d_r − [0 ∈ N(r)] controlled rotations
/// (neighbor 0 contributes only its Toffoli), and Σ_{c ∈ N(r), c≠0}
/// 2(H(0,c) − 1) CNOTs.
inline GateCounts predicted_neighborhood_counts(const Graph& g, int r) {
  const int d = g.degree(r);
  if (d == 0)
    throw std::invalid_argument("predicted_neighborhood_counts: vertex is isolated");
  const int n = ceil_log2(static_cast<std::uint64_t>(g.n_vertices()));
  GateCounts counts;
  counts.toffoli_by_controls[n] = static_cast<std::uint64_t>(d);
  for (int c : g.neighbors(r)) {
    if (c == 0) continue;
    ++counts.controlled_2q;
    counts.cnot += 2 * static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(c)) - 1);
  }
  return counts;
}

/// Closed-form gate counts for the degree circuit: N' Toffolis with n
/// controls where N' counts vertices of nonzero degree (vertex 0, when
/// present, contributes the final zero-pattern Toffoli instead of a
/// rotation).
inline GateCounts predicted_degree_counts(const Graph& g) {
  if (g.edge_count() == 0) throw std::invalid_argument("predicted_degree_counts: graph has no edges");
  const int n = ceil_log2(static_cast<std::uint64_t>(g.n_vertices()));
  GateCounts counts;
  std::uint64_t nonzero = 0;
  for (int j = 0; j < g.n_vertices(); ++j) {
    if (g.degree(j) == 0) continue;
    ++nonzero;
    if (j == 0) continue;
    ++counts.controlled_2q;
    counts.cnot += 2 * static_cast<std::uint64_t>(std::popcount(static_cast<unsigned>(j)) - 1);
  }
  counts.toffoli_by_controls[n] = nonzero;
  return counts;
}

/// Closed-form gate counts for the full adjacency circuit: the degree-circuit
/// tallies plus every embedded neighborhood circuit, whose Toffolis appear at
/// width 2n (n pattern controls plus n row controls). The Toffoli total is
/// N' + 2|E|.
inline GateCounts predicted_adjacency_counts(const Graph& g) {
  GateCounts counts = predicted_degree_counts(g);
  const int n = ceil_log2(static_cast<std::uint64_t>(g.n_vertices()));
  for (int r = 0; r < g.n_vertices(); ++r) {
    if (g.degree(r) == 0) continue;
    const GateCounts inner = predicted_neighborhood_counts(g, r);
    counts.controlled_2q += inner.controlled_2q;
    counts.cnot += inner.cnot;
    counts.toffoli_by_controls[2 * n] += inner.toffoli_by_controls.at(n);
  }
  return counts;
}

/// Final state and recorded postselection probabilities of a plan run.
struct ExecutionResult {
  Statevector state;
  std::vector<double> postselect_probs;
};

/// Runs a plan on |0...0⟩ through the dense simulator.
inline ExecutionResult execute(const CircuitPlan& plan,
                               std::size_t budget_bytes = kDefaultMemoryBudget) {
  ExecutionResult result{Statevector::zero(plan.layout.num_qubits, budget_bytes), {}};
  for (const GateOp& op : plan.ops) {
    switch (op.kind) {
      case GateOp::Kind::controlled_unitary:
        apply_1q(result.state, op.unitary, op.target, op.controls);
        break;
      case GateOp::Kind::mcx:
        apply_mcx(result.state, op.controls, op.target);
        break;
      case GateOp::Kind::measure:
        break;  // non-destructive Z measurement; probabilities available via measure_prob
      case GateOp::Kind::postselect:
        result.postselect_probs.push_back(postselect(result.state, op.target, op.outcome));
        break;
    }
  }
  return result;
}

/// Human-readable gate listing for diffing circuit constructions.
inline void write_plan_text(const CircuitPlan& plan, std::ostream& out) {
  const RegisterLayout& reg = plan.layout;
  out << "plan " << plan.name << " qubits=" << reg.num_qubits << " working=" << reg.working_bits
      << " col_ancilla=" << reg.col_ancilla;
  if (reg.row_offset >= 0) out << " row_offset=" << reg.row_offset << " row_ancilla=" << reg.row_ancilla;
  out << "\n";
  int index = 0;
  for (const GateOp& op : plan.ops) {
    out << index++ << ": ";
    switch (op.kind) {
      case GateOp::Kind::controlled_unitary: out << "cu2"; break;
      case GateOp::Kind::mcx: out << "mcx"; break;
      case GateOp::Kind::measure: out << "measure"; break;
      case GateOp::Kind::postselect: out << "postselect"; break;
    }
    out << " target=q" << op.target;
    if (!op.controls.empty()) {
      out << " ctrl[";
      bool first = true;
      for (auto [q, v] : op.controls.bits()) {
        if (!first) out << ",";
        out << "q" << q << "=" << v;
        first = false;
      }
      out << "]";
    }
    if (op.kind == GateOp::Kind::postselect) out << " outcome=" << op.outcome;
    if (op.kind == GateOp::Kind::controlled_unitary) {
      char buffer[160];
      auto entry = [&](int r, int c) {
        const Complex z = op.unitary(r, c);
        if (z.imag() == 0.0) std::snprintf(buffer, sizeof buffer, "%.6g", z.real());
        else std::snprintf(buffer, sizeof buffer, "%.6g%+.6gi", z.real(), z.imag());
        return std::string(buffer);
      };
      out << " matrix=[[" << entry(0, 0) << "," << entry(0, 1) << "],[" << entry(1, 0) << ","
          << entry(1, 1) << "]]";
    }
    if (!op.label.empty() && op.kind != GateOp::Kind::postselect) out << "  " << op.label;
    out << "\n";
  }
}

}  // namespace qmotif

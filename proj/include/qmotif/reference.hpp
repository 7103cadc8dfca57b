#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "qmotif/common.hpp"
#include "qmotif/graph.hpp"
#include "qmotif/statevector.hpp"

namespace qmotif {

using BigInt = boost::multiprecision::cpp_int;

/// Quantum state stored as its nonzero amplitudes only, keyed by basis index.
/// Closed-form reference states live here; they convert losslessly to dense
/// statevectors when the register fits the memory budget.
struct SparseState {
  int num_qubits = 0;
  std::map<std::uint64_t, Complex> amplitudes;

  double norm_sq() const {
    double total = 0.0;
    for (const auto& [index, amp] : amplitudes) total += std::norm(amp);
    return total;
  }

  Statevector to_statevector(std::size_t budget_bytes = kDefaultMemoryBudget) const {
    Statevector s = Statevector::zero(num_qubits, budget_bytes);
    s[0] = Complex{};
    for (const auto& [index, amp] : amplitudes) s[index] = amp;
    return s;
  }
};

/// |⟨ref ⊗ fixed|state⟩|² where the reference state is embedded at
/// `index_offset` (typically ancilla bits pinned to 1). Both states are unit
/// norm, so this is a fidelity.
inline double fidelity_with_sparse(const Statevector& state, const SparseState& ref,
                                   std::uint64_t index_offset = 0) {
  Complex overlap{};
  for (const auto& [index, amp] : ref.amplitudes) overlap += std::conj(amp) * state[index + index_offset];
  return std::norm(overlap);
}

/// Nonzero rows of a sparse state as CSV "index,basis_bits,re,im".
inline void write_amplitudes_csv(const SparseState& state, std::ostream& out) {
  out << "index,basis_bits,re,im\n";
  for (const auto& [index, amp] : state.amplitudes)
    detail::write_amplitude_row(out, index, state.num_qubits, amp);
}

/// Adjacency state of a graph on 2·⌈log₂N⌉ qubits: amplitude 1/W at index
/// r·2ⁿ + c for every ordered pair with an edge. W = √(2|E|) undirected. The
/// directed flag keeps each edge as the single arc min(u,v) → max(u,v) and
/// normalizes by W = √|E|.
inline SparseState adjacency_state(const Graph& g, bool directed = false) {
  if (g.edge_count() == 0) throw std::invalid_argument("adjacency_state: graph has no edges");
  const int n = ceil_log2(static_cast<std::uint64_t>(g.n_vertices()));
  SparseState state;
  state.num_qubits = 2 * n;
  const double w = std::sqrt(directed ? static_cast<double>(g.edge_count())
                                      : 2.0 * static_cast<double>(g.edge_count()));
  const Complex amp{1.0 / w, 0.0};
  for (auto [u, v] : g.edges()) {
    state.amplitudes[(static_cast<std::uint64_t>(u) << n) | static_cast<std::uint64_t>(v)] = amp;
    if (!directed)
      state.amplitudes[(static_cast<std::uint64_t>(v) << n) | static_cast<std::uint64_t>(u)] = amp;
  }
  return state;
}

/// Uniform superposition over the neighbors of r, amplitude 1/√d_r each.
inline SparseState neighborhood_state(const Graph& g, int r) {
  const int d = g.degree(r);
  if (d == 0)
    throw std::invalid_argument("neighborhood_state: vertex " + std::to_string(r) + " is isolated");
  SparseState state;
  state.num_qubits = ceil_log2(static_cast<std::uint64_t>(g.n_vertices()));
  const Complex amp{1.0 / std::sqrt(static_cast<double>(d)), 0.0};
  for (int c : g.neighbors(r)) state.amplitudes[static_cast<std::uint64_t>(c)] = amp;
  return state;
}

/// Degree distribution state: amplitude √(d_r / 2|E|) at |r⟩.
inline SparseState degree_state(const Graph& g) {
  if (g.edge_count() == 0) throw std::invalid_argument("degree_state: graph has no edges");
  SparseState state;
  state.num_qubits = ceil_log2(static_cast<std::uint64_t>(g.n_vertices()));
  const double two_e = 2.0 * static_cast<double>(g.edge_count());
  for (int r = 0; r < g.n_vertices(); ++r) {
    const int d = g.degree(r);
    if (d > 0)
      state.amplitudes[static_cast<std::uint64_t>(r)] =
          Complex{std::sqrt(static_cast<double>(d) / two_e), 0.0};
  }
  return state;
}

/// Success probability of the two-outcome motif measurement, kept as the
/// exact rational #S / (2|E|)^{e_s}. The double `value` is derived from the
/// integers and is never the source of truth: desk-scale probabilities reach
/// ~1e-12, where float-only bookkeeping would mask counting bugs.
struct SuccessProbability {
  BigInt numerator;
  BigInt denominator;
  double value = 0.0;

  static SuccessProbability from_parts(BigInt num, BigInt den) {
    SuccessProbability p;
    p.value = num.convert_to<double>() / den.convert_to<double>();
    p.numerator = std::move(num);
    p.denominator = std::move(den);
    return p;
  }
};

inline BigInt tensor_power_denominator(const Graph& g, MotifKind kind) {
  return boost::multiprecision::pow(BigInt(2 * g.edge_count()),
                                    static_cast<unsigned>(kind.edge_count()));
}

/// p_s = #S / (2|E|)^{e_s} with #S from the classical counting oracle.
inline SuccessProbability success_probability(const Graph& g, MotifKind kind) {
  if (g.edge_count() == 0) throw std::invalid_argument("success_probability: graph has no edges");
  return SuccessProbability::from_parts(BigInt(count_motifs(g, kind)),
                                        tensor_power_denominator(g, kind));
}

namespace detail {

struct Arc {
  int from;
  int to;
};

/// Incremental acceptance test for one tuple position against the canonical
/// basis pattern of a motif. Positions are filled left to right; `accept`
/// only sees prefixes that passed all previous positions, and the final
/// position performs the complete pattern check. Rejecting a prefix here
/// prunes exactly the tuples the full test would reject.
class PatternMatcher {
 public:
  explicit PatternMatcher(MotifKind kind) : kind_(kind), tuple_(static_cast<std::size_t>(kind.edge_count())) {}

  int positions() const { return kind_.edge_count(); }

  bool accept(int pos, Arc arc) {
    switch (kind_.shape()) {
      case MotifKind::Shape::triangle: return accept_cycle(pos, arc, 3);
      case MotifKind::Shape::cycle: return accept_cycle(pos, arc, kind_.size());
      case MotifKind::Shape::clique: return accept_clique(pos, arc);
    }
    return false;
  }

  void push(int pos, Arc arc) { tuple_[static_cast<std::size_t>(pos)] = arc; }

 private:
  // Canonical k-cycle pattern (v1,v2)(v2,v3)...(vk,v1): v1 is the cycle's
  // minimum vertex and v2 < vk fixes the orientation, so each undirected
  // cycle contributes exactly one tuple.
  bool accept_cycle(int pos, Arc arc, int k) {
    if (pos == 0) return arc.from < arc.to;
    const Arc& first = tuple_[0];
    if (arc.from != tuple_[static_cast<std::size_t>(pos - 1)].to) return false;
    if (pos == k - 1) return arc.to == first.from && first.to < arc.from;
    if (arc.to <= first.from) return false;
    for (int t = 0; t < pos; ++t)
      if (tuple_[static_cast<std::size_t>(t)].to == arc.to) return false;
    return true;
  }

  // Canonical clique pattern: the lexicographically sorted edge list
  // {(u,v): u < v} of some m-subset. Prefixes must be strictly increasing
  // ordered pairs; the last position verifies the full subset structure.
  bool accept_clique(int pos, Arc arc) {
    if (arc.from >= arc.to) return false;
    if (pos > 0) {
      const Arc& prev = tuple_[static_cast<std::size_t>(pos - 1)];
      if (arc.from < prev.from || (arc.from == prev.from && arc.to <= prev.to)) return false;
    }
    if (pos < positions() - 1) return true;
    tuple_[static_cast<std::size_t>(pos)] = arc;
    std::vector<int> vertices;
    for (int t = 0; t <= pos; ++t) {
      vertices.push_back(tuple_[static_cast<std::size_t>(t)].from);
      vertices.push_back(tuple_[static_cast<std::size_t>(t)].to);
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
    if (static_cast<int>(vertices.size()) != kind_.size()) return false;
    int t = 0;
    for (std::size_t a = 0; a < vertices.size(); ++a)
      for (std::size_t b = a + 1; b < vertices.size(); ++b, ++t)
        if (tuple_[static_cast<std::size_t>(t)].from != vertices[a] ||
            tuple_[static_cast<std::size_t>(t)].to != vertices[b])
          return false;
    return true;
  }

  MotifKind kind_;
  std::vector<Arc> tuple_;
};

}  // namespace detail

/// Independent projector-expectation oracle: enumerates e_s-tuples of
/// directed edges (the support of the e_s-fold tensor power of the adjacency
/// state) and counts tuples matching the canonical basis pattern of the
/// motif; each match contributes (2|E|)^{-e_s}. Tuple prefixes that can no
/// longer match are abandoned early, which skips only tuples the final test
/// would reject. Must agree with success_probability as an exact rational.
inline SuccessProbability projector_expectation_oracle(const Graph& g, MotifKind kind,
                                                       std::uint64_t budget = 100'000'000) {
  if (g.edge_count() == 0)
    throw std::invalid_argument("projector_expectation_oracle: graph has no edges");
  const BigInt nominal = tensor_power_denominator(g, kind);
  if (nominal > BigInt(budget))
    throw ResourceError("projector_expectation_oracle: (2|E|)^{e_s} = " + nominal.str() +
                        " exceeds enumeration budget " + std::to_string(budget));

  std::vector<detail::Arc> arcs;
  arcs.reserve(2 * g.edge_count());
  for (auto [u, v] : g.edges()) {
    arcs.push_back({u, v});
    arcs.push_back({v, u});
  }

  detail::PatternMatcher matcher(kind);
  std::uint64_t matches = 0;
  auto enumerate = [&](auto&& self, int pos) -> void {
    if (pos == matcher.positions()) {
      ++matches;
      return;
    }
    for (const detail::Arc& arc : arcs) {
      if (!matcher.accept(pos, arc)) continue;
      matcher.push(pos, arc);
      self(self, pos + 1);
    }
  };
  enumerate(enumerate, 0);
  return SuccessProbability::from_parts(BigInt(matches), nominal);
}

/// Dense cross-check for triangles only: materializes |G⟩^{⊗3} on
/// 6·⌈log₂N⌉ qubits and applies the explicit triangle projector. Practical
/// for N ≤ 8 (2^18 amplitudes); guarded by the memory budget.
inline double dense_triangle_expectation(const Graph& g,
                                         std::size_t budget_bytes = kDefaultMemoryBudget) {
  const SparseState base = adjacency_state(g);
  const int n = ceil_log2(static_cast<std::uint64_t>(g.n_vertices()));
  Statevector one_copy = base.to_statevector(budget_bytes);
  Statevector cube = Statevector::zero(6 * n, budget_bytes);
  const std::uint64_t copy = std::uint64_t{1} << (2 * n);
  cube[0] = Complex{};
  for (std::uint64_t i = 0; i < copy; ++i) {
    if (one_copy[i] == Complex{}) continue;
    for (std::uint64_t j = 0; j < copy; ++j) {
      if (one_copy[j] == Complex{}) continue;
      for (std::uint64_t k = 0; k < copy; ++k)
        cube[i + copy * j + copy * copy * k] = one_copy[i] * one_copy[j] * one_copy[k];
    }
  }
  // ⟨ψ|P|ψ⟩ = Σ_{i<j<k} |⟨i j, j k, k i|ψ⟩|².
  double expectation = 0.0;
  const int nv = g.n_vertices();
  for (int i = 0; i < nv; ++i)
    for (int j = i + 1; j < nv; ++j)
      for (int k = j + 1; k < nv; ++k) {
        const std::uint64_t c0 = (static_cast<std::uint64_t>(i) << n) | static_cast<std::uint64_t>(j);
        const std::uint64_t c1 = (static_cast<std::uint64_t>(j) << n) | static_cast<std::uint64_t>(k);
        const std::uint64_t c2 = (static_cast<std::uint64_t>(k) << n) | static_cast<std::uint64_t>(i);
        expectation += std::norm(cube[c0 + copy * c1 + copy * copy * c2]);
      }
  return expectation;
}

}  // namespace qmotif

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <initializer_list>
#include <ostream>
#include <utility>
#include <vector>

#include "qmotif/common.hpp"

namespace qmotif {

using Complex = std::complex<double>;

/// Default cap on dense statevector memory: 1 GiB, i.e. 26 qubits of
/// complex<double> amplitudes.
inline constexpr std::size_t kDefaultMemoryBudget = std::size_t{1} << 30;

/// Row-major 2x2 complex matrix, the only gate matrix size the simulator
/// materializes.
struct Mat2 {
  std::array<Complex, 4> m{};

  Complex& operator()(int r, int c) { return m[static_cast<std::size_t>(2 * r + c)]; }
  const Complex& operator()(int r, int c) const { return m[static_cast<std::size_t>(2 * r + c)]; }

  Mat2 adjoint() const {
    Mat2 a;
    a(0, 0) = std::conj((*this)(0, 0));
    a(0, 1) = std::conj((*this)(1, 0));
    a(1, 0) = std::conj((*this)(0, 1));
    a(1, 1) = std::conj((*this)(1, 1));
    return a;
  }

  /// Max-abs deviation of U U† from the identity.
  double unitarity_defect() const {
    const Mat2& u = *this;
    auto dot = [&](int r, int s) {
      return u(r, 0) * std::conj(u(s, 0)) + u(r, 1) * std::conj(u(s, 1));
    };
    double defect = 0.0;
    defect = std::max(defect, std::abs(dot(0, 0) - Complex{1, 0}));
    defect = std::max(defect, std::abs(dot(1, 1) - Complex{1, 0}));
    defect = std::max(defect, std::abs(dot(0, 1)));
    defect = std::max(defect, std::abs(dot(1, 0)));
    return defect;
  }

  static Mat2 from_rows(Complex a00, Complex a01, Complex a10, Complex a11) {
    Mat2 u;
    u(0, 0) = a00;
    u(0, 1) = a01;
    u(1, 0) = a10;
    u(1, 1) = a11;
    return u;
  }

  static Mat2 identity() { return from_rows({1, 0}, {}, {}, {1, 0}); }
  static Mat2 pauli_x() { return from_rows({}, {1, 0}, {1, 0}, {}); }
  static Mat2 hadamard() {
    const double s = 1.0 / std::sqrt(2.0);
    return from_rows({s, 0}, {s, 0}, {s, 0}, {-s, 0});
  }
  static Mat2 ry(double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return from_rows({c, 0}, {-s, 0}, {s, 0}, {c, 0});
  }
};

/// Set of (qubit, required value) conditions for a controlled gate; empty
/// means uncontrolled. Qubits are distinct and values are 0 or 1, so a
/// pattern is equivalently a (mask, value) pair over basis-state indices.
class ControlPattern {
 public:
  ControlPattern() = default;

  ControlPattern(std::initializer_list<std::pair<int, int>> bits) {
    for (auto [q, v] : bits) add(q, v);
  }

  void add(int qubit, int value) {
    if (qubit < 0 || qubit >= 64) throw std::invalid_argument("ControlPattern: bad qubit index");
    if (value != 0 && value != 1) throw std::invalid_argument("ControlPattern: value must be 0 or 1");
    const std::uint64_t bit = std::uint64_t{1} << qubit;
    if (mask_ & bit) throw std::invalid_argument("ControlPattern: duplicate qubit");
    mask_ |= bit;
    if (value) value_ |= bit;
    bits_.emplace_back(qubit, value);
  }

  /// Pattern matching the basis state |pattern⟩ of a `width`-qubit register
  /// whose least significant qubit is `offset`.
  static ControlPattern basis(std::uint64_t pattern, int width, int offset = 0) {
    ControlPattern p;
    for (int l = 0; l < width; ++l) p.add(offset + l, static_cast<int>((pattern >> l) & 1));
    return p;
  }

  std::size_t size() const { return bits_.size(); }
  bool empty() const { return bits_.empty(); }
  bool contains(int qubit) const { return (mask_ >> qubit) & 1; }
  std::uint64_t mask() const { return mask_; }
  std::uint64_t value() const { return value_; }
  const std::vector<std::pair<int, int>>& bits() const { return bits_; }

  int max_qubit() const {
    int q = -1;
    for (auto [qubit, value] : bits_) q = std::max(q, qubit);
    return q;
  }

 private:
  std::vector<std::pair<int, int>> bits_;
  std::uint64_t mask_ = 0;
  std::uint64_t value_ = 0;
};

/// Dense statevector over a little-endian qubit register: qubit q is bit q
/// of the basis-state index. Gate application mutates amplitudes in place;
/// a state is exclusively owned while mutated.
class Statevector {
 public:
  static Statevector zero(int num_qubits, std::size_t budget_bytes = kDefaultMemoryBudget) {
    if (num_qubits < 1) throw std::invalid_argument("Statevector: need at least one qubit");
    if (num_qubits >= 58 || (std::size_t{sizeof(Complex)} << num_qubits) > budget_bytes) {
      std::string required = num_qubits < 58
                                 ? std::to_string(std::size_t{sizeof(Complex)} << num_qubits)
                                 : ("16*2^" + std::to_string(num_qubits));
      throw ResourceError("Statevector: " + std::to_string(num_qubits) + " qubits need " +
                          required + " bytes, budget is " + std::to_string(budget_bytes));
    }
    Statevector s(num_qubits);
    s.amps_[0] = Complex{1, 0};
    return s;
  }

  int num_qubits() const { return num_qubits_; }
  std::uint64_t size() const { return std::uint64_t{1} << num_qubits_; }

  Complex& operator[](std::uint64_t index) { return amps_[index]; }
  const Complex& operator[](std::uint64_t index) const { return amps_[index]; }

  double norm_sq() const {
    double total = 0.0;
    for (const Complex& a : amps_) total += std::norm(a);
    return total;
  }

 private:
  explicit Statevector(int num_qubits)
      : num_qubits_(num_qubits), amps_(std::uint64_t{1} << num_qubits) {}

  int num_qubits_;
  std::vector<Complex> amps_;
};

namespace detail {

inline void check_gate_qubits(const Statevector& state, int target, const ControlPattern& controls) {
  if (target < 0 || target >= state.num_qubits())
    throw std::invalid_argument("gate target out of range");
  if (controls.contains(target)) throw std::invalid_argument("gate target listed as control");
  if (controls.max_qubit() >= state.num_qubits())
    throw std::invalid_argument("gate control out of range");
}

}  // namespace detail

/// Applies a single-qubit unitary to `target` on the subspace where all
/// control conditions hold.
inline void apply_1q(Statevector& state, const Mat2& u, int target,
                     const ControlPattern& controls = {}) {
  if (u.unitarity_defect() > 1e-10)
    throw std::invalid_argument("apply_1q: matrix is not unitary within 1e-10");
  detail::check_gate_qubits(state, target, controls);
  const std::uint64_t tbit = std::uint64_t{1} << target;
  const std::uint64_t cmask = controls.mask(), cval = controls.value();
  const std::uint64_t n = state.size();
  for (std::uint64_t i = 0; i < n; ++i) {
    if ((i & tbit) || (i & cmask) != cval) continue;
    const std::uint64_t j = i | tbit;
    const Complex a = state[i], b = state[j];
    state[i] = u(0, 0) * a + u(0, 1) * b;
    state[j] = u(1, 0) * a + u(1, 1) * b;
  }
}

/// Multi-controlled X (any mix of control-on-one and control-on-zero,
/// including the empty and all-zero patterns).
inline void apply_mcx(Statevector& state, const ControlPattern& controls, int target) {
  detail::check_gate_qubits(state, target, controls);
  const std::uint64_t tbit = std::uint64_t{1} << target;
  const std::uint64_t cmask = controls.mask(), cval = controls.value();
  const std::uint64_t n = state.size();
  for (std::uint64_t i = 0; i < n; ++i) {
    if ((i & tbit) || (i & cmask) != cval) continue;
    std::swap(state[i], state[i | tbit]);
  }
}

/// Z-basis outcome probabilities (p0, p1) of one qubit; the state is not
/// modified.
inline std::pair<double, double> measure_prob(const Statevector& state, int qubit) {
  if (qubit < 0 || qubit >= state.num_qubits())
    throw std::invalid_argument("measure_prob: qubit out of range");
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  double p0 = 0.0, p1 = 0.0;
  for (std::uint64_t i = 0; i < state.size(); ++i)
    (i & bit ? p1 : p0) += std::norm(state[i]);
  return {p0, p1};
}

/// Conditions the state on measuring `outcome` on `qubit` and renormalizes.
/// Returns the pre-measurement probability of that outcome. Failure (the
/// outcome probability below `tol`) signals a circuit-construction bug in
/// this codebase, where all postselections are designed to succeed with
/// probability one.
inline double postselect(Statevector& state, int qubit, int outcome, double tol = 1e-9) {
  if (outcome != 0 && outcome != 1) throw std::invalid_argument("postselect: outcome must be 0 or 1");
  auto [p0, p1] = measure_prob(state, qubit);
  const double p = outcome ? p1 : p0;
  if (p < tol)
    throw PostselectError("postselect: outcome " + std::to_string(outcome) + " on qubit " +
                          std::to_string(qubit) + " has probability " + std::to_string(p));
  const std::uint64_t bit = std::uint64_t{1} << qubit;
  const double scale = 1.0 / std::sqrt(p);
  for (std::uint64_t i = 0; i < state.size(); ++i) {
    const bool keep = ((i & bit) != 0) == (outcome == 1);
    state[i] = keep ? state[i] * scale : Complex{};
  }
  return p;
}

/// |⟨a|b⟩|².
inline double fidelity(const Statevector& a, const Statevector& b) {
  if (a.num_qubits() != b.num_qubits())
    throw std::invalid_argument("fidelity: qubit counts differ");
  Complex overlap{};
  for (std::uint64_t i = 0; i < a.size(); ++i) overlap += std::conj(a[i]) * b[i];
  return std::norm(overlap);
}

namespace detail {

inline std::string basis_bits(std::uint64_t index, int num_qubits) {
  std::string bits(static_cast<std::size_t>(num_qubits), '0');
  for (int q = 0; q < num_qubits; ++q)
    if ((index >> q) & 1) bits[static_cast<std::size_t>(num_qubits - 1 - q)] = '1';
  return bits;
}

inline void write_amplitude_row(std::ostream& out, std::uint64_t index, int num_qubits, Complex amp) {
  char buffer[64];
  out << index << "," << basis_bits(index, num_qubits);
  std::snprintf(buffer, sizeof buffer, ",%.17g,%.17g", amp.real(), amp.imag());
  out << buffer << "\n";
}

}  // namespace detail

/// Dumps all amplitudes as CSV rows "index,basis_bits,re,im"; refuses states
/// beyond 2^20 entries.
inline void write_amplitudes_csv(const Statevector& state, std::ostream& out) {
  if (state.num_qubits() > 20)
    throw ResourceError("amplitude dump limited to 2^20 entries, state has 2^" +
                        std::to_string(state.num_qubits()));
  out << "index,basis_bits,re,im\n";
  for (std::uint64_t i = 0; i < state.size(); ++i)
    detail::write_amplitude_row(out, i, state.num_qubits(), state[i]);
}

}  // namespace qmotif

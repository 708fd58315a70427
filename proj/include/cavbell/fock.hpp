#pragma once

#include <array>
#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace cavbell {

using Amplitude = std::complex<double>;

/// Thrown when an internal consistency check fails (norm drift, residual
/// imaginary parts, photon-truncation violations). The CLI maps this to a
/// dedicated exit code.
struct ConsistencyError : std::logic_error {
  using std::logic_error::logic_error;
};

/// Two-level Rydberg atom: upper state |e>, lower state |g>.
enum class Level : std::uint8_t { Excited = 0, Ground = 1 };

inline int level_index(Level l) { return static_cast<int>(l); }

/// Detector outcome assigned to a level: +1 for |e>, -1 for |g>.
inline double detector_sign(Level l) { return l == Level::Excited ? 1.0 : -1.0; }

/// Product basis element |a1, a2, n>: two atom levels plus a cavity photon count.
struct BasisKet {
  Level atom1;
  Level atom2;
  int photons;

  BasisKet(Level a1, Level a2, int n) : atom1(a1), atom2(a2), photons(n) {
    if (n < 0) throw ConsistencyError("BasisKet: negative photon number");
  }

  friend auto operator<=>(const BasisKet&, const BasisKet&) = default;
};

/// Finite superposition of BasisKets. Terms are kept sorted by ket and
/// amplitudes with modulus below prune_threshold are dropped, so exact-zero
/// branches (sin(0) factors, omitted negative-photon terms) never linger.
class StateVector {
 public:
  using Term = std::pair<BasisKet, Amplitude>;
  static constexpr double prune_threshold = 1e-15;

  StateVector() = default;

  static StateVector basis_state(const BasisKet& k) {
    StateVector s;
    s.terms_.emplace_back(k, Amplitude{1.0, 0.0});
    return s;
  }

  /// Accumulates a term (amplitudes for equal kets add).
  void add(const BasisKet& k, const Amplitude& a);

  void scale(const Amplitude& f) {
    for (auto& [k, a] : terms_) a *= f;
  }

  /// Drops terms with |amplitude| < prune_threshold.
  void prune();

  std::span<const Term> terms() const& { return terms_; }
  std::span<const Term> terms() const&& = delete;  // would dangle
  std::size_t term_count() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }

  /// Amplitude of a ket, 0 if absent.
  Amplitude amplitude(const BasisKet& k) const;

  double squared_norm() const;

  /// Largest photon number present (0 for the empty state).
  int max_photons() const;

 private:
  std::vector<Term> terms_;
};

/// <a|b>: conjugate-linear in the first argument, linear in the second.
Amplitude inner_product(const StateVector& a, const StateVector& b);

/// 2x2 operator acting on one atom's level factor, basis order (|e>, |g>).
/// The photon count and the other atom are untouched.
struct AtomOperator {
  int atom;                    // 1 or 2
  std::array<Amplitude, 4> m;  // row-major

  AtomOperator(int target, std::array<Amplitude, 4> matrix) : atom(target), m(matrix) {
    if (target != 1 && target != 2) throw std::invalid_argument("AtomOperator: atom must be 1 or 2");
  }

  const Amplitude& at(int row, int col) const { return m[static_cast<std::size_t>(2 * row + col)]; }

  bool is_hermitian(double tol = 1e-12) const;
  AtomOperator adjoint() const;

  /// Composition (lhs applied after rhs); both must target the same atom.
  friend AtomOperator operator*(const AtomOperator& lhs, const AtomOperator& rhs);
};

AtomOperator sigma_z(int atom);
AtomOperator sigma_x(int atom);

StateVector apply_atom_operator(const AtomOperator& op, const StateVector& s);

/// Real expectation <s| op1 op2 |s> of a product of observables on the two
/// atoms. Requires op1 and op2 to target distinct atoms and to be
/// self-adjoint within 1e-12; the imaginary residue must stay below 1e-10.
double expectation(const AtomOperator& op1, const AtomOperator& op2, const StateVector& s);

}  // namespace cavbell

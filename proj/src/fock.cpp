#include "cavbell/fock.hpp"

#include <algorithm>
#include <cmath>

namespace cavbell {

void StateVector::add(const BasisKet& k, const Amplitude& a) {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                             [](const Term& t, const BasisKet& key) { return t.first < key; });
  if (it != terms_.end() && it->first == k) {
    it->second += a;
  } else {
    terms_.insert(it, Term{k, a});
  }
}

void StateVector::prune() {
  std::erase_if(terms_, [](const Term& t) { return std::abs(t.second) < prune_threshold; });
}

Amplitude StateVector::amplitude(const BasisKet& k) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), k,
                             [](const Term& t, const BasisKet& key) { return t.first < key; });
  if (it != terms_.end() && it->first == k) return it->second;
  return {0.0, 0.0};
}

double StateVector::squared_norm() const {
  double n2 = 0.0;
  for (const auto& [k, a] : terms_) n2 += std::norm(a);
  return n2;
}

int StateVector::max_photons() const {
  int n = 0;
  for (const auto& [k, a] : terms_) n = std::max(n, k.photons);
  return n;
}

Amplitude inner_product(const StateVector& a, const StateVector& b) {
  // Both term lists are sorted; walk them in lockstep.
  Amplitude result{0.0, 0.0};
  auto ia = a.terms().begin(), ea = a.terms().end();
  auto ib = b.terms().begin(), eb = b.terms().end();
  while (ia != ea && ib != eb) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      result += std::conj(ia->second) * ib->second;
      ++ia;
      ++ib;
    }
  }
  return result;
}

bool AtomOperator::is_hermitian(double tol) const {
  return std::abs(at(0, 0) - std::conj(at(0, 0))) <= tol &&
         std::abs(at(1, 1) - std::conj(at(1, 1))) <= tol &&
         std::abs(at(0, 1) - std::conj(at(1, 0))) <= tol;
}

AtomOperator AtomOperator::adjoint() const {
  return AtomOperator(atom, {std::conj(at(0, 0)), std::conj(at(1, 0)),
                             std::conj(at(0, 1)), std::conj(at(1, 1))});
}

AtomOperator operator*(const AtomOperator& lhs, const AtomOperator& rhs) {
  if (lhs.atom != rhs.atom)
    throw std::invalid_argument("AtomOperator product: operands target different atoms");
  std::array<Amplitude, 4> p{};
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      p[static_cast<std::size_t>(2 * r + c)] =
          lhs.at(r, 0) * rhs.at(0, c) + lhs.at(r, 1) * rhs.at(1, c);
  return AtomOperator(lhs.atom, p);
}

AtomOperator sigma_z(int atom) {
  return AtomOperator(atom, {Amplitude{1, 0}, Amplitude{0, 0}, Amplitude{0, 0}, Amplitude{-1, 0}});
}

AtomOperator sigma_x(int atom) {
  return AtomOperator(atom, {Amplitude{0, 0}, Amplitude{1, 0}, Amplitude{1, 0}, Amplitude{0, 0}});
}

namespace {

Level level_of(const BasisKet& k, int atom) { return atom == 1 ? k.atom1 : k.atom2; }

BasisKet with_level(const BasisKet& k, int atom, Level l) {
  return atom == 1 ? BasisKet(l, k.atom2, k.photons) : BasisKet(k.atom1, l, k.photons);
}

}  // namespace

StateVector apply_atom_operator(const AtomOperator& op, const StateVector& s) {
  StateVector out;
  for (const auto& [k, a] : s.terms()) {
    const int col = level_index(level_of(k, op.atom));
    const Amplitude to_e = op.at(0, col) * a;
    const Amplitude to_g = op.at(1, col) * a;
    if (to_e != Amplitude{0.0, 0.0}) out.add(with_level(k, op.atom, Level::Excited), to_e);
    if (to_g != Amplitude{0.0, 0.0}) out.add(with_level(k, op.atom, Level::Ground), to_g);
  }
  out.prune();
  return out;
}

double expectation(const AtomOperator& op1, const AtomOperator& op2, const StateVector& s) {
  if (op1.atom == op2.atom)
    throw std::invalid_argument("expectation: operators must target distinct atoms");
  if (!op1.is_hermitian() || !op2.is_hermitian())
    throw std::invalid_argument("expectation: non-Hermitian operator");
  const Amplitude value = inner_product(s, apply_atom_operator(op1, apply_atom_operator(op2, s)));
  if (std::abs(value.imag()) >= 1e-10)
    throw ConsistencyError("expectation: residual imaginary part");
  return value.real();
}

}  // namespace cavbell

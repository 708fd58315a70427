#include "cavbell/evolution.hpp"

#include <cmath>

namespace cavbell {

Scenario::Scenario(InitialCase c, int n, double e1, double e2)
    : initial(c), photons(n), eta1(e1), eta2(e2) {
  if (n < 0) throw std::invalid_argument("Scenario: photon number must be >= 0");
  if (!std::isfinite(e1) || !std::isfinite(e2))
    throw std::invalid_argument("Scenario: Rabi angles must be finite");
}

double TrigCoefficients::c(int j) const {
  if (!defined(j)) throw std::out_of_range("TrigCoefficients: photons + j < 0");
  return std::cos(eta * std::sqrt(static_cast<double>(photons + j)));
}

double TrigCoefficients::s(int j) const {
  if (!defined(j)) throw std::out_of_range("TrigCoefficients: photons + j < 0");
  return std::sin(eta * std::sqrt(static_cast<double>(photons + j)));
}

namespace {

constexpr Amplitude minus_i{0.0, -1.0};

void check_norm(const StateVector& s, const char* what) {
  if (std::abs(s.squared_norm() - 1.0) > 1e-12)
    throw ConsistencyError(std::string(what) + ": state norm drifted");
}

}  // namespace

StateVector cavity_pass(const StateVector& s, int atom, double eta) {
  if (atom != 1 && atom != 2) throw std::invalid_argument("cavity_pass: atom must be 1 or 2");
  StateVector out;
  for (const auto& [k, a] : s.terms()) {
    const Level l = atom == 1 ? k.atom1 : k.atom2;
    const Level other = atom == 1 ? k.atom2 : k.atom1;
    auto ket = [&](Level mine, int n) {
      return atom == 1 ? BasisKet(mine, other, n) : BasisKet(other, mine, n);
    };
    if (l == Level::Excited) {
      const double arg = eta * std::sqrt(static_cast<double>(k.photons + 1));
      out.add(ket(Level::Excited, k.photons), a * std::cos(arg));
      out.add(ket(Level::Ground, k.photons + 1), a * minus_i * std::sin(arg));
    } else {
      const double arg = eta * std::sqrt(static_cast<double>(k.photons));
      out.add(ket(Level::Ground, k.photons), a * std::cos(arg));
      if (k.photons >= 1)  // the |g, 0> absorption branch is omitted
        out.add(ket(Level::Excited, k.photons - 1), a * minus_i * std::sin(arg));
    }
  }
  out.prune();
  check_norm(out, "cavity_pass");
  return out;
}

StateVector initial_state(const Scenario& sc) {
  switch (sc.initial) {
    case InitialCase::BothGround:
      return StateVector::basis_state(BasisKet(Level::Ground, Level::Ground, sc.photons));
    case InitialCase::BothExcited:
      return StateVector::basis_state(BasisKet(Level::Excited, Level::Excited, sc.photons));
    case InitialCase::ExcitedGround:
      return StateVector::basis_state(BasisKet(Level::Excited, Level::Ground, sc.photons));
  }
  throw std::invalid_argument("initial_state: unknown case");
}

StateVector after_first_pass(const Scenario& sc) {
  StateVector psi = cavity_pass(initial_state(sc), 1, sc.eta1);
  if (psi.max_photons() > sc.photons + 2)
    throw ConsistencyError("after_first_pass: photon truncation violated");
  return psi;
}

StateVector after_second_pass(const Scenario& sc) {
  StateVector psi = cavity_pass(after_first_pass(sc), 2, sc.eta2);
  if (psi.max_photons() > sc.photons + 2)
    throw ConsistencyError("after_second_pass: photon truncation violated");
  return psi;
}

}  // namespace cavbell

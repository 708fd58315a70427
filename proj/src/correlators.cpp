#include "cavbell/correlators.hpp"

#include <cmath>

namespace cavbell {

AtomOperator half_pi_pulse(double phi, int atom) {
  const double r = 1.0 / std::sqrt(2.0);
  const Amplitude e_plus = std::polar(1.0, phi);
  const Amplitude e_minus = std::polar(1.0, -phi);
  return AtomOperator(atom, {Amplitude{r, 0.0}, -r * e_plus, r * e_minus, Amplitude{r, 0.0}});
}

AtomOperator phase_operator(double phi, int atom) {
  const Amplitude e_plus = std::polar(1.0, phi);
  const Amplitude e_minus = std::polar(1.0, -phi);
  return AtomOperator(atom, {Amplitude{0.0, 0.0}, -e_plus, -e_minus, Amplitude{0.0, 0.0}});
}

AtomOperator bloch_operator(double theta, int atom) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return AtomOperator(atom, {Amplitude{c, 0.0}, Amplitude{s, 0.0}, Amplitude{s, 0.0}, Amplitude{-c, 0.0}});
}

namespace {

std::pair<AtomOperator, AtomOperator> scheme_operators(const MeasurementScheme& m) {
  if (const auto* p = std::get_if<PhaseSettings>(&m))
    return {phase_operator(p->phi1, 1), phase_operator(p->phi2, 2)};
  const auto& b = std::get<BlochSettings>(m);
  return {bloch_operator(b.theta1, 1), bloch_operator(b.theta2, 2)};
}

double trig_c(double eta, int m) { return std::cos(eta * std::sqrt(static_cast<double>(m))); }
double trig_s(double eta, int m) { return std::sin(eta * std::sqrt(static_cast<double>(m))); }

}  // namespace

double correlation(const Scenario& sc, const MeasurementScheme& m) {
  const StateVector psi2 = after_second_pass(sc);
  auto [op1, op2] = scheme_operators(m);
  return expectation(op1, op2, psi2);
}

double alpha_coefficient(const Scenario& sc) {
  const int n = sc.photons;
  switch (sc.initial) {
    case InitialCase::BothGround:
      // pairs the |g,e,n-1> and |e,g,n-1> branches; absent for n = 0
      if (n < 1) return 0.0;
      return trig_s(sc.eta1, n) * trig_c(sc.eta1, n) * trig_s(sc.eta2, n) * trig_c(sc.eta2, n - 1);
    case InitialCase::BothExcited:
      return trig_s(sc.eta1, n + 1) * trig_c(sc.eta1, n + 1) * trig_s(sc.eta2, n + 1) *
             trig_c(sc.eta2, n + 2);
    case InitialCase::ExcitedGround:
      return -trig_s(sc.eta1, n + 1) * trig_c(sc.eta1, n + 1) * trig_s(sc.eta2, n + 1) *
             trig_c(sc.eta2, n);
  }
  throw std::invalid_argument("alpha_coefficient: unknown case");
}

double beta_coefficient(const Scenario& sc) {
  const StateVector psi2 = after_second_pass(sc);
  double e00 = 0.0;  // sigma_z x sigma_z expectation, diagonal in the product basis
  for (const auto& [k, a] : psi2.terms())
    e00 += detector_sign(k.atom1) * detector_sign(k.atom2) * std::norm(a);
  return 0.5 * e00;
}

CorrelationCoefficients coefficients(const Scenario& sc) {
  return {alpha_coefficient(sc), beta_coefficient(sc)};
}

double correlation_closed_form(const Scenario& sc, const MeasurementScheme& m) {
  if (const auto* p = std::get_if<PhaseSettings>(&m))
    return 2.0 * alpha_coefficient(sc) * std::cos(p->phi2 - p->phi1);
  const auto& b = std::get<BlochSettings>(m);
  const CorrelationCoefficients cc = coefficients(sc);
  return 2.0 * cc.alpha * std::sin(b.theta1) * std::sin(b.theta2) +
         2.0 * cc.beta * std::cos(b.theta1) * std::cos(b.theta2);
}

double correlation_mixture(const Scenario& sc, const BlochSettings& m) {
  // Probability-weighted sum of branch-wise product expectations; every basis
  // ket is a product state, so <k|O1 O2|k> = <k|O1|k><k|O2|k>.
  const AtomOperator op1 = bloch_operator(m.theta1, 1);
  const AtomOperator op2 = bloch_operator(m.theta2, 2);
  const StateVector psi2 = after_second_pass(sc);
  double e = 0.0;
  for (const auto& [k, a] : psi2.terms()) {
    const double d1 = op1.at(level_index(k.atom1), level_index(k.atom1)).real();
    const double d2 = op2.at(level_index(k.atom2), level_index(k.atom2)).real();
    e += std::norm(a) * d1 * d2;
  }
  return e;
}

}  // namespace cavbell

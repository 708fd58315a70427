#pragma once

#include <variant>

#include "cavbell/evolution.hpp"

namespace cavbell {

/// Measurement settings for the phase scheme: each atom sees a resonant
/// pi/2 pulse whose phase is the adjustable parameter.
struct PhaseSettings {
  double phi1;
  double phi2;
};

/// Measurement settings for the Bloch scheme: each atom's Bloch vector is
/// rotated through 2*theta_i before detection.
struct BlochSettings {
  double theta1;
  double theta2;
};

using MeasurementScheme = std::variant<PhaseSettings, BlochSettings>;

/// The pair (alpha, beta) determining the closed-form correlations; beta is
/// meaningful only for the Bloch scheme. Both are bounded by 1/2.
struct CorrelationCoefficients {
  double alpha = 0.0;
  double beta = 0.0;
};

/// pi/2-pulse of the classical field with phase phi (unitary, not Hermitian).
AtomOperator half_pi_pulse(double phi, int atom);

/// Effective detector observable of the phase scheme, the pulse-conjugated
/// sigma_z. Self-adjoint and squares to the identity.
AtomOperator phase_operator(double phi, int atom);

/// Effective detector observable of the Bloch scheme:
/// cos(theta) sigma_z + sin(theta) sigma_x.
AtomOperator bloch_operator(double theta, int atom);

/// Correlation of the two detector outcomes, computed with the generic
/// operator engine on the post-cavity state.
double correlation(const Scenario& sc, const MeasurementScheme& m);

/// Closed-form correlation: 2*alpha*cos(phi2 - phi1) for the phase scheme,
/// 2*alpha*sin(theta1)*sin(theta2) + 2*beta*cos(theta1)*cos(theta2) for the
/// Bloch scheme. Agrees with correlation() to 1e-10.
double correlation_closed_form(const Scenario& sc, const MeasurementScheme& m);

/// Correlation after discarding all interference between the branches of the
/// post-cavity state (diagonal of its density operator in the product
/// basis). Equals 2*beta*cos(theta1)*cos(theta2).
double correlation_mixture(const Scenario& sc, const BlochSettings& m);

/// Case-matched product of cavity trig factors; vanishes for the both-ground
/// preparation with an empty cavity.
double alpha_coefficient(const Scenario& sc);

/// Branch-eigenvalue definition: half the sigma_z x sigma_z expectation of
/// the post-cavity state, i.e. (1/2) sum over branches of (+-1)|amplitude|^2.
double beta_coefficient(const Scenario& sc);

CorrelationCoefficients coefficients(const Scenario& sc);

}  // namespace cavbell

#pragma once

#include "cavbell/fock.hpp"

namespace cavbell {

/// Initial preparation of the atom pair. The cavity always starts in a Fock
/// state |n>. CLI labels: I = both ground, II = both excited, III = first
/// atom excited, second ground.
enum class InitialCase { BothGround, BothExcited, ExcitedGround };

/// One physical configuration: preparation, initial photon number, and the
/// Rabi angles eta_i = Omega_i * t_i accumulated by each atom's transit.
struct Scenario {
  InitialCase initial;
  int photons;
  double eta1;
  double eta2;

  Scenario(InitialCase c, int n, double e1, double e2);
};

/// Trig factors of the resonant cavity transition relative to a reference
/// photon number: c(j) = cos(eta*sqrt(photons+j)), s(j) = sin(...), for
/// j in {-1, 0, 1, 2}. Entries with photons + j < 0 are undefined; the
/// caller omits the corresponding branches.
struct TrigCoefficients {
  double eta;
  int photons;

  bool defined(int j) const { return photons + j >= 0; }
  double c(int j) const;
  double s(int j) const;
};

/// Single resonant transit of one atom through the cavity:
///   |e, n> -> cos(eta*sqrt(n+1)) |e, n> - i sin(eta*sqrt(n+1)) |g, n+1>
///   |g, n> -> cos(eta*sqrt(n))   |g, n> - i sin(eta*sqrt(n))   |e, n-1>
/// applied per basis term with n read from that term; the emission branch
/// of |g, 0> is omitted (its amplitude sin(0) vanishes as well).
StateVector cavity_pass(const StateVector& s, int atom, double eta);

/// Product state before any atom has entered the cavity.
StateVector initial_state(const Scenario& sc);

/// State after the first atom's transit.
StateVector after_first_pass(const Scenario& sc);

/// State after both atoms have traversed the cavity. At most photons+2
/// photons can appear; exceeding that is an internal defect.
StateVector after_second_pass(const Scenario& sc);

}  // namespace cavbell

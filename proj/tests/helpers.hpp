#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>

#include "cavbell/bell.hpp"
#include "cavbell/correlators.hpp"

namespace test_util {

using namespace cavbell;

constexpr double pi = 3.14159265358979323846;

inline BasisKet ket(Level a1, Level a2, int n) { return BasisKet(a1, a2, n); }

constexpr Level E = Level::Excited;
constexpr Level G = Level::Ground;

/// Max amplitude difference over the union of kets.
inline double state_distance(const StateVector& a, const StateVector& b) {
  double d = 0.0;
  for (const auto& [k, amp] : a.terms()) d = std::max(d, std::abs(amp - b.amplitude(k)));
  for (const auto& [k, amp] : b.terms()) d = std::max(d, std::abs(amp - a.amplitude(k)));
  return d;
}

inline StateVector combine(const Amplitude& ca, const StateVector& a, const Amplitude& cb,
                           const StateVector& b) {
  StateVector out;
  for (const auto& [k, amp] : a.terms()) out.add(k, ca * amp);
  for (const auto& [k, amp] : b.terms()) out.add(k, cb * amp);
  out.prune();
  return out;
}

/// Deterministic random scenarios/settings for property tests.
class Sampler {
 public:
  explicit Sampler(unsigned seed = 20260809u) : rng_(seed) {}

  Scenario scenario(int max_photons = 6, double eta_max = 25.0) {
    std::uniform_int_distribution<int> case_d(0, 2);
    std::uniform_int_distribution<int> n_d(0, max_photons);
    std::uniform_real_distribution<double> eta_d(0.0, eta_max);
    const InitialCase c = static_cast<InitialCase>(case_d(rng_));
    return Scenario(c, n_d(rng_), eta_d(rng_), eta_d(rng_));
  }

  double angle() {
    std::uniform_real_distribution<double> d(0.0, 2.0 * pi);
    return d(rng_);
  }

  double uniform(double lo, double hi) {
    std::uniform_real_distribution<double> d(lo, hi);
    return d(rng_);
  }

  ChshSettings settings() { return {angle(), angle(), angle(), angle()}; }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
};

}  // namespace test_util

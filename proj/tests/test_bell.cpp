#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace cavbell;
using namespace test_util;

namespace {

const double sqrt2 = std::sqrt(2.0);
const double tsirelson = 2.0 * sqrt2;

double mixture_bell(const Scenario& sc, const ChshSettings& st) {
  auto e = [&](double x, double y) { return correlation_mixture(sc, BlochSettings{x, y}); };
  return std::abs(e(st.a1, st.a2) + e(st.a1, st.a2_prime) + e(st.a1_prime, st.a2) -
                  e(st.a1_prime, st.a2_prime));
}

}  // namespace

TEST_CASE("eta grid geometry") {
  const EtaGrid grid({0.0, 25.0}, 1e-3);
  CHECK(grid.size() == 25001);
  CHECK(grid[0] == 0.0);
  CHECK(grid[25000] == doctest::Approx(25.0).epsilon(1e-12));
  CHECK(grid[3300] == doctest::Approx(3.3).epsilon(1e-12));
  CHECK_THROWS_AS(EtaGrid({1.0, 0.0}, 0.1), std::invalid_argument);
  CHECK_THROWS_AS(EtaGrid({0.0, 1.0}, 0.0), std::invalid_argument);
}

TEST_CASE("bell sum vanishes without a first-atom interaction") {
  const Scenario sc(InitialCase::BothExcited, 0, 0.0, 1.7);
  Sampler sampler;
  CHECK(bell_sum(sc, SchemeKind::Phase, sampler.settings()) < 1e-12);
}

TEST_CASE("bell sum at the canonical phase settings") {
  const double eta = pi / std::sqrt(2.0);
  const Scenario sc(InitialCase::BothExcited, 0, eta, eta);
  const double s = bell_sum(sc, SchemeKind::Phase, {0.0, pi / 2, pi / 4, -pi / 4});
  CHECK(std::abs(s - 2.166) <= 1e-2);
}

TEST_CASE("bell sum for the ground preparation under restricted bloch settings") {
  const Scenario sc(InitialCase::BothGround, 0, 0.9, 1.4);  // alpha = 0, beta = 1/2
  for (double theta : {0.0, 0.4, 1.2}) {
    const double s = bell_sum(sc, SchemeKind::Bloch, {0.0, pi / 2, theta, -theta});
    CHECK(s == doctest::Approx(2.0 * std::cos(theta)).epsilon(1e-10));
  }
}

TEST_CASE("analytic phase maximum") {
  CHECK(smax_phase_analytic(0.383).s_max == doctest::Approx(4.0 * sqrt2 * 0.383));
  CHECK(smax_phase_analytic(0.0).s_max == 0.0);
  CHECK(smax_phase_analytic(0.5).s_max == doctest::Approx(tsirelson));
  // the returned settings achieve the maximum
  const double eta = pi / std::sqrt(2.0);
  const Scenario sc(InitialCase::BothExcited, 0, eta, eta);
  const PhaseMaximum pm = smax_phase_analytic(alpha_coefficient(sc));
  CHECK(bell_sum(sc, SchemeKind::Phase, pm.settings) == doctest::Approx(pm.s_max).epsilon(1e-10));
}

TEST_CASE("restricted bloch maximum") {
  CHECK(smax_bloch_restricted(0.5, 0.5).s_max == doctest::Approx(tsirelson));
  CHECK(smax_bloch_restricted(0.0, 0.5).s_max == doctest::Approx(2.0));
  CHECK(smax_bloch_restricted(0.383, 0.0).s_max == doctest::Approx(1.532));
}

TEST_CASE("property: restricted bloch settings achieve the reported maximum") {
  Sampler sampler;
  for (int i = 0; i < 100; ++i) {
    const Scenario sc = sampler.scenario();
    const CorrelationCoefficients cc = coefficients(sc);
    const BlochMaximum bm = smax_bloch_restricted(cc.alpha, cc.beta);
    CHECK(std::abs(bell_sum(sc, SchemeKind::Bloch, bm.settings) - bm.s_max) < 1e-10);
  }
}

TEST_CASE("property: restricted maximum is the supremum over the one-parameter family") {
  Sampler sampler;
  for (int i = 0; i < 10; ++i) {
    const Scenario sc = sampler.scenario();
    const CorrelationCoefficients cc = coefficients(sc);
    double sup = 0.0;
    for (double theta = -pi; theta <= pi; theta += 1e-3) {
      const double s = 4.0 * std::abs(cc.beta * std::cos(theta) + cc.alpha * std::sin(theta));
      sup = std::max(sup, s);
    }
    const double smax = smax_bloch_restricted(cc.alpha, cc.beta).s_max;
    CHECK(sup <= smax + 1e-10);
    CHECK(smax - sup <= 1e-6);
  }
}

TEST_CASE("property: fast closed-form coefficients match the reference pair") {
  Sampler sampler;
  for (int i = 0; i < 500; ++i) {
    const Scenario sc = sampler.scenario();
    const auto fast = closed_form_coefficients(sc.initial, sc.photons, sc.eta1, sc.eta2);
    CHECK(std::abs(fast.alpha - alpha_coefficient(sc)) < 1e-12);
    CHECK(std::abs(fast.beta - beta_coefficient(sc)) < 1e-12);
  }
  // omitted-branch guards at low photon numbers
  for (int n : {0, 1, 2})
    for (InitialCase c :
         {InitialCase::BothGround, InitialCase::BothExcited, InitialCase::ExcitedGround}) {
      const Scenario sc(c, n, 0.77, 1.91);
      const auto fast = closed_form_coefficients(c, n, sc.eta1, sc.eta2);
      CHECK(std::abs(fast.alpha - alpha_coefficient(sc)) < 1e-12);
      CHECK(std::abs(fast.beta - beta_coefficient(sc)) < 1e-12);
    }
}

TEST_CASE("optimized equal-angle phase scheme approaches the cubic bound") {
  const BellResult r =
      optimize_case(InitialCase::BothExcited, SchemeKind::Phase, RabiSubcase::Equal, 0);
  CHECK(std::abs(r.s_max - 2.18) <= 1e-2);
  CHECK(r.eta1 == r.eta2);
}

TEST_CASE("optimized equal-angle bloch scheme for the excited-ground preparation") {
  for (int n : {0, 1, 2}) {
    const BellResult r =
        optimize_case(InitialCase::ExcitedGround, SchemeKind::Bloch, RabiSubcase::Equal, n);
    CHECK(std::abs(r.s_max - 2.00) <= 1e-2);
  }
}

TEST_CASE("optimized unequal-angle bloch scheme for the both-excited preparation") {
  // The published scan reports 2.41 at n=4; a full 2-D optimization finds the
  // true optimum near 2.824, inside the accepted band [2.40, 2*sqrt(2)].
  const BellResult r =
      optimize_case(InitialCase::BothExcited, SchemeKind::Bloch, RabiSubcase::Unequal, 4);
  CHECK(r.s_max >= 2.41 - 1e-2);
  CHECK(r.s_max <= tsirelson + 1e-9);
  CHECK(r.s_max == doctest::Approx(2.8244).epsilon(1e-3));
}

TEST_CASE("optimized unequal-angle phase scheme saturates the quantum bound") {
  const BellResult r =
      optimize_case(InitialCase::ExcitedGround, SchemeKind::Phase, RabiSubcase::Unequal, 0);
  CHECK(r.s_max == doctest::Approx(tsirelson).epsilon(1e-6));
  const BellResult r1 =
      optimize_case(InitialCase::BothGround, SchemeKind::Phase, RabiSubcase::Unequal, 1);
  CHECK(r1.s_max == doctest::Approx(tsirelson).epsilon(1e-6));
}

TEST_CASE("degenerate ground preparation with an empty cavity") {
  const BellResult phase =
      optimize_case(InitialCase::BothGround, SchemeKind::Phase, RabiSubcase::Unequal, 0);
  CHECK(phase.s_max == 0.0);
  const BellResult bloch =
      optimize_case(InitialCase::BothGround, SchemeKind::Bloch, RabiSubcase::Unequal, 0);
  CHECK(bloch.s_max == doctest::Approx(2.0).epsilon(1e-12));
  const BellResult bloch_equal =
      optimize_case(InitialCase::BothGround, SchemeKind::Bloch, RabiSubcase::Equal, 0);
  CHECK(bloch_equal.s_max == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("optimizer rejects bad inputs") {
  OptimizeOptions opt;
  opt.range = {3.0, 1.0};
  CHECK_THROWS_AS(
      optimize_case(InitialCase::BothGround, SchemeKind::Phase, RabiSubcase::Equal, 0, opt),
      std::invalid_argument);
  CHECK_THROWS_AS(
      optimize_case(InitialCase::BothGround, SchemeKind::Phase, RabiSubcase::Equal, -1),
      std::invalid_argument);
}

TEST_CASE("property: bell sums respect the quantum ceiling") {
  Sampler sampler;
  for (int i = 0; i < 1000; ++i) {
    const Scenario sc = sampler.scenario();
    CHECK(bell_sum(sc, SchemeKind::Phase, sampler.settings()) <= tsirelson + 1e-9);
    CHECK(bell_sum(sc, SchemeKind::Bloch, sampler.settings()) <= tsirelson + 1e-9);
  }
}

TEST_CASE("property: mixture bell sums respect the classical ceiling") {
  Sampler sampler;
  for (int i = 0; i < 500; ++i) {
    const Scenario sc = sampler.scenario();
    CHECK(mixture_bell(sc, sampler.settings()) <= 2.0 + 1e-9);
  }
}

TEST_CASE("property: equal-angle phase optimization stays below the cubic ceiling") {
  const double ceiling = 4.0 * sqrt2 * (2.0 * std::sqrt(3.0) / 9.0);
  for (InitialCase c :
       {InitialCase::BothGround, InitialCase::BothExcited, InitialCase::ExcitedGround})
    for (int n = 0; n <= 6; ++n) {
      const BellResult r = optimize_case(c, SchemeKind::Phase, RabiSubcase::Equal, n);
      CHECK(r.s_max <= ceiling + 1e-6);
    }
}

TEST_CASE("property: equal-angle bloch optimization stays below the mixture-derived ceiling") {
  for (InitialCase c :
       {InitialCase::BothGround, InitialCase::BothExcited, InitialCase::ExcitedGround})
    for (int n = 0; n <= 6; ++n) {
      const BellResult r = optimize_case(c, SchemeKind::Bloch, RabiSubcase::Equal, n);
      CHECK(r.s_max <= 2.52 + 1e-3);
    }
}

TEST_CASE("property: numeric four-angle maximization matches the analytic maxima") {
  Sampler sampler;
  for (int i = 0; i < 25; ++i) {
    const Scenario sc = sampler.scenario();
    const CorrelationCoefficients cc = coefficients(sc);
    const NumericMaximum phase = maximize_settings_numeric(sc, SchemeKind::Phase);
    CHECK(std::abs(phase.s_max - smax_phase_analytic(cc.alpha).s_max) < 1e-6);
    const NumericMaximum bloch = maximize_settings_numeric(sc, SchemeKind::Bloch);
    CHECK(std::abs(bloch.s_max - smax_bloch_restricted(cc.alpha, cc.beta).s_max) < 1e-6);
  }
}

TEST_CASE("unrestricted optimizer reporting agrees with the restricted default") {
  OptimizeOptions unrestricted;
  unrestricted.restrict_bloch_settings = false;
  const BellResult a =
      optimize_case(InitialCase::BothExcited, SchemeKind::Bloch, RabiSubcase::Equal, 0);
  const BellResult b = optimize_case(InitialCase::BothExcited, SchemeKind::Bloch,
                                     RabiSubcase::Equal, 0, unrestricted);
  CHECK(std::abs(a.s_max - b.s_max) < 1e-6);
  const Scenario sc(InitialCase::BothExcited, 0, b.eta1, b.eta2);
  CHECK(bell_sum(sc, SchemeKind::Bloch, b.settings) == doctest::Approx(b.s_max).epsilon(1e-9));
}

TEST_CASE("alignment factor curve") {
  const auto curve = scan_alpha_factor(InitialCase::ExcitedGround, 1, {0.0, 25.0}, 1e-3);
  REQUIRE(curve.size() == 25001);
  CHECK(curve[0].value == 0.0);
  CHECK(std::abs(curve[3300].value) > 0.98);   // eta2 = 3.3
  CHECK(std::abs(curve[18800].value) > 0.98);  // eta2 = 18.8
  for (const auto& p : curve)
    CHECK(p.value ==
          doctest::Approx(std::sin(p.eta2 * std::sqrt(2.0)) * std::cos(p.eta2)).epsilon(1e-12));
}

TEST_CASE("restricted bloch maximum curve") {
  const double eta1 = pi / (4.0 * std::sqrt(2.0));
  const auto curve = scan_bloch_maximum(eta1, 1, {0.0, 18.8}, 1e-3);
  REQUIRE(curve.size() == 18801);

  // at eta2 = 0 the curve equals 4|beta| (alpha's sine factor vanishes)
  const CorrelationCoefficients cc0 =
      coefficients(Scenario(InitialCase::ExcitedGround, 1, eta1, 0.0));
  CHECK(cc0.alpha == 0.0);
  CHECK(curve[0].value == doctest::Approx(4.0 * std::abs(cc0.beta)).epsilon(1e-12));

  auto window_max = [&](double lo, double hi) {
    double m = 0.0;
    for (const auto& p : curve)
      if (p.eta2 >= lo && p.eta2 <= hi) m = std::max(m, p.value);
    return m;
  };
  // the first near-saturation window peaks at 2.7773, not quite the 2.83 the
  // narrative around the published figure suggests
  const double peak = window_max(3.2, 3.4);
  CHECK(peak > 2.776);
  CHECK(peak < 2.779);
  CHECK(window_max(18.5, 18.8) > 2.79);
  CHECK(curve[12350].value >= 2.0);  // eta2 = 12.35
  CHECK(curve[1000].value < 2.0);    // eta2 = 1.0
  CHECK(curve[7500].value < 2.0);    // eta2 = 7.5
}

TEST_CASE("optimizer ties break toward the smallest eta") {
  // the degenerate objective is flat, so the reported eta must be the range start
  const BellResult r =
      optimize_case(InitialCase::BothGround, SchemeKind::Bloch, RabiSubcase::Equal, 0);
  CHECK(r.eta1 == 0.0);
  CHECK(r.eta2 == 0.0);
}

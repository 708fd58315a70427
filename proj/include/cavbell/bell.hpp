#pragma once

#include <cstddef>
#include <vector>

#include "cavbell/correlators.hpp"

namespace cavbell {

enum class SchemeKind { Phase, Bloch };
enum class RabiSubcase { Equal, Unequal };

/// The four CHSH settings (phases or Bloch angles, depending on the scheme).
struct ChshSettings {
  double a1;
  double a1_prime;
  double a2;
  double a2_prime;
};

struct EtaInterval {
  double lo = 0.0;
  double hi = 25.0;
};

/// Uniform grid over an interval; the last point is the interval end.
class EtaGrid {
 public:
  EtaGrid(EtaInterval r, double step);
  std::size_t size() const { return count_; }
  double operator[](std::size_t i) const;

 private:
  EtaInterval range_;
  double step_;
  std::size_t count_;
};

/// CHSH combination |E(a1,a2) + E(a1,a2') + E(a1',a2) - E(a1',a2')| with E
/// from the generic operator engine.
double bell_sum(const Scenario& sc, SchemeKind scheme, const ChshSettings& st);

struct PhaseMaximum {
  double s_max;
  ChshSettings settings;  // (0, pi/2, pi/4, -pi/4)
};

/// Maximum of the CHSH sum for a phase-scheme correlation with coefficient
/// alpha: 4*sqrt(2)*|alpha|, attained at the returned settings.
PhaseMaximum smax_phase_analytic(double alpha);

struct BlochMaximum {
  double s_max;
  double theta2;  // optimal second-atom angle, atan2(alpha, beta)
  ChshSettings settings;
};

/// Maximum of the CHSH sum under the restricted Bloch settings
/// theta1 = 0, theta1' = pi/2, theta2 = -theta2': 4*hypot(alpha, beta).
BlochMaximum smax_bloch_restricted(double alpha, double beta);

struct BellResult {
  double s_max = 0.0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  ChshSettings settings{0, 0, 0, 0};
  int photons = 0;
  InitialCase initial = InitialCase::BothGround;
  SchemeKind scheme = SchemeKind::Phase;
  RabiSubcase subcase = RabiSubcase::Equal;
};

struct OptimizeOptions {
  EtaInterval range{};
  double grid_step_1d = 1e-3;
  double refine_tol_1d = 1e-6;
  double grid_step_2d = 1e-2;
  double refine_tol_2d = 1e-5;
  /// When false, the reported settings come from the unrestricted four-angle
  /// numeric maximizer instead of the restricted family (the maxima agree;
  /// the restriction is the default reporting convention).
  bool restrict_bloch_settings = true;
};

/// Maximizes the Bell sum over the Rabi angles for one (preparation, scheme,
/// Rabi-subcase, photon number) combination. Equal subcase: 1-D grid scan
/// plus golden-section refinement. Unequal subcase: the phase scheme
/// factorizes into two 1-D problems; the Bloch scheme scans the full 2-D
/// grid. Ties are broken toward the smallest eta.
BellResult optimize_case(InitialCase initial, SchemeKind scheme, RabiSubcase subcase, int photons,
                         const OptimizeOptions& opts = {});

struct CurvePoint {
  double eta2;
  double value;
};

/// Trig-only evaluation of (alpha, beta); agrees with coefficients() to
/// floating-point accuracy without building the post-cavity state. This is
/// what grid scans and sweeps evaluate.
CorrelationCoefficients closed_form_coefficients(InitialCase initial, int photons, double eta1,
                                                 double eta2);

/// eta2-dependent factor of alpha for unequal Rabi angles (for the
/// excited-ground preparation at photons = 1 this is sin(eta2*sqrt(2))*cos(eta2)).
double alpha_eta2_factor(InitialCase initial, int photons, double eta2);

/// Rabi-angle factor contributed by the first atom: sin(x)cos(x) at
/// x = eta1*sqrt(m) with the case-matched excitation index m.
double alpha_eta1_factor(InitialCase initial, int photons, double eta1);

/// Tabulates alpha_eta2_factor over a grid.
std::vector<CurvePoint> scan_alpha_factor(InitialCase initial, int photons, EtaInterval range,
                                          double step);

/// Tabulates the restricted Bloch maximum 4*hypot(alpha, beta) as a function
/// of eta2 at fixed eta1.
std::vector<CurvePoint> scan_bloch_maximum(double eta1, int photons, EtaInterval range,
                                           double step);

struct NumericMaximum {
  double s_max;
  ChshSettings settings;
};

/// Unrestricted numeric maximization of the Bell sum over all four settings
/// (closed-form correlations, multi-start coordinate ascent).
NumericMaximum maximize_settings_numeric(const Scenario& sc, SchemeKind scheme);

}  // namespace cavbell

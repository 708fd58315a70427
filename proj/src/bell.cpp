#include "cavbell/bell.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace cavbell {

namespace {

constexpr double pi = std::numbers::pi;
constexpr double sqrt2 = std::numbers::sqrt2;

// ---------------------------------------------------------------------------
// Fast closed-form coefficient kernel. alpha and beta separate into a part
// depending only on eta1 and a part depending only on eta2:
//   alpha = k1 * A(eta2)
//   beta  = (P * C(eta2) + Q * D(eta2)) / 2
// which lets grid scans precompute per-axis columns. Must agree with
// alpha_coefficient / beta_coefficient (tested).
// ---------------------------------------------------------------------------

struct CoeffKernel {
  InitialCase initial;
  int photons;
  bool degenerate;  // both-ground with empty cavity: alpha = 0, beta = 1/2

  struct Eta1Part {
    double k1, p, q;
  };
  struct Eta2Part {
    double a, c, d;
  };

  static CoeffKernel make(InitialCase initial, int photons) {
    return {initial, photons, initial == InitialCase::BothGround && photons == 0};
  }

  Eta1Part eta1_part(double e1) const {
    const int m = initial == InitialCase::BothGround ? photons : photons + 1;
    const double x = e1 * std::sqrt(static_cast<double>(m));
    const double c = std::cos(x), s = std::sin(x);
    switch (initial) {
      case InitialCase::BothGround:
        return {s * c, c * c, -s * s};
      case InitialCase::BothExcited:
        return {s * c, c * c, -s * s};
      case InitialCase::ExcitedGround:
        return {-s * c, -c * c, s * s};
    }
    throw std::invalid_argument("CoeffKernel: unknown case");
  }

  Eta2Part eta2_part(double e2) const {
    const int n = photons;
    switch (initial) {
      case InitialCase::BothGround: {
        if (n < 1) return {0.0, 0.0, 0.0};
        const double rn = std::sqrt(static_cast<double>(n));
        const double rm = std::sqrt(static_cast<double>(n - 1));
        return {std::sin(e2 * rn) * std::cos(e2 * rm), std::cos(2.0 * e2 * rn),
                std::cos(2.0 * e2 * rm)};
      }
      case InitialCase::BothExcited: {
        const double r1 = std::sqrt(static_cast<double>(n + 1));
        const double r2 = std::sqrt(static_cast<double>(n + 2));
        return {std::sin(e2 * r1) * std::cos(e2 * r2), std::cos(2.0 * e2 * r1),
                std::cos(2.0 * e2 * r2)};
      }
      case InitialCase::ExcitedGround: {
        const double rn = std::sqrt(static_cast<double>(n));
        const double r1 = std::sqrt(static_cast<double>(n + 1));
        return {std::sin(e2 * r1) * std::cos(e2 * rn), std::cos(2.0 * e2 * rn),
                std::cos(2.0 * e2 * r1)};
      }
    }
    throw std::invalid_argument("CoeffKernel: unknown case");
  }

  CorrelationCoefficients eval(const Eta1Part& u, const Eta2Part& v) const {
    if (degenerate) return {0.0, 0.5};
    return {u.k1 * v.a, 0.5 * (u.p * v.c + u.q * v.d)};
  }

  CorrelationCoefficients at(double e1, double e2) const {
    return eval(eta1_part(e1), eta2_part(e2));
  }
};

double phase_objective(const CorrelationCoefficients& cc) { return 4.0 * sqrt2 * std::abs(cc.alpha); }
double bloch_objective(const CorrelationCoefficients& cc) { return 4.0 * std::hypot(cc.alpha, cc.beta); }

// ---------------------------------------------------------------------------
// 1-D maximization: ascending grid scan (strict improvement keeps the
// smallest maximizer) followed by golden-section refinement.
// ---------------------------------------------------------------------------

template <class F>
std::pair<double, double> golden_max(const F& f, double lo, double hi, double tol) {
  constexpr double inv_phi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1);
    }
  }
  const double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

// Grid scan plus golden-section refinement of every near-optimal grid-local
// maximum; the smallest eta achieving the maximum within 1e-9 wins.
template <class F>
std::pair<double, double> scan_refine_1d(const F& f, EtaInterval r, double step, double tol) {
  const EtaGrid grid(r, step);
  std::vector<double> values(grid.size());
  double grid_best = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    values[i] = f(grid[i]);
    grid_best = std::max(grid_best, values[i]);
  }

  auto refine = [&](std::size_t i) {
    const double lo = std::max(r.lo, grid[i] - step);
    const double hi = std::min(r.hi, grid[i] + step);
    auto [x, v] = golden_max(f, lo, hi, tol);
    if (values[i] > v) return std::pair{grid[i], values[i]};
    return std::pair{x, v};
  };

  // candidate := grid-local maximum close enough to possibly win after refinement
  const double admit = grid_best - std::max(1e-6, 16.0 * tol);
  std::vector<std::pair<double, double>> candidates;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const bool local_max = (i == 0 || values[i] >= values[i - 1]) &&
                           (i + 1 == grid.size() || values[i] >= values[i + 1]);
    if (local_max && values[i] >= admit) candidates.push_back(refine(i));
  }
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& [x, v] : candidates) top = std::max(top, v);
  for (const auto& [x, v] : candidates)  // candidates are ordered by eta
    if (v >= top - 1e-9) return {x, v};
  return {grid[0], values[0]};
}

void validate_options(const OptimizeOptions& o) {
  if (!(o.range.hi > o.range.lo)) throw std::invalid_argument("optimize_case: empty eta range");
  if (!(o.grid_step_1d > 0.0) || !(o.grid_step_2d > 0.0))
    throw std::invalid_argument("optimize_case: grid step must be positive");
}

}  // namespace

EtaGrid::EtaGrid(EtaInterval r, double step) : range_(r), step_(step) {
  if (!(step > 0.0)) throw std::invalid_argument("EtaGrid: step must be positive");
  if (r.hi < r.lo) throw std::invalid_argument("EtaGrid: empty interval");
  count_ = static_cast<std::size_t>(std::floor((r.hi - r.lo) / step + 1e-9)) + 1;
}

double EtaGrid::operator[](std::size_t i) const {
  const double x = range_.lo + static_cast<double>(i) * step_;
  return x > range_.hi ? range_.hi : x;
}

double bell_sum(const Scenario& sc, SchemeKind scheme, const ChshSettings& st) {
  auto e = [&](double x, double y) {
    if (scheme == SchemeKind::Phase) return correlation(sc, PhaseSettings{x, y});
    return correlation(sc, BlochSettings{x, y});
  };
  return std::abs(e(st.a1, st.a2) + e(st.a1, st.a2_prime) + e(st.a1_prime, st.a2) -
                  e(st.a1_prime, st.a2_prime));
}

PhaseMaximum smax_phase_analytic(double alpha) {
  return {4.0 * sqrt2 * std::abs(alpha), ChshSettings{0.0, pi / 2, pi / 4, -pi / 4}};
}

BlochMaximum smax_bloch_restricted(double alpha, double beta) {
  const double theta2 = std::atan2(alpha, beta);
  return {4.0 * std::hypot(alpha, beta), theta2, ChshSettings{0.0, pi / 2, theta2, -theta2}};
}

CorrelationCoefficients closed_form_coefficients(InitialCase initial, int photons, double eta1,
                                                 double eta2) {
  if (photons < 0) throw std::invalid_argument("closed_form_coefficients: photons must be >= 0");
  return CoeffKernel::make(initial, photons).at(eta1, eta2);
}

double alpha_eta1_factor(InitialCase initial, int photons, double eta1) {
  const int m = initial == InitialCase::BothGround ? photons : photons + 1;
  const double x = eta1 * std::sqrt(static_cast<double>(m));
  const double f = std::sin(x) * std::cos(x);
  return initial == InitialCase::ExcitedGround ? -f : f;
}

double alpha_eta2_factor(InitialCase initial, int photons, double eta2) {
  switch (initial) {
    case InitialCase::BothGround:
      if (photons < 1) return 0.0;
      return std::sin(eta2 * std::sqrt(static_cast<double>(photons))) *
             std::cos(eta2 * std::sqrt(static_cast<double>(photons - 1)));
    case InitialCase::BothExcited:
      return std::sin(eta2 * std::sqrt(static_cast<double>(photons + 1))) *
             std::cos(eta2 * std::sqrt(static_cast<double>(photons + 2)));
    case InitialCase::ExcitedGround:
      return std::sin(eta2 * std::sqrt(static_cast<double>(photons + 1))) *
             std::cos(eta2 * std::sqrt(static_cast<double>(photons)));
  }
  throw std::invalid_argument("alpha_eta2_factor: unknown case");
}

std::vector<CurvePoint> scan_alpha_factor(InitialCase initial, int photons, EtaInterval range,
                                          double step) {
  const EtaGrid grid(range, step);
  std::vector<CurvePoint> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i)
    out.push_back({grid[i], alpha_eta2_factor(initial, photons, grid[i])});
  return out;
}

std::vector<CurvePoint> scan_bloch_maximum(double eta1, int photons, EtaInterval range,
                                           double step) {
  const auto kernel = CoeffKernel::make(InitialCase::ExcitedGround, photons);
  const auto u = kernel.eta1_part(eta1);
  const EtaGrid grid(range, step);
  std::vector<CurvePoint> out;
  out.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto cc = kernel.eval(u, kernel.eta2_part(grid[i]));
    out.push_back({grid[i], bloch_objective(cc)});
  }
  return out;
}

namespace {

// Full 2-D grid scan with per-axis precomputation, then alternating 1-D
// golden refinements around the best grid point.
BellResult optimize_bloch_unequal(const CoeffKernel& kernel, const OptimizeOptions& opts) {
  const EtaGrid grid(opts.range, opts.grid_step_2d);
  std::vector<CoeffKernel::Eta2Part> columns(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) columns[j] = kernel.eta2_part(grid[j]);

  double best = -1.0;
  std::size_t bi = 0, bj = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto u = kernel.eta1_part(grid[i]);
    for (std::size_t j = 0; j < grid.size(); ++j) {
      const auto cc = kernel.eval(u, columns[j]);
      const double s = cc.alpha * cc.alpha + cc.beta * cc.beta;
      if (s > best) {
        best = s;
        bi = i;
        bj = j;
      }
    }
  }

  double e1 = grid[bi], e2 = grid[bj];
  auto value = [&](double x, double y) { return bloch_objective(kernel.at(x, y)); };
  const double bracket = opts.grid_step_2d;
  for (int round = 0; round < 40; ++round) {
    auto [x1, v1] = golden_max([&](double x) { return value(x, e2); },
                               std::max(opts.range.lo, e1 - bracket),
                               std::min(opts.range.hi, e1 + bracket), opts.refine_tol_2d);
    auto [x2, v2] = golden_max([&](double y) { return value(x1, y); },
                               std::max(opts.range.lo, e2 - bracket),
                               std::min(opts.range.hi, e2 + bracket), opts.refine_tol_2d);
    const double moved = std::abs(x1 - e1) + std::abs(x2 - e2);
    e1 = x1;
    e2 = x2;
    if (moved < opts.refine_tol_2d) break;
  }

  BellResult r;
  r.eta1 = e1;
  r.eta2 = e2;
  r.s_max = value(e1, e2);
  return r;
}

}  // namespace

BellResult optimize_case(InitialCase initial, SchemeKind scheme, RabiSubcase subcase, int photons,
                         const OptimizeOptions& opts) {
  validate_options(opts);
  if (photons < 0) throw std::invalid_argument("optimize_case: photon number must be >= 0");

  const auto kernel = CoeffKernel::make(initial, photons);
  BellResult r;
  r.photons = photons;
  r.initial = initial;
  r.scheme = scheme;
  r.subcase = subcase;

  if (subcase == RabiSubcase::Equal) {
    if (kernel.degenerate) {
      // both-ground, empty cavity: the objective is flat
      r.eta1 = r.eta2 = opts.range.lo;
      r.s_max = scheme == SchemeKind::Phase ? 0.0 : 2.0;
    } else {
      auto objective = [&](double eta) {
        const auto cc = kernel.at(eta, eta);
        return scheme == SchemeKind::Phase ? phase_objective(cc) : bloch_objective(cc);
      };
      auto [eta, s] =
          scan_refine_1d(objective, opts.range, opts.grid_step_1d, opts.refine_tol_1d);
      r.eta1 = r.eta2 = eta;
      r.s_max = s;
    }
  } else if (scheme == SchemeKind::Phase) {
    if (kernel.degenerate) {
      // both-ground, empty cavity: alpha vanishes identically
      r.eta1 = r.eta2 = opts.range.lo;
      r.s_max = 0.0;
    } else {
      // alpha factorizes, so the 2-D maximization splits into two 1-D scans
      auto [e1, f1] = scan_refine_1d(
          [&](double x) { return std::abs(alpha_eta1_factor(initial, photons, x)); }, opts.range,
          opts.grid_step_1d, opts.refine_tol_1d);
      auto [e2, f2] = scan_refine_1d(
          [&](double x) { return std::abs(alpha_eta2_factor(initial, photons, x)); }, opts.range,
          opts.grid_step_1d, opts.refine_tol_1d);
      r.eta1 = e1;
      r.eta2 = e2;
      r.s_max = 4.0 * sqrt2 * f1 * f2;
    }
  } else {
    if (kernel.degenerate) {
      r.eta1 = r.eta2 = opts.range.lo;
      r.s_max = 2.0;  // alpha = 0, beta = 1/2
    } else {
      BellResult grid_result = optimize_bloch_unequal(kernel, opts);
      r.eta1 = grid_result.eta1;
      r.eta2 = grid_result.eta2;
      r.s_max = grid_result.s_max;
    }
  }

  const CorrelationCoefficients cc = kernel.at(r.eta1, r.eta2);
  if (scheme == SchemeKind::Phase) {
    r.settings = smax_phase_analytic(cc.alpha).settings;
  } else if (opts.restrict_bloch_settings) {
    r.settings = smax_bloch_restricted(cc.alpha, cc.beta).settings;
  } else {
    const Scenario sc(initial, photons, r.eta1, r.eta2);
    const NumericMaximum nm = maximize_settings_numeric(sc, scheme);
    r.settings = nm.settings;
    r.s_max = nm.s_max;
  }
  return r;
}

namespace {

// Signed CHSH combination from the closed-form correlation.
double signed_chsh(SchemeKind scheme, const CorrelationCoefficients& cc, const ChshSettings& st) {
  auto e = [&](double x, double y) {
    if (scheme == SchemeKind::Phase) return 2.0 * cc.alpha * std::cos(y - x);
    return 2.0 * cc.alpha * std::sin(x) * std::sin(y) + 2.0 * cc.beta * std::cos(x) * std::cos(y);
  };
  return e(st.a1, st.a2) + e(st.a1, st.a2_prime) + e(st.a1_prime, st.a2) -
         e(st.a1_prime, st.a2_prime);
}

}  // namespace

NumericMaximum maximize_settings_numeric(const Scenario& sc, SchemeKind scheme) {
  const CorrelationCoefficients cc = coefficients(sc);

  // The signed sum is sinusoidal in each single setting, so each coordinate
  // step maximizes |K + C cos x + S sin x| exactly.
  auto ascend = [&](ChshSettings st) {
    double current = std::abs(signed_chsh(scheme, cc, st));
    for (int sweep = 0; sweep < 200; ++sweep) {
      const double before = current;
      double* coords[4] = {&st.a1, &st.a1_prime, &st.a2, &st.a2_prime};
      for (double* coord : coords) {
        // The signed sum along one coordinate is k + r*cos(x - delta); its
        // absolute maximum sits at delta or delta + pi.
        *coord = 0.0;
        const double t0 = signed_chsh(scheme, cc, st);
        *coord = pi / 2;
        const double th = signed_chsh(scheme, cc, st);
        *coord = pi;
        const double tp = signed_chsh(scheme, cc, st);
        const double k = 0.5 * (t0 + tp);
        const double c = 0.5 * (t0 - tp);
        const double s = th - k;
        const double r = std::hypot(c, s);
        const double delta = std::atan2(s, c);
        *coord = std::abs(k + r) >= std::abs(k - r) ? delta : delta + pi;
      }
      current = std::abs(signed_chsh(scheme, cc, st));
      if (current - before < 1e-13) break;
    }
    return std::pair{current, st};
  };

  std::vector<ChshSettings> starts = {
      smax_phase_analytic(cc.alpha).settings,
      smax_bloch_restricted(cc.alpha, cc.beta).settings,
      ChshSettings{0.3, 1.9, -0.7, 2.5},
      ChshSettings{1.1, -0.4, 0.9, -2.2},
  };

  NumericMaximum best{-1.0, starts.front()};
  for (const auto& st : starts) {
    auto [s, settings] = ascend(st);
    if (s > best.s_max) best = {s, settings};
  }
  return best;
}

}  // namespace cavbell

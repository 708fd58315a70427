#include "cavbell/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <ostream>
#include <sstream>

#include "cavbell/correlators.hpp"

namespace cavbell::cli {

namespace {

std::string fmt(const char* pattern, double v) {
  if (v == 0.0) v = 0.0;  // normalize negative zero
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

std::string fmt6(double v) { return fmt("%.6g", v); }
std::string fmt15(double v) { return fmt("%.15g", v); }

// Display rounding: half away from zero to two decimals.
std::string fmt_display2(double v) { return fmt("%.2f", std::round(v * 100.0) / 100.0); }

char separator(OutputFormat f) { return f == OutputFormat::Csv ? ',' : '\t'; }

void write_record(std::ostream& os, const std::vector<std::string>& cells, char sep) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os << sep;
    os << cells[i];
  }
  os << '\n';
}

/// Runs `body` against the configured sink; reports open/write failures.
int with_output(const OutputOptions& output, std::ostream& diag,
                const std::function<void(std::ostream&)>& body) {
  if (output.path.empty()) {
    body(std::cout);
    std::cout.flush();
    return std::cout ? exit_ok : exit_usage;
  }
  std::ofstream file(output.path);
  if (!file) {
    diag << "error: cannot open output file: " << output.path << "\n";
    return exit_usage;
  }
  body(file);
  file.flush();
  if (!file) {
    diag << "error: failed writing output file: " << output.path << "\n";
    return exit_usage;
  }
  return exit_ok;
}

// ---------------------------------------------------------------------------
// Minimal standalone SVG plot: axes plus one polyline per series. Decorative;
// the CSV output is the contract.
// ---------------------------------------------------------------------------

struct PlotSeries {
  std::string label;
  std::vector<CurvePoint> points;
};

void write_svg(std::ostream& os, const std::vector<PlotSeries>& series) {
  constexpr double width = 800, height = 500;
  constexpr double left = 60, right = 780, top = 20, bottom = 460;
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;
  bool first = true;
  for (const auto& s : series)
    for (const auto& p : s.points) {
      if (first) {
        xmin = xmax = p.eta2;
        ymin = ymax = p.value;
        first = false;
      } else {
        xmin = std::min(xmin, p.eta2);
        xmax = std::max(xmax, p.eta2);
        ymin = std::min(ymin, p.value);
        ymax = std::max(ymax, p.value);
      }
    }
  if (xmax <= xmin) xmax = xmin + 1;
  if (ymax <= ymin) ymax = ymin + 1;
  auto sx = [&](double x) { return left + (x - xmin) / (xmax - xmin) * (right - left); };
  auto sy = [&](double y) { return bottom - (y - ymin) / (ymax - ymin) * (bottom - top); };

  static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                  "#ff7f0e", "#8c564b"};
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
     << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
  os << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"white\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << bottom << "\" x2=\"" << right << "\" y2=\""
     << bottom << "\" stroke=\"black\"/>\n";
  os << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << bottom
     << "\" stroke=\"black\"/>\n";
  os << "<text x=\"" << left << "\" y=\"" << bottom + 16 << "\" font-size=\"12\">" << fmt6(xmin)
     << "</text>\n";
  os << "<text x=\"" << right - 40 << "\" y=\"" << bottom + 16 << "\" font-size=\"12\">"
     << fmt6(xmax) << "</text>\n";
  os << "<text x=\"4\" y=\"" << bottom << "\" font-size=\"12\">" << fmt6(ymin) << "</text>\n";
  os << "<text x=\"4\" y=\"" << top + 10 << "\" font-size=\"12\">" << fmt6(ymax) << "</text>\n";
  for (std::size_t i = 0; i < series.size(); ++i) {
    const char* color = palette[i % std::size(palette)];
    os << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1\" points=\"";
    for (const auto& p : series[i].points) os << fmt6(sx(p.eta2)) << ',' << fmt6(sy(p.value)) << ' ';
    os << "\"/>\n";
    if (!series[i].label.empty())
      os << "<text x=\"" << right - 180 << "\" y=\"" << top + 14 + 14 * static_cast<double>(i)
         << "\" font-size=\"12\" fill=\"" << color << "\">" << series[i].label << "</text>\n";
  }
  os << "</svg>\n";
}

int write_plot_file(const std::string& path, const std::vector<PlotSeries>& series,
                    std::ostream& diag) {
  if (path.empty()) return exit_ok;
  std::ofstream file(path);
  if (!file) {
    diag << "error: cannot open plot file: " << path << "\n";
    return exit_usage;
  }
  write_svg(file, series);
  file.flush();
  if (!file) {
    diag << "error: failed writing plot file: " << path << "\n";
    return exit_usage;
  }
  return exit_ok;
}

std::vector<std::string> settings_cells(const ChshSettings& st) {
  return {fmt6(st.a1), fmt6(st.a1_prime), fmt6(st.a2), fmt6(st.a2_prime)};
}

/// Per-point maximal Bell sum used by sweep rows: the scheme-matched closed
/// form at fixed Rabi angles.
struct PointMaximum {
  double s;
  ChshSettings settings;
};

PointMaximum point_maximum(SchemeKind scheme, const CorrelationCoefficients& cc) {
  if (scheme == SchemeKind::Phase) {
    const PhaseMaximum pm = smax_phase_analytic(cc.alpha);
    return {pm.s_max, pm.settings};
  }
  const BlochMaximum bm = smax_bloch_restricted(cc.alpha, cc.beta);
  return {bm.s_max, bm.settings};
}

}  // namespace

std::string case_label(InitialCase c) {
  switch (c) {
    case InitialCase::BothGround: return "I";
    case InitialCase::BothExcited: return "II";
    case InitialCase::ExcitedGround: return "III";
  }
  return "?";
}

std::string scheme_label(SchemeKind s) { return s == SchemeKind::Phase ? "phase" : "bloch"; }

std::string subcase_label(RabiSubcase s) { return s == RabiSubcase::Equal ? "equal" : "unequal"; }

std::optional<InitialCase> parse_case(std::string_view text) {
  if (text == "I") return InitialCase::BothGround;
  if (text == "II") return InitialCase::BothExcited;
  if (text == "III") return InitialCase::ExcitedGround;
  return std::nullopt;
}

std::optional<SchemeKind> parse_scheme(std::string_view text) {
  if (text == "phase") return SchemeKind::Phase;
  if (text == "bloch") return SchemeKind::Bloch;
  return std::nullopt;
}

std::optional<RabiSubcase> parse_subcase(std::string_view text) {
  if (text == "equal") return RabiSubcase::Equal;
  if (text == "unequal") return RabiSubcase::Unequal;
  return std::nullopt;
}

int cmd_table1(const Table1Options& options, std::ostream& diag) {
  if (options.photon_list.empty()) {
    diag << "error: the photon-number list must not be empty\n";
    return exit_usage;
  }
  for (int n : options.photon_list)
    if (n < 0) {
      diag << "error: photon numbers must be >= 0\n";
      return exit_usage;
    }
  if (!(options.range.hi > options.range.lo)) {
    diag << "error: eta range must satisfy eta-min < eta-max\n";
    return exit_usage;
  }

  std::vector<int> photon_list = options.photon_list;
  std::sort(photon_list.begin(), photon_list.end());
  photon_list.erase(std::unique(photon_list.begin(), photon_list.end()), photon_list.end());

  OptimizeOptions opt;
  opt.range = options.range;

  std::vector<std::vector<std::string>> rows;
  for (InitialCase c :
       {InitialCase::BothGround, InitialCase::BothExcited, InitialCase::ExcitedGround}) {
    if (options.only_case && *options.only_case != c) continue;
    for (SchemeKind scheme : {SchemeKind::Phase, SchemeKind::Bloch}) {
      if (options.only_scheme && *options.only_scheme != scheme) continue;
      for (RabiSubcase subcase : {RabiSubcase::Equal, RabiSubcase::Unequal}) {
        if (options.only_subcase && *options.only_subcase != subcase) continue;
        BellResult best;
        bool have = false;
        for (int n : photon_list) {
          const BellResult r = optimize_case(c, scheme, subcase, n, opt);
          if (!have || r.s_max > best.s_max) {
            best = r;
            have = true;
          }
        }
        std::vector<std::string> row{case_label(c), scheme_label(scheme), subcase_label(subcase),
                                     std::to_string(best.photons), fmt6(best.eta1),
                                     fmt6(best.eta2)};
        for (auto& cell : settings_cells(best.settings)) row.push_back(std::move(cell));
        row.push_back(fmt_display2(best.s_max));
        row.push_back(fmt15(best.s_max));
        rows.push_back(std::move(row));
      }
    }
  }

  return with_output(options.output, diag, [&](std::ostream& os) {
    const char sep = separator(options.output.format);
    write_record(os,
                 {"case", "scheme", "subcase", "n", "eta1", "eta2", "a1", "a1_prime", "a2",
                  "a2_prime", "s_display", "s_value"},
                 sep);
    for (const auto& row : rows) write_record(os, row, sep);
  });
}

int cmd_fig1(const Fig1Options& options, std::ostream& diag) {
  if (!(options.step > 0.0)) {
    diag << "error: step must be positive\n";
    return exit_usage;
  }
  if (!(options.range.hi > options.range.lo)) {
    diag << "error: eta range must satisfy eta-min < eta-max\n";
    return exit_usage;
  }
  const auto curve =
      scan_alpha_factor(InitialCase::ExcitedGround, 1, options.range, options.step);
  const int rc = with_output(options.output, diag, [&](std::ostream& os) {
    const char sep = separator(options.output.format);
    write_record(os, {"eta2", "value"}, sep);
    for (const auto& p : curve) write_record(os, {fmt6(p.eta2), fmt6(p.value)}, sep);
  });
  if (rc != exit_ok) return rc;
  return write_plot_file(options.plot_path, {{"alpha factor", curve}}, diag);
}

int cmd_fig2(const Fig2Options& options, std::ostream& diag) {
  if (!(options.step > 0.0)) {
    diag << "error: step must be positive\n";
    return exit_usage;
  }
  if (options.photons < 0) {
    diag << "error: photon number must be >= 0\n";
    return exit_usage;
  }
  if (!(options.range.hi > options.range.lo)) {
    diag << "error: eta range must satisfy eta-min < eta-max\n";
    return exit_usage;
  }
  if (!std::isfinite(options.eta1)) {
    diag << "error: eta1 must be finite\n";
    return exit_usage;
  }
  const auto curve = scan_bloch_maximum(options.eta1, options.photons, options.range, options.step);
  const int rc = with_output(options.output, diag, [&](std::ostream& os) {
    const char sep = separator(options.output.format);
    write_record(os, {"eta2", "s_max"}, sep);
    for (const auto& p : curve) write_record(os, {fmt6(p.eta2), fmt6(p.value)}, sep);
  });
  if (rc != exit_ok) return rc;
  return write_plot_file(options.plot_path, {{"s_max", curve}}, diag);
}

int cmd_correlate(const CorrelateOptions& options, std::ostream& diag) {
  if (options.photons < 0) {
    diag << "error: photon number must be >= 0\n";
    return exit_usage;
  }
  if (!std::isfinite(options.eta1) || !std::isfinite(options.eta2) ||
      !std::isfinite(options.angle1) || !std::isfinite(options.angle2)) {
    diag << "error: eta and angle values must be finite\n";
    return exit_usage;
  }
  const Scenario sc(options.initial, options.photons, options.eta1, options.eta2);
  const MeasurementScheme scheme =
      options.scheme == SchemeKind::Phase
          ? MeasurementScheme{PhaseSettings{options.angle1, options.angle2}}
          : MeasurementScheme{BlochSettings{options.angle1, options.angle2}};
  const double e_generic = correlation(sc, scheme);
  const double e_closed = correlation_closed_form(sc, scheme);
  const CorrelationCoefficients cc = coefficients(sc);
  const double diff = std::abs(e_generic - e_closed);
  const bool pass = diff < 1e-10;

  const int rc = with_output(options.output, diag, [&](std::ostream& os) {
    const char sep = separator(options.output.format);
    write_record(os,
                 {"case", "scheme", "n", "eta1", "eta2", "angle1", "angle2", "e_generic",
                  "e_closed", "alpha", "beta", "abs_diff", "check"},
                 sep);
    write_record(os,
                 {case_label(options.initial), scheme_label(options.scheme),
                  std::to_string(options.photons), fmt6(options.eta1), fmt6(options.eta2),
                  fmt6(options.angle1), fmt6(options.angle2), fmt6(e_generic), fmt6(e_closed),
                  fmt6(cc.alpha), fmt6(cc.beta), fmt6(diff), pass ? "PASS" : "FAIL"},
                 sep);
  });
  if (rc != exit_ok) return rc;
  if (!pass) {
    diag << "error: closed-form and generic correlations disagree by " << fmt6(diff) << "\n";
    return exit_consistency;
  }
  return exit_ok;
}

// ---------------------------------------------------------------------------
// Config parsing
// ---------------------------------------------------------------------------

namespace {

std::string trim(std::string_view s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string_view::npos) return {};
  const auto end = s.find_last_not_of(" \t\r");
  return std::string(s.substr(begin, end - begin + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::size_t start = 0;
  while (start <= value.size()) {
    const auto comma = value.find(',', start);
    const auto end = comma == std::string::npos ? value.size() : comma;
    items.push_back(trim(std::string_view(value).substr(start, end - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return items;
}

std::optional<double> parse_double(const std::string& text) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

std::optional<int> parse_int(const std::string& text) {
  const char* begin = text.data();
  const char* end = begin + text.size();
  int value = 0;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return value;
}

}  // namespace

RunConfig parse_run_config(std::istream& in) {
  RunConfig cfg;
  bool saw_n = false;
  bool saw_eta2_min = false, saw_eta2_max = false;
  double eta2_min = 0.0, eta2_max = 0.0;
  std::map<std::string, int> seen;

  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = raw;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError(line_no, "expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key.empty()) throw ConfigError(line_no, "missing key");
    if (auto [it, inserted] = seen.emplace(key, line_no); !inserted)
      throw ConfigError(line_no, "duplicate key '" + key + "' (first on line " +
                                     std::to_string(it->second) + ")");

    auto require_double = [&](const std::string& v) {
      const auto d = parse_double(v);
      if (!d) throw ConfigError(line_no, "invalid number '" + v + "'");
      return *d;
    };

    if (key == "mode") {
      if (value == "sweep")
        cfg.mode = RunConfig::Mode::Sweep;
      else if (value == "optimize")
        cfg.mode = RunConfig::Mode::Optimize;
      else
        throw ConfigError(line_no, "mode must be 'sweep' or 'optimize'");
    } else if (key == "case") {
      cfg.cases.clear();
      for (const auto& item : split_list(value)) {
        const auto c = parse_case(item);
        if (!c) throw ConfigError(line_no, "unknown case '" + item + "'");
        cfg.cases.push_back(*c);
      }
    } else if (key == "scheme") {
      cfg.schemes.clear();
      for (const auto& item : split_list(value)) {
        const auto s = parse_scheme(item);
        if (!s) throw ConfigError(line_no, "unknown scheme '" + item + "'");
        cfg.schemes.push_back(*s);
      }
    } else if (key == "subcase") {
      cfg.subcases.clear();
      for (const auto& item : split_list(value)) {
        const auto s = parse_subcase(item);
        if (!s) throw ConfigError(line_no, "unknown subcase '" + item + "'");
        cfg.subcases.push_back(*s);
      }
    } else if (key == "n") {
      saw_n = true;
      cfg.photon_list.clear();
      for (const auto& item : split_list(value)) {
        const auto n = parse_int(item);
        if (!n || *n < 0) throw ConfigError(line_no, "invalid photon number '" + item + "'");
        cfg.photon_list.push_back(*n);
      }
    } else if (key == "eta_min") {
      cfg.range.lo = require_double(value);
    } else if (key == "eta_max") {
      cfg.range.hi = require_double(value);
    } else if (key == "eta_step") {
      cfg.eta_step = require_double(value);
    } else if (key == "eta1") {
      cfg.eta1_pinned = require_double(value);
    } else if (key == "eta2_min") {
      eta2_min = require_double(value);
      saw_eta2_min = true;
    } else if (key == "eta2_max") {
      eta2_max = require_double(value);
      saw_eta2_max = true;
    } else if (key == "eta2_step") {
      cfg.eta2_step = require_double(value);
    } else if (key == "out") {
      cfg.out = value;
    } else if (key == "format") {
      if (value == "csv")
        cfg.format = OutputFormat::Csv;
      else if (value == "tsv")
        cfg.format = OutputFormat::Tsv;
      else
        throw ConfigError(line_no, "format must be 'csv' or 'tsv'");
    } else if (key == "plot") {
      cfg.plot = value;
    } else {
      throw ConfigError(line_no, "unknown key '" + key + "'");
    }
  }

  if (!saw_n || cfg.photon_list.empty()) throw ConfigError(line_no, "non-empty 'n' list required");
  if (cfg.cases.empty()) throw ConfigError(line_no, "case list must not be empty");
  if (cfg.schemes.empty()) throw ConfigError(line_no, "scheme list must not be empty");
  if (cfg.subcases.empty()) throw ConfigError(line_no, "subcase list must not be empty");
  if (!(cfg.range.hi > cfg.range.lo)) throw ConfigError(line_no, "eta range is degenerate");
  if (!(cfg.eta_step > 0.0)) throw ConfigError(line_no, "eta_step must be positive");
  if (saw_eta2_min || saw_eta2_max) {
    EtaInterval r = cfg.range;
    if (saw_eta2_min) r.lo = eta2_min;
    if (saw_eta2_max) r.hi = eta2_max;
    if (!(r.hi > r.lo)) throw ConfigError(line_no, "eta2 range is degenerate");
    cfg.eta2_range = r;
  }
  if (cfg.eta2_step && !(*cfg.eta2_step > 0.0))
    throw ConfigError(line_no, "eta2_step must be positive");
  if (cfg.eta1_pinned && !std::isfinite(*cfg.eta1_pinned))
    throw ConfigError(line_no, "eta1 must be finite");

  const bool wants_unequal =
      std::find(cfg.subcases.begin(), cfg.subcases.end(), RabiSubcase::Unequal) !=
      cfg.subcases.end();
  if (cfg.mode == RunConfig::Mode::Sweep && wants_unequal && !cfg.eta1_pinned)
    throw ConfigError(line_no, "sweep mode with the unequal subcase requires a pinned 'eta1'");
  if (cfg.mode == RunConfig::Mode::Optimize && !cfg.plot.empty())
    throw ConfigError(line_no, "'plot' is only available in sweep mode");

  // deterministic row order: lexicographic in the selector tuple
  auto sort_unique = [](auto& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  sort_unique(cfg.cases);
  sort_unique(cfg.schemes);
  sort_unique(cfg.subcases);
  sort_unique(cfg.photon_list);
  return cfg;
}

int cmd_scan(const std::string& config_path, const std::optional<std::string>& out_override,
             const std::optional<OutputFormat>& format_override, std::ostream& diag) {
  std::ifstream file(config_path);
  if (!file) {
    diag << "error: cannot read config file: " << config_path << "\n";
    return exit_usage;
  }
  RunConfig cfg;
  try {
    cfg = parse_run_config(file);
  } catch (const ConfigError& e) {
    diag << config_path << ":" << e.line << ": " << e.what() << "\n";
    return exit_config;
  }
  if (out_override) cfg.out = *out_override;
  if (format_override) cfg.format = *format_override;

  std::vector<std::vector<std::string>> rows;
  std::vector<PlotSeries> series;

  if (cfg.mode == RunConfig::Mode::Sweep) {
    const EtaInterval eta2_range = cfg.eta2_range.value_or(cfg.range);
    const double eta2_step = cfg.eta2_step.value_or(cfg.eta_step);
    for (InitialCase c : cfg.cases)
      for (SchemeKind scheme : cfg.schemes)
        for (RabiSubcase subcase : cfg.subcases)
          for (int n : cfg.photon_list) {
            const bool equal = subcase == RabiSubcase::Equal;
            const EtaGrid grid(equal ? cfg.range : eta2_range, equal ? cfg.eta_step : eta2_step);
            PlotSeries ps;
            ps.label = case_label(c) + "-" + scheme_label(scheme) + "-" + subcase_label(subcase) +
                       "-n" + std::to_string(n);
            ps.points.reserve(grid.size());
            for (std::size_t i = 0; i < grid.size(); ++i) {
              const double eta2 = grid[i];
              const double eta1 = equal ? eta2 : *cfg.eta1_pinned;
              const auto cc = closed_form_coefficients(c, n, eta1, eta2);
              const PointMaximum pm = point_maximum(scheme, cc);
              std::vector<std::string> row{case_label(c),     scheme_label(scheme),
                                           subcase_label(subcase), std::to_string(n),
                                           fmt6(eta1),        fmt6(eta2)};
              for (auto& cell : settings_cells(pm.settings)) row.push_back(std::move(cell));
              row.push_back(fmt6(pm.s));
              rows.push_back(std::move(row));
              ps.points.push_back({eta2, pm.s});
            }
            series.push_back(std::move(ps));
          }
  } else {
    OptimizeOptions opt;
    opt.range = cfg.range;
    for (InitialCase c : cfg.cases)
      for (SchemeKind scheme : cfg.schemes)
        for (RabiSubcase subcase : cfg.subcases)
          for (int n : cfg.photon_list) {
            const BellResult r = optimize_case(c, scheme, subcase, n, opt);
            std::vector<std::string> row{case_label(c),     scheme_label(scheme),
                                         subcase_label(subcase), std::to_string(n),
                                         fmt6(r.eta1),      fmt6(r.eta2)};
            for (auto& cell : settings_cells(r.settings)) row.push_back(std::move(cell));
            row.push_back(fmt6(r.s_max));
            rows.push_back(std::move(row));
          }
  }

  OutputOptions output{cfg.out, cfg.format};
  const int rc = with_output(output, diag, [&](std::ostream& os) {
    const char sep = separator(cfg.format);
    write_record(os,
                 {"case", "scheme", "subcase", "n", "eta1", "eta2", "a1", "a1_prime", "a2",
                  "a2_prime", "s"},
                 sep);
    for (const auto& row : rows) write_record(os, row, sep);
  });
  if (rc != exit_ok) return rc;
  if (!cfg.plot.empty()) return write_plot_file(cfg.plot, series, diag);
  return exit_ok;
}

}  // namespace cavbell::cli

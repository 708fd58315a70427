#pragma once

#include <iosfwd>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "cavbell/bell.hpp"

namespace cavbell::cli {

enum class OutputFormat { Csv, Tsv };

struct OutputOptions {
  std::string path;  // empty -> stdout
  OutputFormat format = OutputFormat::Csv;
};

std::string case_label(InitialCase c);
std::string scheme_label(SchemeKind s);
std::string subcase_label(RabiSubcase s);
std::optional<InitialCase> parse_case(std::string_view text);
std::optional<SchemeKind> parse_scheme(std::string_view text);
std::optional<RabiSubcase> parse_subcase(std::string_view text);

/// Exit codes shared by every subcommand.
inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 1;
inline constexpr int exit_config = 2;
inline constexpr int exit_consistency = 3;

struct Table1Options {
  OutputOptions output;
  std::vector<int> photon_list{0, 1, 2, 3, 4};
  EtaInterval range{};
  std::optional<InitialCase> only_case;
  std::optional<SchemeKind> only_scheme;
  std::optional<RabiSubcase> only_subcase;
};

struct Fig1Options {
  OutputOptions output;
  EtaInterval range{0.0, 25.0};
  double step = 1e-3;
  std::string plot_path;
};

struct Fig2Options {
  OutputOptions output;
  double eta1 = std::numbers::pi / (4.0 * std::numbers::sqrt2);
  int photons = 1;
  EtaInterval range{0.0, 18.8};
  double step = 1e-3;
  std::string plot_path;
};

struct CorrelateOptions {
  InitialCase initial = InitialCase::BothExcited;
  SchemeKind scheme = SchemeKind::Phase;
  int photons = 0;
  double eta1 = 0.0;
  double eta2 = 0.0;
  double angle1 = 0.0;  // phi or theta, depending on the scheme
  double angle2 = 0.0;
  OutputOptions output;
};

/// Config parse failure with the offending 1-based line number.
struct ConfigError : std::runtime_error {
  int line;
  ConfigError(int l, const std::string& message)
      : std::runtime_error(message), line(l) {}
};

/// Sweep/optimize job read from a key=value config file.
struct RunConfig {
  enum class Mode { Sweep, Optimize };
  Mode mode = Mode::Sweep;
  std::vector<InitialCase> cases{InitialCase::BothGround, InitialCase::BothExcited,
                                 InitialCase::ExcitedGround};
  std::vector<SchemeKind> schemes{SchemeKind::Phase, SchemeKind::Bloch};
  std::vector<RabiSubcase> subcases{RabiSubcase::Equal, RabiSubcase::Unequal};
  std::vector<int> photon_list;  // required, non-empty
  EtaInterval range{0.0, 25.0};
  double eta_step = 1e-3;
  std::optional<double> eta1_pinned;       // required by sweep mode with the unequal subcase
  std::optional<EtaInterval> eta2_range;   // defaults to `range`
  std::optional<double> eta2_step;         // defaults to `eta_step`
  std::string out;
  OutputFormat format = OutputFormat::Csv;
  std::string plot;  // sweep mode only
};

/// Parses and validates a config stream; throws ConfigError on any problem.
RunConfig parse_run_config(std::istream& in);

int cmd_table1(const Table1Options& options, std::ostream& diag);
int cmd_fig1(const Fig1Options& options, std::ostream& diag);
int cmd_fig2(const Fig2Options& options, std::ostream& diag);
int cmd_correlate(const CorrelateOptions& options, std::ostream& diag);
int cmd_scan(const std::string& config_path, const std::optional<std::string>& out_override,
             const std::optional<OutputFormat>& format_override, std::ostream& diag);

}  // namespace cavbell::cli

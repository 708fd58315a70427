// Command-line front end for the cavity Bell-test library: maximal Bell-sum
// tables, correlation curves, single-point correlation checks, and config
// driven sweeps, all emitted as CSV/TSV.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "cavbell/cli.hpp"

namespace {

using namespace cavbell;

struct CommonFlags {
  std::string out;
  std::string format = "csv";
};

void add_common(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--out", flags.out, "Output file (default: standard output)");
  cmd->add_option("--format", flags.format, "Output format")
      ->check(CLI::IsMember({"csv", "tsv"}));
}

cli::OutputOptions make_output(const CommonFlags& flags) {
  return {flags.out,
          flags.format == "tsv" ? cli::OutputFormat::Tsv : cli::OutputFormat::Csv};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bell-sum maxima for two Rydberg atoms coupled through a cavity Fock mode"};
  app.require_subcommand(1);

  // table1
  auto* table1 = app.add_subcommand("table1", "Maximal Bell sum per preparation/scheme/subcase");
  CommonFlags table1_common;
  cli::Table1Options table1_opts;
  add_common(table1, table1_common);
  table1->add_option("--n", table1_opts.photon_list, "Photon numbers to enumerate")
      ->delimiter(',');
  table1->add_option("--eta-min", table1_opts.range.lo, "Lower end of the Rabi-angle range");
  table1->add_option("--eta-max", table1_opts.range.hi, "Upper end of the Rabi-angle range");
  std::string table1_case, table1_scheme, table1_subcase;
  table1->add_option("--case", table1_case, "Restrict to one preparation")
      ->check(CLI::IsMember({"I", "II", "III"}));
  table1->add_option("--scheme", table1_scheme, "Restrict to one scheme")
      ->check(CLI::IsMember({"phase", "bloch"}));
  table1->add_option("--subcase", table1_subcase, "Restrict to one Rabi subcase")
      ->check(CLI::IsMember({"equal", "unequal"}));

  // fig1
  auto* fig1 = app.add_subcommand("fig1", "Alpha alignment factor sin(eta2*sqrt(2))*cos(eta2)");
  CommonFlags fig1_common;
  cli::Fig1Options fig1_opts;
  add_common(fig1, fig1_common);
  fig1->add_option("--step", fig1_opts.step, "Grid step");
  fig1->add_option("--eta-min", fig1_opts.range.lo, "Lower end of the eta2 range");
  fig1->add_option("--eta-max", fig1_opts.range.hi, "Upper end of the eta2 range");
  fig1->add_option("--plot", fig1_opts.plot_path, "Also write an SVG plot to this path");

  // fig2
  auto* fig2 = app.add_subcommand(
      "fig2", "Restricted Bloch maximum vs eta2 (excited-ground preparation, fixed eta1)");
  CommonFlags fig2_common;
  cli::Fig2Options fig2_opts;
  add_common(fig2, fig2_common);
  fig2->add_option("--eta1", fig2_opts.eta1, "First atom's Rabi angle");
  fig2->add_option("--n", fig2_opts.photons, "Initial photon number")
      ->check(CLI::NonNegativeNumber);
  fig2->add_option("--step", fig2_opts.step, "Grid step");
  fig2->add_option("--eta-min", fig2_opts.range.lo, "Lower end of the eta2 range");
  fig2->add_option("--eta-max", fig2_opts.range.hi, "Upper end of the eta2 range");
  fig2->add_option("--plot", fig2_opts.plot_path, "Also write an SVG plot to this path");

  // correlate
  auto* correlate =
      app.add_subcommand("correlate", "Single-point correlation with a closed-form cross-check");
  CommonFlags correlate_common;
  cli::CorrelateOptions correlate_opts;
  add_common(correlate, correlate_common);
  std::string correlate_case, correlate_scheme;
  correlate->add_option("--case", correlate_case, "Preparation")
      ->check(CLI::IsMember({"I", "II", "III"}))
      ->required();
  correlate->add_option("--scheme", correlate_scheme, "Measurement scheme")
      ->check(CLI::IsMember({"phase", "bloch"}))
      ->required();
  correlate->add_option("--n", correlate_opts.photons, "Initial photon number")
      ->check(CLI::NonNegativeNumber);
  correlate->add_option("--eta1", correlate_opts.eta1, "First atom's Rabi angle");
  correlate->add_option("--eta2", correlate_opts.eta2, "Second atom's Rabi angle");
  correlate->add_option("--angle1", correlate_opts.angle1,
                        "First measurement setting (phi or theta)");
  correlate->add_option("--angle2", correlate_opts.angle2,
                        "Second measurement setting (phi or theta)");

  // scan
  auto* scan = app.add_subcommand("scan", "Sweep or optimize from a key=value config file");
  CommonFlags scan_common;
  std::string scan_config;
  bool scan_out_set = false, scan_format_set = false;
  scan->add_option("config", scan_config, "Config file path")->required();
  scan->add_option("--out", scan_common.out, "Output file (overrides the config)")
      ->trigger_on_parse()
      ->each([&](const std::string&) { scan_out_set = true; });
  scan->add_option("--format", scan_common.format, "Output format (overrides the config)")
      ->check(CLI::IsMember({"csv", "tsv"}))
      ->each([&](const std::string&) { scan_format_set = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cli::exit_usage;
  }

  try {
    if (*table1) {
      table1_opts.output = make_output(table1_common);
      if (!table1_case.empty()) table1_opts.only_case = cli::parse_case(table1_case);
      if (!table1_scheme.empty()) table1_opts.only_scheme = cli::parse_scheme(table1_scheme);
      if (!table1_subcase.empty()) table1_opts.only_subcase = cli::parse_subcase(table1_subcase);
      return cli::cmd_table1(table1_opts, std::cerr);
    }
    if (*fig1) {
      fig1_opts.output = make_output(fig1_common);
      return cli::cmd_fig1(fig1_opts, std::cerr);
    }
    if (*fig2) {
      fig2_opts.output = make_output(fig2_common);
      return cli::cmd_fig2(fig2_opts, std::cerr);
    }
    if (*correlate) {
      correlate_opts.output = make_output(correlate_common);
      correlate_opts.initial = *cli::parse_case(correlate_case);
      correlate_opts.scheme = *cli::parse_scheme(correlate_scheme);
      return cli::cmd_correlate(correlate_opts, std::cerr);
    }
    if (*scan) {
      std::optional<std::string> out_override;
      std::optional<cli::OutputFormat> format_override;
      if (scan_out_set) out_override = scan_common.out;
      if (scan_format_set)
        format_override = scan_common.format == "tsv" ? cli::OutputFormat::Tsv
                                                      : cli::OutputFormat::Csv;
      return cli::cmd_scan(scan_config, out_override, format_override, std::cerr);
    }
  } catch (const ConsistencyError& e) {
    std::cerr << "internal consistency check failed: " << e.what() << "\n";
    return cli::exit_consistency;
  } catch (const cli::ConfigError& e) {
    std::cerr << "config error (line " << e.line << "): " << e.what() << "\n";
    return cli::exit_config;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::exit_usage;
  }
  return cli::exit_usage;
}

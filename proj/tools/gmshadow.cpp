// Command-line front end: experiment presets, configuration files, bounds and
// clock conversion.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "gmshadow/cli.hpp"

namespace fs = std::filesystem;
using namespace gmshadow;

namespace {

constexpr int kExitConfig = 1;
constexpr int kExitFailure = 2;

struct RunOptions {
  std::string target;
  std::optional<int> resolution;
  std::optional<double> dt;
  std::optional<double> threshold;
  std::optional<double> quench;
  std::optional<double> end_time;
  std::optional<double> logistic_m;
};

bool has_overrides(const RunOptions& o) {
  return o.resolution || o.dt || o.threshold || o.quench || o.end_time || o.logistic_m;
}

// Headline of a report: everything before the embedded configuration.
std::string report_head(const std::string& report) {
  const auto cut = report.find("\n\n");
  return cut == std::string::npos ? report : report.substr(0, cut + 1);
}

int run_target(const RunOptions& o) {
  const fs::path root = output_root();
  if (is_preset(o.target)) {
    PresetOverrides ov;
    ov.resolution = o.resolution;
    ov.dt = o.dt;
    ov.blowup_threshold = o.threshold;
    ov.quench_threshold = o.quench;
    ov.end_time = o.end_time;
    ov.logistic_m = o.logistic_m;
    const auto runs = preset_runs(o.target, ov);
    std::vector<RunResult> results;
    bool failed = false;
    for (const auto& run : runs) {
      std::cout << "[" << o.target << "/" << run.name << "] running..." << std::endl;
      results.push_back(advance(run.config));
      const fs::path dir = root / o.target / run.name;
      write_run_directory(dir, run.config, results.back());
      std::cout << report_head(format_report(run.config, results.back()));
      std::cout << "written to " << dir.string() << "\n\n";
      failed = failed || is_failure(results.back().report.verdict);
    }
    const std::string summary = format_summary(o.target, runs, results);
    std::ofstream(root / o.target / "summary.csv") << summary;
    std::cout << summary;
    return failed ? kExitFailure : 0;
  }

  if (has_overrides(o)) {
    std::cerr << "overrides apply to presets only; edit the configuration file instead\n";
    return kExitConfig;
  }
  const fs::path path(o.target);
  const RunConfig cfg = load_config(path);
  const RunResult result = advance(cfg);
  const fs::path dir = root / path.stem();
  write_run_directory(dir, cfg, result);
  std::cout << report_head(format_report(cfg, result));
  std::cout << "written to " << dir.string() << "\n";
  return is_failure(result.report.verdict) ? kExitFailure : 0;
}

int bounds_target(const std::string& target) {
  if (is_preset(target)) {
    for (const auto& run : preset_runs(target)) {
      std::cout << "[" << target << "/" << run.name << "]\n" << format_bounds(run.config) << "\n";
    }
    return 0;
  }
  std::cout << format_bounds(load_config(target));
  return 0;
}

int print_config(const std::string& preset, const std::string& member) {
  for (const auto& run : preset_runs(preset)) {
    if (member.empty() || member == run.name) {
      std::cout << "# " << preset << "/" << run.name << "\n" << format_config(run.config) << "\n";
      if (!member.empty()) return 0;
    }
  }
  if (!member.empty()) {
    std::cerr << "preset " << preset << " has no run named '" << member << "'\n";
    return kExitConfig;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-local Gierer-Meinhardt solver on evolving domains"};
  app.require_subcommand(1);

  RunOptions run_opts;
  auto* run = app.add_subcommand("run", "Run a preset (exp1, exp1q, exp2a, exp2b, exp3, exp4) "
                                        "or a configuration file");
  run->add_option("target", run_opts.target, "preset id or configuration path")->required();
  run->add_option("--resolution", run_opts.resolution, "grid nodes per side (M for radial)")
      ->check(CLI::Range(3, 1 << 20));
  run->add_option("--dt", run_opts.dt, "base time step");
  run->add_option("--threshold", run_opts.threshold, "blow-up sup-norm threshold");
  run->add_option("--quench-threshold", run_opts.quench, "quench sup-norm floor");
  run->add_option("--end-time", run_opts.end_time, "horizon in the native clock");
  run->add_option("--logistic-m", run_opts.logistic_m, "carrying capacity of the exp3 logistic law");

  std::string bounds_target_arg;
  auto* bounds = app.add_subcommand("bounds", "Print the Bernoulli mean threshold and blow-up bound");
  bounds->add_option("target", bounds_target_arg, "preset id or configuration path")->required();

  std::string law_name;
  double beta = 0.0;
  double m = 1.5;
  int dim = 2;
  std::optional<double> t_value;
  std::optional<double> sigma_value;
  auto* convert = app.add_subcommand("convert-time", "Convert between the physical and rescaled clocks");
  convert->add_option("law", law_name, "static | exp_growth | exp_decay | logistic")->required();
  convert->add_option("--beta", beta, "rate");
  convert->add_option("--m", m, "logistic carrying capacity");
  convert->add_option("--dim", dim, "space dimension");
  auto* t_opt = convert->add_option("--t", t_value, "physical time");
  auto* s_opt = convert->add_option("--sigma", sigma_value, "rescaled time");
  t_opt->excludes(s_opt);
  s_opt->excludes(t_opt);

  std::string show_preset;
  std::string show_member;
  auto* show = app.add_subcommand("print-config", "Print the resolved configuration of a preset");
  show->add_option("preset", show_preset, "preset id")->required();
  show->add_option("run", show_member, "member run name");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return run_target(run_opts);
    if (bounds->parsed()) return bounds_target(bounds_target_arg);
    if (show->parsed()) return print_config(show_preset, show_member);
    if (convert->parsed()) {
      if (!t_value && !sigma_value) {
        std::cerr << "convert-time needs --t or --sigma\n";
        return kExitConfig;
      }
      EvolutionLaw law;
      law.kind = parse_law_kind(law_name);
      law.beta = beta;
      law.m = m;
      law.dim = dim;
      law.validate();
      const double t = t_value ? *t_value : physical_time(law, *sigma_value);
      const double sigma = sigma_value ? *sigma_value : rescaled_time(law, *t_value);
      std::cout << "t = " << format_number(t) << "\nsigma = " << format_number(sigma) << "\n";
      return 0;
    }
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitFailure;
  }
  return 0;
}

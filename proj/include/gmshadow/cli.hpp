#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gmshadow/analysis.hpp"
#include "gmshadow/solver.hpp"

namespace gmshadow {

/// Parse or validation failure in a configuration file. line() is 0 when the
/// problem is not tied to a single line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& source, int line, const std::string& what);
  int line() const { return line_; }

 private:
  int line_;
};

/// Reads the key = value format:
///
///   # comment
///   [run]      system, reaction_weight, dt, end_time, blowup_threshold,
///              quench_threshold, sample_stride, stability_fraction, throttle,
///              max_steps, snapshot_times (comma separated)
///   [params]   p, q, r, s, D1, D2, tau
///   [law]      kind, beta, m, dim
///   [grid]     type (rect | radial), nx, ny, M, dim, boundary, boundary_value
///   [init]     kind, c, delta, lambda
///   [inhibitor] eta0, v0
///
/// Omitted keys keep their defaults. Unknown sections or keys, duplicates and
/// malformed values are errors, as is a configuration that fails validation.
RunConfig parse_config(std::string_view text, const std::string& source = "<config>");
RunConfig load_config(const std::filesystem::path& path);

/// Fully resolved configuration in the same format; parse_config of the
/// result reproduces the configuration exactly.
std::string format_config(const RunConfig& config);

struct PresetRun {
  std::string name;
  RunConfig config;
};

/// Settings a caller may change on a preset.
struct PresetOverrides {
  std::optional<int> resolution;  // nx = ny on rectangles, M on radial grids
  std::optional<double> dt;
  std::optional<double> blowup_threshold;
  std::optional<double> quench_threshold;
  std::optional<double> end_time;
  std::optional<double> logistic_m;  // exp3 logistic decay
};

const std::vector<std::string>& preset_ids();
bool is_preset(std::string_view id);

/// Member runs of an experiment preset, overrides applied and validated.
/// Throws std::invalid_argument for an unknown id.
std::vector<PresetRun> preset_runs(std::string_view id, const PresetOverrides& overrides = {});

/// Series CSV with columns t,sigma,sup_norm,mean_u,zeta,w_moment,eta_or_supv.
void write_series_csv(const TimeSeries& series, std::ostream& os);

/// Run report. The first line is "verdict: <Verdict>"; the resolved
/// configuration is embedded at the end.
std::string format_report(const RunConfig& config, const RunResult& result);

/// Replaces `dir` with exactly config.ini, series.csv, report.txt and one
/// snapshot_NNN.csv per requested snapshot.
void write_run_directory(const std::filesystem::path& dir, const RunConfig& config,
                         const RunResult& result);

/// Comparison table of the member runs of a preset.
std::string format_summary(std::string_view preset, const std::vector<PresetRun>& runs,
                           const std::vector<RunResult>& results);

/// Mean-threshold and blow-up-time bound of a configuration, as text.
std::string format_bounds(const RunConfig& config);

/// GMSHADOW_OUTPUT_DIR when set and non-empty, ./runs otherwise.
std::filesystem::path output_root();

/// True for verdicts that make the command-line tool exit non-zero.
bool is_failure(Verdict verdict);

}  // namespace gmshadow

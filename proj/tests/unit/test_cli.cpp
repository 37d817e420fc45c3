#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "gmshadow/cli.hpp"

using namespace gmshadow;
namespace fs = std::filesystem;

namespace {

int error_line(const std::string& text) {
  try {
    parse_config(text, "test.ini");
  } catch (const ConfigError& e) {
    return e.line();
  }
  return -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("gmshadow_test_" + name);
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("empty configuration gives the defaults") {
  const RunConfig cfg = parse_config("");
  CHECK(cfg.system == SystemKind::NonlocalT);
  CHECK(cfg.dt == 5e-4);
  CHECK(cfg.params.p == 3.0);
  CHECK(std::get<RectGrid>(cfg.grid).nx == 128);
}

TEST_CASE("configuration keys are read") {
  const RunConfig cfg = parse_config(R"(
# radial shadow run
[run]
system = shadow_tau
dt = 1e-4          # trailing comment
end_time = 2.5
snapshot_times = 0.5, 1.0 ,2
[params]
p = 4
q = 4
r = 2
s = 1
tau = 0.05
[law]
kind = exp_decay
beta = 0.2
[grid]
type = radial
M = 64
boundary = dirichlet
[init]
kind = spiky
delta = 0.5
lambda = 0.2
[inhibitor]
eta0 = 0.3
)");
  CHECK(cfg.system == SystemKind::ShadowTau);
  CHECK(cfg.dt == 1e-4);
  CHECK(cfg.end_time == 2.5);
  CHECK(cfg.snapshot_times == std::vector<double>{0.5, 1.0, 2.0});
  CHECK(cfg.params.p == 4.0);
  CHECK(cfg.params.tau == 0.05);
  CHECK(cfg.law.kind == LawKind::ExpDecay);
  CHECK(cfg.law.beta == 0.2);
  CHECK(cfg.law.dim == 3);
  const auto& g = std::get<RadialGrid>(cfg.grid);
  CHECK(g.M == 64);
  CHECK(g.dim == 3);
  CHECK(cfg.radial_boundary == RadialBoundary::Dirichlet);
  CHECK_FALSE(cfg.boundary_value.has_value());
  CHECK(cfg.init.kind == InitKind::Spiky);
  CHECK(*cfg.eta0 == 0.3);
}

TEST_CASE("radial dimension follows the law when only the law sets it") {
  const RunConfig cfg = parse_config("[law]\ndim = 1\n[grid]\ntype = radial\nM = 20\n");
  CHECK(std::get<RadialGrid>(cfg.grid).dim == 1);
  CHECK(cfg.law.dim == 1);
}

TEST_CASE("parse errors carry line numbers") {
  CHECK(error_line("[run]\ndt = 1e-3\nbogus = 1\n") == 3);
  CHECK(error_line("[run]\ndt = 1e-3\n\ndt = 2e-3\n") == 4);
  CHECK(error_line("dt = 1\n") == 1);
  CHECK(error_line("[run]\n[nosuch]\n") == 2);
  CHECK(error_line("[run]\ndt = fast\n") == 2);
  CHECK(error_line("[run]\ndt = 1e-3x\n") == 2);
  CHECK(error_line("[run]\nsample_stride = 2.5\n") == 2);
  CHECK(error_line("[run]\nsystem = implicit\n") == 2);
  CHECK(error_line("[run]\njust words\n") == 2);
  CHECK(error_line("[run\n") == 1);
  CHECK(error_line("[grid]\nM = 10\n") == 2);           // rect grid with M
  CHECK(error_line("[grid]\ntype = radial\nnx = 4\n") == 3);
  CHECK(error_line("[grid]\ntype = hex\n") == 2);
  CHECK(error_line("[run]\n[run]\n") == 2);

  try {
    parse_config("[run]\ndt = 1\ndt = 2\n", "cfg.ini");
    FAIL("expected an error");
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    CHECK(msg.find("cfg.ini:3") == 0);
    CHECK(msg.find("duplicate") != std::string::npos);
    CHECK(msg.find("line 2") != std::string::npos);
  }
}

TEST_CASE("non-positive dt is rejected") {
  CHECK_THROWS_AS(parse_config("[run]\ndt = 0\n"), ConfigError);
  CHECK_THROWS_AS(parse_config("[run]\ndt = -5e-4\n"), ConfigError);
  CHECK(error_line("[run]\ndt = 0\n") == 0);
  CHECK_THROWS_AS(parse_config("[run]\nsystem = nonlocal_sigma\n[law]\nkind = logistic\nbeta = 0.1\n"),
                  ConfigError);
}

TEST_CASE("format_config round-trips") {
  for (const auto& id : preset_ids()) {
    for (const auto& run : preset_runs(id)) {
      const std::string text = format_config(run.config);
      const RunConfig back = parse_config(text);
      CHECK(format_config(back) == text);
    }
  }
  RunConfig cfg;
  cfg.system = SystemKind::ShadowTau;
  cfg.params.tau = 0.1;
  cfg.eta0 = 0.123456789012345678;
  cfg.snapshot_times = {0.1, 1.0 / 3.0};
  cfg.grid = RadialGrid{2, 33};
  cfg.law.dim = 2;
  cfg.boundary_value = 1.25;
  const RunConfig back = parse_config(format_config(cfg));
  CHECK(*back.eta0 == *cfg.eta0);
  CHECK(back.snapshot_times == cfg.snapshot_times);
  CHECK(*back.boundary_value == 1.25);
  CHECK(std::get<RadialGrid>(back.grid).M == 33);
}

TEST_CASE("presets") {
  CHECK(preset_ids().size() == 6);
  CHECK(is_preset("exp4"));
  CHECK_FALSE(is_preset("exp5"));
  CHECK_THROWS_AS(preset_runs("exp5"), std::invalid_argument);

  const auto exp1 = preset_runs("exp1");
  REQUIRE(exp1.size() == 4);
  std::set<LawKind> kinds;
  for (const auto& run : exp1) {
    kinds.insert(run.config.law.kind);
    CHECK(run.config.params.p == 3.0);
    CHECK(run.config.params.q == 2.0);
    CHECK(run.config.params.r == 1.0);
    CHECK(run.config.params.s == 2.0);
    CHECK(run.config.dt == 5e-4);
    CHECK(run.config.blowup_threshold == 1e4);
    CHECK(std::get<RectGrid>(run.config.grid).nx == 128);
    CHECK(run.config.init.kind == InitKind::CosinePlus);
    if (run.config.law.kind != LawKind::Static) CHECK(run.config.law.beta == 0.1);
    if (run.config.law.kind == LawKind::Logistic) CHECK(run.config.law.m == 1.5);
  }
  CHECK(kinds.size() == 4);

  const auto q = preset_runs("exp1q");
  REQUIRE(q.size() == 1);
  CHECK(q[0].config.params.p == 1.4);
  CHECK(q[0].config.end_time == 20.0);

  CHECK(preset_runs("exp2a")[0].config.params.r == 3.0);
  CHECK(preset_runs("exp2b")[0].config.params.s == 1.0);

  const auto exp3 = preset_runs("exp3");
  REQUIRE(exp3.size() == 3);
  for (const auto& run : exp3) {
    const auto& g = std::get<RadialGrid>(run.config.grid);
    CHECK(g.dim == 3);
    CHECK(g.M == 512);
    CHECK(run.config.init.kind == InitKind::Spiky);
    CHECK(run.config.init.delta == 0.8);
    CHECK(run.config.init.lambda == 0.1);
  }
  CHECK(exp3[2].config.law.m == 0.5);

  const auto exp4 = preset_runs("exp4");
  REQUIRE(exp4.size() == 2);
  CHECK(exp4[0].config.system == SystemKind::FullRD);
  CHECK(exp4[0].config.params.D1 == 0.01);
  CHECK(exp4[0].config.params.D2 == 1.0);
  CHECK(exp4[0].config.params.tau == 0.01);
  CHECK(exp4[0].config.v0 == 2.0);
  CHECK(exp4[0].config.dt == 1e-4);
  CHECK(exp4[1].config.system == SystemKind::NonlocalT);
  CHECK(exp4[1].config.law.kind == LawKind::ExpDecay);

  PresetOverrides ov;
  ov.resolution = 20;
  ov.dt = 1e-3;
  ov.blowup_threshold = 50.0;
  ov.end_time = 0.5;
  ov.logistic_m = 0.25;
  const auto small = preset_runs("exp3", ov);
  CHECK(std::get<RadialGrid>(small[0].config.grid).M == 20);
  CHECK(small[0].config.dt == 1e-3);
  CHECK(small[0].config.blowup_threshold == 50.0);
  CHECK(small[0].config.end_time == 0.5);
  CHECK(small[2].config.law.m == 0.25);
  ov = {};
  ov.dt = -1.0;
  CHECK_THROWS_AS(preset_runs("exp1", ov), std::invalid_argument);
}

TEST_CASE("report and series formats") {
  PresetOverrides ov;
  ov.resolution = 12;
  const auto run = preset_runs("exp1", ov)[0];
  const RunResult result = advance(run.config);
  const std::string report = format_report(run.config, result);
  CHECK(report.rfind("verdict: BlowUp\n", 0) == 0);
  CHECK(report.find(format_config(run.config)) != std::string::npos);

  std::ostringstream csv;
  write_series_csv(result.series, csv);
  std::istringstream lines(csv.str());
  std::string header;
  std::getline(lines, header);
  CHECK(header == "t,sigma,sup_norm,mean_u,zeta,w_moment,eta_or_supv");
  std::string first;
  std::getline(lines, first);
  CHECK(first.rfind("0,0,3,", 0) == 0);
  std::size_t rows = 1;
  for (std::string l; std::getline(lines, l);) ++rows;
  CHECK(rows == result.series.size());
}

TEST_CASE("run directory contents") {
  PresetOverrides ov;
  ov.resolution = 10;
  auto run = preset_runs("exp1", ov)[1];
  run.config.snapshot_times = {0.0, 0.1};
  const RunResult result = advance(run.config);
  const fs::path dir = scratch_dir("rundir");
  fs::create_directories(dir);
  std::ofstream(dir / "stale.txt") << "old";
  write_run_directory(dir, run.config, result);
  std::set<std::string> names;
  for (const auto& e : fs::directory_iterator(dir)) names.insert(e.path().filename().string());
  CHECK(names == std::set<std::string>{"config.ini", "series.csv", "report.txt", "snapshot_000.csv",
                                       "snapshot_001.csv"});
  CHECK(parse_config(slurp(dir / "config.ini")).dt == run.config.dt);
  CHECK(slurp(dir / "snapshot_000.csv").rfind("nx,ny\n10,10\n", 0) == 0);
  fs::remove_all(dir);
}

TEST_CASE("config replicating a preset run reproduces its report exactly") {
  PresetOverrides ov;
  ov.resolution = 16;
  const auto run = preset_runs("exp1", ov)[0];
  const RunConfig from_text = parse_config(format_config(run.config));
  const RunResult a = advance(run.config);
  const RunResult b = advance(from_text);
  CHECK(format_report(run.config, a) == format_report(from_text, b));
  std::ostringstream ca;
  std::ostringstream cb;
  write_series_csv(a.series, ca);
  write_series_csv(b.series, cb);
  CHECK(ca.str() == cb.str());
}

TEST_CASE("u identically one through a configuration file") {
  const RunConfig cfg = parse_config(
      "[run]\nend_time = 0.5\n[law]\nkind = static\n[grid]\nnx = 6\nny = 6\n"
      "[init]\nkind = constant\nc = 1\n");
  const RunResult r = advance(cfg);
  CHECK(format_report(cfg, r).rfind("verdict: Bounded\n", 0) == 0);
}

TEST_CASE("bounds text") {
  const auto exp1 = preset_runs("exp1");
  const std::string growth = format_bounds(exp1[1].config);
  CHECK(growth.find("mean_threshold: 1.04663513939") != std::string::npos);
  CHECK(growth.find("sigma_bound: 0.3308522151") != std::string::npos);
  CHECK(growth.find("t_bound: 0.3423067229") != std::string::npos);
  const std::string st = format_bounds(exp1[0].config);
  CHECK(st.find("mean_threshold: 1\n") != std::string::npos);
  CHECK(st.find("sigma_bound: 0.3791923447") != std::string::npos);

  const std::string turing = format_bounds(preset_runs("exp3")[0].config);
  CHECK(turing.find("not applicable") != std::string::npos);
  CHECK(turing.find("sigma_bound") == std::string::npos);
}

TEST_CASE("output root") {
  ::setenv("GMSHADOW_OUTPUT_DIR", "/tmp/elsewhere", 1);
  CHECK(output_root() == fs::path("/tmp/elsewhere"));
  ::setenv("GMSHADOW_OUTPUT_DIR", "", 1);
  CHECK(output_root() == fs::path("runs"));
  ::unsetenv("GMSHADOW_OUTPUT_DIR");
  CHECK(output_root() == fs::path("runs"));
}

TEST_CASE("failure verdicts") {
  CHECK(is_failure(Verdict::NonFinite));
  CHECK(is_failure(Verdict::Breakdown));
  CHECK_FALSE(is_failure(Verdict::BlowUp));
  CHECK_FALSE(is_failure(Verdict::HorizonReached));
}

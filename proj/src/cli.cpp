#include "gmshadow/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gmshadow/initdata.hpp"

namespace gmshadow {

namespace fs = std::filesystem;

namespace {

std::string num(double x) { return format_number(x); }

std::string opt_num(const std::optional<double>& x) { return x ? num(*x) : "n/a"; }

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

struct Entry {
  std::string value;
  int line = 0;
};

using Section = std::map<std::string, Entry>;

const std::map<std::string, std::set<std::string>>& allowed_keys() {
  static const std::map<std::string, std::set<std::string>> keys = {
      {"run",
       {"system", "reaction_weight", "dt", "end_time", "blowup_threshold", "quench_threshold",
        "sample_stride", "stability_fraction", "throttle", "max_steps", "snapshot_times"}},
      {"params", {"p", "q", "r", "s", "D1", "D2", "tau"}},
      {"law", {"kind", "beta", "m", "dim"}},
      {"grid", {"type", "nx", "ny", "M", "dim", "boundary", "boundary_value"}},
      {"init", {"kind", "c", "delta", "lambda"}},
      {"inhibitor", {"eta0", "v0"}},
  };
  return keys;
}

// Typed access to the entries of one parsed file; conversion errors carry the
// line of the offending entry.
class Reader {
 public:
  Reader(std::string source, std::map<std::string, Section> sections)
      : source_(std::move(source)), sections_(std::move(sections)) {}

  const Entry* find(const std::string& section, const std::string& key) const {
    const auto s = sections_.find(section);
    if (s == sections_.end()) return nullptr;
    const auto e = s->second.find(key);
    return e == s->second.end() ? nullptr : &e->second;
  }

  bool has(const std::string& section, const std::string& key) const {
    return find(section, key) != nullptr;
  }

  [[noreturn]] void fail(const Entry& e, const std::string& section, const std::string& key,
                         const std::string& what) const {
    throw ConfigError(source_, e.line, "[" + section + "] " + key + ": " + what);
  }

  void read(const std::string& section, const std::string& key, double& out) const {
    if (const Entry* e = find(section, key)) out = to_double(*e, section, key);
  }

  void read(const std::string& section, const std::string& key, int& out) const {
    if (const Entry* e = find(section, key)) out = static_cast<int>(to_integer(*e, section, key));
  }

  void read(const std::string& section, const std::string& key, long& out) const {
    if (const Entry* e = find(section, key)) out = to_integer(*e, section, key);
  }

  // "auto" leaves the optional empty.
  void read(const std::string& section, const std::string& key, std::optional<double>& out) const {
    if (const Entry* e = find(section, key)) {
      if (e->value == "auto") {
        out.reset();
      } else {
        out = to_double(*e, section, key);
      }
    }
  }

  template <typename Parse, typename T>
  void read_enum(const std::string& section, const std::string& key, Parse parse, T& out) const {
    if (const Entry* e = find(section, key)) {
      try {
        out = parse(e->value);
      } catch (const std::invalid_argument& ex) {
        fail(*e, section, key, ex.what());
      }
    }
  }

  void read_list(const std::string& section, const std::string& key,
                 std::vector<double>& out) const {
    const Entry* e = find(section, key);
    if (!e) return;
    out.clear();
    std::string_view rest = e->value;
    while (!trim(rest).empty()) {
      const auto comma = rest.find(',');
      const std::string_view item = trim(rest.substr(0, comma));
      out.push_back(to_double(Entry{std::string(item), e->line}, section, key));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  }

 private:
  double to_double(const Entry& e, const std::string& section, const std::string& key) const {
    double v = 0.0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      fail(e, section, key, "expected a number, got '" + e.value + "'");
    }
    return v;
  }

  long to_integer(const Entry& e, const std::string& section, const std::string& key) const {
    long v = 0;
    const char* first = e.value.data();
    const char* last = first + e.value.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      fail(e, section, key, "expected an integer, got '" + e.value + "'");
    }
    return v;
  }

  std::string source_;
  std::map<std::string, Section> sections_;
};

std::map<std::string, Section> tokenize(std::string_view text, const std::string& source) {
  std::map<std::string, Section> sections;
  std::string current;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;

    const auto hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') {
        throw ConfigError(source, line_no, "malformed section header '" + std::string(line) + "'");
      }
      current = std::string(trim(line.substr(1, line.size() - 2)));
      if (!allowed_keys().count(current)) {
        throw ConfigError(source, line_no, "unknown section [" + current + "]");
      }
      if (sections.count(current)) {
        throw ConfigError(source, line_no, "section [" + current + "] appears twice");
      }
      sections[current];
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(source, line_no, "expected 'key = value', got '" + std::string(line) + "'");
    }
    if (current.empty()) {
      throw ConfigError(source, line_no, "key outside of any section");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) {
      throw ConfigError(source, line_no, "empty key");
    }
    if (!allowed_keys().at(current).count(key)) {
      throw ConfigError(source, line_no, "unknown key '" + key + "' in [" + current + "]");
    }
    auto& section = sections[current];
    if (const auto it = section.find(key); it != section.end()) {
      throw ConfigError(source, line_no,
                        "duplicate key '" + key + "' in [" + current + "] (first set on line " +
                            std::to_string(it->second.line) + ")");
    }
    section[key] = Entry{value, line_no};
  }
  return sections;
}

RunConfig build_config(const Reader& in, const std::string& source) {
  RunConfig cfg;

  in.read_enum("run", "system", parse_system_kind, cfg.system);
  in.read_enum("run", "reaction_weight", parse_reaction_weight, cfg.reaction_weight);
  in.read("run", "dt", cfg.dt);
  in.read("run", "end_time", cfg.end_time);
  in.read("run", "blowup_threshold", cfg.blowup_threshold);
  in.read("run", "quench_threshold", cfg.quench_threshold);
  in.read("run", "sample_stride", cfg.sample_stride);
  in.read("run", "stability_fraction", cfg.stability_fraction);
  in.read("run", "throttle", cfg.throttle);
  in.read("run", "max_steps", cfg.max_steps);
  in.read_list("run", "snapshot_times", cfg.snapshot_times);

  in.read("params", "p", cfg.params.p);
  in.read("params", "q", cfg.params.q);
  in.read("params", "r", cfg.params.r);
  in.read("params", "s", cfg.params.s);
  in.read("params", "D1", cfg.params.D1);
  in.read("params", "D2", cfg.params.D2);
  in.read("params", "tau", cfg.params.tau);

  in.read_enum("law", "kind", parse_law_kind, cfg.law.kind);
  in.read("law", "beta", cfg.law.beta);
  in.read("law", "m", cfg.law.m);

  std::string grid_type = "rect";
  if (const Entry* e = in.find("grid", "type")) {
    grid_type = e->value;
    if (grid_type != "rect" && grid_type != "radial") {
      in.fail(*e, "grid", "type", "expected rect or radial, got '" + grid_type + "'");
    }
  }
  if (grid_type == "rect") {
    for (const char* key : {"M", "dim", "boundary", "boundary_value"}) {
      if (const Entry* e = in.find("grid", key)) {
        in.fail(*e, "grid", key, "only valid with type = radial");
      }
    }
    RectGrid g;
    in.read("grid", "nx", g.nx);
    in.read("grid", "ny", g.ny);
    cfg.grid = g;
    cfg.law.dim = 2;
    in.read("law", "dim", cfg.law.dim);
  } else {
    for (const char* key : {"nx", "ny"}) {
      if (const Entry* e = in.find("grid", key)) {
        in.fail(*e, "grid", key, "only valid with type = rect");
      }
    }
    RadialGrid g;
    in.read("grid", "M", g.M);
    // one dimension serves both the grid and the law unless both are given
    const bool grid_dim = in.has("grid", "dim");
    const bool law_dim = in.has("law", "dim");
    in.read("grid", "dim", g.dim);
    cfg.law.dim = g.dim;
    in.read("law", "dim", cfg.law.dim);
    if (law_dim && !grid_dim) g.dim = cfg.law.dim;
    in.read_enum("grid", "boundary", parse_radial_boundary, cfg.radial_boundary);
    in.read("grid", "boundary_value", cfg.boundary_value);
    cfg.grid = g;
  }

  in.read_enum("init", "kind", parse_init_kind, cfg.init.kind);
  in.read("init", "c", cfg.init.c);
  in.read("init", "delta", cfg.init.delta);
  in.read("init", "lambda", cfg.init.lambda);

  in.read("inhibitor", "eta0", cfg.eta0);
  in.read("inhibitor", "v0", cfg.v0);

  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(source, 0, std::string("invalid configuration: ") + e.what());
  }
  return cfg;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ConfigError(path.string(), 0, "cannot open file");
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
}

std::string law_label(const EvolutionLaw& law) {
  std::string s(to_string(law.kind));
  if (law.kind != LawKind::Static) s += " beta=" + num(law.beta);
  if (law.kind == LawKind::Logistic) s += " m=" + num(law.m);
  return s + " dim=" + std::to_string(law.dim);
}

}  // namespace

ConfigError::ConfigError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                         what),
      line_(line) {}

RunConfig parse_config(std::string_view text, const std::string& source) {
  Reader reader(source, tokenize(text, source));
  return build_config(reader, source);
}

RunConfig load_config(const fs::path& path) {
  return parse_config(read_file(path), path.string());
}

std::string format_config(const RunConfig& c) {
  std::ostringstream os;
  os << "[run]\n";
  os << "system = " << to_string(c.system) << "\n";
  os << "reaction_weight = " << to_string(c.reaction_weight) << "\n";
  os << "dt = " << num(c.dt) << "\n";
  os << "end_time = " << num(c.end_time) << "\n";
  os << "blowup_threshold = " << num(c.blowup_threshold) << "\n";
  os << "quench_threshold = " << num(c.quench_threshold) << "\n";
  os << "sample_stride = " << c.sample_stride << "\n";
  os << "stability_fraction = " << num(c.stability_fraction) << "\n";
  os << "throttle = " << num(c.throttle) << "\n";
  os << "max_steps = " << c.max_steps << "\n";
  os << "snapshot_times =";
  for (std::size_t i = 0; i < c.snapshot_times.size(); ++i) {
    os << (i == 0 ? " " : ", ") << num(c.snapshot_times[i]);
  }
  os << "\n\n[params]\n";
  os << "p = " << num(c.params.p) << "\n";
  os << "q = " << num(c.params.q) << "\n";
  os << "r = " << num(c.params.r) << "\n";
  os << "s = " << num(c.params.s) << "\n";
  os << "D1 = " << num(c.params.D1) << "\n";
  os << "D2 = " << num(c.params.D2) << "\n";
  os << "tau = " << num(c.params.tau) << "\n";
  os << "\n[law]\n";
  os << "kind = " << to_string(c.law.kind) << "\n";
  os << "beta = " << num(c.law.beta) << "\n";
  os << "m = " << num(c.law.m) << "\n";
  os << "dim = " << c.law.dim << "\n";
  os << "\n[grid]\n";
  if (const auto* g = std::get_if<RectGrid>(&c.grid)) {
    os << "type = rect\n";
    os << "nx = " << g->nx << "\n";
    os << "ny = " << g->ny << "\n";
  } else {
    const auto& r = std::get<RadialGrid>(c.grid);
    os << "type = radial\n";
    os << "M = " << r.M << "\n";
    os << "dim = " << r.dim << "\n";
    os << "boundary = " << to_string(c.radial_boundary) << "\n";
    os << "boundary_value = " << (c.boundary_value ? num(*c.boundary_value) : "auto") << "\n";
  }
  os << "\n[init]\n";
  os << "kind = " << to_string(c.init.kind) << "\n";
  os << "c = " << num(c.init.c) << "\n";
  os << "delta = " << num(c.init.delta) << "\n";
  os << "lambda = " << num(c.init.lambda) << "\n";
  os << "\n[inhibitor]\n";
  os << "eta0 = " << (c.eta0 ? num(*c.eta0) : "auto") << "\n";
  os << "v0 = " << num(c.v0) << "\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Presets
// ---------------------------------------------------------------------------

const std::vector<std::string>& preset_ids() {
  static const std::vector<std::string> ids = {"exp1", "exp1q", "exp2a", "exp2b", "exp3", "exp4"};
  return ids;
}

bool is_preset(std::string_view id) {
  const auto& ids = preset_ids();
  return std::find(ids.begin(), ids.end(), id) != ids.end();
}

namespace {

Parameters kinetics(double p, double q, double r, double s) {
  Parameters prm;
  prm.p = p;
  prm.q = q;
  prm.r = r;
  prm.s = s;
  return prm;
}

// Cosine datum on the unit square with the time step used in the experiments.
RunConfig square_run(const Parameters& prm, const EvolutionLaw& law) {
  RunConfig cfg;
  cfg.system = SystemKind::NonlocalT;
  cfg.params = prm;
  cfg.law = law;
  cfg.grid = RectGrid{128, 128};
  cfg.init.kind = InitKind::CosinePlus;
  cfg.init.c = 2.0;
  cfg.dt = 5e-4;
  return cfg;
}

std::vector<PresetRun> build_preset(std::string_view id, const PresetOverrides& ov) {
  constexpr double beta = 0.1;
  const Parameters table1 = kinetics(3, 2, 1, 2);
  std::vector<PresetRun> runs;

  if (id == "exp1") {
    const EvolutionLaw laws[] = {EvolutionLaw::make_static(2), EvolutionLaw::exp_growth(beta, 2),
                                 EvolutionLaw::exp_decay(beta, 2),
                                 EvolutionLaw::logistic(beta, 1.5, 2)};
    const char* names[] = {"static", "exp_growth", "exp_decay", "logistic_growth"};
    for (int k = 0; k < 4; ++k) {
      RunConfig cfg = square_run(table1, laws[k]);
      cfg.blowup_threshold = 1e4;
      cfg.end_time = 5.0;
      runs.push_back({names[k], cfg});
    }
  } else if (id == "exp1q") {
    // x^1.4 has no fast power path; 64^2 keeps the t = 20 horizon affordable
    RunConfig cfg = square_run(kinetics(1.4, 1, 1, 2), EvolutionLaw::exp_growth(beta, 2));
    cfg.grid = RectGrid{64, 64};
    cfg.end_time = 20.0;
    runs.push_back({"exp_growth", cfg});
  } else if (id == "exp2a" || id == "exp2b") {
    const Parameters prm = id == "exp2a" ? kinetics(1, 2, 3, 2) : kinetics(3, 2, 1, 1);
    RunConfig cfg = square_run(prm, EvolutionLaw::exp_growth(beta, 2));
    cfg.end_time = 10.0;
    runs.push_back({"exp_growth", cfg});
  } else if (id == "exp3") {
    const double m = ov.logistic_m.value_or(0.5);
    const EvolutionLaw laws[] = {EvolutionLaw::make_static(3), EvolutionLaw::exp_decay(beta, 3),
                                 EvolutionLaw::logistic(beta, m, 3)};
    const char* names[] = {"static", "exp_decay", "logistic_decay"};
    for (int k = 0; k < 3; ++k) {
      RunConfig cfg;
      cfg.system = SystemKind::NonlocalT;
      cfg.params = kinetics(4, 4, 2, 1);
      cfg.law = laws[k];
      cfg.grid = RadialGrid{3, 512};
      cfg.init.kind = InitKind::Spiky;
      cfg.init.delta = 0.8;
      cfg.init.lambda = 0.1;
      cfg.dt = 5e-4;
      cfg.end_time = 1.0;
      runs.push_back({names[k], cfg});
    }
  } else if (id == "exp4") {
    Parameters prm = table1;
    prm.D1 = 0.01;
    prm.D2 = 1.0;
    prm.tau = 0.01;
    RunConfig full = square_run(prm, EvolutionLaw::exp_decay(beta, 2));
    full.system = SystemKind::FullRD;
    full.v0 = 2.0;
    full.dt = 1e-4;
    full.end_time = 5.0;
    RunConfig nonlocal = full;
    nonlocal.system = SystemKind::NonlocalT;
    runs.push_back({"full_rd", full});
    runs.push_back({"nonlocal_t", nonlocal});
  } else {
    throw std::invalid_argument("unknown preset '" + std::string(id) +
                                "' (expected exp1, exp1q, exp2a, exp2b, exp3 or exp4)");
  }
  return runs;
}

}  // namespace

std::vector<PresetRun> preset_runs(std::string_view id, const PresetOverrides& ov) {
  auto runs = build_preset(id, ov);
  for (auto& run : runs) {
    RunConfig& cfg = run.config;
    if (ov.resolution) {
      if (auto* g = std::get_if<RectGrid>(&cfg.grid)) {
        g->nx = g->ny = *ov.resolution;
      } else {
        std::get<RadialGrid>(cfg.grid).M = *ov.resolution;
      }
    }
    if (ov.dt) cfg.dt = *ov.dt;
    if (ov.blowup_threshold) cfg.blowup_threshold = *ov.blowup_threshold;
    if (ov.quench_threshold) cfg.quench_threshold = *ov.quench_threshold;
    if (ov.end_time) cfg.end_time = *ov.end_time;
    cfg.validate();
  }
  return runs;
}

// ---------------------------------------------------------------------------
// Artifacts
// ---------------------------------------------------------------------------

void write_series_csv(const TimeSeries& series, std::ostream& os) {
  os << "t,sigma,sup_norm,mean_u,zeta,w_moment,eta_or_supv\n";
  for (const auto& s : series.samples) {
    os << num(s.t) << ',' << num(s.sigma) << ',' << num(s.sup_norm) << ',' << num(s.mean_u) << ','
       << num(s.zeta) << ',' << num(s.w_moment) << ',' << num(s.aux) << '\n';
  }
}

std::string format_report(const RunConfig& config, const RunResult& result) {
  const auto& rep = result.report;
  const auto& samples = result.series.samples;
  double peak = 0.0;
  for (const auto& s : samples) peak = std::max(peak, s.sup_norm);

  std::ostringstream os;
  os << "verdict: " << to_string(rep.verdict) << "\n";
  os << "message: " << rep.message << "\n";
  os << "steps: " << result.steps << "\n";
  os << "samples: " << samples.size() << "\n";
  os << "event_time_t: " << opt_num(rep.event_time_t) << "\n";
  os << "event_time_sigma: " << opt_num(rep.event_time_sigma) << "\n";
  os << "extrapolated_t: " << opt_num(rep.extrapolated_t) << "\n";
  os << "extrapolated_sigma: " << opt_num(rep.extrapolated_sigma) << "\n";
  os << "fitted_rate_exponent: " << opt_num(rep.fitted_rate_exponent) << "\n";
  if (!samples.empty()) {
    os << "initial_sup_norm: " << num(samples.front().sup_norm) << "\n";
    os << "max_sup_norm: " << num(peak) << "\n";
    os << "final_t: " << num(samples.back().t) << "\n";
    os << "final_sigma: " << num(samples.back().sigma) << "\n";
    os << "final_sup_norm: " << num(samples.back().sup_norm) << "\n";
    os << "final_min_u: " << num(samples.back().min_u) << "\n";
  }
  const auto loc = locate_blowup(result.final_u);
  os << "final_argmax: " << num(loc.x);
  if (!is_radial(config.grid)) os << ' ' << num(loc.y);
  os << "\n";
  os << "snapshots:";
  for (const auto& snap : result.snapshots) os << ' ' << num(snap.time);
  os << "\n\n# resolved configuration\n" << format_config(config);
  return os.str();
}

void write_run_directory(const fs::path& dir, const RunConfig& config, const RunResult& result) {
  fs::remove_all(dir);
  fs::create_directories(dir);
  write_file(dir / "config.ini", format_config(config));
  {
    std::ostringstream os;
    write_series_csv(result.series, os);
    write_file(dir / "series.csv", os.str());
  }
  write_file(dir / "report.txt", format_report(config, result));
  for (std::size_t k = 0; k < result.snapshots.size(); ++k) {
    char name[32];
    std::snprintf(name, sizeof name, "snapshot_%03zu.csv", k);
    std::ostringstream os;
    write_snapshot_csv(result.snapshots[k].field, os);
    write_file(dir / name, os.str());
  }
}

std::string format_summary(std::string_view preset, const std::vector<PresetRun>& runs,
                           const std::vector<RunResult>& results) {
  std::ostringstream os;
  os << "preset: " << preset << "\n";
  os << "run,system,law,verdict,event_time_t,event_time_sigma,extrapolated_t,"
        "extrapolated_sigma,fitted_rate_exponent,steps\n";
  std::vector<std::pair<double, std::string>> blowups;
  for (std::size_t k = 0; k < runs.size() && k < results.size(); ++k) {
    const auto& rep = results[k].report;
    os << runs[k].name << ',' << to_string(runs[k].config.system) << ','
       << law_label(runs[k].config.law) << ',' << to_string(rep.verdict) << ','
       << opt_num(rep.event_time_t) << ',' << opt_num(rep.event_time_sigma) << ','
       << opt_num(rep.extrapolated_t) << ',' << opt_num(rep.extrapolated_sigma) << ','
       << opt_num(rep.fitted_rate_exponent) << ',' << results[k].steps << '\n';
    if (rep.verdict == Verdict::BlowUp) {
      const double t = rep.extrapolated_t ? *rep.extrapolated_t : *rep.event_time_t;
      blowups.emplace_back(t, runs[k].name);
    }
  }
  if (blowups.size() > 1) {
    std::sort(blowups.begin(), blowups.end(), std::greater<>());
    os << "blow-up order in t:";
    for (std::size_t k = 0; k < blowups.size(); ++k) {
      os << (k == 0 ? " " : " > ") << blowups[k].second;
    }
    os << "\n";
  }
  return os.str();
}

std::string format_bounds(const RunConfig& config) {
  const auto idx = derive_indices(config.params);
  const Field u0 = build_initial(config.init, config.grid, config.params.p);
  const double mean0 = mean(u0, 1.0);
  const auto b = bernoulli_bound(config.law, idx, mean0);

  std::ostringstream os;
  os << "law: " << law_label(config.law) << "\n";
  os << "gamma: " << num(idx.gamma) << "\n";
  os << "omega: " << num(idx.omega) << "\n";
  os << "mean_u0: " << num(mean0) << "\n";
  if (!b.applicable && !(idx.omega > 1.0)) {
    os << "bound: " << b.note << "\n";
    return os.str();
  }
  os << "I: " << num(b.I_sigma) << "\n";
  os << "mean_threshold: " << num(b.mean_threshold) << "\n";
  if (b.applicable) {
    os << "sigma_bound: " << opt_num(b.sigma_upper) << "\n";
    os << "t_bound: " << opt_num(b.t_upper) << "\n";
  } else {
    os << "bound: " << b.note << "\n";
  }
  return os.str();
}

fs::path output_root() {
  const char* env = std::getenv("GMSHADOW_OUTPUT_DIR");
  if (env && *env) return fs::path(env);
  return fs::path("runs");
}

bool is_failure(Verdict verdict) {
  return verdict == Verdict::NonFinite || verdict == Verdict::Breakdown;
}

}  // namespace gmshadow

#include "gmshadow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "gmshadow/analysis.hpp"
#include "gmshadow/power.hpp"

namespace gmshadow {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kPositivityFloor = 1e-12;
// Relative change of sup u that forces a sample.
constexpr double kSampleJump = 0.05;

std::string num(double x) { return format_number(x); }

// Node kernels. Everything is passed by value so the loops vectorise; each
// returns max |rate_i| / value_i for the step control.

template <typename Pow>
double nonlocal_kernel(std::size_t n, const double* u, const double* lap, double* du, double D,
                       double B, double coef, Pow pw) {
  double rate = 0.0;
#pragma omp simd reduction(max : rate)
  for (std::size_t i = 0; i < n; ++i) {
    const double x = u[i];
    const double d = D * lap[i] - B * x + coef * pw(x);
    du[i] = d;
    const double rel = std::abs(d) / x;
    rate = rel > rate ? rel : rate;
  }
  return rate;
}

// The powers of v are taken of 1/v, one reciprocal per node.
template <typename PowP, typename PowQ>
double activator_kernel(std::size_t n, const double* u, const double* v, const double* lap,
                        double* du, double D, double L, PowP pp, PowQ pq) {
  double rate = 0.0;
#pragma omp simd reduction(max : rate)
  for (std::size_t i = 0; i < n; ++i) {
    const double x = u[i];
    const double d = D * lap[i] - L * x + pp(x) * pq(1.0 / v[i]);
    du[i] = d;
    const double rel = std::abs(d) / x;
    rate = rel > rate ? rel : rate;
  }
  return rate;
}

struct InhibitorRates {
  double rate = 0.0;
  double react = 0.0;  // max |s| u^r / v^(s+1)
};

template <typename PowR, typename PowS>
InhibitorRates inhibitor_kernel(std::size_t n, const double* u, const double* v,
                                const double* lap, double* dv, double D, double L,
                                double inv_tau, double abs_s, PowR pr, PowS ps) {
  double rate = 0.0;
  double react = 0.0;
#pragma omp simd reduction(max : rate, react)
  for (std::size_t i = 0; i < n; ++i) {
    const double y = v[i];
    const double inv = 1.0 / y;
    const double g = pr(u[i]) * ps(inv);
    const double d = (D * lap[i] - L * y + g) * inv_tau;
    dv[i] = d;
    const double rel = std::abs(d) * inv;
    rate = rel > rate ? rel : rate;
    const double k = abs_s * g * inv;
    react = k > react ? k : react;
  }
  return {rate, react};
}

}  // namespace

std::string_view to_string(SystemKind kind) {
  switch (kind) {
    case SystemKind::NonlocalT:
      return "nonlocal_t";
    case SystemKind::NonlocalSigma:
      return "nonlocal_sigma";
    case SystemKind::ShadowTau:
      return "shadow_tau";
    case SystemKind::FullRD:
      return "full_rd";
  }
  return "unknown";
}

std::string_view to_string(ReactionWeight weight) {
  return weight == ReactionWeight::Consistent ? "consistent" : "inverse";
}

std::string_view to_string(RadialBoundary bc) {
  return bc == RadialBoundary::Neumann ? "neumann" : "dirichlet";
}

std::string_view to_string(Verdict verdict) {
  switch (verdict) {
    case Verdict::BlowUp:
      return "BlowUp";
    case Verdict::Quench:
      return "Quench";
    case Verdict::Bounded:
      return "Bounded";
    case Verdict::HorizonReached:
      return "HorizonReached";
    case Verdict::NonFinite:
      return "NonFinite";
    case Verdict::Breakdown:
      return "Breakdown";
  }
  return "unknown";
}

SystemKind parse_system_kind(std::string_view name) {
  if (name == "nonlocal_t") return SystemKind::NonlocalT;
  if (name == "nonlocal_sigma") return SystemKind::NonlocalSigma;
  if (name == "shadow_tau") return SystemKind::ShadowTau;
  if (name == "full_rd") return SystemKind::FullRD;
  throw std::invalid_argument("unknown system '" + std::string(name) +
                              "' (expected nonlocal_t, nonlocal_sigma, shadow_tau or full_rd)");
}

ReactionWeight parse_reaction_weight(std::string_view name) {
  if (name == "consistent") return ReactionWeight::Consistent;
  if (name == "inverse") return ReactionWeight::Inverse;
  throw std::invalid_argument("unknown reaction weight '" + std::string(name) +
                              "' (expected consistent or inverse)");
}

RadialBoundary parse_radial_boundary(std::string_view name) {
  if (name == "neumann") return RadialBoundary::Neumann;
  if (name == "dirichlet") return RadialBoundary::Dirichlet;
  throw std::invalid_argument("unknown radial boundary '" + std::string(name) +
                              "' (expected neumann or dirichlet)");
}

bool uses_physical_clock(SystemKind kind) {
  return kind == SystemKind::NonlocalT || kind == SystemKind::FullRD;
}

void RunConfig::validate() const {
  params.validate();
  law.validate();
  std::visit([](const auto& g) { g.validate(); }, grid);
  init.validate();

  if (const auto* rad = std::get_if<RadialGrid>(&grid)) {
    if (rad->dim != law.dim) {
      throw std::invalid_argument("radial grid dimension " + std::to_string(rad->dim) +
                                  " differs from the evolution dimension " +
                                  std::to_string(law.dim));
    }
  } else if (law.dim != 2) {
    throw std::invalid_argument("the rectangle grid is two-dimensional; set dimension = 2");
  }
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("dt must be positive");
  }
  if (!(end_time > 0.0) || !std::isfinite(end_time)) {
    throw std::invalid_argument("end_time must be positive and finite");
  }
  if (!(blowup_threshold > 0.0)) {
    throw std::invalid_argument("blowup_threshold must be positive");
  }
  if (!(quench_threshold >= 0.0) || !(quench_threshold < blowup_threshold)) {
    throw std::invalid_argument("quench_threshold must lie in [0, blowup_threshold)");
  }
  if (sample_stride < 1) {
    throw std::invalid_argument("sample_stride must be at least 1");
  }
  if (!(stability_fraction > 0.0 && stability_fraction <= 1.0)) {
    throw std::invalid_argument("stability_fraction must lie in (0, 1]");
  }
  if (!(throttle > 0.0)) {
    throw std::invalid_argument("throttle must be positive");
  }
  if (max_steps < 1) {
    throw std::invalid_argument("max_steps must be positive");
  }
  if (law.kind == LawKind::Logistic && !uses_physical_clock(system)) {
    throw std::invalid_argument("the logistic law has no closed-form inverse clock; use a t-form system");
  }
  if ((system == SystemKind::ShadowTau || system == SystemKind::FullRD) && !(params.tau > 0.0)) {
    throw std::invalid_argument("tau must be positive for " + std::string(to_string(system)));
  }
  if (eta0 && !(*eta0 > 0.0)) {
    throw std::invalid_argument("eta0 must be positive");
  }
  if (!(v0 > 0.0)) {
    throw std::invalid_argument("v0 must be positive");
  }
  if (boundary_value && !(*boundary_value > 0.0)) {
    throw std::invalid_argument("boundary_value must be positive");
  }
  for (double s : snapshot_times) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
      throw std::invalid_argument("snapshot times must be finite and non-negative");
    }
  }
}

Solver::Solver(RunConfig config)
    : config_(std::move(config)), disc_((config_.validate(), config_.grid)) {
  idx_ = derive_indices(config_.params);
  const std::size_t n = disc_.size();
  lap_.assign(n, 0.0);
  du_.assign(n, 0.0);
  u_next_.assign(n, 0.0);
  if (config_.system == SystemKind::FullRD) {
    lap_v_.assign(n, 0.0);
    dv_.assign(n, 0.0);
    v_next_.assign(n, 0.0);
  }
  if (is_radial(config_.grid) && config_.radial_boundary == RadialBoundary::Dirichlet) {
    boundary_value_ = config_.boundary_value
                          ? *config_.boundary_value
                          : build_initial(config_.init, config_.grid, config_.params.p).values.back();
  }
}

double Solver::native_clock(const RunState& state) const {
  return uses_physical_clock(config_.system) ? state.t : state.sigma;
}

void Solver::set_clocks(RunState& state, double clock) const {
  if (uses_physical_clock(config_.system)) {
    state.t = clock;
    state.sigma = rescaled_time(config_.law, clock);
  } else {
    state.sigma = clock;
    state.t = physical_time(config_.law, clock);
  }
}

void Solver::advance_clocks(RunState& state, double from, double to) const {
  if (config_.law.kind != LawKind::Logistic) {
    set_clocks(state, to);
    return;
  }
  // Logistic runs are t-form only. Accumulate sigma with a 5-point Gauss rule
  // per step instead of re-integrating from zero.
  static constexpr double kNodes[] = {0.0, 0.5384693101056831, 0.9061798459386640};
  static constexpr double kWeights[] = {0.5688888888888889, 0.4786286704993665,
                                        0.2369268850561891};
  const double mid = 0.5 * (from + to);
  const double half = 0.5 * (to - from);
  auto f = [&](double t) {
    const double rho = scale_factor(config_.law, t);
    return 1.0 / (rho * rho);
  };
  double acc = kWeights[0] * f(mid);
  for (int k = 1; k < 3; ++k) {
    acc += kWeights[k] * (f(mid - half * kNodes[k]) + f(mid + half * kNodes[k]));
  }
  state.t = to;
  state.sigma += half * acc;
}

RunState Solver::initial_state() const {
  RunState state;
  state.u = build_initial(config_.init, config_.grid, config_.params.p).values;
  if (is_radial(config_.grid) && config_.radial_boundary == RadialBoundary::Dirichlet) {
    state.u.back() = boundary_value_;
  }
  state.sup_norm = *std::max_element(state.u.begin(), state.u.end());
  state.min_u = *std::min_element(state.u.begin(), state.u.end());
  if (!(config_.blowup_threshold > state.sup_norm)) {
    throw std::invalid_argument("blowup_threshold " + num(config_.blowup_threshold) +
                                " does not exceed the initial sup norm " + num(state.sup_norm));
  }
  if (!(config_.quench_threshold < state.min_u)) {
    throw std::invalid_argument("quench_threshold " + num(config_.quench_threshold) +
                                " is not below the initial minimum " + num(state.min_u));
  }
  if (config_.system == SystemKind::FullRD) {
    state.v.assign(state.u.size(), config_.v0);
  }
  if (config_.system == SystemKind::ShadowTau) {
    if (config_.eta0) {
      state.eta = *config_.eta0;
    } else {
      const double zeta0 = weighted_mean_pow(disc_.weights(), state.u, config_.params.r);
      const double phi = scale_in_sigma(config_.law, 0.0);
      state.eta = std::pow(phi * phi * zeta0 / dissipation_coeff(config_.law, 0.0),
                           1.0 / (config_.params.s + 1.0));
    }
  }
  set_clocks(state, 0.0);
  return state;
}

Solver::Coefficients Solver::coefficients(double clock) const {
  Coefficients c;
  const auto& prm = config_.params;
  if (uses_physical_clock(config_.system)) {
    const double rho = scale_factor(config_.law, clock);
    const double L = dilution_rate(config_.law, clock);
    if (!(L > 0.0)) {
      throw SolverError(Verdict::Breakdown, "dilution rate L(t) is not positive at t=" + num(clock));
    }
    c.diffusion_u = prm.D1 / (rho * rho);
    c.diffusion_v = prm.D2 / (rho * rho);
    c.damping = L;
    const double g = config_.reaction_weight == ReactionWeight::Consistent ? idx_.gamma : -idx_.gamma;
    c.reaction = std::pow(L, g);
    return c;
  }
  c.diffusion_u = prm.D1;
  c.damping = dissipation_coeff(config_.law, clock);
  const double phi = scale_in_sigma(config_.law, clock);
  c.phi2 = phi * phi;
  c.reaction = config_.system == SystemKind::NonlocalSigma
                   ? reaction_coeff(config_.law, clock, idx_.gamma)
                   : c.phi2;
  return c;
}

Solver::Evaluation Solver::evaluate(const RunState& state, const Coefficients& c, double* du,
                                    double* dv) const {
  const auto& prm = config_.params;
  const std::size_t n = state.u.size();
  const double* u = state.u.data();
  const double* w = disc_.weights().data();
  const double* lap = lap_.data();
  disc_.apply_laplacian(u, lap_.data());
  const bool pinned = is_radial(config_.grid) && config_.radial_boundary == RadialBoundary::Dirichlet;
  const std::size_t active = pinned ? n - 1 : n;

  Evaluation ev;
  ev.zeta = kNaN;
  if (config_.system != SystemKind::FullRD) {
    ev.zeta = visit_power(prm.r, [&](auto pw) {
      double acc = 0.0;
      for (std::size_t i = 0; i < n; ++i) acc += w[i] * pw(u[i]);
      return acc;
    });
    if (!(ev.zeta > 0.0) || !std::isfinite(ev.zeta)) {
      throw SolverError(Verdict::Breakdown, "non-local mean of u^r is not positive and finite");
    }
  }

  switch (config_.system) {
    case SystemKind::NonlocalT:
    case SystemKind::NonlocalSigma:
    case SystemKind::ShadowTau: {
      double coef = 0.0;
      if (config_.system == SystemKind::ShadowTau) {
        if (!(state.eta > kPositivityFloor)) {
          throw SolverError(Verdict::Breakdown, "inhibitor eta fell below the positivity floor");
        }
        coef = c.reaction / std::pow(state.eta, prm.q);
        ev.deta = (-c.damping * state.eta + c.phi2 * ev.zeta / std::pow(state.eta, prm.s)) / prm.tau;
        ev.rate = std::abs(ev.deta) / state.eta;
      } else {
        coef = c.reaction / std::pow(ev.zeta, idx_.gamma);
      }
      const double D = c.diffusion_u;
      const double B = c.damping;
      ev.rate = std::max(ev.rate, visit_power(prm.p, [&](auto pw) {
        return nonlocal_kernel(active, u, lap, du, D, B, coef, pw);
      }));
      break;
    }
    case SystemKind::FullRD: {
      const double* v = state.v.data();
      const double* lap_v = lap_v_.data();
      disc_.apply_laplacian(v, lap_v_.data());
      const double Du = c.diffusion_u;
      const double Dv = c.diffusion_v;
      const double L = c.damping;
      const double inv_tau = 1.0 / prm.tau;
      const double abs_s = std::abs(prm.s);
      const double rate_u = visit_power(prm.p, [&](auto pp) {
        return visit_power(prm.q, [&](auto pq) {
          return activator_kernel(active, u, v, lap, du, Du, L, pp, pq);
        });
      });
      const InhibitorRates inh = visit_power(prm.r, [&](auto pr) {
        return visit_power(prm.s, [&](auto ps) {
          return inhibitor_kernel(active, u, v, lap_v, dv, Dv, L, inv_tau, abs_s, pr, ps);
        });
      });
      ev.rate = std::max(rate_u, inh.rate);
      ev.react = inh.react;
      if (pinned) dv[n - 1] = 0.0;
      break;
    }
  }
  if (pinned) du[n - 1] = 0.0;
  return ev;
}

RhsValue Solver::rhs(const RunState& state) const {
  RhsValue out;
  out.du.assign(state.u.size(), 0.0);
  if (config_.system == SystemKind::FullRD) {
    out.dv.assign(state.u.size(), 0.0);
  }
  const Coefficients c = coefficients(native_clock(state));
  const Evaluation ev = evaluate(state, c, out.du.data(), out.dv.empty() ? nullptr : out.dv.data());
  out.deta = ev.deta;
  out.zeta = ev.zeta;
  return out;
}

void Solver::step(RunState& state, double target) const {
  if (state.terminated) {
    throw std::logic_error("step called on a terminated run");
  }
  const auto& prm = config_.params;
  const double clock = native_clock(state);

  // sigma-form runs of a growing law stop one base step short of the horizon
  const double horizon = uses_physical_clock(config_.system) ? std::numeric_limits<double>::infinity()
                                                             : sigma_horizon(config_.law);
  if (clock + config_.dt >= horizon) {
    state.terminated = true;
    state.verdict = Verdict::HorizonReached;
    state.message = "sigma horizon " + num(horizon) + " reached";
    return;
  }

  const Coefficients c = coefficients(clock);
  const Evaluation ev = evaluate(state, c, du_.data(), dv_.empty() ? nullptr : dv_.data());

  const std::size_t n = state.u.size();
  const double sf = config_.stability_fraction;
  double dt = config_.dt;
  dt = std::min(dt, sf / (c.diffusion_u * disc_.max_diagonal()));
  if (config_.system == SystemKind::ShadowTau) {
    const double stiff =
        (c.damping + std::abs(prm.s) * c.phi2 * ev.zeta / std::pow(state.eta, prm.s + 1.0)) / prm.tau;
    dt = std::min(dt, sf / stiff);
  }
  if (config_.system == SystemKind::FullRD) {
    const double stiff = (c.diffusion_v * disc_.max_diagonal() + c.damping + ev.react) / prm.tau;
    dt = std::min(dt, sf / stiff);
  }
  if (ev.rate > 0.0) {
    dt = std::min(dt, config_.throttle / ev.rate);
  }
  bool lands = false;
  if (dt >= target - clock) {
    dt = target - clock;
    lands = true;
  }
  if (!(dt > 0.0)) {
    throw SolverError(Verdict::Breakdown, "time step collapsed at clock " + num(clock));
  }

  double sup = -std::numeric_limits<double>::infinity();
  double lo = std::numeric_limits<double>::infinity();
  int bad = 0;  // NaN or infinite entries, which the min/max would drop
  {
    const double* u = state.u.data();
    const double* du = du_.data();
    double* out = u_next_.data();
#pragma omp simd reduction(max : sup) reduction(min : lo) reduction(+ : bad)
    for (std::size_t i = 0; i < n; ++i) {
      const double x = u[i] + dt * du[i];
      out[i] = x;
      sup = x > sup ? x : sup;
      lo = x < lo ? x : lo;
      bad += (x - x != 0.0);
    }
  }
  if (bad != 0 || !std::isfinite(sup) || !std::isfinite(lo)) {
    throw SolverError(Verdict::NonFinite, "non-finite activator value after step " +
                                              std::to_string(state.steps + 1));
  }
  if (!(lo > 0.0)) {
    throw SolverError(Verdict::Breakdown, "activator lost positivity after step " +
                                              std::to_string(state.steps + 1));
  }
  double eta_next = state.eta;
  if (config_.system == SystemKind::ShadowTau) {
    eta_next = state.eta + dt * ev.deta;
    if (!std::isfinite(eta_next)) {
      throw SolverError(Verdict::NonFinite, "non-finite inhibitor value");
    }
    if (!(eta_next > kPositivityFloor)) {
      throw SolverError(Verdict::Breakdown, "inhibitor eta fell below the positivity floor");
    }
  }
  if (config_.system == SystemKind::FullRD) {
    double vlo = std::numeric_limits<double>::infinity();
    int vbad = 0;
    const double* v = state.v.data();
    const double* dv = dv_.data();
    double* out = v_next_.data();
#pragma omp simd reduction(min : vlo) reduction(+ : vbad)
    for (std::size_t i = 0; i < n; ++i) {
      const double x = v[i] + dt * dv[i];
      out[i] = x;
      vlo = x < vlo ? x : vlo;
      vbad += (x - x != 0.0);
    }
    if (vbad != 0) {
      throw SolverError(Verdict::NonFinite, "non-finite inhibitor value");
    }
    if (!(vlo > kPositivityFloor)) {
      throw SolverError(Verdict::Breakdown, "inhibitor v fell below the positivity floor");
    }
    state.v.swap(v_next_);
  }
  state.u.swap(u_next_);
  state.eta = eta_next;
  state.sup_norm = sup;
  state.min_u = lo;
  state.last_dt = dt;
  ++state.steps;
  const double next_clock = lands ? target : clock + dt;
  advance_clocks(state, clock, next_clock);

  if (sup >= config_.blowup_threshold) {
    state.terminated = true;
    state.verdict = Verdict::BlowUp;
    state.message = "sup norm crossed " + num(config_.blowup_threshold);
  } else if (sup <= config_.quench_threshold) {
    state.terminated = true;
    state.verdict = Verdict::Quench;
    state.message = "sup norm fell to " + num(config_.quench_threshold);
  } else if (next_clock >= config_.end_time) {
    state.terminated = true;
    state.verdict = Verdict::HorizonReached;
    state.message = "end time " + num(config_.end_time) + " reached";
  }
}

Sample Solver::sample(const RunState& state) const {
  const auto& prm = config_.params;
  const auto& w = disc_.weights();
  Sample s;
  s.t = state.t;
  s.sigma = state.sigma;
  s.sup_norm = *std::max_element(state.u.begin(), state.u.end());
  s.min_u = *std::min_element(state.u.begin(), state.u.end());
  s.mean_u = weighted_mean_pow(w, state.u, 1.0);
  s.zeta = weighted_mean_pow(w, state.u, prm.r);
  s.w_moment = weighted_mean_pow(w, state.u, prm.r + 1.0 - prm.p);
  switch (config_.system) {
    case SystemKind::ShadowTau:
      s.aux = state.eta;
      break;
    case SystemKind::FullRD:
      s.aux = *std::max_element(state.v.begin(), state.v.end());
      break;
    default:
      s.aux = kNaN;
  }
  return s;
}

Field Solver::field_of(const RunState& state) const { return Field(config_.grid, state.u); }

RunResult advance(const RunConfig& config) {
  const Solver solver(config);
  RunResult result;
  RunState state = solver.initial_state();

  std::vector<double> snaps = config.snapshot_times;
  std::sort(snaps.begin(), snaps.end());
  std::size_t next_snap = 0;
  while (next_snap < snaps.size() && snaps[next_snap] <= 0.0) {
    result.snapshots.push_back({0.0, solver.field_of(state)});
    ++next_snap;
  }

  result.series.samples.push_back(solver.sample(state));
  double last_sampled_sup = state.sup_norm;
  long last_sampled_step = 0;
  std::optional<SolverError> failure;

  try {
    while (!state.terminated) {
      if (state.steps >= config.max_steps) {
        throw SolverError(Verdict::Breakdown,
                          "step budget of " + std::to_string(config.max_steps) + " exhausted");
      }
      double target = config.end_time;
      if (next_snap < snaps.size()) {
        target = std::min(target, snaps[next_snap]);
      }
      solver.step(state, target);
      if (state.terminated && state.steps == last_sampled_step) {
        break;  // stopped at the horizon gate without stepping
      }
      bool snapped = false;
      while (next_snap < snaps.size() && solver.native_clock(state) >= snaps[next_snap]) {
        result.snapshots.push_back({snaps[next_snap], solver.field_of(state)});
        ++next_snap;
        snapped = true;
      }
      const bool due = state.steps - last_sampled_step >= config.sample_stride;
      const bool jumped = std::abs(state.sup_norm - last_sampled_sup) > kSampleJump * last_sampled_sup;
      if (due || jumped || snapped || state.terminated) {
        result.series.samples.push_back(solver.sample(state));
        last_sampled_sup = state.sup_norm;
        last_sampled_step = state.steps;
      }
    }
  } catch (const SolverError& e) {
    failure = e;
    if (state.steps != last_sampled_step) {
      result.series.samples.push_back(solver.sample(state));
    }
  }

  DetectOptions opts;
  opts.blowup_threshold = config.blowup_threshold;
  opts.quench_threshold = config.quench_threshold;
  result.report = detect_blowup(result.series, config.params.p, opts);
  if (failure) {
    result.report.verdict = failure->verdict();
    result.report.message = failure->what();
  } else {
    result.report.message = state.message;
    if (state.verdict == Verdict::HorizonReached &&
        result.report.verdict != Verdict::Bounded) {
      result.report.verdict = Verdict::HorizonReached;
    }
  }
  result.final_u = solver.field_of(state);
  result.steps = state.steps;
  return result;
}

}  // namespace gmshadow

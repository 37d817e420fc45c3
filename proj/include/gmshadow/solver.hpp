#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "gmshadow/evolution.hpp"
#include "gmshadow/initdata.hpp"
#include "gmshadow/mesh.hpp"
#include "gmshadow/params.hpp"

namespace gmshadow {

/// Equation family.
///   NonlocalT      u_t = D1/rho^2 Lap u - L u + W(t) u^p / zeta^gamma       (clock t)
///   NonlocalSigma  u_s = D1 Lap u - Phi u + Psi u^p / zeta^gamma            (clock sigma)
///   ShadowTau      u_s = D1 Lap u - Phi u + phi^2 u^p / eta^q,
///                  tau eta' = -Phi eta + phi^2 zeta / eta^s                (clock sigma)
///   FullRD         u_t = D1/rho^2 Lap u - L u + u^p / v^q,
///                  tau v_t = D2/rho^2 Lap v - L v + u^r / v^s               (clock t)
/// with zeta = mean(u^r).
enum class SystemKind { NonlocalT, NonlocalSigma, ShadowTau, FullRD };

/// Weight W(t) of the non-local reaction term in the t-form. Consistent uses
/// L^gamma, which makes the t-form an exact change of clock of the sigma-form.
/// Inverse uses L^-gamma and is kept for comparison runs.
enum class ReactionWeight { Consistent, Inverse };

/// Boundary condition at R = 1 for radial runs.
enum class RadialBoundary { Neumann, Dirichlet };

enum class Verdict { BlowUp, Quench, Bounded, HorizonReached, NonFinite, Breakdown };

std::string_view to_string(SystemKind kind);
std::string_view to_string(ReactionWeight weight);
std::string_view to_string(RadialBoundary bc);
std::string_view to_string(Verdict verdict);
SystemKind parse_system_kind(std::string_view name);
ReactionWeight parse_reaction_weight(std::string_view name);
RadialBoundary parse_radial_boundary(std::string_view name);

/// True for the kinds that integrate in the physical clock t.
bool uses_physical_clock(SystemKind kind);

struct RunConfig {
  SystemKind system = SystemKind::NonlocalT;
  Parameters params;
  EvolutionLaw law;
  Grid grid = RectGrid{};
  InitSpec init;

  double dt = 5e-4;
  double end_time = 10.0;  // in the native clock of the system
  double blowup_threshold = 1e6;
  double quench_threshold = 1e-3;
  int sample_stride = 100;
  // Fraction of the explicit stability limit used by the step cap.
  double stability_fraction = 1.0;
  // Relative change allowed per step: dt <= throttle / max_i |rhs_i| / u_i.
  double throttle = 0.1;
  long max_steps = 200'000'000;

  std::optional<double> eta0;  // ShadowTau; defaults to the quasi-steady value
  double v0 = 2.0;             // FullRD, constant initial inhibitor

  ReactionWeight reaction_weight = ReactionWeight::Consistent;
  RadialBoundary radial_boundary = RadialBoundary::Neumann;
  std::optional<double> boundary_value;  // Dirichlet value, defaults to u0(1)

  std::vector<double> snapshot_times;  // native clock

  /// Throws std::invalid_argument on an inconsistent configuration.
  void validate() const;
};

struct Sample {
  double t = 0.0;
  double sigma = 0.0;
  double sup_norm = 0.0;
  double min_u = 0.0;
  double mean_u = 0.0;
  double zeta = 0.0;      // mean(u^r)
  double w_moment = 0.0;  // mean(u^(r+1-p))
  double aux = 0.0;       // eta (ShadowTau), sup v (FullRD), NaN otherwise
};

struct TimeSeries {
  std::vector<Sample> samples;

  bool empty() const { return samples.empty(); }
  std::size_t size() const { return samples.size(); }
};

struct BlowUpReport {
  Verdict verdict = Verdict::Bounded;
  std::optional<double> event_time_t;
  std::optional<double> event_time_sigma;
  std::optional<double> extrapolated_sigma;
  std::optional<double> extrapolated_t;
  std::optional<double> fitted_rate_exponent;
  std::string message;
};

struct Snapshot {
  double time = 0.0;  // native clock
  Field field;
};

struct RunState {
  std::vector<double> u;
  std::vector<double> v;  // FullRD only
  double eta = 0.0;       // ShadowTau only
  double t = 0.0;
  double sigma = 0.0;
  long steps = 0;
  double last_dt = 0.0;
  double sup_norm = 0.0;  // of u after the last step
  double min_u = 0.0;
  bool terminated = false;
  Verdict verdict = Verdict::Bounded;
  std::string message;
};

struct RhsValue {
  std::vector<double> du;
  std::vector<double> dv;  // FullRD
  double deta = 0.0;       // ShadowTau
  double zeta = 0.0;
};

struct RunResult {
  TimeSeries series;
  BlowUpReport report;
  std::vector<Snapshot> snapshots;
  Field final_u;
  long steps = 0;
};

/// Thrown by the time stepper when the state leaves the admissible set.
class SolverError : public std::runtime_error {
 public:
  SolverError(Verdict verdict, const std::string& what)
      : std::runtime_error(what), verdict_(verdict) {}
  Verdict verdict() const { return verdict_; }

 private:
  Verdict verdict_;
};

/// Explicit Euler integrator for one configuration. Holds the precomputed
/// discretization and scratch buffers, so a Solver is not shareable between
/// threads; separate instances are independent.
class Solver {
 public:
  explicit Solver(RunConfig config);

  const RunConfig& config() const { return config_; }
  const Discretization& discretization() const { return disc_; }

  RunState initial_state() const;

  /// Right-hand side at the state's native clock. Throws SolverError on a
  /// non-positive mean(u^r), eta or v.
  RhsValue rhs(const RunState& state) const;

  /// One forward Euler step, shortened so that the native clock does not
  /// pass `target`. Sets state.terminated and state.verdict on a threshold
  /// crossing, on reaching end_time or at the sigma horizon. Throws
  /// SolverError on non-finite values or loss of positivity.
  void step(RunState& state, double target) const;
  void step(RunState& state) const { step(state, config_.end_time); }

  double native_clock(const RunState& state) const;
  Sample sample(const RunState& state) const;
  Field field_of(const RunState& state) const;

 private:
  struct Coefficients {
    double diffusion_u = 0.0;
    double diffusion_v = 0.0;
    double damping = 0.0;   // L or Phi
    double reaction = 0.0;  // W, Psi or phi^2
    double phi2 = 1.0;
  };

  // By-products of a right-hand side evaluation used by the step control.
  struct Evaluation {
    double deta = 0.0;
    double zeta = 0.0;
    double rate = 0.0;   // max |du_i| / u_i over the unknowns, eta and v included
    double react = 0.0;  // FullRD: max |s| u^r / v^(s+1)
  };

  Coefficients coefficients(double clock) const;
  Evaluation evaluate(const RunState& state, const Coefficients& c, double* du, double* dv) const;
  void set_clocks(RunState& state, double clock) const;
  void advance_clocks(RunState& state, double from, double to) const;

  RunConfig config_;
  Discretization disc_;
  DerivedIndices idx_;
  double boundary_value_ = 0.0;
  mutable std::vector<double> lap_;
  mutable std::vector<double> lap_v_;
  mutable std::vector<double> du_;
  mutable std::vector<double> dv_;
  mutable std::vector<double> u_next_;
  mutable std::vector<double> v_next_;
};

/// Runs a configuration to a verdict: samples every sample_stride steps,
/// whenever sup u moved by more than 5% since the last sample, at snapshot
/// times and at termination.
RunResult advance(const RunConfig& config);

}  // namespace gmshadow

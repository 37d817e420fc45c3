#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "gmshadow/evolution.hpp"
#include "gmshadow/mesh.hpp"
#include "gmshadow/params.hpp"
#include "gmshadow/solver.hpp"

namespace gmshadow {

// ---------------------------------------------------------------------------
// Bernoulli comparison bounds for the mean.
//
// The mean of u is a super-solution of F' = -Phi F + Psi F^omega, whose
// blow-up time solves (omega - 1) I(S) = F(0)^(1 - omega) with
//   I(S) = int_0^S Psi(s) exp((1 - omega) int_0^s Phi) ds
//        = int_0^T L^gamma exp((1 - omega) int_0^t L) dt,   S = sigma(T).
// ---------------------------------------------------------------------------

struct BoundReport {
  double I_sigma = std::numeric_limits<double>::quiet_NaN();
  double mean_threshold = std::numeric_limits<double>::quiet_NaN();
  std::optional<double> sigma_upper;
  std::optional<double> t_upper;
  bool applicable = false;
  std::string note;
};

/// I over [0, sigma_end]; sigma_end = +inf means the whole sigma range of the
/// law. Closed forms for Static, ExpGrowth and ExpDecay (the latter two only
/// over their full range), adaptive quadrature otherwise. Throws
/// std::domain_error for omega <= 1.
double bernoulli_integral(const EvolutionLaw& law, const DerivedIndices& idx,
                          double sigma_end = std::numeric_limits<double>::infinity());

/// ((omega - 1) I)^(1/(1 - omega)): means above this value blow up.
double blowup_mean_threshold(const EvolutionLaw& law, const DerivedIndices& idx,
                             double sigma_end = std::numeric_limits<double>::infinity());

/// Upper bound for the blow-up time of the mean started at u0_mean, in both
/// clocks. Not applicable (a value, not an error) when omega <= 1 or the mean
/// is at or below the threshold.
BoundReport bernoulli_bound(const EvolutionLaw& law, const DerivedIndices& idx, double u0_mean);

/// Mean threshold of the logistic law computed by quadrature over t in
/// [0, inf) of L^(+-gamma) exp((1 - omega) int L), then composed as in
/// blowup_mean_threshold. `weight` selects the exponent sign of L.
double logistic_mean_threshold(const DerivedIndices& idx, double beta, double m, int dim,
                               ReactionWeight weight = ReactionWeight::Consistent);

struct BernoulliResult {
  std::vector<double> query_values;  // F at the requested sigma values, NaN past blow-up
  std::optional<double> blowup_sigma;
  std::optional<double> blowup_t;
  double final_sigma = 0.0;
  double final_value = 0.0;
  long steps = 0;
};

/// Adaptive RK4 (step doubling) solution of F' = -Phi F + Psi F^omega,
/// F(0) = u0_mean. Integrates in sigma with the closed-form coefficients, or
/// in t with L for the logistic law. Stops at divergence (F > 1e12), at
/// sigma_end or at the sigma horizon. `queries` must be non-decreasing.
BernoulliResult bernoulli_oracle(const EvolutionLaw& law, const DerivedIndices& idx,
                                 double u0_mean, double rel_tol = 1e-10,
                                 double initial_step = 1e-3,
                                 const std::vector<double>& queries = {},
                                 double sigma_end = std::numeric_limits<double>::infinity());

// ---------------------------------------------------------------------------
// Moment criteria for blow-up of the non-local equation.
// ---------------------------------------------------------------------------

struct MomentCriteria {
  bool applicable = false;  // 0 < gamma < 1 and r <= 1 < (p-1)/r
  bool condition1 = false;  // w0 < (m_Psi / M_Phi) zeta0^(1 - gamma)
  bool condition2 = false;  // (p-1)/r >= 2 and w0 < 1
  double zeta0 = 0.0;       // mean(u0^r)
  double w0 = 0.0;          // mean(u0^(r+1-p))
};

MomentCriteria moment_criteria(const Field& u0, const Parameters& params,
                               const CoefficientBounds& bounds);

// ---------------------------------------------------------------------------
// Blow-up detection on sampled series.
// ---------------------------------------------------------------------------

struct DetectOptions {
  double blowup_threshold = 1e6;
  double quench_threshold = 1e-3;
  std::size_t min_fit_samples = 5;
  std::size_t max_fit_samples = 10;
  double rate_window_lo = 1e2;
  double rate_window_hi = 1e5;
};

/// Classifies a series. BlowUp at the first sample with sup >= threshold,
/// with the blow-up time extrapolated from a straight-line fit of
/// sup^-(p-1) against sigma (and t) over the last pre-threshold samples.
/// Quench when sup drops to the quench floor. Otherwise Bounded for a flat
/// series and HorizonReached for one that was still moving.
BlowUpReport detect_blowup(const TimeSeries& series, double p, const DetectOptions& options);
BlowUpReport detect_blowup(const TimeSeries& series, double p, double blowup_threshold);

/// Least-squares slope of log sup against log(sigma_star - sigma) over the
/// samples with sup in [window_lo, window_hi]. nullopt for fewer than 3
/// usable points or zero spread.
std::optional<double> fit_rate(const TimeSeries& series, double sigma_star,
                               double window_lo = 1e2, double window_hi = 1e5);

struct BlowUpLocation {
  std::size_t index = 0;
  double x = 0.0;  // radius on radial grids
  double y = 0.0;
  double value = 0.0;
  std::optional<double> envelope_exponent;  // radial only: u ~ C R^-e on [2h, 0.5]
};

BlowUpLocation locate_blowup(const Field& snapshot);

}  // namespace gmshadow

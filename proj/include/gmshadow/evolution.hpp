#pragma once

#include <string>
#include <string_view>

namespace gmshadow {

enum class LawKind { Static, ExpGrowth, ExpDecay, Logistic };

std::string_view to_string(LawKind kind);
/// Accepts static | exp_growth | exp_decay | logistic.
LawKind parse_law_kind(std::string_view name);

/// Isotropic domain evolution x = rho(t) * xi with rho(0) = 1.
///
///   Static     rho = 1
///   ExpGrowth  rho = exp(beta t)
///   ExpDecay   rho = exp(-beta t), requires beta < 1/N
///   Logistic   rho = exp(beta t) / (1 + (exp(beta t) - 1) / m), m != 1
///
/// Logistic with m > 1 grows towards m, with m < 1 it shrinks towards m.
struct EvolutionLaw {
  LawKind kind = LawKind::Static;
  double beta = 0.0;
  double m = 1.5;
  int dim = 2;

  static EvolutionLaw make_static(int dim);
  static EvolutionLaw exp_growth(double beta, int dim);
  static EvolutionLaw exp_decay(double beta, int dim);
  static EvolutionLaw logistic(double beta, double m, int dim);

  /// Throws std::invalid_argument on an inconsistent law.
  void validate() const;
};

/// Infimum and supremum of the dissipation and reaction coefficients over a
/// sigma interval. Unbounded suprema are reported as +infinity.
struct CoefficientBounds {
  double m_phi = 1.0;
  double M_phi = 1.0;
  double m_psi = 1.0;
  double M_psi = 1.0;
};

// Physical clock t.

double scale_factor(const EvolutionLaw& law, double t);
/// d(log rho)/dt.
double log_scale_rate(const EvolutionLaw& law, double t);
/// L(t) = 1 + N rho'(t) / rho(t), the dilution rate in the physical clock.
double dilution_rate(const EvolutionLaw& law, double t);
/// Integral of L over [0, t]; equals t + N log rho(t).
double integrated_dilution(const EvolutionLaw& law, double t);

// Rescaled clock sigma(t) = int_0^t rho^-2.

/// Closed form for Static / ExpGrowth / ExpDecay, adaptive Gauss-Kronrod
/// quadrature for Logistic.
double rescaled_time(const EvolutionLaw& law, double t);
/// Inverse of rescaled_time. Throws std::domain_error when sigma is negative
/// or not below sigma_horizon(law).
double physical_time(const EvolutionLaw& law, double sigma);
/// Supremum of attainable sigma: 1/(2 beta) for ExpGrowth, +inf otherwise.
double sigma_horizon(const EvolutionLaw& law);

/// phi(sigma) = rho(t(sigma)).
double scale_in_sigma(const EvolutionLaw& law, double sigma);
/// Phi(sigma) = phi^2 + N phi'/phi, the dissipation coefficient of the
/// sigma-form equations. Equals rho^2 L at t = t(sigma).
double dissipation_coeff(const EvolutionLaw& law, double sigma);
/// Psi(sigma) = phi^(2(1-gamma)) Phi^gamma, the reaction coefficient of the
/// non-local sigma-form equation. Equals rho^2 L^gamma at t = t(sigma).
double reaction_coeff(const EvolutionLaw& law, double sigma, double gamma);

/// Bounds of Phi and Psi over [sigma_lo, sigma_hi]. Static, ExpGrowth and
/// ExpDecay are monotone and use the endpoint values; Logistic is sampled and
/// refined. sigma_hi may be +infinity.
CoefficientBounds coefficient_bounds(const EvolutionLaw& law, double gamma,
                                     double sigma_lo, double sigma_hi);

}  // namespace gmshadow

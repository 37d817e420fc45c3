#pragma once

namespace gmshadow {

/// Kinetic exponents and transport coefficients of the activator-inhibitor
/// model. The activator production term is u^p / v^q, the inhibitor
/// production term is u^r / v^s.
///
/// p > 1 is deliberately not enforced here: the global-existence preset runs
/// with p = 1. Predicates that need p > 1 check it locally.
struct Parameters {
  double p = 3.0;
  double q = 2.0;
  double r = 1.0;
  double s = 2.0;
  double D1 = 1.0;   // activator diffusivity
  double D2 = 1.0;   // inhibitor diffusivity (full two-species system only)
  double tau = 0.0;  // inhibitor response time

  /// Throws std::invalid_argument when s <= -1, r <= 0, q < 0, a diffusivity
  /// is not positive or tau is negative.
  void validate() const;
};

/// Net indices of the kinetics.
///   gamma = q / (s + 1)   cross-inhibition
///   omega = p - r * gamma effective power of the homogeneous dynamics
///   pi    = (p - 1) / r   self-activation
struct DerivedIndices {
  double gamma = 0.0;
  double omega = 0.0;
  double pi = 0.0;
};

DerivedIndices derive_indices(const Parameters& params);

/// omega < 1: homogeneous states are kinetically stable, so any blow-up has
/// to be driven by diffusion.
bool turing_condition(const DerivedIndices& idx);

/// Sufficient condition for a global-in-time solution of the non-local
/// equation: pi < min{1, 2/N, (1 - 1/r)/2} and 0 < gamma < 1.
bool global_existence_condition(const Parameters& params, int dim);

/// Hypotheses of the diffusion-driven blow-up result on the unit ball:
/// N >= 3, 1 <= r <= p, p > N/(N-2), 2/N < pi < gamma and gamma > 1.
/// For N < 3 the condition p > N/(N-2) is unsatisfiable and the result is
/// false.
bool diffusion_blowup_condition(const Parameters& params, int dim);

}  // namespace gmshadow

#include "gmshadow/evolution.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <boost/math/tools/toms748_solve.hpp>

namespace gmshadow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_trivial(const EvolutionLaw& law) {
  return law.kind == LawKind::Static || law.beta == 0.0;
}

// Logistic rho written without exp(beta t) so it stays finite for large t.
double logistic_rho(double beta, double m, double t) {
  const double e = std::exp(-beta * t);
  return 1.0 / (e + (1.0 - e) / m);
}

double logistic_rate(double beta, double m, double t) {
  const double e = std::exp(-beta * t);
  return beta * (m - 1.0) * e / ((m - 1.0) * e + 1.0);
}

double logistic_sigma(double beta, double m, double t) {
  if (t == 0.0) {
    return 0.0;
  }
  auto integrand = [beta, m](double x) {
    const double rho = logistic_rho(beta, m, x);
    return 1.0 / (rho * rho);
  };
  // The integrand is smooth and monotone; split long intervals so that each
  // Gauss-Kronrod panel sees at most a few e-foldings.
  const double span = 5.0 / beta;
  // Past 40/beta the factor exp(-beta t) is below 5e-18 and rho^-2 equals
  // 1/m^2 to double precision.
  const double settled = 40.0 / beta;
  const double end = std::min(t, settled);
  double total = t > settled ? (t - settled) / (m * m) : 0.0;
  double a = 0.0;
  while (a < end) {
    const double b = std::min(end, a + span);
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
        integrand, a, b, 15, 1e-14);
    a = b;
  }
  return total;
}

void require_sigma_in_range(const EvolutionLaw& law, double sigma) {
  if (!(sigma >= 0.0)) {
    throw std::domain_error("sigma must be non-negative (got " + std::to_string(sigma) + ")");
  }
  if (!(sigma < sigma_horizon(law))) {
    throw std::domain_error("sigma " + std::to_string(sigma) +
                            " is at or beyond the horizon " +
                            std::to_string(sigma_horizon(law)));
  }
}

// Phi and Psi of the logistic law as functions of the physical clock.
double logistic_phi_t(const EvolutionLaw& law, double t) {
  const double rho = scale_factor(law, t);
  return rho * rho * dilution_rate(law, t);
}

double logistic_psi_t(const EvolutionLaw& law, double t, double gamma) {
  const double rho = scale_factor(law, t);
  return rho * rho * std::pow(dilution_rate(law, t), gamma);
}

struct Extremes {
  double lo = kInf;
  double hi = -kInf;
  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
};

// Golden-section search for a local extremum of f on [a, b]. sign = +1 finds a
// maximum, -1 a minimum. Returns the extremal value.
template <typename F>
double golden_extremum(F&& f, double a, double b, double sign) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = b - g * (b - a);
  double d = a + g * (b - a);
  double fc = sign * f(c);
  double fd = sign * f(d);
  for (int it = 0; it < 100 && (b - a) > 1e-12 * (1.0 + std::abs(a)); ++it) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - g * (b - a);
      fc = sign * f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + g * (b - a);
      fd = sign * f(d);
    }
  }
  return sign * std::max(fc, fd);
}

// Sampled extremes of f over [t0, t1] with golden-section refinement around
// the best interior samples.
template <typename F>
Extremes sampled_extremes(F&& f, double t0, double t1) {
  constexpr int kSamples = 400;
  std::array<double, kSamples + 1> ts{};
  std::array<double, kSamples + 1> vs{};
  Extremes ex;
  for (int i = 0; i <= kSamples; ++i) {
    ts[i] = t0 + (t1 - t0) * i / kSamples;
    vs[i] = f(ts[i]);
    ex.add(vs[i]);
  }
  const auto imax = std::max_element(vs.begin(), vs.end()) - vs.begin();
  const auto imin = std::min_element(vs.begin(), vs.end()) - vs.begin();
  if (imax > 0 && imax < kSamples) {
    ex.add(golden_extremum(f, ts[imax - 1], ts[imax + 1], 1.0));
  }
  if (imin > 0 && imin < kSamples) {
    ex.add(golden_extremum(f, ts[imin - 1], ts[imin + 1], -1.0));
  }
  return ex;
}

}  // namespace

std::string_view to_string(LawKind kind) {
  switch (kind) {
    case LawKind::Static:
      return "static";
    case LawKind::ExpGrowth:
      return "exp_growth";
    case LawKind::ExpDecay:
      return "exp_decay";
    case LawKind::Logistic:
      return "logistic";
  }
  return "unknown";
}

LawKind parse_law_kind(std::string_view name) {
  if (name == "static") return LawKind::Static;
  if (name == "exp_growth") return LawKind::ExpGrowth;
  if (name == "exp_decay") return LawKind::ExpDecay;
  if (name == "logistic") return LawKind::Logistic;
  throw std::invalid_argument("unknown evolution law '" + std::string(name) +
                              "' (expected static, exp_growth, exp_decay or logistic)");
}

EvolutionLaw EvolutionLaw::make_static(int dim) {
  EvolutionLaw law;
  law.kind = LawKind::Static;
  law.dim = dim;
  law.validate();
  return law;
}

EvolutionLaw EvolutionLaw::exp_growth(double beta, int dim) {
  EvolutionLaw law;
  law.kind = LawKind::ExpGrowth;
  law.beta = beta;
  law.dim = dim;
  law.validate();
  return law;
}

EvolutionLaw EvolutionLaw::exp_decay(double beta, int dim) {
  EvolutionLaw law;
  law.kind = LawKind::ExpDecay;
  law.beta = beta;
  law.dim = dim;
  law.validate();
  return law;
}

EvolutionLaw EvolutionLaw::logistic(double beta, double m, int dim) {
  EvolutionLaw law;
  law.kind = LawKind::Logistic;
  law.beta = beta;
  law.m = m;
  law.dim = dim;
  law.validate();
  return law;
}

void EvolutionLaw::validate() const {
  if (dim < 1 || dim > 3) {
    throw std::invalid_argument("dimension must be 1, 2 or 3 (got " + std::to_string(dim) + ")");
  }
  if (kind == LawKind::Static) {
    return;
  }
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be finite and non-negative");
  }
  if (kind == LawKind::ExpDecay && !(dim * beta < 1.0)) {
    throw std::invalid_argument("exponential decay needs beta < 1/N (got beta=" +
                                std::to_string(beta) + ", N=" + std::to_string(dim) + ")");
  }
  if (kind == LawKind::Logistic) {
    if (!(m > 0.0) || !std::isfinite(m)) {
      throw std::invalid_argument("logistic m must be positive");
    }
    if (m == 1.0) {
      throw std::invalid_argument("logistic m must differ from 1");
    }
  }
}

double scale_factor(const EvolutionLaw& law, double t) {
  if (is_trivial(law)) {
    return 1.0;
  }
  switch (law.kind) {
    case LawKind::ExpGrowth:
      return std::exp(law.beta * t);
    case LawKind::ExpDecay:
      return std::exp(-law.beta * t);
    case LawKind::Logistic:
      return logistic_rho(law.beta, law.m, t);
    case LawKind::Static:
      break;
  }
  return 1.0;
}

double log_scale_rate(const EvolutionLaw& law, double t) {
  if (is_trivial(law)) {
    return 0.0;
  }
  switch (law.kind) {
    case LawKind::ExpGrowth:
      return law.beta;
    case LawKind::ExpDecay:
      return -law.beta;
    case LawKind::Logistic:
      return logistic_rate(law.beta, law.m, t);
    case LawKind::Static:
      break;
  }
  return 0.0;
}

double dilution_rate(const EvolutionLaw& law, double t) {
  return 1.0 + law.dim * log_scale_rate(law, t);
}

double integrated_dilution(const EvolutionLaw& law, double t) {
  return t + law.dim * std::log(scale_factor(law, t));
}

double rescaled_time(const EvolutionLaw& law, double t) {
  if (!(t >= 0.0)) {
    throw std::domain_error("t must be non-negative");
  }
  if (is_trivial(law)) {
    return t;
  }
  const double b = law.beta;
  switch (law.kind) {
    case LawKind::ExpGrowth:
      return -std::expm1(-2.0 * b * t) / (2.0 * b);
    case LawKind::ExpDecay:
      return std::expm1(2.0 * b * t) / (2.0 * b);
    case LawKind::Logistic:
      return logistic_sigma(b, law.m, t);
    case LawKind::Static:
      break;
  }
  return t;
}

double sigma_horizon(const EvolutionLaw& law) {
  if (law.kind == LawKind::ExpGrowth && law.beta > 0.0) {
    return 1.0 / (2.0 * law.beta);
  }
  return kInf;
}

double physical_time(const EvolutionLaw& law, double sigma) {
  require_sigma_in_range(law, sigma);
  if (is_trivial(law)) {
    return sigma;
  }
  const double b = law.beta;
  switch (law.kind) {
    case LawKind::ExpGrowth:
      return -std::log1p(-2.0 * b * sigma) / (2.0 * b);
    case LawKind::ExpDecay:
      return std::log1p(2.0 * b * sigma) / (2.0 * b);
    case LawKind::Logistic: {
      if (sigma == 0.0) {
        return 0.0;
      }
      // rho lies between 1 and m, so sigma(t) is sandwiched between t/max^2
      // and t/min^2.
      const double lo_scale = std::min(1.0, law.m);
      const double hi_scale = std::max(1.0, law.m);
      const double a = sigma * lo_scale * lo_scale;
      auto f = [&](double t) { return rescaled_time(law, t) - sigma; };
      const double fa = f(a);
      // The upper end sigma * max^2 can be huge for large m; grow towards it.
      const double c_max = sigma * hi_scale * hi_scale;
      double c = std::min(c_max, 2.0 * a + 1.0);
      double fc = f(c);
      while (fc < 0.0 && c < c_max) {
        c = std::min(c_max, 4.0 * c);
        fc = f(c);
      }
      if (fa == 0.0) return a;
      if (fc == 0.0) return c;
      std::uintmax_t iters = 200;
      const auto root = boost::math::tools::toms748_solve(
          f, a, c, fa, fc, boost::math::tools::eps_tolerance<double>(44), iters);
      return 0.5 * (root.first + root.second);
    }
    case LawKind::Static:
      break;
  }
  return sigma;
}

double scale_in_sigma(const EvolutionLaw& law, double sigma) {
  require_sigma_in_range(law, sigma);
  if (is_trivial(law)) {
    return 1.0;
  }
  const double b = law.beta;
  switch (law.kind) {
    case LawKind::ExpGrowth:
      return 1.0 / std::sqrt(1.0 - 2.0 * b * sigma);
    case LawKind::ExpDecay:
      return 1.0 / std::sqrt(1.0 + 2.0 * b * sigma);
    case LawKind::Logistic:
      return scale_factor(law, physical_time(law, sigma));
    case LawKind::Static:
      break;
  }
  return 1.0;
}

double dissipation_coeff(const EvolutionLaw& law, double sigma) {
  require_sigma_in_range(law, sigma);
  if (is_trivial(law)) {
    return 1.0;
  }
  const double b = law.beta;
  const double N = law.dim;
  switch (law.kind) {
    case LawKind::ExpGrowth:
      return (1.0 + N * b) / (1.0 - 2.0 * b * sigma);
    case LawKind::ExpDecay:
      return (1.0 - N * b) / (1.0 + 2.0 * b * sigma);
    case LawKind::Logistic:
      return logistic_phi_t(law, physical_time(law, sigma));
    case LawKind::Static:
      break;
  }
  return 1.0;
}

double reaction_coeff(const EvolutionLaw& law, double sigma, double gamma) {
  require_sigma_in_range(law, sigma);
  if (is_trivial(law)) {
    return 1.0;
  }
  const double b = law.beta;
  const double N = law.dim;
  switch (law.kind) {
    case LawKind::ExpGrowth:
      return std::pow(1.0 + N * b, gamma) / (1.0 - 2.0 * b * sigma);
    case LawKind::ExpDecay:
      return std::pow(1.0 - N * b, gamma) / (1.0 + 2.0 * b * sigma);
    case LawKind::Logistic:
      return logistic_psi_t(law, physical_time(law, sigma), gamma);
    case LawKind::Static:
      break;
  }
  return 1.0;
}

CoefficientBounds coefficient_bounds(const EvolutionLaw& law, double gamma,
                                     double sigma_lo, double sigma_hi) {
  if (!(sigma_lo >= 0.0) || !(sigma_hi >= sigma_lo)) {
    throw std::invalid_argument("coefficient_bounds needs 0 <= sigma_lo <= sigma_hi");
  }
  CoefficientBounds cb;
  if (is_trivial(law)) {
    return cb;
  }
  const double horizon = sigma_horizon(law);
  switch (law.kind) {
    case LawKind::ExpGrowth: {
      cb.m_phi = dissipation_coeff(law, sigma_lo);
      cb.m_psi = reaction_coeff(law, sigma_lo, gamma);
      if (sigma_hi >= horizon) {
        cb.M_phi = kInf;
        cb.M_psi = kInf;
      } else {
        cb.M_phi = dissipation_coeff(law, sigma_hi);
        cb.M_psi = reaction_coeff(law, sigma_hi, gamma);
      }
      return cb;
    }
    case LawKind::ExpDecay: {
      cb.M_phi = dissipation_coeff(law, sigma_lo);
      cb.M_psi = reaction_coeff(law, sigma_lo, gamma);
      if (std::isinf(sigma_hi)) {
        cb.m_phi = 0.0;
        cb.m_psi = 0.0;
      } else {
        cb.m_phi = dissipation_coeff(law, sigma_hi);
        cb.m_psi = reaction_coeff(law, sigma_hi, gamma);
      }
      return cb;
    }
    case LawKind::Logistic: {
      const double t0 = physical_time(law, sigma_lo);
      const bool unbounded = std::isinf(sigma_hi);
      // Beyond ~60/beta the logistic factors are at their limits to double
      // precision.
      const double t1 = unbounded ? t0 + 60.0 / law.beta : physical_time(law, sigma_hi);
      Extremes phi = sampled_extremes([&](double t) { return logistic_phi_t(law, t); }, t0, t1);
      Extremes psi =
          sampled_extremes([&](double t) { return logistic_psi_t(law, t, gamma); }, t0, t1);
      if (unbounded) {
        phi.add(law.m * law.m);
        psi.add(law.m * law.m);
      }
      cb.m_phi = phi.lo;
      cb.M_phi = phi.hi;
      cb.m_psi = psi.lo;
      cb.M_psi = psi.hi;
      return cb;
    }
    case LawKind::Static:
      break;
  }
  return cb;
}

}  // namespace gmshadow

#include "gmshadow/analysis.hpp"

#include <algorithm>
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
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kDivergence = 1e12;

void require_superlinear(const DerivedIndices& idx) {
  if (!(idx.omega > 1.0)) {
    throw std::domain_error("the Bernoulli bound needs omega > 1 (got omega=" +
                            format_number(idx.omega) + ")");
  }
}

bool constant_dilution(const EvolutionLaw& law) {
  return law.kind != LawKind::Logistic || law.beta == 0.0;
}

// int_0^T L^e exp((1 - omega) int_0^t L) dt by panelled Gauss-Kronrod.
double quadrature_I(const EvolutionLaw& law, double omega, double exponent, double T) {
  auto integrand = [&](double t) {
    return std::pow(dilution_rate(law, t), exponent) *
           std::exp((1.0 - omega) * integrated_dilution(law, t));
  };
  // L >= min(1, 1 + N beta (m-1)/m) > 0, so the integrand decays at least like
  // exp(-(omega-1) Lmin t); beyond 60 e-foldings it is negligible.
  const double lmin = std::min(dilution_rate(law, 0.0), 1.0);
  const double cutoff = 60.0 / ((omega - 1.0) * lmin);
  const double end = std::min(T, cutoff);
  const double panel = 1.0 / ((omega - 1.0) * lmin);
  double total = 0.0;
  for (double a = 0.0; a < end;) {
    const double b = std::min(end, a + panel);
    total += boost::math::quadrature::gauss_kronrod<double, 31>::integrate(integrand, a, b, 15,
                                                                           1e-13);
    a = b;
  }
  return total;
}

double compose_threshold(double omega, double I) {
  return std::pow((omega - 1.0) * I, 1.0 / (1.0 - omega));
}

struct LinearFit {
  double intercept = 0.0;
  double slope = 0.0;
  bool ok = false;
};

LinearFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
  LinearFit fit;
  const std::size_t n = x.size();
  if (n < 2) return fit;
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (!(sxx > 0.0)) return fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.ok = true;
  return fit;
}

}  // namespace

double bernoulli_integral(const EvolutionLaw& law, const DerivedIndices& idx, double sigma_end) {
  require_superlinear(idx);
  law.validate();
  const double w = idx.omega;
  if (!(sigma_end > 0.0)) {
    return 0.0;
  }
  const double horizon = sigma_horizon(law);
  const double T = sigma_end >= horizon ? kInf : physical_time(law, sigma_end);
  if (constant_dilution(law)) {
    const double L = dilution_rate(law, 0.0);
    const double full = std::pow(L, idx.gamma - 1.0) / (w - 1.0);
    return std::isinf(T) ? full : -full * std::expm1((1.0 - w) * L * T);
  }
  return quadrature_I(law, w, idx.gamma, T);
}

double blowup_mean_threshold(const EvolutionLaw& law, const DerivedIndices& idx,
                             double sigma_end) {
  return compose_threshold(idx.omega, bernoulli_integral(law, idx, sigma_end));
}

double logistic_mean_threshold(const DerivedIndices& idx, double beta, double m, int dim,
                               ReactionWeight weight) {
  require_superlinear(idx);
  const EvolutionLaw law = EvolutionLaw::logistic(beta, m, dim);
  const double e = weight == ReactionWeight::Consistent ? idx.gamma : -idx.gamma;
  return compose_threshold(idx.omega, quadrature_I(law, idx.omega, e, kInf));
}

BoundReport bernoulli_bound(const EvolutionLaw& law, const DerivedIndices& idx, double u0_mean) {
  BoundReport rep;
  if (!(idx.omega > 1.0)) {
    rep.note = "not applicable: omega <= 1";
    return rep;
  }
  rep.I_sigma = bernoulli_integral(law, idx);
  rep.mean_threshold = compose_threshold(idx.omega, rep.I_sigma);
  if (!(u0_mean > rep.mean_threshold)) {
    rep.note = "not applicable: initial mean does not exceed the threshold";
    return rep;
  }
  rep.applicable = true;
  const double w = idx.omega;
  const double g = idx.gamma;
  const double y0 = std::pow(u0_mean, 1.0 - w);
  const double b = law.beta;
  const double N = law.dim;
  double sigma = kNaN;
  if (law.kind == LawKind::Static || b == 0.0) {
    sigma = std::log1p(-y0) / (1.0 - w);
  } else if (law.kind == LawKind::ExpGrowth) {
    const double L = 1.0 + N * b;
    const double base = 1.0 - std::pow(L, 1.0 - g) * y0;
    sigma = (1.0 - std::pow(base, 2.0 * b / ((w - 1.0) * L))) / (2.0 * b);
  } else if (law.kind == LawKind::ExpDecay) {
    const double L = 1.0 - N * b;
    const double base = 1.0 - std::pow(L, 1.0 - g) * y0;
    sigma = (std::pow(base, 2.0 * b / ((1.0 - w) * L)) - 1.0) / (2.0 * b);
  } else {
    // (omega - 1) I(T) = u0^(1 - omega), I increasing in T
    auto G = [&](double T) { return (w - 1.0) * quadrature_I(law, w, g, T) - y0; };
    double hi = 1.0;
    while (G(hi) <= 0.0) {
      hi *= 2.0;
      if (hi > 1e6) {
        throw std::runtime_error("logistic Bernoulli bound: no sign change found");
      }
    }
    std::uintmax_t iters = 200;
    const auto root = boost::math::tools::toms748_solve(
        G, 0.0, hi, G(0.0), G(hi), boost::math::tools::eps_tolerance<double>(48), iters);
    const double T = 0.5 * (root.first + root.second);
    rep.t_upper = T;
    rep.sigma_upper = rescaled_time(law, T);
    return rep;
  }
  rep.sigma_upper = sigma;
  rep.t_upper = physical_time(law, sigma);
  return rep;
}

BernoulliResult bernoulli_oracle(const EvolutionLaw& law, const DerivedIndices& idx,
                                 double u0_mean, double rel_tol, double initial_step,
                                 const std::vector<double>& queries, double sigma_end) {
  require_superlinear(idx);
  law.validate();
  if (!(u0_mean > 0.0)) {
    throw std::invalid_argument("bernoulli_oracle needs a positive initial mean");
  }
  if (!(initial_step > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("bernoulli_oracle needs positive step and tolerance");
  }
  for (std::size_t i = 1; i < queries.size(); ++i) {
    if (queries[i] < queries[i - 1]) {
      throw std::invalid_argument("bernoulli_oracle queries must be non-decreasing");
    }
  }
  const bool in_t = law.kind == LawKind::Logistic;
  const double w = idx.omega;
  const double g = idx.gamma;
  auto rhs = [&](double x, double F) {
    if (in_t) {
      const double L = dilution_rate(law, x);
      return -L * F + std::pow(L, g) * std::pow(F, w);
    }
    return -dissipation_coeff(law, x) * F + reaction_coeff(law, x, g) * std::pow(F, w);
  };
  auto rk4 = [&](double x, double F, double h) {
    const double k1 = rhs(x, F);
    const double k2 = rhs(x + 0.5 * h, F + 0.5 * h * k1);
    const double k3 = rhs(x + 0.5 * h, F + 0.5 * h * k2);
    const double k4 = rhs(x + h, F + h * k3);
    return F + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  };

  // Integration limits in the integration variable.
  const double horizon = sigma_horizon(law);
  double x_end = std::min(sigma_end, horizon);
  if (std::isinf(x_end)) {
    // without a finite end a decaying solution runs forever; stop once it
    // has settled for many e-foldings past the last query
    x_end = std::max(1e3, queries.empty() ? 0.0 : queries.back());
  }
  // Stay clear of the growth horizon where Phi is unbounded.
  const double x_stop_sigma = std::isinf(horizon) ? x_end : std::min(x_end, horizon * (1.0 - 1e-9));
  std::vector<double> targets;
  targets.reserve(queries.size());
  for (double q : queries) {
    targets.push_back(in_t ? (q < horizon ? physical_time(law, q) : kInf) : q);
  }
  const double x_stop = in_t ? (std::isinf(x_stop_sigma) ? kInf : physical_time(law, x_stop_sigma))
                             : x_stop_sigma;

  BernoulliResult res;
  res.query_values.assign(queries.size(), kNaN);
  std::size_t qi = 0;
  double x = 0.0;
  double F = u0_mean;
  double h = initial_step;
  while (qi < targets.size() && targets[qi] <= 0.0) {
    res.query_values[qi++] = F;
  }
  const double x_final = x_stop;
  while (x < x_final && F <= kDivergence) {
    double step = h;
    bool lands_query = false;
    if (qi < targets.size() && x + step >= targets[qi]) {
      step = targets[qi] - x;
      lands_query = true;
    }
    if (x + step >= x_final) {
      step = x_final - x;
      lands_query = false;
    }
    const double full = rk4(x, F, step);
    const double half = rk4(x + 0.5 * step, rk4(x, F, 0.5 * step), 0.5 * step);
    const double err = std::abs(half - full) / 15.0;
    const double tol = rel_tol * std::max(std::abs(half), 1e-300);
    const bool finite = std::isfinite(full) && std::isfinite(half);
    if (!finite || err > tol) {
      h = step * (finite ? std::max(0.1, 0.9 * std::pow(tol / err, 0.2)) : 0.1);
      if (h < 1e-300) {
        break;
      }
      continue;
    }
    F = half + (half - full) / 15.0;
    x += step;
    ++res.steps;
    if (lands_query) {
      x = targets[qi];
      while (qi < targets.size() && targets[qi] <= x) {
        res.query_values[qi++] = F;
      }
    }
    const double grow = err > 0.0 ? 0.9 * std::pow(tol / err, 0.2) : 4.0;
    h = std::max(step, h) * std::clamp(grow, 0.1, 4.0);
    if (lands_query) {
      h = std::max(h, initial_step);
    }
  }
  const double sigma_now = in_t ? rescaled_time(law, x) : x;
  res.final_sigma = sigma_now;
  res.final_value = F;
  if (F > kDivergence) {
    res.blowup_sigma = sigma_now;
    res.blowup_t = in_t ? x : physical_time(law, x);
  }
  return res;
}

MomentCriteria moment_criteria(const Field& u0, const Parameters& params,
                               const CoefficientBounds& bounds) {
  const DerivedIndices idx = derive_indices(params);
  MomentCriteria mc;
  mc.zeta0 = mean(u0, params.r);
  mc.w0 = mean(u0, params.r + 1.0 - params.p);
  mc.applicable = idx.gamma > 0.0 && idx.gamma < 1.0 && params.r <= 1.0 && idx.pi > 1.0;
  if (!mc.applicable) {
    return mc;
  }
  mc.condition1 = mc.w0 < (bounds.m_psi / bounds.M_phi) * std::pow(mc.zeta0, 1.0 - idx.gamma);
  mc.condition2 = idx.pi >= 2.0 && mc.w0 < 1.0;
  return mc;
}

std::optional<double> fit_rate(const TimeSeries& series, double sigma_star, double window_lo,
                               double window_hi) {
  std::vector<double> x;
  std::vector<double> y;
  for (const auto& s : series.samples) {
    if (s.sup_norm >= window_lo && s.sup_norm <= window_hi && s.sigma < sigma_star) {
      x.push_back(std::log(sigma_star - s.sigma));
      y.push_back(std::log(s.sup_norm));
    }
  }
  if (x.size() < 3) {
    return std::nullopt;
  }
  const LinearFit fit = least_squares(x, y);
  if (!fit.ok) {
    return std::nullopt;
  }
  return fit.slope;
}

BlowUpReport detect_blowup(const TimeSeries& series, double p, const DetectOptions& options) {
  BlowUpReport rep;
  const auto& s = series.samples;
  if (s.empty()) {
    rep.verdict = Verdict::Bounded;
    rep.message = "empty series";
    return rep;
  }
  std::size_t crossing = s.size();
  std::size_t quench = s.size();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (crossing == s.size() && s[i].sup_norm >= options.blowup_threshold) crossing = i;
    if (quench == s.size() && s[i].sup_norm <= options.quench_threshold) quench = i;
  }

  if (crossing < s.size() && crossing <= quench) {
    rep.verdict = Verdict::BlowUp;
    rep.event_time_t = s[crossing].t;
    rep.event_time_sigma = s[crossing].sigma;
    const std::size_t available = crossing;
    if (p > 1.0 && available >= options.min_fit_samples) {
      const std::size_t k = std::min(available, options.max_fit_samples);
      std::vector<double> xs;
      std::vector<double> xt;
      std::vector<double> ys;
      for (std::size_t i = crossing - k; i < crossing; ++i) {
        xs.push_back(s[i].sigma);
        xt.push_back(s[i].t);
        ys.push_back(std::pow(s[i].sup_norm, -(p - 1.0)));
      }
      const LinearFit fs = least_squares(xs, ys);
      const LinearFit ft = least_squares(xt, ys);
      if (fs.ok && fs.slope < 0.0) rep.extrapolated_sigma = -fs.intercept / fs.slope;
      if (ft.ok && ft.slope < 0.0) rep.extrapolated_t = -ft.intercept / ft.slope;
      if (rep.extrapolated_sigma) {
        rep.fitted_rate_exponent = fit_rate(series, *rep.extrapolated_sigma,
                                            options.rate_window_lo, options.rate_window_hi);
      }
    } else {
      rep.message = "too few pre-threshold samples for extrapolation";
    }
    return rep;
  }
  if (quench < s.size()) {
    rep.verdict = Verdict::Quench;
    rep.event_time_t = s[quench].t;
    rep.event_time_sigma = s[quench].sigma;
    return rep;
  }
  const double ref = s.front().sup_norm;
  double dev = 0.0;
  for (const auto& x : s) dev = std::max(dev, std::abs(x.sup_norm - ref));
  rep.verdict = dev <= 1e-10 * std::abs(ref) ? Verdict::Bounded : Verdict::HorizonReached;
  return rep;
}

BlowUpReport detect_blowup(const TimeSeries& series, double p, double blowup_threshold) {
  DetectOptions opts;
  opts.blowup_threshold = blowup_threshold;
  return detect_blowup(series, p, opts);
}

BlowUpLocation locate_blowup(const Field& snapshot) {
  if (snapshot.values.empty()) {
    throw std::invalid_argument("locate_blowup on an empty field");
  }
  BlowUpLocation loc;
  const auto it = std::max_element(snapshot.values.begin(), snapshot.values.end());
  loc.index = static_cast<std::size_t>(it - snapshot.values.begin());
  loc.value = *it;
  if (const auto* rect = std::get_if<RectGrid>(&snapshot.grid)) {
    loc.x = (loc.index % rect->nx) * rect->hx();
    loc.y = (loc.index / rect->nx) * rect->hy();
    return loc;
  }
  const auto& rad = std::get<RadialGrid>(snapshot.grid);
  loc.x = rad.radius(static_cast<int>(loc.index));
  std::vector<double> lx;
  std::vector<double> ly;
  for (int i = 0; i < rad.M; ++i) {
    const double R = rad.radius(i);
    if (R >= 2.0 * rad.h() && R <= 0.5 && snapshot.values[i] > 0.0) {
      lx.push_back(std::log(R));
      ly.push_back(std::log(snapshot.values[i]));
    }
  }
  const LinearFit fit = least_squares(lx, ly);
  if (lx.size() >= 3 && fit.ok) {
    loc.envelope_exponent = -fit.slope;
  }
  return loc;
}

}  // namespace gmshadow

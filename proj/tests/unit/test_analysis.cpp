#include "doctest.h"

#include <cmath>
#include <stdexcept>

#include "gmshadow/analysis.hpp"
#include "gmshadow/initdata.hpp"

using namespace gmshadow;

namespace {

// Reference exponent set p=3, q=2, r=1, s=2.
DerivedIndices table1() {
  Parameters prm;
  return derive_indices(prm);
}

TimeSeries power_series(double sigma_star, double exponent, double s0, double s1, int n) {
  TimeSeries ts;
  for (int i = 0; i <= n; ++i) {
    Sample s;
    s.sigma = s0 + (s1 - s0) * i / n;
    s.t = s.sigma;
    s.sup_norm = std::pow(sigma_star - s.sigma, -exponent);
    ts.samples.push_back(s);
  }
  return ts;
}

TimeSeries constant_series(double value, int n) {
  TimeSeries ts;
  for (int i = 0; i < n; ++i) {
    Sample s;
    s.sigma = 0.1 * i;
    s.t = s.sigma;
    s.sup_norm = value;
    ts.samples.push_back(s);
  }
  return ts;
}

}  // namespace

TEST_CASE("Bernoulli integral closed forms") {
  const auto idx = table1();
  CHECK(bernoulli_integral(EvolutionLaw::exp_growth(0.1, 2), idx) ==
        doctest::Approx(0.705777021660771).epsilon(1e-13));
  CHECK(bernoulli_integral(EvolutionLaw::exp_decay(0.1, 2), idx) ==
        doctest::Approx(0.807913008761956).epsilon(1e-13));
  CHECK(bernoulli_integral(EvolutionLaw::make_static(2), idx) == doctest::Approx(0.75).epsilon(1e-15));
  const double S = 0.8;
  CHECK(bernoulli_integral(EvolutionLaw::make_static(2), idx, S) ==
        doctest::Approx((1.0 - std::exp(-4.0 / 3.0 * S)) * 0.75).epsilon(1e-14));

  Parameters turing;
  turing.p = 4;
  turing.q = 4;
  turing.r = 2;
  turing.s = 1;
  CHECK_THROWS_AS(bernoulli_integral(EvolutionLaw::make_static(3), derive_indices(turing)),
                  std::domain_error);
}

TEST_CASE("Bernoulli integral closed forms agree with the logistic quadrature path") {
  // A logistic law with huge m looks like exponential growth over a finite
  // horizon; compare the quadrature against the constant-L closed form there.
  const auto idx = table1();
  const auto gr = EvolutionLaw::exp_growth(0.1, 2);
  const auto lg = EvolutionLaw::logistic(0.1, 1e9, 2);
  const double S = rescaled_time(gr, 3.0);
  const double Sl = rescaled_time(lg, 3.0);
  CHECK(bernoulli_integral(lg, idx, Sl) ==
        doctest::Approx(bernoulli_integral(gr, idx, S)).epsilon(1e-6));
}

TEST_CASE("mean thresholds") {
  const auto idx = table1();
  const double st = blowup_mean_threshold(EvolutionLaw::make_static(2), idx);
  const double gr = blowup_mean_threshold(EvolutionLaw::exp_growth(0.1, 2), idx);
  const double dc = blowup_mean_threshold(EvolutionLaw::exp_decay(0.1, 2), idx);
  CHECK(st == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gr == doctest::Approx(1.046635139392106).epsilon(1e-13));
  CHECK(dc == doctest::Approx(0.945741609003176).epsilon(1e-13));
  CHECK(gr == doctest::Approx(std::pow(1.2, 0.25)).epsilon(1e-13));
  CHECK(dc == doctest::Approx(std::pow(0.8, 0.25)).epsilon(1e-13));
  CHECK(dc < st);
  CHECK(st < gr);
}

TEST_CASE("closed-form blow-up bounds") {
  const auto idx = table1();
  auto b = bernoulli_bound(EvolutionLaw::make_static(2), idx, 2.0);
  REQUIRE(b.applicable);
  CHECK(*b.sigma_upper == doctest::Approx(0.379192344751320).epsilon(1e-13));
  CHECK(*b.t_upper == doctest::Approx(0.379192344751320).epsilon(1e-13));

  b = bernoulli_bound(EvolutionLaw::exp_growth(0.1, 2), idx, 2.0);
  REQUIRE(b.applicable);
  CHECK(*b.sigma_upper == doctest::Approx(0.330852215160156).epsilon(1e-13));
  CHECK(*b.t_upper == doctest::Approx(0.342306722962180).epsilon(1e-13));

  b = bernoulli_bound(EvolutionLaw::exp_decay(0.1, 2), idx, 2.0);
  REQUIRE(b.applicable);
  CHECK(*b.sigma_upper == doctest::Approx(0.449887190029517).epsilon(1e-13));
  CHECK(*b.t_upper == doctest::Approx(0.430784984748353).epsilon(1e-13));

  b = bernoulli_bound(EvolutionLaw::exp_growth(0.1, 2), idx, 1.01);
  CHECK_FALSE(b.applicable);
  CHECK_FALSE(b.sigma_upper.has_value());

  Parameters turing;
  turing.p = 4;
  turing.q = 4;
  turing.r = 2;
  turing.s = 1;
  b = bernoulli_bound(EvolutionLaw::make_static(3), derive_indices(turing), 5.0);
  CHECK_FALSE(b.applicable);
}

TEST_CASE("logistic threshold and bound") {
  const auto idx = table1();
  const double thr = logistic_mean_threshold(idx, 0.1, 1.5, 2);
  CHECK(thr == doctest::Approx(1.015535590695142).epsilon(1e-11));
  CHECK(thr > 1.0);
  CHECK(thr < std::pow(1.2, 0.25));
  CHECK(logistic_mean_threshold(idx, 0.1, 1.5, 2, ReactionWeight::Inverse) ==
        doctest::Approx(1.08012).epsilon(1e-5));
  // beta -> 0 recovers the static value
  CHECK(logistic_mean_threshold(idx, 1e-7, 1.5, 2) == doctest::Approx(1.0).epsilon(1e-6));
  // large m reproduces exponential growth at moderate times, so the threshold
  // approaches the growth value
  CHECK(logistic_mean_threshold(idx, 0.1, 1e12, 2) ==
        doctest::Approx(std::pow(1.2, 0.25)).epsilon(1e-6));

  const auto lg = EvolutionLaw::logistic(0.1, 1.5, 2);
  const auto b = bernoulli_bound(lg, idx, 2.0);
  REQUIRE(b.applicable);
  CHECK(b.mean_threshold == doctest::Approx(thr).epsilon(1e-11));
  // the logistic bound sits between the growth and static bounds
  CHECK(*b.t_upper > 0.342306722962180);
  CHECK(*b.t_upper < 0.379192344751320);
  const auto oracle = bernoulli_oracle(lg, idx, 2.0, 1e-11);
  REQUIRE(oracle.blowup_t.has_value());
  CHECK(*oracle.blowup_t == doctest::Approx(*b.t_upper).epsilon(1e-6));
}

TEST_CASE("Bernoulli oracle reproduces the closed forms") {
  const auto idx = table1();
  const EvolutionLaw laws[] = {EvolutionLaw::make_static(2), EvolutionLaw::exp_growth(0.1, 2),
                               EvolutionLaw::exp_decay(0.1, 2)};
  for (const auto& law : laws) {
    const auto bound = bernoulli_bound(law, idx, 2.0);
    double previous = 0.0;
    // dt-halving of the initial step; the controller makes it converge anyway
    for (double tol : {1e-6, 1e-8, 1e-10}) {
      const auto res = bernoulli_oracle(law, idx, 2.0, tol);
      REQUIRE(res.blowup_sigma.has_value());
      CHECK(*res.blowup_sigma == doctest::Approx(*bound.sigma_upper).epsilon(1e-2));
      previous = *res.blowup_sigma;
    }
    CHECK(previous == doctest::Approx(*bound.sigma_upper).epsilon(1e-7));
  }
}

TEST_CASE("Bernoulli oracle fixed point and decay") {
  const auto idx = table1();
  const auto st = EvolutionLaw::make_static(2);
  auto res = bernoulli_oracle(st, idx, 1.0, 1e-10, 1e-3, {0.5, 3.0, 50.0});
  CHECK_FALSE(res.blowup_sigma.has_value());
  for (double v : res.query_values) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));

  res = bernoulli_oracle(st, idx, 0.5, 1e-10, 1e-3, {0.1, 0.5, 1.0, 2.0});
  CHECK_FALSE(res.blowup_sigma.has_value());
  for (std::size_t i = 1; i < res.query_values.size(); ++i) {
    CHECK(res.query_values[i] < res.query_values[i - 1]);
  }
  // exact solution of the static Bernoulli equation
  for (std::size_t i = 0; i < 4; ++i) {
    const double s = std::vector<double>{0.1, 0.5, 1.0, 2.0}[i];
    const double w = 7.0 / 3.0;
    const double y = std::exp((w - 1) * s) * (std::pow(0.5, 1 - w) - 1.0) + 1.0;
    CHECK(res.query_values[i] == doctest::Approx(std::pow(y, 1.0 / (1 - w))).epsilon(1e-8));
  }
}

TEST_CASE("moment criteria") {
  Parameters prm;
  prm.p = 3;
  prm.q = 1;
  prm.r = 1;
  prm.s = 1;  // gamma = 1/2, pi = 2
  const CoefficientBounds unit;
  for (double c : {0.5, 0.99, 1.0, 1.01, 3.0}) {
    const auto mc = moment_criteria(Field(RectGrid{5, 5}, c), prm, unit);
    REQUIRE(mc.applicable);
    CHECK(mc.condition1 == (c > 1.0));
    CHECK(mc.zeta0 == doctest::Approx(c).epsilon(1e-14));
    CHECK(mc.w0 == doctest::Approx(1.0 / c).epsilon(1e-14));
  }

  // a spike with mean(u^(r+1-p)) < 1
  InitSpec spec;
  spec.kind = InitKind::Spiky;
  spec.delta = 0.05;
  spec.lambda = 4.0;
  const Field spike = build_initial(spec, RadialGrid{3, 400}, prm.p);
  const auto mc = moment_criteria(spike, prm, unit);
  CHECK(mc.w0 < 1.0);
  CHECK(mc.condition2);

  Parameters turing;
  turing.p = 4;
  turing.q = 4;
  turing.r = 2;
  turing.s = 1;
  CHECK_FALSE(moment_criteria(Field(RectGrid{5, 5}, 2.0), turing, unit).applicable);
}

TEST_CASE("blow-up detection on synthetic series") {
  const auto ts = power_series(0.5, 1.0 / 3.0, 0.0, 0.49, 200);
  const auto rep = detect_blowup(ts, 4.0, 4.0);
  REQUIRE(rep.verdict == Verdict::BlowUp);
  REQUIRE(rep.extrapolated_sigma.has_value());
  CHECK(std::abs(*rep.extrapolated_sigma - 0.5) < 1e-6);
  CHECK(*rep.event_time_sigma >= 0.5 - 1.0 / 64.0 - 1e-12);

  DetectOptions exact;
  exact.blowup_threshold = 1e300;
  const auto never = detect_blowup(ts, 4.0, exact);
  CHECK(never.verdict == Verdict::HorizonReached);

  CHECK(detect_blowup(constant_series(2.0, 30), 3.0, 1e6).verdict == Verdict::Bounded);

  TimeSeries decay;
  for (int i = 0; i < 50; ++i) {
    Sample s;
    s.sigma = 0.2 * i;
    s.sup_norm = std::exp(-s.sigma);
    decay.samples.push_back(s);
  }
  const auto q = detect_blowup(decay, 1.4, 1e6);
  CHECK(q.verdict == Verdict::Quench);

  const auto few = detect_blowup(power_series(0.5, 1.0 / 3.0, 0.45, 0.49999, 4), 4.0, 20.0);
  CHECK(few.verdict == Verdict::BlowUp);
  CHECK_FALSE(few.extrapolated_sigma.has_value());
}

TEST_CASE("rate fit") {
  auto ts = power_series(0.5, 1.0 / 3.0, 0.0, 0.5 - 1e-12, 400);
  auto slope = fit_rate(ts, 0.5, 1.0, 1e5);
  REQUIRE(slope.has_value());
  CHECK(*slope == doctest::Approx(-1.0 / 3.0).epsilon(1e-6));

  ts = power_series(0.5, 1.0, 0.0, 0.49999, 400);
  slope = fit_rate(ts, 0.5);
  REQUIRE(slope.has_value());
  CHECK(*slope == doctest::Approx(-1.0).epsilon(0.01));

  CHECK_FALSE(fit_rate(constant_series(3.0, 20), 5.0).has_value());
}

TEST_CASE("blow-up location") {
  const RadialGrid g{3, 201};
  Field peaked(g, 0.0);
  for (int i = 0; i < g.M; ++i) peaked.values[i] = 1.0 / (1.0 + g.radius(i) * g.radius(i));
  auto loc = locate_blowup(peaked);
  CHECK(loc.index == 0);
  CHECK(loc.x == 0.0);

  Field env(g, 0.0);
  env.values[0] = 1e3;
  for (int i = 1; i < g.M; ++i) env.values[i] = std::pow(g.radius(i), -0.5);
  loc = locate_blowup(env);
  REQUIRE(loc.envelope_exponent.has_value());
  CHECK(*loc.envelope_exponent == doctest::Approx(0.5).epsilon(0.1));
  CHECK(std::abs(*loc.envelope_exponent - 0.5) < 0.05);

  Field rect(RectGrid{5, 4}, 1.0);
  rect.values[2 * 5 + 3] = 9.0;
  loc = locate_blowup(rect);
  CHECK(loc.x == doctest::Approx(0.75));
  CHECK(loc.y == doctest::Approx(2.0 / 3.0));
}

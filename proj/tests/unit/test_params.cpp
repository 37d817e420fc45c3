#include "doctest.h"

#include <stdexcept>

#include "gmshadow/params.hpp"

using gmshadow::Parameters;
using gmshadow::derive_indices;

namespace {

Parameters make(double p, double q, double r, double s) {
  Parameters prm;
  prm.p = p;
  prm.q = q;
  prm.r = r;
  prm.s = s;
  return prm;
}

}  // namespace

TEST_CASE("derived indices for the reference exponent sets") {
  auto idx = derive_indices(make(3, 2, 1, 2));
  CHECK(idx.gamma == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(idx.omega == doctest::Approx(7.0 / 3.0).epsilon(1e-15));
  CHECK(idx.pi == 2.0);

  idx = derive_indices(make(2, 0, 1, 0));
  CHECK(idx.gamma == 0.0);
  CHECK(idx.omega == 2.0);
  CHECK(idx.pi == 1.0);

  idx = derive_indices(make(4, 4, 2, 1));
  CHECK(idx.gamma == 2.0);
  CHECK(idx.omega == 0.0);
  CHECK(idx.pi == 1.5);
}

TEST_CASE("derive_indices rejects degenerate exponents") {
  CHECK_THROWS_AS(derive_indices(make(3, 2, 1, -1)), std::invalid_argument);
  CHECK_THROWS_AS(derive_indices(make(3, 2, 1, -2)), std::invalid_argument);
  CHECK_THROWS_AS(derive_indices(make(3, 2, 0, 2)), std::invalid_argument);
  CHECK_THROWS_AS(make(3, 2, 1, -1).validate(), std::invalid_argument);
  Parameters bad_dt = make(3, 2, 1, 2);
  bad_dt.D1 = 0.0;
  CHECK_THROWS_AS(bad_dt.validate(), std::invalid_argument);
  CHECK_NOTHROW(make(1, 2, 3, 2).validate());
}

TEST_CASE("Turing condition") {
  CHECK(gmshadow::turing_condition(derive_indices(make(4, 4, 2, 1))));
  CHECK_FALSE(gmshadow::turing_condition(derive_indices(make(3, 2, 1, 2))));
  for (double q : {0.1, 1.0, 5.0}) {
    CHECK(gmshadow::turing_condition(derive_indices(make(1, q, 1, 0))));
  }
}

TEST_CASE("global existence condition") {
  CHECK(gmshadow::global_existence_condition(make(1, 2, 3, 2), 2));
  CHECK_FALSE(gmshadow::global_existence_condition(make(3, 2, 1, 2), 2));
  CHECK_FALSE(gmshadow::global_existence_condition(make(3, 2, 1, 1), 2));
  CHECK(gmshadow::global_existence_condition(make(2, 1, 4, 1), 3));
  // gamma must stay strictly inside (0, 1)
  CHECK_FALSE(gmshadow::global_existence_condition(make(1, 0, 3, 2), 2));
  CHECK_FALSE(gmshadow::global_existence_condition(make(1, 3, 3, 2), 2));
}

TEST_CASE("diffusion-driven blow-up hypotheses") {
  CHECK(gmshadow::diffusion_blowup_condition(make(4, 4, 2, 1), 3));
  CHECK_FALSE(gmshadow::diffusion_blowup_condition(make(3, 2, 1, 2), 2));
  CHECK_FALSE(gmshadow::diffusion_blowup_condition(make(4, 4, 2, 1), 2));
  // p = 3 equals N/(N-2) at N = 3
  CHECK_FALSE(gmshadow::diffusion_blowup_condition(make(3, 4, 1, 1), 3));
}

TEST_CASE("index properties") {
  const Parameters prm = make(3.7, 1.3, 0.9, 0.4);
  const auto a = derive_indices(prm);
  const auto b = derive_indices(prm);
  CHECK(a.gamma == b.gamma);
  CHECK(a.omega == b.omega);
  CHECK(a.pi == b.pi);

  for (double p : {0.5, 1.0, 2.0, 3.0}) {
    for (double q : {0.0, 1.0, 4.0}) {
      const auto idx = derive_indices(make(p, q, 2.0, 1.0));
      CHECK(gmshadow::turing_condition(idx) == (idx.omega < 1.0));
    }
  }

  for (double k : {2.0, 3.0}) {
    const auto base = derive_indices(prm);
    const auto scaled = derive_indices(make(prm.p, k * prm.q, prm.r, k * (prm.s + 1.0) - 1.0));
    CHECK(scaled.gamma == doctest::Approx(base.gamma).epsilon(1e-15));
  }
}

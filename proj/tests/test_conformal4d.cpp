#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>

#include "einlab/conformal4d.hpp"
#include "test_support.hpp"

using namespace einlab;
using namespace einlab::conformal4d;
namespace et = einlab::testing;

TEST_CASE("worked case Y = 10, I = -1 is exact") {
  const BoundReport r = class_bounds({10.0, -1.0});
  CHECK(r.s2_case == Sigma2Case::Negative);
  // sqrt(100 + 96) = 14 exactly, so both bounds are exact rationals
  CHECK(r.ein_bound == 5.0 / 3.0);
  CHECK_FALSE(r.strict);
  REQUIRE(r.ein_low_bound.is_finite());
  CHECK(r.ein_low_bound.value() == -10.0);
  CHECK(r.c == 0.24);
}

TEST_CASE("case split on the sign of the integral") {
  SUBCASE("positive: strict bound 2, no lower constraint") {
    const BoundReport r = class_bounds({3.0, 0.5});
    CHECK(r.s2_case == Sigma2Case::Positive);
    CHECK(r.ein_bound == 2.0);
    CHECK(r.strict);
    CHECK(r.ein_low_bound.is_neg_infinity());
    CHECK(r.c < 0.0);
  }
  SUBCASE("zero: non-strict bound 2") {
    const BoundReport r = class_bounds({3.0, 0.0});
    CHECK(r.s2_case == Sigma2Case::Zero);
    CHECK(r.ein_bound == 2.0);
    CHECK_FALSE(r.strict);
    CHECK(r.ein_low_bound.is_neg_infinity());
    CHECK(r.c == 0.0);
  }
  SUBCASE("the negative case approaches the zero case continuously") {
    const BoundReport r = class_bounds({3.0, -1e-14});
    CHECK(r.ein_bound == doctest::Approx(2.0).epsilon(1e-6));
    CHECK(r.ein_low_bound.value() < -1e10);
  }
  SUBCASE("Yamabe must be positive") {
    CHECK_THROWS_AS(class_bounds({0.0, -1.0}), error);
    CHECK_THROWS_AS(class_bounds({-2.0, -1.0}), error);
  }
}

TEST_CASE("negative-case bounds match the direct radical forms") {
  auto rng = et::make_rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    const double y = et::uniform(rng, 0.1, 100.0);
    const double i = -std::exp(et::uniform(rng, std::log(1e-6), std::log(10.0)));
    const BoundReport r = class_bounds({y, i});
    const double root = std::sqrt(y * y - 96.0 * i);
    CHECK(r.ein_bound ==
          doctest::Approx(4.0 * y / (root + y)).epsilon(1e-13));
    // the naive -4y/(root - y) cancels for tiny |i|; compare loosely
    CHECK(r.ein_low_bound.value() ==
          doctest::Approx(-4.0 * y / (root - y)).epsilon(1e-6));
    CHECK(r.ein_bound > 0.0);
    CHECK(r.ein_bound < 2.0);
    CHECK(r.ein_low_bound.value() < 0.0);
  }
}

TEST_CASE("bounds weaken as the negative integral grows") {
  double prev_up = 2.0;
  double prev_low = -std::numeric_limits<double>::infinity();
  for (double i : {-0.1, -1.0, -10.0, -100.0}) {
    const BoundReport r = class_bounds({5.0, i});
    CHECK(r.ein_bound < prev_up);               // upper bound shrinks toward 0
    CHECK(r.ein_low_bound.value() > prev_low);  // lower constraint rises toward 0
    CHECK(r.ein_low_bound.value() < 0.0);
    prev_up = r.ein_bound;
    prev_low = r.ein_low_bound.value();
  }
}

TEST_CASE("alpha admissibility") {
  const ConformalData4D d{10.0, -1.0};
  // the boundary alpha evaluates to exactly zero and is excluded
  CHECK_FALSE(alpha_condition(d, 0.2));
  CHECK(alpha_condition(d, 0.25));
  CHECK_FALSE(alpha_condition(d, 0.1));
  CHECK_THROWS_AS(alpha_condition(d, 0.0), error);
  CHECK_THROWS_AS(alpha_condition(d, -1.0), error);

  const auto [k_neg, k_pos] = alpha_exponents(1.0);
  CHECK(k_neg == -2.0);
  CHECK(k_pos == 1.0);
}

TEST_CASE("the alpha scan reproduces the closed-form bounds") {
  auto rng = et::make_rng(42);
  const double grid = 1e-4;
  for (int trial = 0; trial < 10; ++trial) {
    const double y = et::uniform(rng, 0.5, 50.0);
    const double i = -et::uniform(rng, 0.01, 10.0);
    const BoundReport closed = class_bounds({y, i});
    const BoundReport scanned = optimize_alpha({y, i}, grid);
    const double tol_up = 2.0 * grid * std::max(1.0, std::abs(closed.ein_bound));
    const double low = closed.ein_low_bound.value();
    const double tol_low = 2.0 * grid * std::max(1.0, std::abs(low));
    CHECK(std::abs(scanned.ein_bound - closed.ein_bound) <= tol_up);
    CHECK(std::abs(scanned.ein_low_bound.value() - low) <= tol_low);
    // the scan stays on the safe side of the supremum
    CHECK(scanned.ein_bound <= closed.ein_bound + 1e-12);
    CHECK(scanned.ein_low_bound.value() >= low - 1e-12);
  }
  CHECK_THROWS_AS(optimize_alpha({10.0, 1.0}, grid), error);
  CHECK_THROWS_AS(optimize_alpha({10.0, -1.0}, 0.0), error);
}

TEST_CASE("sigma1^2 versus (8/3) sigma2") {
  SUBCASE("multiples of the identity are the equality case") {
    for (double t : {1.0, -2.5, 0.3}) {
      const NewtonMaclaurin r = newton_maclaurin_check(SymTensor2::identity(4) * t);
      CHECK(r.holds);
      CHECK(r.equality);
      CHECK(r.lhs == doctest::Approx(16.0 * t * t).epsilon(1e-12));
    }
  }
  SUBCASE("a non-isotropic example") {
    const NewtonMaclaurin r = newton_maclaurin_check(SymTensor2::diagonal({1.0, 1.0, 1.0, 0.0}));
    CHECK(r.lhs == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(r.rhs == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(r.holds);
    CHECK_FALSE(r.equality);
  }
  SUBCASE("holds for random symmetric tensors") {
    auto rng = et::make_rng(43);
    for (int trial = 0; trial < 1000; ++trial) {
      const NewtonMaclaurin r = newton_maclaurin_check(et::random_sym(rng, 4, 3.0));
      CHECK(r.holds);
      CHECK_FALSE(r.equality);  // random draws are never isotropic
    }
  }
  SUBCASE("dimension guard") {
    CHECK_THROWS_AS(newton_maclaurin_check(SymTensor2::identity(3)), error);
  }
}

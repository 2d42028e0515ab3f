// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rdlm/kummer.hpp"
#include "rdlm/rng.hpp"

using namespace rdlm;

TEST_CASE("value at zero and d = 1 closed form") {
  for (Index d : {1, 2, 3, 17, 257}) CHECK(kummer_f(0.0, d) == 1.0);

  // For one dimension E cos(rho z) is the Gaussian characteristic function.
  for (int i = 0; i <= 40; ++i) {
    const double rho = 5.0 * i / 40.0;
    CHECK(std::abs(kummer_f(rho, 1) - std::exp(-0.5 * rho * rho)) < 1e-9);
  }
}

TEST_CASE("series matches Monte-Carlo expectation") {
  Rng rng(127);
  for (Index d : {2, 5, 17}) {
    for (double rho : {0.3, 0.8, 1.4}) {
      const int n = 1000000;
      double acc = 0.0, acc2 = 0.0;
      for (int i = 0; i < n; ++i) {
        double ss = 0.0;
        for (Index k = 0; k < d; ++k) {
          const double z = rng.normal();
          ss += z * z;
        }
        const double c = std::cos(rho * std::sqrt(ss));
        acc += c;
        acc2 += c * c;
      }
      const double mean = acc / n;
      const double var = (acc2 / n - mean * mean) / (n - 1);
      const double se = std::sqrt(var);
      CHECK(std::abs(kummer_f(rho, d) - mean) < 3.0 * se + 1e-12);
    }
  }
}

TEST_CASE("monotone domain is verified and inverted") {
  for (Index d : {3, 17, 257}) {
    KummerEval eval(d);
    CHECK(eval.rho_max() > 0.0);

    // Strict decrease over the reported domain.
    double prev = 1.0 + 1e-15;
    for (int i = 0; i <= 64; ++i) {
      const double f = eval.value(eval.rho_max() * i / 64.0);
      CHECK(f < prev);
      prev = f;
    }

    // Round trip over the interior of the monotone domain.
    for (int i = 0; i <= 32; ++i) {
      const double rho = eval.rho_max() * i / 32.0 * 0.999;
      const double back = eval.invert(eval.value(rho));
      CHECK(std::abs(back - rho) < 1e-8);
    }
  }
}

TEST_CASE("inversion boundary policy") {
  KummerEval eval(9);
  CHECK(eval.invert(1.0) == 0.0);
  CHECK_THROWS_AS(eval.invert(1.0 + 1e-6), InvariantError);
  CHECK_THROWS_AS(eval.invert(eval.floor_value() - 1e-6), InvariantError);

  const auto high = eval.invert_clamped(1.0 + 1e-6);
  CHECK(high.rho == 0.0);
  CHECK(high.clamped);
  const auto low = eval.invert_clamped(eval.floor_value() - 1e-6);
  CHECK(low.rho == eval.rho_max());
  CHECK(low.clamped);
  const auto mid = eval.invert_clamped(eval.value(0.5 * eval.rho_max()));
  CHECK(!mid.clamped);
}

TEST_CASE("rho_max shrinks with dimension") {
  double prev = 1e9;
  for (Index d : {3, 9, 33, 129}) {
    KummerEval eval(d);
    CHECK(eval.rho_max() < prev);
    prev = eval.rho_max();
  }
}

// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rdlm/schedules.hpp"

using namespace rdlm;

TEST_CASE("constant schedule reduces to the simple bridge") {
  NoiseSchedule sched(1.0, 1.0, 1.0);
  for (double t : {0.0, 0.25, 0.5, 0.9, 0.999}) {
    CHECK(sched.gamma(t) == doctest::Approx(1.0 / (1.0 - t)).epsilon(1e-12));
  }
  CHECK_THROWS_AS(sched.gamma(1.0), InvariantError);
}

TEST_CASE("geometric schedule endpoints and gamma identity") {
  NoiseSchedule sched(0.1, 1.0, 1.0);
  CHECK(sched.sigma(0.0) == doctest::Approx(0.1).epsilon(1e-12));
  CHECK(sched.sigma(1.0) == doctest::Approx(1.0).epsilon(1e-12));

  // gamma_t * int_t^T sigma^2 = sigma_t^2, restated as a testable identity.
  for (int i = 0; i < 32; ++i) {
    const double t = i / 32.0;
    const double s = sched.sigma(t);
    CHECK(std::abs(sched.gamma(t) * sched.sigma_sq_integral(t) - s * s) < 1e-9);
  }
}

TEST_CASE("closed-form sigma^2 integral matches quadrature") {
  NoiseSchedule sched(0.2, 1.7, 2.0);
  for (int i = 0; i < 16; ++i) {
    const double t = 2.0 * i / 16.0;
    const double quad = oracles::trapezoid(
        [&](double s) { return sched.sigma(s) * sched.sigma(s); }, t,
        sched.horizon, 20000);
    const double closed = sched.sigma_sq_integral(t);
    CHECK(std::abs(closed - quad) / quad < 1e-6);
  }
}

TEST_CASE("kappa endpoints") {
  CHECK(kappa_masked(1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(kappa_masked(0.0) == doctest::Approx(0.0).epsilon(1e-12));
  for (Index d : {2, 4, 16}) {
    CHECK(kappa_uniform(0.0, d) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(kappa_uniform(1.0, d) == doctest::Approx(1.0).epsilon(1e-9));
  }
  CHECK_THROWS_AS(kappa_masked(1.5), InvariantError);
  CHECK_THROWS_AS(kappa_uniform(-0.1, 4), InvariantError);
}

TEST_CASE("kappa schedules are monotone in alpha") {
  double prev_m = -1.0, prev_u = -1.0;
  for (int i = 0; i <= 100; ++i) {
    const double a = i / 100.0;
    const double m = kappa_masked(a);
    const double u = kappa_uniform(a, 7);
    CHECK(m >= prev_m);
    CHECK(u >= prev_u);
    prev_m = m;
    prev_u = u;
  }
}

TEST_CASE("proposal density normalizes and stays positive") {
  TimeProposal q(0.05, 0.2, 0.8, 1.0);
  // Piecewise: the density jumps at a and b.
  auto f = [&](double t) { return q.density(t); };
  const double total = oracles::trapezoid(f, 0.0, q.a - 1e-12, 20000) +
                       oracles::trapezoid(f, q.a + 1e-12, q.b - 1e-12, 40000) +
                       oracles::trapezoid(f, q.b + 1e-12, 1.0, 20000);
  CHECK(std::abs(total - 1.0) < 1e-6);
  for (int i = 0; i <= 50; ++i) CHECK(q.density(i / 50.0) > 0.0);
}

TEST_CASE("degenerate proposal covering [0, T] is uniform") {
  TimeProposal q(0.01, 0.0, 1.0, 1.0);
  for (double t : {0.0, 0.3, 0.77, 1.0})
    CHECK(q.density(t) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sampling matches the density") {
  TimeProposal q(0.05, 0.2, 0.8, 1.0);
  Rng rng(31);
  const int n = 100000;
  int inside = 0;
  for (int i = 0; i < n; ++i) {
    const double t = q.sample(rng);
    CHECK(t >= 0.0);
    CHECK(t <= 1.0);
    if (t >= q.a && t <= q.b) ++inside;
  }
  const double p = q.plateau_mass();
  const double se = std::sqrt(p * (1.0 - p) / n);
  CHECK(std::abs(double(inside) / n - p) < 3.0 * se);
}

TEST_CASE("mix schedule bounds") {
  CHECK_THROWS_AS(MixSchedule(-0.1), InvariantError);
  CHECK_THROWS_AS(MixSchedule(1.1), InvariantError);
  CHECK(MixSchedule(0.5).lambda == 0.5);
}

TEST_CASE("analytic d log kappa/dt matches finite differences") {
  const auto masked = masked_kappa_schedule(1.0);
  const auto unif = uniform_kappa_schedule(9, 1.0);
  KappaSchedule masked_fd{masked.value, nullptr};
  KappaSchedule unif_fd{unif.value, nullptr};
  for (double t : {0.1, 0.3, 0.5, 0.7, 0.9}) {
    CHECK(masked.dlog_dt(t) ==
          doctest::Approx(masked_fd.dlog_dt(t)).epsilon(1e-5));
    CHECK(unif.dlog_dt(t) == doctest::Approx(unif_fd.dlog_dt(t)).epsilon(1e-5));
  }
}

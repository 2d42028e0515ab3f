// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "oracles.hpp"
#include "rdlm/bridges.hpp"
#include "rdlm/precompute.hpp"
#include "rdlm/rnormal.hpp"

using namespace rdlm;
using oracles::random_sphere_point;

namespace {

Vec mask_point(Index dim) {
  Vec u = Vec::Zero(dim);
  u[dim - 1] = 1.0;
  return u;
}

}  // namespace

TEST_CASE("mean point coefficients") {
  Rng rng(173);
  for (int i = 0; i < 50; ++i) {
    const Vec x0 = random_sphere_point(rng, 5);
    const Vec xT = random_sphere_point(rng, 5);
    const double c = x0.dot(xT);
    // Process initial points always have a nonnegative projection onto the
    // target vertex, so only acute separations occur.
    if (c < 0.05 || c > 0.95) continue;
    const double s = std::sqrt(1.0 - c * c);

    CHECK((mean_point_raw(x0, xT, 0.0) - x0).norm() < 1e-12);
    CHECK((mean_point_raw(x0, xT, s) - xT).norm() < 1e-9);

    const double alpha = s * rng.uniform();
    const Vec mu = mean_point_raw(x0, xT, alpha);
    CHECK(std::abs(mu.norm() - 1.0) < 1e-9);

    // mu stays in span{x0, xT}.
    Mat basis(5, 2);
    basis.col(0) = x0;
    basis.col(1) = xT;
    const Vec residual =
        mu - basis * (basis.transpose() * basis).ldlt().solve(
                         basis.transpose() * mu);
    CHECK(residual.norm() < 1e-9);
  }

  const Vec e0 = Vec::Unit(4, 0);
  CHECK_THROWS_AS(mean_point_raw(e0, e0, 0.1), InvariantError);
  CHECK_THROWS_AS(mean_point_raw(e0, Vec(-e0), 0.1), InvariantError);
}

TEST_CASE("sampling the Riemannian normal") {
  Rng rng(179);
  const Vec x0 = mask_point(6);
  const Vec xT = Vec::Unit(6, 1);
  const Vec mu = mean_point_raw(x0, xT, 0.4);

  CHECK((sample_raw(mu, 0.0, rng) - mu).norm() == 0.0);

  const double rho = 0.3;
  const int n = 100000;
  Vec sum = Vec::Zero(6);
  double e_cos = 0.0;
  Vec tangent_mean = Vec::Zero(6);
  for (int i = 0; i < n; ++i) {
    const Vec x = sample_raw(mu, rho, rng);
    sum += x;
    e_cos += x.dot(mu);
    tangent_mean += geom::log_map(mu, x);
  }
  sum.normalize();
  CHECK(geom::geodesic_distance(sum, mu) < 0.01);

  // E<X, mu> agrees with an independent Monte-Carlo E cos(rho |P w|) using
  // the same tangent-projection convention.
  double oracle = 0.0, oracle2 = 0.0;
  Rng rng2(181);
  for (int i = 0; i < n; ++i) {
    const Vec w = rng2.normal_vec(6);
    const double c = std::cos(rho * geom::tangent_project(mu, w).norm());
    oracle += c;
    oracle2 += c * c;
  }
  const double om = oracle / n;
  const double ose = std::sqrt((oracle2 / n - om * om) / (n - 1));
  CHECK(std::abs(e_cos / n - om) < 3.0 * (ose * std::sqrt(2.0)));

  // First-moment symmetry of the lifted samples about mu.
  tangent_mean /= double(n);
  CHECK(tangent_mean.norm() < 3.5 * rho / std::sqrt(double(n)));
}

TEST_CASE("table-driven state sampling") {
  const Index d = 9;
  NoiseSchedule sched(0.1, 1.0, 1.0);
  BuildOptions opts;
  opts.n_traj = 2048;
  opts.k_steps = 256;
  opts.calib_traj = 512;
  opts.calib_steps = 256;
  const Vec u = mask_point(d);
  const auto table = build_table(u, sched, opts, Rng(191));

  const geom::SpherePoint x0(u);
  const geom::SpherePoint xT(Vec::Unit(d, 3));

  Rng rng(193);
  CHECK((sample_xt(x0, xT, table, 0.0, rng).coords() - u).norm() == 0.0);

  // Concentration near the horizon and monotone approach in the mean.
  double prev_mean = std::numbers::pi;
  for (double t : {0.25, 0.5, 0.75, 0.999}) {
    const auto batch =
        sample_xt_ensemble(u, xT.coords(), table, t, 512, Rng(197));
    double mean = 0.0;
    for (Index j = 0; j < batch.cols(); ++j)
      mean += geom::geodesic_distance(batch.col(j), xT.coords());
    mean /= double(batch.cols());
    CHECK(mean < prev_mean + 0.05);
    prev_mean = mean;
  }
  CHECK(prev_mean < 0.1);

  // Unit norm of samples.
  const auto batch = sample_xt_ensemble(u, xT.coords(), table, 0.5, 64, Rng(199));
  for (Index j = 0; j < batch.cols(); ++j)
    CHECK(std::abs(batch.col(j).norm() - 1.0) < 1e-9);

  // Table/endpoint mismatches are rejected.
  Rng rng2(211);
  CHECK_THROWS_AS(
      sample_xt(geom::SpherePoint(mask_point(5)),
                geom::SpherePoint(Vec::Unit(5, 0)), table, 0.5, rng2),
      ArtifactError);
  const geom::SpherePoint wrong_pair(Vec::Constant(d, 1.0));
  CHECK_THROWS_AS(sample_xt(wrong_pair, xT, table, 0.5, rng2), ArtifactError);
}

TEST_CASE("mmd2 basics") {
  Rng rng(223);
  const Index d = 5;

  // Same-distribution halves fluctuate around zero.
  std::vector<double> stats;
  for (int rep = 0; rep < 24; ++rep) {
    Mat a(d, 64), b(d, 64);
    Rng sub = rng.stream("rep", rep);
    const Vec mu = mean_point_raw(mask_point(d), Vec::Unit(d, 0), 0.5);
    for (int j = 0; j < 64; ++j) a.col(j) = sample_raw(mu, 0.4, sub);
    for (int j = 0; j < 64; ++j) b.col(j) = sample_raw(mu, 0.4, sub);
    const double h = median_bandwidth(a, b);
    stats.push_back(mmd2(a, b, h));
    CHECK(mmd2(a, b, h) == doctest::Approx(mmd2(b, a, h)).epsilon(1e-12));
  }
  const auto ms = oracles::mean_se(stats);
  CHECK(std::abs(ms.mean) < 3.0 * ms.se);

  // Well-separated distributions give a clearly positive statistic.
  Mat a(d, 64), b(d, 64);
  Rng sub = rng.stream("sep");
  for (int j = 0; j < 64; ++j) {
    a.col(j) = sample_raw(Vec::Unit(d, 0), 0.1, sub);
    b.col(j) = sample_raw(Vec::Unit(d, 1), 0.1, sub);
  }
  CHECK(mmd2(a, b, median_bandwidth(a, b)) > 0.1);
}

TEST_CASE("bridge marginals vs table approximation") {
  // Desk-size version of the fidelity acceptance check at d = 4.
  const Index d = 4;
  NoiseSchedule sched(0.1, 1.0, 1.0);
  BuildOptions opts;
  opts.n_traj = 2048;
  opts.k_steps = 256;
  opts.calib_traj = 512;
  opts.calib_steps = 256;
  const Vec u = mask_point(d);
  const auto table = build_table(u, sched, opts, Rng(227));

  const Vec xT = Vec::Unit(d, 0);
  BridgeSpec spec{geom::SpherePoint(xT), sched};
  const std::vector<double> checks{0.5};
  const int n = 192;
  const int reps = 6;

  double lhs = 0.0, base_sq = 0.0;
  for (int rep = 0; rep < reps; ++rep) {
    const auto sim_a = simulate_bridge_ensemble(
        u, spec, 256, 1e-3, n, checks, Rng(229).stream("a", rep));
    const auto sim_b = simulate_bridge_ensemble(
        u, spec, 256, 1e-3, n, checks, Rng(229).stream("b", rep));
    const auto approx =
        sample_xt_ensemble(u, xT, table, 0.5, n, Rng(229).stream("c", rep));
    const double h = median_bandwidth(sim_a[0], sim_b[0]);
    lhs += mmd2(sim_a[0], approx, h);
    const double base = mmd2(sim_a[0], sim_b[0], h);
    base_sq += base * base;
  }
  lhs /= reps;
  const double base_rms = std::sqrt(base_sq / reps);
  CHECK(lhs <= 2.0 * base_rms);
}

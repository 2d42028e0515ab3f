// SPDX-License-Identifier: Apache-2.0

#include "rdlm/rnormal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "rdlm/parallel.hpp"

namespace rdlm {

Vec mean_point_raw(const Vec& x0, const Vec& xT, double alpha) {
  const double c = geom::clamp_unit(x0.dot(xT));
  const double phi0 = std::acos(c);
  if (phi0 < 1e-9 || phi0 > std::numbers::pi - 1e-9)
    throw InvariantError("mean_point: degenerate endpoints");
  const double s = std::sin(phi0);
  if (alpha < -1e-12 || alpha > s + 1e-9)
    throw InvariantError("mean_point: alpha outside [0, sin phi0]");
  alpha = std::min(s, std::max(0.0, alpha));
  Vec mu = (alpha / s) * xT +
           (std::sqrt(1.0 - alpha * alpha) - alpha * c / s) * x0;
  mu.normalize();
  return mu;
}

geom::SpherePoint mean_point(const geom::SpherePoint& x0,
                             const geom::SpherePoint& xT, double alpha) {
  return geom::SpherePoint(mean_point_raw(x0.coords(), xT.coords(), alpha));
}

Vec sample_raw(const Vec& mu, double rho, Rng& rng) {
  if (rho == 0.0) return mu;
  Vec w = rng.normal_vec(mu.size());
  Vec tangent = rho * geom::tangent_project(mu, w);
  return geom::exp_map(mu, tangent);
}

geom::SpherePoint sample(const RNormalParams& params, Rng& rng) {
  if (params.rho < 0.0) throw InvariantError("sample: rho must be nonnegative");
  return geom::SpherePoint(sample_raw(params.mu.coords(), params.rho, rng));
}

namespace {

void check_table(const Vec& x0, const Vec& xT, const PrecomputedTable& table) {
  if (x0.size() != table.dim)
    throw ArtifactError("sample_xt: table dimension mismatch");
  if (std::abs(x0.dot(xT) - table.psi0) > 1e-6)
    throw ArtifactError("sample_xt: table psi0 does not match endpoints");
}

}  // namespace

geom::SpherePoint sample_xt(const geom::SpherePoint& x0,
                            const geom::SpherePoint& xT,
                            const PrecomputedTable& table, double t, Rng& rng) {
  check_table(x0.coords(), xT.coords(), table);
  const auto [alpha, rho] = table.interpolate(t);
  Vec mu = mean_point_raw(x0.coords(), xT.coords(),
                          std::min(alpha, table.sin_phi0()));
  return geom::SpherePoint(sample_raw(mu, rho, rng));
}

Mat sample_xt_ensemble(const Vec& x0, const Vec& xT,
                       const PrecomputedTable& table, double t, Index n,
                       const Rng& root) {
  check_table(x0, xT, table);
  const auto [alpha, rho] = table.interpolate(t);
  const Vec mu = mean_point_raw(x0, xT, std::min(alpha, table.sin_phi0()));
  Mat out(x0.size(), n);
  parallel_blocks(n, [&](Index lo, Index hi, int) {
    for (Index j = lo; j < hi; ++j) {
      Rng rng = root.stream("draw", static_cast<std::uint64_t>(j));
      out.col(j) = sample_raw(mu, rho, rng);
    }
  });
  return out;
}

double mmd2(const Mat& A, const Mat& B, double bandwidth) {
  const Index m = A.cols();
  const Index n = B.cols();
  if (m < 2 || n < 2) throw InvariantError("mmd2: each set needs >= 2 samples");
  const double inv2h2 = 1.0 / (2.0 * bandwidth * bandwidth);
  auto kernel = [&](const Mat& X, const Mat& Y, Index i, Index j) {
    const double d = geom::geodesic_distance(X.col(i), Y.col(j));
    return std::exp(-d * d * inv2h2);
  };

  double kxx = 0.0;
  for (Index i = 0; i < m; ++i)
    for (Index j = i + 1; j < m; ++j) kxx += kernel(A, A, i, j);
  kxx = 2.0 * kxx / (double(m) * double(m - 1));

  double kyy = 0.0;
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j) kyy += kernel(B, B, i, j);
  kyy = 2.0 * kyy / (double(n) * double(n - 1));

  double kxy = 0.0;
  for (Index i = 0; i < m; ++i)
    for (Index j = 0; j < n; ++j) kxy += kernel(A, B, i, j);
  kxy = 2.0 * kxy / (double(m) * double(n));

  return kxx + kyy - kxy;
}

double median_bandwidth(const Mat& A, const Mat& B) {
  Mat pool(A.rows(), A.cols() + B.cols());
  pool << A, B;
  const Index n = pool.cols();
  std::vector<double> dists;
  dists.reserve(static_cast<size_t>(n) * (n - 1) / 2);
  for (Index i = 0; i < n; ++i)
    for (Index j = i + 1; j < n; ++j)
      dists.push_back(geom::geodesic_distance(pool.col(i), pool.col(j)));
  auto mid = dists.begin() + dists.size() / 2;
  std::nth_element(dists.begin(), mid, dists.end());
  double h = *mid;
  return h > 1e-12 ? h : 1e-12;
}

}  // namespace rdlm

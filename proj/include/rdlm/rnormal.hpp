// SPDX-License-Identifier: Apache-2.0
//
// Riemannian-normal sampling of intermediate states: the push-forward of an
// isotropic tangent Gaussian at mu through the exponential map. This is the
// simulation-free substitute for bridge simulation during training; the MMD
// two-sample statistic below certifies the approximation.

#pragma once

#include "rdlm/geometry.hpp"
#include "rdlm/precompute.hpp"
#include "rdlm/rng.hpp"
#include "rdlm/types.hpp"

namespace rdlm {

struct RNormalParams {
  geom::SpherePoint mu;
  double rho = 0.0;  // tangent-space standard deviation per direction
};

// mu = (alpha/sin phi0) xT + (sqrt(1-alpha^2) - alpha cos phi0 / sin phi0) x0;
// the closed form is unit norm analytically, renormalization absorbs rounding.
// mu stays on the x0-xT great circle; alpha = 0 gives x0, alpha = sin phi0
// gives xT.
geom::SpherePoint mean_point(const geom::SpherePoint& x0,
                             const geom::SpherePoint& xT, double alpha);

Vec mean_point_raw(const Vec& x0, const Vec& xT, double alpha);

// exp_mu(rho P_mu w), w ~ N(0, I) ambient; rho = 0 returns mu exactly.
geom::SpherePoint sample(const RNormalParams& params, Rng& rng);

Vec sample_raw(const Vec& mu, double rho, Rng& rng);

// Interpolate (alpha, rho) from the table, form the mean, sample. Checks the
// table against the endpoints (dimension and psi0).
geom::SpherePoint sample_xt(const geom::SpherePoint& x0,
                            const geom::SpherePoint& xT,
                            const PrecomputedTable& table, double t, Rng& rng);

// n independent draws (columns) with per-draw substreams.
Mat sample_xt_ensemble(const Vec& x0, const Vec& xT,
                       const PrecomputedTable& table, double t, Index n,
                       const Rng& root);

// Unbiased MMD^2 U-statistic with the Gaussian geodesic kernel
// exp(-d_g(x,y)^2 / (2 h^2)); columns of A and B are sphere points.
double mmd2(const Mat& A, const Mat& B, double bandwidth);

// Median pairwise geodesic distance over the pooled samples.
double median_bandwidth(const Mat& A, const Mat& B);

}  // namespace rdlm

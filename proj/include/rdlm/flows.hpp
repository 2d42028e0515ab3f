// SPDX-License-Identifier: Apache-2.0
//
// Closed-form deterministic flows on the sphere: the slerp solution of the
// geodesic flow ODE and its two specializations whose simplex images equal
// the masked (absorbing) and uniform discrete-chain marginals. These exist as
// analytic oracles and priors; no vector field is learned along them.

#pragma once

#include "rdlm/geometry.hpp"
#include "rdlm/schedules.hpp"
#include "rdlm/types.hpp"

namespace rdlm {

struct FlowSpec {
  geom::SpherePoint y0;
  geom::SpherePoint y1;
  KappaSchedule kappa;

  FlowSpec(geom::SpherePoint start, geom::SpherePoint end, KappaSchedule k);
};

// Y_t = sin(theta0 - theta_t)/sin(theta0) y1 + sin(theta_t)/sin(theta0) y0
// with theta_t = kappa_t * theta0; Y = y0 at kappa = 1 and y1 at kappa = 0.
geom::SpherePoint slerp_point(const FlowSpec& spec, double t);

// dY/dt = -(d log kappa / dt) log_Y(y1).
geom::TangentVector flow_ode_rhs(const geom::SpherePoint& y,
                                 const FlowSpec& spec, double t);

// Simplex image of the masked flow: alpha e_k + (1-alpha) e_m on the
// mask-augmented simplex (d tokens + mask on the last axis).
geom::SimplexPoint masked_flow_simplex(Index k, double alpha, Index d);

// Simplex image of the uniform flow: (1-alpha)/d off-target and
// (1 + (d-1) alpha)/d at the target.
geom::SimplexPoint uniform_flow_simplex(Index k, double alpha, Index d);

}  // namespace rdlm

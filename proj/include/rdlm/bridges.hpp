// SPDX-License-Identifier: Apache-2.0
//
// Stochastic core: the logarithm bridge drift pinning a diffusion to a fixed
// endpoint, endpoint-probability mixtures of bridge drifts, geodesic random
// walk simulation, and the 1-D radial process of the distance to the target.

#pragma once

#include <vector>

#include "rdlm/geometry.hpp"
#include "rdlm/rng.hpp"
#include "rdlm/schedules.hpp"
#include "rdlm/types.hpp"

namespace rdlm {

struct BridgeSpec {
  geom::SpherePoint target;
  NoiseSchedule schedule;
  // Scales the diffusion coefficient only; gamma keeps the schedule's shape.
  // 0 gives the deterministic flow-matching limit of the bridge.
  double noise_scale = 1.0;
};

// Trajectory container: states are columns, one per grid time.
struct Path {
  std::vector<double> times;
  Mat states;

  Index steps() const { return static_cast<Index>(times.size()) - 1; }
  Vec state(Index i) const { return states.col(i); }
  // State at the grid node closest to t.
  Vec state_at(double t) const;
};

// Raw kernels on ambient vectors (columns of ensemble matrices). The scale
// factor theta/sin(theta) is clamped near the antipode via the inner-product
// inset, matching log_map.

// gamma * log_x(target) for a general unit target.
Vec bridge_drift_raw(const Vec& x, const Vec& target, double gamma);

// sum_k probs_k gamma log_x(e_k); one-hot endpoints collapse to a single
// tangent projection of the coefficient vector probs_k * theta_k/sin(theta_k).
Vec mixture_drift_raw(const Vec& x, const Vec& probs, double gamma);

// Typed API.
geom::TangentVector bridge_drift(const geom::SpherePoint& x,
                                 const BridgeSpec& spec, double t);

geom::TangentVector mixture_drift(const geom::SpherePoint& x,
                                  const geom::SimplexPoint& probs, double t,
                                  const NoiseSchedule& schedule);

// One Euler-Maruyama step of the geodesic random walk:
// exp_x(drift dt + sigma sqrt(dt) P_x w), w ~ N(0, I) ambient.
geom::SpherePoint step_grw(const geom::SpherePoint& x,
                           const geom::TangentVector& drift, double sigma_t,
                           double dt, Rng& rng);

// Euler-Maruyama walk over a uniform grid on [0, horizon - stop_delta]; the
// drift diverges at the horizon so simulation stops delta short and callers
// snap-decode from there.
Path simulate_bridge(const geom::SpherePoint& x0, const BridgeSpec& spec,
                     int steps, double stop_delta, Rng& rng);

// N independent bridges with per-trajectory substreams; returns the states
// (columns) at each requested checkpoint time. Deterministic for any thread
// count.
std::vector<Mat> simulate_bridge_ensemble(const Vec& x0, const BridgeSpec& spec,
                                          int steps, double stop_delta,
                                          Index n_traj,
                                          const std::vector<double>& checkpoints,
                                          const Rng& root);

// 1-D radial SDE dr = [-gamma r + (d-1) sigma^2/2 cot r] dt + sigma dW,
// reflected into (eps_r, pi - eps_r). Returns r at every grid node.
std::vector<double> simulate_radial(double r0, const BridgeSpec& spec,
                                    int steps, Rng& rng,
                                    double stop_delta = -1.0);

}  // namespace rdlm

// SPDX-License-Identifier: Apache-2.0

#include "rdlm/bridges.hpp"

#include <cmath>
#include <numbers>

#include "rdlm/parallel.hpp"

namespace rdlm {
namespace {

constexpr double kRadialGuard = 1e-5;  // cot r is singular at 0 and pi

// theta/sin(theta) as a function of c = cos(theta), clamped away from the
// antipode.
double scale_from_cos(double c) {
  c = std::min(1.0, std::max(-1.0 + geom::kDotInset, c));
  return geom::theta_over_sin(std::acos(c));
}

}  // namespace

Vec Path::state_at(double t) const {
  Index best = 0;
  double gap = std::abs(times[0] - t);
  for (Index i = 1; i < static_cast<Index>(times.size()); ++i) {
    const double g = std::abs(times[i] - t);
    if (g < gap) {
      gap = g;
      best = i;
    }
  }
  return states.col(best);
}

Vec bridge_drift_raw(const Vec& x, const Vec& target, double gamma) {
  const double c = x.dot(target);
  if (c <= -1.0 + geom::kDotInset)
    throw AntipodalError("bridge_drift: state antipodal to target");
  return gamma * scale_from_cos(c) * (target - c * x);
}

Vec mixture_drift_raw(const Vec& x, const Vec& probs, double gamma) {
  Vec coeff(x.size());
  for (Index k = 0; k < x.size(); ++k)
    coeff[k] = probs[k] == 0.0 ? 0.0 : probs[k] * scale_from_cos(x[k]);
  // sum_k c_k (e_k - x_k x) = coeff - <coeff, x> x
  return gamma * (coeff - coeff.dot(x) * x);
}

geom::TangentVector bridge_drift(const geom::SpherePoint& x,
                                 const BridgeSpec& spec, double t) {
  const double gamma = spec.schedule.gamma(t);
  return geom::TangentVector(
      x, bridge_drift_raw(x.coords(), spec.target.coords(), gamma));
}

geom::TangentVector mixture_drift(const geom::SpherePoint& x,
                                  const geom::SimplexPoint& probs, double t,
                                  const NoiseSchedule& schedule) {
  if (probs.dim() != x.dim())
    throw InvariantError("mixture_drift: probs dimension mismatch");
  return geom::TangentVector(
      x, mixture_drift_raw(x.coords(), probs.probs(), schedule.gamma(t)));
}

geom::SpherePoint step_grw(const geom::SpherePoint& x,
                           const geom::TangentVector& drift, double sigma_t,
                           double dt, Rng& rng) {
  const Vec& u = x.coords();
  Vec step = drift.vec() * dt;
  if (sigma_t != 0.0) {
    Vec w = rng.normal_vec(u.size());
    step += sigma_t * std::sqrt(dt) * geom::tangent_project(u, w);
  }
  // Re-project: Euler steps leave the tangent space at O(dt).
  step -= u.dot(step) * u;
  return geom::SpherePoint(geom::exp_map(u, step));
}

Path simulate_bridge(const geom::SpherePoint& x0, const BridgeSpec& spec,
                     int steps, double stop_delta, Rng& rng) {
  const double T = spec.schedule.horizon;
  if (steps < 1) throw InvariantError("simulate_bridge: steps must be >= 1");
  if (!(stop_delta > 0.0 && stop_delta < T))
    throw InvariantError("simulate_bridge: stop_delta outside (0, horizon)");

  Path path;
  path.times.resize(steps + 1);
  path.states.resize(x0.dim(), steps + 1);
  const double dt = (T - stop_delta) / steps;

  Vec x = x0.coords();
  path.times[0] = 0.0;
  path.states.col(0) = x;
  for (int i = 0; i < steps; ++i) {
    const double t = i * dt;
    const double gamma = spec.schedule.gamma(t);
    const double sigma = spec.noise_scale * spec.schedule.sigma(t);
    Vec step = bridge_drift_raw(x, spec.target.coords(), gamma) * dt;
    if (sigma != 0.0) {
      Vec w = rng.normal_vec(x.size());
      step += sigma * std::sqrt(dt) * geom::tangent_project(x, w);
    }
    step -= x.dot(step) * x;
    x = geom::exp_map(x, step);
    path.times[i + 1] = (i + 1) * dt;
    path.states.col(i + 1) = x;
  }
  return path;
}

std::vector<Mat> simulate_bridge_ensemble(const Vec& x0, const BridgeSpec& spec,
                                          int steps, double stop_delta,
                                          Index n_traj,
                                          const std::vector<double>& checkpoints,
                                          const Rng& root) {
  const double T = spec.schedule.horizon;
  const double dt = (T - stop_delta) / steps;
  const Index d = x0.size();

  // Map each checkpoint to its nearest grid node.
  std::vector<int> nodes(checkpoints.size());
  for (size_t c = 0; c < checkpoints.size(); ++c)
    nodes[c] = static_cast<int>(std::lround(checkpoints[c] / dt));

  std::vector<Mat> out(checkpoints.size(), Mat(d, n_traj));

  // Precompute per-step coefficients once.
  std::vector<double> gammas(steps), sigmas(steps);
  for (int i = 0; i < steps; ++i) {
    gammas[i] = spec.schedule.gamma(i * dt);
    sigmas[i] = spec.noise_scale * spec.schedule.sigma(i * dt);
  }

  parallel_blocks(n_traj, [&](Index lo, Index hi, int) {
    for (Index j = lo; j < hi; ++j) {
      Rng rng = root.stream("traj", static_cast<std::uint64_t>(j));
      Vec x = x0;
      for (size_t c = 0; c < nodes.size(); ++c)
        if (nodes[c] == 0) out[c].col(j) = x;
      for (int i = 0; i < steps; ++i) {
        Vec step = bridge_drift_raw(x, spec.target.coords(), gammas[i]) * dt;
        if (sigmas[i] != 0.0) {
          Vec w = rng.normal_vec(d);
          step += sigmas[i] * std::sqrt(dt) * geom::tangent_project(x, w);
        }
        step -= x.dot(step) * x;
        x = geom::exp_map(x, step);
        for (size_t c = 0; c < nodes.size(); ++c)
          if (nodes[c] == i + 1) out[c].col(j) = x;
      }
    }
  });
  return out;
}

std::vector<double> simulate_radial(double r0, const BridgeSpec& spec,
                                    int steps, Rng& rng, double stop_delta) {
  const double T = spec.schedule.horizon;
  if (stop_delta < 0.0) stop_delta = 1e-3 * T;
  if (!(r0 > 0.0 && r0 < std::numbers::pi))
    throw InvariantError("simulate_radial: r0 outside (0, pi)");
  const double d = static_cast<double>(spec.target.dim());
  const double dt = (T - stop_delta) / steps;
  const double lo = kRadialGuard;
  const double hi = std::numbers::pi - kRadialGuard;

  std::vector<double> path(steps + 1);
  double r = r0;
  path[0] = r;
  for (int i = 0; i < steps; ++i) {
    const double t = i * dt;
    const double gamma = spec.schedule.gamma(t);
    const double sigma = spec.noise_scale * spec.schedule.sigma(t);
    const double cot = std::cos(r) / std::sin(r);
    const double drift = -gamma * r + 0.5 * (d - 1.0) * sigma * sigma * cot;
    r += drift * dt + sigma * std::sqrt(dt) * rng.normal();
    // Reflect back into (lo, hi).
    for (int guard = 0; guard < 2 && (r < lo || r > hi); ++guard) {
      if (r < lo) r = 2.0 * lo - r;
      if (r > hi) r = 2.0 * hi - r;
    }
    r = std::min(hi, std::max(lo, r));
    path[i + 1] = r;
  }
  return path;
}

}  // namespace rdlm

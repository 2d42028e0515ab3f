// SPDX-License-Identifier: Apache-2.0
//
// Time parameterizations: the geometric noise schedule sigma_t with its time
// change coefficient gamma_t, the flow schedules kappa, the constant mixing
// weight, and the importance-sampling time proposal.

#pragma once

#include <functional>

#include "rdlm/errors.hpp"
#include "rdlm/rng.hpp"
#include "rdlm/types.hpp"

namespace rdlm {

// sigma_t = sigma0^{(T-t)/T} * sigmaT^{t/T}. gamma_t = sigma_t^2 / int_t^T
// sigma_s^2 ds with the integral in closed form; gamma_t -> inf as t -> T.
//
// The type admits any positive endpoints: the constant schedule is the
// simple-bridge limit and reversed schedules are used by diagnostics. Configs
// for training enforce sigma0 < sigmaT at validation.
struct NoiseSchedule {
  double sigma0 = 0.1;
  double sigmaT = 1.0;
  double horizon = 1.0;

  NoiseSchedule() = default;
  NoiseSchedule(double s0, double sT, double T);

  double sigma(double t) const;
  double sigma_sq_integral(double t) const;  // int_t^T sigma_s^2 ds
  double gamma(double t) const;              // throws for t >= horizon
};

// q(t) = [eps + (1-2eps) 1_{[a,b]}(t)/(b-a)] / Z on [0, T], normalized so the
// density integrates to 1 and is strictly positive everywhere.
struct TimeProposal {
  double eps = 0.05;
  double a = 0.2;
  double b = 0.8;
  double horizon = 1.0;

  TimeProposal() = default;
  TimeProposal(double eps_, double a_, double b_, double T);

  double density(double t) const;
  double sample(Rng& rng) const;
  double plateau_mass() const;  // integral of q over [a, b]
};

// Constant mixing weight between the mask-seeded and barycenter-seeded
// processes. Time-varying schedules are rejected upstream at config parse.
struct MixSchedule {
  double lambda = 1.0;

  MixSchedule() = default;
  explicit MixSchedule(double l);
};

// Flow schedules kappa(alpha): both are monotone increasing with
// kappa(0) = 0 and kappa(1) = 1.
double kappa_masked(double alpha);
double kappa_uniform(double alpha, Index d);

// kappa as a function of time with an optional analytic d log kappa / dt.
// Built-in families use the linear noise schedule alpha_t = 1 - t/T.
struct KappaSchedule {
  std::function<double(double)> value;
  std::function<double(double)> dlog;  // null => centered finite difference

  double dlog_dt(double t) const;
};

KappaSchedule masked_kappa_schedule(double horizon);
KappaSchedule uniform_kappa_schedule(Index d, double horizon);

}  // namespace rdlm

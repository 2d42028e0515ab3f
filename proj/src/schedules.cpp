// SPDX-License-Identifier: Apache-2.0

#include "rdlm/schedules.hpp"

#include <cmath>
#include <numbers>

namespace rdlm {

NoiseSchedule::NoiseSchedule(double s0, double sT, double T)
    : sigma0(s0), sigmaT(sT), horizon(T) {
  if (!(sigma0 > 0.0) || !(sigmaT > 0.0))
    throw InvariantError("NoiseSchedule: sigma endpoints must be positive");
  if (!(horizon > 0.0))
    throw InvariantError("NoiseSchedule: horizon must be positive");
}

double NoiseSchedule::sigma(double t) const {
  const double u = t / horizon;
  return std::pow(sigma0, 1.0 - u) * std::pow(sigmaT, u);
}

double NoiseSchedule::sigma_sq_integral(double t) const {
  const double s2 = sigma(t) * sigma(t);
  if (sigma0 == sigmaT) return s2 * (horizon - t);
  const double log_ratio = std::log(sigmaT / sigma0);
  return (sigmaT * sigmaT - s2) * horizon / (2.0 * log_ratio);
}

double NoiseSchedule::gamma(double t) const {
  if (t >= horizon)
    throw InvariantError("NoiseSchedule: gamma undefined at the horizon");
  const double s = sigma(t);
  return s * s / sigma_sq_integral(t);
}

TimeProposal::TimeProposal(double eps_, double a_, double b_, double T)
    : eps(eps_), a(a_), b(b_), horizon(T) {
  if (!(eps > 0.0) || !(eps < 0.5))
    throw InvariantError("TimeProposal: eps must lie in (0, 0.5)");
  if (!(0.0 <= a && a < b && b <= horizon))
    throw InvariantError("TimeProposal: need 0 <= a < b <= horizon");
}

double TimeProposal::density(double t) const {
  if (t < 0.0 || t > horizon) return 0.0;
  const double z = eps * horizon + (1.0 - 2.0 * eps);
  double q = eps;
  if (t >= a && t <= b) q += (1.0 - 2.0 * eps) / (b - a);
  return q / z;
}

double TimeProposal::plateau_mass() const {
  const double z = eps * horizon + (1.0 - 2.0 * eps);
  return (eps * (b - a) + (1.0 - 2.0 * eps)) / z;
}

double TimeProposal::sample(Rng& rng) const {
  const double z = eps * horizon + (1.0 - 2.0 * eps);
  const double w_background = eps * horizon / z;
  if (rng.uniform() < w_background) return rng.uniform() * horizon;
  return a + rng.uniform() * (b - a);
}

MixSchedule::MixSchedule(double l) : lambda(l) {
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw InvariantError("MixSchedule: lambda must lie in [0, 1]");
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw InvariantError("kappa: alpha outside [0, 1]");
}

}  // namespace

double kappa_masked(double alpha) {
  check_alpha(alpha);
  return (2.0 / std::numbers::pi) * std::asin(std::sqrt(alpha));
}

double kappa_uniform(double alpha, Index d) {
  check_alpha(alpha);
  const double theta0 = std::acos(1.0 / std::sqrt(double(d)));
  return 1.0 - std::asin(std::sqrt(1.0 - alpha) * std::sin(theta0)) / theta0;
}

double KappaSchedule::dlog_dt(double t) const {
  if (dlog) return dlog(t);
  const double h = 1e-6;
  return (std::log(value(t + h)) - std::log(value(t - h))) / (2.0 * h);
}

KappaSchedule masked_kappa_schedule(double horizon) {
  auto val = [horizon](double t) {
    return kappa_masked(1.0 - t / horizon);
  };
  auto dlog = [horizon, val](double t) {
    const double alpha = 1.0 - t / horizon;
    const double dalpha = -1.0 / horizon;
    // d/dt (2/pi) asin(sqrt(alpha)) = dalpha / (pi sqrt(alpha (1-alpha)))
    const double dkappa =
        dalpha / (std::numbers::pi * std::sqrt(alpha * (1.0 - alpha)));
    return dkappa / val(t);
  };
  return KappaSchedule{val, dlog};
}

KappaSchedule uniform_kappa_schedule(Index d, double horizon) {
  const double theta0 = std::acos(1.0 / std::sqrt(double(d)));
  const double s0 = std::sin(theta0);
  auto val = [d, horizon](double t) {
    return kappa_uniform(1.0 - t / horizon, d);
  };
  auto dlog = [theta0, s0, horizon, val](double t) {
    const double alpha = 1.0 - t / horizon;
    const double dalpha = -1.0 / horizon;
    const double u = std::sqrt(1.0 - alpha) * s0;
    const double du = -s0 * dalpha / (2.0 * std::sqrt(1.0 - alpha));
    const double dkappa = -du / (theta0 * std::sqrt(1.0 - u * u));
    return dkappa / val(t);
  };
  return KappaSchedule{val, dlog};
}

}  // namespace rdlm

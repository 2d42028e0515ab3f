// SPDX-License-Identifier: Apache-2.0

#include "rdlm/flows.hpp"

#include <cmath>
#include <utility>

namespace rdlm {

FlowSpec::FlowSpec(geom::SpherePoint start, geom::SpherePoint end,
                   KappaSchedule k)
    : y0(std::move(start)), y1(std::move(end)), kappa(std::move(k)) {
  const double c = y0.coords().dot(y1.coords());
  if (c > 1.0 - 1e-12 || c < -1.0 + 1e-12)
    throw InvariantError("FlowSpec: endpoints must be distinct and not antipodal");
}

geom::SpherePoint slerp_point(const FlowSpec& spec, double t) {
  const double theta0 =
      geom::geodesic_distance(spec.y0.coords(), spec.y1.coords());
  const double theta_t = spec.kappa.value(t) * theta0;
  const double s = std::sin(theta0);
  Vec y = (std::sin(theta0 - theta_t) / s) * spec.y1.coords() +
          (std::sin(theta_t) / s) * spec.y0.coords();
  return geom::SpherePoint(std::move(y));
}

geom::TangentVector flow_ode_rhs(const geom::SpherePoint& y,
                                 const FlowSpec& spec, double t) {
  if (spec.kappa.value(t) <= 0.0)
    throw InvariantError("flow_ode_rhs: kappa vanished, log derivative undefined");
  Vec v = -spec.kappa.dlog_dt(t) * geom::log_map(y.coords(), spec.y1.coords());
  return geom::TangentVector(y, std::move(v));
}

geom::SimplexPoint masked_flow_simplex(Index k, double alpha, Index d) {
  if (k < 0 || k >= d) throw InvariantError("masked_flow_simplex: k out of range");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw InvariantError("masked_flow_simplex: alpha outside [0, 1]");
  Vec p = Vec::Zero(d + 1);
  p[k] = alpha;
  p[d] = 1.0 - alpha;  // mask axis is the last coordinate
  return geom::SimplexPoint(std::move(p));
}

geom::SimplexPoint uniform_flow_simplex(Index k, double alpha, Index d) {
  if (k < 0 || k >= d)
    throw InvariantError("uniform_flow_simplex: k out of range");
  if (!(alpha >= 0.0 && alpha <= 1.0))
    throw InvariantError("uniform_flow_simplex: alpha outside [0, 1]");
  Vec p = Vec::Constant(d, (1.0 - alpha) / double(d));
  p[k] = (1.0 + (double(d) - 1.0) * alpha) / double(d);
  return geom::SimplexPoint(std::move(p));
}

}  // namespace rdlm

// SPDX-License-Identifier: Apache-2.0
//
// Exact spherical geometry on S^{d-1} in ambient coordinates, and the
// componentwise square-root diffeomorphism between the probability simplex
// and the positive orthant of the sphere.
//
// The kernels are free functions templated on scalar so tests can run them in
// extended precision; the strong types below fix double and enforce the
// domain invariants (unit norm, tangency, simplex normalization).

#pragma once

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "rdlm/errors.hpp"
#include "rdlm/types.hpp"

namespace rdlm::geom {

// Inner products feeding acos / sqrt(1-c^2) are clamped to this inset of
// [-1, 1]; cos-inverse itself only needs the exact interval.
inline constexpr double kDotInset = 1e-12;
// Below this angle, theta/sin(theta) switches to its series.
inline constexpr double kSmallAngle = 1e-4;

template <class Scalar>
Scalar clamp_unit(Scalar c) {
  return std::min<Scalar>(Scalar(1), std::max<Scalar>(Scalar(-1), c));
}

// theta / sin(theta), finite at theta -> 0 via the series 1 + theta^2/6.
template <class Scalar>
Scalar theta_over_sin(Scalar theta) {
  if (theta < Scalar(kSmallAngle)) return Scalar(1) + theta * theta / Scalar(6);
  return theta / std::sin(theta);
}

// acos<u,v> evaluated through chord lengths: well conditioned at both ends,
// where acos of a rounded inner product loses ~sqrt(eps) digits.
template <class D1, class D2>
typename D1::Scalar angle_between(const Eigen::MatrixBase<D1>& u,
                                  const Eigen::MatrixBase<D2>& v) {
  using Scalar = typename D1::Scalar;
  if (u.dot(v) >= Scalar(0)) {
    Scalar half = std::min(Scalar(1), Scalar((u - v).norm() / 2));
    return 2 * std::asin(half);
  }
  Scalar half = std::min(Scalar(1), Scalar((u + v).norm() / 2));
  return Scalar(EIGEN_PI) - 2 * std::asin(half);
}

// exp_u(x) = cos(|x|) u + sin(|x|) x/|x|; x = 0 returns u exactly.
template <class D1, class D2>
VecX<typename D1::Scalar> exp_map(const Eigen::MatrixBase<D1>& u,
                                  const Eigen::MatrixBase<D2>& x) {
  using Scalar = typename D1::Scalar;
  if (u.size() != x.size()) throw InvariantError("exp_map: dimension mismatch");
  const Scalar norm = x.norm();
  if (norm == Scalar(0)) return u;
  VecX<Scalar> out = std::cos(norm) * u + (std::sin(norm) / norm) * x;
  out.normalize();
  return out;
}

// log_u(v) = (theta/sin theta) (v - <u,v> u), theta = acos<u,v>.
// v = u gives the exact zero tangent; antipodal v is a hard error.
template <class D1, class D2>
VecX<typename D1::Scalar> log_map(const Eigen::MatrixBase<D1>& u,
                                  const Eigen::MatrixBase<D2>& v) {
  using Scalar = typename D1::Scalar;
  if (u.size() != v.size()) throw InvariantError("log_map: dimension mismatch");
  Scalar c = clamp_unit<Scalar>(u.dot(v));
  if (c <= Scalar(-1) + Scalar(kDotInset))
    throw AntipodalError("log_map: antipodal points");
  const Scalar theta = angle_between(u, v);
  return theta_over_sin(theta) * (v - c * u);
}

template <class D1, class D2>
typename D1::Scalar geodesic_distance(const Eigen::MatrixBase<D1>& u,
                                      const Eigen::MatrixBase<D2>& v) {
  return angle_between(u, v);
}

// w - <w,u> u: the orthogonal projection of an ambient vector onto T_u.
template <class D1, class D2>
VecX<typename D1::Scalar> tangent_project(const Eigen::MatrixBase<D1>& u,
                                          const Eigen::MatrixBase<D2>& w) {
  if (u.size() != w.size())
    throw InvariantError("tangent_project: dimension mismatch");
  return w - u.dot(w) * u;
}

template <class D>
VecX<typename D::Scalar> simplex_to_sphere(const Eigen::MatrixBase<D>& p) {
  using Scalar = typename D::Scalar;
  VecX<Scalar> u(p.size());
  for (Index i = 0; i < p.size(); ++i) {
    Scalar pi = p[i];
    if (pi < Scalar(0)) {
      if (pi < Scalar(-1e-9))
        throw InvariantError("simplex_to_sphere: negative coordinate");
      pi = Scalar(0);
    }
    u[i] = std::sqrt(pi);
  }
  u.normalize();
  return u;
}

// Inverse of the square-root map; u must lie in the closed positive orthant
// within tolerance (small negative coordinates are clipped to zero).
template <class D>
VecX<typename D::Scalar> sphere_to_simplex(const Eigen::MatrixBase<D>& u) {
  using Scalar = typename D::Scalar;
  VecX<Scalar> p(u.size());
  for (Index i = 0; i < u.size(); ++i) {
    Scalar ui = u[i];
    if (ui < Scalar(0)) {
      if (ui < Scalar(-1e-9))
        throw InvariantError("sphere_to_simplex: point outside positive orthant");
      ui = Scalar(0);
    }
    p[i] = ui * ui;
  }
  p /= p.sum();
  return p;
}

// ---------------------------------------------------------------------------
// Strong types (double precision).

class SpherePoint {
 public:
  explicit SpherePoint(Vec coords) : v_(std::move(coords)) {
    if (v_.size() < 2) throw InvariantError("SpherePoint: dimension must be >= 2");
    const double n = v_.norm();
    if (!(n > 0.0) || !std::isfinite(n))
      throw InvariantError("SpherePoint: cannot normalize");
    v_ /= n;
  }

  static SpherePoint basis(Index d, Index axis) {
    Vec v = Vec::Zero(d);
    v[axis] = 1.0;
    return SpherePoint(std::move(v));
  }

  static SpherePoint barycenter(Index d) {
    return SpherePoint(Vec::Constant(d, 1.0 / std::sqrt(double(d))));
  }

  const Vec& coords() const { return v_; }
  Index dim() const { return v_.size(); }
  double operator[](Index i) const { return v_[i]; }

 private:
  Vec v_;
};

class TangentVector {
 public:
  TangentVector(SpherePoint base, Vec vec)
      : base_(std::move(base)), v_(std::move(vec)) {
    if (v_.size() != base_.dim())
      throw InvariantError("TangentVector: dimension mismatch");
    const double m = std::max(1.0, v_.norm());
    if (std::abs(base_.coords().dot(v_)) > 1e-9 * m)
      throw InvariantError("TangentVector: not orthogonal to base point");
  }

  const SpherePoint& base() const { return base_; }
  const Vec& vec() const { return v_; }
  double norm() const { return v_.norm(); }

 private:
  SpherePoint base_;
  Vec v_;
};

class SimplexPoint {
 public:
  explicit SimplexPoint(Vec probs) : p_(std::move(probs)) {
    double sum = 0.0;
    for (Index i = 0; i < p_.size(); ++i) {
      if (p_[i] < 0.0) {
        if (p_[i] < -1e-9)
          throw InvariantError("SimplexPoint: negative probability");
        p_[i] = 0.0;
      }
      sum += p_[i];
    }
    if (std::abs(sum - 1.0) > 1e-6)
      throw InvariantError("SimplexPoint: probabilities do not sum to 1");
    p_ /= sum;
  }

  const Vec& probs() const { return p_; }
  Index dim() const { return p_.size(); }
  double operator[](Index i) const { return p_[i]; }

 private:
  Vec p_;
};

inline SpherePoint exp_map(const SpherePoint& u, const TangentVector& x) {
  if (&x.base() != &u && (x.base().coords() - u.coords()).norm() > 1e-12)
    throw InvariantError("exp_map: tangent vector attached elsewhere");
  return SpherePoint(exp_map(u.coords(), x.vec()));
}

inline TangentVector log_map(const SpherePoint& u, const SpherePoint& v) {
  return TangentVector(u, log_map(u.coords(), v.coords()));
}

inline double geodesic_distance(const SpherePoint& u, const SpherePoint& v) {
  return geodesic_distance(u.coords(), v.coords());
}

inline TangentVector tangent_project(const SpherePoint& u, const Vec& w) {
  return TangentVector(u, tangent_project(u.coords(), w));
}

inline SpherePoint simplex_to_sphere(const SimplexPoint& p) {
  return SpherePoint(simplex_to_sphere(p.probs()));
}

inline SimplexPoint sphere_to_simplex(const SpherePoint& u) {
  return SimplexPoint(sphere_to_simplex(u.coords()));
}

}  // namespace rdlm::geom

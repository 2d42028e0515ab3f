// SPDX-License-Identifier: Apache-2.0
//
// The damped Kummer function F_d(rho) = E cos(rho |z|) for z ~ N(0, I_d),
// equal to the confluent hypergeometric value 1F1(d/2, 1/2, -rho^2/2), and
// its inverse restricted to the verified-monotone initial segment.

#pragma once

#include "rdlm/errors.hpp"
#include "rdlm/types.hpp"

namespace rdlm {

// Direct ascending series in extended precision with term-ratio stopping at
// 1e-16; arguments with rho^2/2 > 50 fall back to a fixed-seed Monte-Carlo
// estimate. F_d(0) = 1 and values lie in (-1, 1].
double kummer_f(double rho, Index d);

// Holds the monotone-domain bound for one dimension. F_d is not globally
// monotone; rho_max is located at construction by scanning for the first
// non-decrease, and strict decrease over the scan grid is verified there.
class KummerEval {
 public:
  explicit KummerEval(Index d);

  Index dim() const { return d_; }
  double rho_max() const { return rho_max_; }
  double floor_value() const { return f_min_; }  // F_d(rho_max)

  double value(double rho) const;

  // Bisection to |F_d(rho) - v| < 1e-10; v outside (F_d(rho_max), 1] is a
  // domain error. invert(1) = 0.
  double invert(double v) const;

  struct Inv {
    double rho;
    bool clamped;
  };
  // Boundary policy for Monte-Carlo noise: v > 1 clamps to rho = 0 and
  // v < F_d(rho_max) clamps to rho_max, both flagged.
  Inv invert_clamped(double v) const;

 private:
  Index d_;
  double rho_max_;
  double f_min_;
};

}  // namespace rdlm

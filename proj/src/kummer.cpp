// SPDX-License-Identifier: Apache-2.0

#include "rdlm/kummer.hpp"

#include <cmath>
#include <numbers>

#include "rdlm/rng.hpp"

namespace rdlm {
namespace {

constexpr double kMaxSeriesArg = 50.0;  // |x| bound for the direct series
constexpr int kMaxTerms = 4000;

// 1F1(a, 1/2, x) by the ascending series, accumulated in long double. The
// working arguments here keep the largest intermediate term small enough that
// the 64-bit mantissa absorbs the alternating-sum cancellation.
long double hyp1f1_half(long double a, long double x) {
  const long double b = 0.5L;
  long double term = 1.0L;
  long double sum = 1.0L;
  for (int n = 0; n < kMaxTerms; ++n) {
    term *= (a + n) * x / ((b + n) * (n + 1));
    sum += term;
    if (std::abs(term) <= 1e-16L * std::max<long double>(std::abs(sum), 1e-30L) &&
        n > 4)
      return sum;
  }
  throw InvariantError("kummer_f: series did not converge");
}

double kummer_f_monte_carlo(double rho, Index d) {
  Rng rng(0xC0FFEEULL + static_cast<std::uint64_t>(d));
  const int n = 400000;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    double ss = 0.0;
    for (Index k = 0; k < d; ++k) {
      const double z = rng.normal();
      ss += z * z;
    }
    acc += std::cos(rho * std::sqrt(ss));
  }
  return acc / n;
}

}  // namespace

double kummer_f(double rho, Index d) {
  if (rho < 0.0) throw InvariantError("kummer_f: rho must be nonnegative");
  if (rho == 0.0) return 1.0;
  const double x = -0.5 * rho * rho;
  if (std::abs(x) > kMaxSeriesArg) return kummer_f_monte_carlo(rho, d);
  return static_cast<double>(hyp1f1_half(0.5L * d, static_cast<long double>(x)));
}

KummerEval::KummerEval(Index d) : d_(d) {
  if (d < 1) throw InvariantError("KummerEval: dimension must be >= 1");
  // F_d oscillates on the scale rho ~ pi/sqrt(d); scan past the first
  // stationary point with margin. For d = 1 the function never turns and the
  // cap bounds the invertible range instead.
  const double hi = std::min(8.0, 0.5 + 2.0 * std::numbers::pi / std::sqrt(double(d)));
  const int n_scan = 4096;
  double prev = 1.0;
  rho_max_ = hi;
  f_min_ = kummer_f(hi, d_);
  for (int i = 1; i <= n_scan; ++i) {
    const double rho = hi * i / n_scan;
    const double f = kummer_f(rho, d_);
    if (f >= prev) {
      rho_max_ = hi * (i - 1) / n_scan;
      f_min_ = prev;
      break;
    }
    prev = f;
  }
  if (!(rho_max_ > 0.0))
    throw InvariantError("KummerEval: no monotone initial segment found");
}

double KummerEval::value(double rho) const { return kummer_f(rho, d_); }

double KummerEval::invert(double v) const {
  if (v > 1.0 || v <= f_min_)
    throw InvariantError("kummer_inv: value outside the monotone range");
  if (v == 1.0) return 0.0;
  double lo = 0.0, hi = rho_max_;
  for (int it = 0; it < 200 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double f = kummer_f(mid, d_);
    if (std::abs(f - v) < 1e-10 && hi - lo < 1e-12) return mid;
    if (f > v)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

KummerEval::Inv KummerEval::invert_clamped(double v) const {
  if (v > 1.0) return {0.0, true};
  if (v <= f_min_) return {rho_max_, true};
  return {invert(v), false};
}

}  // namespace rdlm

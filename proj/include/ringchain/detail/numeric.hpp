#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include <boost/math/tools/roots.hpp>

namespace ringchain::detail {

inline constexpr double kPi = std::numbers::pi;

/// sin(pi x) with exact argument reduction; zero at every integer.
inline double sin_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double sign = x < 0 ? -1.0 : 1.0;
  double r = std::fmod(std::abs(x), 2.0);
  if (r >= 1.0) {
    sign = -sign;
    r -= 1.0;
  }
  if (r > 0.5) r = 1.0 - r;
  if (r <= 0.25) return sign * std::sin(kPi * r);
  return sign * std::cos(kPi * (0.5 - r));
}

/// cos(pi x) with exact argument reduction; zero at every half-integer.
inline double cos_pi(double x) {
  if (!std::isfinite(x)) return std::numeric_limits<double>::quiet_NaN();
  double r = std::fmod(std::abs(x), 2.0);
  if (r > 1.0) r = 2.0 - r;
  double sign = 1.0;
  if (r > 0.5) {
    sign = -1.0;
    r = 1.0 - r;
  }
  if (r <= 0.25) return sign * std::cos(kPi * r);
  return sign * std::sin(kPi * (0.5 - r));
}

// 1 - exp(-2b) for b >= 0, accurate for small b.
inline double one_minus_exp_neg2(double b) { return -std::expm1(-2.0 * b); }

/// sinh(a) / (sinh(b) sinh(c)) for b, c > 0 without intermediate overflow.
inline double sinh_over_sinh_sinh(double a, double b, double c) {
  const double s = a < 0 ? -1.0 : 1.0;
  const double aa = std::abs(a);
  return s * 2.0 * std::exp(aa - b - c) * one_minus_exp_neg2(aa) /
         (one_minus_exp_neg2(b) * one_minus_exp_neg2(c));
}

/// cosh(a) / (sinh(b) sinh(c)) for b, c > 0 without intermediate overflow.
inline double cosh_over_sinh_sinh(double a, double b, double c) {
  const double aa = std::abs(a);
  return 2.0 * std::exp(aa - b - c) * (1.0 + std::exp(-2.0 * aa)) /
         (one_minus_exp_neg2(b) * one_minus_exp_neg2(c));
}

/// 1 / (sinh(b) sinh(c)) for b, c > 0.
inline double inv_sinh_sinh(double b, double c) {
  return 4.0 * std::exp(-b - c) / (one_minus_exp_neg2(b) * one_minus_exp_neg2(c));
}

inline double coth(double x) { return 1.0 / std::tanh(x); }

inline double csch(double x) { return 1.0 / std::sinh(x); }

/// Bisection on a sign change of f over [a, b]. Stops once the bracket is
/// narrower than abs_tol or cannot be split further in double precision.
template <class F>
double bisect_root(F&& f, double a, double b, double abs_tol = 0.0) {
  const double fa = f(a);
  const double fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  auto done = [abs_tol](double lo, double hi) {
    const double mid = 0.5 * (lo + hi);
    return hi - lo <= abs_tol || mid <= lo || mid >= hi;
  };
  auto [lo, hi] = boost::math::tools::bisect(f, a, b, done);
  return 0.5 * (lo + hi);
}

}  // namespace ringchain::detail

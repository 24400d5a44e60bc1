#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

#include "mutfreq/quadrature.hpp"

namespace mutfreq {

struct hypergeometric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

inline bool is_nonpositive_integer(double v) {
  return v <= 0.0 && v == std::floor(v);
}

inline double hyp2f1_series(double a, double b, double c, double x,
                            double tol) {
  double term = 1.0, sum = 1.0;
  for (int n = 0; n < 100000; ++n) {
    const double ratio = (a + n) * (b + n) / ((c + n) * (n + 1.0)) * x;
    term *= ratio;
    sum += term;
    if (term == 0.0) return sum;  // terminating series
    if (n >= 4 && std::abs(ratio) < 1.0) {
      // geometric bound on the remaining tail
      const double tail = std::abs(term) * std::abs(ratio) /
                          (1.0 - std::abs(ratio));
      if (tail <= tol * (std::abs(sum) + 1e-300)) return sum;
    }
  }
  throw hypergeometric_error("hyp2f1: series did not converge, x=" +
                             std::to_string(x));
}

// Euler integral, valid for x < 1 and c > b > 0:
//   F(a,b;c;x) = Gamma(c)/(Gamma(b)Gamma(c-b))
//                * int_0^1 t^(b-1) (1-t)^(c-b-1) (1-x t)^(-a) dt
inline double hyp2f1_euler(double a, double b, double c, double x,
                           double tol) {
  const double lg = std::lgamma(c) - std::lgamma(b) - std::lgamma(c - b);
  const double scale = std::exp(lg);
  const double integral = integrate_01(
      [&](double t, double omt) {
        return std::pow(t, b - 1.0) * std::pow(omt, c - b - 1.0) *
               std::pow(1.0 - x * t, -a);
      },
      tol / (scale > 1.0 ? scale : 1.0));
  return scale * integral;
}

}  // namespace detail

// Gauss hypergeometric function for real parameters and x < 1.
// Strategy: power series for |x| <= 0.5; Euler integral otherwise when
// c > b > 0; Pfaff transform x -> x/(x-1) as a fallback for x <= -1.
inline double hyp2f1(double a, double b, double c, double x,
                     double tol = 1e-13) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
      !std::isfinite(x))
    throw hypergeometric_error("hyp2f1: non-finite argument");
  if (a == 0.0 || b == 0.0 || x == 0.0) return 1.0;
  if (x >= 1.0)
    throw hypergeometric_error("hyp2f1: argument x=" + std::to_string(x) +
                               " outside implemented domain (x < 1)");
  if (detail::is_nonpositive_integer(c) &&
      !(detail::is_nonpositive_integer(b) && b > c) &&
      !(detail::is_nonpositive_integer(a) && a > c))
    throw hypergeometric_error("hyp2f1: c is a non-positive integer");
  if (b == c) return std::pow(1.0 - x, -a);
  if (a == c) return std::pow(1.0 - x, -b);

  if (std::abs(x) <= 0.5) return detail::hyp2f1_series(a, b, c, x, tol);
  if (c > b && b > 0.0) return detail::hyp2f1_euler(a, b, c, x, tol);
  if (x > -1.0) return detail::hyp2f1_series(a, b, c, x, tol);
  // Pfaff: F(a,b;c;x) = (1-x)^(-a) F(a, c-b; c; x/(x-1)), argument in (0,1)
  const double w = x / (x - 1.0);
  double fw;
  if (std::abs(w) <= 0.5)
    fw = detail::hyp2f1_series(a, c - b, c, w, tol);
  else if (c > c - b && c - b > 0.0)
    fw = detail::hyp2f1_euler(a, c - b, c, w, tol);
  else
    throw hypergeometric_error("hyp2f1: parameter regime not implemented");
  return std::pow(1.0 - x, -a) * fw;
}

}  // namespace mutfreq

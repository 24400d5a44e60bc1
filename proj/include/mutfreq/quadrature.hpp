#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mutfreq {

struct quadrature_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

struct TanhSinhNode {
  double x;    // abscissa in (0,1)
  double omx;  // 1 - x, computed without cancellation
  double w;    // weight (step size applied by the caller)
};

// Nodes of the tanh-sinh rule at step h = 2^-level, |u| <= u_max.
// x = sigmoid(2y), y = (pi/2) sinh(u); both x and 1-x are exact near the
// endpoints, which is what makes endpoint singularities integrable here.
inline void tanh_sinh_nodes(int level, bool odd_only,
                            std::vector<TanhSinhNode>& out) {
  constexpr double u_max = 8.0;
  const double h = std::ldexp(1.0, -level);
  out.clear();
  const long kmax = static_cast<long>(std::floor(u_max / h));
  for (long k = -kmax; k <= kmax; ++k) {
    if (odd_only && (k % 2 == 0)) continue;
    const double u = static_cast<double>(k) * h;
    const double y = 1.5707963267948966 * std::sinh(u);
    const double e = std::exp(-2.0 * std::abs(y));
    const double denom = 1.0 + e;
    const double small_side = e / denom;   // min(x, 1-x)
    const double big_side = 1.0 / denom;   // max(x, 1-x)
    TanhSinhNode n;
    n.x = (u >= 0.0) ? big_side : small_side;
    n.omx = (u >= 0.0) ? small_side : big_side;
    n.w = 3.141592653589793 * std::cosh(u) * e / (denom * denom);
    if (n.w == 0.0) continue;
    out.push_back(n);
  }
}

inline std::string tol_string(double tol) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", tol);
  return buf;
}

}  // namespace detail

// Integral of f(x, 1-x) over (0,1) to absolute tolerance tol, floored at
// the roundoff level of the node sum.
template <class F>
double integrate_01(F&& f, double tol, int max_level = 12) {
  std::vector<detail::TanhSinhNode> nodes;
  double estimate = 0.0;
  double l1 = 0.0;  // sum of |w f|, tracks the attainable accuracy
  for (int level = 0; level <= max_level; ++level) {
    detail::tanh_sinh_nodes(level, level > 0, nodes);
    double add = 0.0;
    for (const auto& n : nodes) {
      const double v = n.w * f(n.x, n.omx);
      add += v;
      l1 += std::abs(v);
    }
    const double h = std::ldexp(1.0, -level);
    if (level == 0) {
      estimate = add;
      continue;
    }
    const double next = estimate / 2.0 + h * add;
    const double change = std::abs(next - estimate);
    estimate = next;
    if (level >= 3 && change <= std::max(tol, 1e-15 * l1 * h)) return estimate;
  }
  throw quadrature_error("integrate_01: no convergence to tol=" +
                         detail::tol_string(tol));
}

// Simultaneous integrals of a vector-valued integrand over (0,1).
// eval(x, 1-x, values) writes f_k(x) into values[k]; convergence is
// componentwise with the same roundoff floor. Shared abscissas keep a
// kmax-long family of integrals cheap.
template <class Eval>
void integrate_01_vec(Eval&& eval, std::vector<double>& result, double tol,
                      int max_level = 12) {
  const std::size_t m = result.size();
  std::vector<detail::TanhSinhNode> nodes;
  std::vector<double> values(m), add(m), next(m);
  std::vector<double> estimate(m, 0.0), l1(m, 0.0);
  for (int level = 0; level <= max_level; ++level) {
    detail::tanh_sinh_nodes(level, level > 0, nodes);
    std::fill(add.begin(), add.end(), 0.0);
    for (const auto& n : nodes) {
      eval(n.x, n.omx, values);
      for (std::size_t k = 0; k < m; ++k) {
        const double v = n.w * values[k];
        add[k] += v;
        l1[k] += std::abs(v);
      }
    }
    const double h = std::ldexp(1.0, -level);
    if (level == 0) {
      estimate = add;
      continue;
    }
    bool converged = level >= 3;
    for (std::size_t k = 0; k < m; ++k) {
      next[k] = estimate[k] / 2.0 + h * add[k];
      if (std::abs(next[k] - estimate[k]) > std::max(tol, 1e-15 * l1[k] * h))
        converged = false;
    }
    estimate.swap(next);
    if (converged) {
      result = estimate;
      return;
    }
  }
  throw quadrature_error("integrate_01_vec: no convergence to tol=" +
                         detail::tol_string(tol));
}

}  // namespace mutfreq

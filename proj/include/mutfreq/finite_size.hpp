#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <vector>

#include "mutfreq/birth_death.hpp"
#include "mutfreq/hypergeometric.hpp"
#include "mutfreq/pmf.hpp"
#include "mutfreq/quadrature.hpp"
#include "mutfreq/two_type.hpp"

namespace mutfreq {

// E[B(tau_n)] for a pure-birth wildtype started from one cell; infinite
// when the clone fitness reaches the wildtype division rate.
inline double b_tau_mean(std::int64_t n, double nu, double alpha_a,
                         double lambda_b) {
  if (n < 1) throw std::invalid_argument("b_tau_mean: n must be >= 1");
  if (!(alpha_a > 0.0))
    throw std::invalid_argument("b_tau_mean: alpha_a must be > 0");
  if (nu == 0.0) return 0.0;
  if (lambda_b >= alpha_a) return std::numeric_limits<double>::infinity();
  return static_cast<double>(n - 1) * nu / (alpha_a - lambda_b);
}

namespace detail {

// exp(nu t (g(t,z) - 1)) where g(t,z) = int_0^1 E[z^{Y(ut)}] du: the
// per-cell factor of the B(tau_n) generating function. The inner integral
// collapses to a closed form in every clone regime.
inline double b_tau_cell_factor(const ModelParams& p, double t, double z) {
  const double ab = p.alpha_b, bb = p.beta_b, lb = p.alpha_b - p.beta_b;
  if (ab > 0.0 && lb != 0.0) {
    // H = ((ab z - bb) - ab (z-1) e^{lb t}) / lb, positive on z in [0,1)
    const double h =
        ((ab * z - bb) - ab * (z - 1.0) * std::exp(lb * t)) / lb;
    return std::pow(h, -p.nu / ab);
  }
  if (ab > 0.0) {  // critical clones
    return std::pow(1.0 + ab * t * (1.0 - z), -p.nu / ab);
  }
  if (bb > 0.0) {  // pure-death clones
    return std::exp(-p.nu * (1.0 - z) * -std::expm1(-bb * t) / bb);
  }
  return std::exp(p.nu * t * (z - 1.0));  // frozen clones
}

}  // namespace detail

enum class BTauPgfRoute { hypergeometric, quadrature };

// E[z^{B(tau_n)}] for beta_a = 0 and A(0) = 1. Growing clones use the
// closed hypergeometric form
//   [ (1 + lambda_b nu/(alpha_a alpha_b))^{-1}
//     F(1, nu/alpha_b; 1 + nu/alpha_b + alpha_a/lambda_b; (q-z)/(q-1)) ]^{n-1};
// other clone regimes integrate the per-cell factor directly.
inline double b_tau_pgf(const ModelParams& p, std::int64_t n, double z,
                        BTauPgfRoute* route_used = nullptr) {
  p.validate();
  if (p.beta_a != 0.0)
    throw std::invalid_argument("b_tau_pgf: requires beta_a = 0");
  if (p.a0 != 1) throw std::invalid_argument("b_tau_pgf: requires a0 = 1");
  if (!(p.alpha_a > 0.0))
    throw std::invalid_argument("b_tau_pgf: alpha_a must be > 0");
  if (n < 1) throw std::invalid_argument("b_tau_pgf: n must be >= 1");
  if (z < 0.0 || z > 1.0)
    throw std::invalid_argument("b_tau_pgf: z must lie in [0,1]");
  if (z == 1.0 || n == 1 || p.nu == 0.0) {
    if (route_used) *route_used = BTauPgfRoute::hypergeometric;
    return 1.0;
  }
  const double lb = p.lambda_b();
  double cell;
  if (lb > 0.0 && p.alpha_b > 0.0) {
    if (route_used) *route_used = BTauPgfRoute::hypergeometric;
    const double q = p.beta_b / p.alpha_b;
    const double b = p.nu / p.alpha_b;
    const double c = 1.0 + b + p.alpha_a / lb;
    const double x = (q - z) / (q - 1.0);
    cell = hyp2f1(1.0, b, c, x) /
           (1.0 + lb * p.nu / (p.alpha_a * p.alpha_b));
  } else {
    if (route_used) *route_used = BTauPgfRoute::quadrature;
    cell = integrate_01(
        [&](double u, double) {
          const double t = -std::log(u) / p.alpha_a;
          return detail::b_tau_cell_factor(p, t, z);
        },
        1e-12);
  }
  return std::pow(cell, static_cast<double>(n - 1));
}

// P[B(tau_n) = k] for k = 0..kmax by series extraction of the integral
// form: the single-cell mutant load D has pmf
//   d_k = int_0^inf alpha_a e^{-alpha_a t} CP_k(t) dt,
// where CP(t) is compound Poisson(nu t) over the age-uniform clone law
//   m_k(t) = int_0^1 P[Y(ut)=k] du,
// and B(tau_n) is the (n-1)-fold convolution of D. Entirely independent of
// the hypergeometric route, which makes the two cross-checkable.
inline Pmf b_tau_pmf(const ModelParams& p, std::int64_t n, std::int64_t kmax,
                     double tol = 1e-10) {
  p.validate();
  if (p.beta_a != 0.0)
    throw std::invalid_argument("b_tau_pmf: requires beta_a = 0");
  if (p.a0 != 1) throw std::invalid_argument("b_tau_pmf: requires a0 = 1");
  if (!(p.alpha_a > 0.0))
    throw std::invalid_argument("b_tau_pmf: alpha_a must be > 0");
  if (n < 1 || kmax < 0) throw std::invalid_argument("b_tau_pmf: bad n/kmax");

  const std::size_t len = static_cast<std::size_t>(kmax) + 1;
  Pmf out;
  if (n == 1 || p.nu == 0.0) {
    out.probs.assign(len, 0.0);
    out.probs[0] = 1.0;
    return out;
  }

  const BirthDeathParams clone = p.clone_rates();
  std::vector<double> jump(len), cp(len);

  auto compound_at = [&](double t, std::vector<double>& dest) {
    // age-uniform clone size law at wildtype age t
    integrate_01_vec(
        [&](double u, double, std::vector<double>& values) {
          const auto law = bd_law_at(clone, u * t);
          values[0] = law.p_zero;
          double g = (1.0 - law.p_zero) * (1.0 - law.ratio);
          for (std::size_t k = 1; k < len; ++k) {
            values[k] = g;
            g *= law.ratio;
          }
        },
        jump, tol * 0.1);
    // compound Poisson(nu t) over the jump law
    const double rate = p.nu * t;
    dest[0] = std::exp(-rate * (1.0 - jump[0]));
    for (std::size_t m = 1; m < len; ++m) {
      double acc = 0.0;
      for (std::size_t j = 1; j <= m; ++j)
        acc += static_cast<double>(j) * jump[j] * dest[m - j];
      dest[m] = rate * acc / static_cast<double>(m);
    }
  };

  std::vector<double> cell(len);
  integrate_01_vec(
      [&](double u, double, std::vector<double>& values) {
        compound_at(-std::log(u) / p.alpha_a, cp);
        values = cp;
      },
      cell, tol);

  PowerSeries d;
  d.coeffs = std::move(cell);
  PowerSeries total = series_pow(d, static_cast<std::uint64_t>(n - 1), len);
  out.probs = std::move(total.coeffs);
  for (auto& v : out.probs)
    if (v < 0.0) v = 0.0;
  double sum = 0.0;
  for (double v : out.probs) sum += v;
  out.tail_mass = std::max(0.0, 1.0 - sum);
  return out;
}

}  // namespace mutfreq

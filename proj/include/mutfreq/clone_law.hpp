#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mutfreq/birth_death.hpp"
#include "mutfreq/hypergeometric.hpp"
#include "mutfreq/pmf.hpp"
#include "mutfreq/quadrature.hpp"

namespace mutfreq {

// The clone picked at the stop time has Exponential(lambda_a) age xi; its
// size law is the birth-death law averaged over that age,
//   p_k = int_0^inf lambda_a e^{-lambda_a t} P[Y(t)=k] dt.
// The integral is transformed onto (0,1) branch-by-branch in the clone
// fitness so the integrand is a rational function times an endpoint power,
// which tanh-sinh quadrature handles to full accuracy.
namespace detail {

struct CloneAgeNode {
  double weight;           // density against the unit interval
  double p_zero;           // P[Y=0] at the matching age
  double ratio;            // geometric ratio at the matching age
  double one_minus_ratio;  // computed without cancellation
};

inline CloneAgeNode clone_age_node(const BirthDeathParams& clone,
                                   double lambda_a, double x, double omx) {
  const double lb = clone.net_rate();
  CloneAgeNode n;
  if (lb > 0.0) {
    // s = e^{-lambda_b t} -> x; weight rho x^{rho-1}
    const double rho = lambda_a / lb;
    const double denom = clone.birth_rate - clone.death_rate * x;
    n.weight = rho * std::pow(x, rho - 1.0);
    n.p_zero = clone.death_rate * omx / denom;
    n.ratio = clone.birth_rate * omx / denom;
    n.one_minus_ratio = x * lb / denom;
  } else if (lb < 0.0) {
    // v = e^{lambda_b t} -> x; weight mu x^{mu-1}
    const double mu = lambda_a / -lb;
    const double denom = clone.death_rate - clone.birth_rate * x;
    n.weight = mu * std::pow(x, mu - 1.0);
    n.p_zero = clone.death_rate * omx / denom;
    n.ratio = clone.birth_rate * omx / denom;
    n.one_minus_ratio = -lb / denom;
  } else {
    // critical clones: x = ct/(1+ct), c = birth rate
    const double gamma = lambda_a / clone.birth_rate;
    const double expo = -gamma * x / omx;
    n.weight = expo < -745.0 ? 0.0 : gamma * std::exp(expo) / (omx * omx);
    n.p_zero = x;
    n.ratio = x;
    n.one_minus_ratio = omx;
  }
  return n;
}

}  // namespace detail

// P[Y(xi)=k] for k = 0..kmax, with the geometric remainder beyond kmax
// integrated explicitly into tail_mass so normalization is a real check,
// not an identity by construction.
inline Pmf clone_size_pmf(const BirthDeathParams& clone, double lambda_a,
                          std::int64_t kmax, double tol = 1e-12) {
  clone.validate();
  if (!(lambda_a > 0.0) || !std::isfinite(lambda_a))
    throw std::invalid_argument("clone_size_pmf: lambda_a must be > 0");
  if (kmax < 0) throw std::invalid_argument("clone_size_pmf: kmax < 0");

  Pmf out;
  if (clone.net_rate() == 0.0 && clone.birth_rate == 0.0) {
    // zero-rate clones sit at size 1 forever
    out.probs.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
    if (kmax >= 1)
      out.probs[1] = 1.0;
    else
      out.tail_mass = 1.0;
    return out;
  }

  const std::size_t m = static_cast<std::size_t>(kmax) + 2;  // k=0..kmax,tail
  std::vector<double> integrals(m);
  integrate_01_vec(
      [&](double x, double omx, std::vector<double>& values) {
        const auto n = detail::clone_age_node(clone, lambda_a, x, omx);
        values[0] = n.weight * n.p_zero;
        double g = n.weight * (1.0 - n.p_zero);  // survive mass, then *ratio^k
        for (std::int64_t k = 1; k <= kmax; ++k) {
          values[static_cast<std::size_t>(k)] = g * n.one_minus_ratio;
          g *= n.ratio;
        }
        values[m - 1] = g;  // P[Y > kmax] against the weight
      },
      integrals, tol);

  out.probs.assign(integrals.begin(), integrals.end() - 1);
  out.tail_mass = integrals.back();
  for (auto& p : out.probs) {
    if (p < 0.0) {
      if (p < -10.0 * tol)
        throw quadrature_error("clone_size_pmf: negative mass beyond tol");
      p = 0.0;
    }
  }
  if (out.tail_mass < 0.0) out.tail_mass = 0.0;
  out.validate(1e-9);
  return out;
}

enum class CloneAgePgfRoute { hypergeometric, quadrature };

// r(z) = E[z^{Y(xi)}], the clone-size generating function. Closed form
//   r(z) = 1 - (1-q) F(1, rho; 1+rho; (q-z)/(1-z)),  q = death/birth,
// with rho = lambda_a/lambda_b, valid for growing clones; other regimes
// (critical, subcritical, pure-death) are routed to quadrature.
inline double clone_age_pgf(const BirthDeathParams& clone, double lambda_a,
                            double z,
                            CloneAgePgfRoute* route_used = nullptr) {
  clone.validate();
  if (!(lambda_a > 0.0) || !std::isfinite(lambda_a))
    throw std::invalid_argument("clone_age_pgf: lambda_a must be > 0");
  if (z < 0.0 || z > 1.0)
    throw std::invalid_argument("clone_age_pgf: z must lie in [0,1]");
  if (z == 1.0) {
    if (route_used) *route_used = CloneAgePgfRoute::hypergeometric;
    return 1.0;
  }
  const double lb = clone.net_rate();
  if (lb > 0.0 && clone.birth_rate > 0.0) {
    const double q = clone.death_rate / clone.birth_rate;
    const double rho = lambda_a / lb;
    const double x = (q - z) / (1.0 - z);
    if (route_used) *route_used = CloneAgePgfRoute::hypergeometric;
    return 1.0 - (1.0 - q) * hyp2f1(1.0, rho, 1.0 + rho, x);
  }
  if (route_used) *route_used = CloneAgePgfRoute::quadrature;
  if (lb == 0.0 && clone.birth_rate == 0.0) return z;  // frozen single cell
  return integrate_01(
      [&](double x, double omx) {
        const auto n = detail::clone_age_node(clone, lambda_a, x, omx);
        return n.weight *
               (n.p_zero + (1.0 - n.p_zero) * n.one_minus_ratio * z /
                               (1.0 - n.ratio * z));
      },
      1e-13);
}

// Remark-style power-law tail constant for the clone-size law:
//   P[Y(xi)=k] ~ c k^{-(1+rho)} with
//   c = rho (1-q)^{1-rho} Gamma(1+rho), valid only for lambda_b > 0.
inline std::optional<double> clone_tail_constant(const BirthDeathParams& clone,
                                                 double lambda_a) {
  clone.validate();
  const double lb = clone.net_rate();
  if (!(lb > 0.0)) return std::nullopt;
  const double rho = lambda_a / lb;
  const double q = clone.death_rate / clone.birth_rate;
  return rho * std::pow(1.0 - q, 1.0 - rho) * std::tgamma(1.0 + rho);
}

}  // namespace mutfreq

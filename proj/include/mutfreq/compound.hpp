#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "mutfreq/clone_law.hpp"
#include "mutfreq/pmf.hpp"

namespace mutfreq {

// Number of mutants in the large population small mutation limit: a
// compound Poisson sum of K* ~ Poisson(theta/lambda_a) clone sizes drawn
// from clone_pmf. Computed with the size-biased recursion
//   P[0] = exp(-(theta/lambda_a)(1 - p_0)),
//   P[n] = (theta/(lambda_a n)) sum_{j=1}^{n} j p_j P[n-j],
// which is exact to roundoff given the jump masses up to n.
inline Pmf bstar_pmf(double theta, double lambda_a, const Pmf& clone_pmf,
                     std::int64_t kmax) {
  if (!(theta >= 0.0) || !std::isfinite(theta))
    throw std::invalid_argument("bstar_pmf: theta must be >= 0");
  if (!(lambda_a > 0.0) || !std::isfinite(lambda_a))
    throw std::invalid_argument("bstar_pmf: lambda_a must be > 0");
  if (kmax < 0) throw std::invalid_argument("bstar_pmf: kmax < 0");
  if (clone_pmf.kmax() < kmax)
    throw std::invalid_argument(
        "bstar_pmf: clone pmf support must reach kmax");
  const double mu = theta / lambda_a;
  const double p0 = clone_pmf.prob(0);

  Pmf out;
  out.probs.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
  out.probs[0] = std::exp(-mu * (1.0 - p0));
  for (std::int64_t n = 1; n <= kmax; ++n) {
    double acc = 0.0;
    for (std::int64_t j = 1; j <= n; ++j)
      acc += static_cast<double>(j) * clone_pmf.prob(j) *
             out.probs[static_cast<std::size_t>(n - j)];
    out.probs[static_cast<std::size_t>(n)] =
        mu * acc / static_cast<double>(n);
  }
  double total = 0.0;
  for (double p : out.probs) total += p;
  out.tail_mass = std::max(0.0, 1.0 - total);
  return out;
}

// Number of mutants in the large time small mutation limit. The generating
// function is the A(0)-th power of a ratio affine in r(z)-1:
//   E[z^{B}] = ((l^2 - beta_a eta (r(z)-1)) / (l^2 - alpha_a eta (r(z)-1)))^{A(0)}
// with l = lambda_a. Coefficients come out by truncated series arithmetic;
// every step is lower-triangular, so orders 0..kmax are exact given the
// clone masses up to kmax.
inline Pmf bcirc_pmf(double eta, double alpha_a, double beta_a,
                     std::int64_t a0, const Pmf& clone_pmf,
                     std::int64_t kmax) {
  if (!(eta >= 0.0) || !std::isfinite(eta))
    throw std::invalid_argument("bcirc_pmf: eta must be >= 0");
  const double lambda_a = alpha_a - beta_a;
  if (!(lambda_a > 0.0))
    throw std::invalid_argument("bcirc_pmf: needs alpha_a - beta_a > 0");
  if (a0 < 1) throw std::invalid_argument("bcirc_pmf: a0 must be >= 1");
  if (kmax < 0 || clone_pmf.kmax() < kmax)
    throw std::invalid_argument(
        "bcirc_pmf: clone pmf support must reach kmax");

  const std::size_t len = static_cast<std::size_t>(kmax) + 1;
  PowerSeries rm1;  // r(z) - 1
  rm1.coeffs.assign(clone_pmf.probs.begin(),
                    clone_pmf.probs.begin() + static_cast<std::ptrdiff_t>(len));
  rm1.coeffs[0] -= 1.0;

  const double l2 = lambda_a * lambda_a;
  PowerSeries num, den;
  num.coeffs.assign(len, 0.0);
  den.coeffs.assign(len, 0.0);
  for (std::size_t k = 0; k < len; ++k) {
    num.coeffs[k] = -beta_a * eta * rm1.coeffs[k];
    den.coeffs[k] = -alpha_a * eta * rm1.coeffs[k];
  }
  num.coeffs[0] += l2;
  den.coeffs[0] += l2;
  if (!(den.coeffs[0] > 0.0))
    throw std::runtime_error("bcirc_pmf: non-positive denominator constant");

  PowerSeries ratio = series_mul(num, series_inverse(den, len), len);
  PowerSeries pgf = series_pow(ratio, static_cast<std::uint64_t>(a0), len);

  Pmf out;
  out.probs = std::move(pgf.coeffs);
  for (auto& p : out.probs)
    if (p < 0.0) p = p > -1e-12 ? 0.0 : p;  // roundoff only; validate below
  double total = 0.0;
  for (double p : out.probs) total += p;
  out.tail_mass = std::max(0.0, 1.0 - total);
  out.validate(1e-8);
  return out;
}

inline std::optional<double> bstar_tail_constant(
    double theta, const BirthDeathParams& clone, double lambda_a) {
  const auto c = clone_tail_constant(clone, lambda_a);
  if (!c) return std::nullopt;
  // (theta/lambda_b) (1-q)^{1-rho} Gamma(1+rho) = clone constant * theta/lambda_a
  return *c * theta / lambda_a;
}

inline std::optional<double> bcirc_tail_constant(
    double eta, std::int64_t a0, const BirthDeathParams& clone,
    double lambda_a) {
  const auto c = clone_tail_constant(clone, lambda_a);
  if (!c) return std::nullopt;
  return *c * eta * static_cast<double>(a0) / lambda_a;
}

// Mean site frequency spectrum predictions under the neutral calibration
// (division rate a, death rate b, lambda_a = lambda_b = a - b). Population
// mode scales B* by the site count; time mode scales the B law at a fixed
// time horizon.
inline std::vector<double> mean_sfs_limit_population(std::int64_t sites,
                                                     double theta, double a,
                                                     double b,
                                                     std::int64_t kmax,
                                                     double tol = 1e-12) {
  const double lambda = a - b;
  if (!(lambda > 0.0))
    throw std::invalid_argument("mean_sfs_limit_population: needs a > b");
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
  if (sites == 0) return out;
  const Pmf clone = clone_size_pmf({a, b}, lambda, kmax, tol);
  const Pmf bstar = bstar_pmf(theta, lambda, clone, kmax);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = static_cast<double>(sites) * bstar.probs[k];
  return out;
}

inline std::vector<double> mean_sfs_limit_time(std::int64_t sites, double eta,
                                               std::int64_t c0, double a,
                                               double b, std::int64_t kmax,
                                               double tol = 1e-12) {
  const double lambda = a - b;
  if (!(lambda > 0.0))
    throw std::invalid_argument("mean_sfs_limit_time: needs a > b");
  std::vector<double> out(static_cast<std::size_t>(kmax) + 1, 0.0);
  if (sites == 0) return out;
  const Pmf clone = clone_size_pmf({a, b}, lambda, kmax, tol);
  const Pmf bcirc = bcirc_pmf(eta, a, b, c0, clone, kmax);
  for (std::size_t k = 0; k < out.size(); ++k)
    out[k] = static_cast<double>(sites) * bcirc.probs[k];
  return out;
}

inline std::optional<double> sfs_tail_constant_population(std::int64_t sites,
                                                          double theta,
                                                          double a, double b) {
  const double lambda = a - b;
  if (!(lambda > 0.0)) return std::nullopt;
  return static_cast<double>(sites) * theta / lambda;
}

inline std::optional<double> sfs_tail_constant_time(std::int64_t sites,
                                                    double eta,
                                                    std::int64_t c0, double a,
                                                    double b) {
  const double lambda = a - b;
  if (!(lambda > 0.0)) return std::nullopt;
  return static_cast<double>(sites) * eta * static_cast<double>(c0) / lambda;
}

}  // namespace mutfreq

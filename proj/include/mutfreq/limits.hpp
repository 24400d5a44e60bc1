#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "mutfreq/pmf.hpp"
#include "mutfreq/two_type.hpp"

namespace mutfreq {

// Long-run trichotomy by relative fitness, with the deterministic constants
// of the three almost-sure limits and their population-size corollaries.
// In the mutant-dominant regime the limit is the random variable V; only
// its mean is deterministic.
enum class GrowthRegime { wildtype_dominant, balanced, mutant_dominant };

struct LimitRegime {
  GrowthRegime regime = GrowthRegime::wildtype_dominant;
  // e^{-lambda_a t} B(t) -> time_constant * W   (wildtype_dominant)
  // t^{-1} e^{-lambda_a t} B(t) -> time_constant * W   (balanced)
  // e^{-lambda_b t} B(t) -> V, random            (mutant_dominant)
  double time_constant = 0.0;
  bool random_limit = false;
  double mean_w = 0.0;  // E[W] = A(0)
  double mean_v = 0.0;  // E[V], mutant-dominant only
  // B(tau_n) scaled by n (resp. n log n) at the wildtype-size stop
  double tau_constant = 0.0;
  // B(sigma_n)/n, or log(n)(n - B(sigma_n))/n in the balanced case
  double sigma_constant = 0.0;
  std::string time_scaling;
  std::string tau_scaling;
  std::string sigma_scaling;
};

inline LimitRegime limit_constants(const ModelParams& p) {
  p.validate();
  const double la = p.lambda_a(), lb = p.lambda_b();
  if (!(la > 0.0))
    throw std::invalid_argument(
        "limit_constants: supercritical wildtype required (lambda_a > 0)");
  LimitRegime r;
  r.mean_w = static_cast<double>(p.a0);
  if (la > lb) {
    r.regime = GrowthRegime::wildtype_dominant;
    r.time_constant = p.nu / (la - lb);
    r.tau_constant = p.nu / (la - lb);
    r.sigma_constant = p.nu / (la - lb + p.nu);
    r.time_scaling = "e^{-lambda_a t} B(t)";
    r.tau_scaling = "B(tau_n)/n";
    r.sigma_scaling = "B(sigma_n)/n";
  } else if (la == lb) {
    r.regime = GrowthRegime::balanced;
    r.time_constant = p.nu;
    r.tau_constant = p.nu / la;
    r.sigma_constant = p.nu > 0.0 ? la / p.nu : 0.0;
    r.time_scaling = "t^{-1} e^{-lambda_a t} B(t)";
    r.tau_scaling = "B(tau_n)/(n log n)";
    r.sigma_scaling = "log(n)(n - B(sigma_n))/n";
  } else {
    r.regime = GrowthRegime::mutant_dominant;
    r.random_limit = true;
    r.mean_v = static_cast<double>(p.a0) * p.nu / (lb - la);
    r.time_scaling = "e^{-lambda_b t} B(t) -> V (random)";
    r.tau_scaling = "B(tau_n) n^{-lambda_b/lambda_a} -> V W^{-lambda_b/lambda_a}";
    r.sigma_scaling =
        "(n - B(sigma_n)) n^{-lambda_a/lambda_b} -> V^{-lambda_a/lambda_b} W";
  }
  return r;
}

// Small-mutation limit of the mutation times: K* is Poisson(theta/lambda_a)
// at the stop time, and the centered first mutation time is Gumbel,
//   P[T_1* >= t] = exp(-(theta/lambda_a) e^{lambda_a t}).
struct MutationTimeLaws {
  double theta = 0.0;
  double lambda_a = 0.0;

  double poisson_mean() const { return theta / lambda_a; }

  double first_time_survival(double t) const {
    return std::exp(-(theta / lambda_a) * std::exp(lambda_a * t));
  }

  double first_time_cdf(double t) const {
    return -std::expm1(-(theta / lambda_a) * std::exp(lambda_a * t));
  }
};

inline MutationTimeLaws mutation_time_laws(double theta, double lambda_a) {
  if (!(theta >= 0.0) || !(lambda_a > 0.0))
    throw std::invalid_argument(
        "mutation_time_laws: need theta >= 0 and lambda_a > 0");
  return {theta, lambda_a};
}

// P[M* <= k] = exp(-(theta/lambda_a) P[Y(xi) > k]): no clone bigger than k
// iff the Poisson number of clones beyond size k is zero.
inline double largest_clone_cdf(double theta, double lambda_a,
                                const Pmf& clone_pmf, std::int64_t k) {
  if (k < 0) return 0.0;
  if (k > clone_pmf.kmax())
    throw std::invalid_argument(
        "largest_clone_cdf: k beyond clone pmf support");
  const double above = 1.0 - clone_pmf.cdf(k);
  return std::exp(-(theta / lambda_a) * above);
}

// Number of clones with size in the window is Poisson with this rate.
// Unbounded windows use the complement so the truncated tail is exact.
inline double clone_census_rate(double theta, double lambda_a,
                                const Pmf& clone_pmf, const SizeRange& range) {
  double mass;
  if (range.hi < 0) {
    if (range.lo > clone_pmf.kmax() + 1)
      throw std::invalid_argument(
          "clone_census_rate: range beyond clone pmf support");
    mass = range.lo == 0 ? 1.0 : 1.0 - clone_pmf.cdf(range.lo - 1);
  } else {
    if (range.hi > clone_pmf.kmax())
      throw std::invalid_argument(
          "clone_census_rate: range beyond clone pmf support");
    mass = 0.0;
    for (std::int64_t k = std::max<std::int64_t>(0, range.lo); k <= range.hi;
         ++k)
      mass += clone_pmf.prob(k);
  }
  return (theta / lambda_a) * mass;
}

}  // namespace mutfreq

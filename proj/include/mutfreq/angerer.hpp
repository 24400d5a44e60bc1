#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mutfreq/detail/dd.hpp"
#include "mutfreq/pmf.hpp"

namespace mutfreq {

struct precision_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Neutral-mutation distribution of B(sigma_n) for a pure-birth population
// with alpha_a + nu = alpha_b (Angerer's recursion solved in closed form):
//   P[B(sigma_n)=k] = sum_{i=1}^{n-k} (-1)^{n-i} C(n-k-1, i-1)
//                                               C(i alpha_a/alpha_b - 1, n-1)
// with the generalized binomial C(x, m) = x(x-1)...(x-m+1)/m!. The sum
// alternates with heavy cancellation as n grows, so terms are evaluated in
// double-double arithmetic with a running error bound; if the bound cannot
// certify 1e-10 absolute accuracy the call fails rather than degrade.
inline Pmf angerer_pmf(std::int64_t n, double alpha_a, double alpha_b,
                       std::int64_t kmax = -1) {
  if (n < 1) throw std::invalid_argument("angerer_pmf: n must be >= 1");
  if (!(alpha_a > 0.0) || !(alpha_b > alpha_a))
    throw std::invalid_argument(
        "angerer_pmf: needs 0 < alpha_a < alpha_b (nu = alpha_b - alpha_a)");
  if (kmax < 0) kmax = n - 1;

  using detail::DD;
  const DD ratio = detail::dd_div(alpha_a, alpha_b);  // in (0,1)

  Pmf out;
  out.probs.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
  double max_abs_error = 0.0;

  for (std::int64_t k = 0; k <= kmax && k <= n - 1; ++k) {
    DD sum(0.0);
    double term_magnitude = 0.0;
    // C(n-k-1, i-1), updated by the usual ratio of consecutive binomials
    DD int_binom(1.0);
    for (std::int64_t i = 1; i <= n - k; ++i) {
      if (i > 1) {
        // C(m, j) = C(m, j-1) (m-j+1)/j with m = n-k-1, j = i-1
        int_binom = dd_mul(int_binom,
                           static_cast<double>(n - k - i + 1));
        int_binom = detail::dd_div(int_binom, DD(static_cast<double>(i - 1)));
      }
      // C(i ratio - 1, n-1) = prod_{m=0}^{n-2} (i ratio - 1 - m) / (m+1)
      DD gen_binom(1.0);
      const DD x = dd_sub(dd_mul(ratio, static_cast<double>(i)), DD(1.0));
      for (std::int64_t m = 0; m + 1 < n; ++m) {
        gen_binom = dd_mul(gen_binom, dd_sub(x, DD(static_cast<double>(m))));
        gen_binom = detail::dd_div(gen_binom,
                                   DD(static_cast<double>(m + 1)));
      }
      DD term = dd_mul(int_binom, gen_binom);
      if (!std::isfinite(term.hi))
        throw precision_error(
            "angerer_pmf: term overflow at n=" + std::to_string(n) +
            ", i=" + std::to_string(i) +
            "; higher precision arithmetic required");
      if ((n - i) % 2 != 0) term = detail::dd_neg(term);
      sum = detail::dd_add(sum, term);
      term_magnitude = std::max(term_magnitude, detail::dd_abs(term));
    }
    // error from the alternating sum: each term carries relative error
    // O(n * eps_dd); certify against the largest magnitude seen
    const double bound =
        term_magnitude * static_cast<double>(n + 2) *
        static_cast<double>(n - k) * 0x1.0p-104;
    max_abs_error = std::max(max_abs_error, bound);
    if (bound > 1e-12)
      throw precision_error(
          "angerer_pmf: cannot certify 1e-10 accuracy at n=" +
          std::to_string(n) + ", k=" + std::to_string(k) +
          " (error bound " + std::to_string(bound) +
          "); higher precision arithmetic required");
    double p = sum.value();
    if (p < 0.0) {
      if (p < -bound - 1e-12)
        throw precision_error("angerer_pmf: negative probability beyond "
                              "certified error bound");
      p = 0.0;
    }
    out.probs[static_cast<std::size_t>(k)] = p;
  }

  double total = 0.0;
  for (double p : out.probs) total += p;
  if (kmax >= n - 1) {
    if (std::abs(total - 1.0) > 1e-10)
      throw precision_error(
          "angerer_pmf: full-support mass off 1 by " +
          std::to_string(total - 1.0));
    out.tail_mass = 0.0;
  } else {
    out.tail_mass = std::max(0.0, 1.0 - total);
  }
  return out;
}

}  // namespace mutfreq

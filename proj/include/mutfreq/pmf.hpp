#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace mutfreq {

// Truncated probability mass function on {0,...,kmax} with the remaining
// mass reported explicitly. Heavy-tailed laws here make tail_mass genuinely
// non-negligible, so it is carried along rather than hidden.
struct Pmf {
  std::vector<double> probs;
  double tail_mass = 0.0;

  std::int64_t kmax() const {
    return static_cast<std::int64_t>(probs.size()) - 1;
  }

  double prob(std::int64_t k) const {
    if (k < 0 || k >= static_cast<std::int64_t>(probs.size())) return 0.0;
    return probs[static_cast<std::size_t>(k)];
  }

  // P[X <= k]; exact for k within the truncation window
  double cdf(std::int64_t k) const {
    double s = 0.0;
    for (std::int64_t j = 0; j <= k && j <= kmax(); ++j)
      s += probs[static_cast<std::size_t>(j)];
    return s;
  }

  // mean of the truncated part only; a lower bound when tail_mass > 0
  double truncated_mean() const {
    double m = 0.0;
    for (std::size_t k = 1; k < probs.size(); ++k)
      m += static_cast<double>(k) * probs[k];
    return m;
  }

  double total_mass() const {
    double s = tail_mass;
    for (double p : probs) s += p;
    return s;
  }

  void validate(double tol = 1e-8) const {
    for (std::size_t k = 0; k < probs.size(); ++k)
      if (!(probs[k] >= 0.0) || !std::isfinite(probs[k]))
        throw std::runtime_error("Pmf: invalid mass at k=" + std::to_string(k));
    if (tail_mass < -tol || tail_mass > 1.0 + tol)
      throw std::runtime_error("Pmf: invalid tail mass");
    if (std::abs(total_mass() - 1.0) > tol)
      throw std::runtime_error("Pmf: mass does not sum to 1, off by " +
                               std::to_string(total_mass() - 1.0));
  }
};

// Dense power series y = sum coeffs[k] z^k, truncated arithmetic. All the
// operations below are lower-triangular in the coefficients, so results up
// to order n are exact given inputs exact up to order n.
struct PowerSeries {
  std::vector<double> coeffs;

  std::size_t length() const { return coeffs.size(); }

  double eval(double z) const {
    double acc = 0.0;
    for (std::size_t k = coeffs.size(); k-- > 0;) acc = acc * z + coeffs[k];
    return acc;
  }
};

inline PowerSeries series_mul(const PowerSeries& a, const PowerSeries& b,
                              std::size_t len) {
  PowerSeries out;
  out.coeffs.assign(len, 0.0);
  const std::size_t na = std::min(a.coeffs.size(), len);
  for (std::size_t i = 0; i < na; ++i) {
    const double ai = a.coeffs[i];
    if (ai == 0.0) continue;
    const std::size_t nb = std::min(b.coeffs.size(), len - i);
    for (std::size_t j = 0; j < nb; ++j) out.coeffs[i + j] += ai * b.coeffs[j];
  }
  return out;
}

inline PowerSeries series_inverse(const PowerSeries& a, std::size_t len) {
  if (a.coeffs.empty() || a.coeffs[0] == 0.0)
    throw std::runtime_error("series_inverse: zero constant term");
  PowerSeries out;
  out.coeffs.assign(len, 0.0);
  out.coeffs[0] = 1.0 / a.coeffs[0];
  for (std::size_t n = 1; n < len; ++n) {
    double s = 0.0;
    const std::size_t jmax = std::min(n, a.coeffs.size() - 1);
    for (std::size_t j = 1; j <= jmax; ++j)
      s += a.coeffs[j] * out.coeffs[n - j];
    out.coeffs[n] = -s / a.coeffs[0];
  }
  return out;
}

inline PowerSeries series_pow(const PowerSeries& a, std::uint64_t p,
                              std::size_t len) {
  PowerSeries result;
  result.coeffs.assign(len, 0.0);
  result.coeffs[0] = 1.0;
  PowerSeries base = a;
  base.coeffs.resize(len, 0.0);
  while (p > 0) {
    if (p & 1) result = series_mul(result, base, len);
    p >>= 1;
    if (p > 0) base = series_mul(base, base, len);
  }
  return result;
}

}  // namespace mutfreq

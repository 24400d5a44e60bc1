#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "mutfreq/pmf.hpp"

namespace mutfreq {

// Replicate-count histogram. counts sums to reps; discard_count records
// replicates rejected by conditioning so conditional probabilities stay
// auditable.
struct EmpiricalPmf {
  std::map<std::int64_t, std::int64_t> counts;
  std::int64_t reps = 0;
  std::int64_t discard_count = 0;

  double prob(std::int64_t k) const {
    const auto it = counts.find(k);
    if (it == counts.end()) return 0.0;
    return static_cast<double>(it->second) / static_cast<double>(reps);
  }

  double mean() const {
    double m = 0.0;
    for (const auto& [k, c] : counts)
      m += static_cast<double>(k) * static_cast<double>(c);
    return m / static_cast<double>(reps);
  }

  double variance() const {
    const double m = mean();
    double v = 0.0;
    for (const auto& [k, c] : counts) {
      const double d = static_cast<double>(k) - m;
      v += d * d * static_cast<double>(c);
    }
    return v / static_cast<double>(reps - 1);
  }

  // standard error of the mean
  double mean_se() const {
    return std::sqrt(variance() / static_cast<double>(reps));
  }

  double cdf(std::int64_t k) const {
    std::int64_t c = 0;
    for (const auto& [key, cnt] : counts) {
      if (key > k) break;
      c += cnt;
    }
    return static_cast<double>(c) / static_cast<double>(reps);
  }

  void validate() const {
    if (reps < 1) throw std::runtime_error("EmpiricalPmf: reps must be >= 1");
    std::int64_t total = 0;
    for (const auto& [k, c] : counts) {
      if (c < 0) throw std::runtime_error("EmpiricalPmf: negative count");
      total += c;
    }
    if (total != reps)
      throw std::runtime_error("EmpiricalPmf: counts do not sum to reps");
  }
};

// Common ground for TV distances: point masses plus a sentinel bucket that
// absorbs whatever mass lies beyond the truncation window.
struct Distribution {
  std::map<std::int64_t, double> probs;
  double sentinel = 0.0;
};

inline Distribution to_distribution(const Pmf& pmf) {
  Distribution d;
  for (std::size_t k = 0; k < pmf.probs.size(); ++k)
    if (pmf.probs[k] != 0.0)
      d.probs[static_cast<std::int64_t>(k)] = pmf.probs[k];
  d.sentinel = pmf.tail_mass;
  return d;
}

inline Distribution to_distribution(const EmpiricalPmf& emp) {
  Distribution d;
  for (const auto& [k, c] : emp.counts)
    if (c != 0)
      d.probs[k] = static_cast<double>(c) / static_cast<double>(emp.reps);
  return d;
}

inline double tv_distance(const Distribution& p, const Distribution& q) {
  double acc = std::abs(p.sentinel - q.sentinel);
  auto ip = p.probs.begin();
  auto iq = q.probs.begin();
  while (ip != p.probs.end() || iq != q.probs.end()) {
    if (iq == q.probs.end() || (ip != p.probs.end() && ip->first < iq->first)) {
      acc += std::abs(ip->second);
      ++ip;
    } else if (ip == p.probs.end() || iq->first < ip->first) {
      acc += std::abs(iq->second);
      ++iq;
    } else {
      acc += std::abs(ip->second - iq->second);
      ++ip;
      ++iq;
    }
  }
  return acc / 2.0;
}

namespace detail {

// fold mass beyond the truncation window into the sentinel bucket
inline Distribution folded(const Distribution& d, std::int64_t kmax) {
  Distribution out;
  out.sentinel = d.sentinel;
  for (const auto& [k, p] : d.probs) {
    if (k > kmax)
      out.sentinel += p;
    else
      out.probs[k] = p;
  }
  return out;
}

}  // namespace detail

inline double tv_distance(const EmpiricalPmf& p, const EmpiricalPmf& q) {
  return tv_distance(to_distribution(p), to_distribution(q));
}

// Comparisons against a truncated Pmf fold the other side's mass beyond the
// truncation point into the sentinel, so tail mass competes with tail mass.
inline double tv_distance(const EmpiricalPmf& p, const Pmf& q) {
  return tv_distance(detail::folded(to_distribution(p), q.kmax()),
                     to_distribution(q));
}

inline double tv_distance(const Pmf& p, const EmpiricalPmf& q) {
  return tv_distance(q, p);
}

inline double tv_distance(const Pmf& p, const Pmf& q) {
  const std::int64_t window = std::min(p.kmax(), q.kmax());
  return tv_distance(detail::folded(to_distribution(p), window),
                     detail::folded(to_distribution(q), window));
}

// Binomial standard error per support point. Zero-count cells report the
// rule-of-three bound 3/reps instead of zero.
inline std::map<std::int64_t, double> per_k_se(const EmpiricalPmf& emp) {
  if (emp.reps < 2)
    throw std::invalid_argument("per_k_se: need reps >= 2");
  std::map<std::int64_t, double> out;
  const double n = static_cast<double>(emp.reps);
  for (const auto& [k, c] : emp.counts) {
    const double p = static_cast<double>(c) / n;
    out[k] = c == 0 ? 3.0 / n : std::sqrt(p * (1.0 - p) / n);
  }
  return out;
}

inline double binomial_se(std::int64_t count, std::int64_t reps) {
  const double n = static_cast<double>(reps);
  if (count == 0) return 3.0 / n;
  const double p = static_cast<double>(count) / n;
  return std::sqrt(p * (1.0 - p) / n);
}

// Least-squares slope of log p_k against log k on [kmin, kmax].
inline double loglog_slope(const Pmf& pmf, std::int64_t kmin,
                           std::int64_t kmax) {
  if (kmin < 1 || kmax < kmin || kmax > pmf.kmax())
    throw std::invalid_argument("loglog_slope: bad range");
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  std::int64_t n = 0;
  for (std::int64_t k = kmin; k <= kmax; ++k) {
    const double p = pmf.prob(k);
    if (!(p > 0.0))
      throw std::invalid_argument(
          "loglog_slope: non-positive mass inside range");
    const double x = std::log(static_cast<double>(k));
    const double y = std::log(p);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  const double dn = static_cast<double>(n);
  return (dn * sxy - sx * sy) / (dn * sxx - sx * sx);
}

struct CompareRow {
  std::int64_t k = 0;
  double empirical = 0.0;
  double theory = 0.0;
  double se = 0.0;
  double deviation_se = 0.0;  // |empirical - theory| in SE units
  bool pass = false;
};

struct CompareReport {
  std::vector<CompareRow> rows;
  double tv = 0.0;
  double max_deviation_se = 0.0;
  double pass_rate = 0.0;
  bool aggregate_pass = false;
  double se_multiplier = 3.0;
};

// Per-k verdicts |p_hat - p| <= multiplier * SE over [kmin, kmax], plus TV
// over the full union support. Aggregate passes when at least 99% of the
// cells pass (all cells, for ranges shorter than 100).
inline CompareReport compare_report(const EmpiricalPmf& emp, const Pmf& theory,
                                    std::int64_t kmin, std::int64_t kmax,
                                    double se_multiplier = 3.0) {
  CompareReport report;
  report.se_multiplier = se_multiplier;
  std::int64_t passed = 0;
  for (std::int64_t k = kmin; k <= kmax; ++k) {
    CompareRow row;
    row.k = k;
    const auto it = emp.counts.find(k);
    const std::int64_t count = it == emp.counts.end() ? 0 : it->second;
    row.empirical =
        static_cast<double>(count) / static_cast<double>(emp.reps);
    row.theory = theory.prob(k);
    row.se = binomial_se(count, emp.reps);
    row.deviation_se = std::abs(row.empirical - row.theory) / row.se;
    row.pass = row.deviation_se <= se_multiplier;
    report.max_deviation_se = std::max(report.max_deviation_se,
                                       row.deviation_se);
    passed += row.pass;
    report.rows.push_back(row);
  }
  report.tv = tv_distance(emp, theory);
  report.pass_rate = report.rows.empty()
                         ? 1.0
                         : static_cast<double>(passed) /
                               static_cast<double>(report.rows.size());
  report.aggregate_pass = report.pass_rate >= 0.99;
  return report;
}

}  // namespace mutfreq

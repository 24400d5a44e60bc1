#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <variant>
#include <vector>

#include "mutfreq/birth_death.hpp"
#include "mutfreq/rng.hpp"

namespace mutfreq {

// Wildtype population driving the mutation intensity: either a stochastic
// linear birth-death count or the deterministic exponential w0 e^{rate t}.
struct StochasticWildtype {
  BirthDeathParams rates;
  std::int64_t initial = 1;
};

struct DeterministicWildtype {
  double w0 = 1.0;
  double growth_rate = 1.0;

  void validate() const {
    if (!(w0 > 0.0) || !std::isfinite(w0) || !(growth_rate > 0.0) ||
        !std::isfinite(growth_rate))
      throw std::invalid_argument(
          "DeterministicWildtype: need w0 > 0 and growth_rate > 0");
  }
};

using WildtypeModel = std::variant<StochasticWildtype, DeterministicWildtype>;

// Inhomogeneous Poisson times with intensity nu * path(t) on [t0, t1],
// generated by time rescaling: unit-rate arrivals are mapped through the
// inverse cumulative intensity. Piecewise-constant paths invert exactly.
inline std::vector<double> sample_cox_times(const Trajectory& path, double nu,
                                            double t0, double t1, Rng& rng) {
  if (nu < 0.0 || !std::isfinite(nu))
    throw std::invalid_argument("sample_cox_times: nu must be >= 0");
  if (!(t0 >= 0.0) || !(t1 >= t0))
    throw std::invalid_argument("sample_cox_times: bad window");
  std::vector<double> times;
  if (nu == 0.0 || t1 == t0) return times;

  double clock = rng.exponential(1.0);  // next unit-rate arrival
  double cum = 0.0;                     // cumulative intensity consumed
  std::size_t i = 0;
  while (i < path.event_times.size() && path.event_times[i] <= t0) ++i;
  std::int64_t level = path.size_at(t0);
  double seg_start = t0;
  while (seg_start < t1) {
    const double seg_end =
        (i < path.event_times.size() && path.event_times[i] < t1)
            ? path.event_times[i]
            : t1;
    const double rate = nu * static_cast<double>(level);
    if (rate > 0.0) {
      const double avail = rate * (seg_end - seg_start);
      while (cum + avail >= clock) {
        times.push_back(seg_start + (clock - cum) / rate);
        clock += rng.exponential(1.0);
      }
      cum += avail;
    }
    if (seg_end == t1) break;
    seg_start = seg_end;
    level = path.sizes[i];
    ++i;
  }
  return times;
}

// Deterministic exponential intensity nu * w0 e^{rate t}; t0 may be -inf.
// Lambda(t) = (nu w0/rate)(e^{rate t} - e^{rate t0}) inverts in closed form.
inline std::vector<double> sample_cox_times(const DeterministicWildtype& w,
                                            double nu, double t0, double t1,
                                            Rng& rng) {
  w.validate();
  if (nu < 0.0 || !std::isfinite(nu))
    throw std::invalid_argument("sample_cox_times: nu must be >= 0");
  if (!(t1 >= t0))
    throw std::invalid_argument("sample_cox_times: bad window");
  std::vector<double> times;
  if (nu == 0.0) return times;
  const double r = w.growth_rate;
  const double scale = nu * w.w0 / r;
  const double base = std::isinf(t0) ? 0.0 : std::exp(r * t0);
  const double total = scale * (std::exp(r * t1) - base);
  double consumed = rng.exponential(1.0);
  while (consumed < total) {
    times.push_back(std::log(base + consumed / scale) / r);
    consumed += rng.exponential(1.0);
  }
  return times;
}

}  // namespace mutfreq

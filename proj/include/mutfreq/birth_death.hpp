#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mutfreq/rng.hpp"

namespace mutfreq {

struct event_cap_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kDefaultEventCap = 100'000'000;

struct BirthDeathParams {
  double birth_rate = 0.0;
  double death_rate = 0.0;

  double net_rate() const { return birth_rate - death_rate; }

  void validate() const {
    if (!(birth_rate >= 0.0) || !std::isfinite(birth_rate) ||
        !(death_rate >= 0.0) || !std::isfinite(death_rate))
      throw std::invalid_argument(
          "BirthDeathParams: rates must be finite and >= 0");
  }
};

// Distribution of a linear birth-death process at time t started from one
// cell: an atom at zero plus a geometric on {1,2,...}.
//   P[Y(t)=0] = p_zero,  P[Y(t)=k] = (1-p_zero)(1-ratio) ratio^(k-1)
struct ZeroInflatedGeometric {
  double p_zero = 0.0;
  double ratio = 0.0;

  double pmf(std::int64_t k) const {
    if (k < 0) return 0.0;
    if (k == 0) return p_zero;
    if (ratio == 0.0) return k == 1 ? 1.0 - p_zero : 0.0;
    return (1.0 - p_zero) * (1.0 - ratio) *
           std::pow(ratio, static_cast<double>(k - 1));
  }

  double pgf(double z) const {
    return p_zero + (1.0 - p_zero) * (1.0 - ratio) * z / (1.0 - ratio * z);
  }

  std::int64_t sample(Rng& rng) const {
    const double u = rng.uniform();
    if (u < p_zero) return 0;
    if (ratio == 0.0) return 1;
    // geometric on {1,2,...} with success prob 1-ratio
    return 1 + static_cast<std::int64_t>(std::floor(
                   std::log(rng.uniform_pos()) / std::log1p(ratio - 1.0)));
  }
};

// Law of Y(t) | Y(0)=1. Written in terms of expm1 of the signed exponent,
// so both the supercritical and subcritical forms stay finite for large t;
// at |lambda t| below 1e-8 the critical-case limit formula takes over.
inline ZeroInflatedGeometric bd_law_at(const BirthDeathParams& p, double t) {
  p.validate();
  if (!(t >= 0.0) || !std::isfinite(t))
    throw std::invalid_argument("bd_law_at: time must be finite and >= 0");
  const double lambda = p.net_rate();
  ZeroInflatedGeometric law;
  if (std::abs(lambda * t) < 1e-8) {
    const double denom = 1.0 + p.death_rate * t;
    law.p_zero = p.death_rate * t / denom;
    law.ratio = p.birth_rate * t / denom;
    return law;
  }
  if (lambda > 0.0) {
    const double g = -std::expm1(-lambda * t);  // 1 - e^{-lambda t} in (0,1)
    const double denom = lambda + p.death_rate * g;
    law.p_zero = p.death_rate * g / denom;
    law.ratio = p.birth_rate * g / denom;
  } else {
    const double g = -std::expm1(lambda * t);  // 1 - e^{lambda t} in (0,1)
    const double denom = p.birth_rate * g - lambda;
    law.p_zero = p.death_rate * g / denom;
    law.ratio = p.birth_rate * g / denom;
  }
  return law;
}

inline double bd_pmf(const BirthDeathParams& p, double t, std::int64_t k) {
  return bd_law_at(p, t).pmf(k);
}

// E[z^Y(t)] for z in [0,1]; equals z at t=0 and 1 at z=1.
inline double bd_pgf(const BirthDeathParams& p, double t, double z) {
  if (z < 0.0 || z > 1.0)
    throw std::invalid_argument("bd_pgf: z must lie in [0,1]");
  return bd_law_at(p, t).pgf(z);
}

inline double bd_mean(const BirthDeathParams& p, double t) {
  return std::exp(p.net_rate() * t);
}

// Exact draw of Y(t) | Y(0)=1.
inline std::int64_t sample_bd_at(const BirthDeathParams& p, double t,
                                 Rng& rng) {
  return bd_law_at(p, t).sample(rng);
}

// Ultimate extinction probability min(1, death/birth). Conventions for the
// degenerate corners: birth=0 with death>0 gives 1; both rates zero gives 0
// (the process is a frozen, immortal cell).
inline double extinction_prob(const BirthDeathParams& p) {
  p.validate();
  if (p.birth_rate == 0.0) return p.death_rate > 0.0 ? 1.0 : 0.0;
  return std::min(1.0, p.death_rate / p.birth_rate);
}

// Jump path of the aggregate count. Sizes change by +-1; zero is absorbing.
struct Trajectory {
  std::int64_t initial_size = 0;
  std::vector<double> event_times;
  std::vector<std::int64_t> sizes;

  std::int64_t final_size() const {
    return sizes.empty() ? initial_size : sizes.back();
  }

  // piecewise-constant value at time t >= 0
  std::int64_t size_at(double t) const {
    std::int64_t s = initial_size;
    for (std::size_t i = 0; i < event_times.size() && event_times[i] <= t; ++i)
      s = sizes[i];
    return s;
  }
};

struct PathHorizon {
  enum class Kind { fixed_time, reach_size, absorption };
  Kind kind = Kind::fixed_time;
  double time = 0.0;
  std::int64_t size = 0;

  static PathHorizon at_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
      throw std::invalid_argument("PathHorizon: bad time");
    return {Kind::fixed_time, t, 0};
  }
  static PathHorizon reach_size(std::int64_t n) {
    if (n <= 0) throw std::invalid_argument("PathHorizon: bad size");
    return {Kind::reach_size, 0.0, n};
  }
  static PathHorizon absorption() { return {Kind::absorption, 0.0, 0}; }
};

// Aggregate-rate jump simulation: at size i the waiting time is
// Exponential(i(birth+death)) and the event is a birth with probability
// birth/(birth+death). Size horizons on a non-growing chain may never
// trigger, hence the hard event cap.
inline Trajectory sample_bd_path(const BirthDeathParams& p, std::int64_t init,
                                 const PathHorizon& horizon, Rng& rng,
                                 std::int64_t max_events = kDefaultEventCap) {
  p.validate();
  if (init < 0) throw std::invalid_argument("sample_bd_path: init < 0");
  Trajectory traj;
  traj.initial_size = init;
  std::int64_t size = init;
  double t = 0.0;
  if (horizon.kind == PathHorizon::Kind::reach_size && size >= horizon.size)
    return traj;
  const double total_unit = p.birth_rate + p.death_rate;
  const double birth_frac = total_unit > 0.0 ? p.birth_rate / total_unit : 0.0;
  std::int64_t events = 0;
  while (size > 0) {
    const double rate = static_cast<double>(size) * total_unit;
    if (rate == 0.0) {
      if (horizon.kind != PathHorizon::Kind::fixed_time)
        throw std::runtime_error(
            "sample_bd_path: zero-rate chain cannot meet horizon");
      break;
    }
    if (++events > max_events)
      throw event_cap_error("sample_bd_path: event cap exceeded (" +
                            std::to_string(max_events) + ")");
    const double dt = rng.exponential(rate);
    if (horizon.kind == PathHorizon::Kind::fixed_time &&
        t + dt > horizon.time)
      break;
    t += dt;
    size += rng.uniform() < birth_frac ? 1 : -1;
    traj.event_times.push_back(t);
    traj.sizes.push_back(size);
    if (horizon.kind == PathHorizon::Kind::reach_size && size >= horizon.size)
      break;
  }
  return traj;
}

}  // namespace mutfreq

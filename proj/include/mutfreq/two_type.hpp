#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "mutfreq/birth_death.hpp"
#include "mutfreq/cox.hpp"
#include "mutfreq/detail/fenwick.hpp"
#include "mutfreq/rng.hpp"

namespace mutfreq {

// Rates of the two-type process: wildtype cells divide, die and mutate at
// per-cell rates alpha_a, beta_a, nu; mutant cells divide and die at
// alpha_b, beta_b. a0 is the initial wildtype count.
struct ModelParams {
  double alpha_a = 0.0;
  double beta_a = 0.0;
  double nu = 0.0;
  double alpha_b = 0.0;
  double beta_b = 0.0;
  std::int64_t a0 = 1;

  double lambda_a() const { return alpha_a - beta_a; }
  double lambda_b() const { return alpha_b - beta_b; }
  BirthDeathParams wildtype_rates() const { return {alpha_a, beta_a}; }
  BirthDeathParams clone_rates() const { return {alpha_b, beta_b}; }

  void validate() const {
    for (double r : {alpha_a, beta_a, nu, alpha_b, beta_b})
      if (!(r >= 0.0) || !std::isfinite(r))
        throw std::invalid_argument(
            "ModelParams: rates must be finite and >= 0");
    if (a0 < 1) throw std::invalid_argument("ModelParams: a0 must be >= 1");
  }
};

struct StopRule {
  enum class Kind { fixed_time, wildtype_size, total_size };
  Kind kind = Kind::fixed_time;
  double time = 0.0;
  std::int64_t size = 0;

  static StopRule at_time(double t) {
    if (!(t >= 0.0) || !std::isfinite(t))
      throw std::invalid_argument("StopRule: bad time");
    return {Kind::fixed_time, t, 0};
  }
  static StopRule wildtype_size(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("StopRule: bad size");
    return {Kind::wildtype_size, 0.0, n};
  }
  static StopRule total_size(std::int64_t n) {
    if (n < 1) throw std::invalid_argument("StopRule: bad size");
    return {Kind::total_size, 0.0, n};
  }
};

struct CloneRecord {
  double origin_time = 0.0;
  std::int64_t size = 0;
};

// One realization. Extinct clones are kept as size-0 records so that
// mutation_count equals the number of mutation events exactly. When
// reached is false, stop_time is the censoring time (extinction or frozen
// state) rather than the stop rule's trigger time.
struct TwoTypeOutcome {
  double stop_time = 0.0;
  bool reached = false;
  std::int64_t wildtype = 0;
  std::int64_t mutants = 0;
  std::int64_t mutation_count = 0;
  std::int64_t events = 0;
  std::vector<CloneRecord> clones;
};

struct SimOptions {
  std::int64_t max_events = kDefaultEventCap;
};

// Exact jump simulation of (A, B) with per-clone bookkeeping. Competing
// clocks are aggregated: the mutant side fires at rate B(alpha_b+beta_b)
// and the affected clone is then chosen proportionally to its size, which
// is equivalent in law to per-clone clocks.
inline void simulate_two_type(const ModelParams& p, const StopRule& stop,
                              Rng& rng, TwoTypeOutcome& out,
                              const SimOptions& opts = {}) {
  p.validate();
  out.stop_time = 0.0;
  out.reached = false;
  out.wildtype = p.a0;
  out.mutants = 0;
  out.mutation_count = 0;
  out.events = 0;
  out.clones.clear();

  thread_local detail::FenwickTree clone_tree;
  clone_tree.clear();

  std::int64_t a = p.a0;
  std::int64_t btot = 0;
  double t = 0.0;

  const double rate_b_unit = p.alpha_b + p.beta_b;
  const double birth_frac_b =
      rate_b_unit > 0.0 ? p.alpha_b / rate_b_unit : 0.0;

  auto triggered = [&]() {
    switch (stop.kind) {
      case StopRule::Kind::wildtype_size:
        return a >= stop.size;
      case StopRule::Kind::total_size:
        return a + btot >= stop.size;
      default:
        return false;
    }
  };

  auto finish = [&](bool reached) {
    out.stop_time = t;
    out.reached = reached;
    out.wildtype = a;
    out.mutants = btot;
    out.mutation_count = static_cast<std::int64_t>(out.clones.size());
  };

  // size rule already satisfied at t=0 (n <= a0): stop immediately
  if (triggered()) {
    finish(true);
    return;
  }

  while (true) {
    const double rate_a = static_cast<double>(a) * (p.alpha_a + p.beta_a);
    const double rate_mut = static_cast<double>(a) * p.nu;
    const double rate_b = static_cast<double>(btot) * rate_b_unit;
    const double total = rate_a + rate_mut + rate_b;

    if (total == 0.0) {
      // extinct or frozen: a fixed horizon still arrives, size rules don't
      if (stop.kind == StopRule::Kind::fixed_time) {
        t = stop.time;
        finish(true);
      } else {
        finish(false);
      }
      return;
    }

    if (++out.events > opts.max_events)
      throw event_cap_error("simulate_two_type: event cap exceeded (" +
                            std::to_string(opts.max_events) + ")");

    const double dt = rng.exponential(total);
    if (stop.kind == StopRule::Kind::fixed_time && t + dt > stop.time) {
      t = stop.time;
      finish(true);
      return;
    }
    t += dt;

    const double u = rng.uniform() * total;
    if (u < rate_a + rate_mut) {
      const double ua = u;
      if (ua < static_cast<double>(a) * p.alpha_a) {
        ++a;
      } else if (ua < rate_a) {
        --a;
        if (a == 0 && stop.kind == StopRule::Kind::wildtype_size) {
          finish(false);  // wildtype extinct, tau_n = infinity
          return;
        }
      } else {
        out.clones.push_back({t, 1});
        clone_tree.append(1);
        ++btot;
      }
    } else {
      const std::size_t idx =
          clone_tree.find(static_cast<std::int64_t>(rng.uniform() *
                                                    static_cast<double>(btot)));
      if (rng.uniform() < birth_frac_b) {
        ++out.clones[idx].size;
        clone_tree.add(idx, 1);
        ++btot;
      } else {
        --out.clones[idx].size;
        clone_tree.add(idx, -1);
        --btot;
      }
    }

    if (triggered()) {
      finish(true);
      return;
    }
  }
}

inline TwoTypeOutcome simulate_two_type(const ModelParams& p,
                                        const StopRule& stop, Rng& rng,
                                        const SimOptions& opts = {}) {
  TwoTypeOutcome out;
  simulate_two_type(p, stop, rng, out, opts);
  return out;
}

// B(tau_n) sampled through the representation as a sum over the n-1
// wildtype cells present just before tau_n: each has an Exponential(alpha_a)
// age xi, a Poisson(nu xi) number of clones, and clone ages uniform on
// [0, xi]. Requires a pure-birth wildtype started from a single cell; other
// configurations are rejected rather than extrapolated.
inline std::int64_t simulate_b_tau_yule(const ModelParams& p, std::int64_t n,
                                        Rng& rng) {
  p.validate();
  if (p.beta_a != 0.0)
    throw std::invalid_argument("simulate_b_tau_yule: requires beta_a = 0");
  if (p.a0 != 1)
    throw std::invalid_argument("simulate_b_tau_yule: requires a0 = 1");
  if (n < 1) throw std::invalid_argument("simulate_b_tau_yule: n >= 1");
  const BirthDeathParams clone = p.clone_rates();
  std::int64_t total = 0;
  for (std::int64_t i = 0; i + 1 < n; ++i) {
    const double xi = rng.exponential(p.alpha_a);
    const std::int64_t mutations = rng.poisson(p.nu * xi);
    for (std::int64_t j = 0; j < mutations; ++j) {
      const double age = rng.uniform() * xi;
      total += bd_law_at(clone, age).sample(rng);
    }
  }
  return total;
}

struct TwoTypeCounts {
  double time = 0.0;
  std::int64_t wildtype = 0;
  std::int64_t mutants = 0;
  std::int64_t mutation_count = 0;
};

// Population counts at a fixed time by the direct construction: the
// wildtype path is walked as a jump chain while the mutation stream is
// inverted from a unit-rate Poisson clock against the accumulated wildtype
// exposure, and each mutation contributes an independent clone size drawn
// from the single-clone law at its age. Identical in law to
// simulate_two_type with a fixed-time stop, at a fraction of the events.
inline TwoTypeCounts sample_two_type_counts_at(const ModelParams& p,
                                               double horizon, Rng& rng,
                                               const SimOptions& opts = {}) {
  p.validate();
  if (!(horizon >= 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument("sample_two_type_counts_at: bad horizon");
  const BirthDeathParams clone = p.clone_rates();
  TwoTypeCounts out;
  out.time = horizon;
  std::int64_t a = p.a0;
  double t = 0.0;
  const double unit = p.alpha_a + p.beta_a;
  const double birth_frac = unit > 0.0 ? p.alpha_a / unit : 0.0;
  double clock = rng.exponential(1.0);  // next unit-rate mutation arrival
  double consumed = 0.0;                // exposure already converted
  std::int64_t events = 0;
  while (a > 0) {
    const double rate = static_cast<double>(a) * unit;
    double seg_end = horizon;
    if (rate > 0.0) seg_end = std::min(horizon, t + rng.exponential(rate));
    const double mut_rate = p.nu * static_cast<double>(a);
    if (mut_rate > 0.0) {
      const double avail = mut_rate * (seg_end - t);
      while (consumed + avail >= clock) {
        const double age = horizon - (t + (clock - consumed) / mut_rate);
        ++out.mutation_count;
        out.mutants += bd_law_at(clone, age).sample(rng);
        clock += rng.exponential(1.0);
      }
      consumed += avail;
    }
    if (seg_end == horizon) break;
    t = seg_end;
    if (++events > opts.max_events)
      throw event_cap_error(
          "sample_two_type_counts_at: event cap exceeded (" +
          std::to_string(opts.max_events) + ")");
    a += rng.uniform() < birth_frac ? 1 : -1;
  }
  out.wildtype = a;
  return out;
}

// Inclusive size window; hi < 0 means unbounded above.
struct SizeRange {
  std::int64_t lo = 0;
  std::int64_t hi = -1;

  bool contains(std::int64_t k) const {
    return k >= lo && (hi < 0 || k <= hi);
  }
  static SizeRange at_least(std::int64_t k) { return {k, -1}; }
  static SizeRange exactly(std::int64_t k) { return {k, k}; }
};

// Number of clones whose size falls in the window. Size-0 (extinct) clones
// participate, so censusing {0} is meaningful.
inline std::int64_t clone_census(const TwoTypeOutcome& outcome,
                                 const SizeRange& range) {
  std::int64_t c = 0;
  for (const auto& clone : outcome.clones) c += range.contains(clone.size);
  return c;
}

template <class Pred>
inline std::int64_t clone_census_if(const TwoTypeOutcome& outcome,
                                    Pred&& pred) {
  std::int64_t c = 0;
  for (const auto& clone : outcome.clones) c += static_cast<bool>(pred(clone.size));
  return c;
}

// Largest clone size; 0 when there are no clones (empty-max convention).
inline std::int64_t largest_clone(const TwoTypeOutcome& outcome) {
  std::int64_t m = 0;
  for (const auto& clone : outcome.clones) m = std::max(m, clone.size);
  return m;
}

// Two-type model over a deterministic exponential wildtype w0 e^{rate t}
// (the generalized-wildtype mode): mutation times are Cox with intensity
// nu w(t), clone sizes are drawn from the exact single-clone law at their
// age. Only the fixed-time stop makes sense here.
inline TwoTypeOutcome simulate_two_type_deterministic(
    const DeterministicWildtype& w, double nu,
    const BirthDeathParams& clone, double horizon, Rng& rng) {
  w.validate();
  clone.validate();
  if (!(horizon >= 0.0) || !std::isfinite(horizon))
    throw std::invalid_argument(
        "simulate_two_type_deterministic: bad horizon");
  TwoTypeOutcome out;
  out.stop_time = horizon;
  out.reached = true;
  const auto times = sample_cox_times(w, nu, 0.0, horizon, rng);
  for (double ti : times) {
    const std::int64_t size = bd_law_at(clone, horizon - ti).sample(rng);
    out.clones.push_back({ti, size});
    out.mutants += size;
  }
  out.mutation_count = static_cast<std::int64_t>(out.clones.size());
  out.wildtype = static_cast<std::int64_t>(
      std::llround(w.w0 * std::exp(w.growth_rate * horizon)));
  return out;
}

}  // namespace mutfreq

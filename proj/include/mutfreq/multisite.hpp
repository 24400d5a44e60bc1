#pragma once

#include <bit>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "mutfreq/detail/fenwick.hpp"
#include "mutfreq/replicates.hpp"
#include "mutfreq/rng.hpp"
#include "mutfreq/two_type.hpp"

namespace mutfreq {

// Mutation sets are fixed-width bit vectors over sites {0,...,S-1}.
using Genotype = std::vector<std::uint64_t>;

inline int genotype_words(int sites) { return (sites + 63) / 64; }

inline bool genotype_test(const Genotype& g, int site) {
  return (g[static_cast<std::size_t>(site >> 6)] >>
          (static_cast<unsigned>(site) & 63u)) &
         1u;
}

inline void genotype_set(Genotype& g, int site) {
  g[static_cast<std::size_t>(site >> 6)] |= std::uint64_t{1}
                                            << (static_cast<unsigned>(site) &
                                                63u);
}

inline int genotype_popcount(const Genotype& g) {
  int c = 0;
  for (std::uint64_t w : g) c += std::popcount(w);
  return c;
}

struct MultisiteParams {
  double birth_rate = 0.0;     // division rate a
  double death_rate = 0.0;     // death rate b
  double mutation_prob = 0.0;  // per-site per-division probability mu
  int sites = 1;
  std::int64_t c0 = 1;
  // Props-10/11 calibration replaces b by b(1-mu); off by default so plain
  // runs use the death rate as given.
  bool limit_calibrated = false;

  double effective_death_rate() const {
    return limit_calibrated ? death_rate * (1.0 - mutation_prob) : death_rate;
  }

  void validate() const {
    if (!(birth_rate > 0.0) || !std::isfinite(birth_rate) ||
        !(death_rate >= 0.0) || !std::isfinite(death_rate))
      throw std::invalid_argument("MultisiteParams: bad rates");
    if (!(birth_rate > death_rate))
      throw std::invalid_argument(
          "MultisiteParams: supercritical growth required (a > b)");
    if (mutation_prob < 0.0 || mutation_prob > 1.0)
      throw std::invalid_argument("MultisiteParams: mu must lie in [0,1]");
    if (sites < 1) throw std::invalid_argument("MultisiteParams: sites < 1");
    if (c0 < 1) throw std::invalid_argument("MultisiteParams: c0 < 1");
  }
};

struct GenotypeClass {
  Genotype mutations;
  std::int64_t count = 0;
};

struct GenotypePopulation {
  int sites = 0;
  std::vector<GenotypeClass> classes;  // distinct genotypes, counts >= 1

  std::int64_t total() const {
    std::int64_t t = 0;
    for (const auto& c : classes) t += c.count;
    return t;
  }
};

namespace detail {

struct GenotypeHash {
  std::size_t operator()(const Genotype& g) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (std::uint64_t w : g) {
      h ^= w;
      h *= 0x100000001b3ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

// Draws the newly mutated sites of one division: a Binomial(#unmutated, mu)
// count, positions uniform without replacement, each assigned to exactly
// one daughter with equal probability. Returns masks for the two daughters.
inline void draw_new_mutations(const Genotype& parent, int sites, double mu,
                               Rng& rng, Genotype& mask1, Genotype& mask2,
                               std::vector<int>& scratch) {
  const int unmutated = sites - genotype_popcount(parent);
  mask1.assign(parent.size(), 0);
  mask2.assign(parent.size(), 0);
  const std::int64_t m = rng.binomial(unmutated, mu);
  if (m == 0) return;
  scratch.clear();
  for (int s = 0; s < sites; ++s)
    if (!genotype_test(parent, s)) scratch.push_back(s);
  // partial Fisher-Yates for m distinct positions
  for (std::int64_t j = 0; j < m; ++j) {
    const auto pick = static_cast<std::size_t>(
        j + static_cast<std::int64_t>(
                rng.uniform_index(scratch.size() - static_cast<std::size_t>(j))));
    std::swap(scratch[static_cast<std::size_t>(j)], scratch[pick]);
    Genotype& mask = rng.bernoulli(0.5) ? mask1 : mask2;
    genotype_set(mask, scratch[static_cast<std::size_t>(j)]);
  }
}

}  // namespace detail

// Both daughters inherit the parent's mutations; per unmutated site,
// exactly one daughter gains the mutation with probability mu (split evenly
// between the two). Back mutation does not occur.
inline std::pair<Genotype, Genotype> divide_cell(const Genotype& parent,
                                                 double mu, int sites,
                                                 Rng& rng) {
  Genotype mask1, mask2;
  std::vector<int> scratch;
  detail::draw_new_mutations(parent, sites, mu, rng, mask1, mask2, scratch);
  Genotype d1 = parent, d2 = parent;
  for (std::size_t w = 0; w < parent.size(); ++w) {
    d1[w] |= mask1[w];
    d2[w] |= mask2[w];
  }
  return {std::move(d1), std::move(d2)};
}

struct MultisiteOutcome {
  GenotypePopulation population;
  bool reached = false;
  double stop_time = 0.0;
  std::int64_t events = 0;
};

// Exact jump simulation over genotype classes: division at rate a per cell,
// death at rate b per cell, the affected cell picked uniformly (class
// proportional to count). Divisions replace one cell by two daughters via
// the mutation mechanism above; new genotypes split off their own classes.
inline MultisiteOutcome simulate_multisite(const MultisiteParams& p,
                                           const StopRule& stop, Rng& rng,
                                           const SimOptions& opts = {}) {
  p.validate();
  if (stop.kind == StopRule::Kind::wildtype_size)
    throw std::invalid_argument(
        "simulate_multisite: wildtype-size stop rule does not apply");

  struct Workspace {
    std::vector<Genotype> genotypes;
    std::vector<std::int64_t> counts;
    std::vector<int> unmutated;
    std::unordered_map<Genotype, std::size_t, detail::GenotypeHash> index;
    detail::FenwickTree tree;
    Genotype mask1, mask2, daughter;
    std::vector<int> scratch;

    void reset(int sites, std::int64_t c0) {
      genotypes.clear();
      counts.clear();
      unmutated.clear();
      index.clear();
      tree.clear();
      genotypes.emplace_back(
          static_cast<std::size_t>(genotype_words(sites)), 0);
      counts.push_back(c0);
      unmutated.push_back(sites);
      index.emplace(genotypes[0], 0);
      tree.append(c0);
    }

    std::size_t locate(const Genotype& g, int sites) {
      const auto it = index.find(g);
      if (it != index.end()) return it->second;
      const std::size_t id = genotypes.size();
      genotypes.push_back(g);
      counts.push_back(0);
      unmutated.push_back(sites - genotype_popcount(g));
      index.emplace(g, id);
      tree.append(0);
      return id;
    }
  };
  thread_local Workspace ws;
  ws.reset(p.sites, p.c0);

  MultisiteOutcome out;
  const double b_eff = p.effective_death_rate();
  const double unit_rate = p.birth_rate + b_eff;
  const double division_frac = p.birth_rate / unit_rate;
  std::int64_t population = p.c0;
  double t = 0.0;

  auto finish = [&](bool reached) {
    out.reached = reached;
    out.stop_time = t;
    out.population.sites = p.sites;
    out.population.classes.clear();
    for (std::size_t i = 0; i < ws.genotypes.size(); ++i)
      if (ws.counts[i] > 0)
        out.population.classes.push_back({ws.genotypes[i], ws.counts[i]});
  };

  if (stop.kind == StopRule::Kind::total_size && population >= stop.size) {
    finish(true);
    return out;
  }

  while (true) {
    if (population == 0) {
      if (stop.kind == StopRule::Kind::fixed_time) {
        t = stop.time;
        finish(true);
      } else {
        finish(false);
      }
      return out;
    }
    if (++out.events > opts.max_events)
      throw event_cap_error("simulate_multisite: event cap exceeded (" +
                            std::to_string(opts.max_events) + ")");
    const double rate = static_cast<double>(population) * unit_rate;
    const double dt = rng.exponential(rate);
    if (stop.kind == StopRule::Kind::fixed_time && t + dt > stop.time) {
      t = stop.time;
      finish(true);
      return out;
    }
    t += dt;

    const std::size_t cls = ws.tree.find(static_cast<std::int64_t>(
        rng.uniform() * static_cast<double>(population)));
    if (rng.uniform() < division_frac) {
      detail::draw_new_mutations(ws.genotypes[cls], p.sites, p.mutation_prob,
                                 rng, ws.mask1, ws.mask2, ws.scratch);
      bool any1 = false, any2 = false;
      for (std::uint64_t w : ws.mask1) any1 |= w != 0;
      for (std::uint64_t w : ws.mask2) any2 |= w != 0;
      if (!any1 && !any2) {
        ws.counts[cls] += 1;  // parent replaced by two identical daughters
        ws.tree.add(cls, 1);
      } else {
        ws.counts[cls] -= 1;
        ws.tree.add(cls, -1);
        for (const Genotype* mask : {&ws.mask1, &ws.mask2}) {
          ws.daughter = ws.genotypes[cls];
          for (std::size_t w = 0; w < ws.daughter.size(); ++w)
            ws.daughter[w] |= (*mask)[w];
          const std::size_t id = ws.locate(ws.daughter, p.sites);
          ws.counts[id] += 1;
          ws.tree.add(id, 1);
        }
      }
      ++population;
      if (stop.kind == StopRule::Kind::total_size && population >= stop.size) {
        finish(true);
        return out;
      }
    } else {
      ws.counts[cls] -= 1;
      ws.tree.add(cls, -1);
      --population;
    }
  }
}

// Per-site mutant counts folded into the site frequency spectrum: entry k
// counts the sites mutated in exactly k cells, including k = 0. Entries sum
// to the number of sites.
inline std::vector<std::int64_t> sfs_of(const GenotypePopulation& pop) {
  std::vector<std::int64_t> hist(
      static_cast<std::size_t>(pop.total()) + 1, 0);
  for (int s = 0; s < pop.sites; ++s) {
    std::int64_t mutated = 0;
    for (const auto& cls : pop.classes)
      if (genotype_test(cls.mutations, s)) mutated += cls.count;
    hist[static_cast<std::size_t>(mutated)] += 1;
  }
  return hist;
}

struct SfsEstimate {
  std::vector<double> mean;  // replicate-averaged count per k
  std::vector<double> se;    // standard error of each mean
  std::int64_t reps = 0;     // replicates kept
  std::int64_t discarded = 0;
};

// Replicate-averaged site frequency spectrum with per-k standard errors.
// Sums are integer-valued, so the result is bit-identical for any worker
// count.
inline SfsEstimate mean_sfs_empirical(const MultisiteParams& params,
                                      const StopRule& stop,
                                      const ReplicateOptions& opts) {
  params.validate();
  opts.validate();

  struct State {
    std::vector<std::int64_t> sum, sumsq;
    std::int64_t kept = 0;
    std::int64_t discarded = 0;

    void absorb(const std::vector<std::int64_t>& sfs) {
      if (sfs.size() > sum.size()) {
        sum.resize(sfs.size(), 0);
        sumsq.resize(sfs.size(), 0);
      }
      for (std::size_t k = 0; k < sfs.size(); ++k) {
        sum[k] += sfs[k];
        sumsq[k] += sfs[k] * sfs[k];
      }
      ++kept;
    }

    void merge(State&& other) {
      if (other.sum.size() > sum.size()) {
        sum.resize(other.sum.size(), 0);
        sumsq.resize(other.sum.size(), 0);
      }
      for (std::size_t k = 0; k < other.sum.size(); ++k) {
        sum[k] += other.sum[k];
        sumsq[k] += other.sumsq[k];
      }
      kept += other.kept;
      discarded += other.discarded;
    }
  };

  const SimOptions sim_opts{opts.max_events};
  State merged = replicate_reduce<State>(
      opts.reps, opts.threads, opts.root_seed,
      [&](State& state, std::int64_t, Rng& rng) {
        const MultisiteOutcome o =
            simulate_multisite(params, stop, rng, sim_opts);
        if (opts.conditioning == Conditioning::on_reached && !o.reached) {
          ++state.discarded;
          return;
        }
        state.absorb(sfs_of(o.population));
      });

  if (merged.kept == 0)
    throw degenerate_run_error(
        "mean_sfs_empirical: all " + std::to_string(merged.discarded) +
        " replicates were discarded by conditioning");

  SfsEstimate est;
  est.reps = merged.kept;
  est.discarded = merged.discarded;
  const double r = static_cast<double>(merged.kept);
  est.mean.resize(merged.sum.size());
  est.se.resize(merged.sum.size());
  for (std::size_t k = 0; k < merged.sum.size(); ++k) {
    const double mean = static_cast<double>(merged.sum[k]) / r;
    est.mean[k] = mean;
    if (merged.kept > 1) {
      const double var =
          (static_cast<double>(merged.sumsq[k]) - r * mean * mean) / (r - 1.0);
      est.se[k] = std::sqrt(std::max(0.0, var) / r);
    }
  }
  return est;
}

}  // namespace mutfreq

#pragma once

#include <atomic>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "mutfreq/rng.hpp"
#include "mutfreq/stats.hpp"
#include "mutfreq/two_type.hpp"

namespace mutfreq {

struct degenerate_run_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Conditioning { none, on_reached };

struct ReplicateOptions {
  std::int64_t reps = 1;
  std::uint64_t root_seed = 0;
  Conditioning conditioning = Conditioning::none;
  int threads = 0;  // 0 = hardware concurrency
  std::int64_t max_events = kDefaultEventCap;

  void validate() const {
    if (reps < 1)
      throw std::invalid_argument("ReplicateOptions: reps must be >= 1");
  }
};

namespace detail {

inline int resolve_threads(int requested) {
  if (requested > 0) return requested;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

inline constexpr std::int64_t kChunkSize = 512;

}  // namespace detail

// Runs body(state, replicate_index, rng) over fixed-size index chunks and
// merges the per-chunk states in chunk order. Chunk boundaries and
// per-replicate seeds depend only on the index, never on scheduling, so the
// merged result is identical for any worker count.
template <class State, class Body>
State replicate_reduce(std::int64_t reps, int threads, std::uint64_t root_seed,
                       Body&& body) {
  threads = detail::resolve_threads(threads);
  const std::int64_t nchunks =
      (reps + detail::kChunkSize - 1) / detail::kChunkSize;
  std::vector<State> partial(static_cast<std::size_t>(nchunks));
  std::atomic<std::int64_t> next_chunk{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&]() {
    try {
      while (true) {
        const std::int64_t c = next_chunk.fetch_add(1);
        if (c >= nchunks) break;
        State& state = partial[static_cast<std::size_t>(c)];
        const std::int64_t lo = c * detail::kChunkSize;
        const std::int64_t hi = std::min(reps, lo + detail::kChunkSize);
        for (std::int64_t i = lo; i < hi; ++i) {
          Rng rng =
              Rng::for_replicate(root_seed, static_cast<std::uint64_t>(i));
          body(state, i, rng);
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mutex);
      if (!failure) failure = std::current_exception();
    }
  };

  if (threads <= 1 || nchunks == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    const auto n = static_cast<int>(std::min<std::int64_t>(threads, nchunks));
    pool.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  State merged = std::move(partial[0]);
  for (std::size_t c = 1; c < partial.size(); ++c)
    merged.merge(std::move(partial[c]));
  return merged;
}

struct RunResult {
  EmpiricalPmf mutant_pmf;
  std::string archive;  // empty unless archiving was requested

  double discard_rate() const {
    const double total =
        static_cast<double>(mutant_pmf.reps + mutant_pmf.discard_count);
    return total > 0.0
               ? static_cast<double>(mutant_pmf.discard_count) / total
               : 0.0;
  }
};

namespace detail {

// one replicate per record: seed, stop time, final counts, clone list
inline void append_archive_line(std::string& buf, std::int64_t index,
                                std::uint64_t root_seed,
                                const TwoTypeOutcome& o) {
  std::uint64_t sm = static_cast<std::uint64_t>(index);
  const std::uint64_t seed = root_seed ^ splitmix64(sm);
  char head[192];
  std::snprintf(head, sizeof head,
                "rep=%lld seed=%016llx stop_time=%.17g reached=%d "
                "wildtype=%lld mutants=%lld clones=",
                static_cast<long long>(index),
                static_cast<unsigned long long>(seed), o.stop_time,
                o.reached ? 1 : 0, static_cast<long long>(o.wildtype),
                static_cast<long long>(o.mutants));
  buf += head;
  for (std::size_t i = 0; i < o.clones.size(); ++i) {
    char item[64];
    std::snprintf(item, sizeof item, "%s%.17g:%lld", i ? ";" : "",
                  o.clones[i].origin_time,
                  static_cast<long long>(o.clones[i].size));
    buf += item;
  }
  buf += '\n';
}

}  // namespace detail

// Independent replicates of the two-type simulation with index-derived
// seeds. conditioning = on_reached discards replicates whose stop rule never
// triggered (rejection sampling for the conditioned laws) and reports the
// discard count. Throws degenerate_run_error if everything was discarded.
inline RunResult run_replicates(const ModelParams& params,
                                const StopRule& stop,
                                const ReplicateOptions& opts,
                                bool keep_archive = false) {
  params.validate();
  opts.validate();

  struct State {
    std::map<std::int64_t, std::int64_t> counts;
    std::int64_t kept = 0;
    std::int64_t discarded = 0;
    std::string archive;
    TwoTypeOutcome scratch;

    void merge(State&& other) {
      for (const auto& [k, c] : other.counts) counts[k] += c;
      kept += other.kept;
      discarded += other.discarded;
      archive += other.archive;
    }
  };

  const SimOptions sim_opts{opts.max_events};
  State merged = replicate_reduce<State>(
      opts.reps, opts.threads, opts.root_seed,
      [&](State& state, std::int64_t index, Rng& rng) {
        simulate_two_type(params, stop, rng, state.scratch, sim_opts);
        const TwoTypeOutcome& o = state.scratch;
        if (opts.conditioning == Conditioning::on_reached && !o.reached) {
          ++state.discarded;
          return;
        }
        ++state.kept;
        ++state.counts[o.mutants];
        if (keep_archive)
          detail::append_archive_line(state.archive, index, opts.root_seed, o);
      });

  if (merged.kept == 0)
    throw degenerate_run_error(
        "run_replicates: all " + std::to_string(merged.discarded) +
        " replicates were discarded by conditioning");

  RunResult result;
  result.mutant_pmf.counts = std::move(merged.counts);
  result.mutant_pmf.reps = merged.kept;
  result.mutant_pmf.discard_count = merged.discarded;
  result.archive = std::move(merged.archive);
  return result;
}

}  // namespace mutfreq

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "mutfreq/birth_death.hpp"
#include "mutfreq/rng.hpp"

using namespace mutfreq;

TEST_CASE("pgf identities: t=0 gives z, z=1 gives 1") {
  const BirthDeathParams p{1.3, 0.6};
  for (double z : {0.0, 0.2, 0.7, 1.0})
    CHECK(bd_pgf(p, 0.0, z) == doctest::Approx(z).epsilon(1e-12));
  for (double t : {0.0, 0.5, 3.0})
    CHECK(bd_pgf(p, t, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("pure-birth pgf at t=ln 2, z=1/2 is 1/3") {
  // Y(t) geometric with parameter e^{-t}: pgf = z e^{-t}/(1 - z(1-e^{-t}))
  const double v = bd_pgf({1.0, 0.0}, std::log(2.0), 0.5);
  CHECK(v == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("pgf agrees with the raw rate formula away from singularities") {
  const BirthDeathParams p{1.1, 0.4};
  const double lambda = p.net_rate();
  for (double t : {0.3, 1.7}) {
    for (double z : {0.1, 0.5, 0.9}) {
      const double e = std::exp(-lambda * t);
      const double raw =
          (p.death_rate * (z - 1.0) - e * (p.birth_rate * z - p.death_rate)) /
          (p.birth_rate * (z - 1.0) - e * (p.birth_rate * z - p.death_rate));
      CHECK(bd_pgf(p, t, z) == doctest::Approx(raw).epsilon(1e-12));
    }
  }
}

TEST_CASE("critical-limit branch is continuous in lambda") {
  // straddle the 1e-8 switch: values must agree to the branch error
  const double near = bd_pgf({1.0, 1.0 - 2e-8}, 1.0, 0.5);
  const double at = bd_pgf({1.0, 1.0}, 1.0, 0.5);
  CHECK(std::abs(near - at) < 1e-7);
}

TEST_CASE("pmf sums to one and matches the pgf") {
  for (auto p : {BirthDeathParams{1.0, 0.0}, {1.0, 0.5}, {0.8, 0.8},
                 {0.4, 0.9}, {0.0, 0.7}}) {
    double sum = 0.0, pgf_sum = 0.0;
    const double z = 0.63, t = 1.9;
    for (std::int64_t k = 0; k < 400; ++k) {
      const double mass = bd_pmf(p, t, k);
      sum += mass;
      pgf_sum += mass * std::pow(z, static_cast<double>(k));
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(pgf_sum == doctest::Approx(bd_pgf(p, t, z)).epsilon(1e-9));
  }
}

TEST_CASE("extinction probability") {
  CHECK(extinction_prob({2.0, 1.0}) == doctest::Approx(0.5));
  CHECK(extinction_prob({1.0, 0.0}) == 0.0);
  CHECK(extinction_prob({1.0, 2.0}) == 1.0);
  CHECK(extinction_prob({0.0, 1.0}) == 1.0);
  CHECK(extinction_prob({0.0, 0.0}) == 0.0);
}

TEST_CASE("zero-rate path is constant") {
  Rng rng(1);
  const auto traj =
      sample_bd_path({0.0, 0.0}, 5, PathHorizon::at_time(10.0), rng);
  CHECK(traj.event_times.empty());
  CHECK(traj.final_size() == 5);
}

TEST_CASE("zero start is absorbing") {
  Rng rng(2);
  const auto traj =
      sample_bd_path({1.0, 0.5}, 0, PathHorizon::at_time(10.0), rng);
  CHECK(traj.event_times.empty());
  CHECK(traj.final_size() == 0);
}

TEST_CASE("paths jump by one and absorb at zero") {
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    const auto traj =
        sample_bd_path({0.9, 1.1}, 3, PathHorizon::absorption(), rng);
    std::int64_t prev = traj.initial_size;
    double prev_t = 0.0;
    for (std::size_t j = 0; j < traj.sizes.size(); ++j) {
      CHECK(std::abs(traj.sizes[j] - prev) == 1);
      CHECK(traj.event_times[j] > prev_t);
      prev = traj.sizes[j];
      prev_t = traj.event_times[j];
    }
    CHECK(traj.final_size() == 0);
  }
}

TEST_CASE("replicate mean of pure-birth final size reaches e") {
  Rng rng(4);
  const int reps = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (int i = 0; i < reps; ++i) {
    const auto traj =
        sample_bd_path({1.0, 0.0}, 1, PathHorizon::at_time(1.0), rng);
    const auto s = static_cast<double>(traj.final_size());
    sum += s;
    sumsq += s * s;
  }
  const double mean = sum / reps;
  const double se = std::sqrt((sumsq / reps - mean * mean) / reps);
  CHECK(std::abs(mean - std::exp(1.0)) < 4.0 * se);
}

TEST_CASE("replicate means match e^{lambda t} across regimes") {
  const double t = 3.0;
  int seed = 10;
  for (double lambda : {-0.5, 0.0, 0.5}) {
    const BirthDeathParams p{0.75 + lambda / 2.0, 0.75 - lambda / 2.0};
    Rng rng(static_cast<std::uint64_t>(seed++));
    const int reps = 100000;
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < reps; ++i) {
      const auto traj = sample_bd_path(p, 1, PathHorizon::at_time(t), rng);
      const auto s = static_cast<double>(traj.final_size());
      sum += s;
      sumsq += s * s;
    }
    const double mean = sum / reps;
    const double se = std::sqrt((sumsq / reps - mean * mean) / reps);
    CHECK(std::abs(mean - std::exp(lambda * t)) < 4.0 * se);
  }
}

TEST_CASE("empirical pgf matches bd_pgf at several z") {
  const BirthDeathParams p{1.0, 0.4};
  const double t = 2.0;
  const int reps = 100000;
  int seed = 20;
  for (double z : {0.2, 0.5, 0.8}) {
    Rng rng(static_cast<std::uint64_t>(seed++));
    double sum = 0.0, sumsq = 0.0;
    for (int i = 0; i < reps; ++i) {
      const double v =
          std::pow(z, static_cast<double>(sample_bd_at(p, t, rng)));
      sum += v;
      sumsq += v * v;
    }
    const double mean = sum / reps;
    const double se = std::sqrt((sumsq / reps - mean * mean) / reps);
    CHECK(std::abs(mean - bd_pgf(p, t, z)) < 4.0 * se);
  }
}

TEST_CASE("empirical extinction frequency matches death/birth") {
  // "extinct by t=50" vs "extinct before escaping to size 200" differ by
  // O(e^{-lambda 50}) ~ 1e-11, far below the Monte Carlo error; the escape
  // horizon keeps surviving paths from generating e^{25} events
  const BirthDeathParams p{1.0, 0.5};
  Rng rng(30);
  const int reps = 100000;
  int extinct = 0;
  for (int i = 0; i < reps; ++i)
    extinct += sample_bd_path(p, 1, PathHorizon::reach_size(200), rng)
                   .final_size() == 0;
  const double freq = static_cast<double>(extinct) / reps;
  const double se = std::sqrt(freq * (1.0 - freq) / reps);
  CHECK(std::abs(freq - 0.5) < 4.0 * se);
}

TEST_CASE("exact one-step law sampler matches the pmf") {
  const BirthDeathParams p{0.7, 0.7};
  const double t = 2.5;
  Rng rng(40);
  const int reps = 200000;
  std::vector<std::int64_t> counts(12, 0);
  for (int i = 0; i < reps; ++i) {
    const auto k = sample_bd_at(p, t, rng);
    if (k < 12) ++counts[static_cast<std::size_t>(k)];
  }
  for (std::int64_t k = 0; k < 6; ++k) {
    const double expect = bd_pmf(p, t, k);
    const double freq =
        static_cast<double>(counts[static_cast<std::size_t>(k)]) / reps;
    const double se = std::sqrt(expect * (1.0 - expect) / reps);
    CHECK(std::abs(freq - expect) < 4.0 * se + 1e-12);
  }
}

TEST_CASE("size horizon on a non-growing chain errors via the event cap") {
  // critical chain from 3000: absorption needs >= 3000 events, the target
  // is unreachable in 2000, so the cap must fire
  Rng rng(50);
  CHECK_THROWS_AS(sample_bd_path({1.0, 1.0}, 3000,
                                 PathHorizon::reach_size(1000000000), rng,
                                 2000),
                  event_cap_error);
}

TEST_CASE("bad parameters are rejected") {
  Rng rng(60);
  CHECK_THROWS_AS(bd_pgf({-1.0, 0.0}, 1.0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(bd_pgf({1.0, 0.0}, 1.0, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(
      sample_bd_path({1.0, 0.0}, -1, PathHorizon::at_time(1.0), rng),
      std::invalid_argument);
}

#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace mutfreq {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

}  // namespace detail

// xoshiro256++ with hand-rolled distribution draws. std::<random>
// distributions are implementation-defined, so everything downstream of a
// seed is generated here to keep replicate streams reproducible across
// compilers and worker counts.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) {
    std::uint64_t sm = seed;
    for (auto& w : state_) w = detail::splitmix64(sm);
  }

  // Independent stream for one replicate; index-derived, so results do not
  // depend on which worker runs which replicate.
  static Rng for_replicate(std::uint64_t root_seed, std::uint64_t index) {
    std::uint64_t sm = index;
    return Rng(root_seed ^ detail::splitmix64(sm));
  }

  std::uint64_t next_u64() {
    auto& s = state_;
    const std::uint64_t result = detail::rotl(s[0] + s[3], 23) + s[0];
    const std::uint64_t t = s[1] << 17;
    s[2] ^= s[0];
    s[3] ^= s[1];
    s[1] ^= s[2];
    s[0] ^= s[3];
    s[2] ^= t;
    s[3] = detail::rotl(s[3], 45);
    return result;
  }

  // uniform on (0,1]; never 0, safe under log()
  double uniform_pos() {
    return static_cast<double>((next_u64() >> 11) + 1) * 0x1.0p-53;
  }

  // uniform on [0,1)
  double uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  bool bernoulli(double p) { return uniform() < p; }

  double exponential(double rate) {
    return -std::log(uniform_pos()) / rate;
  }

  // unbiased integer in [0,n)
  std::uint64_t uniform_index(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(next_u64()) * n) >> 64);
  }

  // counts unit-rate arrivals in [0,mean]; O(mean) but exact
  std::int64_t poisson(double mean) {
    if (mean < 0.0 || !std::isfinite(mean))
      throw std::invalid_argument("poisson: mean must be finite and >= 0");
    if (mean == 0.0) return 0;
    std::int64_t k = 0;
    double acc = -std::log(uniform_pos());
    while (acc <= mean) {
      ++k;
      acc -= std::log(uniform_pos());
    }
    return k;
  }

  // CDF inversion walk, O(1 + n*p) expected
  std::int64_t binomial(std::int64_t n, double p) {
    if (n < 0 || p < 0.0 || p > 1.0)
      throw std::invalid_argument("binomial: need n >= 0 and p in [0,1]");
    if (n == 0 || p == 0.0) return 0;
    if (p == 1.0) return n;
    if (p > 0.5) return n - binomial(n, 1.0 - p);
    const double q = std::pow(1.0 - p, static_cast<double>(n));
    if (q == 0.0) {
      // (1-p)^n underflows; count trials directly
      std::int64_t k = 0;
      for (std::int64_t i = 0; i < n; ++i) k += bernoulli(p);
      return k;
    }
    const double ratio = p / (1.0 - p);
    double u = uniform_pos();
    double pmf = q, cdf = q;
    std::int64_t k = 0;
    while (u > cdf && k < n) {
      ++k;
      pmf *= ratio * static_cast<double>(n - k + 1) / static_cast<double>(k);
      cdf += pmf;
    }
    return k;
  }

 private:
  std::uint64_t state_[4];
};

}  // namespace mutfreq

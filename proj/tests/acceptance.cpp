// Acceptance experiments: one numbered criterion per invocation (or "all"),
// each printing a single PASS/FAIL line with the measured numbers. The CLI
// binary path may be passed as the second argument; it is only needed by
// criterion 13.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mutfreq/angerer.hpp"
#include "mutfreq/clone_law.hpp"
#include "mutfreq/compound.hpp"
#include "mutfreq/finite_size.hpp"
#include "mutfreq/limits.hpp"
#include "mutfreq/multisite.hpp"
#include "mutfreq/replicates.hpp"
#include "mutfreq/stats.hpp"
#include "mutfreq/two_type.hpp"

using namespace mutfreq;

namespace {

struct Criterion {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }

  void note(const std::string& what) {
    if (!detail.empty()) detail += "; ";
    detail += what;
  }
};

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

// ---------------------------------------------------------------- figure 1

Criterion figure_reproduction(double mu, double theta) {
  Criterion c;
  const double a = 0.25, b = 0.18;
  const int sites = 50;
  const std::int64_t n = 1000;

  MultisiteParams params;
  params.birth_rate = a;
  params.death_rate = b;
  params.mutation_prob = mu;
  params.sites = sites;
  params.c0 = 1;
  params.limit_calibrated = true;  // death rate b(1-mu), the limit setup

  ReplicateOptions opts;
  opts.reps = 10000;
  opts.root_seed = 20250801;
  opts.conditioning = Conditioning::on_reached;
  opts.threads = 0;

  const SfsEstimate est =
      mean_sfs_empirical(params, StopRule::total_size(n), opts);
  const auto theory =
      mean_sfs_limit_population(sites, theta, a, b, 200, 1e-12);

  double max_dev = 0.0;
  std::int64_t worst_k = -1;
  for (std::int64_t k = 0; k <= 30; ++k) {
    const double emp = est.mean[static_cast<std::size_t>(k)];
    // zero-variance cells fall back to the rule-of-three bound
    const double se =
        std::max(est.se[static_cast<std::size_t>(k)],
                 3.0 / static_cast<double>(est.reps));
    const double dev =
        std::abs(emp - theory[static_cast<std::size_t>(k)]) / se;
    if (dev > max_dev) {
      max_dev = dev;
      worst_k = k;
    }
  }
  c.require(max_dev <= 3.0, "per-k deviation exceeded 3 SE");
  c.note("kept=" + std::to_string(est.reps) +
         " max|dev|=" + fmt(max_dev) + " SE at k=" + std::to_string(worst_k));
  return c;
}

Criterion criterion_1() { return figure_reproduction(1e-3, 0.25); }
Criterion criterion_2() { return figure_reproduction(1e-2, 2.5); }

// ------------------------------------------------------------ LD identity

Criterion criterion_3() {
  Criterion c;
  const double ratio = 1.0;  // theta / lambda_a
  double worst = 0.0;
  for (int i = 1; i <= 9; ++i) {
    const double z = 0.1 * i;
    const double r = clone_age_pgf({1.0, 0.0}, 1.0, z);
    const double lhs = std::exp(ratio * (r - 1.0));
    const double rhs = std::pow(1.0 - z, ratio * (1.0 / z - 1.0));
    worst = std::max(worst, std::abs(lhs - rhs));
  }
  c.require(worst <= 1e-10, "pgf identity off by " + fmt(worst));
  c.note("max identity gap " + fmt(worst));

  const Pmf clone = clone_size_pmf({1.0, 0.0}, 1.0, 50, 1e-13);
  const Pmf bstar = bstar_pmf(0.7, 1.0, clone, 50);
  const double gap = std::abs(bstar.probs[0] - std::exp(-0.7));
  c.require(gap <= 1e-14, "P[B*=0] off e^{-theta/lambda} by " + fmt(gap));
  return c;
}

// ----------------------------------------------------- pure-birth clone law

Criterion criterion_4() {
  Criterion c;
  const Pmf pmf = clone_size_pmf({1.0, 0.0}, 1.0, 120, 1e-12);
  double worst = std::abs(pmf.probs[0]);
  for (std::int64_t k = 1; k <= 100; ++k)
    worst = std::max(worst, std::abs(pmf.prob(k) -
                                     1.0 / (static_cast<double>(k) *
                                            static_cast<double>(k + 1))));
  c.require(worst <= 1e-8, "clone mass off 1/(k(k+1)) by " + fmt(worst));
  c.note("max deviation " + fmt(worst));
  return c;
}

// --------------------------------------------- recursion vs brute force

Pmf compound_poisson_bruteforce(double mean, const Pmf& jumps,
                                std::int64_t kmax) {
  const std::size_t len = static_cast<std::size_t>(kmax) + 1;
  std::vector<double> result(len, 0.0), power(len, 0.0);
  power[0] = 1.0;
  double weight = std::exp(-mean);
  for (std::size_t k = 0; k < len; ++k) result[k] += weight * power[k];
  for (int m = 1; m < 500; ++m) {
    std::vector<double> next(len, 0.0);
    for (std::size_t i = 0; i < len; ++i) {
      if (power[i] == 0.0) continue;
      for (std::size_t j = 0; i + j < len; ++j)
        next[i + j] += power[i] * jumps.prob(static_cast<std::int64_t>(j));
    }
    power.swap(next);
    weight *= mean / m;
    for (std::size_t k = 0; k < len; ++k) result[k] += weight * power[k];
    if (weight < 1e-18 && m > mean) break;
  }
  Pmf out;
  out.probs = std::move(result);
  double total = 0.0;
  for (double p : out.probs) total += p;
  out.tail_mass = std::max(0.0, 1.0 - total);
  return out;
}

Criterion criterion_5() {
  Criterion c;
  const double lambda_a = 1.0, theta = 0.9;
  const std::vector<BirthDeathParams> clones = {
      {0.4, 0.9}, {0.0, 0.7}, {0.3, 0.3}, {0.9, 0.6}, {0.5, 0.0}};
  double worst = 0.0;
  for (const auto& clone : clones) {
    const Pmf jump = clone_size_pmf(clone, lambda_a, 50, 1e-13);
    const Pmf fast = bstar_pmf(theta, lambda_a, jump, 50);
    const Pmf slow = compound_poisson_bruteforce(theta / lambda_a, jump, 50);
    worst = std::max(worst, tv_distance(fast, slow));
  }
  c.require(worst <= 1e-8, "recursion vs brute force TV " + fmt(worst));
  c.note("max TV " + fmt(worst) + " over 5 parameter sets");
  return c;
}

// ------------------------------------------------------------- tail law

Criterion criterion_6() {
  Criterion c;
  const double lambda_a = 1.0, theta = 1.0;
  const BirthDeathParams clone{1.0, 0.5};  // lambda_b = 0.5, q = 0.5
  const Pmf jump = clone_size_pmf(clone, lambda_a, 1100, 1e-13);
  const Pmf bstar = bstar_pmf(theta, lambda_a, jump, 1100);
  const double slope = loglog_slope(bstar, 100, 1000);
  c.require(std::abs(slope + 3.0) <= 0.05,
            "log-log slope " + fmt(slope) + " not within -3 +- 0.05");
  const auto constant = bstar_tail_constant(theta, clone, lambda_a);
  const double scaled = 1e9 * bstar.prob(1000);
  c.require(constant.has_value(), "tail constant not applicable");
  const double rel = std::abs(scaled - *constant) / *constant;
  c.require(rel <= 0.02, "k^3 P[B*=k] at k=1e3 off by " + fmt(100 * rel) + "%");
  c.note("slope=" + fmt(slope) + " k^3 P=" + fmt(scaled) +
         " constant=" + fmt(*constant));
  return c;
}

// ------------------------------------------------- Angerer vs simulation

Criterion criterion_7() {
  Criterion c;
  const double alpha_a = 0.9, alpha_b = 1.0;
  const std::int64_t n = 20;
  const Pmf law = angerer_pmf(n, alpha_a, alpha_b);

  ModelParams p;
  p.alpha_a = alpha_a;
  p.nu = alpha_b - alpha_a;
  p.alpha_b = alpha_b;

  struct State {
    std::map<std::int64_t, std::int64_t> counts;
    TwoTypeOutcome scratch;
    void merge(State&& o) {
      for (const auto& [k, v] : o.counts) counts[k] += v;
    }
  };
  const std::int64_t reps = 1000000;
  State merged = replicate_reduce<State>(
      reps, 0, 91, [&](State& s, std::int64_t, Rng& rng) {
        simulate_two_type(p, StopRule::total_size(n), rng, s.scratch);
        ++s.counts[s.scratch.mutants];
      });
  EmpiricalPmf emp;
  emp.counts = std::move(merged.counts);
  emp.reps = reps;
  const double tv = tv_distance(emp, law);
  c.require(tv <= 0.01, "TV(empirical, recursion) = " + fmt(tv));
  c.note("TV=" + fmt(tv));

  const Pmf two = angerer_pmf(2, alpha_a, alpha_b);
  c.require(std::abs(two.probs[1] - 0.1) <= 1e-12,
            "n=2 closed case off by " + fmt(two.probs[1] - 0.1));
  return c;
}

// --------------------------------------------------- Yule-sampler checks

Criterion criterion_8() {
  Criterion c;
  const std::int64_t n = 50;
  const std::int64_t reps = 100000;

  {  // distributional equality against the direct simulator
    ModelParams p;
    p.alpha_a = 1.0;
    p.nu = 0.2;
    p.alpha_b = 1.0;
    p.beta_b = 0.5;
    struct State {
      std::map<std::int64_t, std::int64_t> direct, yule;
      TwoTypeOutcome scratch;
      void merge(State&& o) {
        for (const auto& [k, v] : o.direct) direct[k] += v;
        for (const auto& [k, v] : o.yule) yule[k] += v;
      }
    };
    State merged = replicate_reduce<State>(
        reps, 0, 92, [&](State& s, std::int64_t, Rng& rng) {
          simulate_two_type(p, StopRule::wildtype_size(n), rng, s.scratch);
          ++s.direct[s.scratch.mutants];
          ++s.yule[simulate_b_tau_yule(p, n, rng)];
        });
    EmpiricalPmf direct, yule;
    direct.counts = std::move(merged.direct);
    yule.counts = std::move(merged.yule);
    direct.reps = yule.reps = reps;
    const double tv = tv_distance(direct, yule);
    c.require(tv <= 0.02, "TV(direct, yule) = " + fmt(tv));
    c.note("TV=" + fmt(tv));
  }

  {  // mean against (n-1) nu / (alpha_a - lambda_b)
    ModelParams p;
    p.alpha_a = 1.0;
    p.nu = 0.1;
    p.alpha_b = 0.5;
    p.beta_b = 0.3;  // lambda_b = 0.2
    struct State {
      double sum = 0.0, sumsq = 0.0;
      void merge(State&& o) {
        sum += o.sum;
        sumsq += o.sumsq;
      }
    };
    State merged = replicate_reduce<State>(
        reps, 0, 93, [&](State& s, std::int64_t, Rng& rng) {
          const auto b = static_cast<double>(simulate_b_tau_yule(p, n, rng));
          s.sum += b;
          s.sumsq += b * b;
        });
    const double r = static_cast<double>(reps);
    const double mean = merged.sum / r;
    const double se =
        std::sqrt((merged.sumsq / r - mean * mean) / r);
    const double target = 49.0 * 0.1 / 0.8;  // 6.125
    c.require(std::abs(mean - target) <= 3.0 * se,
              "yule mean " + fmt(mean) + " vs " + fmt(target));
    c.note("mean=" + fmt(mean) + " target=" + fmt(target) +
           " se=" + fmt(se));
  }
  return c;
}

// ------------------------------------------- sigma/tau connection identity

Criterion criterion_9() {
  Criterion c;
  ModelParams p;
  p.alpha_a = 1.0;
  p.nu = 0.3;
  p.alpha_b = 1.0;
  const std::int64_t n = 10, k = 3;
  const std::int64_t reps = 100000;

  struct State {
    std::int64_t sigma_le = 0, tau_le = 0;
    TwoTypeOutcome scratch;
    void merge(State&& o) {
      sigma_le += o.sigma_le;
      tau_le += o.tau_le;
    }
  };
  State merged = replicate_reduce<State>(
      reps, 0, 94, [&](State& s, std::int64_t, Rng& rng) {
        simulate_two_type(p, StopRule::total_size(n), rng, s.scratch);
        s.sigma_le += s.scratch.mutants <= k;
        simulate_two_type(p, StopRule::wildtype_size(n - k), rng, s.scratch);
        s.tau_le += s.scratch.mutants <= k;
      });
  const double r = static_cast<double>(reps);
  const double pl = static_cast<double>(merged.sigma_le) / r;
  const double pr = static_cast<double>(merged.tau_le) / r;
  const double pooled =
      std::sqrt((pl * (1.0 - pl) + pr * (1.0 - pr)) / r);
  c.require(std::abs(pl - pr) <= 3.0 * pooled,
            "P[B(sigma_10)<=3]=" + fmt(pl) + " vs P[B(tau_7)<=3]=" + fmt(pr));
  c.note("lhs=" + fmt(pl) + " rhs=" + fmt(pr) + " pooled_se=" + fmt(pooled));
  return c;
}

// --------------------------------------------- long-run mean-scale checks

struct ScaledMean {
  double mean = 0.0;
  double se = 0.0;
};

template <class Params>
ScaledMean scaled_b_mean(const Params& p, double t, double scale,
                         std::int64_t reps, std::uint64_t seed) {
  struct State {
    unsigned __int128 sum = 0;
    unsigned __int128 sumsq = 0;
    void merge(State&& o) {
      sum += o.sum;
      sumsq += o.sumsq;
    }
  };
  State merged = replicate_reduce<State>(
      reps, 0, seed, [&](State& s, std::int64_t, Rng& rng) {
        const auto counts = sample_two_type_counts_at(p, t, rng);
        const auto b = static_cast<unsigned __int128>(counts.mutants);
        s.sum += b;
        s.sumsq += b * b;
      });
  const double r = static_cast<double>(reps);
  const double mean_b = static_cast<double>(merged.sum) / r;
  const double var_b =
      static_cast<double>(merged.sumsq) / r - mean_b * mean_b;
  ScaledMean out;
  out.mean = mean_b * scale;
  out.se = std::sqrt(var_b / r) * scale;
  return out;
}

Criterion criterion_10() {
  Criterion c;
  const double t = 10.0;
  const std::int64_t reps = 100000;

  {  // wildtype-dominant: e^{-lambda_a t} B(t) -> nu/(lambda_a-lambda_b) W
    ModelParams p;
    p.alpha_a = 2.0;
    p.beta_a = 1.0;  // lambda_a = 1, E[W] = 1
    p.nu = 0.1;
    p.alpha_b = 0.5;  // lambda_b = 0.5
    const auto m = scaled_b_mean(p, t, std::exp(-t), reps, 101);
    c.require(std::abs(m.mean - 0.2) <= 3.0 * m.se,
              "dominant-case mean " + fmt(m.mean) + " vs 0.2");
    c.note("dominant " + fmt(m.mean) + "+-" + fmt(m.se));
  }
  {  // balanced: t^{-1} e^{-lambda_a t} B(t) -> nu W
    ModelParams p;
    p.alpha_a = 1.0;
    p.nu = 0.1;
    p.alpha_b = 1.0;
    const auto m = scaled_b_mean(p, t, std::exp(-t) / t, reps, 102);
    c.require(std::abs(m.mean - 0.1) <= 3.0 * m.se,
              "balanced-case mean " + fmt(m.mean) + " vs 0.1");
    c.note("balanced " + fmt(m.mean) + "+-" + fmt(m.se));
  }
  {  // mutant-dominant: e^{-lambda_b t} B(t) -> V, E[V]=A(0)nu/(lb-la)
    ModelParams p;
    p.alpha_a = 1.5;
    p.beta_a = 1.0;  // lambda_a = 0.5
    p.nu = 0.1;
    p.alpha_b = 1.0;  // lambda_b = 1
    const auto m = scaled_b_mean(p, t, std::exp(-t), reps, 103);
    c.require(std::abs(m.mean - 0.2) <= 3.0 * m.se,
              "mutant-dominant mean " + fmt(m.mean) + " vs E[V]=0.2");
    c.note("mutant-dominant " + fmt(m.mean) + "+-" + fmt(m.se));
  }
  return c;
}

// --------------------------------------------------- mutation-count law

Criterion criterion_11() {
  Criterion c;
  const std::int64_t n = 1000;
  ModelParams p;
  p.alpha_a = 1.0;
  p.nu = 0.0005;  // n nu / lambda_a = 0.5
  p.alpha_b = 1.0;

  struct State {
    std::int64_t s1 = 0, s2 = 0, s3 = 0, s4 = 0;
    TwoTypeOutcome scratch;
    void merge(State&& o) {
      s1 += o.s1;
      s2 += o.s2;
      s3 += o.s3;
      s4 += o.s4;
    }
  };
  const std::int64_t reps = 100000;
  State merged = replicate_reduce<State>(
      reps, 0, 111, [&](State& s, std::int64_t, Rng& rng) {
        simulate_two_type(p, StopRule::wildtype_size(n), rng, s.scratch);
        const std::int64_t k = s.scratch.mutation_count;
        s.s1 += k;
        s.s2 += k * k;
        s.s3 += k * k * k;
        s.s4 += k * k * k * k;
      });
  const double r = static_cast<double>(reps);
  const double m1 = static_cast<double>(merged.s1) / r;
  const double m2 = static_cast<double>(merged.s2) / r;
  const double m3 = static_cast<double>(merged.s3) / r;
  const double m4 = static_cast<double>(merged.s4) / r;
  const double mean = m1;
  const double var = m2 - m1 * m1;
  const double se_mean = std::sqrt(var / r);
  // fourth central moment for the variance standard error
  const double mu4 =
      m4 - 4.0 * m1 * m3 + 6.0 * m1 * m1 * m2 - 3.0 * m1 * m1 * m1 * m1;
  const double se_var = std::sqrt((mu4 - var * var) / r);
  c.require(std::abs(mean - 0.5) <= 4.0 * se_mean,
            "K mean " + fmt(mean) + " vs 0.5");
  c.require(std::abs(var - 0.5) <= 4.0 * se_var,
            "K variance " + fmt(var) + " vs 0.5");
  c.note("mean=" + fmt(mean) + "+-" + fmt(se_mean) + " var=" + fmt(var) +
         "+-" + fmt(se_var));
  return c;
}

// ----------------------------------- largest-clone and clone-census laws

Criterion criterion_12() {
  Criterion c;
  const std::int64_t n = 10000;
  const double theta = 0.3, lambda_a = 1.0;
  ModelParams p;
  p.alpha_a = 1.0;
  p.nu = theta / static_cast<double>(n);
  p.alpha_b = 1.0;  // pure-birth clones with alpha_b = lambda_a

  const std::vector<std::int64_t> ks = {1, 2, 5, 10};
  struct State {
    std::int64_t below[4] = {0, 0, 0, 0};
    std::int64_t census[4] = {0, 0, 0, 0};
    std::int64_t kept = 0;
    TwoTypeOutcome scratch;
    void merge(State&& o) {
      for (int i = 0; i < 4; ++i) {
        below[i] += o.below[i];
        census[i] += o.census[i];
      }
      kept += o.kept;
    }
  };
  const std::int64_t reps = 10000;
  const std::vector<std::int64_t> ks_local = ks;
  State merged = replicate_reduce<State>(
      reps, 0, 121, [&](State& s, std::int64_t, Rng& rng) {
        simulate_two_type(p, StopRule::wildtype_size(n), rng, s.scratch);
        if (!s.scratch.reached) return;  // conditioned set (never here: ba=0)
        ++s.kept;
        const std::int64_t m = largest_clone(s.scratch);
        for (int i = 0; i < 4; ++i) {
          s.below[i] += m <= ks_local[static_cast<std::size_t>(i)];
          s.census[i] += clone_census(
              s.scratch,
              SizeRange::at_least(ks_local[static_cast<std::size_t>(i)]));
        }
      });
  const double r = static_cast<double>(merged.kept);
  for (int i = 0; i < 4; ++i) {
    const auto k = ks[static_cast<std::size_t>(i)];
    const double expect =
        std::exp(-theta / (lambda_a * static_cast<double>(k + 1)));
    const double freq = static_cast<double>(merged.below[i]) / r;
    const double se = std::sqrt(expect * (1.0 - expect) / r);
    c.require(std::abs(freq - expect) <= 3.0 * se,
              "P[M<=" + std::to_string(k) + "] = " + fmt(freq) + " vs " +
                  fmt(expect));
    const double rate = theta / (lambda_a * static_cast<double>(k));
    const double cmean = static_cast<double>(merged.census[i]) / r;
    const double cse = std::sqrt(rate / r);  // Poisson-scale error
    c.require(std::abs(cmean - rate) <= 3.0 * cse,
              "census mean at k>=" + std::to_string(k) + " = " + fmt(cmean) +
                  " vs " + fmt(rate));
  }
  c.note("kept=" + std::to_string(merged.kept));
  return c;
}

// ----------------------------------------------------------- determinism

Criterion criterion_13(const std::string& cli) {
  Criterion c;
  if (cli.empty()) {
    c.pass = false;
    c.detail = "CLI binary path not supplied";
    return c;
  }
  const std::string cfg_path = "acceptance_det.cfg";
  const std::string out = "acceptance_det.csv";
  {
    std::ofstream cfg(cfg_path);
    cfg << "[model]\nkind = two-type\nalpha_a = 1.0\nbeta_a = 0.3\n"
           "nu = 0.2\nalpha_b = 1.0\nbeta_b = 0.4\n"
           "[stop]\nrule = total-size\nn = 80\n"
           "[run]\nreps = 5000\nseed = 424242\nconditioning = on-reached\n"
           "[output]\npmf = " +
               out + "\n";
  }
  auto run = [&](int threads) {
    const std::string cmd = cli + " simulate --config " + cfg_path +
                            " --threads " + std::to_string(threads) +
                            " >/dev/null 2>&1";
    return std::system(cmd.c_str()) == 0;
  };
  auto slurp = [](const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
  };
  c.require(run(1), "CLI run (1 worker) failed");
  const std::string first = slurp(out);
  c.require(run(1), "CLI rerun failed");
  const std::string again = slurp(out);
  c.require(run(8), "CLI run (8 workers) failed");
  const std::string wide = slurp(out);
  c.require(!first.empty(), "empty CSV");
  c.require(first == again, "reruns with the same seed differ");
  c.require(first == wide, "outputs differ between 1 and 8 workers");
  std::remove(cfg_path.c_str());
  std::remove(out.c_str());
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  const std::string which = argc > 1 ? argv[1] : "all";
  const std::string cli = argc > 2 ? argv[2] : "";

  struct Entry {
    int id;
    const char* name;
    Criterion (*run)();
  };

  int failures = 0;
  auto report = [&](int id, const char* name, const Criterion& c,
                    double seconds) {
    std::printf("criterion %02d %-42s %s (%s) [%.1fs]\n", id, name,
                c.pass ? "PASS" : "FAIL", c.detail.c_str(), seconds);
    failures += !c.pass;
  };
  auto wants = [&](int id) {
    return which == "all" || std::atoi(which.c_str()) == id;
  };
  auto timed = [&](int id, const char* name, auto&& fn) {
    if (!wants(id)) return;
    const auto start = std::chrono::steady_clock::now();
    const Criterion c = fn();
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      start)
            .count();
    report(id, name, c, seconds);
  };

  timed(1, "figure reproduction, mu=1e-3", criterion_1);
  timed(2, "figure reproduction, mu=1e-2", criterion_2);
  timed(3, "Luria-Delbruck identity", criterion_3);
  timed(4, "pure-birth clone law 1/(k(k+1))", criterion_4);
  timed(5, "compound recursion vs brute force", criterion_5);
  timed(6, "power-law tail of B*", criterion_6);
  timed(7, "neutral recursion vs simulation", criterion_7);
  timed(8, "Yule sampler equivalence and mean", criterion_8);
  timed(9, "sigma/tau connection identity", criterion_9);
  timed(10, "long-run mean scalings", criterion_10);
  timed(11, "mutation-count Poisson law", criterion_11);
  timed(12, "largest clone and census laws", criterion_12);
  timed(13, "byte-identical reruns across workers",
        [&] { return criterion_13(cli); });

  return failures == 0 ? 0 : 1;
}

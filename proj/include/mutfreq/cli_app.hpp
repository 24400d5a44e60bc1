#pragma once

#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mutfreq/angerer.hpp"
#include "mutfreq/compound.hpp"
#include "mutfreq/config.hpp"
#include "mutfreq/finite_size.hpp"
#include "mutfreq/io.hpp"
#include "mutfreq/limits.hpp"
#include "mutfreq/multisite.hpp"
#include "mutfreq/replicates.hpp"
#include "mutfreq/stats.hpp"

namespace mutfreq::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitDegenerate = 3;

namespace detail {

inline StopRule parse_stop(Config& cfg) {
  const std::string rule = cfg.get_string("stop.rule");
  if (rule == "fixed-time") return StopRule::at_time(cfg.get_double("stop.t"));
  if (rule == "wildtype-size")
    return StopRule::wildtype_size(cfg.get_int("stop.n"));
  if (rule == "total-size") return StopRule::total_size(cfg.get_int("stop.n"));
  throw config_error("config: unknown stop.rule '" + rule + "'");
}

inline ReplicateOptions parse_run(Config& cfg) {
  ReplicateOptions opts;
  opts.reps = cfg.get_int("run.reps", 1);
  opts.root_seed = static_cast<std::uint64_t>(cfg.get_int("run.seed", 0));
  opts.threads = static_cast<int>(cfg.get_int("run.threads", 0));
  opts.max_events = cfg.get_int("run.max_events", kDefaultEventCap);
  const std::string conditioning =
      cfg.get_string("run.conditioning", "none");
  if (conditioning == "none")
    opts.conditioning = Conditioning::none;
  else if (conditioning == "on-reached")
    opts.conditioning = Conditioning::on_reached;
  else
    throw config_error("config: unknown run.conditioning '" + conditioning +
                       "'");
  return opts;
}

inline ModelParams parse_two_type(Config& cfg) {
  ModelParams p;
  p.alpha_a = cfg.get_double("model.alpha_a");
  p.beta_a = cfg.get_double("model.beta_a", 0.0);
  p.nu = cfg.get_double("model.nu");
  p.alpha_b = cfg.get_double("model.alpha_b");
  p.beta_b = cfg.get_double("model.beta_b", 0.0);
  p.a0 = cfg.get_int("model.a0", 1);
  return p;
}

inline MultisiteParams parse_multisite(Config& cfg) {
  MultisiteParams p;
  p.birth_rate = cfg.get_double("model.birth_rate");
  p.death_rate = cfg.get_double("model.death_rate", 0.0);
  p.mutation_prob = cfg.get_double("model.mu");
  p.sites = static_cast<int>(cfg.get_int("model.sites"));
  p.c0 = cfg.get_int("model.c0", 1);
  p.limit_calibrated = cfg.get_bool("model.limit_calibrated", false);
  return p;
}

inline void write_empirical_csv(const std::string& path,
                                const EmpiricalPmf& pmf,
                                std::uint64_t config_hash,
                                std::uint64_t seed) {
  CsvWriter csv(path, config_hash, std::to_string(seed));
  csv.row({"# reps=" + std::to_string(pmf.reps),
           "discarded=" + std::to_string(pmf.discard_count)});
  csv.header({"k", "prob", "se", "count"});
  for (const auto& [k, count] : pmf.counts)
    csv.row({std::to_string(k),
             format_double(static_cast<double>(count) /
                           static_cast<double>(pmf.reps)),
             format_double(binomial_se(count, pmf.reps)),
             std::to_string(count)});
}

}  // namespace detail

// simulate: run replicates of one of the two simulators and write the
// empirical distribution (two-type) or the mean site frequency spectrum
// (multisite) as CSV.
inline int cmd_simulate(Config cfg, std::ostream& log) {
  const std::uint64_t config_hash = fnv1a(cfg.canonical_text());
  const std::string kind = cfg.get_string("model.kind", "two-type");
  const StopRule stop = detail::parse_stop(cfg);
  const ReplicateOptions opts = detail::parse_run(cfg);

  if (kind == "two-type") {
    const ModelParams params = detail::parse_two_type(cfg);
    const std::string pmf_path = cfg.get_string("output.pmf");
    const std::string archive_path = cfg.get_string("output.archive", "");
    cfg.reject_unknown_keys();
    const RunResult result =
        run_replicates(params, stop, opts, !archive_path.empty());
    detail::write_empirical_csv(pmf_path, result.mutant_pmf, config_hash,
                                opts.root_seed);
    if (!archive_path.empty()) write_text_file(archive_path, result.archive);
    log << "simulate: kept " << result.mutant_pmf.reps << " replicates, "
        << result.mutant_pmf.discard_count << " discarded\n";
    return kExitOk;
  }

  if (kind == "multisite") {
    const MultisiteParams params = detail::parse_multisite(cfg);
    const std::string sfs_path = cfg.get_string("output.sfs");
    // optional theory column from the matching small-mutation limit
    const std::string attach = cfg.get_string("theory.attach", "none");
    std::optional<std::vector<double>> theory;
    if (attach == "population") {
      const double a = params.birth_rate, b = params.death_rate;
      const double theta = cfg.get_double(
          "theory.theta",
          static_cast<double>(stop.size) * params.mutation_prob * a);
      const auto kmax = cfg.get_int("theory.kmax", stop.size);
      theory = mean_sfs_limit_population(params.sites, theta, a, b, kmax);
    } else if (attach == "time") {
      const double a = params.birth_rate, b = params.death_rate;
      const double eta = cfg.get_double("theory.eta");
      const auto kmax = cfg.get_int("theory.kmax", 1000);
      theory =
          mean_sfs_limit_time(params.sites, eta, params.c0, a, b, kmax);
    } else if (attach != "none") {
      throw config_error("config: unknown theory.attach '" + attach + "'");
    }
    cfg.reject_unknown_keys();

    const SfsEstimate est = mean_sfs_empirical(params, stop, opts);
    CsvWriter csv(sfs_path, config_hash, std::to_string(opts.root_seed));
    csv.row({"# reps=" + std::to_string(est.reps),
             "discarded=" + std::to_string(est.discarded)});
    if (theory)
      csv.header({"k", "mean_count", "std_err", "theory_count"});
    else
      csv.header({"k", "mean_count", "std_err"});
    for (std::size_t k = 0; k < est.mean.size(); ++k) {
      std::vector<std::string> row{std::to_string(k),
                                   format_double(est.mean[k]),
                                   format_double(est.se[k])};
      if (theory)
        row.push_back(format_double(
            k < theory->size() ? (*theory)[k] : 0.0));
      csv.row(row);
    }
    log << "simulate: kept " << est.reps << " replicates, " << est.discarded
        << " discarded\n";
    return kExitOk;
  }

  throw config_error("config: unknown model.kind '" + kind + "'");
}

// dist: evaluate one analytic distribution and write (k, prob) plus a
// JSON summary with the mean, tail mass, and tail behaviour.
inline int cmd_dist(Config cfg, std::ostream& log) {
  const std::uint64_t config_hash = fnv1a(cfg.canonical_text());
  const std::string name = cfg.get_string("dist.name");
  nlohmann::json summary;
  summary["name"] = name;
  Pmf pmf;
  bool have_pmf = true;

  auto set_tail = [&](const std::optional<double>& c, double lambda_a,
                      double lambda_b) {
    if (c) {
      summary["tail_constant"] = *c;
      summary["tail_exponent"] = 1.0 + lambda_a / lambda_b;
    } else {
      summary["tail_constant"] = "not applicable";
      summary["tail_exponent"] = "not applicable";
    }
    if (lambda_b > 0.0)
      summary["clone_regime"] = lambda_a > lambda_b  ? "wildtype-dominant"
                                : lambda_a == lambda_b ? "balanced"
                                                       : "mutant-dominant";
    else
      summary["clone_regime"] = lambda_b == 0.0 ? "critical" : "subcritical";
  };

  if (name == "clone") {
    const BirthDeathParams clone{cfg.get_double("dist.alpha_b"),
                                 cfg.get_double("dist.beta_b", 0.0)};
    const double lambda_a = cfg.get_double("dist.lambda_a");
    const auto kmax = cfg.get_int("dist.kmax", 1000);
    const double tol = cfg.get_double("dist.tol", 1e-12);
    pmf = clone_size_pmf(clone, lambda_a, kmax, tol);
    set_tail(clone_tail_constant(clone, lambda_a), lambda_a,
             clone.net_rate());
  } else if (name == "bstar") {
    const BirthDeathParams clone{cfg.get_double("dist.alpha_b"),
                                 cfg.get_double("dist.beta_b", 0.0)};
    const double lambda_a = cfg.get_double("dist.lambda_a");
    const double theta = cfg.get_double("dist.theta");
    const auto kmax = cfg.get_int("dist.kmax", 1000);
    const double tol = cfg.get_double("dist.tol", 1e-12);
    pmf = bstar_pmf(theta, lambda_a,
                    clone_size_pmf(clone, lambda_a, kmax, tol), kmax);
    set_tail(bstar_tail_constant(theta, clone, lambda_a), lambda_a,
             clone.net_rate());
    const double lb = clone.net_rate();
    if (lb < lambda_a)
      summary["mean"] = theta / (lambda_a - lb);
    else
      summary["mean"] = "infinite";
  } else if (name == "bcirc") {
    const BirthDeathParams clone{cfg.get_double("dist.alpha_b"),
                                 cfg.get_double("dist.beta_b", 0.0)};
    const double alpha_a = cfg.get_double("dist.alpha_a");
    const double beta_a = cfg.get_double("dist.beta_a", 0.0);
    const double eta = cfg.get_double("dist.eta");
    const auto a0 = cfg.get_int("dist.a0", 1);
    const auto kmax = cfg.get_int("dist.kmax", 1000);
    const double tol = cfg.get_double("dist.tol", 1e-12);
    const double lambda_a = alpha_a - beta_a;
    pmf = bcirc_pmf(eta, alpha_a, beta_a, a0,
                    clone_size_pmf(clone, lambda_a, kmax, tol), kmax);
    set_tail(bcirc_tail_constant(eta, a0, clone, lambda_a), lambda_a,
             clone.net_rate());
  } else if (name == "angerer") {
    const auto n = cfg.get_int("dist.n");
    const double alpha_a = cfg.get_double("dist.alpha_a");
    const double alpha_b = cfg.get_double("dist.alpha_b");
    const auto kmax = cfg.get_int("dist.kmax", n - 1);
    pmf = angerer_pmf(n, alpha_a, alpha_b, kmax);
    summary["nu"] = alpha_b - alpha_a;
  } else if (name == "btau-pgf") {
    have_pmf = false;
    ModelParams p;
    p.alpha_a = cfg.get_double("dist.alpha_a");
    p.nu = cfg.get_double("dist.nu");
    p.alpha_b = cfg.get_double("dist.alpha_b");
    p.beta_b = cfg.get_double("dist.beta_b", 0.0);
    const auto n = cfg.get_int("dist.n");
    const auto points = cfg.get_int("dist.z_points", 99);
    const std::string csv_path = cfg.get_string("output.csv");
    const std::string summary_path = cfg.get_string("output.summary", "");
    cfg.reject_unknown_keys();
    CsvWriter csv(csv_path, config_hash, "-");
    csv.header({"z", "pgf"});
    for (std::int64_t i = 0; i <= points; ++i) {
      const double z =
          static_cast<double>(i) / static_cast<double>(points + 1);
      csv.row({format_double(z), format_double(b_tau_pgf(p, n, z))});
    }
    const double mean = b_tau_mean(n, p.nu, p.alpha_a, p.lambda_b());
    if (std::isinf(mean))
      summary["mean"] = "infinite";
    else
      summary["mean"] = mean;
    const std::string out = summary.dump(2) + "\n";
    if (summary_path.empty())
      log << out;
    else
      write_text_file(summary_path, out);
    return kExitOk;
  } else if (name == "sfs-limit") {
    const std::string mode = cfg.get_string("dist.mode", "population");
    const auto sites = cfg.get_int("dist.sites");
    const double a = cfg.get_double("dist.a");
    const double b = cfg.get_double("dist.b", 0.0);
    const auto kmax = cfg.get_int("dist.kmax", 1000);
    const double tol = cfg.get_double("dist.tol", 1e-12);
    std::vector<double> curve;
    if (mode == "population") {
      const double theta = cfg.get_double("dist.theta");
      curve = mean_sfs_limit_population(sites, theta, a, b, kmax, tol);
      set_tail(sfs_tail_constant_population(sites, theta, a, b), a - b,
               a - b);
    } else if (mode == "time") {
      const double eta = cfg.get_double("dist.eta");
      const auto c0 = cfg.get_int("dist.c0", 1);
      curve = mean_sfs_limit_time(sites, eta, c0, a, b, kmax, tol);
      set_tail(sfs_tail_constant_time(sites, eta, c0, a, b), a - b, a - b);
    } else {
      throw config_error("config: unknown dist.mode '" + mode + "'");
    }
    const std::string csv_path = cfg.get_string("output.csv");
    const std::string summary_path = cfg.get_string("output.summary", "");
    cfg.reject_unknown_keys();
    CsvWriter csv(csv_path, config_hash, "-");
    csv.header({"k", "theory_count"});
    for (std::size_t k = 0; k < curve.size(); ++k)
      csv.row({std::to_string(k), format_double(curve[k])});
    double total = 0.0;
    for (double v : curve) total += v;
    summary["total_truncated"] = total;
    const std::string out = summary.dump(2) + "\n";
    if (summary_path.empty())
      log << out;
    else
      write_text_file(summary_path, out);
    return kExitOk;
  } else {
    throw config_error("config: unknown dist.name '" + name + "'");
  }

  if (have_pmf) {
    const std::string csv_path = cfg.get_string("output.csv");
    const std::string summary_path = cfg.get_string("output.summary", "");
    cfg.reject_unknown_keys();
    CsvWriter csv(csv_path, config_hash, "-");
    csv.header({"k", "prob"});
    for (std::size_t k = 0; k < pmf.probs.size(); ++k)
      csv.row({std::to_string(k), format_double(pmf.probs[k])});
    summary["tail_mass"] = pmf.tail_mass;
    summary["truncated_mean"] = pmf.truncated_mean();
    if (!summary.contains("mean")) summary["mean"] = pmf.truncated_mean();
    const std::string out = summary.dump(2) + "\n";
    if (summary_path.empty())
      log << out;
    else
      write_text_file(summary_path, out);
  }
  return kExitOk;
}

struct CompareArgs {
  std::string empirical_path;
  std::string theory_path;
  std::int64_t kmin = 0;
  std::int64_t kmax = 0;
  double se_multiplier = 3.0;
  std::string report_path;
  std::string plot_path;
};

// compare: per-k empirical-vs-theory verdicts at a standard-error band,
// with an overlay plot-data file. Works on both probability CSVs
// (k,prob,se) and SFS CSVs (k,mean_count,std_err[,theory_count]).
inline int cmd_compare(const CompareArgs& args, std::ostream& log) {
  const CsvTable emp = read_csv(args.empirical_path);
  const CsvTable theo = read_csv(args.theory_path);

  const int ek = emp.column("k");
  int ev = emp.column("prob");
  if (ev < 0) ev = emp.column("mean_count");
  int es = emp.column("se");
  if (es < 0) es = emp.column("std_err");
  const int tk = theo.column("k");
  int tv = theo.column("prob");
  if (tv < 0) tv = theo.column("theory_count");
  if (tv < 0) tv = theo.column("mean_count");
  if (ek < 0 || ev < 0 || es < 0 || tk < 0 || tv < 0)
    throw config_error(
        "compare: need columns k + prob/mean_count + se/std_err "
        "(empirical) and k + prob/theory_count (theory)");

  std::map<std::int64_t, std::pair<double, double>> empirical;
  for (const auto& row : emp.rows)
    empirical[static_cast<std::int64_t>(std::llround(row[ek]))] = {
        row[ev], row[es]};
  std::map<std::int64_t, double> theory;
  for (const auto& row : theo.rows)
    theory[static_cast<std::int64_t>(std::llround(row[tk]))] = row[tv];

  nlohmann::json rows = nlohmann::json::array();
  double max_dev = 0.0;
  std::int64_t passed = 0, cells = 0;
  double l1 = 0.0, emp_total = 0.0, theo_total = 0.0;
  std::string plot = "k,empirical,theory,band\n";
  for (std::int64_t k = args.kmin; k <= args.kmax; ++k) {
    const auto ite = empirical.find(k);
    const auto itt = theory.find(k);
    if (ite == empirical.end() || itt == theory.end())
      throw config_error("compare: k=" + std::to_string(k) +
                         " missing from input files");
    const auto [value, se] = ite->second;
    const double expect = itt->second;
    const double band = args.se_multiplier * se;
    const double dev = se > 0.0 ? std::abs(value - expect) / se
                                : (value == expect ? 0.0 : HUGE_VAL);
    const bool pass = std::abs(value - expect) <= band;
    max_dev = std::max(max_dev, dev);
    passed += pass;
    ++cells;
    l1 += std::abs(value - expect);
    emp_total += value;
    theo_total += expect;
    rows.push_back({{"k", k},
                    {"empirical", value},
                    {"theory", expect},
                    {"se", se},
                    {"deviation_se", dev},
                    {"pass", pass}});
    plot += std::to_string(k) + "," + format_double(value) + "," +
            format_double(expect) + "," + format_double(band) + "\n";
  }

  nlohmann::json report;
  report["rows"] = rows;
  report["cells"] = cells;
  report["passed"] = passed;
  report["pass_rate"] =
      cells > 0 ? static_cast<double>(passed) / static_cast<double>(cells)
                : 1.0;
  report["max_deviation_se"] = max_dev;
  // TV between the range-normalized vectors; 0 for identical files
  const double scale = std::max(emp_total, theo_total);
  report["range_tv"] = scale > 0.0 ? l1 / (2.0 * scale) : 0.0;
  report["aggregate_pass"] = passed == cells;
  report["se_multiplier"] = args.se_multiplier;

  const std::string text = report.dump(2) + "\n";
  if (args.report_path.empty())
    log << text;
  else
    write_text_file(args.report_path, text);
  if (!args.plot_path.empty()) write_text_file(args.plot_path, plot);
  log << "compare: " << passed << "/" << cells << " cells within "
      << args.se_multiplier << " SE, max deviation " << format_double(max_dev)
      << " SE, " << (passed == cells ? "PASS" : "FAIL") << "\n";
  return kExitOk;
}

// limits: print the fitness-regime table for a parameter set.
inline int cmd_limits(const ModelParams& params, std::ostream& out) {
  const LimitRegime r = limit_constants(params);
  out << "regime: ";
  switch (r.regime) {
    case GrowthRegime::wildtype_dominant:
      out << "wildtype-dominant (lambda_a > lambda_b)\n";
      break;
    case GrowthRegime::balanced:
      out << "balanced (lambda_a = lambda_b)\n";
      break;
    case GrowthRegime::mutant_dominant:
      out << "mutant-dominant (lambda_a < lambda_b)\n";
      break;
  }
  out << "E[W] = " << format_double(r.mean_w) << "\n";
  if (!r.random_limit) {
    out << r.time_scaling << " -> " << format_double(r.time_constant)
        << " * W\n";
    out << r.tau_scaling << " -> " << format_double(r.tau_constant) << "\n";
    out << r.sigma_scaling << " -> " << format_double(r.sigma_constant)
        << "\n";
  } else {
    out << r.time_scaling << ", E[V] = " << format_double(r.mean_v) << "\n";
    out << r.tau_scaling << "\n";
    out << r.sigma_scaling << "\n";
  }
  return kExitOk;
}

}  // namespace mutfreq::cli

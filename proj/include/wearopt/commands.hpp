#pragma once

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "wearopt/csv.hpp"
#include "wearopt/domain.hpp"
#include "wearopt/dp.hpp"
#include "wearopt/errors.hpp"
#include "wearopt/heatmap.hpp"
#include "wearopt/landscape.hpp"
#include "wearopt/lp.hpp"
#include "wearopt/policy_eval.hpp"
#include "wearopt/sa.hpp"
#include "wearopt/wear_sim.hpp"

namespace wearopt {

/// Effective settings of one CLI invocation. A command is a pure function
/// of its RunConfig; the canonical form below is hashed into every output
/// header so artifacts are traceable to their exact configuration.
struct RunConfig {
  std::string history_path;
  std::string rate_a_path;
  std::string rate_b_path;

  Limits limits{90, 90};
  CostModel costs{};
  int bin_width = 9;
  int bins1 = 10;
  int bins2 = 10;
  double tol = 0.0;  // 0 means the cost-scaled default

  std::string out_dir = "out";
  std::uint64_t seed = 1;

  int sim_days = 0;
  int sim_events = 0;  // per-part target; 0 means run sim_days days
  bool dump_trajectory = false;

  std::vector<int> sa_iters_per_temp{20};
  std::vector<double> sa_cool{0.999};
  int sa_total_iters = 30000;
  double sa_a0 = 0.5;
  int sa_t0_samples = 1000;
  int sa_restarts = 1;
  int rate_lo = 1;
  int rate_hi = kRateMax;

  int population = 1000;
  int walk_starts = 500;
  int walk_steps = 1000;

  bool with_lp = false;
  int eval_horizon = 10000;
  std::string scenario = "default";

  TableShape shape() const { return {bin_width, bins1, bins2}; }

  std::string canonical() const {
    std::ostringstream ss;
    ss << "history=" << history_path << "\nrate_a=" << rate_a_path << "\nrate_b=" << rate_b_path
       << "\nl1=" << limits.l1 << "\nl2=" << limits.l2 << "\nc1=" << format_double(costs.c1)
       << "\nc2=" << format_double(costs.c2) << "\nv=" << format_double(costs.v)
       << "\nalpha=" << format_double(costs.alpha) << "\nbin_width=" << bin_width << "\nbins1=" << bins1
       << "\nbins2=" << bins2 << "\ntol=" << format_double(tol) << "\nseed=" << seed << "\nsim_days=" << sim_days
       << "\nsim_events=" << sim_events << "\ntrajectory=" << dump_trajectory << "\nsa_n=";
    for (int n : sa_iters_per_temp) ss << n << ";";
    ss << "\nsa_cool=";
    for (double c : sa_cool) ss << format_double(c) << ";";
    ss << "\nsa_total=" << sa_total_iters << "\nsa_a0=" << format_double(sa_a0)
       << "\nsa_t0_samples=" << sa_t0_samples << "\nsa_restarts=" << sa_restarts << "\nrate_lo=" << rate_lo
       << "\nrate_hi=" << rate_hi << "\npopulation=" << population << "\nwalk_starts=" << walk_starts
       << "\nwalk_steps=" << walk_steps << "\nwith_lp=" << with_lp << "\neval_horizon=" << eval_horizon
       << "\nscenario=" << scenario;
    return ss.str();
  }

  Provenance provenance() const { return {hex64(fnv1a64(canonical())), seed}; }
};

namespace detail {

inline std::filesystem::path prepare_out_dir(const RunConfig& cfg) {
  std::filesystem::path dir(cfg.out_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void report_cost_warnings(const RunConfig& cfg, std::ostream& diag) {
  for (const auto& w : cfg.costs.validate()) diag << "warning: " << w << "\n";
}

inline void check_shape_covers_limits(const RunConfig& cfg) {
  if (cfg.bin_width * cfg.bins1 < cfg.limits.l1 || cfg.bin_width * cfg.bins2 < cfg.limits.l2)
    throw ValidationError("bin layout does not cover the sub-limit states");
}

}  // namespace detail

/// simulate: run the limit-replacement regime and write the produced
/// failure record (and optionally the per-day trajectory).
inline int cmd_simulate(const RunConfig& cfg, std::ostream& diag = std::cerr) {
  const auto dir = detail::prepare_out_dir(cfg);
  const Provenance prov = cfg.provenance();
  const RateTable rates = load_rate_table(cfg.rate_a_path, cfg.rate_b_path);

  StopRule stop = MaxDays{cfg.sim_days};
  if (cfg.sim_events > 0)
    stop = TargetCounts{cfg.sim_events, cfg.sim_events,
                        10 * cfg.sim_events * std::max(cfg.limits.l1, cfg.limits.l2)};

  const SimOutcome outcome = simulate_limit_policy(rates, cfg.limits, stop, cfg.dump_trajectory);
  {
    auto os = open_output(dir / "history.csv");
    write_history(os, outcome.history, prov);
  }
  if (cfg.dump_trajectory) {
    auto os = open_output(dir / "trajectory.csv");
    write_trajectory(os, outcome.trajectory, prov);
  }
  diag << "simulated " << outcome.days_run << " days, " << outcome.history.events.size() << " events\n";
  return kExitOk;
}

/// estimate: anneal rate tables against a historical record, one summary
/// row per (iters_per_temp, cool) combination, restarts fanned out over
/// worker threads. The overall best table and its trace are written next
/// to the summary.
inline int cmd_estimate(const RunConfig& cfg, std::ostream& diag = std::cerr) {
  const auto dir = detail::prepare_out_dir(cfg);
  const Provenance prov = cfg.provenance();
  detail::check_shape_covers_limits(cfg);
  const FailureHistory history = load_history(cfg.history_path);
  history.validate_for_estimation();

  std::vector<SummaryRow> rows;
  const SARun* best = nullptr;
  std::vector<SARun> all_runs;
  all_runs.reserve(cfg.sa_iters_per_temp.size() * cfg.sa_cool.size() * static_cast<size_t>(cfg.sa_restarts));

  for (int n : cfg.sa_iters_per_temp) {
    for (double cool : cfg.sa_cool) {
      SAConfig base;
      base.a0 = cfg.sa_a0;
      base.cool = cool;
      base.iters_per_temp = n;
      base.total_iters = cfg.sa_total_iters;
      base.init_temp_samples = cfg.sa_t0_samples;
      base.seed = cfg.seed;
      base.rate_lo = cfg.rate_lo;
      base.rate_hi = cfg.rate_hi;

      std::vector<SARun> runs = anneal_restarts(history, cfg.limits, cfg.shape(), base, cfg.sa_restarts);
      SummaryRow row;
      row.iters_per_temp = n;
      row.cool = cool;
      double t0_sum = 0.0, best_sum = 0.0;
      for (const auto& run : runs) {
        t0_sum += run.initial_temperature;
        best_sum += run.best_objective;
        row.best_objectives.push_back(run.best_objective);
      }
      row.t0 = t0_sum / static_cast<double>(runs.size());
      row.average = best_sum / static_cast<double>(runs.size());
      rows.push_back(std::move(row));
      for (auto& run : runs) all_runs.push_back(std::move(run));
    }
  }
  for (const auto& run : all_runs)
    if (best == nullptr || run.best_objective < best->best_objective) best = &run;

  {
    auto os = open_output(dir / "summary.csv");
    write_sa_summary(os, rows, prov);
  }
  save_rate_table(dir / "rate_a.csv", dir / "rate_b.csv", best->best, prov);
  {
    auto os = open_output(dir / "sa_trace.csv");
    write_sa_trace(os, *best, prov);
  }
  diag << "best objective " << format_double(best->best_objective) << " (seed " << best->seed << ")\n";
  return kExitOk;
}

inline void write_structure_report(std::ostream& os, const StructureReport& report, const SolveResult& solve,
                                   const Provenance& prov) {
  write_provenance(os, prov);
  os << "iterations = " << solve.iterations << "\n";
  os << "final_sup_diff = " << format_double(solve.sup_diffs.empty() ? 0.0 : solve.sup_diffs.back()) << "\n";
  os << "structure = " << (report.pass() ? "PASS" : "FAIL") << "\n";
  os << "violations = " << report.violations.size() << "\n";
  if (auto first = report.first())
    os << "first_violation = " << first->check << " at d1=" << first->d1 << " d2=" << first->d2 << "\n";
  os << "replace2_without_proceed_at_reset = " << report.replace2_without_proceed_at_reset << " (diagnostic)\n";
}

/// solve: value-iterate to the fixed point, extract the policy and its
/// replacement limits, verify the proven structure, export grids and the
/// heatmap. Structure failures yield exit code 3.
inline int cmd_solve(const RunConfig& cfg, std::ostream& diag = std::cerr) {
  const auto dir = detail::prepare_out_dir(cfg);
  const Provenance prov = cfg.provenance();
  detail::report_cost_warnings(cfg, diag);
  const RateTable rates = load_rate_table(cfg.rate_a_path, cfg.rate_b_path);

  const double tol = cfg.tol > 0 ? cfg.tol : default_tolerance(cfg.costs);
  const SolveResult solve = value_iteration(rates, cfg.costs, cfg.limits, tol);
  const PolicyGrid policy = extract_policy(solve.u, rates, cfg.costs, cfg.limits);
  const StructureReport report = check_structure(solve.u, policy);

  {
    auto os = open_output(dir / "value.csv");
    write_value_grid(os, solve.u, prov);
  }
  {
    auto os = open_output(dir / "policy.csv");
    write_policy_grid(os, policy, prov);
  }
  {
    auto os = open_output(dir / "policy.ppm");
    write_policy_heatmap(os, policy, prov);
  }
  {
    auto os = open_output(dir / "policy_legend.txt");
    write_heatmap_legend(os, prov);
  }
  {
    auto os = open_output(dir / "structure_report.txt");
    write_structure_report(os, report, solve, prov);
  }
  if (cfg.with_lp) {
    auto os = open_output(dir / "model.lp");
    write_provenance(os, prov, "\\ ");
    write_lp(os, build_lp(rates, cfg.costs, cfg.limits));
  }
  if (!report.pass()) {
    diag << "structure checks FAILED, see structure_report.txt\n";
    return kExitStructure;
  }
  {
    auto os = open_output(dir / "thresholds.csv");
    write_thresholds(os, thresholds(policy), prov);
  }
  diag << "converged in " << solve.iterations << " sweeps, structure checks pass\n";
  return kExitOk;
}

/// landscape: objective-space diagnostics (amplitude, mean hill-climb
/// length, lag-1 autocorrelation along a random walk).
inline int cmd_landscape(const RunConfig& cfg, std::ostream& diag = std::cerr) {
  const auto dir = detail::prepare_out_dir(cfg);
  const Provenance prov = cfg.provenance();
  detail::check_shape_covers_limits(cfg);
  const FailureHistory history = load_history(cfg.history_path);
  history.validate_for_estimation();
  const SearchSpace space{cfg.shape(), cfg.rate_lo, cfg.rate_hi};

  Rng rng(cfg.seed);
  std::vector<double> population;
  population.reserve(static_cast<size_t>(cfg.population));
  for (int i = 0; i < cfg.population; ++i)
    population.push_back(sse_objective(random_table(space, rng), cfg.limits, history).sse);

  LandscapeReport report;
  report.amplitude = amplitude(population);
  report.mean_walk_length = mean_walk_length(history, cfg.limits, space, cfg.walk_starts, rng);
  const std::vector<double> series = random_walk_objectives(history, cfg.limits, space, cfg.walk_steps, rng);
  report.r1 = lag1_autocorrelation(series);
  report.population_size = cfg.population;
  report.walk_starts = cfg.walk_starts;
  report.walk_steps = cfg.walk_steps;
  report.seed = cfg.seed;

  {
    auto os = open_output(dir / "landscape.txt");
    write_provenance(os, prov);
    os << "amplitude = " << format_double(report.amplitude) << "\n";
    os << "mean_walk_length = " << format_double(report.mean_walk_length) << "\n";
    if (report.r1)
      os << "r1 = " << format_double(*report.r1) << "\n";
    else
      os << "r1 = undefined (constant walk)\n";
    os << "population_size = " << report.population_size << "\n";
    os << "walk_starts = " << report.walk_starts << "\n";
    os << "walk_steps = " << report.walk_steps << "\n";
    os << "seed = " << report.seed << "\n";
  }
  {
    auto os = open_output(dir / "walk.csv");
    write_series(os, series, prov);
  }
  diag << "amplitude " << format_double(report.amplitude) << ", mean walk "
       << format_double(report.mean_walk_length) << ", r1 "
       << (report.r1 ? format_double(*report.r1) : std::string("undefined")) << "\n";
  return kExitOk;
}

/// evaluate: solve for the optimal policy and compare its mean daily cost
/// against the historical record under a shared cost definition.
inline int cmd_evaluate(const RunConfig& cfg, std::ostream& diag = std::cerr) {
  const auto dir = detail::prepare_out_dir(cfg);
  const Provenance prov = cfg.provenance();
  detail::report_cost_warnings(cfg, diag);
  const FailureHistory history = load_history(cfg.history_path);
  const RateTable rates = load_rate_table(cfg.rate_a_path, cfg.rate_b_path);

  const double tol = cfg.tol > 0 ? cfg.tol : default_tolerance(cfg.costs);
  const SolveResult solve = value_iteration(rates, cfg.costs, cfg.limits, tol);
  const PolicyGrid policy = extract_policy(solve.u, rates, cfg.costs, cfg.limits);

  const CostReport historical = historical_cost(history, cfg.costs);
  const CostReport optimal = policy_cost(policy, rates, cfg.costs, cfg.limits, cfg.eval_horizon);
  const double reduction = compare(optimal, historical);

  std::vector<ComparisonRow> rows{
      {cfg.scenario, historical.mean_cost_per_day(), optimal.mean_cost_per_day(), reduction}};
  {
    auto os = open_output(dir / "comparison.csv");
    write_comparison(os, rows, prov);
  }
  diag << "historical mean " << format_double(historical.mean_cost_per_day()) << ", policy mean "
       << format_double(optimal.mean_cost_per_day()) << ", reduction "
       << format_double(reduction) << "%\n";
  return kExitOk;
}

/// export-lp: write the equivalent linear program for external solvers.
inline int cmd_export_lp(const RunConfig& cfg, std::ostream& diag = std::cerr) {
  const auto dir = detail::prepare_out_dir(cfg);
  const Provenance prov = cfg.provenance();
  detail::report_cost_warnings(cfg, diag);
  const RateTable rates = load_rate_table(cfg.rate_a_path, cfg.rate_b_path);
  const LpModel lp = build_lp(rates, cfg.costs, cfg.limits);
  {
    auto os = open_output(dir / "model.lp");
    write_provenance(os, prov, "\\ ");
    write_lp(os, lp);
  }
  diag << lp.objective_vars.size() << " variables, " << lp.constraints.size() << " constraints\n";
  return kExitOk;
}

}  // namespace wearopt

// Command-line front end: ingest failure histories, estimate deterioration
// rates, solve for the optimal replacement policy, analyze the objective
// landscape, and compare policy costs.

#include <exception>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wearopt/commands.hpp"
#include "wearopt/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"replacement-policy toolkit for a two-part system with dependent wear"};
  app.require_subcommand(1);
  app.fallthrough();  // options given after a verb reach the shared set below
  app.set_config("--config", "", "configuration file (INI; command-line flags override)");
  app.allow_config_extras(CLI::config_extras_mode::ignore_all);

  wearopt::RunConfig cfg;

  app.add_option("--history", cfg.history_path, "failure history CSV (time,part)");
  app.add_option("--rate-a", cfg.rate_a_path, "part-1 rate matrix CSV");
  app.add_option("--rate-b", cfg.rate_b_path, "part-2 rate matrix CSV");
  app.add_option("--l1", cfg.limits.l1, "replacement limit of part 1 (0.01 mm)");
  app.add_option("--l2", cfg.limits.l2, "replacement limit of part 2 (0.01 mm)");
  app.add_option("--c1", cfg.costs.c1, "replacement cost of part 1");
  app.add_option("--c2", cfg.costs.c2, "replacement cost of part 2");
  app.add_option("--v", cfg.costs.v, "simultaneous replacement cost");
  app.add_option("--alpha", cfg.costs.alpha, "discount factor");
  app.add_option("--bin-width", cfg.bin_width, "deterioration band width");
  app.add_option("--bins1", cfg.bins1, "number of part-1 bands");
  app.add_option("--bins2", cfg.bins2, "number of part-2 bands");
  app.add_option("--tol", cfg.tol, "value-iteration tolerance (0 = cost-scaled default)");
  app.add_option("--seed", cfg.seed, "master random seed");
  app.add_option("--out", cfg.out_dir, "output directory");
  app.add_option("--rate-lo", cfg.rate_lo, "lower rate bound for search");
  app.add_option("--rate-hi", cfg.rate_hi, "upper rate bound for search");

  auto* simulate = app.add_subcommand("simulate", "run the limit-replacement wear simulation");
  simulate->add_option("--days", cfg.sim_days, "number of days to simulate");
  simulate->add_option("--events", cfg.sim_events, "per-part event target (overrides --days)");
  simulate->add_flag("--trajectory", cfg.dump_trajectory, "write the per-day wear trajectory");

  auto* estimate = app.add_subcommand("estimate", "estimate rate tables from a failure history");
  estimate->add_option("--iters-per-temp", cfg.sa_iters_per_temp, "iterations per temperature (repeatable)");
  estimate->add_option("--cool", cfg.sa_cool, "cooling coefficient (repeatable)");
  estimate->add_option("--total-iters", cfg.sa_total_iters, "annealing iteration budget");
  estimate->add_option("--a0", cfg.sa_a0, "target initial acceptance fraction");
  estimate->add_option("--t0-samples", cfg.sa_t0_samples, "samples for the initial temperature");
  estimate->add_option("--restarts", cfg.sa_restarts, "independent seeded restarts");

  auto* solve = app.add_subcommand("solve", "compute the optimal replacement policy");
  solve->add_flag("--lp", cfg.with_lp, "also export the linear program");

  auto* landscape = app.add_subcommand("landscape", "objective-landscape diagnostics");
  landscape->add_option("--population", cfg.population, "random population size for the amplitude index");
  landscape->add_option("--starts", cfg.walk_starts, "hill-climb starts");
  landscape->add_option("--walk-steps", cfg.walk_steps, "random-walk length");

  auto* evaluate = app.add_subcommand("evaluate", "compare policy cost against the historical record");
  evaluate->add_option("--horizon", cfg.eval_horizon, "evaluation horizon in days");
  evaluate->add_option("--scenario", cfg.scenario, "scenario label for the comparison row");

  auto* export_lp = app.add_subcommand("export-lp", "write the equivalent linear program");

  CLI11_PARSE(app, argc, argv);

  try {
    if (simulate->parsed()) return wearopt::cmd_simulate(cfg);
    if (estimate->parsed()) return wearopt::cmd_estimate(cfg);
    if (solve->parsed()) return wearopt::cmd_solve(cfg);
    if (landscape->parsed()) return wearopt::cmd_landscape(cfg);
    if (evaluate->parsed()) return wearopt::cmd_evaluate(cfg);
    if (export_lp->parsed()) return wearopt::cmd_export_lp(cfg);
  } catch (const wearopt::StructureViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wearopt::kExitStructure;
  } catch (const wearopt::NonTerminating& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wearopt::kExitRuntimeCap;
  } catch (const wearopt::IterationCap& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wearopt::kExitRuntimeCap;
  } catch (const wearopt::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return wearopt::kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

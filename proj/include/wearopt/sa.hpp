#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <string>
#include <thread>
#include <vector>

#include "wearopt/domain.hpp"
#include "wearopt/errors.hpp"
#include "wearopt/rng.hpp"
#include "wearopt/wear_sim.hpp"

namespace wearopt {

struct TableShape {
  int bin_width = 9;
  int m1 = 10;
  int m2 = 10;
};

/// The space annealing searches: integer rate matrices of a fixed shape
/// with entries in [rate_lo, rate_hi].
struct SearchSpace {
  TableShape shape;
  int rate_lo = 1;
  int rate_hi = kRateMax;
};

struct SAConfig {
  double a0 = 0.5;          // target acceptance fraction at the initial temperature
  double cool = 0.99;       // geometric cooling coefficient
  int iters_per_temp = 20;  // iterations per temperature epoch
  int total_iters = 30000;
  int init_temp_samples = 1000;
  std::uint64_t seed = 1;
  int rate_lo = 1;
  int rate_hi = kRateMax;

  void validate() const {
    if (a0 <= 0.0 || a0 >= 1.0) throw ValidationError("a0 must lie in (0, 1)");
    if (cool <= 0.0 || cool > 1.0) throw ValidationError("cooling coefficient must lie in (0, 1]");
    if (iters_per_temp < 1 || total_iters < iters_per_temp)
      throw ValidationError("need total_iters >= iters_per_temp >= 1");
    if (init_temp_samples < 2) throw ValidationError("need at least 2 temperature samples");
    if (rate_lo < 1 || rate_hi > kRateMax || rate_lo > rate_hi) throw ValidationError("bad rate bounds");
  }

  SearchSpace space(const TableShape& shape) const { return {shape, rate_lo, rate_hi}; }
};

struct TraceEntry {
  int iteration;
  double temperature;
  double objective;  // objective of the current solution after accept/reject
  bool accepted;
  double delta;      // proposed objective minus current, kept for diagnostics
};

struct TemperatureDiagnostics {
  double delta_plus = 0.0;  // mean strict increase among sampled neighbor moves
  int decreases = 0;
  int increases = 0;
  bool flat = false;        // no sampled move increased the objective
};

struct SARun {
  RateTable best;
  double best_objective = 0.0;
  std::vector<TraceEntry> trace;
  double initial_temperature = 0.0;
  TemperatureDiagnostics temp_diag;
  std::uint64_t seed = 0;
};

/// Uniform random table over the search space. Draw order is fixed (matrix
/// a then b, row-major) so streams are reproducible.
inline RateTable random_table(const SearchSpace& space, Rng& rng) {
  RateTable t = RateTable::constant(space.shape.bin_width, space.shape.m1, space.shape.m2, 1, 1);
  for (int& r : t.a) r = rng.uniform_int(space.rate_lo, space.rate_hi);
  for (int& r : t.b) r = rng.uniform_int(space.rate_lo, space.rate_hi);
  return t;
}

/// Single-change move: one cell of one matrix shifts by exactly 1. Clamped
/// moves are resampled; with degenerate bounds the copy returns unchanged.
inline RateTable neighbor(const RateTable& rates, const SearchSpace& space, Rng& rng) {
  RateTable out = rates;
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<int>& m = rng.coin() ? out.a : out.b;
    const int cell = rng.uniform_int(0, static_cast<int>(m.size()) - 1);
    const int moved = m[static_cast<size_t>(cell)] + (rng.coin() ? 1 : -1);
    if (moved < space.rate_lo || moved > space.rate_hi) continue;
    m[static_cast<size_t>(cell)] = moved;
    return out;
  }
  return out;
}

/// Constant-rate starting table: each part's rate is its limit divided by
/// its mean inter-failure interval, clamped to the admissible range.
inline RateTable initial_solution(const FailureHistory& history, const Limits& limits, const TableShape& shape) {
  history.validate_for_estimation();
  auto mean_rate = [&](int part, int limit) {
    const auto times = history.times(part);
    const double mean_interval = static_cast<double>(times.back()) / static_cast<double>(times.size());
    const long r = std::lround(static_cast<double>(limit) / mean_interval);
    return static_cast<int>(std::clamp(r, 1L, static_cast<long>(kRateMax)));
  };
  return RateTable::constant(shape.bin_width, shape.m1, shape.m2, mean_rate(1, limits.l1), mean_rate(2, limits.l2));
}

struct InitialTemperature {
  double t0 = 0.0;
  TemperatureDiagnostics diag;
};

/// Temperature at which a fraction a0 of a sampled move population is
/// accepted. With s strict decreases (always accepted) and d strict
/// increases of mean size delta_plus, the balance
///   (s + d*exp(-delta_plus/T)) / (s + d) = a0
/// solves to T0 = delta_plus / ln(d / (d*a0 - s*(1 - a0))) whenever the
/// log argument is positive; otherwise the indifferent form
/// T0 = delta_plus / ln(1/a0) applies. Both coincide when s = 0.
inline double temperature_from_counts(double delta_plus, int decreases, int increases, double a0) {
  const double balance = increases * a0 - decreases * (1.0 - a0);
  if (balance > 0.0) return delta_plus / std::log(static_cast<double>(increases) / balance);
  return delta_plus / std::log(1.0 / a0);
}

/// Landscape-probing estimate of the starting temperature: samples random
/// tables with one neighbor each and solves for the temperature accepting
/// the configured fraction of that population.
inline InitialTemperature initial_temperature(const FailureHistory& history, const Limits& limits,
                                              const TableShape& shape, const SAConfig& config, Rng& rng) {
  config.validate();
  const SearchSpace space = config.space(shape);
  double sum_increase = 0.0;
  TemperatureDiagnostics diag;
  for (int k = 0; k < config.init_temp_samples; ++k) {
    const RateTable base = random_table(space, rng);
    const RateTable moved = neighbor(base, space, rng);
    const double delta = sse_objective(moved, limits, history).sse - sse_objective(base, limits, history).sse;
    if (delta > 0) {
      ++diag.increases;
      sum_increase += delta;
    } else if (delta < 0) {
      ++diag.decreases;
    }
  }

  InitialTemperature out;
  if (diag.increases == 0) {
    diag.flat = true;
    out.diag = diag;
    out.t0 = 1.0;  // fallback: nothing to accept thermally
    return out;
  }
  diag.delta_plus = sum_increase / diag.increases;
  out.t0 = temperature_from_counts(diag.delta_plus, diag.decreases, diag.increases, config.a0);
  out.diag = diag;
  return out;
}

/// Metropolis annealing over the rate-table space against the squared-
/// deviation objective. Starts from the constant-rate solution at the
/// sampled initial temperature; temperature decays geometrically every
/// iters_per_temp iterations. Fully reproducible from the seed.
inline SARun anneal(const FailureHistory& history, const Limits& limits, const TableShape& shape,
                    const SAConfig& config) {
  config.validate();
  history.validate_for_estimation();
  const SearchSpace space = config.space(shape);

  Rng rng(config.seed);
  RateTable current = initial_solution(history, limits, shape);
  for (int& r : current.a) r = std::clamp(r, space.rate_lo, space.rate_hi);
  for (int& r : current.b) r = std::clamp(r, space.rate_lo, space.rate_hi);

  const InitialTemperature t0 = initial_temperature(history, limits, shape, config, rng);

  SARun run;
  run.seed = config.seed;
  run.initial_temperature = t0.t0;
  run.temp_diag = t0.diag;
  run.trace.reserve(static_cast<size_t>(config.total_iters));

  double f_current = sse_objective(current, limits, history).sse;
  run.best = current;
  run.best_objective = f_current;

  double temperature = t0.t0;
  for (int it = 1; it <= config.total_iters; ++it) {
    RateTable candidate = neighbor(current, space, rng);
    const double f_candidate = sse_objective(candidate, limits, history).sse;
    const double delta = f_candidate - f_current;
    const bool accepted = delta <= 0.0 || rng.uniform_real() < std::exp(-delta / temperature);
    if (accepted) {
      current = std::move(candidate);
      f_current = f_candidate;
      if (f_current < run.best_objective) {
        run.best = current;
        run.best_objective = f_current;
      }
    }
    run.trace.push_back({it, temperature, f_current, accepted, delta});
    if (it % config.iters_per_temp == 0) temperature *= config.cool;
  }
  return run;
}

/// Independent seeded restarts; results come back in seed order regardless
/// of scheduling.
inline std::vector<SARun> anneal_restarts(const FailureHistory& history, const Limits& limits,
                                          const TableShape& shape, const SAConfig& base, int restarts) {
  std::vector<std::future<SARun>> futures;
  futures.reserve(static_cast<size_t>(restarts));
  for (int i = 0; i < restarts; ++i) {
    SAConfig config = base;
    config.seed = base.seed + static_cast<std::uint64_t>(i);
    futures.push_back(std::async(std::launch::async | std::launch::deferred,
                                 [=, &history]() { return anneal(history, limits, shape, config); }));
  }
  std::vector<SARun> runs;
  runs.reserve(futures.size());
  for (auto& f : futures) runs.push_back(f.get());
  return runs;
}

}  // namespace wearopt

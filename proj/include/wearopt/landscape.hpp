#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wearopt/domain.hpp"
#include "wearopt/errors.hpp"
#include "wearopt/rng.hpp"
#include "wearopt/sa.hpp"
#include "wearopt/wear_sim.hpp"

namespace wearopt {

/// Population spread of objective values: |P| * (max - min) / sum. Low
/// values indicate an objective space friendly to single-solution
/// metaheuristics.
inline double amplitude(std::span<const double> objectives) {
  if (objectives.empty()) throw ValidationError("amplitude needs a nonempty population");
  double lo = objectives[0], hi = objectives[0], sum = 0.0;
  for (double f : objectives) {
    lo = std::min(lo, f);
    hi = std::max(hi, f);
    sum += f;
  }
  if (sum == 0.0) throw ValidationError("population mass is zero; amplitude undefined");
  return static_cast<double>(objectives.size()) * (hi - lo) / sum;
}

namespace detail {

struct Move {
  bool in_a;
  int cell;
  int delta;  // +1 or -1
};

/// All in-bounds single-cell moves from the given table.
inline std::vector<Move> enumerate_moves(const RateTable& t, const SearchSpace& space) {
  std::vector<Move> moves;
  moves.reserve(2 * (t.a.size() + t.b.size()));
  auto scan = [&](const std::vector<int>& m, bool in_a) {
    for (int cell = 0; cell < static_cast<int>(m.size()); ++cell) {
      const int value = m[static_cast<size_t>(cell)];
      if (value + 1 <= space.rate_hi) moves.push_back({in_a, cell, +1});
      if (value - 1 >= space.rate_lo) moves.push_back({in_a, cell, -1});
    }
  };
  scan(t.a, true);
  scan(t.b, false);
  return moves;
}

inline RateTable apply_move(const RateTable& t, const Move& mv) {
  RateTable out = t;
  std::vector<int>& m = mv.in_a ? out.a : out.b;
  m[static_cast<size_t>(mv.cell)] += mv.delta;
  return out;
}

}  // namespace detail

/// First-improvement hill climb from one start: neighbors are scanned in a
/// fresh random order each step and the first strict improvement is taken.
/// Returns the number of improving moves until no neighbor improves.
inline int walk_length_from(const RateTable& start, const FailureHistory& history, const Limits& limits,
                            const SearchSpace& space, Rng& rng) {
  RateTable current = start;
  double f = sse_objective(current, limits, history).sse;
  int steps = 0;
  for (;;) {
    std::vector<detail::Move> moves = detail::enumerate_moves(current, space);
    shuffle(moves, rng);
    bool improved = false;
    for (const auto& mv : moves) {
      RateTable candidate = detail::apply_move(current, mv);
      const double fc = sse_objective(candidate, limits, history).sse;
      if (fc < f) {
        current = std::move(candidate);
        f = fc;
        ++steps;
        improved = true;
        break;
      }
    }
    if (!improved) return steps;
  }
}

/// Mean hill-climb length over random starts. A start that is already
/// locally optimal contributes zero.
inline double mean_walk_length(const FailureHistory& history, const Limits& limits, const SearchSpace& space,
                               int n_starts, Rng& rng) {
  if (n_starts < 1) throw ValidationError("need at least one start");
  long long total = 0;
  for (int k = 0; k < n_starts; ++k) {
    const RateTable start = random_table(space, rng);
    total += walk_length_from(start, history, limits, space, rng);
  }
  return static_cast<double>(total) / n_starts;
}

/// Objective series along a neighbor-move random walk of m states.
inline std::vector<double> random_walk_objectives(const FailureHistory& history, const Limits& limits,
                                                  const SearchSpace& space, int m, Rng& rng) {
  if (m < 3) throw ValidationError("walk needs at least 3 states");
  std::vector<double> series;
  series.reserve(static_cast<size_t>(m));
  RateTable current = random_table(space, rng);
  series.push_back(sse_objective(current, limits, history).sse);
  for (int t = 1; t < m; ++t) {
    current = neighbor(current, space, rng);
    series.push_back(sse_objective(current, limits, history).sse);
  }
  return series;
}

/// Lag-1 sample autocorrelation of a series; nullopt when the series is
/// constant (roughness undefined rather than a number).
inline std::optional<double> lag1_autocorrelation(std::span<const double> series) {
  const size_t m = series.size();
  if (m < 3) throw ValidationError("autocorrelation needs at least 3 values");
  double mean = 0.0;
  for (double f : series) mean += f;
  mean /= static_cast<double>(m);
  double num = 0.0, denom = 0.0;
  for (size_t t = 0; t < m; ++t) {
    const double dev = series[t] - mean;
    denom += dev * dev;
    if (t + 1 < m) num += dev * (series[t + 1] - mean);
  }
  if (denom == 0.0) return std::nullopt;
  return num / denom;
}

inline std::optional<double> autocorrelation_r1(const FailureHistory& history, const Limits& limits,
                                                const SearchSpace& space, int m, Rng& rng) {
  return lag1_autocorrelation(random_walk_objectives(history, limits, space, m, rng));
}

struct LandscapeReport {
  double amplitude = 0.0;
  double mean_walk_length = 0.0;
  std::optional<double> r1;
  int population_size = 0;
  int walk_starts = 0;
  int walk_steps = 0;
  std::uint64_t seed = 0;
};

}  // namespace wearopt

#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "wearopt/domain.hpp"
#include "wearopt/errors.hpp"

namespace wearopt {

/// One day of wear. Increments are read from the start-of-day state and
/// applied to both parts.
inline WearState step_day(const WearState& s, const RateTable& rates) {
  const auto [da, db] = rate_lookup(s, rates);
  return {s.d1 + da, s.d2 + db};
}

/// Run for exactly this many days.
struct MaxDays {
  int days = 0;
};

/// Run until each part has produced its target number of events, or fail
/// at cap_days.
struct TargetCounts {
  int n1 = 0;
  int n2 = 0;
  int cap_days = 0;
};

using StopRule = std::variant<MaxDays, TargetCounts>;

struct TrajectoryPoint {
  int day;
  int d1;  // end-of-day deterioration, after any replacement reset
  int d2;
  Which event;      // meaningful only when has_event
  bool has_event = false;
  friend bool operator==(const TrajectoryPoint&, const TrajectoryPoint&) = default;
};

struct SimOutcome {
  FailureHistory history;
  std::vector<TrajectoryPoint> trajectory;  // filled only when requested
  int days_run = 0;
  bool reached_targets = false;  // target mode only
};

namespace detail {

/// Core day loop shared by the public simulator and the objective. Starting
/// from a fresh system, each day wears both parts; a part at or over its
/// limit at the end of the day is recorded and reset to 0. Never throws;
/// target shortfalls surface via reached_targets.
inline SimOutcome run_limit_sim(const RateTable& rates, const Limits& limits, const StopRule& stop,
                                bool keep_trajectory) {
  SimOutcome out;
  int d1 = 0, d2 = 0;
  int n1 = 0, n2 = 0;
  int day = 0;

  const bool target_mode = std::holds_alternative<TargetCounts>(stop);
  const TargetCounts targets = target_mode ? std::get<TargetCounts>(stop) : TargetCounts{};
  const int max_days = target_mode ? targets.cap_days : std::get<MaxDays>(stop).days;

  while (day < max_days) {
    if (target_mode && n1 >= targets.n1 && n2 >= targets.n2) break;
    ++day;
    const auto [da, db] = rate_lookup({d1, d2}, rates);
    d1 += da;
    d2 += db;
    const bool f1 = d1 >= limits.l1;
    const bool f2 = d2 >= limits.l2;
    bool has_event = f1 || f2;
    Which which = Which::Both;
    if (f1 && f2) {
      ++n1;
      ++n2;
      d1 = d2 = 0;
    } else if (f1) {
      which = Which::Part1;
      ++n1;
      d1 = 0;
    } else if (f2) {
      which = Which::Part2;
      ++n2;
      d2 = 0;
    }
    if (has_event) out.history.events.push_back({day, which});
    if (keep_trajectory) out.trajectory.push_back({day, d1, d2, which, has_event});
  }
  out.days_run = day;
  out.reached_targets = target_mode && n1 >= targets.n1 && n2 >= targets.n2;
  return out;
}

}  // namespace detail

/// Deterministic limit-replacement simulation. In target mode, throws
/// NonTerminating if the targets were not met within the safety cap.
inline SimOutcome simulate_limit_policy(const RateTable& rates, const Limits& limits, const StopRule& stop,
                                        bool keep_trajectory = false) {
  limits.validate();
  rates.validate(limits);
  SimOutcome out = detail::run_limit_sim(rates, limits, stop, keep_trajectory);
  if (std::holds_alternative<TargetCounts>(stop) && !out.reached_targets)
    throw NonTerminating("target event counts not reached within " +
                         std::to_string(std::get<TargetCounts>(stop).cap_days) + " days");
  return out;
}

struct ObjectiveValue {
  double sse = 0.0;                 // sum of squared interval deviations (+ penalties)
  std::pair<int, int> matched_events{0, 0};
  bool penalty_applied = false;
  double sse_abs_times = 0.0;       // diagnostic: deviations of absolute event times
};

/// Squared-deviation objective of a candidate rate table against a
/// historical record. The simulation runs until both parts have produced as
/// many events as the history holds (Both events count toward both parts),
/// capped at 10x the historical horizon; the nth simulated inter-failure
/// interval of each part is matched with the nth historical one. Every
/// event the simulation failed to produce adds a penalty of horizon^2.
inline ObjectiveValue sse_objective(const RateTable& rates, const Limits& limits, const FailureHistory& history) {
  if (history.events.empty()) throw ValidationError("history must be nonempty");

  const std::vector<int> want_iv1 = history.intervals(1);
  const std::vector<int> want_iv2 = history.intervals(2);
  const int target1 = static_cast<int>(want_iv1.size());
  const int target2 = static_cast<int>(want_iv2.size());
  const int horizon = history.horizon();
  const int cap_days = 10 * horizon;

  // Tight private day loop: the objective sits inside annealing and
  // landscape walks, so it avoids building event vectors.
  const int l1 = limits.l1, l2 = limits.l2;
  const int width = rates.bin_width;
  const int m1 = rates.m1, m2 = rates.m2;
  const int* ra = rates.a.data();
  const int* rb = rates.b.data();

  double sse = 0.0, sse_abs = 0.0;
  int d1 = 0, d2 = 0, n1 = 0, n2 = 0, last1 = 0, last2 = 0, day = 0;
  int t_abs1 = 0, t_abs2 = 0;  // cumulative historical times for the diagnostic

  while ((n1 < target1 || n2 < target2) && day < cap_days) {
    ++day;
    const int b1 = std::min(d1 / width, m1 - 1);
    const int b2 = std::min(d2 / width, m2 - 1);
    d1 += ra[b1 * m2 + b2];
    d2 += rb[b1 * m2 + b2];
    if (d1 >= l1) {
      if (n1 < target1) {
        const double eps = (day - last1) - want_iv1[static_cast<size_t>(n1)];
        sse += eps * eps;
        t_abs1 += want_iv1[static_cast<size_t>(n1)];
        const double eps_abs = day - t_abs1;
        sse_abs += eps_abs * eps_abs;
      }
      ++n1;
      last1 = day;
      d1 = 0;
    }
    if (d2 >= l2) {
      if (n2 < target2) {
        const double eps = (day - last2) - want_iv2[static_cast<size_t>(n2)];
        sse += eps * eps;
        t_abs2 += want_iv2[static_cast<size_t>(n2)];
        const double eps_abs = day - t_abs2;
        sse_abs += eps_abs * eps_abs;
      }
      ++n2;
      last2 = day;
      d2 = 0;
    }
  }

  ObjectiveValue out;
  out.matched_events = {std::min(n1, target1), std::min(n2, target2)};
  const int missing = (target1 - out.matched_events.first) + (target2 - out.matched_events.second);
  if (missing > 0) {
    out.penalty_applied = true;
    sse += static_cast<double>(missing) * static_cast<double>(horizon) * static_cast<double>(horizon);
  }
  out.sse = sse;
  out.sse_abs_times = sse_abs;
  return out;
}

}  // namespace wearopt

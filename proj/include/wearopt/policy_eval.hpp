#pragma once

#include <algorithm>
#include <string>

#include "wearopt/domain.hpp"
#include "wearopt/dp.hpp"
#include "wearopt/errors.hpp"

namespace wearopt {

struct CostReport {
  double total_cost = 0.0;
  int horizon_days = 0;
  int replacements_part1 = 0;  // single part-1 replacements
  int replacements_part2 = 0;
  int replacements_both = 0;

  double mean_cost_per_day() const { return horizon_days > 0 ? total_cost / horizon_days : 0.0; }
};

/// Replacement spend recorded in a historical log: each event pays its
/// action's cost, averaged over the time of the last event. The same
/// mean-per-day definition is applied to simulated policies so reduction
/// percentages are internally consistent.
inline CostReport historical_cost(const FailureHistory& history, const CostModel& costs) {
  CostReport report;
  report.horizon_days = history.horizon();
  for (const auto& e : history.events) {
    switch (e.which) {
      case Which::Part1:
        report.total_cost += costs.c1;
        ++report.replacements_part1;
        break;
      case Which::Part2:
        report.total_cost += costs.c2;
        ++report.replacements_part2;
        break;
      case Which::Both:
        report.total_cost += costs.v;
        ++report.replacements_both;
        break;
    }
  }
  return report;
}

/// Cost of following a stationary policy for a fixed horizon. Each day the
/// policy's action for the current (capped) state is applied first — paying
/// its cost and resetting the replaced part(s) — and wear then accrues from
/// the post-action state, mirroring the one-period structure of the DP.
inline CostReport policy_cost(const PolicyGrid& policy, const RateTable& rates, const CostModel& costs,
                              const Limits& limits, int horizon) {
  if (horizon < 1) throw ValidationError("horizon must be >= 1");
  limits.validate();
  rates.validate(limits);

  CostReport report;
  report.horizon_days = horizon;
  WearState s{0, 0};
  for (int day = 1; day <= horizon; ++day) {
    switch (policy.at(s.d1, s.d2)) {
      case Action::Proceed:
        break;
      case Action::Replace1:
        report.total_cost += costs.c1;
        ++report.replacements_part1;
        s.d1 = 0;
        break;
      case Action::Replace2:
        report.total_cost += costs.c2;
        ++report.replacements_part2;
        s.d2 = 0;
        break;
      case Action::ReplaceBoth:
        report.total_cost += costs.v;
        ++report.replacements_both;
        s.d1 = 0;
        s.d2 = 0;
        break;
    }
    s = capped_successor(s, rates, limits);
  }
  return report;
}

/// The regime that generated the historical data: proceed everywhere except
/// the limit boundary, where the crossed part (or both) is replaced.
inline PolicyGrid limit_policy_grid(const Limits& limits) {
  PolicyGrid policy(limits.l1 + 1, limits.l2 + 1, Action::Proceed);
  for (int d2 = 0; d2 < limits.l2; ++d2) policy.at(limits.l1, d2) = Action::Replace1;
  for (int d1 = 0; d1 < limits.l1; ++d1) policy.at(d1, limits.l2) = Action::Replace2;
  policy.at(limits.l1, limits.l2) = Action::ReplaceBoth;
  return policy;
}

/// Percent reduction of the optimal policy's mean daily cost against the
/// historical one.
inline double compare(const CostReport& optimal, const CostReport& historical) {
  const double hist_mean = historical.mean_cost_per_day();
  if (hist_mean == 0.0) throw ValidationError("historical mean cost is zero; reduction undefined");
  return 100.0 * (hist_mean - optimal.mean_cost_per_day()) / hist_mean;
}

}  // namespace wearopt

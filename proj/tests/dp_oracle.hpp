// Test-only oracle for the DP solver: exhaustive stationary-policy
// enumeration on tiny grids, evaluated exactly by following each policy's
// deterministic transition graph into its cycle. Independent of the value
// iteration path it checks.
#pragma once

#include <cmath>
#include <limits>
#include <vector>

#include "wearopt/domain.hpp"
#include "wearopt/dp.hpp"

namespace wearopt::oracle {

struct OracleResult {
  Grid<double> values;                       // elementwise min over all stationary policies
  std::vector<std::vector<double>> q;        // q[state][action], infinity when inadmissible
  long long policies_enumerated = 0;
};

inline double action_cost(Action a, const CostModel& costs) {
  switch (a) {
    case Action::Proceed: return 0.0;
    case Action::Replace1: return costs.c1;
    case Action::Replace2: return costs.c2;
    case Action::ReplaceBoth: return costs.v;
  }
  return 0.0;
}

inline WearState action_successor(int d1, int d2, Action a, const RateTable& rates, const Limits& limits) {
  WearState from{d1, d2};
  if (a == Action::Replace1 || a == Action::ReplaceBoth) from.d1 = 0;
  if (a == Action::Replace2 || a == Action::ReplaceBoth) from.d2 = 0;
  return capped_successor(from, rates, limits);
}

inline std::vector<Action> admissible_actions(int d1, int d2, const Limits& limits) {
  const bool lim1 = d1 == limits.l1;
  const bool lim2 = d2 == limits.l2;
  if (lim1 && lim2) return {Action::ReplaceBoth};
  if (lim1) return {Action::Replace1, Action::ReplaceBoth};
  if (lim2) return {Action::Replace2, Action::ReplaceBoth};
  return {Action::Proceed, Action::Replace1, Action::Replace2, Action::ReplaceBoth};
}

/// Exact discounted value of one stationary policy: walk each state's
/// deterministic orbit until it revisits a state, solve the cycle in
/// closed form, unwind the path.
inline Grid<double> evaluate_policy(const std::vector<Action>& policy, const RateTable& rates,
                                    const CostModel& costs, const Limits& limits) {
  const int cols = limits.l2 + 1;
  const int n = (limits.l1 + 1) * cols;
  const double alpha = costs.alpha;
  std::vector<double> value(static_cast<size_t>(n), std::numeric_limits<double>::quiet_NaN());
  std::vector<int> succ(static_cast<size_t>(n));
  std::vector<double> cost(static_cast<size_t>(n));
  for (int d1 = 0; d1 <= limits.l1; ++d1)
    for (int d2 = 0; d2 <= limits.l2; ++d2) {
      const int s = d1 * cols + d2;
      const Action a = policy[static_cast<size_t>(s)];
      const WearState nx = action_successor(d1, d2, a, rates, limits);
      succ[static_cast<size_t>(s)] = nx.d1 * cols + nx.d2;
      cost[static_cast<size_t>(s)] = action_cost(a, costs);
    }

  for (int start = 0; start < n; ++start) {
    if (!std::isnan(value[static_cast<size_t>(start)])) continue;
    std::vector<int> path;
    std::vector<int> pos(static_cast<size_t>(n), -1);
    int s = start;
    while (std::isnan(value[static_cast<size_t>(s)]) && pos[static_cast<size_t>(s)] < 0) {
      pos[static_cast<size_t>(s)] = static_cast<int>(path.size());
      path.push_back(s);
      s = succ[static_cast<size_t>(s)];
    }
    size_t prefix_end = path.size();
    if (std::isnan(value[static_cast<size_t>(s)])) {
      // closed cycle path[entry..]: V(entry) = discounted cost around the
      // cycle / (1 - alpha^L), the rest of the cycle by backward recursion
      const size_t entry = static_cast<size_t>(pos[static_cast<size_t>(s)]);
      double cycle_cost = 0.0, disc = 1.0;
      for (size_t i = entry; i < path.size(); ++i) {
        cycle_cost += disc * cost[static_cast<size_t>(path[i])];
        disc *= alpha;
      }
      value[static_cast<size_t>(s)] = disc == 1.0 ? cycle_cost : cycle_cost / (1.0 - disc);
      for (size_t i = path.size(); i-- > entry + 1;) {
        const int next = i + 1 < path.size() ? path[i + 1] : s;
        value[static_cast<size_t>(path[i])] =
            cost[static_cast<size_t>(path[i])] + alpha * value[static_cast<size_t>(next)];
      }
      prefix_end = entry;
    }
    for (size_t i = prefix_end; i-- > 0;) {
      const int next = succ[static_cast<size_t>(path[i])];
      value[static_cast<size_t>(path[i])] =
          cost[static_cast<size_t>(path[i])] + alpha * value[static_cast<size_t>(next)];
    }
  }

  Grid<double> out(limits.l1 + 1, limits.l2 + 1);
  for (int d1 = 0; d1 <= limits.l1; ++d1)
    for (int d2 = 0; d2 <= limits.l2; ++d2) out.at(d1, d2) = value[static_cast<size_t>(d1 * cols + d2)];
  return out;
}

/// Elementwise minimum over every admissible stationary policy, plus exact
/// Q-values derived from the optimal values.
inline OracleResult solve(const RateTable& rates, const CostModel& costs, const Limits& limits) {
  const int cols = limits.l2 + 1;
  const int n = (limits.l1 + 1) * cols;
  std::vector<std::vector<Action>> choices;
  for (int d1 = 0; d1 <= limits.l1; ++d1)
    for (int d2 = 0; d2 <= limits.l2; ++d2) choices.push_back(admissible_actions(d1, d2, limits));

  OracleResult res;
  res.values = Grid<double>(limits.l1 + 1, limits.l2 + 1, std::numeric_limits<double>::infinity());
  std::vector<size_t> counter(static_cast<size_t>(n), 0);
  std::vector<Action> policy(static_cast<size_t>(n));
  for (;;) {
    for (int s = 0; s < n; ++s) policy[static_cast<size_t>(s)] = choices[static_cast<size_t>(s)][counter[static_cast<size_t>(s)]];
    const Grid<double> v = evaluate_policy(policy, rates, costs, limits);
    for (int d1 = 0; d1 <= limits.l1; ++d1)
      for (int d2 = 0; d2 <= limits.l2; ++d2)
        res.values.at(d1, d2) = std::min(res.values.at(d1, d2), v.at(d1, d2));
    ++res.policies_enumerated;
    // mixed-radix increment
    int s = 0;
    while (s < n) {
      if (++counter[static_cast<size_t>(s)] < choices[static_cast<size_t>(s)].size()) break;
      counter[static_cast<size_t>(s)] = 0;
      ++s;
    }
    if (s == n) break;
  }

  res.q.assign(static_cast<size_t>(n), std::vector<double>(4, std::numeric_limits<double>::infinity()));
  for (int d1 = 0; d1 <= limits.l1; ++d1)
    for (int d2 = 0; d2 <= limits.l2; ++d2)
      for (Action a : admissible_actions(d1, d2, limits)) {
        const WearState nx = action_successor(d1, d2, a, rates, limits);
        res.q[static_cast<size_t>(d1 * cols + d2)][static_cast<size_t>(static_cast<int>(a))] =
            action_cost(a, costs) + costs.alpha * res.values.at(nx.d1, nx.d2);
      }
  return res;
}

}  // namespace wearopt::oracle

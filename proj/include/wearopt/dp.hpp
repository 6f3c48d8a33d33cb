#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "wearopt/domain.hpp"
#include "wearopt/errors.hpp"
#include "wearopt/wear_sim.hpp"

namespace wearopt {

template <typename T>
class Grid {
 public:
  Grid() = default;
  Grid(int rows, int cols, T fill = T{})
      : rows_(rows), cols_(cols), cells_(static_cast<size_t>(rows) * cols, fill) {}

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  T& at(int r, int c) { return cells_[static_cast<size_t>(r) * cols_ + c]; }
  const T& at(int r, int c) const { return cells_[static_cast<size_t>(r) * cols_ + c]; }
  const std::vector<T>& cells() const { return cells_; }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<T> cells_;
};

enum class Action : int { Proceed = 0, Replace1 = 1, Replace2 = 2, ReplaceBoth = 3 };

inline const char* to_string(Action a) {
  switch (a) {
    case Action::Proceed: return "proceed";
    case Action::Replace1: return "replace1";
    case Action::Replace2: return "replace2";
    case Action::ReplaceBoth: return "replace_both";
  }
  return "?";
}

/// Minimum discounted cost per capped wear state; row d1 in 0..l1, column
/// d2 in 0..l2, where d = l stands for "at or over the limit".
using ValueFunction = Grid<double>;
using PolicyGrid = Grid<Action>;

/// Wear successor with capping: all over-limit states collapse into the
/// limit state, whose replacement options are identical for any d >= L.
inline WearState capped_successor(const WearState& s, const RateTable& rates, const Limits& limits) {
  const WearState next = step_day(s, rates);
  return {std::min(next.d1, limits.l1), std::min(next.d2, limits.l2)};
}

namespace detail {

/// Per-state successor indices, precomputed once per (rates, limits).
struct SuccessorTable {
  int l1, l2;
  std::vector<int> s1, s2;  // capped successor coordinates, row-major

  SuccessorTable(const RateTable& rates, const Limits& limits) : l1(limits.l1), l2(limits.l2) {
    const size_t n = static_cast<size_t>(l1 + 1) * (l2 + 1);
    s1.resize(n);
    s2.resize(n);
    for (int d1 = 0; d1 <= l1; ++d1)
      for (int d2 = 0; d2 <= l2; ++d2) {
        const WearState succ = capped_successor({d1, d2}, rates, limits);
        s1[idx(d1, d2)] = succ.d1;
        s2[idx(d1, d2)] = succ.d2;
      }
  }

  size_t idx(int d1, int d2) const { return static_cast<size_t>(d1) * (l2 + 1) + d2; }
};

}  // namespace detail

/// One Jacobi sweep of the four-action minimization. Interior states choose
/// among proceed / replace part 1 / replace part 2 / replace both; on the
/// d1-limit row only {replace1, both} are admissible, on the d2-limit
/// column only {replace2, both}, and at the corner only {both}.
inline ValueFunction bellman_backup(const ValueFunction& u, const RateTable& rates, const CostModel& costs,
                                    const Limits& limits) {
  const detail::SuccessorTable succ(rates, limits);
  const int l1 = limits.l1, l2 = limits.l2;
  ValueFunction next(l1 + 1, l2 + 1);

  const double alpha = costs.alpha;
  // Replace-both lands in the same state regardless of origin.
  const double cost_both = costs.v + alpha * u.at(succ.s1[succ.idx(0, 0)], succ.s2[succ.idx(0, 0)]);

  for (int d1 = 0; d1 <= l1; ++d1) {
    for (int d2 = 0; d2 <= l2; ++d2) {
      const bool lim1 = d1 == l1;
      const bool lim2 = d2 == l2;
      double best = cost_both;
      if (!lim1 && !lim2) {
        const size_t i = succ.idx(d1, d2);
        best = std::min(best, alpha * u.at(succ.s1[i], succ.s2[i]));
      }
      if (!lim2) {
        const size_t i = succ.idx(0, d2);
        best = std::min(best, costs.c1 + alpha * u.at(succ.s1[i], succ.s2[i]));
      }
      if (!lim1) {
        const size_t i = succ.idx(d1, 0);
        best = std::min(best, costs.c2 + alpha * u.at(succ.s1[i], succ.s2[i]));
      }
      next.at(d1, d2) = best;
    }
  }
  return next;
}

inline double default_tolerance(const CostModel& costs) {
  return 1e-8 * (1.0 + std::max({costs.c1, costs.c2, costs.v}));
}

struct SolveResult {
  ValueFunction u;
  int iterations = 0;
  std::vector<double> sup_diffs;  // successive sup-norm differences, one per sweep
};

inline constexpr int kSweepCap = 1'000'000;

/// Value iteration from u = 0 to the discounted fixed point. Converges by
/// alpha-contraction; throws IterationCap past the sweep cap.
inline SolveResult value_iteration(const RateTable& rates, const CostModel& costs, const Limits& limits,
                                   double tol, int max_sweeps = kSweepCap) {
  if (tol <= 0) throw ValidationError("tolerance must be positive");
  limits.validate();
  rates.validate(limits);
  costs.validate();

  SolveResult res;
  res.u = ValueFunction(limits.l1 + 1, limits.l2 + 1, 0.0);
  for (;;) {
    if (res.iterations >= max_sweeps) throw IterationCap("value iteration exceeded sweep cap");
    ValueFunction next = bellman_backup(res.u, rates, costs, limits);
    double diff = 0.0;
    for (int d1 = 0; d1 <= limits.l1; ++d1)
      for (int d2 = 0; d2 <= limits.l2; ++d2)
        diff = std::max(diff, std::abs(next.at(d1, d2) - res.u.at(d1, d2)));
    res.u = std::move(next);
    ++res.iterations;
    res.sup_diffs.push_back(diff);
    if (diff < tol) break;
  }
  return res;
}

inline SolveResult value_iteration(const RateTable& rates, const CostModel& costs, const Limits& limits) {
  return value_iteration(rates, costs, limits, default_tolerance(costs));
}

/// Greedy argmin over admissible actions. Ties break by fixed preference
/// proceed > replace1 > replace2 > replace_both.
inline PolicyGrid extract_policy(const ValueFunction& u, const RateTable& rates, const CostModel& costs,
                                 const Limits& limits) {
  const detail::SuccessorTable succ(rates, limits);
  const int l1 = limits.l1, l2 = limits.l2;
  const double alpha = costs.alpha;
  PolicyGrid policy(l1 + 1, l2 + 1, Action::ReplaceBoth);
  const double cost_both = costs.v + alpha * u.at(succ.s1[succ.idx(0, 0)], succ.s2[succ.idx(0, 0)]);

  for (int d1 = 0; d1 <= l1; ++d1) {
    for (int d2 = 0; d2 <= l2; ++d2) {
      const bool lim1 = d1 == l1;
      const bool lim2 = d2 == l2;
      double best = cost_both;
      Action chosen = Action::ReplaceBoth;
      // evaluated in reverse preference order; <= lets earlier actions win ties
      if (!lim1) {
        const size_t i = succ.idx(d1, 0);
        const double cost = costs.c2 + alpha * u.at(succ.s1[i], succ.s2[i]);
        if (cost <= best) {
          best = cost;
          chosen = Action::Replace2;
        }
      }
      if (!lim2) {
        const size_t i = succ.idx(0, d2);
        const double cost = costs.c1 + alpha * u.at(succ.s1[i], succ.s2[i]);
        if (cost <= best) {
          best = cost;
          chosen = Action::Replace1;
        }
      }
      if (!lim1 && !lim2) {
        const size_t i = succ.idx(d1, d2);
        const double cost = alpha * u.at(succ.s1[i], succ.s2[i]);
        if (cost <= best) {
          best = cost;
          chosen = Action::Proceed;
        }
      }
      policy.at(d1, d2) = chosen;
    }
  }
  return policy;
}

inline bool replaces_part1(Action a) { return a == Action::Replace1 || a == Action::ReplaceBoth; }
inline bool replaces_part2(Action a) { return a == Action::Replace2 || a == Action::ReplaceBoth; }

struct ThresholdEntry {
  int coord;      // the fixed coordinate (d2 for i_star, d1 for j_star)
  int threshold;  // smallest wear of the other part at which replacement starts
  bool joint;     // replacement at the threshold is ReplaceBoth rather than single
};

/// Replacement limits read off a policy grid: per fixed d2, the smallest d1
/// whose action replaces part 1 (and symmetrically for part 2).
struct Thresholds {
  std::vector<ThresholdEntry> i_star;  // indexed by d2
  std::vector<ThresholdEntry> j_star;  // indexed by d1
};

/// Throws StructureViolation if any column/row is not threshold-shaped,
/// which would signal a solver bug or tie-break pathology.
inline Thresholds thresholds(const PolicyGrid& policy) {
  Thresholds out;
  const int l1 = policy.rows() - 1, l2 = policy.cols() - 1;
  for (int d2 = 0; d2 <= l2; ++d2) {
    int first = -1;
    for (int d1 = 0; d1 <= l1; ++d1) {
      const bool rep = replaces_part1(policy.at(d1, d2));
      if (first < 0 && rep) first = d1;
      if (first >= 0 && !rep)
        throw StructureViolation("part-1 replacement region not upward-closed at d1=" + std::to_string(d1) +
                                 ", d2=" + std::to_string(d2));
    }
    if (first < 0) throw StructureViolation("no part-1 replacement anywhere at d2=" + std::to_string(d2));
    out.i_star.push_back({d2, first, policy.at(first, d2) == Action::ReplaceBoth});
  }
  for (int d1 = 0; d1 <= l1; ++d1) {
    int first = -1;
    for (int d2 = 0; d2 <= l2; ++d2) {
      const bool rep = replaces_part2(policy.at(d1, d2));
      if (first < 0 && rep) first = d2;
      if (first >= 0 && !rep)
        throw StructureViolation("part-2 replacement region not upward-closed at d1=" + std::to_string(d1) +
                                 ", d2=" + std::to_string(d2));
    }
    if (first < 0) throw StructureViolation("no part-2 replacement anywhere at d1=" + std::to_string(d1));
    out.j_star.push_back({d1, first, policy.at(d1, first) == Action::ReplaceBoth});
  }
  return out;
}

struct StructureViolationSite {
  std::string check;
  int d1 = 0;
  int d2 = 0;
};

/// Outcome of the monotonicity and threshold-shape checks. The proceed-at-
/// reset diagnostic is informational only and does not fail the report.
struct StructureReport {
  std::vector<StructureViolationSite> violations;
  int replace2_without_proceed_at_reset = 0;

  bool pass() const { return violations.empty(); }
  std::optional<StructureViolationSite> first() const {
    if (violations.empty()) return std::nullopt;
    return violations.front();
  }
};

/// Checks the proven structure of the solution: (a) u nondecreasing along
/// each axis; (b) the part-1 and part-2 replacement regions are
/// upward-closed along their own axes; (c) the replace-both region is
/// upward-closed in both coordinates; (d) limit boundaries only replace.
inline StructureReport check_structure(const ValueFunction& u, const PolicyGrid& policy) {
  StructureReport report;
  const int l1 = u.rows() - 1, l2 = u.cols() - 1;

  for (int d1 = 0; d1 + 1 <= l1; ++d1)
    for (int d2 = 0; d2 <= l2; ++d2)
      if (u.at(d1 + 1, d2) < u.at(d1, d2)) report.violations.push_back({"u nondecreasing in d1", d1 + 1, d2});
  for (int d1 = 0; d1 <= l1; ++d1)
    for (int d2 = 0; d2 + 1 <= l2; ++d2)
      if (u.at(d1, d2 + 1) < u.at(d1, d2)) report.violations.push_back({"u nondecreasing in d2", d1, d2 + 1});

  for (int d2 = 0; d2 <= l2; ++d2) {
    bool seen = false;
    for (int d1 = 0; d1 <= l1; ++d1) {
      const bool rep = replaces_part1(policy.at(d1, d2));
      if (seen && !rep) report.violations.push_back({"replace1 region upward-closed in d1", d1, d2});
      seen = seen || rep;
    }
  }
  for (int d1 = 0; d1 <= l1; ++d1) {
    bool seen = false;
    for (int d2 = 0; d2 <= l2; ++d2) {
      const bool rep = replaces_part2(policy.at(d1, d2));
      if (seen && !rep) report.violations.push_back({"replace2 region upward-closed in d2", d1, d2});
      seen = seen || rep;
    }
  }

  for (int d1 = 0; d1 <= l1; ++d1)
    for (int d2 = 0; d2 <= l2; ++d2)
      if (policy.at(d1, d2) == Action::ReplaceBoth) {
        if (d1 + 1 <= l1 && policy.at(d1 + 1, d2) != Action::ReplaceBoth)
          report.violations.push_back({"replace_both upward-closed in d1", d1 + 1, d2});
        if (d2 + 1 <= l2 && policy.at(d1, d2 + 1) != Action::ReplaceBoth)
          report.violations.push_back({"replace_both upward-closed in d2", d1, d2 + 1});
      }

  for (int d2 = 0; d2 <= l2; ++d2)
    if (!replaces_part1(policy.at(l1, d2))) report.violations.push_back({"limit row must replace part 1", l1, d2});
  for (int d1 = 0; d1 <= l1; ++d1)
    if (!replaces_part2(policy.at(d1, l2))) report.violations.push_back({"limit column must replace part 2", d1, l2});
  if (policy.at(l1, l2) != Action::ReplaceBoth)
    report.violations.push_back({"corner must replace both", l1, l2});

  for (int d1 = 0; d1 <= l1; ++d1)
    for (int d2 = 0; d2 <= l2; ++d2)
      if (policy.at(d1, d2) == Action::Replace2 && policy.at(d1, 0) != Action::Proceed)
        ++report.replace2_without_proceed_at_reset;

  return report;
}

}  // namespace wearopt

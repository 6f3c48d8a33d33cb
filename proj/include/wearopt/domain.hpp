#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "wearopt/errors.hpp"

namespace wearopt {

/// Upper bound on any deterioration-rate entry (0.01 mm/day).
inline constexpr int kRateMax = 20;

/// Accumulated deterioration of both parts, in 0.01 mm units. A new part
/// has d = 0; d grows by the daily rate until replacement resets it.
struct WearState {
  int d1 = 0;
  int d2 = 0;
  friend bool operator==(const WearState&, const WearState&) = default;
};

/// Replacement limits per part (0.01 mm units). Reaching the limit forces
/// replacement under the historical regime and bounds the DP grid.
struct Limits {
  int l1 = 90;
  int l2 = 90;

  void validate() const {
    if (l1 < 1 || l2 < 1) throw ValidationError("limits must be >= 1");
  }
  friend bool operator==(const Limits&, const Limits&) = default;
};

/// 1-based band number of deterioration d, clamped to the last band.
inline int bin_index(int d, int bin_width, int bin_count) {
  return std::min(d / bin_width + 1, bin_count);
}

/// Binned deterioration-rate matrices for both parts. Entry (i, j) is the
/// daily wear increment when part 1 sits in band i and part 2 in band j.
/// Bands are uniform: band k covers deterioration [(k-1)*bin_width, k*bin_width).
struct RateTable {
  int bin_width = 9;
  int m1 = 10;
  int m2 = 10;
  std::vector<int> a;  // m1*m2 row-major, part-1 increments
  std::vector<int> b;  // m1*m2 row-major, part-2 increments

  static RateTable constant(int bin_width, int m1, int m2, int rate_a, int rate_b) {
    RateTable t;
    t.bin_width = bin_width;
    t.m1 = m1;
    t.m2 = m2;
    t.a.assign(static_cast<size_t>(m1) * m2, rate_a);
    t.b.assign(static_cast<size_t>(m1) * m2, rate_b);
    return t;
  }

  // 1-based band accessors, matching the band labels of the CSV format.
  int& rate_a(int bin1, int bin2) { return a[idx(bin1, bin2)]; }
  int& rate_b(int bin1, int bin2) { return b[idx(bin1, bin2)]; }
  int rate_a(int bin1, int bin2) const { return a[idx(bin1, bin2)]; }
  int rate_b(int bin1, int bin2) const { return b[idx(bin1, bin2)]; }

  int bin1_of(int d) const { return bin_index(d, bin_width, m1); }
  int bin2_of(int d) const { return bin_index(d, bin_width, m2); }

  void validate(const Limits& limits) const {
    if (bin_width < 1 || m1 < 1 || m2 < 1) throw ValidationError("rate table shape must be positive");
    const size_t n = static_cast<size_t>(m1) * m2;
    if (a.size() != n || b.size() != n) throw ValidationError("rate matrix size does not match bin counts");
    for (int r : a)
      if (r < 1 || r > kRateMax) throw ValidationError("rate entry out of [1, " + std::to_string(kRateMax) + "]");
    for (int r : b)
      if (r < 1 || r > kRateMax) throw ValidationError("rate entry out of [1, " + std::to_string(kRateMax) + "]");
    if (bin_width * m1 < limits.l1 || bin_width * m2 < limits.l2)
      throw ValidationError("bands do not cover the sub-limit states");
  }

  friend bool operator==(const RateTable&, const RateTable&) = default;

 private:
  size_t idx(int bin1, int bin2) const {
    return static_cast<size_t>(bin1 - 1) * m2 + static_cast<size_t>(bin2 - 1);
  }
};

/// Increments of both parts at a given wear state.
inline std::pair<int, int> rate_lookup(const WearState& s, const RateTable& t) {
  const int b1 = t.bin1_of(s.d1);
  const int b2 = t.bin2_of(s.d2);
  return {t.rate_a(b1, b2), t.rate_b(b1, b2)};
}

/// Replacement costs and the discount factor. alpha = 0 is permitted as the
/// degenerate myopic case (used by closed-form checks).
struct CostModel {
  double c1 = 100.0;
  double c2 = 120.0;
  double v = 220.0;
  double alpha = 0.95;

  /// Throws on hard violations; returns soft warnings.
  std::vector<std::string> validate() const {
    if (c1 <= 0 || c2 <= 0 || v <= 0) throw ValidationError("replacement costs must be positive");
    if (alpha < 0.0 || alpha >= 1.0) throw ValidationError("discount factor must lie in [0, 1)");
    std::vector<std::string> warnings;
    if (v > c1 + c2)
      warnings.push_back("joint replacement cost exceeds the sum of single costs; joint replacement is economically dominated");
    return warnings;
  }
  friend bool operator==(const CostModel&, const CostModel&) = default;
};

enum class Which { Part1, Part2, Both };

inline const char* to_string(Which w) {
  switch (w) {
    case Which::Part1: return "1";
    case Which::Part2: return "2";
    case Which::Both: return "both";
  }
  return "?";
}

/// One limit crossing: at the end of day `time`, the named part(s) reached
/// the replacement limit and were replaced. A simultaneous crossing is a
/// single Both event.
struct FailureEvent {
  int time = 0;
  Which which = Which::Part1;
  friend bool operator==(const FailureEvent&, const FailureEvent&) = default;
};

/// Ordered record of replacements under the limit policy.
struct FailureHistory {
  std::vector<FailureEvent> events;

  int horizon() const { return events.empty() ? 0 : events.back().time; }

  bool involves(const FailureEvent& e, int part) const {
    return e.which == Which::Both || (part == 1 ? e.which == Which::Part1 : e.which == Which::Part2);
  }

  /// Event count of one part; Both events count toward both parts.
  int count(int part) const {
    int n = 0;
    for (const auto& e : events)
      if (involves(e, part)) ++n;
    return n;
  }

  /// Event times of one part, ascending.
  std::vector<int> times(int part) const {
    std::vector<int> out;
    for (const auto& e : events)
      if (involves(e, part)) out.push_back(e.time);
    return out;
  }

  /// Inter-failure intervals of one part; the first interval counts from day 0.
  std::vector<int> intervals(int part) const {
    std::vector<int> out = times(part);
    for (size_t i = out.size(); i-- > 1;) out[i] -= out[i - 1];
    return out;
  }

  void validate() const {
    int prev = 0;
    for (const auto& e : events) {
      if (e.time <= prev) throw ValidationError("failure times must be strictly increasing and >= 1");
      prev = e.time;
    }
  }

  /// Validation for estimation inputs: at least one event per part.
  void validate_for_estimation() const {
    validate();
    if (events.empty()) throw DegenerateHistory("history is empty");
    for (int part : {1, 2})
      if (count(part) == 0)
        throw DegenerateHistory("history has no events for part " + std::to_string(part));
  }

  friend bool operator==(const FailureHistory&, const FailureHistory&) = default;
};

}  // namespace wearopt

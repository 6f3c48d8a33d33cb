#include <catch2/catch_amalgamated.hpp>

#include "wearopt/wear_sim.hpp"
#include "wearopt/rng.hpp"
#include "test_util.hpp"

using namespace wearopt;

TEST_CASE("step_day reads rates from the start-of-day state") {
  CHECK(step_day({0, 0}, testutil::example1_rates()) == WearState{1, 1});
  CHECK(step_day({0, 0}, testutil::example2_rates()) == WearState{1, 1});
  const RateTable t = RateTable::constant(9, 10, 10, 2, 3);
  CHECK(step_day({10, 10}, t) == WearState{12, 13});
}

TEST_CASE("one-step limit crossing") {
  // rate equal to the limit: both parts cross every day
  const RateTable t = RateTable::constant(9, 10, 10, 90, 90);
  // bypass rate_max validation by building the outcome through the detail loop
  const SimOutcome out = detail::run_limit_sim(t, Limits{90, 90}, MaxDays{3}, false);
  REQUIRE(out.history.events.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(out.history.events[static_cast<size_t>(i)].time == i + 1);
    CHECK(out.history.events[static_cast<size_t>(i)].which == Which::Both);
  }
}

TEST_CASE("constant rate 9 gives a joint event every 10 days") {
  const RateTable t = RateTable::constant(9, 10, 10, 9, 9);
  const SimOutcome out = simulate_limit_policy(t, Limits{90, 90}, MaxDays{35});
  REQUIRE(out.history.events.size() == 3);
  CHECK(out.history.events[0] == FailureEvent{10, Which::Both});
  CHECK(out.history.events[1] == FailureEvent{20, Which::Both});
  CHECK(out.history.events[2] == FailureEvent{30, Which::Both});
}

TEST_CASE("published tables give first events near the recorded ones") {
  const SimOutcome out =
      simulate_limit_policy(testutil::example1_rates(), Limits{90, 90}, TargetCounts{28, 28, 5500});
  CHECK(out.reached_targets);
  const auto t1 = out.history.times(1);
  const auto t2 = out.history.times(2);
  REQUIRE(t1.size() >= 28);
  REQUIRE(t2.size() >= 28);
  // Table 1 opens with part 1 at day 26 and part 2 at day 28
  CHECK(std::abs(t1.front() - 26) <= 4);
  CHECK(std::abs(t2.front() - 28) <= 4);
}

TEST_CASE("simulation is deterministic") {
  const StopRule stop = TargetCounts{5, 5, 2000};
  const SimOutcome a = simulate_limit_policy(testutil::example2_rates(), Limits{90, 90}, stop, true);
  const SimOutcome b = simulate_limit_policy(testutil::example2_rates(), Limits{90, 90}, stop, true);
  CHECK(a.history == b.history);
  CHECK(a.trajectory == b.trajectory);
}

TEST_CASE("trajectory wear is nondecreasing between replacements and resets on events") {
  const SimOutcome out = simulate_limit_policy(testutil::example1_rates(), Limits{90, 90}, MaxDays{200}, true);
  int prev1 = 0, prev2 = 0;
  for (const auto& p : out.trajectory) {
    const bool reset1 = p.has_event && (p.event == Which::Part1 || p.event == Which::Both);
    const bool reset2 = p.has_event && (p.event == Which::Part2 || p.event == Which::Both);
    if (reset1)
      CHECK(p.d1 == 0);
    else
      CHECK(p.d1 >= prev1);
    if (reset2)
      CHECK(p.d2 == 0);
    else
      CHECK(p.d2 >= prev2);
    prev1 = p.d1;
    prev2 = p.d2;
  }
}

TEST_CASE("accumulated wear at each event lies in [limit, limit + max rate - 1]") {
  const RateTable rates = testutil::example1_rates();
  const Limits limits{90, 90};
  const SimOutcome out = simulate_limit_policy(rates, limits, MaxDays{400}, true);
  REQUIRE(!out.history.events.empty());
  for (const auto& e : out.history.events) {
    // reconstruct the crossing value from the end of the previous day
    const WearState before = e.time >= 2 ? WearState{out.trajectory[static_cast<size_t>(e.time) - 2].d1,
                                                     out.trajectory[static_cast<size_t>(e.time) - 2].d2}
                                         : WearState{0, 0};
    const WearState crossed = step_day(before, rates);
    if (e.which == Which::Part1 || e.which == Which::Both) {
      CHECK(before.d1 < limits.l1);
      CHECK(crossed.d1 >= limits.l1);
      CHECK(crossed.d1 <= limits.l1 + kRateMax - 1);
    }
    if (e.which == Which::Part2 || e.which == Which::Both) {
      CHECK(before.d2 < limits.l2);
      CHECK(crossed.d2 >= limits.l2);
      CHECK(crossed.d2 <= limits.l2 + kRateMax - 1);
    }
  }
}

TEST_CASE("zero-length horizon produces no events") {
  const SimOutcome out = simulate_limit_policy(testutil::example1_rates(), Limits{90, 90}, MaxDays{0});
  CHECK(out.history.events.empty());
  CHECK(out.days_run == 0);
}

TEST_CASE("unreachable targets throw NonTerminating") {
  const RateTable t = RateTable::constant(9, 10, 10, 1, 1);
  CHECK_THROWS_AS(simulate_limit_policy(t, Limits{90, 90}, TargetCounts{5, 5, 100}), NonTerminating);
}

TEST_CASE("objective of a table against its own simulated history is zero") {
  Rng rng(17);
  for (int trial = 0; trial < 5; ++trial) {
    RateTable t = RateTable::constant(9, 10, 10, 1, 1);
    for (int& r : t.a) r = rng.uniform_int(1, kRateMax);
    for (int& r : t.b) r = rng.uniform_int(1, kRateMax);
    const SimOutcome out = simulate_limit_policy(t, Limits{90, 90}, TargetCounts{10, 10, 5000});
    const ObjectiveValue obj = sse_objective(t, Limits{90, 90}, out.history);
    CHECK(obj.sse == 0.0);
    CHECK(obj.sse_abs_times == 0.0);
    CHECK_FALSE(obj.penalty_applied);
    CHECK(obj.matched_events.first == out.history.count(1));
    CHECK(obj.matched_events.second == out.history.count(2));
  }
}

TEST_CASE("objective matches intervals rather than absolute times") {
  const RateTable t = testutil::example2_rates();
  const Limits limits{90, 90};
  const SimOutcome out = simulate_limit_policy(t, limits, TargetCounts{4, 4, 2000});
  // shift every event 5 days later: per part only the first interval changes
  FailureHistory shifted = out.history;
  for (auto& e : shifted.events) e.time += 5;
  const ObjectiveValue obj = sse_objective(t, limits, shifted);
  CHECK(obj.sse == 2 * 5.0 * 5.0);
  const int total_events = shifted.count(1) + shifted.count(2);
  CHECK(obj.sse_abs_times == 25.0 * total_events);
}

TEST_CASE("objective on the paper examples is finite with matched counts") {
  // The paper reports 101 and 1 for its own simulator; under this
  // implementation's semantics the published tables score differently.
  // The acceptance suite asserts the spec windows; here only the matching
  // contract is pinned.
  const ObjectiveValue e1 = sse_objective(testutil::example1_rates(), Limits{90, 90}, testutil::example1_history());
  CHECK(e1.matched_events == std::pair{28, 28});
  CHECK_FALSE(e1.penalty_applied);
  CHECK(e1.sse > 0.0);

  const ObjectiveValue e2 = sse_objective(testutil::example2_rates(), Limits{90, 90}, testutil::example2_history());
  CHECK(e2.matched_events == std::pair{8, 7});
  CHECK_FALSE(e2.penalty_applied);
}

TEST_CASE("missing events are penalized by horizon squared") {
  const RateTable t = RateTable::constant(9, 10, 10, 1, 1);  // events only every 90 days
  FailureHistory h;
  h.events = {{5, Which::Part1}, {6, Which::Part2}};
  const ObjectiveValue obj = sse_objective(t, Limits{90, 90}, h);  // cap: 60 days, no event happens
  CHECK(obj.penalty_applied);
  CHECK(obj.matched_events == std::pair{0, 0});
  CHECK(obj.sse == 2.0 * 6.0 * 6.0);
}

TEST_CASE("objective requires a nonempty history") {
  CHECK_THROWS_AS(sse_objective(testutil::example1_rates(), Limits{90, 90}, FailureHistory{}), ValidationError);
}

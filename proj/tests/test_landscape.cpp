#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <map>

#include "wearopt/landscape.hpp"
#include "test_util.hpp"

using namespace wearopt;

namespace {
const Limits kLimits{90, 90};
const SearchSpace kSpace{{9, 10, 10}, 1, kRateMax};
}  // namespace

TEST_CASE("amplitude hand values") {
  const double two[] = {1.0, 3.0};
  CHECK(amplitude(two) == Catch::Approx(1.0));  // 2*(3-1)/4
  const double flat[] = {5.0, 5.0, 5.0};
  CHECK(amplitude(flat) == 0.0);
  const double zeros[] = {0.0, 0.0};
  CHECK_THROWS_AS(amplitude(zeros), ValidationError);
  CHECK_THROWS_AS(amplitude(std::span<const double>{}), ValidationError);
}

TEST_CASE("amplitude is permutation and scale invariant") {
  std::vector<double> pop{4.0, 9.0, 1.0, 7.0, 2.5};
  const double base = amplitude(pop);
  std::vector<double> perm{2.5, 1.0, 9.0, 4.0, 7.0};
  CHECK(amplitude(perm) == Catch::Approx(base));
  std::vector<double> scaled;
  for (double f : pop) scaled.push_back(3.7 * f);
  CHECK(amplitude(scaled) == Catch::Approx(base));
}

TEST_CASE("amplitude of a random population on example 1") {
  Rng rng(42);
  std::vector<double> pop;
  for (int i = 0; i < 1000; ++i)
    pop.push_back(sse_objective(random_table(kSpace, rng), kLimits, testutil::example1_history()).sse);
  const double amp = amplitude(pop);
  // recorded value for this index was about 3; wide stochastic band
  CHECK(amp >= 1.0);
  CHECK(amp <= 6.0);
}

TEST_CASE("lag-1 autocorrelation closed forms") {
  std::vector<double> rising;
  for (int i = 1; i <= 20; ++i) rising.push_back(i);
  const auto r_up = lag1_autocorrelation(rising);
  REQUIRE(r_up.has_value());
  CHECK(*r_up > 0.5);

  std::vector<double> alternating;
  for (int i = 0; i < 20; ++i) alternating.push_back(i % 2 ? 2.0 : 1.0);
  const auto r_alt = lag1_autocorrelation(alternating);
  REQUIRE(r_alt.has_value());
  CHECK(*r_alt < 0.0);

  std::vector<double> constant(10, 3.0);
  CHECK_FALSE(lag1_autocorrelation(constant).has_value());

  CHECK_THROWS_AS(lag1_autocorrelation(std::vector<double>{1.0, 2.0}), ValidationError);
}

TEST_CASE("lag-1 autocorrelation stays within [-1, 1]") {
  Rng rng(8);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> series;
    for (int i = 0; i < 50; ++i) series.push_back(rng.uniform_real() * 100.0);
    const auto r = lag1_autocorrelation(series);
    REQUIRE(r.has_value());
    CHECK(*r >= -1.0);
    CHECK(*r <= 1.0);
  }
}

TEST_CASE("random walk on example 1 is smooth") {
  Rng rng(21);
  const auto series = random_walk_objectives(testutil::example1_history(), kLimits, kSpace, 1000, rng);
  REQUIRE(series.size() == 1000);
  const auto r1 = lag1_autocorrelation(series);
  REQUIRE(r1.has_value());
  CHECK(*r1 >= 0.7);  // recorded value was about 0.93
}

TEST_CASE("degenerate single-point space gives zero walks and undefined r1") {
  const SearchSpace frozen{{9, 10, 10}, 5, 5};
  Rng rng(2);
  CHECK(mean_walk_length(testutil::example1_history(), kLimits, frozen, 10, rng) == 0.0);
  const auto series = random_walk_objectives(testutil::example1_history(), kLimits, frozen, 10, rng);
  CHECK_FALSE(lag1_autocorrelation(series).has_value());
}

namespace {

// exact expected first-improvement walk length on a fully enumerable
// space: the first improving neighbor in a shuffled scan is uniform among
// the improving ones
double expected_walk_length(const RateTable& start, const FailureHistory& h, const Limits& limits,
                            const SearchSpace& space, std::map<std::vector<int>, double>& memo) {
  std::vector<int> key = start.a;
  key.insert(key.end(), start.b.begin(), start.b.end());
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const double f = sse_objective(start, limits, h).sse;
  std::vector<RateTable> better;
  for (const auto& mv : detail::enumerate_moves(start, space)) {
    RateTable cand = detail::apply_move(start, mv);
    if (sse_objective(cand, limits, h).sse < f) better.push_back(std::move(cand));
  }
  double value = 0.0;
  if (!better.empty()) {
    double sum = 0.0;
    for (const auto& nxt : better) sum += 1.0 + expected_walk_length(nxt, h, limits, space, memo);
    value = sum / static_cast<double>(better.size());
  }
  memo[key] = value;
  return value;
}

}  // namespace

TEST_CASE("mean walk length matches the exhaustive-descent oracle on a two-cell space") {
  // 1x1 binning: the whole space is the four tables {1,2}^2
  const Limits limits{2, 2};
  const SearchSpace space{{2, 1, 1}, 1, 2};
  RateTable gen = RateTable::constant(2, 1, 1, 1, 1);
  const SimOutcome sim = simulate_limit_policy(gen, limits, MaxDays{12});
  const FailureHistory h = sim.history;  // planted optimum at a = b = 1

  std::map<std::vector<int>, double> memo;
  double oracle_mean = 0.0;
  std::vector<RateTable> starts;
  for (int a = 1; a <= 2; ++a)
    for (int b = 1; b <= 2; ++b) starts.push_back(RateTable::constant(2, 1, 1, a, b));
  for (const auto& s : starts) oracle_mean += expected_walk_length(s, h, limits, space, memo);
  oracle_mean /= static_cast<double>(starts.size());

  // the planted optimum is unique, so every walk ends within two moves
  Rng rng(31);
  for (const auto& s : starts)
    for (int trial = 0; trial < 8; ++trial) CHECK(walk_length_from(s, h, limits, space, rng) <= 2);

  const double sampled = mean_walk_length(h, limits, space, 4000, rng);
  CHECK(sampled == Catch::Approx(oracle_mean).margin(0.05));
}

TEST_CASE("mean walk length on example 1 sits in the recorded band") {
  Rng rng(63);
  const double mean = mean_walk_length(testutil::example1_history(), kLimits, kSpace, 120, rng);
  CHECK(mean >= 3.0);
  CHECK(mean <= 20.0);  // recorded value was about 8
}

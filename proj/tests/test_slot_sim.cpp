#include <cmath>

#include "doctest.h"

#include "aloha/game_model.hpp"
#include "aloha/slot_sim.hpp"
#include "test_support.hpp"

using namespace aloha;
namespace at = aloha::testing;

TEST_CASE("degenerate profiles") {
  // both always transmit: every slot collides
  const auto all = simulate_slots({1.0, 1.0}, 1000, 7);
  CHECK(all.collision_slots == 1000);
  CHECK(all.idle_slots == 0);
  CHECK(all.successes[0] == 0);
  CHECK(all.successes[1] == 0);

  // nobody transmits: every slot idles
  const auto none = simulate_slots({0.0, 0.0}, 500, 7);
  CHECK(none.idle_slots == 500);
  const auto obs = estimate_observables(none, 0);
  CHECK(obs.throughput_hat == 0.0);
  CHECK(obs.idle_hat == 1.0);
  CHECK(obs.altruism_hat == 1.0);
}

TEST_CASE("conservation holds exactly per batch") {
  auto rng = at::make_rng(51);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 5;
    const StrategyProfile q = at::random_interior_profile(rng, n, 0.0, 1.0);
    const auto batch = simulate_slots(q, 10000, static_cast<std::uint64_t>(trial));
    std::int64_t total = batch.idle_slots + batch.collision_slots;
    for (auto s : batch.successes) total += s;
    CHECK(total == batch.slots);
  }
}

TEST_CASE("determinism and partition-merge equivalence") {
  const StrategyProfile q = {0.3, 0.2, 0.45};
  const auto a = simulate_slots(q, 40000, 1234);
  const auto b = simulate_slots(q, 40000, 1234);
  CHECK(a == b);

  const auto left = simulate_slot_range(q, 0, 15000, 1234);
  const auto right = simulate_slot_range(q, 15000, 25000, 1234);
  CHECK(merge(left, right) == a);

  const auto other_seed = simulate_slots(q, 40000, 1235);
  CHECK(a.successes != other_seed.successes);
}

TEST_CASE("success frequencies concentrate on the analytic throughput") {
  // two players at one half
  {
    const auto batch = simulate_slots({0.5, 0.5}, 1000000, 42);
    const double sigma = std::sqrt(0.25 * 0.75 / 1e6);
    for (std::size_t i = 0; i < 2; ++i) {
      const double hat = estimate_observables(batch, i).throughput_hat;
      CHECK(std::fabs(hat - 0.25) < 4.0 * sigma);
    }
  }
  // four players at the altruistic equilibrium of the comparison study
  {
    const auto batch = simulate_slots(StrategyProfile(4, 0.22), 1000000, 43);
    const double g = 0.22 * 0.78 * 0.78 * 0.78;
    const double sigma = std::sqrt(g * (1.0 - g) / 1e6);
    for (std::size_t i = 0; i < 4; ++i) {
      const double hat = estimate_observables(batch, i).throughput_hat;
      CHECK(std::fabs(hat - 0.1044) < 0.0013);
      CHECK(std::fabs(hat - g) < 4.0 * sigma);
    }
  }
}

TEST_CASE("estimates tighten as one over the square root of the slot count") {
  const StrategyProfile q = {0.25, 0.4, 0.15};
  for (std::int64_t slots : {10000LL, 100000LL, 1000000LL}) {
    const auto batch = simulate_slots(q, slots, 77);
    for (std::size_t i = 0; i < q.size(); ++i) {
      const double g = throughput(q, i);
      const double sigma = std::sqrt(g * (1.0 - g) / static_cast<double>(slots));
      CHECK(std::fabs(estimate_observables(batch, i).throughput_hat - g) < 4.0 * sigma);
    }
  }
}

TEST_CASE("observable identities and mean-others estimator") {
  const StrategyProfile q = {0.3, 0.4, 0.5};
  const auto batch = simulate_slots(q, 1000000, 4242);
  for (std::size_t i = 0; i < 3; ++i) {
    const auto obs = estimate_observables(batch, i);
    // altruism estimate equals the analytic product within 4 sigma
    const double alpha = altruism_factor(q, i);
    CHECK(std::fabs(obs.altruism_hat - alpha) < 4.0 * std::sqrt(alpha / 1e6) + 1e-3);
    // identity by construction
    CHECK(obs.altruism_hat == obs.throughput_hat + obs.idle_hat);
    const double gbar = mean_others_throughput(q, i);
    CHECK(std::fabs(obs.mean_others_hat - gbar) < 4.0 * std::sqrt(gbar / 1e6) + 1e-3);
  }
}

TEST_CASE("frequency estimator is unbiased across seeds") {
  const StrategyProfile q = {0.35, 0.2};
  const std::int64_t slots_each = 10000;
  const int seeds = 100;
  for (std::size_t i = 0; i < 2; ++i) {
    double mean = 0.0;
    for (int s = 0; s < seeds; ++s) {
      mean += estimate_observables(simulate_slots(q, slots_each, 9000 + s), i)
                  .throughput_hat;
    }
    mean /= seeds;
    const double g = throughput(q, i);
    const double sem = std::sqrt(g * (1.0 - g) / static_cast<double>(slots_each * seeds));
    CHECK(std::fabs(mean - g) < 3.0 * sem);
  }
}

TEST_CASE("input validation") {
  CHECK_THROWS_AS((void)simulate_slots({0.5, 0.5}, 0, 1), DomainError);
  CHECK_THROWS_AS((void)simulate_slots({0.5}, 10, 1), DomainError);
  const auto batch = simulate_slots({0.5, 0.5}, 10, 1);
  CHECK_THROWS_AS((void)estimate_observables(batch, 2), std::out_of_range);
  const auto other = simulate_slots({0.5, 0.5}, 10, 2);
  CHECK_THROWS_AS((void)merge(batch, other), DomainError);
}

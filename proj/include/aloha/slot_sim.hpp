#pragma once

#include <cstdint>
#include <vector>

#include "aloha/types.hpp"

namespace aloha {

/// Tallies from a batch of simulated slots. Exactly one of
/// {success, idle, collision} happens per slot, so
/// sum(successes) + idle_slots + collision_slots == slots.
struct SlotBatchResult {
  std::int64_t slots = 0;
  std::vector<std::int64_t> successes;  ///< per player
  std::int64_t idle_slots = 0;
  std::int64_t collision_slots = 0;
  std::uint64_t seed = 0;

  bool operator==(const SlotBatchResult&) const = default;
};

/// Uniform draw in [0, 1) from the counter-based generator keyed by
/// (seed, slot, player). Stateless: the value depends only on the key, so
/// any partitioning of the slot range reproduces the same outcomes.
double slot_uniform(std::uint64_t seed, std::uint64_t slot, std::uint64_t player);

/// Simulate slots [first_slot, first_slot + count): each player transmits
/// independently with probability q_i; a slot is a success for player i iff
/// i is the only transmitter.
SlotBatchResult simulate_slot_range(const StrategyProfile& q, std::int64_t first_slot,
                                    std::int64_t count, std::uint64_t seed);

/// simulate_slot_range starting at slot 0.
SlotBatchResult simulate_slots(const StrategyProfile& q, std::int64_t slots,
                               std::uint64_t seed);

/// Merge tallies of two batches (same game, same seed, disjoint slot ranges).
SlotBatchResult merge(const SlotBatchResult& a, const SlotBatchResult& b);

/// Empirical observables a node can form from channel feedback.
struct Observables {
  double throughput_hat = 0.0;   ///< successes_i / slots
  double altruism_hat = 0.0;     ///< throughput_hat + idle_hat
  double idle_hat = 0.0;         ///< idle_slots / slots
  double mean_others_hat = 0.0;  ///< mean of the other players' frequencies
};

Observables estimate_observables(const SlotBatchResult& batch, std::size_t i);

}  // namespace aloha

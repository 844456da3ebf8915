#include "aloha/slot_sim.hpp"

#include <stdexcept>

namespace aloha {

namespace {

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

void require_profile(const StrategyProfile& q) {
  if (q.size() < 2) throw DomainError("profile needs at least two players");
  for (double v : q) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("transmission probability outside [0, 1]");
  }
}

}  // namespace

double slot_uniform(std::uint64_t seed, std::uint64_t slot, std::uint64_t player) {
  std::uint64_t h = mix64(seed ^ 0x9e3779b97f4a7c15ULL);
  h = mix64(h ^ (slot * 0xd1342543de82ef95ULL));
  h = mix64(h ^ ((player + 1) * 0xaf251af3b0f025b5ULL));
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

SlotBatchResult simulate_slot_range(const StrategyProfile& q, std::int64_t first_slot,
                                    std::int64_t count, std::uint64_t seed) {
  require_profile(q);
  if (count < 1) throw DomainError("slot count must be at least 1");
  const std::size_t n = q.size();

  SlotBatchResult batch;
  batch.slots = count;
  batch.seed = seed;
  batch.successes.assign(n, 0);
  for (std::int64_t s = first_slot; s < first_slot + count; ++s) {
    int transmitters = 0;
    std::size_t who = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (slot_uniform(seed, static_cast<std::uint64_t>(s), i) < q[i]) {
        ++transmitters;
        who = i;
        if (transmitters > 1) break;  // outcome already decided: collision
      }
    }
    if (transmitters == 0)
      ++batch.idle_slots;
    else if (transmitters == 1)
      ++batch.successes[who];
    else
      ++batch.collision_slots;
  }
  return batch;
}

SlotBatchResult simulate_slots(const StrategyProfile& q, std::int64_t slots,
                               std::uint64_t seed) {
  return simulate_slot_range(q, 0, slots, seed);
}

SlotBatchResult merge(const SlotBatchResult& a, const SlotBatchResult& b) {
  if (a.successes.size() != b.successes.size())
    throw DomainError("cannot merge batches with different player counts");
  if (a.seed != b.seed) throw DomainError("cannot merge batches from different seeds");
  SlotBatchResult out = a;
  out.slots += b.slots;
  out.idle_slots += b.idle_slots;
  out.collision_slots += b.collision_slots;
  for (std::size_t i = 0; i < out.successes.size(); ++i)
    out.successes[i] += b.successes[i];
  return out;
}

Observables estimate_observables(const SlotBatchResult& batch, std::size_t i) {
  if (i >= batch.successes.size()) throw std::out_of_range("player index out of range");
  if (batch.slots < 1) throw DomainError("batch holds no slots");
  const double slots = static_cast<double>(batch.slots);

  Observables obs;
  obs.throughput_hat = static_cast<double>(batch.successes[i]) / slots;
  obs.idle_hat = static_cast<double>(batch.idle_slots) / slots;
  obs.altruism_hat = obs.throughput_hat + obs.idle_hat;
  double others = 0.0;
  for (std::size_t j = 0; j < batch.successes.size(); ++j) {
    if (j == i) continue;
    others += static_cast<double>(batch.successes[j]) / slots;
  }
  obs.mean_others_hat = others / static_cast<double>(batch.successes.size() - 1);
  return obs;
}

}  // namespace aloha

#pragma once

#include <array>
#include <vector>

#include "aloha/types.hpp"

namespace aloha {

/// Single-play two-player transmission game with transmit cost xi in (0, 1)
/// and unit payoff for a successful (uncontested) transmission.
struct ChickenGame {
  double xi = 0.5;

  void validate() const;
};

enum class ChickenAction { Transmit = 0, Hold = 1 };

struct ChickenPayoff {
  double p1 = 0.0;
  double p2 = 0.0;
};

/// cells[a1][a2] -> payoffs, indexed by ChickenAction.
struct ChickenPayoffTable {
  std::array<std::array<ChickenPayoff, 2>, 2> cells{};

  const ChickenPayoff& at(ChickenAction a1, ChickenAction a2) const {
    return cells[static_cast<std::size_t>(a1)][static_cast<std::size_t>(a2)];
  }
};

ChickenPayoffTable chicken_payoff_matrix(const ChickenGame& g);

struct ChickenEquilibria {
  std::vector<std::pair<ChickenAction, ChickenAction>> pure;  ///< found by brute force
  double mixed_q = 0.0;                                       ///< q* = 1 - xi
};

/// Pure equilibria by exhaustive unilateral-deviation check over the 2x2
/// table, plus the mixed equilibrium transmit probability q* = 1 - xi.
ChickenEquilibria chicken_equilibria(const ChickenGame& g);

/// Expected net gain of player k when both randomize:
///   (1 - xi) q_k (1 - q_other) - xi q_k q_other.
double chicken_expected_gain(const ChickenGame& g, double q_k, double q_other);

/// Total channel throughput N q (1 - q)^(N-1); maximal at q = 1/N.
double total_throughput(double q, int n);

/// Demands ordered by the caller (descending responsiveness priority) and the
/// bottleneck capacity.
struct WaterFillingInput {
  std::vector<double> demands;
  double capacity = 0.0;

  void validate() const;
};

/// Sequential allocation d_k = min(D_k, max(capacity - sum_{j<k} D_j, 0)).
std::vector<double> water_filling(const WaterFillingInput& input);

}  // namespace aloha

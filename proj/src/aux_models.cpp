#include "aloha/aux_models.hpp"

#include <cmath>

namespace aloha {

void ChickenGame::validate() const {
  if (!(xi > 0.0 && xi < 1.0)) throw DomainError("transmission cost must lie in (0, 1)");
}

ChickenPayoffTable chicken_payoff_matrix(const ChickenGame& g) {
  g.validate();
  ChickenPayoffTable t;
  const auto tx = static_cast<std::size_t>(ChickenAction::Transmit);
  const auto hold = static_cast<std::size_t>(ChickenAction::Hold);
  t.cells[tx][tx] = {-g.xi, -g.xi};
  t.cells[tx][hold] = {1.0 - g.xi, 0.0};
  t.cells[hold][tx] = {0.0, 1.0 - g.xi};
  t.cells[hold][hold] = {0.0, 0.0};
  return t;
}

ChickenEquilibria chicken_equilibria(const ChickenGame& g) {
  const ChickenPayoffTable table = chicken_payoff_matrix(g);
  const ChickenAction actions[2] = {ChickenAction::Transmit, ChickenAction::Hold};

  ChickenEquilibria eq;
  for (ChickenAction a1 : actions) {
    for (ChickenAction a2 : actions) {
      bool nash = true;
      for (ChickenAction dev : actions) {  // player 1 deviations
        if (table.at(dev, a2).p1 > table.at(a1, a2).p1) nash = false;
      }
      for (ChickenAction dev : actions) {  // player 2 deviations
        if (table.at(a1, dev).p2 > table.at(a1, a2).p2) nash = false;
      }
      if (nash) eq.pure.emplace_back(a1, a2);
    }
  }
  eq.mixed_q = 1.0 - g.xi;
  return eq;
}

double chicken_expected_gain(const ChickenGame& g, double q_k, double q_other) {
  g.validate();
  return (1.0 - g.xi) * q_k * (1.0 - q_other) - g.xi * q_k * q_other;
}

double total_throughput(double q, int n) {
  if (n < 1) throw DomainError("player count must be at least 1");
  if (!(q >= 0.0 && q <= 1.0)) throw DomainError("probability outside [0, 1]");
  double p = 1.0;
  for (int k = 0; k < n - 1; ++k) p *= 1.0 - q;
  return static_cast<double>(n) * q * p;
}

void WaterFillingInput::validate() const {
  for (double d : demands) {
    if (!(d >= 0.0)) throw DomainError("demands must be non-negative");
  }
  if (!(capacity >= 0.0)) throw DomainError("capacity must be non-negative");
}

std::vector<double> water_filling(const WaterFillingInput& input) {
  input.validate();
  std::vector<double> alloc(input.demands.size(), 0.0);
  double consumed = 0.0;  // sum of earlier players' demands
  for (std::size_t k = 0; k < input.demands.size(); ++k) {
    alloc[k] = std::min(input.demands[k], std::max(input.capacity - consumed, 0.0));
    consumed += input.demands[k];
  }
  return alloc;
}

}  // namespace aloha

#pragma once

#include <string>
#include <vector>

#include "aloha/dynamics.hpp"
#include "aloha/equilibrium.hpp"
#include "aloha/types.hpp"

namespace aloha::tables {

/// Per-user performance at the symmetric equilibrium for dynamic altruism,
/// static altruism and the purely non-cooperative game (a = 0), with
/// log-of-throughput utility and power based cost. Identical players,
/// c = 0.5, a = 20 for the altruistic rows; N in {4, 8}. Rows are ordered by
/// decreasing throughput.
struct ComparisonRow {
  std::string scenario;  // "dynamic_altruism" | "static_altruism" | "non_cooperative"
  int n = 0;
  double q_star = 0.0;
  double throughput = 0.0;
  double utility = 0.0;  // V / M
};

std::vector<ComparisonRow> comparison_rows();

/// Heterogeneous-altruism study: N = 3, power based cost, c = 0.5, players 2
/// and 3 at a = 50, player 1's altruism weight swept over {30, .., 70}.
struct HeterogeneousRow {
  double leader_altruism = 0.0;
  StrategyProfile q;
  std::vector<double> throughput;
  std::vector<double> utility;
  double residual = 0.0;
};

std::vector<HeterogeneousRow> heterogeneous_rows();

/// Basin-volume study: N = 3, throughput based cost, c = 0.5, a = 50, two
/// symmetric equilibria; player 1's play rate swept over
/// {0.1, 0.25, 1, 4, 10}. Volumes are reported both strictly (trajectories
/// that converge onto an equilibrium) and by nearest-equilibrium attribution
/// of every terminal point.
struct BasinRow {
  double rate = 0.0;
  double nep_low = 0.0;
  double nep_high = 0.0;
  double low_fraction = 0.0;         // strict
  double high_fraction = 0.0;        // strict
  double unconverged_fraction = 0.0; // strict
  double low_nearest = 0.0;
  double high_nearest = 0.0;
};

struct BasinTableConfig {
  int grid_per_dim = 21;
  double step = 0.002;
  double convergence_tol = 1e-6;
  double max_time = 400.0;
  int workers = 0;
  std::vector<double> rates = {0.1, 0.25, 1.0, 4.0, 10.0};
};

std::vector<BasinRow> basin_rows(const BasinTableConfig& cfg = {});

/// CSV emitters: header row, LF line endings, full-precision value columns
/// paired with display-rounded ones.
std::string comparison_csv(const std::vector<ComparisonRow>& rows);
std::string heterogeneous_csv(const std::vector<HeterogeneousRow>& rows);
std::string basins_csv(const std::vector<BasinRow>& rows);

std::string comparison_json(const std::vector<ComparisonRow>& rows);
std::string heterogeneous_json(const std::vector<HeterogeneousRow>& rows);
std::string basins_json(const std::vector<BasinRow>& rows);

}  // namespace aloha::tables

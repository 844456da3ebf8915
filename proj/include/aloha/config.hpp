#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "aloha/dynamics.hpp"
#include "aloha/equilibrium.hpp"
#include "aloha/types.hpp"

namespace aloha {

/// Run configuration for the CLI. Accepts flat key = value text (one pair per
/// line, '#' comments, dotted section keys) or a JSON object with the same
/// keys, nested or flat. Normalized (game.c / game.a) and raw
/// (game.utility_weights / game.altruism_weights / game.cost_weights)
/// parameter forms are mutually exclusive.
struct RunConfig {
  UtilityVariant variant;
  std::size_t n = 2;
  std::vector<double> utility_weights;   // C
  std::vector<double> altruism_weights;  // A
  std::vector<double> cost_weights;      // M
  std::vector<double> play_rates;        // r

  int scan_points = 10000;
  double damping = 0.5;
  int max_iters = 10000;
  bool multistart = false;
  std::optional<StrategyProfile> q0;

  FlowConfig flow;
  StepMethod method = StepMethod::RungeKutta4;

  int grid_per_dim = 21;
  BasinAttribution attribution = BasinAttribution::Strict;
  int workers = 0;

  std::optional<StrategyProfile> sim_q;
  std::int64_t slots = 1000000;
  std::uint64_t seed = 0;

  std::optional<StrategyProfile> stability_q;

  GameSpec to_game() const;
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

/// Raw key/value view used by the parser; exposed for tests.
std::map<std::string, std::string> flatten_config_text(const std::string& text);

}  // namespace aloha

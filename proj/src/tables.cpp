#include "aloha/tables.hpp"

#include <stdexcept>

#include "aloha/csv.hpp"
#include "aloha/game_model.hpp"
#include "json.hpp"

namespace aloha::tables {

namespace {

using nlohmann::ordered_json;

NepResult single_symmetric_nep(const SymmetricCondition& cond) {
  auto neps = find_symmetric_neps(cond);
  // The studies below are parameterized so that the condition has one root;
  // if more appear, keep the smallest (the most altruistic play).
  return neps.front();
}

}  // namespace

std::vector<ComparisonRow> comparison_rows() {
  const double c = 0.5;
  const double a = 20.0;
  struct Case {
    const char* scenario;
    int n;
    AltruismMode mode;
    double a;
  };
  const Case cases[] = {
      {"dynamic_altruism", 4, AltruismMode::Dynamic, a},
      {"static_altruism", 4, AltruismMode::Static, a},
      {"non_cooperative", 4, AltruismMode::Dynamic, 0.0},
      {"static_altruism", 8, AltruismMode::Static, a},
      {"dynamic_altruism", 8, AltruismMode::Dynamic, a},
      {"non_cooperative", 8, AltruismMode::Dynamic, 0.0},
  };

  std::vector<ComparisonRow> rows;
  for (const Case& cs : cases) {
    SymmetricCondition cond;
    cond.variant = UtilityVariant{UtilityKind::PowerLog, cs.mode};
    cond.n = cs.n;
    cond.a = cs.a;
    cond.c = c;
    const NepResult nep = single_symmetric_nep(cond);
    rows.push_back({cs.scenario, cs.n, nep.q_star.front(), nep.throughputs.front(),
                    nep.normalized_utilities.front()});
  }
  return rows;
}

std::vector<HeterogeneousRow> heterogeneous_rows() {
  std::vector<HeterogeneousRow> rows;
  for (double a1 : {30.0, 40.0, 50.0, 60.0, 70.0}) {
    GameSpec spec;
    spec.variant = UtilityVariant{UtilityKind::PowerLog, AltruismMode::Dynamic};
    spec.players = {PlayerParams{0.5, a1, 1.0, 1.0}, PlayerParams{0.5, 50.0, 1.0, 1.0},
                    PlayerParams{0.5, 50.0, 1.0, 1.0}};
    const NepResult nep = solve_heterogeneous_nep(spec, default_start(spec));
    rows.push_back(
        {a1, nep.q_star, nep.throughputs, nep.normalized_utilities, nep.residual});
  }
  return rows;
}

std::vector<BasinRow> basin_rows(const BasinTableConfig& cfg) {
  SymmetricCondition cond;
  cond.variant = UtilityVariant{UtilityKind::ThroughputLog, AltruismMode::Dynamic};
  cond.n = 3;
  cond.a = 50.0;
  cond.c = 0.5;
  const std::vector<double> roots = find_symmetric_roots(cond);
  if (roots.size() != 2)
    throw std::runtime_error("basin study expects exactly two symmetric equilibria");
  const std::vector<StrategyProfile> neps = {StrategyProfile(3, roots[0]),
                                             StrategyProfile(3, roots[1])};

  FlowConfig flow;
  flow.step = cfg.step;
  flow.convergence_tol = cfg.convergence_tol;
  flow.max_time = cfg.max_time;

  std::vector<BasinRow> rows;
  for (double rate : cfg.rates) {
    GameSpec spec = condition_game(cond);
    spec.players[0].r = rate;  // player 1 plays at a multiple of the others
    const auto outcomes = basin_scan(spec, neps, cfg.grid_per_dim, flow, cfg.workers);
    const BasinReport strict =
        summarize_basins(outcomes, neps, cfg.grid_per_dim, BasinAttribution::Strict);
    const BasinReport nearest =
        summarize_basins(outcomes, neps, cfg.grid_per_dim, BasinAttribution::Nearest);
    rows.push_back({rate, roots[0], roots[1], strict.volume_fraction[0],
                    strict.volume_fraction[1], strict.unconverged_fraction,
                    nearest.volume_fraction[0], nearest.volume_fraction[1]});
  }
  return rows;
}

std::string comparison_csv(const std::vector<ComparisonRow>& rows) {
  std::string out = csv_row({"scenario", "n", "q", "q_display", "throughput",
                             "throughput_display", "utility", "utility_display"});
  for (const auto& r : rows) {
    out += csv_row({r.scenario, std::to_string(r.n), format_full(r.q_star),
                    format_display(r.q_star), format_full(r.throughput),
                    format_display(r.throughput), format_full(r.utility),
                    format_display(r.utility)});
  }
  return out;
}

std::string heterogeneous_csv(const std::vector<HeterogeneousRow>& rows) {
  std::string out = csv_row({"a1", "q1", "q1_display", "q2", "q2_display", "gamma1",
                             "gamma1_display", "gamma2", "gamma2_display", "v1",
                             "v1_display", "v2", "v2_display", "residual"});
  for (const auto& r : rows) {
    out += csv_row({format_full(r.leader_altruism), format_full(r.q[0]),
                    format_display(r.q[0]), format_full(r.q[1]), format_display(r.q[1]),
                    format_full(r.throughput[0]), format_display(r.throughput[0]),
                    format_full(r.throughput[1]), format_display(r.throughput[1]),
                    format_full(r.utility[0]), format_display(r.utility[0]),
                    format_full(r.utility[1]), format_display(r.utility[1]),
                    format_full(r.residual)});
  }
  return out;
}

std::string basins_csv(const std::vector<BasinRow>& rows) {
  std::string out = csv_row({"rate", "nep_low", "nep_high", "volume_low",
                             "volume_low_display", "volume_high", "volume_high_display",
                             "unconverged", "volume_low_nearest", "volume_high_nearest"});
  for (const auto& r : rows) {
    out += csv_row({format_full(r.rate), format_full(r.nep_low), format_full(r.nep_high),
                    format_full(r.low_fraction), format_display(r.low_fraction),
                    format_full(r.high_fraction), format_display(r.high_fraction),
                    format_full(r.unconverged_fraction), format_full(r.low_nearest),
                    format_full(r.high_nearest)});
  }
  return out;
}

std::string comparison_json(const std::vector<ComparisonRow>& rows) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    out.push_back({{"scenario", r.scenario},
                   {"n", r.n},
                   {"q", r.q_star},
                   {"throughput", r.throughput},
                   {"utility", r.utility}});
  }
  return out.dump(2) + "\n";
}

std::string heterogeneous_json(const std::vector<HeterogeneousRow>& rows) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    out.push_back({{"a1", r.leader_altruism},
                   {"q", r.q},
                   {"throughput", r.throughput},
                   {"utility", r.utility},
                   {"residual", r.residual}});
  }
  return out.dump(2) + "\n";
}

std::string basins_json(const std::vector<BasinRow>& rows) {
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    out.push_back({{"rate", r.rate},
                   {"nep_low", r.nep_low},
                   {"nep_high", r.nep_high},
                   {"volume_low", r.low_fraction},
                   {"volume_high", r.high_fraction},
                   {"unconverged", r.unconverged_fraction},
                   {"volume_low_nearest", r.low_nearest},
                   {"volume_high_nearest", r.high_nearest}});
  }
  return out.dump(2) + "\n";
}

}  // namespace aloha::tables

#include "aloha/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "aloha/config.hpp"
#include "aloha/csv.hpp"
#include "aloha/dynamics.hpp"
#include "aloha/equilibrium.hpp"
#include "aloha/game_model.hpp"
#include "aloha/slot_sim.hpp"
#include "aloha/stability.hpp"
#include "aloha/tables.hpp"

namespace aloha::cli {

namespace {

using nlohmann::ordered_json;

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw ConfigError("cannot open output file '" + out_path + "'");
  out << text;
}

UtilityKind variant_from_name(const std::string& name) {
  if (name == "power_log") return UtilityKind::PowerLog;
  if (name == "throughput_log") return UtilityKind::ThroughputLog;
  if (name == "power_proportional") return UtilityKind::PowerProportional;
  throw ConfigError("unknown variant '" + name + "'");
}

ordered_json nep_to_json(const NepResult& nep) {
  return {{"kind", nep.kind == NepKind::Symmetric ? "symmetric" : "heterogeneous"},
          {"q", nep.q_star},
          {"residual", nep.residual},
          {"throughputs", nep.throughputs},
          {"normalized_utilities", nep.normalized_utilities},
          {"stability", to_string(nep.stability)}};
}

ordered_json game_to_json(const GameSpec& spec) {
  ordered_json players = ordered_json::array();
  for (const auto& p : spec.players) {
    players.push_back({{"C", p.C}, {"A", p.A}, {"M", p.M}, {"r", p.r}});
  }
  return {{"variant", to_string(spec.variant.kind)},
          {"altruism", to_string(spec.variant.altruism)},
          {"players", players}};
}

struct CurveOptions {
  std::string variant = "power_log";
  std::string altruism = "dynamic";
  std::vector<int> n_list;
  std::vector<double> a_list;
  double c = 0.5;
  int points = 1000;
  std::string out;
};

int cmd_curve(const CurveOptions& opt) {
  if (opt.a_list.empty()) throw ConfigError("curve needs at least one altruism value (--a)");
  if (opt.n_list.empty()) throw ConfigError("curve needs at least one player count (--N)");
  if (opt.points < 2) throw ConfigError("curve needs at least two grid points");

  UtilityVariant variant;
  variant.kind = variant_from_name(opt.variant);
  if (opt.altruism == "dynamic")
    variant.altruism = AltruismMode::Dynamic;
  else if (opt.altruism == "static")
    variant.altruism = AltruismMode::Static;
  else
    throw ConfigError("unknown altruism mode '" + opt.altruism + "'");

  std::vector<SymmetricCondition> cases;
  std::vector<std::string> header = {"q"};
  for (int n : opt.n_list) {
    for (double a : opt.a_list) {
      SymmetricCondition cond{variant, n, a, opt.c};
      cond.validate();
      cases.push_back(cond);
      std::ostringstream name;
      name << "f_n" << n << "_a" << format_display(a, 6);
      header.push_back(name.str());
    }
  }

  std::string out = csv_row(header);
  for (int k = 1; k < opt.points; ++k) {  // open grid on (0, 1)
    const double q = static_cast<double>(k) / static_cast<double>(opt.points);
    std::vector<std::string> cells = {format_full(q)};
    for (const auto& cond : cases) cells.push_back(format_full(symmetric_condition_eval(cond, q)));
    out += csv_row(cells);
  }
  write_output(out, opt.out);
  return kExitOk;
}

struct TableOptions {
  std::string name;
  std::string format = "csv";
  std::string out;
  int grid = 21;
  double step = 0.002;
  int workers = 0;
};

int cmd_table(const TableOptions& opt) {
  std::string text;
  if (opt.name == "comparison") {
    const auto rows = tables::comparison_rows();
    text = opt.format == "json" ? tables::comparison_json(rows) : tables::comparison_csv(rows);
  } else if (opt.name == "heterogeneous") {
    const auto rows = tables::heterogeneous_rows();
    text = opt.format == "json" ? tables::heterogeneous_json(rows)
                                : tables::heterogeneous_csv(rows);
  } else if (opt.name == "basins") {
    tables::BasinTableConfig cfg;
    cfg.grid_per_dim = opt.grid;
    cfg.step = opt.step;
    cfg.workers = opt.workers;
    const auto rows = tables::basin_rows(cfg);
    text = opt.format == "json" ? tables::basins_json(rows) : tables::basins_csv(rows);
  } else {
    throw ConfigError("unknown table '" + opt.name +
                      "' (expected comparison, heterogeneous or basins)");
  }
  write_output(text, opt.out);
  return kExitOk;
}

std::vector<NepResult> solve_from_config(const RunConfig& cfg, const GameSpec& spec) {
  std::vector<NepResult> results;
  if (spec.identical_players()) {
    SymmetricCondition cond;
    cond.variant = spec.variant;
    cond.n = static_cast<int>(spec.player_count());
    cond.a = spec.players.front().a();
    cond.c = spec.players.front().c();
    results = find_symmetric_neps(cond, cfg.scan_points);
  } else {
    HeterogeneousSolveOptions opts;
    opts.damping = cfg.damping;
    opts.max_iters = cfg.max_iters;
    results.push_back(
        solve_heterogeneous_nep(spec, cfg.q0 ? *cfg.q0 : default_start(spec), opts));
  }
  if (cfg.multistart) {
    HeterogeneousSolveOptions opts;
    opts.damping = cfg.damping;
    opts.max_iters = cfg.max_iters;
    for (auto& extra : solve_heterogeneous_multistart(spec, {0.15, 0.5, 0.85}, opts)) {
      bool duplicate = false;
      for (const auto& prior : results) {
        double dist = 0.0;
        for (std::size_t i = 0; i < extra.q_star.size(); ++i)
          dist = std::max(dist, std::abs(prior.q_star[i] - extra.q_star[i]));
        if (dist <= 1e-6) duplicate = true;
      }
      if (!duplicate) results.push_back(std::move(extra));
    }
  }
  return results;
}

int cmd_solve(const std::string& config_path, const std::string& out_path,
              const std::string& format) {
  const RunConfig cfg = parse_config_file(config_path);
  const GameSpec spec = cfg.to_game();
  ordered_json doc;
  doc["game"] = game_to_json(spec);
  try {
    const auto results = solve_from_config(cfg, spec);
    ordered_json list = ordered_json::array();
    for (const auto& nep : results) list.push_back(nep_to_json(nep));
    doc["results"] = list;
  } catch (const NoRootError& err) {
    doc["error"] = "no_root";
    doc["detail"] = err.what();
    write_output(doc.dump(2) + "\n", out_path);
    return kExitNotConverged;
  } catch (const NotConvergedError& err) {
    doc["error"] = "not_converged";
    doc["detail"] = err.what();
    doc["last_iterate"] = err.last_iterate;
    doc["residual"] = err.residual;
    doc["iterations"] = err.iterations;
    write_output(doc.dump(2) + "\n", out_path);
    return kExitNotConverged;
  }

  if (format == "csv") {
    std::string text = csv_row({"nep", "player", "q", "throughput", "normalized_utility",
                                "residual", "stability"});
    const auto& list = doc["results"];
    for (std::size_t j = 0; j < list.size(); ++j) {
      const auto& nep = list[j];
      for (std::size_t i = 0; i < nep["q"].size(); ++i) {
        text += csv_row({std::to_string(j), std::to_string(i),
                         format_full(nep["q"][i].get<double>()),
                         format_full(nep["throughputs"][i].get<double>()),
                         format_full(nep["normalized_utilities"][i].get<double>()),
                         format_full(nep["residual"].get<double>()),
                         nep["stability"].get<std::string>()});
      }
    }
    write_output(text, out_path);
  } else {
    write_output(doc.dump(2) + "\n", out_path);
  }
  return kExitOk;
}

int cmd_simulate(const std::string& config_path, const std::string& out_path,
                 std::optional<std::uint64_t> seed_override, const std::string& format) {
  const RunConfig cfg = parse_config_file(config_path);
  if (!cfg.sim_q) throw ConfigError("simulate needs sim.q in the config");
  const std::uint64_t seed = seed_override.value_or(cfg.seed);
  const SlotBatchResult batch = simulate_slots(*cfg.sim_q, cfg.slots, seed);

  ordered_json doc;
  doc["q"] = *cfg.sim_q;
  doc["slots"] = batch.slots;
  doc["seed"] = batch.seed;
  doc["successes"] = batch.successes;
  doc["idle_slots"] = batch.idle_slots;
  doc["collision_slots"] = batch.collision_slots;
  ordered_json observables = ordered_json::array();
  for (std::size_t i = 0; i < cfg.sim_q->size(); ++i) {
    const Observables obs = estimate_observables(batch, i);
    observables.push_back({{"throughput_hat", obs.throughput_hat},
                           {"altruism_hat", obs.altruism_hat},
                           {"idle_hat", obs.idle_hat},
                           {"mean_others_hat", obs.mean_others_hat}});
  }
  doc["observables"] = observables;

  if (format == "csv") {
    std::string text = csv_row({"player", "successes", "throughput_hat", "altruism_hat",
                                "idle_hat", "mean_others_hat"});
    for (std::size_t i = 0; i < cfg.sim_q->size(); ++i) {
      const Observables obs = estimate_observables(batch, i);
      text += csv_row({std::to_string(i), std::to_string(batch.successes[i]),
                       format_full(obs.throughput_hat), format_full(obs.altruism_hat),
                       format_full(obs.idle_hat), format_full(obs.mean_others_hat)});
    }
    write_output(text, out_path);
  } else {
    write_output(doc.dump(2) + "\n", out_path);
  }
  return kExitOk;
}

int cmd_basins(const std::string& config_path, const std::string& out_path,
               const std::string& format) {
  const RunConfig cfg = parse_config_file(config_path);
  const GameSpec spec = cfg.to_game();

  std::vector<StrategyProfile> neps;
  ordered_json doc;
  doc["game"] = game_to_json(spec);
  try {
    for (const auto& nep : solve_from_config(cfg, spec)) neps.push_back(nep.q_star);
  } catch (const NoRootError& err) {
    doc["error"] = "no_root";
    doc["detail"] = err.what();
    write_output(doc.dump(2) + "\n", out_path);
    return kExitNotConverged;
  }

  const BasinReport report = estimate_basins(spec, neps, cfg.grid_per_dim, cfg.flow,
                                             cfg.attribution, cfg.workers, cfg.method);
  doc["grid_per_dim"] = report.grid_per_dim;
  doc["total_seeds"] = report.total_seeds;
  doc["attribution"] =
      report.attribution == BasinAttribution::Strict ? "strict" : "nearest";
  ordered_json neps_json = ordered_json::array();
  for (std::size_t j = 0; j < report.neps.size(); ++j) {
    neps_json.push_back({{"q", report.neps[j]},
                         {"volume_fraction", report.volume_fraction[j]},
                         {"count", report.counts[j]}});
  }
  doc["neps"] = neps_json;
  doc["unconverged_fraction"] = report.unconverged_fraction;
  doc["unconverged_count"] = report.unconverged_count;

  if (format == "csv") {
    std::string text = csv_row({"nep", "q", "volume_fraction", "count"});
    for (std::size_t j = 0; j < report.neps.size(); ++j) {
      std::string q_str;
      for (std::size_t i = 0; i < report.neps[j].size(); ++i) {
        if (i > 0) q_str += ';';
        q_str += format_full(report.neps[j][i]);
      }
      text += csv_row({std::to_string(j), q_str, format_full(report.volume_fraction[j]),
                       std::to_string(report.counts[j])});
    }
    text += csv_row({"unconverged", "", format_full(report.unconverged_fraction),
                     std::to_string(report.unconverged_count)});
    write_output(text, out_path);
  } else {
    write_output(doc.dump(2) + "\n", out_path);
  }
  return kExitOk;
}

int cmd_stability(const std::string& config_path, const std::string& out_path) {
  const RunConfig cfg = parse_config_file(config_path);
  const GameSpec spec = cfg.to_game();
  ordered_json doc;
  doc["game"] = game_to_json(spec);

  std::vector<StrategyProfile> points;
  if (cfg.stability_q) {
    points.push_back(*cfg.stability_q);
  } else {
    try {
      for (const auto& nep : solve_from_config(cfg, spec)) points.push_back(nep.q_star);
    } catch (const NoRootError& err) {
      doc["error"] = "no_root";
      doc["detail"] = err.what();
      write_output(doc.dump(2) + "\n", out_path);
      return kExitNotConverged;
    }
  }

  ordered_json list = ordered_json::array();
  for (const auto& q : points) {
    const StabilityReport report = stability_report(spec, q);
    list.push_back({{"q", q},
                    {"rosen_negative_definite", report.rosen_negative_definite},
                    {"gershgorin_bound_holds", report.gershgorin_bound_holds},
                    {"jacobian_eigen_max_real", report.jacobian_eigen_max_real},
                    {"classification", to_string(report.classification)}});
  }
  doc["reports"] = list;
  write_output(doc.dump(2) + "\n", out_path);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  CLI::App app{"Slotted random-access game toolkit: equilibria, stability, "
               "better-response dynamics and slot-level simulation"};
  app.require_subcommand(1);

  CurveOptions curve;
  auto* curve_cmd = app.add_subcommand(
      "curve", "Emit the symmetric equilibrium condition over a q grid as CSV");
  curve_cmd->add_option("--variant", curve.variant,
                        "power_log | throughput_log | power_proportional");
  curve_cmd->add_option("--altruism", curve.altruism, "dynamic | static");
  curve_cmd->add_option("--N", curve.n_list, "player counts")->delimiter(',');
  curve_cmd->add_option("--a", curve.a_list, "normalized altruism weights")->delimiter(',');
  curve_cmd->add_option("--c", curve.c, "normalized utility weight");
  curve_cmd->add_option("--points", curve.points, "grid points on (0,1)");
  curve_cmd->add_option("--out", curve.out, "output path (default stdout)");

  TableOptions table;
  auto* table_cmd =
      app.add_subcommand("table", "Regenerate a study table from first principles");
  table_cmd->add_option("name", table.name, "comparison | heterogeneous | basins")
      ->required();
  table_cmd->add_option("--format", table.format, "csv | json")
      ->check(CLI::IsMember({"csv", "json"}));
  table_cmd->add_option("--out", table.out, "output path (default stdout)");
  table_cmd->add_option("--grid", table.grid, "basin grid points per dimension");
  table_cmd->add_option("--step", table.step, "basin integration step");
  table_cmd->add_option("--workers", table.workers, "worker threads (0 = auto)");

  std::string config_path, out_path;
  std::string format = "json";
  std::optional<std::uint64_t> seed_override;

  auto add_common = [&](CLI::App* cmd, bool with_seed) {
    cmd->add_option("--config", config_path, "run configuration file")->required();
    cmd->add_option("--out", out_path, "output path (default stdout)");
    cmd->add_option("--format", format, "csv | json")
        ->check(CLI::IsMember({"csv", "json"}));
    if (with_seed) {
      cmd->add_option_function<std::uint64_t>(
          "--seed", [&seed_override](std::uint64_t s) { seed_override = s; },
          "override the config seed");
    }
  };

  auto* solve_cmd = app.add_subcommand("solve", "Find equilibria for a configured game");
  add_common(solve_cmd, false);
  auto* simulate_cmd =
      app.add_subcommand("simulate", "Run the slot-level channel simulator");
  add_common(simulate_cmd, true);
  auto* basins_cmd =
      app.add_subcommand("basins", "Estimate regions of attraction on a seed grid");
  add_common(basins_cmd, false);
  auto* stability_cmd =
      app.add_subcommand("stability", "Stability reports at equilibria or a given point");
  stability_cmd->add_option("--config", config_path, "run configuration file")->required();
  stability_cmd->add_option("--out", out_path, "output path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (curve_cmd->parsed()) return cmd_curve(curve);
    if (table_cmd->parsed()) return cmd_table(table);
    if (solve_cmd->parsed()) return cmd_solve(config_path, out_path, format);
    if (simulate_cmd->parsed())
      return cmd_simulate(config_path, out_path, seed_override, format);
    if (basins_cmd->parsed()) return cmd_basins(config_path, out_path, format);
    if (stability_cmd->parsed()) return cmd_stability(config_path, out_path);
  } catch (const ConfigError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  } catch (const NoRootError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNotConverged;
  } catch (const NotConvergedError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitNotConverged;
  } catch (const DomainError& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}

int run(const std::vector<std::string>& args) {
  std::vector<std::string> storage = args;
  std::vector<const char*> argv;
  argv.push_back("aloha");
  for (const auto& a : storage) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data());
}

}  // namespace aloha::cli

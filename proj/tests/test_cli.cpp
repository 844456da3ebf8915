#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "aloha/cli.hpp"
#include "aloha/config.hpp"
#include "aloha/csv.hpp"
#include "aloha/equilibrium.hpp"
#include "aloha/tables.hpp"

using namespace aloha;
namespace fs = std::filesystem;

namespace {

fs::path temp_file(const std::string& name) {
  return fs::temp_directory_path() / name;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

const char* kSymmetricConfig =
    "# symmetric power-log game\n"
    "game.variant = power_log\n"
    "game.n = 3\n"
    "game.c = 0.5\n"
    "game.a = 0\n";

}  // namespace

TEST_CASE("config parsing: key-value and JSON forms agree") {
  const RunConfig kv = parse_config_text(
      "game.variant = throughput_log\n"
      "game.altruism = dynamic\n"
      "game.n = 3\n"
      "game.c = 0.5\n"
      "game.a = 50\n"
      "game.r = 10, 1, 1\n"
      "flow.step = 0.002\n"
      "seed = 7\n");
  const RunConfig js = parse_config_text(
      R"({"game": {"variant": "throughput_log", "altruism": "dynamic", "n": 3,
                   "c": 0.5, "a": 50, "r": [10, 1, 1]},
          "flow": {"step": 0.002}, "seed": 7})");
  CHECK(kv.variant.kind == UtilityKind::ThroughputLog);
  CHECK(kv.n == 3);
  CHECK(kv.play_rates == std::vector<double>{10.0, 1.0, 1.0});
  CHECK(kv.flow.step == 0.002);
  CHECK(kv.seed == 7);
  CHECK(js.play_rates == kv.play_rates);
  CHECK(js.flow.step == kv.flow.step);
  CHECK(js.seed == kv.seed);
  const GameSpec game = kv.to_game();
  CHECK(game.players[0].A == 50.0);
  CHECK(game.players[0].r == 10.0);
  CHECK(game.players[2].r == 1.0);
}

TEST_CASE("config parsing rejects malformed input") {
  CHECK_THROWS_AS((void)parse_config_text("game.variant = power_log\n"
                                          "game.n = 2\n"
                                          "game.c = 0.5\n"
                                          "game.utility_weights = 0.5,0.5\n"),
                  ConfigError);  // both parameter forms
  CHECK_THROWS_AS((void)parse_config_text("game.variant = nonsense\ngame.n=2\ngame.c=0.5\n"),
                  ConfigError);
  CHECK_THROWS_AS((void)parse_config_text("game.variant = power_log\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config_text("mystery.key = 1\n"), ConfigError);
  CHECK_THROWS_AS((void)parse_config_text("game.variant = power_log\ngame.n = 2\n"
                                          "game.c = 0.5\ngame.a = 1,2,3\n"),
                  ConfigError);  // wrong list length
  CHECK_THROWS_AS((void)parse_config_text("no equals sign"), ConfigError);
  CHECK_THROWS_AS((void)parse_config_text("{\"game\": ["), ConfigError);
}

TEST_CASE("raw parameter form builds heterogeneous players") {
  const RunConfig cfg = parse_config_text(
      "game.variant = power_log\n"
      "game.utility_weights = 0.5, 0.5, 0.5\n"
      "game.altruism_weights = 30, 50, 50\n"
      "game.cost_weights = 1, 1, 1\n");
  const GameSpec spec = cfg.to_game();
  CHECK(spec.players[0].A == 30.0);
  CHECK(spec.players[1].A == 50.0);
  CHECK_FALSE(spec.identical_players());
}

TEST_CASE("solve command writes equilibria and exit codes are stable") {
  const auto cfg_path = temp_file("aloha_solve_cfg.txt");
  const auto out_path = temp_file("aloha_solve_out.json");
  write_file(cfg_path, kSymmetricConfig);
  const int rc = cli::run({"solve", "--config", cfg_path.string(), "--out",
                           out_path.string()});
  CHECK(rc == cli::kExitOk);
  const std::string body = read_file(out_path);
  CHECK(body.find("\"results\"") != std::string::npos);
  CHECK(body.find("0.5") != std::string::npos);

  // byte-identical reruns
  const auto out2 = temp_file("aloha_solve_out2.json");
  CHECK(cli::run({"solve", "--config", cfg_path.string(), "--out", out2.string()}) ==
        cli::kExitOk);
  CHECK(read_file(out2) == body);
}

TEST_CASE("solve reports missing equilibria with exit code 3") {
  const auto cfg_path = temp_file("aloha_noroot_cfg.txt");
  const auto out_path = temp_file("aloha_noroot_out.json");
  write_file(cfg_path,
             "game.variant = throughput_log\n"
             "game.n = 5\n"
             "game.c = 0.5\n"
             "game.a = 1\n");
  const int rc =
      cli::run({"solve", "--config", cfg_path.string(), "--out", out_path.string()});
  CHECK(rc == cli::kExitNotConverged);
  CHECK(read_file(out_path).find("no_root") != std::string::npos);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(cli::run({"curve", "--variant", "power_log", "--c", "0.5", "--N", "2"}) ==
        cli::kExitUsage);  // empty altruism list
  CHECK(cli::run({"unknown-subcommand"}) == cli::kExitUsage);
  CHECK(cli::run({"solve", "--config", "/nonexistent/path.cfg"}) == cli::kExitUsage);
  const auto bad_cfg = temp_file("aloha_bad_cfg.txt");
  write_file(bad_cfg, "garbage\n");
  CHECK(cli::run({"solve", "--config", bad_cfg.string()}) == cli::kExitUsage);
}

TEST_CASE("curve emits a header and sign changes at the solver's roots") {
  const auto out_path = temp_file("aloha_curve.csv");
  const int rc = cli::run({"curve", "--variant", "power_log", "--c", "0.5", "--a", "1",
                           "--N", "2,3,5,10", "--points", "2000", "--out",
                           out_path.string()});
  CHECK(rc == cli::kExitOk);
  std::ifstream in(out_path);
  std::string header;
  std::getline(in, header);
  CHECK(header == "q,f_n2_a1,f_n3_a1,f_n5_a1,f_n10_a1");

  // locate the sign change per column and compare with the root finder
  std::vector<std::vector<double>> cols(5);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string cell;
    for (auto& col : cols) {
      std::getline(row, cell, ',');
      col.push_back(std::stod(cell));
    }
  }
  const UtilityVariant power_log{UtilityKind::PowerLog, AltruismMode::Dynamic};
  const int n_cases[4] = {2, 3, 5, 10};
  for (int case_idx = 0; case_idx < 4; ++case_idx) {
    const auto roots =
        find_symmetric_roots({power_log, n_cases[case_idx], 1.0, 0.5});
    REQUIRE(roots.size() == 1);
    double crossing = -1.0;
    for (std::size_t k = 1; k < cols[0].size(); ++k) {
      if ((cols[case_idx + 1][k] < 0) != (cols[case_idx + 1][k - 1] < 0))
        crossing = 0.5 * (cols[0][k] + cols[0][k - 1]);
    }
    CHECK(crossing == doctest::Approx(roots[0]).epsilon(0.01));
  }
  // the two-player root sits near 0.40, the many-player roots near 0.5
  CHECK(find_symmetric_roots({power_log, 2, 1.0, 0.5})[0] ==
        doctest::Approx(0.40).epsilon(0.02));
  CHECK(find_symmetric_roots({power_log, 10, 1.0, 0.5})[0] ==
        doctest::Approx(0.5).epsilon(0.01));
}

TEST_CASE("simulate honors the seed override and is reproducible") {
  const auto cfg_path = temp_file("aloha_sim_cfg.txt");
  write_file(cfg_path,
             "game.variant = power_log\n"
             "game.n = 2\n"
             "game.c = 0.5\n"
             "sim.q = 0.5, 0.5\n"
             "sim.slots = 20000\n"
             "seed = 5\n");
  const auto out_a = temp_file("aloha_sim_a.json");
  const auto out_b = temp_file("aloha_sim_b.json");
  CHECK(cli::run({"simulate", "--config", cfg_path.string(), "--out", out_a.string()}) ==
        cli::kExitOk);
  CHECK(cli::run({"simulate", "--config", cfg_path.string(), "--out", out_b.string()}) ==
        cli::kExitOk);
  CHECK(read_file(out_a) == read_file(out_b));

  const auto out_c = temp_file("aloha_sim_c.json");
  CHECK(cli::run({"simulate", "--config", cfg_path.string(), "--seed", "6", "--out",
                  out_c.string()}) == cli::kExitOk);
  CHECK(read_file(out_c) != read_file(out_a));
  CHECK(read_file(out_c).find("\"seed\": 6") != std::string::npos);
}

TEST_CASE("stability command reports the solved equilibria") {
  const auto cfg_path = temp_file("aloha_stab_cfg.txt");
  const auto out_path = temp_file("aloha_stab_out.json");
  write_file(cfg_path, kSymmetricConfig);
  CHECK(cli::run({"stability", "--config", cfg_path.string(), "--out",
                  out_path.string()}) == cli::kExitOk);
  const std::string body = read_file(out_path);
  CHECK(body.find("\"classification\": \"stable\"") != std::string::npos);
  CHECK(body.find("rosen_negative_definite") != std::string::npos);
}

TEST_CASE("table csv round-trips residuals at solver tolerance") {
  const auto rows = tables::heterogeneous_rows();
  const std::string csv = tables::heterogeneous_csv(rows);
  std::istringstream in(csv);
  std::string header;
  std::getline(in, header);
  CHECK(header.find("q1,q1_display") != std::string::npos);
  std::string line;
  int count = 0;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::vector<std::string> cells;
    std::string cell;
    while (std::getline(row, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 14);
    // re-parse full-precision q, rebuild the game, recompute the residual
    GameSpec spec;
    spec.variant = UtilityVariant{UtilityKind::PowerLog, AltruismMode::Dynamic};
    spec.players = {PlayerParams{0.5, std::stod(cells[0]), 1.0, 1.0},
                    PlayerParams{0.5, 50.0, 1.0, 1.0}, PlayerParams{0.5, 50.0, 1.0, 1.0}};
    const StrategyProfile q = {std::stod(cells[1]), std::stod(cells[3]),
                               std::stod(cells[3])};
    const NepResult nep = make_nep_result(spec, q, NepKind::Heterogeneous);
    CHECK(nep.residual < 1e-8);
    ++count;
  }
  CHECK(count == 5);
}

TEST_CASE("table generation is deterministic") {
  CHECK(tables::comparison_csv(tables::comparison_rows()) ==
        tables::comparison_csv(tables::comparison_rows()));
  CHECK(tables::comparison_json(tables::comparison_rows()) ==
        tables::comparison_json(tables::comparison_rows()));
}

TEST_CASE("full-precision formatting survives a round trip") {
  const double values[] = {0.1044311274761992, -3.2676405766758494, 1.0 / 3.0, 1e-9};
  for (double v : values) {
    CHECK(std::stod(format_full(v)) == v);
  }
  CHECK(csv_row({"a", "b"}) == "a,b\n");
}

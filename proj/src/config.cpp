#include "aloha/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace aloha {

namespace {

const std::set<std::string> kKnownKeys = {
    "game.variant",        "game.altruism",         "game.n",
    "game.c",              "game.a",                "game.r",
    "game.utility_weights", "game.altruism_weights", "game.cost_weights",
    "game.play_rates",     "solve.scan_points",     "solve.damping",
    "solve.max_iters",     "solve.multistart",      "solve.q0",
    "flow.step",           "flow.max_time",         "flow.tol",
    "flow.sample_stride",  "flow.method",           "basins.grid",
    "basins.attribution",  "basins.workers",        "sim.q",
    "sim.slots",           "seed",                  "stability.q",
};

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

void flatten_json(const nlohmann::json& node, const std::string& prefix,
                  std::map<std::string, std::string>& out) {
  if (node.is_object()) {
    for (const auto& [key, value] : node.items()) {
      flatten_json(value, prefix.empty() ? key : prefix + "." + key, out);
    }
    return;
  }
  if (node.is_array()) {
    std::string joined;
    for (std::size_t i = 0; i < node.size(); ++i) {
      if (i > 0) joined += ",";
      joined += node[i].dump();
    }
    out[prefix] = joined;
    return;
  }
  if (node.is_string())
    out[prefix] = node.get<std::string>();
  else
    out[prefix] = node.dump();
}

double parse_double(const std::string& key, const std::string& value) {
  try {
    std::size_t used = 0;
    const double v = std::stod(value, &used);
    if (trim(value.substr(used)).empty()) return v;
  } catch (const std::exception&) {
  }
  throw ConfigError("config key '" + key + "': expected a number, got '" + value + "'");
}

long parse_long(const std::string& key, const std::string& value) {
  const double v = parse_double(key, value);
  const long out = static_cast<long>(v);
  if (static_cast<double>(out) != v)
    throw ConfigError("config key '" + key + "': expected an integer, got '" + value + "'");
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  throw ConfigError("config key '" + key + "': expected true/false, got '" + value + "'");
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
  std::vector<double> out;
  std::string token;
  std::istringstream in(value);
  while (std::getline(in, token, ',')) {
    token = trim(token);
    if (token.empty())
      throw ConfigError("config key '" + key + "': empty list element");
    out.push_back(parse_double(key, token));
  }
  if (out.empty()) throw ConfigError("config key '" + key + "': empty list");
  return out;
}

UtilityKind parse_variant(const std::string& value) {
  if (value == "power_log") return UtilityKind::PowerLog;
  if (value == "throughput_log") return UtilityKind::ThroughputLog;
  if (value == "power_proportional") return UtilityKind::PowerProportional;
  throw ConfigError("unknown game.variant '" + value +
                    "' (expected power_log, throughput_log or power_proportional)");
}

class KeyView {
 public:
  explicit KeyView(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

  bool has(const std::string& key) const { return kv_.count(key) > 0; }
  const std::string& raw(const std::string& key) const { return kv_.at(key); }

  double number(const std::string& key) const { return parse_double(key, kv_.at(key)); }
  long integer(const std::string& key) const { return parse_long(key, kv_.at(key)); }
  bool boolean(const std::string& key) const { return parse_bool(key, kv_.at(key)); }
  std::vector<double> list(const std::string& key) const {
    return parse_list(key, kv_.at(key));
  }

 private:
  std::map<std::string, std::string> kv_;
};

// Expand a scalar-or-list value to a per-player vector.
std::vector<double> per_player(const KeyView& view, const std::string& key, std::size_t n) {
  std::vector<double> values = view.list(key);
  if (values.size() == 1) return std::vector<double>(n, values.front());
  if (values.size() != n)
    throw ConfigError("config key '" + key + "': expected 1 or " + std::to_string(n) +
                      " values");
  return values;
}

RunConfig build(const std::map<std::string, std::string>& kv) {
  for (const auto& [key, value] : kv) {
    (void)value;
    if (!kKnownKeys.count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  KeyView view(kv);
  RunConfig cfg;

  if (!view.has("game.variant")) throw ConfigError("missing config key 'game.variant'");
  cfg.variant.kind = parse_variant(view.raw("game.variant"));
  if (view.has("game.altruism")) {
    const std::string& mode = view.raw("game.altruism");
    if (mode == "dynamic")
      cfg.variant.altruism = AltruismMode::Dynamic;
    else if (mode == "static")
      cfg.variant.altruism = AltruismMode::Static;
    else
      throw ConfigError("unknown game.altruism '" + mode + "'");
  }

  const bool normalized = view.has("game.c") || view.has("game.a");
  const bool raw = view.has("game.utility_weights") || view.has("game.altruism_weights") ||
                   view.has("game.cost_weights");
  if (normalized && raw)
    throw ConfigError("normalized (game.c/game.a) and raw (game.*_weights) parameter "
                      "forms are mutually exclusive");
  if (!normalized && !raw)
    throw ConfigError("missing player parameters: provide game.c/game.a or game.*_weights");

  if (normalized) {
    if (!view.has("game.n")) throw ConfigError("missing config key 'game.n'");
    const long n = view.integer("game.n");
    if (n < 2) throw ConfigError("game.n must be at least 2");
    cfg.n = static_cast<std::size_t>(n);
    if (!view.has("game.c")) throw ConfigError("missing config key 'game.c'");
    cfg.utility_weights = per_player(view, "game.c", cfg.n);
    cfg.altruism_weights = view.has("game.a") ? per_player(view, "game.a", cfg.n)
                                              : std::vector<double>(cfg.n, 0.0);
    cfg.cost_weights.assign(cfg.n, 1.0);
  } else {
    if (!view.has("game.utility_weights"))
      throw ConfigError("missing config key 'game.utility_weights'");
    cfg.utility_weights = view.list("game.utility_weights");
    cfg.n = cfg.utility_weights.size();
    if (view.has("game.n") &&
        static_cast<std::size_t>(view.integer("game.n")) != cfg.n)
      throw ConfigError("game.n disagrees with the weight list length");
    if (cfg.n < 2) throw ConfigError("at least two players required");
    cfg.altruism_weights = view.has("game.altruism_weights")
                               ? per_player(view, "game.altruism_weights", cfg.n)
                               : std::vector<double>(cfg.n, 0.0);
    cfg.cost_weights = view.has("game.cost_weights")
                           ? per_player(view, "game.cost_weights", cfg.n)
                           : std::vector<double>(cfg.n, 1.0);
  }
  cfg.play_rates = view.has("game.r") ? per_player(view, "game.r", cfg.n)
                    : view.has("game.play_rates")
                        ? per_player(view, "game.play_rates", cfg.n)
                        : std::vector<double>(cfg.n, 1.0);

  if (view.has("solve.scan_points"))
    cfg.scan_points = static_cast<int>(view.integer("solve.scan_points"));
  if (view.has("solve.damping")) cfg.damping = view.number("solve.damping");
  if (view.has("solve.max_iters"))
    cfg.max_iters = static_cast<int>(view.integer("solve.max_iters"));
  if (view.has("solve.multistart")) cfg.multistart = view.boolean("solve.multistart");
  if (view.has("solve.q0")) cfg.q0 = per_player(view, "solve.q0", cfg.n);

  if (view.has("flow.step")) cfg.flow.step = view.number("flow.step");
  if (view.has("flow.max_time")) cfg.flow.max_time = view.number("flow.max_time");
  if (view.has("flow.tol")) cfg.flow.convergence_tol = view.number("flow.tol");
  if (view.has("flow.sample_stride"))
    cfg.flow.sample_stride = static_cast<std::size_t>(view.integer("flow.sample_stride"));
  if (view.has("flow.method")) {
    const std::string& m = view.raw("flow.method");
    if (m == "rk4")
      cfg.method = StepMethod::RungeKutta4;
    else if (m == "euler")
      cfg.method = StepMethod::BetterResponseEuler;
    else
      throw ConfigError("unknown flow.method '" + m + "' (expected rk4 or euler)");
  }

  if (view.has("basins.grid")) cfg.grid_per_dim = static_cast<int>(view.integer("basins.grid"));
  if (view.has("basins.attribution")) {
    const std::string& a = view.raw("basins.attribution");
    if (a == "strict")
      cfg.attribution = BasinAttribution::Strict;
    else if (a == "nearest")
      cfg.attribution = BasinAttribution::Nearest;
    else
      throw ConfigError("unknown basins.attribution '" + a + "'");
  }
  if (view.has("basins.workers"))
    cfg.workers = static_cast<int>(view.integer("basins.workers"));

  if (view.has("sim.q")) cfg.sim_q = per_player(view, "sim.q", cfg.n);
  if (view.has("sim.slots")) cfg.slots = view.integer("sim.slots");
  if (view.has("seed")) cfg.seed = static_cast<std::uint64_t>(view.integer("seed"));
  if (view.has("stability.q")) cfg.stability_q = per_player(view, "stability.q", cfg.n);

  return cfg;
}

}  // namespace

GameSpec RunConfig::to_game() const {
  GameSpec spec;
  spec.variant = variant;
  spec.players.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    spec.players[i].C = utility_weights[i];
    spec.players[i].A = altruism_weights[i];
    spec.players[i].M = cost_weights[i];
    spec.players[i].r = play_rates[i];
  }
  spec.validate();
  return spec;
}

std::map<std::string, std::string> flatten_config_text(const std::string& text) {
  std::map<std::string, std::string> kv;
  const std::string body = trim(text);
  if (!body.empty() && body.front() == '{') {
    nlohmann::json parsed;
    try {
      parsed = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error& err) {
      throw ConfigError(std::string("invalid JSON config: ") + err.what());
    }
    if (!parsed.is_object()) throw ConfigError("JSON config must be an object");
    flatten_json(parsed, "", kv);
    return kv;
  }

  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw ConfigError("config line " + std::to_string(lineno) + ": empty key or value");
    if (kv.count(key))
      throw ConfigError("config line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    kv[key] = value;
  }
  return kv;
}

RunConfig parse_config_text(const std::string& text) {
  return build(flatten_config_text(text));
}

RunConfig parse_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str());
}

}  // namespace aloha

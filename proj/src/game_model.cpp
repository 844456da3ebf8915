#include "aloha/game_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace aloha {

namespace {

void require_profile(const StrategyProfile& q) {
  if (q.size() < 2) throw DomainError("profile needs at least two players");
  if (q.size() > kMaxPlayers) throw DomainError("too many players");
  for (double v : q) {
    if (!(v >= 0.0 && v <= 1.0)) throw DomainError("transmission probability outside [0, 1]");
  }
}

void require_index(const StrategyProfile& q, std::size_t i) {
  if (i >= q.size()) throw std::out_of_range("player index out of range");
}

void require_game(const GameSpec& spec, const StrategyProfile& q) {
  if (spec.player_count() != q.size())
    throw DomainError("profile size does not match the player list");
}

void require_interior(const StrategyProfile& q) {
  for (double v : q) {
    if (!(v > 0.0 && v < 1.0)) throw DomainError("profile not interior");
  }
}

// prod_{k != i, k != l} (1 - q_k); pass l == i for a single exclusion.
double others_product(const StrategyProfile& q, std::size_t i, std::size_t l) {
  double p = 1.0;
  for (std::size_t k = 0; k < q.size(); ++k) {
    if (k == i || k == l) continue;
    p *= 1.0 - q[k];
  }
  return p;
}

}  // namespace

void PlayerParams::validate() const {
  if (!(C > 0.0)) throw DomainError("utility weight C must be positive");
  if (!(A >= 0.0)) throw DomainError("altruism weight A must be non-negative");
  if (!(M > 0.0)) throw DomainError("cost weight M must be positive");
  if (!(r > 0.0)) throw DomainError("play rate r must be positive");
}

bool GameSpec::uniform_utility_weights() const {
  for (const auto& p : players) {
    if (p.C != players.front().C || p.A != players.front().A) return false;
  }
  return true;
}

bool GameSpec::identical_players() const {
  for (const auto& p : players) {
    const auto& f = players.front();
    if (p.C != f.C || p.A != f.A || p.M != f.M || p.r != f.r) return false;
  }
  return true;
}

void GameSpec::validate() const {
  if (players.size() < 2) throw DomainError("a game needs at least two players");
  if (players.size() > kMaxPlayers) throw DomainError("too many players");
  for (const auto& p : players) p.validate();
}

GameSpec GameSpec::identical(std::size_t n, double c, double a, UtilityVariant v,
                             double m, double rate) {
  GameSpec spec;
  spec.variant = v;
  spec.players.assign(n, PlayerParams{c * m, a * m, m, rate});
  spec.validate();
  return spec;
}

std::string to_string(UtilityKind kind) {
  switch (kind) {
    case UtilityKind::PowerLog: return "power_log";
    case UtilityKind::ThroughputLog: return "throughput_log";
    case UtilityKind::PowerProportional: return "power_proportional";
  }
  return "?";
}

std::string to_string(AltruismMode mode) {
  return mode == AltruismMode::Dynamic ? "dynamic" : "static";
}

std::string to_string(StabilityClass cls) {
  switch (cls) {
    case StabilityClass::Stable: return "stable";
    case StabilityClass::Unstable: return "unstable";
    case StabilityClass::Inconclusive: return "inconclusive";
  }
  return "?";
}

double clamp_probability(double q) {
  return std::clamp(q, kClampEpsilon, 1.0 - kClampEpsilon);
}

StrategyProfile clamped_profile(StrategyProfile q) {
  for (double& v : q) v = clamp_probability(v);
  return q;
}

double throughput(const StrategyProfile& q, std::size_t i) {
  require_profile(q);
  require_index(q, i);
  return q[i] * others_product(q, i, i);
}

double altruism_factor(const StrategyProfile& q, std::size_t i) {
  require_profile(q);
  require_index(q, i);
  return others_product(q, i, i);
}

double idle_time(const StrategyProfile& q) {
  require_profile(q);
  double p = 1.0;
  for (double v : q) p *= 1.0 - v;
  return p;
}

double mean_others_throughput(const StrategyProfile& q, std::size_t i) {
  require_profile(q);
  require_index(q, i);
  double sum = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (j == i) continue;
    sum += q[j] * others_product(q, j, j);
  }
  return sum / static_cast<double>(q.size() - 1);
}

double mean_others_sensitivity(const StrategyProfile& q, std::size_t i) {
  require_profile(q);
  require_index(q, i);
  double sum = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    if (j == i) continue;
    sum += q[j] * others_product(q, i, j);
  }
  return sum / static_cast<double>(q.size() - 1);
}

double net_utility(const GameSpec& spec, const StrategyProfile& q, std::size_t i) {
  require_game(spec, q);
  require_profile(q);
  require_index(q, i);
  const PlayerParams& p = spec.players[i];
  const double gamma = q[i] * others_product(q, i, i);
  const double alpha =
      spec.variant.altruism == AltruismMode::Dynamic ? others_product(q, i, i) : 1.0;
  const double gbar = mean_others_throughput(q, i);
  switch (spec.variant.kind) {
    case UtilityKind::PowerLog:
      if (!(gamma > 0.0)) throw DomainError("log utility undefined at zero throughput");
      return p.C * std::log(gamma) + p.A * alpha * gbar - p.M * q[i];
    case UtilityKind::ThroughputLog:
      if (!(gamma > 0.0)) throw DomainError("log utility undefined at zero throughput");
      return p.C * std::log(gamma) + p.A * alpha * gbar - p.M * gamma;
    case UtilityKind::PowerProportional:
      return p.C * gamma + p.A * alpha * gbar - p.M * q[i];
  }
  throw DomainError("unknown utility variant");
}

double utility_gradient(const GameSpec& spec, const StrategyProfile& q, std::size_t i) {
  require_game(spec, q);
  require_profile(q);
  require_index(q, i);
  const PlayerParams& p = spec.players[i];
  const double alpha = others_product(q, i, i);
  const double alpha_term =
      spec.variant.altruism == AltruismMode::Dynamic ? alpha : 1.0;
  const double s = mean_others_sensitivity(q, i);
  switch (spec.variant.kind) {
    case UtilityKind::PowerLog:
      if (!(q[i] > 0.0)) throw DomainError("gradient undefined at q_i = 0 for log utility");
      return p.C / q[i] - p.A * alpha_term * s - p.M;
    case UtilityKind::ThroughputLog:
      if (!(q[i] > 0.0)) throw DomainError("gradient undefined at q_i = 0 for log utility");
      return p.C / q[i] - p.A * alpha_term * s - p.M * alpha;
    case UtilityKind::PowerProportional:
      return p.C * alpha - p.A * alpha_term * s - p.M;
  }
  throw DomainError("unknown utility variant");
}

double utility_hessian_cross(const GameSpec& spec, const StrategyProfile& q,
                             std::size_t i, std::size_t l) {
  require_game(spec, q);
  require_profile(q);
  require_index(q, i);
  require_index(q, l);
  require_interior(q);
  const PlayerParams& p = spec.players[i];

  if (i == l) {
    switch (spec.variant.kind) {
      case UtilityKind::PowerLog:
      case UtilityKind::ThroughputLog:
        return -p.C / (q[i] * q[i]);
      case UtilityKind::PowerProportional:
        return 0.0;
    }
    throw DomainError("unknown utility variant");
  }

  const std::size_t n = q.size();
  const double p_il = others_product(q, i, l);
  const double s = mean_others_sensitivity(q, i);
  // d S_i / d q_l: the j = l summand gains, every other summand loses its
  // (1 - q_l) factor.
  double cross_sum = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == i || j == l) continue;
    double prod = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k == i || k == j || k == l) continue;
      prod *= 1.0 - q[k];
    }
    cross_sum += q[j] * prod;
  }
  const double ds_il = (p_il - cross_sum) / static_cast<double>(n - 1);

  const double alpha = others_product(q, i, i);
  const double a_part = spec.variant.altruism == AltruismMode::Dynamic
                            ? p.A * (p_il * s - alpha * ds_il)
                            : -p.A * ds_il;
  switch (spec.variant.kind) {
    case UtilityKind::PowerLog:
      return a_part;
    case UtilityKind::ThroughputLog:
      return a_part + p.M * p_il;
    case UtilityKind::PowerProportional:
      return a_part - p.C * p_il;
  }
  throw DomainError("unknown utility variant");
}

}  // namespace aloha

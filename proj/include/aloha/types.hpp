#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace aloha {

/// Clamp constant for log-variant evaluation and for all dynamics.
/// Keeps trajectories off the deadlock/opt-out boundary and log arguments
/// strictly positive.
inline constexpr double kClampEpsilon = 1e-6;

/// Largest supported player count; products over players are formed directly.
inline constexpr std::size_t kMaxPlayers = 64;

/// Vector of per-slot transmission probabilities, one entry per player.
/// Player indices are 0-based throughout the library.
using StrategyProfile = std::vector<double>;

struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NoRootError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct HeterogeneousPlayersError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonSymmetricMatrixError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by iterative solvers; carries the last iterate for diagnostics.
struct NotConvergedError : std::runtime_error {
  NotConvergedError(const std::string& what, StrategyProfile last,
                    double residual_value, long iteration_count)
      : std::runtime_error(what),
        last_iterate(std::move(last)),
        residual(residual_value),
        iterations(iteration_count) {}

  StrategyProfile last_iterate;
  double residual = 0.0;
  long iterations = 0;
};

/// Per-player utility parameters. The normalized forms c = C/M and a = A/M
/// are derived, never stored.
struct PlayerParams {
  double C = 1.0;  ///< own-utility weight, > 0
  double A = 0.0;  ///< altruism weight, >= 0
  double M = 1.0;  ///< cost weight, > 0
  double r = 1.0;  ///< play-rate multiplier, > 0

  double c() const { return C / M; }
  double a() const { return A / M; }

  void validate() const;
};

enum class UtilityKind {
  PowerLog,           ///< log utility of throughput, power based cost (M q)
  ThroughputLog,      ///< log utility of throughput, throughput based cost (M gamma)
  PowerProportional,  ///< utility proportional to throughput, power based cost
};

enum class AltruismMode {
  Dynamic,  ///< altruism factor alpha_i = prod_{j != i} (1 - q_j)
  Static,   ///< altruism factor replaced by the constant 1
};

struct UtilityVariant {
  UtilityKind kind = UtilityKind::PowerLog;
  AltruismMode altruism = AltruismMode::Dynamic;

  bool uses_log() const { return kind != UtilityKind::PowerProportional; }
};

/// Full game definition: player list plus utility variant.
struct GameSpec {
  std::vector<PlayerParams> players;
  UtilityVariant variant;

  std::size_t player_count() const { return players.size(); }

  /// True when all players share the same C and A (the scope of the
  /// closed-form stability bound).
  bool uniform_utility_weights() const;

  /// True when all players share C, A, M and r.
  bool identical_players() const;

  void validate() const;

  static GameSpec identical(std::size_t n, double c, double a, UtilityVariant v,
                            double m = 1.0, double rate = 1.0);
};

enum class StabilityClass { Stable, Unstable, Inconclusive };

std::string to_string(UtilityKind kind);
std::string to_string(AltruismMode mode);
std::string to_string(StabilityClass cls);

/// Clamp a probability to [kClampEpsilon, 1 - kClampEpsilon].
double clamp_probability(double q);

/// Component-wise clamp of a profile.
StrategyProfile clamped_profile(StrategyProfile q);

}  // namespace aloha

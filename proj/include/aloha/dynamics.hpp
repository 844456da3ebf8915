#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "aloha/types.hpp"

namespace aloha {

struct FlowConfig {
  double step = 0.01;              ///< integration step, > 0
  double max_time = 1e4;           ///< > step
  double convergence_tol = 1e-8;   ///< on the infinity-norm of the field
  double nep_match_tol = 1e-3;     ///< L-infinity proximity for NEP matching
  int boundary_patience = 100;     ///< consecutive clamped steps before Boundary
  std::size_t sample_stride = 0;   ///< record every k-th state; 0 = terminal only

  void validate() const;
};

/// Rate-scaled better-response vector field: (r_i * dV_i/dq_i)_i.
std::vector<double> flow_field(const GameSpec& spec, const StrategyProfile& q);

enum class TerminalKind { Converged, MaxTimeReached, Boundary };

enum class StepMethod {
  RungeKutta4,          ///< classical fixed-step 4th order
  BetterResponseEuler,  ///< discrete better-response step q += h * field
};

struct TrajectoryRecord {
  std::vector<double> times;
  std::vector<StrategyProfile> samples;
  StrategyProfile terminal;
  double terminal_time = 0.0;
  double terminal_field_norm = 0.0;
  TerminalKind kind = TerminalKind::MaxTimeReached;
  std::optional<std::size_t> nep_index;  ///< matched NEP when Converged
  long steps = 0;
};

/// Integrate the flow from q0 with post-step clamping to [eps, 1-eps]^N.
/// Terminates when the field's infinity-norm drops under convergence_tol
/// (Converged; matched to the nearest profile in `neps` within nep_match_tol),
/// after boundary_patience consecutive clamped steps (Boundary), or at
/// max_time (MaxTimeReached).
TrajectoryRecord integrate(const GameSpec& spec, const StrategyProfile& q0,
                           const FlowConfig& cfg,
                           const std::vector<StrategyProfile>& neps,
                           StepMethod method = StepMethod::RungeKutta4);

enum class BasinAttribution {
  Strict,   ///< converged-and-matched seeds only; the rest is unconverged
  Nearest,  ///< every terminal point attributed to the nearest NEP
};

struct SeedOutcome {
  TerminalKind kind = TerminalKind::MaxTimeReached;
  StrategyProfile terminal;
  std::optional<std::size_t> matched;
};

struct BasinReport {
  std::vector<StrategyProfile> neps;
  std::vector<double> volume_fraction;  ///< per NEP, converged / total
  double unconverged_fraction = 0.0;
  int grid_per_dim = 0;
  std::int64_t total_seeds = 0;
  std::vector<std::int64_t> counts;
  std::int64_t unconverged_count = 0;
  BasinAttribution attribution = BasinAttribution::Strict;
};

/// Integrate one trajectory per seed of the uniform grid over [0.02, 0.98]^N
/// (grid_per_dim points per axis). Work is distributed over `workers` threads
/// with a deterministic seed-to-worker mapping, so results do not depend on
/// the worker count (workers = 0 uses the hardware concurrency).
std::vector<SeedOutcome> basin_scan(const GameSpec& spec,
                                    const std::vector<StrategyProfile>& neps,
                                    int grid_per_dim, const FlowConfig& cfg,
                                    int workers = 0,
                                    StepMethod method = StepMethod::RungeKutta4);

/// Turn scan outcomes into volume fractions under the chosen attribution.
BasinReport summarize_basins(const std::vector<SeedOutcome>& outcomes,
                             const std::vector<StrategyProfile>& neps,
                             int grid_per_dim, BasinAttribution attribution);

/// basin_scan + summarize_basins.
BasinReport estimate_basins(const GameSpec& spec,
                            const std::vector<StrategyProfile>& neps,
                            int grid_per_dim, const FlowConfig& cfg,
                            BasinAttribution attribution = BasinAttribution::Strict,
                            int workers = 0,
                            StepMethod method = StepMethod::RungeKutta4);

}  // namespace aloha

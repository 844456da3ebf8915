#include "aloha/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "aloha/game_model.hpp"

namespace aloha {

namespace {

double linf_distance(const StrategyProfile& x, const StrategyProfile& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) d = std::max(d, std::abs(x[i] - y[i]));
  return d;
}

double linf_norm(const std::vector<double>& v) {
  double d = 0.0;
  for (double x : v) d = std::max(d, std::abs(x));
  return d;
}

std::optional<std::size_t> match_nep(const StrategyProfile& q,
                                     const std::vector<StrategyProfile>& neps,
                                     double tol) {
  std::optional<std::size_t> best;
  double best_dist = tol;
  for (std::size_t j = 0; j < neps.size(); ++j) {
    const double d = linf_distance(q, neps[j]);
    if (d <= best_dist) {
      best_dist = d;
      best = j;
    }
  }
  return best;
}

std::size_t nearest_nep(const StrategyProfile& q, const std::vector<StrategyProfile>& neps) {
  std::size_t best = 0;
  double best_dist = linf_distance(q, neps[0]);
  for (std::size_t j = 1; j < neps.size(); ++j) {
    const double d = linf_distance(q, neps[j]);
    if (d < best_dist) {
      best_dist = d;
      best = j;
    }
  }
  return best;
}

}  // namespace

void FlowConfig::validate() const {
  if (!(step > 0.0)) throw DomainError("flow step must be positive");
  if (!(max_time > step)) throw DomainError("max_time must exceed the step");
  if (!(convergence_tol > 0.0)) throw DomainError("convergence tolerance must be positive");
  if (boundary_patience < 1) throw DomainError("boundary patience must be at least 1");
}

std::vector<double> flow_field(const GameSpec& spec, const StrategyProfile& q) {
  spec.validate();
  std::vector<double> field(q.size());
  for (std::size_t i = 0; i < q.size(); ++i)
    field[i] = spec.players[i].r * utility_gradient(spec, q, i);
  return field;
}

TrajectoryRecord integrate(const GameSpec& spec, const StrategyProfile& q0,
                           const FlowConfig& cfg, const std::vector<StrategyProfile>& neps,
                           StepMethod method) {
  spec.validate();
  cfg.validate();
  const std::size_t n = q0.size();

  TrajectoryRecord rec;
  StrategyProfile q = clamped_profile(q0);
  const double h = cfg.step;

  auto record_sample = [&](double t) {
    if (cfg.sample_stride == 0) return;
    rec.times.push_back(t);
    rec.samples.push_back(q);
  };

  // Scratch buffers for the four stages.
  std::vector<double> k1, k2, k3, k4;
  StrategyProfile stage(n);

  double t = 0.0;
  int clamp_streak = 0;
  record_sample(t);
  for (;;) {
    k1 = flow_field(spec, q);
    const double field_norm = linf_norm(k1);
    if (field_norm < cfg.convergence_tol) {
      rec.kind = TerminalKind::Converged;
      rec.nep_index = match_nep(q, neps, cfg.nep_match_tol);
      rec.terminal_field_norm = field_norm;
      break;
    }
    if (t >= cfg.max_time) {
      rec.kind = TerminalKind::MaxTimeReached;
      rec.terminal_field_norm = field_norm;
      break;
    }

    bool clamped_now = false;
    if (method == StepMethod::RungeKutta4) {
      for (std::size_t i = 0; i < n; ++i)
        stage[i] = clamp_probability(q[i] + 0.5 * h * k1[i]);
      k2 = flow_field(spec, stage);
      for (std::size_t i = 0; i < n; ++i)
        stage[i] = clamp_probability(q[i] + 0.5 * h * k2[i]);
      k3 = flow_field(spec, stage);
      for (std::size_t i = 0; i < n; ++i)
        stage[i] = clamp_probability(q[i] + h * k3[i]);
      k4 = flow_field(spec, stage);
      for (std::size_t i = 0; i < n; ++i) {
        const double next =
            q[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        const double clamped = clamp_probability(next);
        if (clamped != next) clamped_now = true;
        q[i] = clamped;
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        const double next = q[i] + h * k1[i];
        const double clamped = clamp_probability(next);
        if (clamped != next) clamped_now = true;
        q[i] = clamped;
      }
    }

    clamp_streak = clamped_now ? clamp_streak + 1 : 0;
    t += h;
    ++rec.steps;
    if (cfg.sample_stride > 0 && rec.steps % static_cast<long>(cfg.sample_stride) == 0)
      record_sample(t);

    if (clamp_streak >= cfg.boundary_patience) {
      rec.kind = TerminalKind::Boundary;
      rec.terminal_field_norm = linf_norm(flow_field(spec, q));
      break;
    }
  }

  rec.terminal = q;
  rec.terminal_time = t;
  if (cfg.sample_stride > 0 && (rec.times.empty() || rec.times.back() != t))
    record_sample(t);
  return rec;
}

std::vector<SeedOutcome> basin_scan(const GameSpec& spec,
                                    const std::vector<StrategyProfile>& neps,
                                    int grid_per_dim, const FlowConfig& cfg, int workers,
                                    StepMethod method) {
  spec.validate();
  cfg.validate();
  if (grid_per_dim < 3) throw DomainError("basin grid needs at least 3 points per dimension");
  const std::size_t n = spec.player_count();

  double total_d = 1.0;
  for (std::size_t i = 0; i < n; ++i) total_d *= static_cast<double>(grid_per_dim);
  if (total_d > 4e6) throw DomainError("basin grid too large");
  const std::int64_t total = static_cast<std::int64_t>(total_d);

  std::vector<double> axis(static_cast<std::size_t>(grid_per_dim));
  for (int k = 0; k < grid_per_dim; ++k)
    axis[static_cast<std::size_t>(k)] =
        0.02 + 0.96 * static_cast<double>(k) / static_cast<double>(grid_per_dim - 1);

  // No on-the-fly sampling inside basin scans.
  FlowConfig scan_cfg = cfg;
  scan_cfg.sample_stride = 0;

  std::vector<SeedOutcome> outcomes(static_cast<std::size_t>(total));
  int nworkers = workers > 0 ? workers
                             : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  nworkers = std::min<int>(nworkers, 64);

  auto run_range = [&](int worker) {
    StrategyProfile seed(n);
    for (std::int64_t idx = worker; idx < total; idx += nworkers) {
      std::int64_t rem = idx;
      for (std::size_t i = 0; i < n; ++i) {
        seed[i] = axis[static_cast<std::size_t>(rem % grid_per_dim)];
        rem /= grid_per_dim;
      }
      TrajectoryRecord rec = integrate(spec, seed, scan_cfg, neps, method);
      SeedOutcome& out = outcomes[static_cast<std::size_t>(idx)];
      out.kind = rec.kind;
      out.terminal = std::move(rec.terminal);
      out.matched = rec.kind == TerminalKind::Converged ? rec.nep_index : std::nullopt;
    }
  };

  if (nworkers == 1) {
    run_range(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(nworkers));
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(run_range, w);
    for (auto& th : pool) th.join();
  }
  return outcomes;
}

BasinReport summarize_basins(const std::vector<SeedOutcome>& outcomes,
                             const std::vector<StrategyProfile>& neps, int grid_per_dim,
                             BasinAttribution attribution) {
  BasinReport report;
  report.neps = neps;
  report.grid_per_dim = grid_per_dim;
  report.total_seeds = static_cast<std::int64_t>(outcomes.size());
  report.attribution = attribution;
  report.counts.assign(neps.size(), 0);
  for (const SeedOutcome& out : outcomes) {
    if (attribution == BasinAttribution::Strict) {
      if (out.kind == TerminalKind::Converged && out.matched.has_value())
        ++report.counts[*out.matched];
      else
        ++report.unconverged_count;
    } else {
      if (neps.empty())
        ++report.unconverged_count;
      else
        ++report.counts[nearest_nep(out.terminal, neps)];
    }
  }
  report.volume_fraction.resize(neps.size());
  for (std::size_t j = 0; j < neps.size(); ++j)
    report.volume_fraction[j] = static_cast<double>(report.counts[j]) /
                                static_cast<double>(report.total_seeds);
  report.unconverged_fraction = static_cast<double>(report.unconverged_count) /
                                static_cast<double>(report.total_seeds);
  return report;
}

BasinReport estimate_basins(const GameSpec& spec, const std::vector<StrategyProfile>& neps,
                            int grid_per_dim, const FlowConfig& cfg,
                            BasinAttribution attribution, int workers,
                            StepMethod method) {
  return summarize_basins(basin_scan(spec, neps, grid_per_dim, cfg, workers, method),
                          neps, grid_per_dim, attribution);
}

}  // namespace aloha

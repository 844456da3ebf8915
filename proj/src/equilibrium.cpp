#include "aloha/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "aloha/game_model.hpp"
#include "aloha/stability.hpp"

namespace aloha {

namespace {

double ipow(double x, int e) {
  double out = 1.0;
  for (int k = 0; k < e; ++k) out *= x;
  return out;
}

double max_abs_gradient(const GameSpec& spec, const StrategyProfile& q) {
  double worst = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    worst = std::max(worst, std::abs(utility_gradient(spec, q, i)));
  return worst;
}

// Bisection on a bracket with a strict sign change; returns the midpoint of
// the final interval.
template <typename F>
double bisect(const F& f, double lo, double hi, double flo) {
  for (int it = 0; it < 80 && hi - lo > 1e-13; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

void SymmetricCondition::validate() const {
  if (n < 2) throw DomainError("condition needs at least two players");
  if (!(c > 0.0)) throw DomainError("normalized utility weight c must be positive");
  if (!(a >= 0.0)) throw DomainError("normalized altruism weight a must be non-negative");
}

double symmetric_condition_eval(const SymmetricCondition& cond, double q) {
  cond.validate();
  const int n = cond.n;
  const int alt_exp =
      cond.variant.altruism == AltruismMode::Dynamic ? 2 * n - 3 : n - 2;
  const double one_m = 1.0 - q;
  switch (cond.variant.kind) {
    case UtilityKind::PowerLog:
      return cond.a * q * q * ipow(one_m, alt_exp) + q - cond.c;
    case UtilityKind::ThroughputLog:
      return cond.a * q * q * ipow(one_m, alt_exp) + q * ipow(one_m, n - 1) - cond.c;
    case UtilityKind::PowerProportional:
      return cond.c * ipow(one_m, n - 1) - cond.a * q * ipow(one_m, alt_exp) - 1.0;
  }
  throw DomainError("unknown utility variant");
}

GameSpec condition_game(const SymmetricCondition& cond, double rate) {
  cond.validate();
  return GameSpec::identical(static_cast<std::size_t>(cond.n), cond.c, cond.a,
                             cond.variant, 1.0, rate);
}

NepResult make_nep_result(const GameSpec& spec, StrategyProfile q, NepKind kind) {
  NepResult out;
  out.kind = kind;
  out.q_star = std::move(q);
  out.residual = max_abs_gradient(spec, out.q_star);
  const std::size_t n = out.q_star.size();
  out.throughputs.resize(n);
  out.normalized_utilities.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.throughputs[i] = throughput(out.q_star, i);
    out.normalized_utilities[i] = net_utility(spec, out.q_star, i) / spec.players[i].M;
  }
  out.stability = classify_profile(spec, out.q_star);
  return out;
}

std::vector<double> find_symmetric_roots(const SymmetricCondition& cond, int scan_points) {
  cond.validate();
  if (scan_points < 100) throw DomainError("scan needs at least 100 points");

  const auto f = [&cond](double q) { return symmetric_condition_eval(cond, q); };
  const double lo = kClampEpsilon;
  const double hi = 1.0 - kClampEpsilon;

  std::vector<double> roots;
  double prev_q = lo;
  double prev_f = f(lo);
  if (prev_f == 0.0) roots.push_back(lo);
  for (int k = 1; k < scan_points; ++k) {
    const double qk = lo + (hi - lo) * static_cast<double>(k) /
                               static_cast<double>(scan_points - 1);
    const double fk = f(qk);
    if (fk == 0.0) {
      roots.push_back(qk);
    } else if (prev_f != 0.0 && (fk < 0.0) != (prev_f < 0.0)) {
      roots.push_back(bisect(f, prev_q, qk, prev_f));
    }
    prev_q = qk;
    prev_f = fk;
  }

  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(),
                          [](double x, double y) { return std::abs(x - y) < 1e-12; }),
              roots.end());
  if (roots.empty()) {
    std::ostringstream msg;
    msg << "no interior root: no sign change of the symmetric condition on the scan "
           "grid (n=" << cond.n << ", a=" << cond.a << ", c=" << cond.c << ")";
    throw NoRootError(msg.str());
  }
  return roots;
}

std::vector<NepResult> find_symmetric_neps(const SymmetricCondition& cond, int scan_points) {
  const auto roots = find_symmetric_roots(cond, scan_points);
  const GameSpec spec = condition_game(cond);
  std::vector<NepResult> out;
  out.reserve(roots.size());
  for (double root : roots) {
    out.push_back(make_nep_result(
        spec, StrategyProfile(static_cast<std::size_t>(cond.n), root), NepKind::Symmetric));
  }
  return out;
}

ExistenceReport symmetric_existence_report(const SymmetricCondition& cond, int scan_points) {
  cond.validate();
  if (scan_points < 100) throw DomainError("scan needs at least 100 points");

  ExistenceReport rep;
  rep.endpoint_low = symmetric_condition_eval(cond, 0.0);
  rep.endpoint_high = symmetric_condition_eval(cond, 1.0);

  rep.condition_max = rep.endpoint_low;
  rep.argmax_q = 0.0;
  rep.condition_min = rep.endpoint_low;
  rep.argmin_q = 0.0;
  for (int k = 0; k <= scan_points; ++k) {
    const double q = static_cast<double>(k) / static_cast<double>(scan_points);
    const double v = symmetric_condition_eval(cond, q);
    if (v > rep.condition_max) {
      rep.condition_max = v;
      rep.argmax_q = q;
    }
    if (v < rep.condition_min) {
      rep.condition_min = v;
      rep.argmin_q = q;
    }
  }

  switch (cond.variant.kind) {
    case UtilityKind::PowerLog:
      rep.guaranteed_existence = cond.c < 1.0;
      break;
    case UtilityKind::ThroughputLog:
      rep.guaranteed_existence = rep.condition_max >= 0.0;
      break;
    case UtilityKind::PowerProportional:
      rep.guaranteed_existence = cond.c > 1.0;
      break;
  }

  const bool both_negative = rep.endpoint_low < 0.0 && rep.endpoint_high < 0.0;
  const bool both_positive = rep.endpoint_low > 0.0 && rep.endpoint_high > 0.0;
  if (both_negative)
    rep.parity_even_expected = rep.condition_max > 0.0;
  else if (both_positive)
    rep.parity_even_expected = rep.condition_min < 0.0;
  else
    rep.parity_even_expected = false;
  return rep;
}

double best_response(const GameSpec& spec, const StrategyProfile& q, std::size_t i) {
  spec.validate();
  if (i >= q.size()) throw std::out_of_range("player index out of range");
  const PlayerParams& p = spec.players[i];
  const double alpha = altruism_factor(q, i);
  const double alpha_term =
      spec.variant.altruism == AltruismMode::Dynamic ? alpha : 1.0;
  const double s = mean_others_sensitivity(q, i);
  switch (spec.variant.kind) {
    case UtilityKind::PowerLog:
      return clamp_probability(p.C / (p.M + p.A * alpha_term * s));
    case UtilityKind::ThroughputLog: {
      if (alpha == 0.0)
        throw DomainError("best response undefined: a competitor transmits always");
      return clamp_probability(p.C / (p.M * alpha + p.A * alpha_term * s));
    }
    case UtilityKind::PowerProportional: {
      const double slope = utility_gradient(spec, q, i);
      if (slope > 0.0) return 1.0;
      if (slope < 0.0) return 0.0;
      return q[i];  // indifferent: every q_i maximizes
    }
  }
  throw DomainError("unknown utility variant");
}

StrategyProfile default_start(const GameSpec& spec) {
  StrategyProfile q0(spec.player_count());
  for (std::size_t i = 0; i < q0.size(); ++i)
    q0[i] = clamp_probability(spec.players[i].c());
  return q0;
}

NepResult solve_heterogeneous_nep(const GameSpec& spec, StrategyProfile q0,
                                  const HeterogeneousSolveOptions& opts) {
  spec.validate();
  if (q0.size() != spec.player_count())
    throw DomainError("start profile size does not match the player list");
  if (!(opts.damping > 0.0 && opts.damping <= 1.0))
    throw DomainError("damping must lie in (0, 1]");

  StrategyProfile q = clamped_profile(std::move(q0));
  const std::size_t n = q.size();
  StrategyProfile br(n);
  long iters = 0;
  bool settled = false;
  for (; iters < opts.max_iters; ++iters) {
    for (std::size_t i = 0; i < n; ++i) br[i] = best_response(spec, q, i);
    double delta = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double next = clamp_probability((1.0 - opts.damping) * q[i] + opts.damping * br[i]);
      delta = std::max(delta, std::abs(next - q[i]));
      q[i] = next;
    }
    if (delta < opts.step_tol) {
      settled = true;
      break;
    }
  }

  const double residual = max_abs_gradient(spec, q);
  if (!settled)
    throw NotConvergedError("best-response iteration did not settle", q, residual, iters);
  if (residual > opts.residual_tol)
    throw NotConvergedError("fixed point is not an interior stationary point", q,
                            residual, iters);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(utility_hessian_cross(spec, q, i, i) < 0.0))
      throw NotConvergedError("own second-order optimality condition failed", q,
                              residual, iters);
  }
  return make_nep_result(spec, q, NepKind::Heterogeneous);
}

std::vector<NepResult> solve_heterogeneous_multistart(const GameSpec& spec,
                                                      const std::vector<double>& per_dim_values,
                                                      const HeterogeneousSolveOptions& opts) {
  spec.validate();
  if (per_dim_values.empty()) throw DomainError("multistart needs at least one grid value");
  const std::size_t n = spec.player_count();
  double total_d = 1.0;
  for (std::size_t i = 0; i < n; ++i) total_d *= static_cast<double>(per_dim_values.size());
  if (total_d > 32768.0)
    throw DomainError("multistart grid too large; reduce per-dimension values");
  const long total = static_cast<long>(total_d);

  std::vector<NepResult> found;
  StrategyProfile q0(n);
  for (long index = 0; index < total; ++index) {
    long rem = index;
    for (std::size_t i = 0; i < n; ++i) {
      q0[i] = per_dim_values[static_cast<std::size_t>(rem) % per_dim_values.size()];
      rem /= static_cast<long>(per_dim_values.size());
    }
    try {
      NepResult result = solve_heterogeneous_nep(spec, q0, opts);
      bool duplicate = false;
      for (const auto& prior : found) {
        double dist = 0.0;
        for (std::size_t i = 0; i < n; ++i)
          dist = std::max(dist, std::abs(prior.q_star[i] - result.q_star[i]));
        if (dist <= 1e-6) {
          duplicate = true;
          break;
        }
      }
      if (!duplicate) found.push_back(std::move(result));
    } catch (const NotConvergedError&) {
      // unconverged starts are skipped
    } catch (const DomainError&) {
    }
  }
  std::sort(found.begin(), found.end(),
            [](const NepResult& x, const NepResult& y) { return x.q_star < y.q_star; });
  return found;
}

}  // namespace aloha

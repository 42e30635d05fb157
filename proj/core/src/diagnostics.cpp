#include "ljsde/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ljsde/errors.hpp"
#include "ljsde/stats.hpp"

namespace ljsde {

double MartingalePath::identity_residual() const {
  double worst = 0.0;
  for (std::size_t k = 0; k < m_values.size(); ++k) {
    const double rebuilt = phi_values[k] - phi_values[0] + compensator[k];
    const double scale = std::max({1.0, std::abs(phi_values[k]), std::abs(phi_values[0]),
                                   std::abs(compensator[k])});
    worst = std::max(worst, std::abs(m_values[k] - rebuilt) / scale);
  }
  return worst;
}

namespace {

DriftField phi_gradient(const Configuration& x, const SystemSpec& s, double eps) {
  if (!s.potential || x.n() < 2) return DriftField(x.n(), x.d());
  DriftField g = interaction_drift(x, RegularizedLJ(*s.potential, eps));
  for (double& v : g.values()) v = -v;
  return g;
}

}  // namespace

double compensator_integrand(const Configuration& x, const SystemSpec& s, double eps) {
  if (!s.potential || x.n() < 2) return 0.0;
  const RegularizedLJ reg(*s.potential, eps);
  const DriftField grad = phi_gradient(x, s, eps);
  double value = squared_norm(grad) - 0.5 * s.sigma * s.sigma * global_laplacian(x, reg);
  if (!std::holds_alternative<std::monostate>(s.extra_drift)) {
    value -= inner(grad, extra_drift(x, s, eps));
  }
  return value;
}

MartingalePath martingale_path(const Trajectory& traj, const SystemSpec& s, double eps) {
  if (traj.record_stride != 1) {
    throw PreconditionError("martingale_path: trajectory must be recorded at every step");
  }
  if (traj.frames.empty()) throw PreconditionError("martingale_path: empty trajectory");
  const std::size_t count = traj.frames.size();
  MartingalePath mp;
  mp.times = traj.times;
  mp.m_values.resize(count);
  mp.phi_values.resize(count);
  mp.compensator.resize(count);
  mp.ito_sum.resize(count);

  auto phi = [&](const Configuration& x) {
    return (!s.potential || x.n() < 2) ? 0.0
                                       : global_potential(x, RegularizedLJ(*s.potential, eps));
  };

  mp.phi_values[0] = phi(traj.frames[0]);
  for (std::size_t k = 0; k + 1 < count; ++k) {
    const Configuration& x = traj.frames[k];
    const Configuration& y = traj.frames[k + 1];
    const double dt = traj.times[k + 1] - traj.times[k];
    const double g = compensator_integrand(x, s, eps);
    mp.phi_values[k + 1] = phi(y);
    mp.compensator[k + 1] = mp.compensator[k] + g * dt;
    mp.m_values[k + 1] = mp.m_values[k] + (mp.phi_values[k + 1] - mp.phi_values[k]) + g * dt;

    const DriftField drift = system_drift(x, s, eps);
    const DriftField grad = phi_gradient(x, s, eps);
    double dm = 0.0;
    for (std::size_t c = 0; c < x.values().size(); ++c) {
      const double noise = y.values()[c] - x.values()[c] - drift.values()[c] * dt;
      dm += grad.values()[c] * noise;
    }
    mp.ito_sum[k + 1] = mp.ito_sum[k] + dm;
  }
  return mp;
}

double potential_lower_bound(const LJParams& p, std::size_t n) {
  return 0.5 * static_cast<double>(n - 1) * lj_minimum(p).delta_prime;
}

MartingaleBoundsReport check_martingale_bounds(const MartingalePath& mp, double delta, double eta,
                                               double t_end, std::optional<double> stop_time) {
  if (mp.m_values.empty()) throw PreconditionError("check_martingale_bounds: empty path");
  const double horizon = std::min(t_end, stop_time.value_or(t_end));
  MartingaleBoundsReport rep;
  rep.phi0 = mp.phi_values[0];
  rep.inf_m = std::numeric_limits<double>::infinity();
  rep.sup_m = -std::numeric_limits<double>::infinity();
  rep.sup_phi = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < mp.m_values.size(); ++k) {
    if (mp.times[k] > horizon) break;
    rep.inf_m = std::min(rep.inf_m, mp.m_values[k]);
    rep.sup_m = std::max(rep.sup_m, mp.m_values[k]);
    rep.sup_phi = std::max(rep.sup_phi, mp.phi_values[k]);
  }
  rep.inf_threshold = -rep.phi0 - delta - eta * t_end;
  rep.sup_threshold = rep.sup_phi - rep.phi0 - delta - eta * t_end;
  rep.inf_slack = rep.inf_m - rep.inf_threshold;
  rep.sup_slack = rep.sup_m - rep.sup_threshold;
  rep.inf_holds = rep.inf_slack >= 0.0;
  rep.sup_holds = rep.sup_slack >= 0.0;
  return rep;
}

BoundaryLevel f_lower(const LJParams& p, std::size_t n, double eps) {
  if (n < 2) throw PreconditionError("f_lower: need at least two particles");
  const double v = lj_value(p, eps);
  const double nn = static_cast<double>(n);
  const double others = nn * (nn - 1.0) / 2.0 - 1.0;
  BoundaryLevel level;
  level.value = (v - others * lj_minimum(p).delta_prime) / nn;
  level.informative = v > 0.0 && level.value > 0.0;
  return level;
}

double collision_theory_bound(double c_markov, double f, double eta, double t_end) {
  if (!(f > 0.0)) return std::numeric_limits<double>::infinity();
  const double r = std::sqrt(f);
  return c_markov / r + (r + eta * t_end) / f;
}

namespace {

void fill_estimate(CollisionEstimate& est, const SimulationSpec& spec, double eta,
                   double c_markov) {
  const std::size_t trials = est.runs - est.failed_runs;
  est.t_end = spec.t_end;
  est.eta_hat = eta;
  est.c_markov = c_markov;
  est.seed = spec.seed;
  if (trials > 0) {
    est.p_hat = static_cast<double>(est.hits) / static_cast<double>(trials);
    const auto iv = stats::wilson_interval(est.hits, trials);
    est.ci_low = iv.low;
    est.ci_high = iv.high;
  } else {
    est.p_hat = std::numeric_limits<double>::quiet_NaN();
    est.ci_low = 0.0;
    est.ci_high = 1.0;
  }
  if (spec.system.potential && spec.system.n >= 2) {
    const BoundaryLevel level = f_lower(*spec.system.potential, spec.system.n, est.eps);
    est.f_lower = level.value;
    est.f_informative = level.informative;
    est.theory_bound = level.informative
                           ? collision_theory_bound(c_markov, level.value, eta, spec.t_end)
                           : std::numeric_limits<double>::infinity();
  } else {
    est.theory_bound = std::numeric_limits<double>::infinity();
  }
}

}  // namespace

namespace {

CollisionEstimate estimate_from_batch(const SimulationSpec& spec,
                                      const std::vector<RunSummary>& summaries, double eta,
                                      double c_markov) {
  CollisionEstimate est;
  est.eps = spec.epsilon;
  est.runs = summaries.size();
  for (const auto& s : summaries) {
    if (!s.ok()) {
      ++est.failed_runs;
      continue;
    }
    if (s.exited && *s.tau_eps <= spec.t_end) ++est.hits;
  }
  fill_estimate(est, spec, eta, c_markov);
  return est;
}

}  // namespace

CollisionEstimate collision_probability(const SimulationSpec& spec, std::size_t runs, double eta,
                                        double c_markov, const ConfigSampler& initializer) {
  return estimate_from_batch(spec, run_batch(spec, runs, initializer), eta, c_markov);
}

CollisionSweep collision_sweep(const SimulationSpec& spec, std::span<const double> eps_list,
                               std::size_t runs, double eta, double c_markov,
                               const ConfigSampler& initializer) {
  if (runs < 1) throw PreconditionError("collision_sweep: runs must be >= 1");
  CollisionSweep sweep;
  sweep.rows.resize(eps_list.size());
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    sweep.rows[k].eps = eps_list[k];
    sweep.rows[k].runs = runs;
  }
  for (std::size_t r = 0; r < runs; ++r) {
    SimulationSpec local = spec;
    local.seed = run_seed(spec.seed, r);
    try {
      auto crossing = coupled_sweep(local, initializer(initial_seed(local.seed)), eps_list);
      for (std::size_t k = 0; k < crossing.size(); ++k) {
        if (crossing[k] && *crossing[k] <= spec.t_end) ++sweep.rows[k].hits;
      }
      sweep.crossings.push_back(std::move(crossing));
    } catch (const std::exception&) {
      ++sweep.failed_runs;
      sweep.crossings.emplace_back(eps_list.size());
    }
  }
  for (auto& row : sweep.rows) {
    row.failed_runs = sweep.failed_runs;
    fill_estimate(row, spec, eta, c_markov);
  }
  return sweep;
}

CollisionSweep collision_sweep_uncoupled(const SimulationSpec& spec,
                                         std::span<const double> eps_list, std::size_t runs,
                                         double eta, double c_markov,
                                         const ConfigSampler& initializer) {
  if (runs < 1) throw PreconditionError("collision_sweep_uncoupled: runs must be >= 1");
  CollisionSweep sweep;
  sweep.crossings.assign(runs, std::vector<std::optional<double>>(eps_list.size()));
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    SimulationSpec local = spec;
    local.epsilon = eps_list[k];
    const auto summaries = run_batch(local, runs, initializer);
    for (std::size_t r = 0; r < runs; ++r) {
      if (summaries[r].ok() && summaries[r].exited) sweep.crossings[r][k] = summaries[r].tau_eps;
    }
    sweep.rows.push_back(estimate_from_batch(local, summaries, eta, c_markov));
    sweep.failed_runs = std::max(sweep.failed_runs, sweep.rows.back().failed_runs);
  }
  return sweep;
}

double estimate_markov_constant(const ConfigSampler& initializer, const LJParams& p,
                                std::size_t runs, std::uint64_t master_seed) {
  if (runs < 1) throw PreconditionError("estimate_markov_constant: runs must be >= 1");
  double sum = 0.0;
  std::size_t n = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    const Configuration x = initializer(initial_seed(run_seed(master_seed, r)));
    n = x.n();
    sum += x.n() >= 2 ? global_potential(x, p) : 0.0;
  }
  return sum / static_cast<double>(runs) + potential_lower_bound(p, std::max<std::size_t>(n, 1));
}

IncrementGenerator symmetric_walk_increments(double step) {
  return [step](Rng& rng) { return (rng.bits() & 1U) ? step : -step; };
}

IncrementGenerator brownian_increments(double dt) {
  const double s = std::sqrt(dt);
  return [s](Rng& rng) { return s * rng.normal(); };
}

DoobEstimate doob_two_barrier(std::size_t runs, double a, double b,
                              const IncrementGenerator& increments, std::uint64_t seed,
                              std::size_t max_steps) {
  if (!(a > 0.0 && b > a)) throw PreconditionError("doob_two_barrier: need 0 < a < b");
  if (runs < 1) throw PreconditionError("doob_two_barrier: runs must be >= 1");
  DoobEstimate est;
  est.expected = a / b;
  est.runs = runs;
  const double upper = b - a;
  const double lower = -a;
  std::size_t wins = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    Rng rng(mix_seed(seed, r));
    double x = 0.0;
    std::size_t step = 0;
    while (x < upper && x > lower && step < max_steps) {
      x += increments(rng);
      ++step;
    }
    if (x >= upper) {
      ++wins;
    } else if (x > lower) {
      ++est.undecided;
    }
  }
  const std::size_t decided = runs - est.undecided;
  if (decided > 0) {
    est.p_hat = static_cast<double>(wins) / static_cast<double>(decided);
    est.std_error = std::sqrt(est.p_hat * (1.0 - est.p_hat) / static_cast<double>(decided));
  }
  return est;
}

}  // namespace ljsde

#pragma once

// Runnable versions of the non-explosion argument for the regularized
// system: the Ito decomposition Phi^eps(X_t) = Phi^eps(X_0) - A_t + M_t with
// compensator A_t = int (|grad Phi^eps|^2 - grad Phi^eps . mu^eps
// - sigma^2/2 Lap Phi^eps) ds, the pathwise inf/sup bounds on M, the
// boundary level f(eps), the collision probability P(tau_eps <= T) against
// C/R + (R + eta T)/f(eps) with R = sqrt(f(eps)), and the two-barrier
// hitting identity P(T_{b-a} <= T_{-a}) = a/b.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "ljsde/init_sampler.hpp"
#include "ljsde/integrator.hpp"
#include "ljsde/potential.hpp"
#include "ljsde/rng.hpp"

namespace ljsde {

struct MartingalePath {
  std::vector<double> times;
  std::vector<double> m_values;     // M_t accumulated from increments
  std::vector<double> phi_values;   // Phi^eps(X_t)
  std::vector<double> compensator;  // A_t, left-point Riemann sum
  // Discrete Ito sum  sum_k grad Phi^eps(X_k) . (sigma dW_k), with the noise
  // increment recovered from the path. Differs from M by discretization error.
  std::vector<double> ito_sum;

  // max_k |M_k - (Phi_k - Phi_0 + A_k)| / max(1, |Phi_k|, |Phi_0|, |A_k|).
  double identity_residual() const;
};

// Requires a trajectory recorded at every step (record_stride == 1).
MartingalePath martingale_path(const Trajectory& traj, const SystemSpec& s, double eps);

// Integrand of the compensator at one state.
double compensator_integrand(const Configuration& x, const SystemSpec& s, double eps);

// Lower bound of Phi for the pair system: (N - 1) delta' / 2.
double potential_lower_bound(const LJParams& p, std::size_t n);

struct MartingaleBoundsReport {
  double phi0 = 0.0;
  double inf_m = 0.0;
  double sup_m = 0.0;
  double sup_phi = 0.0;
  double inf_threshold = 0.0;  // -Phi_0 - delta - eta T
  double sup_threshold = 0.0;  // sup Phi - Phi_0 - delta - eta T
  bool inf_holds = false;
  bool sup_holds = false;
  double inf_slack = 0.0;  // inf M - inf_threshold
  double sup_slack = 0.0;  // sup M - sup_threshold

  bool holds() const { return inf_holds && sup_holds; }
};

// Extrema are taken over t <= min(t_end, stop_time).
MartingaleBoundsReport check_martingale_bounds(const MartingalePath& mp, double delta, double eta,
                                               double t_end,
                                               std::optional<double> stop_time = std::nullopt);

struct BoundaryLevel {
  double value = 0.0;
  // False when V(eps) <= 0 or the bound is not positive.
  bool informative = false;
};

// (1/n) [V(eps) - (n(n-1)/2 - 1) delta']: the closest pair contributes
// V(eps)/n and every other pair at least -delta'/n.
BoundaryLevel f_lower(const LJParams& p, std::size_t n, double eps);

// C/R + (R + eta T)/f with R = sqrt(f); +infinity when f <= 0.
double collision_theory_bound(double c_markov, double f, double eta, double t_end);

struct CollisionEstimate {
  double eps = 0.0;
  double t_end = 0.0;
  std::size_t runs = 0;
  std::size_t hits = 0;
  std::size_t failed_runs = 0;
  double p_hat = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  double eta_hat = 0.0;
  double c_markov = 0.0;
  double f_lower = 0.0;
  bool f_informative = false;
  double theory_bound = 0.0;
  std::uint64_t seed = 0;

  bool within_bound() const { return ci_high <= theory_bound; }
};

// Estimates P(tau_eps <= T) over `runs` seeded runs of the batch harness.
CollisionEstimate collision_probability(const SimulationSpec& spec, std::size_t runs, double eta,
                                        double c_markov, const ConfigSampler& initializer);

struct CollisionSweep {
  std::vector<CollisionEstimate> rows;           // one per threshold
  std::vector<std::vector<std::optional<double>>> crossings;  // per run
  std::size_t failed_runs = 0;
};

// Coupled estimate for a strictly decreasing threshold list: each run is a
// single noise realization read off at every threshold.
CollisionSweep collision_sweep(const SimulationSpec& spec, std::span<const double> eps_list,
                               std::size_t runs, double eta, double c_markov,
                               const ConfigSampler& initializer);

// Independent estimate per threshold (each splice integrated separately,
// same per-run seeds).
CollisionSweep collision_sweep_uncoupled(const SimulationSpec& spec,
                                         std::span<const double> eps_list, std::size_t runs,
                                         double eta, double c_markov,
                                         const ConfigSampler& initializer);

// mean(Phi_0) + delta over `runs` initial draws with seeds
// initial_seed(run_seed(master, r)), matching run_batch.
double estimate_markov_constant(const ConfigSampler& initializer, const LJParams& p,
                                std::size_t runs, std::uint64_t master_seed);

using IncrementGenerator = std::function<double(Rng&)>;

IncrementGenerator symmetric_walk_increments(double step = 1.0);
IncrementGenerator brownian_increments(double dt);

struct DoobEstimate {
  double p_hat = 0.0;
  double std_error = 0.0;
  double expected = 0.0;  // a / b
  std::size_t runs = 0;
  std::size_t undecided = 0;  // hit max_steps without reaching a barrier
};

// Walk started at 0; success when it reaches b - a before -a.
DoobEstimate doob_two_barrier(std::size_t runs, double a, double b,
                              const IncrementGenerator& increments, std::uint64_t seed,
                              std::size_t max_steps = 100'000'000);

}  // namespace ljsde

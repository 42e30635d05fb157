#include "ljsde/integrator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "ljsde/rng.hpp"

namespace ljsde {

void SimulationSpec::validate() const {
  system.validate();
  if (!(epsilon > 0.0)) throw PreconditionError("SimulationSpec: epsilon must be > 0");
  if (!(dt > 0.0)) throw PreconditionError("SimulationSpec: dt must be > 0");
  if (!(t_end >= dt)) throw PreconditionError("SimulationSpec: need 0 < dt <= t_end");
  if (record_stride < 1) throw PreconditionError("SimulationSpec: record_stride must be >= 1");
}

std::size_t SimulationSpec::steps() const {
  return static_cast<std::size_t>(std::llround(t_end / dt));
}

Configuration em_step(const Configuration& x, const SystemSpec& s, double eps, double dt,
                      std::span<const double> noise, std::size_t step_index) {
  if (!(dt > 0.0)) throw PreconditionError("em_step: dt must be > 0");
  if (noise.size() != x.values().size()) throw PreconditionError("em_step: noise shape mismatch");
  const DriftField drift = system_drift(x, s, eps);
  const double amp = s.sigma * std::sqrt(dt);
  Configuration next = x;
  auto out = next.values();
  const auto b = drift.values();
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += b[k] * dt + amp * noise[k];
  if (!next.all_finite()) throw NumericError("em_step: non-finite state", step_index);
  return next;
}

namespace {

double min_distance_or_inf(const Configuration& x) {
  return x.n() < 2 ? std::numeric_limits<double>::infinity() : min_pair_distance(x);
}

double regularized_phi(const Configuration& x, const SystemSpec& s, double eps) {
  if (!s.potential || x.n() < 2) return 0.0;
  return global_potential(x, RegularizedLJ(*s.potential, eps));
}

struct StepView {
  std::size_t step;
  double time;
  const Configuration& state;
  double m;
  double phi;
};

// Core loop: integrates spec.steps() steps spliced at `splice`, calling
// visit(step_view) for the initial state (step 0) and every step endpoint.
template <class Visit>
void integrate(const SimulationSpec& spec, const Configuration& initial, double splice,
               Visit&& visit) {
  Rng rng(spec.seed);
  std::vector<double> noise(initial.values().size());
  Configuration x = initial;
  const std::size_t steps = spec.steps();
  visit(StepView{0, 0.0, x, min_distance_or_inf(x), regularized_phi(x, spec.system, splice)});
  for (std::size_t k = 0; k < steps; ++k) {
    rng.fill_normal(noise);
    try {
      x = em_step(x, spec.system, splice, spec.dt, noise, k + 1);
    } catch (const NumericError& e) {
      throw BlowUpError(e.what(), k + 1, static_cast<double>(k) * spec.dt, x);
    }
    const double t = static_cast<double>(k + 1) * spec.dt;
    visit(StepView{k + 1, t, x, min_distance_or_inf(x), regularized_phi(x, spec.system, splice)});
  }
}

void check_shape(const SimulationSpec& spec, const Configuration& initial) {
  if (initial.n() != spec.system.n || initial.d() != spec.system.d) {
    throw PreconditionError("simulate: initial configuration shape does not match the system");
  }
}

}  // namespace

Trajectory simulate(const SimulationSpec& spec, const Configuration& initial) {
  spec.validate();
  check_shape(spec, initial);
  const double m0 = min_distance_or_inf(initial);
  if (!(m0 > spec.epsilon)) {
    throw PreconditionError("simulate: initial min pair distance " + std::to_string(m0) +
                            " must exceed epsilon " + std::to_string(spec.epsilon));
  }
  Trajectory traj;
  traj.seed = spec.seed;
  traj.record_stride = spec.record_stride;
  traj.min_m = std::numeric_limits<double>::infinity();
  traj.phi_max = -std::numeric_limits<double>::infinity();
  const std::size_t steps = spec.steps();

  integrate(spec, initial, spec.epsilon, [&](const StepView& v) {
    bool record = v.step % spec.record_stride == 0 || v.step == steps;
    if (!traj.exited && v.m <= spec.epsilon) {
      traj.exited = true;
      traj.tau_eps = v.time;
      record = true;
    }
    traj.min_m = std::min(traj.min_m, v.m);
    traj.phi_max = std::max(traj.phi_max, v.phi);
    traj.phi_final = v.phi;
    if (record) {
      traj.times.push_back(v.time);
      traj.frames.push_back(v.state);
      traj.min_distance_series.push_back(v.m);
    }
  });
  return traj;
}

std::vector<std::optional<double>> coupled_sweep(const SimulationSpec& spec,
                                                 const Configuration& initial,
                                                 std::span<const double> eps_list) {
  spec.validate();
  check_shape(spec, initial);
  if (eps_list.empty()) throw PreconditionError("coupled_sweep: empty threshold list");
  for (std::size_t k = 0; k < eps_list.size(); ++k) {
    if (!(eps_list[k] > 0.0)) throw PreconditionError("coupled_sweep: thresholds must be > 0");
    if (k > 0 && !(eps_list[k] < eps_list[k - 1]))
      throw PreconditionError("coupled_sweep: thresholds must be strictly decreasing");
  }
  const double m0 = min_distance_or_inf(initial);
  if (!(eps_list.front() < m0)) {
    throw PreconditionError("coupled_sweep: largest threshold must be below m(X_0) = " +
                            std::to_string(m0));
  }
  std::vector<std::optional<double>> crossing(eps_list.size());
  std::size_t next = 0;  // thresholds [0, next) already crossed
  const double splice = eps_list.back();
  integrate(spec, initial, splice, [&](const StepView& v) {
    while (next < eps_list.size() && v.m <= eps_list[next]) crossing[next++] = v.time;
  });
  return crossing;
}

std::uint64_t run_seed(std::uint64_t master, std::size_t run) { return mix_seed(master, run); }

std::uint64_t initial_seed(std::uint64_t seed) { return mix_seed(seed, 0); }

std::vector<RunSummary> run_batch(const SimulationSpec& spec, std::size_t runs,
                                  const ConfigSampler& initializer, std::size_t first_run,
                                  const TrajectorySink& sink) {
  if (runs < 1) throw PreconditionError("run_batch: runs must be >= 1");
  spec.validate();
  std::vector<RunSummary> out;
  out.reserve(runs);
  for (std::size_t r = first_run; r < first_run + runs; ++r) {
    RunSummary s;
    s.run = r;
    s.seed = run_seed(spec.seed, r);
    try {
      SimulationSpec local = spec;
      local.seed = s.seed;
      const Trajectory traj = simulate(local, initializer(initial_seed(s.seed)));
      s.exited = traj.exited;
      s.tau_eps = traj.tau_eps;
      s.min_m = traj.min_m;
      s.phi_max = traj.phi_max;
      s.phi_final = traj.phi_final;
      if (sink) sink(r, traj);
    } catch (const std::exception& e) {
      s.error = e.what();
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace ljsde

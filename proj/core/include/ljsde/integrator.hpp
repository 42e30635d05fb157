#pragma once

// Euler-Maruyama integration of the regularized system
//   dX = [-grad Phi^eps(X) + mu^eps(X)] dt + sigma dW,
// first-exit detection from {m(x) > eps}, coupled threshold sweeps and a
// seeded batch harness.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ljsde/errors.hpp"
#include "ljsde/init_sampler.hpp"
#include "ljsde/particles.hpp"

namespace ljsde {

struct SimulationSpec {
  SystemSpec system;
  double epsilon = 0.1;
  double t_end = 1.0;
  double dt = 1e-3;
  std::uint64_t seed = 42;
  std::size_t record_stride = 1;

  void validate() const;
  // round(t_end / dt).
  std::size_t steps() const;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Configuration> frames;
  std::vector<double> min_distance_series;  // m(X) per recorded frame
  std::optional<double> tau_eps;
  bool exited = false;
  std::uint64_t seed = 0;
  std::size_t record_stride = 1;
  // Statistics over every step, recorded or not.
  double min_m = 0.0;
  double phi_max = 0.0;
  double phi_final = 0.0;
};

// Raised by simulate when a step produces non-finite coordinates.
class BlowUpError : public NumericError {
 public:
  BlowUpError(const std::string& what, std::size_t step, double time, Configuration last_valid)
      : NumericError(what, step), time_(time), last_valid_(std::move(last_valid)) {}

  double time() const noexcept { return time_; }
  const Configuration& last_valid() const noexcept { return last_valid_; }

 private:
  double time_;
  Configuration last_valid_;
};

// X' = X + drift(X) dt + sigma sqrt(dt) noise, drift spliced at eps.
Configuration em_step(const Configuration& x, const SystemSpec& s, double eps, double dt,
                      std::span<const double> noise, std::size_t step_index = 0);

// Integrates to t_end. tau_eps is the time of the first step endpoint with
// m(X) <= epsilon; integration continues past it. Frames are recorded every
// record_stride steps, at the exit step and at the final step.
Trajectory simulate(const SimulationSpec& spec, const Configuration& initial);

// One noise realization spliced at the smallest threshold; entry k is the
// first crossing time of eps_list[k], which must be strictly decreasing and
// below m(X_0).
std::vector<std::optional<double>> coupled_sweep(const SimulationSpec& spec,
                                                 const Configuration& initial,
                                                 std::span<const double> eps_list);

struct RunSummary {
  std::size_t run = 0;
  std::uint64_t seed = 0;
  bool exited = false;
  std::optional<double> tau_eps;
  double min_m = 0.0;
  double phi_max = 0.0;
  double phi_final = 0.0;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
};

using TrajectorySink = std::function<void(std::size_t run, const Trajectory&)>;

// Seed of run r (noise stream) and of its initial configuration.
std::uint64_t run_seed(std::uint64_t master, std::size_t run);
std::uint64_t initial_seed(std::uint64_t run_seed);

// Runs indices [first_run, first_run + runs). Run r integrates with seed
// run_seed(spec.seed, r) from initializer(initial_seed(run_seed)). Errors are
// recorded in the summary; the batch continues.
std::vector<RunSummary> run_batch(const SimulationSpec& spec, std::size_t runs,
                                  const ConfigSampler& initializer, std::size_t first_run = 0,
                                  const TrajectorySink& sink = {});

}  // namespace ljsde

#pragma once

// Flat "key = value" run configuration for the ljsde tool.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ljsde/diagnostics.hpp"
#include "ljsde/init_sampler.hpp"
#include "ljsde/integrator.hpp"

namespace ljsde::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class InitKind { grid, gibbs, gaussian, uniform_ball };
enum class DriftKind { none, vortex, linear };

struct RunConfig {
  std::uint64_t seed = 42;

  std::size_t n = 3;
  std::size_t d = 3;
  double sigma = 0.5;

  bool lj = true;
  double A = 1.0;
  double B = 1.0;
  double alpha = 12.0;
  double beta = 6.0;

  DriftKind drift = DriftKind::none;
  std::vector<double> gammas;
  double drift_rate = 1.0;

  std::optional<double> epsilon;
  std::optional<double> epsilon_rbar;
  std::optional<double> t_end;
  std::optional<double> dt;
  std::size_t record_stride = 1;
  std::size_t runs = 1;

  InitKind init = InitKind::grid;
  std::optional<double> init_spacing;
  double init_scale = 1.0;

  double gibbs_k = 1.0;
  double gibbs_c = 1.0;
  std::size_t gibbs_steps = 2000;
  double gibbs_step_size = 0.1;

  std::vector<double> sweep_eps;
  std::vector<double> sweep_eps_rbar;
  bool sweep_coupled = true;

  std::optional<double> eta;
  std::size_t h3_samples = 200;
  std::optional<double> c_markov;

  std::size_t certify_runs = 100;
  std::optional<double> certify_ceiling;

  std::optional<double> h_override;
  std::size_t verify_triples = 100000;
  std::size_t verify_configs = 10000;

  bool operator==(const RunConfig&) const = default;
};

// Parses the text form. Throws ConfigError naming the line and key.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);
// Canonical text form: every key, doubles at 17 significant digits.
std::string print_config(const RunConfig& cfg);

// Every accepted key, in print order.
std::vector<std::string> config_keys();

// Builders. Each validates the fields it reads and throws ConfigError.
LJParams potential_of(const RunConfig& cfg);
SystemSpec system_of(const RunConfig& cfg);
// Requires sim.t_end and sim.dt, and exactly one of sim.epsilon / sim.epsilon_rbar.
SimulationSpec simulation_of(const RunConfig& cfg);
ConfigSampler initializer_of(const RunConfig& cfg);
GibbsSpec gibbs_of(const RunConfig& cfg);
// Thresholds in length units, from sweep.eps or sweep.eps_rbar.
std::vector<double> sweep_thresholds(const RunConfig& cfg);

}  // namespace ljsde::cli

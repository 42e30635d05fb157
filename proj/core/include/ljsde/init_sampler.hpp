#pragma once

// Initial laws with finite mean interaction energy
//   E[ sum_{i<j} |V(X_0^i - X_0^j)| ] < infinity:
// i.i.d. bounded densities (valid when alpha < d) and the confined Gibbs
// measure  rho(x) ~ exp(-c sum_{i<j} V(x^i - x^j) - k sum_i |x^i|^2),
// sampled by random-walk Metropolis-Hastings.
//
// Any bounded density lies in every L^p, so the i.i.d. integrability
// threshold p >= 2d / (2d - alpha) holds automatically for the two density
// kinds offered here; only alpha < d has to be checked.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ljsde/particles.hpp"
#include "ljsde/potential.hpp"
#include "ljsde/rng.hpp"

namespace ljsde {

struct Applicability {
  bool applicable = false;
  std::string reason;  // empty when applicable
};

Applicability check_iid_applicability(const LJParams& p, std::size_t d);

enum class DensityKind { gaussian, uniform_ball };

struct DensitySpec {
  DensityKind kind = DensityKind::gaussian;
  double scale = 1.0;           // standard deviation or ball radius
  std::vector<double> center;   // empty means the origin
};

Configuration sample_iid(const DensitySpec& spec, std::size_t n, std::size_t d, Rng& rng);

struct GibbsSpec {
  LJParams potential = LJParams::classic();
  double confinement_k = 1.0;
  double c = 1.0;
  std::size_t mh_steps = 2000;
  double mh_step_size = 0.1;

  void validate() const;
};

// c * sum_{i<j} V + k * sum_i |x^i|^2; +infinity on (near-)coincidence.
double gibbs_energy(const GibbsSpec& spec, const Configuration& x);

// Cubic grid with ceil(n^(1/d)) sites per axis, centred on the origin,
// filled in lexicographic order.
Configuration grid_configuration(std::size_t n, std::size_t d, double spacing);

// Chain start spacing: max(r_bar, 1).
double default_grid_spacing(const LJParams& p);

struct GibbsChainResult {
  Configuration state;
  double energy = 0.0;      // gibbs_energy(state)
  double max_energy = 0.0;  // running maximum over the post-burn-in states
  std::size_t accepted = 0;
  std::size_t steps = 0;

  double acceptance_rate() const {
    return steps == 0 ? 0.0 : static_cast<double>(accepted) / static_cast<double>(steps);
  }
};

using ChainObserver = std::function<void(const Configuration& state)>;

// Runs mh_steps full-vector Gaussian proposals from the grid start. The
// first mh_steps / 2 states are burn-in. The observer, when set, sees the
// chain state after every step.
GibbsChainResult run_gibbs_chain(const GibbsSpec& spec, std::size_t n, std::size_t d, Rng& rng,
                                 const ChainObserver& observer = {});

Configuration sample_gibbs(const GibbsSpec& spec, std::size_t n, std::size_t d, Rng& rng);

using ConfigSampler = std::function<Configuration(std::uint64_t seed)>;

struct EnergyCertificate {
  double mean = 0.0;
  double ci_half_width = 0.0;  // 95 % normal approximation
  double max_energy = 0.0;
  double ceiling = 0.0;
  std::size_t ceiling_hits = 0;
  std::size_t runs = 0;
  std::uint64_t seed = 0;

  bool certified() const { return ceiling_hits == 0; }
};

// Default ceiling 1e6 * delta' * N^2 (delta' replaced by 1 without an
// attractive well).
double default_energy_ceiling(const LJParams& p, std::size_t n);

// Draw r uses seed mix_seed(master_seed, r).
EnergyCertificate certify_initial_energy(const ConfigSampler& sampler, const LJParams& p,
                                         std::size_t runs, std::uint64_t master_seed,
                                         std::optional<double> ceiling = std::nullopt);

}  // namespace ljsde

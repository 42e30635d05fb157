#include "ljsde/init_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ljsde/errors.hpp"
#include "ljsde/stats.hpp"

namespace ljsde {

Applicability check_iid_applicability(const LJParams& p, std::size_t d) {
  const auto dd = static_cast<double>(d);
  if (p.alpha() < dd) return {true, {}};
  std::ostringstream os;
  os << "alpha=" << p.alpha() << " >= d=" << d;
  return {false, os.str()};
}

Configuration sample_iid(const DensitySpec& spec, std::size_t n, std::size_t d, Rng& rng) {
  if (n == 0 || d == 0) throw PreconditionError("sample_iid: n and d must be >= 1");
  if (!(spec.scale > 0.0)) throw PreconditionError("sample_iid: scale must be > 0");
  if (!spec.center.empty() && spec.center.size() != d)
    throw PreconditionError("sample_iid: center dimension mismatch");
  std::vector<double> values(n * d);
  std::vector<double> dir(d);
  for (std::size_t i = 0; i < n; ++i) {
    double* row = values.data() + i * d;
    if (spec.kind == DensityKind::gaussian) {
      for (std::size_t k = 0; k < d; ++k) row[k] = spec.scale * rng.normal();
    } else {
      // Uniform in the ball: isotropic direction, radius R u^(1/d).
      double norm2 = 0.0;
      do {
        norm2 = 0.0;
        for (double& v : dir) {
          v = rng.normal();
          norm2 += v * v;
        }
      } while (norm2 == 0.0);
      const double radius = spec.scale * std::pow(rng.uniform(), 1.0 / static_cast<double>(d));
      const double s = radius / std::sqrt(norm2);
      for (std::size_t k = 0; k < d; ++k) row[k] = dir[k] * s;
    }
    if (!spec.center.empty()) {
      for (std::size_t k = 0; k < d; ++k) row[k] += spec.center[k];
    }
  }
  return make_configuration(n, d, std::move(values));
}

void GibbsSpec::validate() const {
  if (!(confinement_k > 0.0)) throw PreconditionError("GibbsSpec: confinement_k must be > 0");
  if (!(c > 0.0)) throw PreconditionError("GibbsSpec: c must be > 0");
  if (mh_steps < 1) throw PreconditionError("GibbsSpec: mh_steps must be >= 1");
  if (!(mh_step_size > 0.0)) throw PreconditionError("GibbsSpec: mh_step_size must be > 0");
}

double gibbs_energy(const GibbsSpec& spec, const Configuration& x) {
  double confinement = 0.0;
  for (double v : x.values()) confinement += v * v;
  double pair = 0.0;
  try {
    pair = x.n() >= 2 ? global_potential(x, spec.potential) * static_cast<double>(x.n()) : 0.0;
  } catch (const DomainError&) {
    return std::numeric_limits<double>::infinity();
  }
  const double e = spec.c * pair + spec.confinement_k * confinement;
  return std::isnan(e) ? std::numeric_limits<double>::infinity() : e;
}

Configuration grid_configuration(std::size_t n, std::size_t d, double spacing) {
  if (n == 0 || d == 0) throw PreconditionError("grid_configuration: n and d must be >= 1");
  std::size_t side = 1;
  while (true) {
    std::size_t cap = 1;
    for (std::size_t k = 0; k < d && cap < n; ++k) cap *= side;
    if (cap >= n) break;
    ++side;
  }
  const double offset = 0.5 * static_cast<double>(side - 1) * spacing;
  std::vector<double> values(n * d);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t idx = i;
    for (std::size_t k = 0; k < d; ++k) {
      values[i * d + k] = static_cast<double>(idx % side) * spacing - offset;
      idx /= side;
    }
  }
  return make_configuration(n, d, std::move(values));
}

double default_grid_spacing(const LJParams& p) {
  const auto m = lj_minimum(p);
  return std::max(m.r_bar.value_or(length_scale(p)), 1.0);
}

GibbsChainResult run_gibbs_chain(const GibbsSpec& spec, std::size_t n, std::size_t d, Rng& rng,
                                 const ChainObserver& observer) {
  spec.validate();
  GibbsChainResult res{grid_configuration(n, d, default_grid_spacing(spec.potential))};
  res.energy = gibbs_energy(spec, res.state);
  res.max_energy = -std::numeric_limits<double>::infinity();
  const std::size_t burn_in = spec.mh_steps / 2;

  Configuration proposal = res.state;
  for (std::size_t step = 0; step < spec.mh_steps; ++step) {
    auto cur = res.state.values();
    auto prop = proposal.values();
    for (std::size_t k = 0; k < cur.size(); ++k) prop[k] = cur[k] + spec.mh_step_size * rng.normal();
    const double e_new = gibbs_energy(spec, proposal);
    const double log_u = std::log(rng.uniform());
    if (std::isfinite(e_new) && log_u < res.energy - e_new) {
      std::swap(res.state, proposal);
      res.energy = e_new;
      ++res.accepted;
    }
    ++res.steps;
    if (step >= burn_in) res.max_energy = std::max(res.max_energy, res.energy);
    if (observer) observer(res.state);
  }
  return res;
}

Configuration sample_gibbs(const GibbsSpec& spec, std::size_t n, std::size_t d, Rng& rng) {
  return run_gibbs_chain(spec, n, d, rng).state;
}

double default_energy_ceiling(const LJParams& p, std::size_t n) {
  const double dp = lj_minimum(p).delta_prime;
  const auto nn = static_cast<double>(n);
  return 1e6 * (dp > 0.0 ? dp : 1.0) * nn * nn;
}

EnergyCertificate certify_initial_energy(const ConfigSampler& sampler, const LJParams& p,
                                         std::size_t runs, std::uint64_t master_seed,
                                         std::optional<double> ceiling) {
  if (runs < 2) throw PreconditionError("certify_initial_energy: runs must be >= 2");
  EnergyCertificate cert;
  cert.runs = runs;
  cert.seed = master_seed;
  std::vector<double> energies;
  energies.reserve(runs);
  std::size_t n = 0;
  for (std::size_t r = 0; r < runs; ++r) {
    const Configuration x = sampler(mix_seed(master_seed, r));
    n = x.n();
    double e = std::numeric_limits<double>::infinity();
    try {
      e = mean_interaction_energy(x, p);
    } catch (const DomainError&) {
    }
    energies.push_back(e);
  }
  cert.ceiling = ceiling.value_or(default_energy_ceiling(p, n));
  cert.max_energy = *std::max_element(energies.begin(), energies.end());
  for (double e : energies) {
    if (!(e <= cert.ceiling)) ++cert.ceiling_hits;
  }
  const auto est = stats::mean_estimate(energies);
  cert.mean = est.mean;
  cert.ci_half_width = 1.959963984540054 * est.std_error;
  return cert;
}

}  // namespace ljsde

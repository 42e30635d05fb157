#include "ljsde/particles.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "ljsde/errors.hpp"

namespace ljsde {

template <class Tag>
ParticleArray<Tag>::ParticleArray(std::size_t n, std::size_t d, std::vector<double> values)
    : n_(n), d_(d), values_(std::move(values)) {
  if (values_.size() != n * d) {
    throw PreconditionError("ParticleArray: expected " + std::to_string(n * d) +
                            " values, got " + std::to_string(values_.size()));
  }
}

template <class Tag>
bool ParticleArray<Tag>::all_finite() const noexcept {
  for (double v : values_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

template class ParticleArray<PositionTag>;
template class ParticleArray<VelocityTag>;

Configuration make_configuration(std::size_t n, std::size_t d, std::vector<double> values) {
  if (n == 0 || d == 0) throw PreconditionError("Configuration: n and d must be >= 1");
  Configuration c(n, d, std::move(values));
  if (!c.all_finite()) throw PreconditionError("Configuration: non-finite coordinate");
  return c;
}

void SystemSpec::validate() const {
  if (n == 0) throw PreconditionError("SystemSpec: n must be >= 1");
  if (d == 0) throw PreconditionError("SystemSpec: d must be >= 1");
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw PreconditionError("SystemSpec: sigma must be >= 0");
  if (const auto* v = std::get_if<VortexDrift>(&extra_drift)) {
    if (d != 2) throw PreconditionError("SystemSpec: vortex drift requires d = 2");
    if (v->gammas.size() != n)
      throw PreconditionError("SystemSpec: vortex drift needs one gamma per particle");
  }
}

namespace {

double pair_distance(const Configuration& c, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t k = 0; k < c.d(); ++k) {
    const double dx = c(i, k) - c(j, k);
    s += dx * dx;
  }
  return std::sqrt(s);
}

void require_distinct(double r, std::size_t i, std::size_t j) {
  if (r == 0.0) {
    throw DomainError("coincident particles " + std::to_string(i) + " and " +
                      std::to_string(j));
  }
}

// Visits every unordered pair once with its distance.
template <class Fn>
void for_each_pair(const Configuration& c, Fn&& fn) {
  for (std::size_t i = 0; i < c.n(); ++i) {
    for (std::size_t j = i + 1; j < c.n(); ++j) fn(i, j, pair_distance(c, i, j));
  }
}

// Symmetric accumulation: force_over_r(r) gives F(r)/r for the pair model.
template <class ForceOverR>
DriftField accumulate_pair_drift(const Configuration& c, ForceOverR&& force_over_r) {
  const std::size_t n = c.n();
  const std::size_t d = c.d();
  DriftField out(n, d);
  const double inv_n = 1.0 / static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double r = pair_distance(c, i, j);
      const double s = force_over_r(r, i, j) * inv_n;
      for (std::size_t k = 0; k < d; ++k) {
        const double f = s * (c(i, k) - c(j, k));
        out(i, k) += f;
        out(j, k) -= f;
      }
    }
  }
  return out;
}

}  // namespace

double global_potential(const Configuration& c, const LJParams& p) {
  double sum = 0.0;
  for_each_pair(c, [&](std::size_t i, std::size_t j, double r) {
    require_distinct(r, i, j);
    sum += lj_value(p, r);
  });
  return sum / static_cast<double>(c.n());
}

double global_potential(const Configuration& c, const RegularizedLJ& reg) {
  double sum = 0.0;
  for_each_pair(c, [&](std::size_t, std::size_t, double r) { sum += reg.value(r); });
  return sum / static_cast<double>(c.n());
}

DriftField interaction_drift(const Configuration& c, const LJParams& p) {
  return accumulate_pair_drift(c, [&](double r, std::size_t i, std::size_t j) {
    require_distinct(r, i, j);
    return lj_force_radial(p, r) / r;
  });
}

DriftField interaction_drift(const Configuration& c, const RegularizedLJ& reg) {
  return accumulate_pair_drift(c, [&](double r, std::size_t, std::size_t) {
    return r == 0.0 ? 0.0 : reg.force_radial(r) / r;
  });
}

DriftField extra_drift(const Configuration& c, const SystemSpec& s, std::optional<double> eps) {
  if (const auto* v = std::get_if<VortexDrift>(&s.extra_drift)) {
    return eps ? vortex_drift_regularized(c, v->gammas, *eps) : vortex_drift(c, v->gammas);
  }
  DriftField out(c.n(), c.d());
  if (const auto* lin = std::get_if<LinearDrift>(&s.extra_drift)) {
    for (std::size_t k = 0; k < out.values().size(); ++k) {
      out.values()[k] = -lin->rate * c.values()[k];
    }
  }
  return out;
}

DriftField system_drift(const Configuration& c, const SystemSpec& s, std::optional<double> eps) {
  if (c.n() != s.n || c.d() != s.d) {
    throw PreconditionError("system_drift: configuration shape does not match SystemSpec");
  }
  DriftField out(c.n(), c.d());
  if (s.potential) {
    out = eps ? interaction_drift(c, RegularizedLJ(*s.potential, *eps))
              : interaction_drift(c, *s.potential);
  }
  if (!std::holds_alternative<std::monostate>(s.extra_drift)) {
    const DriftField extra = extra_drift(c, s, eps);
    for (std::size_t k = 0; k < out.values().size(); ++k) out.values()[k] += extra.values()[k];
  }
  return out;
}

double min_pair_distance(const Configuration& c) {
  if (c.n() < 2) throw DomainError("min_pair_distance: need at least two particles");
  double m = std::numeric_limits<double>::infinity();
  for_each_pair(c, [&](std::size_t, std::size_t, double r) { m = std::min(m, r); });
  return m;
}

double mean_interaction_energy(const Configuration& c, const LJParams& p) {
  double sum = 0.0;
  for_each_pair(c, [&](std::size_t i, std::size_t j, double r) {
    require_distinct(r, i, j);
    sum += std::abs(lj_value(p, r));
  });
  return sum;
}

std::array<double, 2> vortex_kernel(double x1, double x2) {
  const double r2 = x1 * x1 + x2 * x2;
  if (r2 == 0.0) throw DomainError("vortex_kernel: zero displacement");
  const double s = 1.0 / (2.0 * std::numbers::pi * r2);
  return {-x2 * s, x1 * s};
}

std::array<double, 2> vortex_kernel_regularized(double x1, double x2, double eps) {
  const double r2 = x1 * x1 + x2 * x2;
  if (r2 >= eps * eps) return vortex_kernel(x1, x2);
  const double s = 1.0 / (2.0 * std::numbers::pi * eps * eps);
  return {-x2 * s, x1 * s};
}

namespace {

template <class Kernel>
DriftField accumulate_vortex(const Configuration& c, std::span<const double> gammas,
                             Kernel&& kernel) {
  if (c.d() != 2) throw DomainError("vortex_drift: requires d = 2");
  if (gammas.size() != c.n()) throw PreconditionError("vortex_drift: one gamma per particle");
  DriftField out(c.n(), 2);
  for (std::size_t i = 0; i < c.n(); ++i) {
    for (std::size_t j = i + 1; j < c.n(); ++j) {
      // K is odd, so the (j, i) term is the negative of the (i, j) term.
      const auto k = kernel(c(i, 0) - c(j, 0), c(i, 1) - c(j, 1), i, j);
      const double w = gammas[i] * gammas[j];
      out(i, 0) += w * k[0];
      out(i, 1) += w * k[1];
      out(j, 0) -= w * k[0];
      out(j, 1) -= w * k[1];
    }
  }
  return out;
}

}  // namespace

DriftField vortex_drift(const Configuration& c, std::span<const double> gammas) {
  return accumulate_vortex(c, gammas, [](double x1, double x2, std::size_t i, std::size_t j) {
    if (x1 == 0.0 && x2 == 0.0) require_distinct(0.0, i, j);
    return vortex_kernel(x1, x2);
  });
}

DriftField vortex_drift_regularized(const Configuration& c, std::span<const double> gammas,
                                     double eps) {
  if (!(eps > 0.0)) throw PreconditionError("vortex_drift_regularized: eps must be > 0");
  return accumulate_vortex(c, gammas, [eps](double x1, double x2, std::size_t, std::size_t) {
    return vortex_kernel_regularized(x1, x2, eps);
  });
}

double global_laplacian(const Configuration& c, const RegularizedLJ& reg) {
  double sum = 0.0;
  const int d = static_cast<int>(c.d());
  for_each_pair(c, [&](std::size_t, std::size_t, double r) { sum += reg.laplacian(r, d); });
  return 2.0 * sum / static_cast<double>(c.n());
}

double global_laplacian(const Configuration& c, const LJParams& p) {
  double sum = 0.0;
  const int d = static_cast<int>(c.d());
  for_each_pair(c, [&](std::size_t i, std::size_t j, double r) {
    require_distinct(r, i, j);
    sum += lj_laplacian(p, r, d);
  });
  return 2.0 * sum / static_cast<double>(c.n());
}

double inner(const DriftField& a, const DriftField& b) {
  if (a.values().size() != b.values().size()) throw PreconditionError("inner: shape mismatch");
  double s = 0.0;
  for (std::size_t k = 0; k < a.values().size(); ++k) s += a.values()[k] * b.values()[k];
  return s;
}

}  // namespace ljsde

#pragma once

// N-particle configurations in R^d and the pairwise quantities built on
// them: the global potential Phi(x) = (1/N) sum_{i<j} V(x^i - x^j), the
// mean-field drift, the boundary proximity m(x) = min_{i<j} |x^i - x^j|,
// and the optional non-gradient drift plug-ins.

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "ljsde/potential.hpp"

namespace ljsde {

// Row-major n x d array. The tag keeps positions and velocity fields apart.
template <class Tag>
class ParticleArray {
 public:
  ParticleArray() = default;
  ParticleArray(std::size_t n, std::size_t d) : n_(n), d_(d), values_(n * d, 0.0) {}
  ParticleArray(std::size_t n, std::size_t d, std::vector<double> values);

  std::size_t n() const noexcept { return n_; }
  std::size_t d() const noexcept { return d_; }

  std::span<double> row(std::size_t i) { return {values_.data() + i * d_, d_}; }
  std::span<const double> row(std::size_t i) const { return {values_.data() + i * d_, d_}; }

  double& operator()(std::size_t i, std::size_t k) { return values_[i * d_ + k]; }
  double operator()(std::size_t i, std::size_t k) const { return values_[i * d_ + k]; }

  std::span<double> values() noexcept { return values_; }
  std::span<const double> values() const noexcept { return values_; }

  bool all_finite() const noexcept;

  bool operator==(const ParticleArray&) const = default;

 private:
  std::size_t n_ = 0;
  std::size_t d_ = 0;
  std::vector<double> values_;
};

struct PositionTag {};
struct VelocityTag {};

// Invariants enforced by make_configuration: n >= 1, d >= 1, all finite.
using Configuration = ParticleArray<PositionTag>;
using DriftField = ParticleArray<VelocityTag>;

Configuration make_configuration(std::size_t n, std::size_t d, std::vector<double> values);

// Weighted 2-d point vortices: row i += sum_{j != i} g_i g_j K(x^i - x^j).
struct VortexDrift {
  std::vector<double> gammas;
};
// mu(x) = -rate * x, applied per particle.
struct LinearDrift {
  double rate = 1.0;
};
using ExtraDrift = std::variant<std::monostate, VortexDrift, LinearDrift>;

struct SystemSpec {
  std::size_t n = 2;
  std::size_t d = 3;
  double sigma = 0.0;
  // Absent means no pair interaction (used by the linear-drift oracle).
  std::optional<LJParams> potential = LJParams::classic();
  ExtraDrift extra_drift{};

  // Throws PreconditionError on sigma < 0, n or d zero, vortex with d != 2
  // or a gamma count different from n.
  void validate() const;
};

double global_potential(const Configuration& c, const LJParams& p);
double global_potential(const Configuration& c, const RegularizedLJ& reg);

// -(1/N) sum_{j != i} grad V(x^i - x^j) per row. Each pair force is
// computed once and applied with opposite signs, so rows sum to zero.
DriftField interaction_drift(const Configuration& c, const LJParams& p);
DriftField interaction_drift(const Configuration& c, const RegularizedLJ& reg);

// Interaction drift plus the configured extra drift. With eps present every
// singular term is replaced by its regularized counterpart.
DriftField system_drift(const Configuration& c, const SystemSpec& s,
                        std::optional<double> eps = std::nullopt);

// Extra (non-gradient) part of the drift only; zero field for monostate.
DriftField extra_drift(const Configuration& c, const SystemSpec& s,
                       std::optional<double> eps = std::nullopt);

// m(x). The Euclidean distance of x to the coincidence set in R^{Nd} is
// m(x) / sqrt(2); thresholds in this library are expressed in m(x) units.
double min_pair_distance(const Configuration& c);

double mean_interaction_energy(const Configuration& c, const LJParams& p);

// Biot-Savart kernel of the 2-d logarithmic potential:
// K(x) = (1/2pi) (-x2, x1) / |x|^2.
std::array<double, 2> vortex_kernel(double x1, double x2);
// Regularization: K(x) |x|^2 / eps^2 inside |x| < eps (linear, Lipschitz).
std::array<double, 2> vortex_kernel_regularized(double x1, double x2, double eps);

DriftField vortex_drift(const Configuration& c, std::span<const double> gammas);
DriftField vortex_drift_regularized(const Configuration& c, std::span<const double> gammas,
                                     double eps);

// Laplacian of Phi^eps in R^{Nd}: (2/N) sum_{i<j} Delta V_eps(x^i - x^j).
double global_laplacian(const Configuration& c, const RegularizedLJ& reg);
double global_laplacian(const Configuration& c, const LJParams& p);

// Squared norm of a field, sum over all rows and components.
template <class Tag>
double squared_norm(const ParticleArray<Tag>& a) {
  double s = 0.0;
  for (double v : a.values()) s += v * v;
  return s;
}

// Row-wise inner product sum_i <a_i, b_i>.
double inner(const DriftField& a, const DriftField& b);

}  // namespace ljsde

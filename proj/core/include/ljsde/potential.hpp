#pragma once

// Closed-form Lennard-Jones quantities
//
//   V(r) = A / r^alpha - B / r^beta,      alpha > beta >= 0,
//
// together with the second-order Taylor splice used to regularize the
// potential on [0, epsilon], and the scalar bounds (H, delta') used by the
// inequality oracles. Every radial quantity has a scalar form taking the
// radius and a vector form taking the displacement x = x^i - x^j.

#include <optional>
#include <span>
#include <vector>

namespace ljsde {

class LJParams {
 public:
  // Throws PreconditionError unless A > 0, B >= 0 and alpha > beta >= 0.
  LJParams(double A, double B, double alpha, double beta);

  // The classical 12-6 law with A = B = 1.
  static LJParams classic() { return {1.0, 1.0, 12.0, 6.0}; }

  double A() const noexcept { return A_; }
  double B() const noexcept { return B_; }
  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }

  bool has_attraction() const noexcept { return beta_ > 0.0 && B_ > 0.0; }

  bool operator==(const LJParams&) const = default;

 private:
  double A_;
  double B_;
  double alpha_;
  double beta_;
};

struct LJMinimum {
  // Equilibrium distance; absent for pure repulsion (beta == 0 or B == 0).
  std::optional<double> r_bar;
  double v_min = 0.0;
  double delta_prime = 0.0;  // -v_min, zero when there is no minimum
};

struct AttractiveBound {
  double H = 0.0;          // max |F(r)| over the attractive branch r > r0
  double r_at_max = 0.0;   // stationary radius of F; 0 when H == 0
};

// Characteristic length: r_bar when it exists, else A^(1/alpha) (where the
// repulsive term equals one). Used to scale hard floors and sampling ranges.
double length_scale(const LJParams& p);

double lj_value(const LJParams& p, double r);
// V'(r) and V''(r).
double lj_derivative(const LJParams& p, double r);
double lj_second_derivative(const LJParams& p, double r);
// Signed radial force F(r) = -V'(r); positive means repulsive.
double lj_force_radial(const LJParams& p, double r);
// Radial Laplacian of V in dimension d.
double lj_laplacian(const LJParams& p, double r, int d);

// F(x) = F(|x|) x / |x|.
std::vector<double> lj_force(const LJParams& p, std::span<const double> x);

LJMinimum lj_minimum(const LJParams& p);
AttractiveBound attractive_bound(const LJParams& p);

// V spliced by its second-order Taylor polynomial around r = epsilon.
// The splice is C^1 at epsilon by construction; V''(epsilon) is matched too.
class RegularizedLJ {
 public:
  RegularizedLJ(LJParams params, double epsilon);

  const LJParams& params() const noexcept { return params_; }
  double epsilon() const noexcept { return epsilon_; }

  double value(double r) const;
  double derivative(double r) const;
  double force_radial(double r) const;
  // Radial Laplacian; singular at r = 0 for d >= 2 (throws DomainError).
  double laplacian(double r, int d) const;

  // Vector force; returns the zero vector at x = 0.
  std::vector<double> force(std::span<const double> x) const;

 private:
  LJParams params_;
  double epsilon_;
  // Taylor coefficients at epsilon: V(eps), V'(eps), V''(eps).
  double v0_;
  double v1_;
  double v2_;
};

double reg_value(const RegularizedLJ& reg, double r);
std::vector<double> reg_force(const RegularizedLJ& reg, std::span<const double> x);

}  // namespace ljsde

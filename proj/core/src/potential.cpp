#include "ljsde/potential.hpp"

#include <cmath>
#include <string>

#include "ljsde/errors.hpp"

namespace ljsde {

namespace {

// Below this fraction of the length scale the unregularized terms overflow
// or lose all precision.
constexpr double kHardFloor = 1e-12;

void check_radius(const LJParams& p, double r, const char* what) {
  if (!(r > 0.0) || !std::isfinite(r)) {
    throw DomainError(std::string(what) + ": radius must be positive and finite, got " +
                      std::to_string(r));
  }
  if (r < kHardFloor * length_scale(p)) {
    throw DomainError(std::string(what) + ": radius " + std::to_string(r) +
                      " below hard floor");
  }
}

double norm(std::span<const double> x) {
  double s = 0.0;
  for (double v : x) s += v * v;
  return std::sqrt(s);
}

}  // namespace

LJParams::LJParams(double A, double B, double alpha, double beta)
    : A_(A), B_(B), alpha_(alpha), beta_(beta) {
  if (!(A > 0.0) || !std::isfinite(A)) throw PreconditionError("LJParams: A must be > 0");
  if (!(B >= 0.0) || !std::isfinite(B)) throw PreconditionError("LJParams: B must be >= 0");
  if (!(beta >= 0.0) || !std::isfinite(beta))
    throw PreconditionError("LJParams: beta must be >= 0");
  if (!(alpha > beta) || !std::isfinite(alpha))
    throw PreconditionError("LJParams: alpha must be strictly greater than beta");
}

double length_scale(const LJParams& p) {
  if (p.has_attraction()) {
    return std::pow(p.A() * p.alpha() / (p.B() * p.beta()), 1.0 / (p.alpha() - p.beta()));
  }
  return std::pow(p.A(), 1.0 / p.alpha());
}

double lj_value(const LJParams& p, double r) {
  check_radius(p, r, "lj_value");
  return p.A() / std::pow(r, p.alpha()) - p.B() / std::pow(r, p.beta());
}

double lj_derivative(const LJParams& p, double r) {
  check_radius(p, r, "lj_derivative");
  return -p.alpha() * p.A() / std::pow(r, p.alpha() + 1.0) +
         p.beta() * p.B() / std::pow(r, p.beta() + 1.0);
}

double lj_second_derivative(const LJParams& p, double r) {
  check_radius(p, r, "lj_second_derivative");
  const double a = p.alpha();
  const double b = p.beta();
  return a * (a + 1.0) * p.A() / std::pow(r, a + 2.0) -
         b * (b + 1.0) * p.B() / std::pow(r, b + 2.0);
}

double lj_force_radial(const LJParams& p, double r) {
  check_radius(p, r, "lj_force");
  return p.alpha() * p.A() / std::pow(r, p.alpha() + 1.0) -
         p.beta() * p.B() / std::pow(r, p.beta() + 1.0);
}

double lj_laplacian(const LJParams& p, double r, int d) {
  if (d < 1) throw PreconditionError("lj_laplacian: dimension must be >= 1");
  check_radius(p, r, "lj_laplacian");
  const double a = p.alpha();
  const double b = p.beta();
  return a * p.A() * (a - d + 2.0) / std::pow(r, a + 2.0) -
         b * p.B() * (b - d + 2.0) / std::pow(r, b + 2.0);
}

std::vector<double> lj_force(const LJParams& p, std::span<const double> x) {
  const double r = norm(x);
  if (r == 0.0) throw DomainError("lj_force: zero displacement");
  const double scale = lj_force_radial(p, r) / r;
  std::vector<double> out(x.begin(), x.end());
  for (double& v : out) v *= scale;
  return out;
}

LJMinimum lj_minimum(const LJParams& p) {
  LJMinimum m;
  if (!p.has_attraction()) return m;
  const double a = p.alpha();
  const double b = p.beta();
  m.r_bar = std::pow(p.A() * a / (p.B() * b), 1.0 / (a - b));
  m.v_min = (p.B() / a) * std::pow(b * p.B() / (a * p.A()), b / (a - b)) * (b - a);
  m.delta_prime = -m.v_min;
  return m;
}

AttractiveBound attractive_bound(const LJParams& p) {
  AttractiveBound h;
  if (!p.has_attraction()) return h;
  const double a = p.alpha();
  const double b = p.beta();
  // F'(r) = 0 at the inflection point of V.
  h.r_at_max = std::pow(a * p.A() * (a + 1.0) / (b * p.B() * (b + 1.0)), 1.0 / (a - b));
  h.H = std::abs(lj_force_radial(p, h.r_at_max));
  return h;
}

RegularizedLJ::RegularizedLJ(LJParams params, double epsilon)
    : params_(params), epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw PreconditionError("RegularizedLJ: epsilon must be > 0");
  }
  v0_ = lj_value(params_, epsilon_);
  v1_ = lj_derivative(params_, epsilon_);
  v2_ = lj_second_derivative(params_, epsilon_);
}

double RegularizedLJ::value(double r) const {
  if (r < 0.0) throw DomainError("RegularizedLJ::value: negative radius");
  if (r >= epsilon_) return lj_value(params_, r);
  const double h = r - epsilon_;
  return v0_ + v1_ * h + 0.5 * v2_ * h * h;
}

double RegularizedLJ::derivative(double r) const {
  if (r < 0.0) throw DomainError("RegularizedLJ::derivative: negative radius");
  if (r >= epsilon_) return lj_derivative(params_, r);
  return v1_ + v2_ * (r - epsilon_);
}

double RegularizedLJ::force_radial(double r) const { return -derivative(r); }

double RegularizedLJ::laplacian(double r, int d) const {
  if (d < 1) throw PreconditionError("RegularizedLJ::laplacian: dimension must be >= 1");
  if (r >= epsilon_) return lj_laplacian(params_, r, d);
  if (d == 1) return v2_;
  if (r <= 0.0) throw DomainError("RegularizedLJ::laplacian: singular at the origin for d >= 2");
  return v2_ + (d - 1.0) * derivative(r) / r;
}

std::vector<double> RegularizedLJ::force(std::span<const double> x) const {
  const double r = norm(x);
  std::vector<double> out(x.size(), 0.0);
  if (r == 0.0) return out;
  const double scale = force_radial(r) / r;
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = x[k] * scale;
  return out;
}

double reg_value(const RegularizedLJ& reg, double r) { return reg.value(r); }

std::vector<double> reg_force(const RegularizedLJ& reg, std::span<const double> x) {
  return reg.force(x);
}

}  // namespace ljsde

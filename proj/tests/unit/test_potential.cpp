#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "ljsde/errors.hpp"
#include "ljsde/potential.hpp"
#include "oracles.hpp"

using namespace ljsde;

namespace {
const LJParams kClassic = LJParams::classic();
const double kRbar = std::pow(2.0, 1.0 / 6.0);

std::vector<double> v3(double a, double b, double c) { return {a, b, c}; }
}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(LJParams(0.0, 1.0, 12.0, 6.0), PreconditionError);
  CHECK_THROWS_AS(LJParams(1.0, -1.0, 12.0, 6.0), PreconditionError);
  CHECK_THROWS_AS(LJParams(1.0, 1.0, 6.0, 6.0), PreconditionError);
  CHECK_THROWS_AS(LJParams(1.0, 1.0, 6.0, -1.0), PreconditionError);
  CHECK_NOTHROW(LJParams(1.0, 0.0, 12.0, 0.0));
}

TEST_CASE("lj_value") {
  CHECK(lj_value(kClassic, 1.0) == 0.0);
  CHECK(lj_value(kClassic, kRbar) == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(lj_value(kClassic, 0.5) == 4032.0);
  CHECK_THROWS_AS(lj_value(kClassic, 0.0), DomainError);
  CHECK_THROWS_AS(lj_value(kClassic, -1.0), DomainError);
  CHECK_THROWS_AS(lj_value(kClassic, 1e-13), DomainError);
}

TEST_CASE("lj_force") {
  auto f = lj_force(kClassic, v3(1, 0, 0));
  CHECK(f[0] == 6.0);
  CHECK(f[1] == 0.0);
  CHECK(f[2] == 0.0);

  f = lj_force(kClassic, v3(kRbar, 0, 0));
  CHECK(std::abs(f[0]) < 1e-12);

  f = lj_force(kClassic, v3(0, 2, 0));
  CHECK(f[0] == 0.0);
  CHECK(f[1] == doctest::Approx(12.0 / 8192.0 - 6.0 / 128.0).epsilon(1e-14));
  CHECK(f[1] == doctest::Approx(-0.04541015625).epsilon(1e-14));
  CHECK(f[2] == 0.0);

  CHECK_THROWS_AS(lj_force(kClassic, v3(0, 0, 0)), DomainError);
}

TEST_CASE("force is radial and matches the derivative") {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int k = 0; k < 100; ++k) {
    const auto x = v3(u(gen), u(gen), u(gen));
    const double r = std::hypot(x[0], x[1], x[2]);
    if (r < 0.4) continue;
    const auto f = lj_force(kClassic, x);
    const double radial = lj_force_radial(kClassic, r);
    for (int q = 0; q < 3; ++q) CHECK(f[q] == doctest::Approx(radial * x[q] / r).epsilon(1e-13));
    CHECK(radial == doctest::Approx(-lj_derivative(kClassic, r)).epsilon(1e-14));
  }
}

TEST_CASE("lj_laplacian") {
  CHECK(lj_laplacian(kClassic, 1.0, 3) == 102.0);
  CHECK(lj_laplacian(LJParams(1.0, 0.0, 2.0, 0.0), 1.0, 4) == 0.0);
  CHECK(lj_laplacian(kClassic, 2.0, 3) ==
        doctest::Approx(132.0 / 16384.0 - 30.0 / 256.0).epsilon(1e-14));
  CHECK_THROWS_AS(lj_laplacian(kClassic, 0.0, 3), DomainError);
}

TEST_CASE("lj_minimum") {
  const auto m = lj_minimum(kClassic);
  REQUIRE(m.r_bar);
  CHECK(std::abs(*m.r_bar - kRbar) < 1e-14);
  CHECK(std::abs(m.v_min + 0.25) < 1e-14);
  CHECK(m.delta_prime == doctest::Approx(0.25));

  // (1,1,2,1): V = 1/r^2 - 1/r, minimum at r = 2 with V = -1/4.
  const LJParams p21(1.0, 1.0, 2.0, 1.0);
  const auto m21 = lj_minimum(p21);
  REQUIRE(m21.r_bar);
  CHECK(*m21.r_bar == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(m21.v_min == doctest::Approx(-0.25).epsilon(1e-14));
  CHECK(m21.v_min == doctest::Approx(lj_value(p21, *m21.r_bar)).epsilon(1e-14));

  const auto rep = lj_minimum(LJParams(1.0, 0.0, 12.0, 0.0));
  CHECK_FALSE(rep.r_bar);
  CHECK(rep.delta_prime == 0.0);
}

TEST_CASE("lj_minimum against golden-section search") {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ab(0.5, 3.0);
  std::uniform_real_distribution<double> be(1.0, 8.0);
  std::uniform_real_distribution<double> gap(0.5, 8.0);
  for (int k = 0; k < 50; ++k) {
    const double beta = be(gen);
    const LJParams p(ab(gen), ab(gen), beta + gap(gen), beta);
    const auto m = lj_minimum(p);
    REQUIRE(m.r_bar);
    const auto [x, v] = oracle::golden_min([&](double r) { return lj_value(p, r); },
                                           0.2 * *m.r_bar, 5.0 * *m.r_bar);
    CHECK(oracle::rel_err(*m.r_bar, x) < 1e-5);
    CHECK(std::abs(m.v_min - v) < 1e-10 * std::max(1.0, std::abs(v)));
    CHECK(lj_value(p, *m.r_bar + 1e-3) > m.v_min);
    CHECK(lj_value(p, *m.r_bar - 1e-3) > m.v_min);
    CHECK(std::abs(lj_force_radial(p, *m.r_bar)) < 1e-10 * std::max(1.0, p.A()));
  }
}

TEST_CASE("attractive_bound") {
  const auto h = attractive_bound(kClassic);
  CHECK(h.r_at_max == doctest::Approx(std::pow(26.0 / 7.0, 1.0 / 6.0)).epsilon(1e-14));
  CHECK(h.r_at_max == doctest::Approx(1.24446).epsilon(1e-5));
  CHECK(h.H == doctest::Approx(0.59911).epsilon(1e-5));
  const auto [x, g] = oracle::grid_max([](double r) { return -lj_force_radial(kClassic, r); },
                                       kRbar, 4.0, 200001);
  CHECK(h.H == doctest::Approx(g).epsilon(1e-9));
  CHECK(std::abs(lj_force_radial(kClassic, kRbar + 10.0)) <= h.H);
  CHECK(attractive_bound(LJParams(1.0, 0.0, 12.0, 0.0)).H == 0.0);
}

TEST_CASE("finite differences of lj_value") {
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> ab(0.5, 2.0);
  std::uniform_real_distribution<double> be(1.0, 6.0);
  std::uniform_real_distribution<double> gap(1.0, 6.0);
  std::uniform_real_distribution<double> frac(0.3, 5.0);
  for (int k = 0; k < 200; ++k) {
    const double beta = be(gen);
    const LJParams p(ab(gen), ab(gen), beta + gap(gen), beta);
    const double r = frac(gen) * *lj_minimum(p).r_bar;
    auto g = [&](double s) { return lj_value(p, s); };
    const double fd = -oracle::central_diff(g, r, 1e-5 * r);
    CHECK(std::abs(lj_force_radial(p, r) - fd) <= 1e-6 * std::max(std::abs(fd), 1e-3));
    const double lap = oracle::radial_laplacian(g, r, 3, 1e-4 * r);
    CHECK(std::abs(lj_laplacian(p, r, 3) - lap) <= 1e-5 * std::max(std::abs(lap), 1e-2));
  }
}

TEST_CASE("dominance of the squared force near the origin") {
  for (double frac : {1e-2, 1e-3}) {
    for (int d = 1; d <= 4; ++d) {
      const double r = frac * kRbar;
      const double f = lj_force_radial(kClassic, r);
      CHECK(f * f > std::abs(lj_laplacian(kClassic, r, d)));
    }
  }
}

TEST_CASE("regularized potential") {
  const RegularizedLJ reg(kClassic, 1.0);
  CHECK(reg.value(1.0) == 0.0);
  CHECK(reg.value(0.0) == doctest::Approx(63.0).epsilon(1e-14));
  CHECK(reg_value(reg, 2.0) == lj_value(kClassic, 2.0));

  const auto f = reg_force(reg, v3(1, 0, 0));
  CHECK(f[0] == doctest::Approx(6.0).epsilon(1e-14));
  const auto f0 = reg_force(reg, v3(0, 0, 0));
  for (double c : f0) CHECK(std::isfinite(c));
  const RegularizedLJ half(kClassic, 0.5);
  CHECK(reg_force(half, v3(1, 0, 0))[0] == 6.0);

  CHECK_THROWS_AS(RegularizedLJ(kClassic, 0.0), PreconditionError);
}

TEST_CASE("splice is C1 at epsilon and its force is monotone") {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> frac(0.2, 0.95);
  for (int k = 0; k < 20; ++k) {
    const double eps = frac(gen) * kRbar;
    const RegularizedLJ reg(kClassic, eps);
    // One-sided limits from below, first-order corrected.
    const double h = 1e-9 * eps;
    const double v = lj_value(kClassic, eps);
    const double dv = lj_derivative(kClassic, eps);
    const double ddv = lj_second_derivative(kClassic, eps);
    const double vscale = std::abs(v) + eps * std::abs(dv);
    CHECK(std::abs(reg.value(eps - h) - (v - dv * h)) <= 1e-10 * vscale);
    const double dscale = std::abs(dv) + eps * std::abs(ddv);
    CHECK(std::abs(reg.derivative(eps - h) - (dv - ddv * h)) <= 1e-10 * dscale);
    CHECK(reg.value(eps) == v);
    CHECK(reg.force_radial(eps) == lj_force_radial(kClassic, eps));
    double prev = std::abs(reg.force_radial(1e-9 * kRbar));
    for (int g = 1; g <= 1000; ++g) {
      const double r = kRbar * g / 1001.0;
      const double m = std::abs(reg.force_radial(r));
      CHECK(m <= prev * (1.0 + 1e-12));
      prev = m;
    }
  }
}

TEST_CASE("regularized laplacian matches finite differences inside the splice") {
  const RegularizedLJ reg(kClassic, 0.8);
  for (double r : {0.2, 0.5, 0.7}) {
    auto g = [&](double s) { return reg.value(s); };
    CHECK(reg.laplacian(r, 3) ==
          doctest::Approx(oracle::radial_laplacian(g, r, 3, 1e-4)).epsilon(1e-5));
  }
  CHECK_THROWS_AS(reg.laplacian(0.0, 3), DomainError);
  CHECK(std::isfinite(reg.laplacian(0.0, 1)));
}

#include "ljsde/lemma_oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ljsde/errors.hpp"

namespace ljsde {

TripleConstants TripleConstants::from(const LJParams& p) {
  return with_H(p, attractive_bound(p).H);
}

TripleConstants TripleConstants::with_H(const LJParams& p, double H) {
  const auto m = lj_minimum(p);
  if (!m.r_bar) throw PreconditionError("TripleConstants: potential has no equilibrium distance");
  TripleConstants k;
  k.H = H;
  k.r0 = *m.r_bar;
  k.C = std::max(2.0 * H, std::abs(lj_force_radial(p, 0.5 * k.r0)) + H);
  return k;
}

std::string_view to_string(TripleCase c) {
  switch (c) {
    case TripleCase::all_attr: return "all_attr";
    case TripleCase::all_rep: return "all_rep";
    case TripleCase::mixed_1rep: return "mixed_1rep";
    case TripleCase::mixed_2rep: return "mixed_2rep";
  }
  return "unknown";
}

namespace {

struct PairForce {
  std::array<double, 8> v{};  // d <= 8 on this path
  double magnitude = 0.0;
  double distance = 0.0;
};

PairForce pair_force(const LJParams& p, std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() > 8) {
    throw PreconditionError("pair_force: dimension mismatch or d > 8");
  }
  PairForce f;
  double r2 = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    f.v[k] = a[k] - b[k];
    r2 += f.v[k] * f.v[k];
  }
  f.distance = std::sqrt(r2);
  if (f.distance == 0.0) throw DomainError("coincident points");
  const double radial = lj_force_radial(p, f.distance);
  for (std::size_t k = 0; k < a.size(); ++k) f.v[k] *= radial / f.distance;
  f.magnitude = std::abs(radial);
  return f;
}

double dot(const PairForce& a, const PairForce& b, std::size_t d) {
  double s = 0.0;
  for (std::size_t k = 0; k < d; ++k) s += a.v[k] * b.v[k];
  return s;
}

double m_bound(const TripleConstants& k, double fij, double fik, double fjk) {
  return k.H * k.H + k.C * std::max({fij, fik, fjk});
}

TripleCase classify(const TripleConstants& k, double rij, double rik, double rjk) {
  const int repulsive = (rij < k.r0) + (rik < k.r0) + (rjk < k.r0);
  switch (repulsive) {
    case 0: return TripleCase::all_attr;
    case 1: return TripleCase::mixed_1rep;
    case 2: return TripleCase::mixed_2rep;
    default: return TripleCase::all_rep;
  }
}

}  // namespace

TripleReport triple_check(const LJParams& p, std::span<const double> xi,
                          std::span<const double> xj, std::span<const double> xk) {
  return triple_check(p, TripleConstants::from(p), xi, xj, xk);
}

TripleReport triple_check(const LJParams& p, const TripleConstants& k, std::span<const double> xi,
                          std::span<const double> xj, std::span<const double> xk) {
  const std::size_t d = xi.size();
  const PairForce fij = pair_force(p, xi, xj);
  const PairForce fik = pair_force(p, xi, xk);
  const PairForce fjk = pair_force(p, xj, xk);
  TripleReport rep;
  rep.lhs = dot(fij, fik, d) - dot(fij, fjk, d);
  rep.m_bound = m_bound(k, fij.magnitude, fik.magnitude, fjk.magnitude);
  rep.holds = rep.lhs >= -rep.m_bound;
  rep.case_tag = classify(k, fij.distance, fik.distance, fjk.distance);
  return rep;
}

SumSquaresReport sum_squares_check(const LJParams& p, const Configuration& c) {
  return sum_squares_check(p, TripleConstants::from(p), c);
}

SumSquaresReport sum_squares_check(const LJParams& p, const TripleConstants& k,
                                   const Configuration& c) {
  const std::size_t n = c.n();
  const std::size_t d = c.d();
  if (n < 2) throw PreconditionError("sum_squares_check: need at least two particles");
  std::vector<PairForce> f(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i != j) f[i * n + j] = pair_force(p, c.row(i), c.row(j));
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t q = 0; q < d; ++q) {
        if (f[i * n + j].v[q] != -f[j * n + i].v[q]) {
          throw std::logic_error("sum_squares_check: pair force is not antisymmetric");
        }
      }
    }
  }
  SumSquaresReport rep;
  for (std::size_t i = 0; i < n; ++i) {
    std::array<double, 8> total{};
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      for (std::size_t q = 0; q < d; ++q) total[q] += f[i * n + j].v[q];
    }
    for (std::size_t q = 0; q < d; ++q) rep.lhs += total[q] * total[q];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double m = f[i * n + j].magnitude;
      rep.rhs += m * m;
      for (std::size_t l = j + 1; l < n; ++l) {
        rep.rhs -= 2.0 * m_bound(k, m, f[i * n + l].magnitude, f[j * n + l].magnitude);
      }
    }
  }
  rep.holds = rep.lhs >= rep.rhs;
  return rep;
}

double h3_expression(const LJParams& p, const Configuration& c, double sigma) {
  const DriftField grad = interaction_drift(c, p);
  return -squared_norm(grad) + 0.5 * sigma * sigma * global_laplacian(c, p);
}

double h3_expression(const SystemSpec& s, const Configuration& c) {
  if (!s.potential) throw PreconditionError("h3_expression: system has no pair potential");
  double value = h3_expression(*s.potential, c, s.sigma);
  if (!std::holds_alternative<std::monostate>(s.extra_drift)) {
    // interaction_drift is -grad Phi.
    value -= inner(extra_drift(c, s), interaction_drift(c, *s.potential));
  }
  return value;
}

std::vector<double> h3_scan_levels() {
  std::vector<double> levels;
  for (int j = 0; j <= 26; ++j) levels.push_back(0.05 * std::exp2(j / 4.0));
  levels.push_back(5.0);
  return levels;
}

H3Report h3_scan(const SystemSpec& s, std::size_t samples, Rng& rng) {
  s.validate();
  if (!s.potential) throw PreconditionError("h3_scan: system has no pair potential");
  if (s.n < 2) throw PreconditionError("h3_scan: need at least two particles");
  if (samples < 1) throw PreconditionError("h3_scan: samples must be >= 1");
  const LJParams& p = *s.potential;
  const double rbar = length_scale(p);
  const auto levels = h3_scan_levels();
  // Indices of 0.05 and 0.2 in the level table.
  constexpr std::size_t kNear = 0;
  constexpr std::size_t kFar = 8;

  H3Report rep;
  rep.shapes = samples;
  rep.eta_estimate = -std::numeric_limits<double>::infinity();
  rep.strata.resize(levels.size());
  for (std::size_t l = 0; l < levels.size(); ++l) {
    rep.strata[l].m_over_rbar = levels[l];
    rep.strata[l].max = -std::numeric_limits<double>::infinity();
  }

  std::vector<double> values(s.n * s.d);
  std::vector<double> at_level(levels.size());
  for (std::size_t sample = 0; sample < samples; ++sample) {
    double m = 0.0;
    Configuration shape;
    do {
      rng.fill_normal(values);
      shape = make_configuration(s.n, s.d, values);
      m = min_pair_distance(shape);
    } while (!(m > 0.0));
    for (std::size_t l = 0; l < levels.size(); ++l) {
      Configuration x = shape;
      const double scale = levels[l] * rbar / m;
      for (double& v : x.values()) v *= scale;
      const double e = h3_expression(s, x);
      at_level[l] = e;
      rep.strata[l].mean += e / static_cast<double>(samples);
      rep.strata[l].max = std::max(rep.strata[l].max, e);
      if (e > rep.eta_estimate) {
        rep.eta_estimate = e;
        rep.argmax_m_over_rbar = levels[l];
      }
    }
    if (!(at_level[kNear] < at_level[kFar])) ++rep.monotone_failures;
  }
  rep.singular_monotone = rep.monotone_failures == 0;
  const RStar rs = find_r_star(p, s.sigma, s.n, static_cast<int>(s.d),
                               default_pair_constant(p, s.n));
  rep.r_star = rs.r_star;
  rep.r_star_found = rs.found;
  return rep;
}

double default_pair_constant(const LJParams& p, std::size_t n) {
  if (n < 3) return 0.0;
  const TripleConstants k = TripleConstants::from(p);
  const double nn = static_cast<double>(n);
  return 6.0 * std::max(k.H * k.H, k.C) * (nn - 2.0) / (nn * nn);
}

double pair_eta(const LJParams& p, double r, double sigma, std::size_t n, int d, double c_n) {
  const double f = lj_force_radial(p, r);
  const double nn = static_cast<double>(n);
  return f * f / (nn * nn) - c_n * (1.0 + std::abs(f)) -
         (sigma * sigma / (2.0 * nn)) * 2.0 * lj_laplacian(p, r, d);
}

RStar find_r_star(const LJParams& p, double sigma, std::size_t n, int d, double c_n,
                  double r_min_fraction) {
  if (c_n < 0.0) throw PreconditionError("find_r_star: C_N must be >= 0");
  if (!(r_min_fraction > 0.0 && r_min_fraction < 1.0))
    throw PreconditionError("find_r_star: r_min_fraction must lie in (0, 1)");
  const double rbar = length_scale(p);
  const double lo = r_min_fraction * rbar;
  auto eta = [&](double r) { return pair_eta(p, r, sigma, n, d, c_n); };
  if (!(eta(lo) > 0.0)) return {};

  constexpr int kGrid = 4000;
  const double ratio = std::pow(rbar / lo, 1.0 / kGrid);
  double prev = lo;
  for (int g = 1; g < kGrid; ++g) {
    const double r = lo * std::pow(ratio, g);
    if (!(eta(r) > 0.0)) {
      double a = prev;  // eta(a) > 0
      double b = r;     // eta(b) <= 0
      while (b - a > 1e-12 * rbar) {
        const double mid = 0.5 * (a + b);
        (eta(mid) > 0.0 ? a : b) = mid;
      }
      return {a, true};
    }
    prev = r;
  }
  return {rbar, true};
}

Configuration sample_bounded_configuration(const LJParams& p, std::size_t n, std::size_t d,
                                           Rng& rng, double lo_fraction, double hi_fraction) {
  const auto m = lj_minimum(p);
  const double r0 = m.r_bar.value_or(length_scale(p));
  const double lo = lo_fraction * r0;
  const double hi = hi_fraction * r0;
  std::vector<double> values(n * d);
  while (true) {
    for (double& v : values) v = rng.uniform(0.0, hi);
    bool ok = true;
    for (std::size_t i = 0; i < n && ok; ++i) {
      for (std::size_t j = i + 1; j < n && ok; ++j) {
        double r2 = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
          const double dx = values[i * d + k] - values[j * d + k];
          r2 += dx * dx;
        }
        const double r = std::sqrt(r2);
        ok = r >= lo && r <= hi;
      }
    }
    if (ok) return make_configuration(n, d, values);
  }
}

InequalitySweep triple_sweep(const LJParams& p, const TripleConstants& k, std::size_t samples,
                             std::uint64_t seed, std::size_t d) {
  Rng rng(seed);
  InequalitySweep sweep;
  sweep.samples = samples;
  sweep.worst_slack = std::numeric_limits<double>::infinity();
  sweep.worst_relative_slack = std::numeric_limits<double>::infinity();
  sweep.case_worst_slack.fill(std::numeric_limits<double>::infinity());
  sweep.case_worst_relative_slack.fill(std::numeric_limits<double>::infinity());
  for (std::size_t s = 0; s < samples; ++s) {
    const Configuration x = sample_bounded_configuration(p, 3, d, rng);
    const TripleReport rep = triple_check(p, k, x.row(0), x.row(1), x.row(2));
    const auto c = static_cast<std::size_t>(rep.case_tag);
    ++sweep.case_counts[c];
    if (!rep.holds) {
      ++sweep.violations;
      ++sweep.case_violations[c];
    }
    const double rel = rep.slack() / std::max(rep.m_bound, 1e-300);
    sweep.worst_slack = std::min(sweep.worst_slack, rep.slack());
    sweep.worst_relative_slack = std::min(sweep.worst_relative_slack, rel);
    sweep.case_worst_slack[c] = std::min(sweep.case_worst_slack[c], rep.slack());
    sweep.case_worst_relative_slack[c] = std::min(sweep.case_worst_relative_slack[c], rel);
  }
  return sweep;
}

InequalitySweep sum_squares_sweep(const LJParams& p, const TripleConstants& k, std::size_t n,
                                  std::size_t samples, std::uint64_t seed, std::size_t d) {
  Rng rng(seed);
  InequalitySweep sweep;
  sweep.samples = samples;
  sweep.worst_slack = std::numeric_limits<double>::infinity();
  sweep.worst_relative_slack = std::numeric_limits<double>::infinity();
  for (std::size_t s = 0; s < samples; ++s) {
    const Configuration x = sample_bounded_configuration(p, n, d, rng);
    const SumSquaresReport rep = sum_squares_check(p, k, x);
    if (!rep.holds) ++sweep.violations;
    const double scale = std::max({std::abs(rep.lhs), std::abs(rep.rhs), 1e-300});
    sweep.worst_slack = std::min(sweep.worst_slack, rep.slack());
    sweep.worst_relative_slack = std::min(sweep.worst_relative_slack, rep.slack() / scale);
  }
  return sweep;
}

}  // namespace ljsde

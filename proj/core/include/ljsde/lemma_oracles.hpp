#pragma once

// Brute-force oracles for the pair-force inequalities behind the
// regularity condition of the Lennard-Jones system:
//
//   triple bound     F_ij . (F_ik - F_jk) >= -M(i,j,k),
//                    M = H^2 + max{2H, |F(r0/2)| + H} max{|F_ij|,|F_ik|,|F_jk|}
//   sum of squares   sum_i |sum_{j!=i} F_ij|^2 >= sum_{i<j} |F_ij|^2 - 2 sum_{i<j<k} M(i,j,k)
//   H3 expression    -|grad Phi|^2 + sigma^2/2 Lap Phi (+ mu . grad Phi) <= eta
//
// and the radius r* below which every pair term eta_ij is positive.

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "ljsde/particles.hpp"
#include "ljsde/potential.hpp"
#include "ljsde/rng.hpp"

namespace ljsde {

// Constants entering M(i,j,k). H may be overridden to probe the oracles.
struct TripleConstants {
  double H = 0.0;
  double r0 = 0.0;
  double C = 0.0;  // max{2H, |F(r0/2)| + H}

  // Requires an attractive branch (beta > 0, B > 0).
  static TripleConstants from(const LJParams& p);
  static TripleConstants with_H(const LJParams& p, double H);
};

enum class TripleCase { all_attr, all_rep, mixed_1rep, mixed_2rep };

std::string_view to_string(TripleCase c);

struct TripleReport {
  double lhs = 0.0;      // F_ij . (F_ik - F_jk)
  double m_bound = 0.0;  // M(i,j,k)
  bool holds = false;    // lhs >= -M
  TripleCase case_tag = TripleCase::all_attr;

  double slack() const { return lhs + m_bound; }
};

TripleReport triple_check(const LJParams& p, std::span<const double> xi,
                          std::span<const double> xj, std::span<const double> xk);
TripleReport triple_check(const LJParams& p, const TripleConstants& k, std::span<const double> xi,
                          std::span<const double> xj, std::span<const double> xk);

struct SumSquaresReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;

  double slack() const { return lhs - rhs; }
};

SumSquaresReport sum_squares_check(const LJParams& p, const Configuration& c);
SumSquaresReport sum_squares_check(const LJParams& p, const TripleConstants& k,
                                   const Configuration& c);

// Gradient system: -|grad Phi|^2 + (sigma^2 / 2) Lap Phi.
double h3_expression(const LJParams& p, const Configuration& c, double sigma);
// Adds the cross term mu . grad Phi of the configured extra drift.
double h3_expression(const SystemSpec& s, const Configuration& c);

struct H3Stratum {
  double m_over_rbar = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

struct H3Report {
  double eta_estimate = 0.0;          // maximum over every evaluation
  double argmax_m_over_rbar = 0.0;
  std::vector<H3Stratum> strata;      // log-spaced over [0.05, 5] r_bar
  std::size_t shapes = 0;
  // Every shape: value at m = 0.05 r_bar below the value at 0.2 r_bar.
  bool singular_monotone = false;
  std::size_t monotone_failures = 0;
  double r_star = 0.0;
  bool r_star_found = false;
};

// Levels used by h3_scan, as multiples of r_bar.
std::vector<double> h3_scan_levels();

// For each of `samples` random shapes (i.i.d. Gaussian), rescales the
// configuration to every level of m(x) and evaluates h3_expression.
H3Report h3_scan(const SystemSpec& s, std::size_t samples, Rng& rng);

// Per-pair constant absorbing the triple sum,
// 6 max(H^2, C) (N - 2) / N^2, with C from TripleConstants.
double default_pair_constant(const LJParams& p, std::size_t n);

// eta(r) = F(r)^2 / N^2 - C_N (1 + |F(r)|) - (sigma^2 / (2N)) 2 Lap V(r).
double pair_eta(const LJParams& p, double r, double sigma, std::size_t n, int d, double c_n);

struct RStar {
  double r_star = 0.0;
  bool found = false;
};

// Largest r <= r_bar with eta > 0 on [r_min_fraction r_bar, r]; the search
// assumes the singular dominance below r_min. Resolution 1e-12 relative.
RStar find_r_star(const LJParams& p, double sigma, std::size_t n, int d, double c_n,
                  double r_min_fraction = 1e-3);

struct InequalitySweep {
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_slack = 0.0;           // minimum slack
  double worst_relative_slack = 0.0;  // minimum slack / bound scale
  std::array<std::size_t, 4> case_counts{};  // indexed by TripleCase
  std::array<std::size_t, 4> case_violations{};
  std::array<double, 4> case_worst_slack{};  // triple sweeps only
  std::array<double, 4> case_worst_relative_slack{};
};

// Uniform points in a cube of side hi_fraction * r0, rejected until every
// pair distance lies in [lo_fraction r0, hi_fraction r0].
Configuration sample_bounded_configuration(const LJParams& p, std::size_t n, std::size_t d,
                                           Rng& rng, double lo_fraction = 0.4,
                                           double hi_fraction = 4.0);

InequalitySweep triple_sweep(const LJParams& p, const TripleConstants& k, std::size_t samples,
                             std::uint64_t seed, std::size_t d = 3);
InequalitySweep sum_squares_sweep(const LJParams& p, const TripleConstants& k, std::size_t n,
                                  std::size_t samples, std::uint64_t seed, std::size_t d = 3);

}  // namespace ljsde

#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ljsde/io.hpp"
#include "ljsde/lemma_oracles.hpp"
#include "ljsde/rng.hpp"

namespace ljsde::cli {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Relative-tolerance check: slack = tol - err / scale, violated when < 0.
struct Tally {
  CheckRow row;

  explicit Tally(std::string name, std::string tag = "-") {
    row.check = std::move(name);
    row.case_tag = std::move(tag);
    row.worst_slack = kInf;
    row.worst_relative_slack = kInf;
  }
  void add(double slack, double scale) {
    ++row.samples;
    if (!(slack >= 0.0)) ++row.violations;
    row.worst_slack = std::min(row.worst_slack, slack);
    row.worst_relative_slack = std::min(row.worst_relative_slack, slack / std::max(scale, 1e-300));
  }
};

// Parameters drawn around the classical exponents.
LJParams random_params(Rng& rng) {
  const double beta = rng.uniform(1.0, 6.0);
  return {rng.uniform(0.5, 2.0), rng.uniform(0.5, 2.0), beta + rng.uniform(1.0, 6.0), beta};
}

CheckRow check_minimum(const LJParams& p) {
  Tally t("closed_form_minimum");
  const auto m = lj_minimum(p);
  if (!m.r_bar) {
    t.add(-1.0, 1.0);
    return t.row;
  }
  const double r = *m.r_bar;
  t.add(1e-10 - std::abs(lj_force_radial(p, r)), 1e-10);
  t.add(lj_value(p, r + 1e-3) - m.v_min, std::abs(m.v_min));
  t.add(lj_value(p, r - 1e-3) - m.v_min, std::abs(m.v_min));
  t.add(1e-12 * std::max(1.0, std::abs(m.v_min)) - std::abs(lj_value(p, r) - m.v_min), 1e-12);
  return t.row;
}

CheckRow check_attractive_bound(const LJParams& p, double H) {
  Tally t("attractive_bound");
  const double r0 = length_scale(p);
  constexpr int kGrid = 100000;
  for (int g = 1; g <= kGrid; ++g) {
    const double r = r0 * (1.0 + 9.0 * g / kGrid);
    t.add(H * (1.0 + 1e-12) - std::abs(lj_force_radial(p, r)), H);
  }
  return t.row;
}

std::vector<CheckRow> check_derivatives(std::size_t samples, std::uint64_t seed) {
  Tally grad("force_finite_difference");
  Tally lap("laplacian_finite_difference");
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const LJParams p = random_params(rng);
    const double r = rng.uniform(0.3, 5.0) * length_scale(p);
    const int d = 1 + static_cast<int>(rng.bits() % 4);
    const double h = 1e-5 * r;
    const double fd = -(lj_value(p, r + h) - lj_value(p, r - h)) / (2.0 * h);
    const double fs = std::max(std::abs(fd), 1e-3);
    grad.add(1e-6 - std::abs(lj_force_radial(p, r) - fd) / fs, 1e-6);

    const double hl = 1e-4 * r;
    const double v0 = lj_value(p, r);
    const double vp = lj_value(p, r + hl);
    const double vm = lj_value(p, r - hl);
    const double num = (vp - 2.0 * v0 + vm) / (hl * hl) + (d - 1) * (vp - vm) / (2.0 * hl) / r;
    const double ls = std::max(std::abs(num), 1e-2);
    lap.add(1e-5 - std::abs(lj_laplacian(p, r, d) - num) / ls, 1e-5);
  }
  return {grad.row, lap.row};
}

std::vector<CheckRow> check_splice(std::size_t samples, std::uint64_t seed) {
  Tally c1("splice_c1");
  Tally mono("splice_force_monotone");
  Rng rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const LJParams p = random_params(rng);
    const auto m = lj_minimum(p);
    const double r0 = *m.r_bar;
    const double r_max = attractive_bound(p).r_at_max;
    // Monotonicity of the spliced force needs eps below the inflection point.
    const double eps = rng.uniform(0.2, 0.95) * r0;
    const RegularizedLJ reg(p, eps);
    const double h = 1e-9 * eps;
    const double v = lj_value(p, eps);
    const double dv = lj_derivative(p, eps);
    const double ddv = lj_second_derivative(p, eps);
    const double vs = std::abs(v) + eps * std::abs(dv);
    c1.add(1e-10 - std::abs(reg.value(eps - h) - (v - dv * h)) / vs, 1e-10);
    const double ds = std::abs(dv) + eps * std::abs(ddv);
    c1.add(1e-10 - std::abs(reg.derivative(eps - h) - (dv - ddv * h)) / ds, 1e-10);
    c1.add(reg.force_radial(eps) == lj_force_radial(p, eps) ? 0.0 : -1.0, 1.0);

    if (eps >= r_max) continue;
    double prev = std::abs(reg.force_radial(1e-9 * r0));
    for (int g = 1; g <= 1000; ++g) {
      const double r = r0 * g / 1001.0;
      const double f = std::abs(reg.force_radial(r));
      mono.add(prev * (1.0 + 1e-12) - f, prev);
      prev = f;
    }
  }
  return {c1.row, mono.row};
}

std::vector<CheckRow> check_triples(const LJParams& p, const TripleConstants& k,
                                    std::size_t samples, std::uint64_t seed) {
  const InequalitySweep sweep = triple_sweep(p, k, samples, seed);
  std::vector<CheckRow> rows;
  for (auto c : {TripleCase::all_attr, TripleCase::all_rep, TripleCase::mixed_1rep,
                 TripleCase::mixed_2rep}) {
    const auto i = static_cast<std::size_t>(c);
    CheckRow row;
    row.check = "triple_bound";
    row.case_tag = std::string(to_string(c));
    row.samples = sweep.case_counts[i];
    row.violations = sweep.case_violations[i];
    row.worst_slack = sweep.case_worst_slack[i];
    row.worst_relative_slack = sweep.case_worst_relative_slack[i];
    rows.push_back(row);
  }
  return rows;
}

std::vector<CheckRow> check_sum_squares(const LJParams& p, const TripleConstants& k,
                                        std::size_t samples, std::uint64_t seed) {
  std::vector<CheckRow> rows;
  for (std::size_t n = 2; n <= 6; ++n) {
    const InequalitySweep sweep = sum_squares_sweep(p, k, n, samples, mix_seed(seed, n));
    CheckRow row;
    row.check = "sum_of_squares";
    row.case_tag = "N=" + std::to_string(n);
    row.samples = sweep.samples;
    row.violations = sweep.violations;
    row.worst_slack = sweep.worst_slack;
    row.worst_relative_slack = sweep.worst_relative_slack;
    rows.push_back(row);
  }
  return rows;
}

CheckRow check_h3_dominance(const LJParams& p) {
  Tally t("h3_dominance");
  const double rbar = length_scale(p);
  double prev = 0.0;
  bool first = true;
  for (double frac : {0.2, 0.1, 0.05}) {
    const Configuration x = make_configuration(2, 3, {0, 0, 0, frac * rbar, 0, 0});
    const double v = h3_expression(p, x, 1.0);
    if (!first) t.add(10.0 * prev - v, std::abs(v));
    prev = v;
    first = false;
  }
  return t.row;
}

CheckRow check_singular_dominance(const LJParams& p) {
  Tally t("singular_dominance");
  const double rbar = length_scale(p);
  for (std::size_t n = 2; n <= 10; ++n) {
    for (double sigma : {0.25, 0.5, 1.0, 2.0}) {
      for (double frac : {1e-2, 1e-3}) {
        const double r = frac * rbar;
        const double f = lj_force_radial(p, r);
        const double nn = static_cast<double>(n);
        const double lhs = f * f / (nn * nn);
        const double rhs = sigma * sigma / nn * std::abs(lj_laplacian(p, r, 3));
        t.add(lhs - rhs, lhs);
      }
    }
  }
  return t.row;
}

}  // namespace

std::vector<CheckRow> run_verification(const VerifyPlan& plan) {
  const LJParams& p = plan.potential;
  const double H = plan.h_override.value_or(attractive_bound(p).H);
  const TripleConstants k = TripleConstants::with_H(p, H);

  std::vector<CheckRow> rows;
  rows.push_back(check_minimum(p));
  rows.push_back(check_attractive_bound(p, H));
  for (auto& r : check_derivatives(plan.oracle_samples, mix_seed(plan.seed, 1))) rows.push_back(r);
  for (auto& r : check_splice(std::max<std::size_t>(plan.oracle_samples / 10, 1),
                              mix_seed(plan.seed, 2))) {
    rows.push_back(r);
  }
  for (auto& r : check_triples(p, k, plan.triples, mix_seed(plan.seed, 3))) rows.push_back(r);
  for (auto& r : check_sum_squares(p, k, plan.configs, mix_seed(plan.seed, 4))) rows.push_back(r);
  rows.push_back(check_h3_dominance(p));
  rows.push_back(check_singular_dominance(p));
  return rows;
}

std::string verify_csv_header() {
  return "check,case,samples,violations,worst_slack,worst_relative_slack,pass";
}

std::string verify_csv_row(const CheckRow& row) {
  return row.check + ',' + row.case_tag + ',' + std::to_string(row.samples) + ',' +
         std::to_string(row.violations) + ',' + io::format_double(row.worst_slack) + ',' +
         io::format_double(row.worst_relative_slack) + ',' + (row.pass() ? "1" : "0");
}

}  // namespace ljsde::cli

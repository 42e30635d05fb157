#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ljsde::stats {

struct MeanEstimate {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation (n - 1)
  double std_error = 0.0;  // stddev / sqrt(n)
  std::size_t n = 0;
};

MeanEstimate mean_estimate(std::span<const double> xs);

double sample_variance(std::span<const double> xs);

// Standard error of the sample variance, sqrt((m4 - s^4) / n) with central
// fourth moment m4.
double variance_stderr(std::span<const double> xs);

struct Interval {
  double low = 0.0;
  double high = 1.0;
};

// Wilson score interval for a binomial proportion at normal quantile z.
Interval wilson_interval(std::size_t successes, std::size_t trials, double z = 1.959963984540054);

// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::vector<double> a, std::vector<double> b);

// Asymptotic critical value c(alpha) sqrt((n + m) / (n m)),
// c(alpha) = sqrt(-ln(alpha / 2) / 2).
double ks_critical_value(double alpha, std::size_t n, std::size_t m);

}  // namespace ljsde::stats

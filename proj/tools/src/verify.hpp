#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ljsde/potential.hpp"

namespace ljsde::cli {

struct CheckRow {
  std::string check;
  std::string case_tag;  // "-" when the check has no case split
  std::size_t samples = 0;
  std::size_t violations = 0;
  double worst_slack = 0.0;
  double worst_relative_slack = 0.0;

  bool pass() const { return violations == 0; }
};

struct VerifyPlan {
  LJParams potential = LJParams::classic();
  std::optional<double> h_override;
  std::size_t triples = 100000;
  std::size_t configs = 10000;
  std::size_t oracle_samples = 1000;
  std::uint64_t seed = 42;
};

// Property suite over the potential and the pair-force inequalities.
std::vector<CheckRow> run_verification(const VerifyPlan& plan);

std::string verify_csv_header();
std::string verify_csv_row(const CheckRow& row);

}  // namespace ljsde::cli

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "config.hpp"

namespace ljsde::cli {

enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kNumericError = 3,
  kVerificationFailure = 4,
};

struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out_dir = ".";
  std::optional<std::size_t> runs;
  bool quick = false;
  bool print_config = false;
};

// Loads the config (or defaults without --config) and applies --seed/--runs.
RunConfig effective_config(const std::string& command, const Options& opt);

int cmd_simulate(const RunConfig& cfg, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_sweep(const RunConfig& cfg, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_check_h(const RunConfig& cfg, const Options& opt, std::ostream& out, std::ostream& err);
int cmd_sample_init(const RunConfig& cfg, const Options& opt, std::ostream& out,
                    std::ostream& err);

// Full front end: argument parsing, dispatch and exception-to-exit-code mapping.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ljsde::cli

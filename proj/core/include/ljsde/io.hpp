#pragma once

// Line-oriented artifacts: configuration and trajectory JSONL, and the CSV
// tables written by the command-line front end.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "ljsde/diagnostics.hpp"
#include "ljsde/init_sampler.hpp"
#include "ljsde/integrator.hpp"
#include "ljsde/particles.hpp"

namespace ljsde::io {

// printf %.17g; "inf", "-inf" and "nan" for non-finite values.
std::string format_double(double v);

// {"t": t, "pos": [[...d values...], ...]}
std::string configuration_record(const Configuration& c, double t);
// Inverse of configuration_record. Throws PreconditionError on malformed input.
Configuration parse_configuration_record(std::string_view line, double* t = nullptr);

// {"spec": {...}, "seed": s, "run": r}
std::string trajectory_header(const SimulationSpec& spec, std::uint64_t seed, std::size_t run);
void write_trajectory(std::ostream& os, const SimulationSpec& spec, std::size_t run,
                      const Trajectory& traj);

std::string_view summary_csv_header();
std::string summary_csv_row(const RunSummary& s);

std::string_view sweep_csv_header();
std::string sweep_csv_row(const CollisionEstimate& e);

std::string_view certificate_csv_header();
std::string certificate_csv_row(const EnergyCertificate& c);

}  // namespace ljsde::io

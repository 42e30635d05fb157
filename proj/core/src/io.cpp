#include "ljsde/io.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>
#include <variant>

#include <json.hpp>

#include "ljsde/errors.hpp"

namespace ljsde::io {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string opt_double(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string{};
}

json spec_json(const SimulationSpec& spec) {
  const SystemSpec& s = spec.system;
  json sys{{"n", s.n}, {"d", s.d}, {"sigma", s.sigma}};
  if (s.potential) {
    const LJParams& p = *s.potential;
    sys["potential"] = {{"A", p.A()}, {"B", p.B()}, {"alpha", p.alpha()}, {"beta", p.beta()}};
  } else {
    sys["potential"] = nullptr;
  }
  if (const auto* v = std::get_if<VortexDrift>(&s.extra_drift)) {
    sys["drift"] = {{"kind", "vortex"}, {"gammas", v->gammas}};
  } else if (const auto* l = std::get_if<LinearDrift>(&s.extra_drift)) {
    sys["drift"] = {{"kind", "linear"}, {"rate", l->rate}};
  } else {
    sys["drift"] = {{"kind", "none"}};
  }
  return {{"system", sys},
          {"epsilon", spec.epsilon},
          {"t_end", spec.t_end},
          {"dt", spec.dt},
          {"record_stride", spec.record_stride}};
}

}  // namespace

std::string configuration_record(const Configuration& c, double t) {
  json pos = json::array();
  for (std::size_t i = 0; i < c.n(); ++i) {
    const auto row = c.row(i);
    pos.push_back(json(std::vector<double>(row.begin(), row.end())));
  }
  return json{{"t", t}, {"pos", pos}}.dump();
}

Configuration parse_configuration_record(std::string_view line, double* t) {
  json j;
  try {
    j = json::parse(line);
  } catch (const json::exception& e) {
    throw PreconditionError(std::string("configuration record: ") + e.what());
  }
  if (!j.is_object() || !j.contains("pos") || !j["pos"].is_array() || j["pos"].empty()) {
    throw PreconditionError("configuration record: missing or empty \"pos\"");
  }
  const auto& pos = j["pos"];
  const std::size_t n = pos.size();
  const std::size_t d = pos[0].size();
  std::vector<double> values;
  values.reserve(n * d);
  for (const auto& row : pos) {
    if (!row.is_array() || row.size() != d) {
      throw PreconditionError("configuration record: ragged \"pos\"");
    }
    for (const auto& v : row) {
      if (!v.is_number()) throw PreconditionError("configuration record: non-numeric coordinate");
      values.push_back(v.get<double>());
    }
  }
  if (t) *t = j.value("t", 0.0);
  return make_configuration(n, d, std::move(values));
}

std::string trajectory_header(const SimulationSpec& spec, std::uint64_t seed, std::size_t run) {
  return json{{"spec", spec_json(spec)}, {"seed", seed}, {"run", run}}.dump();
}

void write_trajectory(std::ostream& os, const SimulationSpec& spec, std::size_t run,
                      const Trajectory& traj) {
  os << trajectory_header(spec, traj.seed, run) << '\n';
  for (std::size_t k = 0; k < traj.frames.size(); ++k) {
    os << configuration_record(traj.frames[k], traj.times[k]) << '\n';
  }
}

std::string_view summary_csv_header() {
  return "run,seed,exited,tau_eps,min_m,phi_max,phi_final";
}

std::string summary_csv_row(const RunSummary& s) {
  std::string row = std::to_string(s.run) + ',' + std::to_string(s.seed) + ',' +
                    (s.exited ? "1" : "0") + ',' + opt_double(s.tau_eps) + ',';
  if (s.ok()) {
    row += format_double(s.min_m) + ',' + format_double(s.phi_max) + ',' +
           format_double(s.phi_final);
  } else {
    row += "nan,nan,nan";
  }
  return row;
}

std::string_view sweep_csv_header() {
  return "eps,runs,p_hat,ci_low,ci_high,f_lower,theory_bound,eta,seed";
}

std::string sweep_csv_row(const CollisionEstimate& e) {
  return format_double(e.eps) + ',' + std::to_string(e.runs) + ',' + format_double(e.p_hat) +
         ',' + format_double(e.ci_low) + ',' + format_double(e.ci_high) + ',' +
         format_double(e.f_lower) + ',' + format_double(e.theory_bound) + ',' +
         format_double(e.eta_hat) + ',' + std::to_string(e.seed);
}

std::string_view certificate_csv_header() { return "mean_energy,ci,ceiling_hits,seed"; }

std::string certificate_csv_row(const EnergyCertificate& c) {
  return format_double(c.mean) + ',' + format_double(c.ci_half_width) + ',' +
         std::to_string(c.ceiling_hits) + ',' + std::to_string(c.seed);
}

}  // namespace ljsde::io

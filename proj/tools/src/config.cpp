#include "config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "ljsde/errors.hpp"
#include "ljsde/io.hpp"

namespace ljsde::cli {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

double to_double(const std::string& key, const std::string& v) {
  // Decimal only: strtod would also accept hex floats and "inf".
  if (v.empty() || v.find_first_not_of("0123456789+-.eE") != std::string::npos) {
    throw ConfigError(key + ": expected a decimal number, got '" + v + "'");
  }
  double out = 0.0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (res.ec != std::errc{} || res.ptr != v.data() + v.size() || !std::isfinite(out)) {
    throw ConfigError(key + ": expected a decimal number, got '" + v + "'");
  }
  return out;
}

std::uint64_t to_u64(const std::string& key, const std::string& v) {
  std::uint64_t out = 0;
  const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || res.ec != std::errc{} || res.ptr != v.data() + v.size()) {
    throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
  }
  return out;
}

std::size_t to_count(const std::string& key, const std::string& v) {
  return static_cast<std::size_t>(to_u64(key, v));
}

bool to_bool(const std::string& key, const std::string& v) {
  if (v == "true") return true;
  if (v == "false") return false;
  throw ConfigError(key + ": expected true or false, got '" + v + "'");
}

std::vector<double> to_list(const std::string& key, const std::string& v) {
  std::vector<double> out;
  if (v.empty()) return out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(to_double(key, trim(item)));
  return out;
}

std::string fmt(double v) { return io::format_double(v); }

std::string fmt_list(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (k) out += ", ";
    out += fmt(xs[k]);
  }
  return out;
}

template <class E>
struct EnumNames {
  std::vector<std::pair<E, const char*>> names;

  E parse(const std::string& key, const std::string& v) const {
    for (const auto& [e, s] : names) {
      if (v == s) return e;
    }
    std::string allowed;
    for (const auto& [e, s] : names) allowed += std::string(allowed.empty() ? "" : " | ") + s;
    throw ConfigError(key + ": expected one of " + allowed + ", got '" + v + "'");
  }
  std::string print(E e) const {
    for (const auto& [x, s] : names) {
      if (x == e) return s;
    }
    return "?";
  }
};

const EnumNames<InitKind> kInitNames{{{InitKind::grid, "grid"},
                                      {InitKind::gibbs, "gibbs"},
                                      {InitKind::gaussian, "gaussian"},
                                      {InitKind::uniform_ball, "uniform_ball"}}};
const EnumNames<DriftKind> kDriftNames{
    {{DriftKind::none, "none"}, {DriftKind::vortex, "vortex"}, {DriftKind::linear, "linear"}}};

struct Key {
  const char* name;
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  // Empty optional: key unset, omitted from the printed form.
  std::function<std::optional<std::string>(const RunConfig&)> get;
};

#define DOUBLE_KEY(NAME, FIELD)                                                          \
  Key {                                                                                  \
    NAME, [](RunConfig& c, const std::string& k, const std::string& v) {                 \
      c.FIELD = to_double(k, v);                                                          \
    },                                                                                   \
        [](const RunConfig& c) -> std::optional<std::string> { return fmt(c.FIELD); }   \
  }
#define OPT_DOUBLE_KEY(NAME, FIELD)                                                      \
  Key {                                                                                  \
    NAME, [](RunConfig& c, const std::string& k, const std::string& v) {                 \
      c.FIELD = to_double(k, v);                                                          \
    },                                                                                   \
        [](const RunConfig& c) -> std::optional<std::string> {                           \
          if (!c.FIELD) return std::nullopt;                                             \
          return fmt(*c.FIELD);                                                          \
        }                                                                                \
  }
#define COUNT_KEY(NAME, FIELD)                                                           \
  Key {                                                                                  \
    NAME, [](RunConfig& c, const std::string& k, const std::string& v) {                 \
      c.FIELD = to_count(k, v);                                                           \
    },                                                                                   \
        [](const RunConfig& c) -> std::optional<std::string> {                           \
          return std::to_string(c.FIELD);                                                \
        }                                                                                \
  }
#define LIST_KEY(NAME, FIELD)                                                            \
  Key {                                                                                  \
    NAME, [](RunConfig& c, const std::string& k, const std::string& v) {                 \
      c.FIELD = to_list(k, v);                                                            \
    },                                                                                   \
        [](const RunConfig& c) -> std::optional<std::string> {                           \
          if (c.FIELD.empty()) return std::nullopt;                                      \
          return fmt_list(c.FIELD);                                                      \
        }                                                                                \
  }

const std::vector<Key>& keys() {
  static const std::vector<Key> table{
      Key{"seed", [](RunConfig& c, const std::string& k,
                     const std::string& v) { c.seed = to_u64(k, v); },
          [](const RunConfig& c) -> std::optional<std::string> { return std::to_string(c.seed); }},
      COUNT_KEY("system.n", n),
      COUNT_KEY("system.d", d),
      DOUBLE_KEY("system.sigma", sigma),
      Key{"potential.kind",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            if (v == "lj") {
              c.lj = true;
            } else if (v == "none") {
              c.lj = false;
            } else {
              throw ConfigError(k + ": expected lj | none, got '" + v + "'");
            }
          },
          [](const RunConfig& c) -> std::optional<std::string> { return c.lj ? "lj" : "none"; }},
      DOUBLE_KEY("potential.A", A),
      DOUBLE_KEY("potential.B", B),
      DOUBLE_KEY("potential.alpha", alpha),
      DOUBLE_KEY("potential.beta", beta),
      Key{"drift.kind",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            c.drift = kDriftNames.parse(k, v);
          },
          [](const RunConfig& c) -> std::optional<std::string> {
            return kDriftNames.print(c.drift);
          }},
      LIST_KEY("drift.gammas", gammas),
      DOUBLE_KEY("drift.rate", drift_rate),
      OPT_DOUBLE_KEY("sim.epsilon", epsilon),
      OPT_DOUBLE_KEY("sim.epsilon_rbar", epsilon_rbar),
      OPT_DOUBLE_KEY("sim.t_end", t_end),
      OPT_DOUBLE_KEY("sim.dt", dt),
      COUNT_KEY("sim.record_stride", record_stride),
      COUNT_KEY("sim.runs", runs),
      Key{"init.kind",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            c.init = kInitNames.parse(k, v);
          },
          [](const RunConfig& c) -> std::optional<std::string> {
            return kInitNames.print(c.init);
          }},
      OPT_DOUBLE_KEY("init.spacing", init_spacing),
      DOUBLE_KEY("init.scale", init_scale),
      DOUBLE_KEY("gibbs.k", gibbs_k),
      DOUBLE_KEY("gibbs.c", gibbs_c),
      COUNT_KEY("gibbs.mh_steps", gibbs_steps),
      DOUBLE_KEY("gibbs.step_size", gibbs_step_size),
      LIST_KEY("sweep.eps", sweep_eps),
      LIST_KEY("sweep.eps_rbar", sweep_eps_rbar),
      Key{"sweep.coupled",
          [](RunConfig& c, const std::string& k, const std::string& v) {
            c.sweep_coupled = to_bool(k, v);
          },
          [](const RunConfig& c) -> std::optional<std::string> {
            return c.sweep_coupled ? "true" : "false";
          }},
      OPT_DOUBLE_KEY("diag.eta", eta),
      COUNT_KEY("diag.h3_samples", h3_samples),
      OPT_DOUBLE_KEY("diag.c_markov", c_markov),
      COUNT_KEY("certify.runs", certify_runs),
      OPT_DOUBLE_KEY("certify.ceiling", certify_ceiling),
      OPT_DOUBLE_KEY("verify.h_override", h_override),
      COUNT_KEY("verify.triples", verify_triples),
      COUNT_KEY("verify.configs", verify_configs),
  };
  return table;
}

#undef DOUBLE_KEY
#undef OPT_DOUBLE_KEY
#undef COUNT_KEY
#undef LIST_KEY

const Key* find_key(const std::string& name) {
  for (const auto& k : keys()) {
    if (name == k.name) return &k;
  }
  return nullptr;
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::map<std::string, std::size_t> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, end == std::string_view::npos ? std::string_view::npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    std::string line(raw);
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) throw ConfigError(where + "expected 'key = value'");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    const Key* k = find_key(key);
    if (!k) throw ConfigError(where + "unknown key '" + key + "'");
    if (auto it = seen.find(key); it != seen.end()) {
      throw ConfigError(where + "duplicate key '" + key + "' (first set on line " +
                        std::to_string(it->second) + ")");
    }
    seen[key] = line_no;
    try {
      k->set(cfg, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(where + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

std::string print_config(const RunConfig& cfg) {
  std::string out;
  for (const auto& k : keys()) {
    if (auto v = k.get(cfg)) out += std::string(k.name) + " = " + *v + "\n";
  }
  return out;
}

std::vector<std::string> config_keys() {
  std::vector<std::string> out;
  for (const auto& k : keys()) out.emplace_back(k.name);
  return out;
}

LJParams potential_of(const RunConfig& cfg) {
  try {
    return LJParams(cfg.A, cfg.B, cfg.alpha, cfg.beta);
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("potential: ") + e.what());
  }
}

SystemSpec system_of(const RunConfig& cfg) {
  SystemSpec s;
  s.n = cfg.n;
  s.d = cfg.d;
  s.sigma = cfg.sigma;
  if (cfg.lj) {
    s.potential = potential_of(cfg);
  } else {
    s.potential.reset();
  }
  switch (cfg.drift) {
    case DriftKind::none: break;
    case DriftKind::vortex: s.extra_drift = VortexDrift{cfg.gammas}; break;
    case DriftKind::linear: s.extra_drift = LinearDrift{cfg.drift_rate}; break;
  }
  try {
    s.validate();
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("system: ") + e.what());
  }
  return s;
}

namespace {

double rbar_of(const RunConfig& cfg) {
  if (!cfg.lj) throw ConfigError("threshold given in r_bar units but potential.kind = none");
  return length_scale(potential_of(cfg));
}

}  // namespace

SimulationSpec simulation_of(const RunConfig& cfg) {
  SimulationSpec spec;
  spec.system = system_of(cfg);
  if (!cfg.t_end) throw ConfigError("sim.t_end: required");
  if (!cfg.dt) throw ConfigError("sim.dt: required");
  if (cfg.epsilon && cfg.epsilon_rbar) {
    throw ConfigError("sim.epsilon and sim.epsilon_rbar are mutually exclusive");
  }
  if (!cfg.epsilon && !cfg.epsilon_rbar) {
    throw ConfigError("sim.epsilon or sim.epsilon_rbar: required");
  }
  spec.epsilon = cfg.epsilon ? *cfg.epsilon : *cfg.epsilon_rbar * rbar_of(cfg);
  spec.t_end = *cfg.t_end;
  spec.dt = *cfg.dt;
  spec.seed = cfg.seed;
  spec.record_stride = cfg.record_stride;
  if (cfg.runs < 1) throw ConfigError("sim.runs: must be >= 1");
  try {
    spec.validate();
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("sim: ") + e.what());
  }
  return spec;
}

GibbsSpec gibbs_of(const RunConfig& cfg) {
  GibbsSpec g;
  g.potential = potential_of(cfg);
  g.confinement_k = cfg.gibbs_k;
  g.c = cfg.gibbs_c;
  g.mh_steps = cfg.gibbs_steps;
  g.mh_step_size = cfg.gibbs_step_size;
  try {
    g.validate();
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("gibbs: ") + e.what());
  }
  return g;
}

ConfigSampler initializer_of(const RunConfig& cfg) {
  const std::size_t n = cfg.n;
  const std::size_t d = cfg.d;
  switch (cfg.init) {
    case InitKind::grid: {
      const double spacing = cfg.init_spacing.value_or(
          cfg.lj ? default_grid_spacing(potential_of(cfg)) : 1.0);
      if (!(spacing > 0.0)) throw ConfigError("init.spacing: must be > 0");
      const Configuration grid = grid_configuration(n, d, spacing);
      return [grid](std::uint64_t) { return grid; };
    }
    case InitKind::gibbs: {
      if (!cfg.lj) throw ConfigError("init.kind = gibbs requires potential.kind = lj");
      const GibbsSpec g = gibbs_of(cfg);
      return [g, n, d](std::uint64_t seed) {
        Rng rng(seed);
        return sample_gibbs(g, n, d, rng);
      };
    }
    case InitKind::gaussian:
    case InitKind::uniform_ball: {
      if (!(cfg.init_scale > 0.0)) throw ConfigError("init.scale: must be > 0");
      const DensitySpec spec{cfg.init == InitKind::gaussian ? DensityKind::gaussian
                                                            : DensityKind::uniform_ball,
                             cfg.init_scale,
                             {}};
      return [spec, n, d](std::uint64_t seed) {
        Rng rng(seed);
        return sample_iid(spec, n, d, rng);
      };
    }
  }
  throw ConfigError("init.kind: unsupported");
}

std::vector<double> sweep_thresholds(const RunConfig& cfg) {
  if (!cfg.sweep_eps.empty() && !cfg.sweep_eps_rbar.empty()) {
    throw ConfigError("sweep.eps and sweep.eps_rbar are mutually exclusive");
  }
  std::vector<double> out = cfg.sweep_eps;
  if (!cfg.sweep_eps_rbar.empty()) {
    const double rbar = rbar_of(cfg);
    for (double f : cfg.sweep_eps_rbar) out.push_back(f * rbar);
  }
  if (out.empty()) throw ConfigError("sweep.eps or sweep.eps_rbar: at least one threshold required");
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (!(out[k] > 0.0)) throw ConfigError("sweep thresholds must be > 0");
    if (k > 0 && !(out[k] < out[k - 1])) {
      throw ConfigError("sweep thresholds must be strictly decreasing");
    }
  }
  return out;
}

}  // namespace ljsde::cli

#include "commands.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "ljsde/errors.hpp"
#include "ljsde/io.hpp"
#include "ljsde/lemma_oracles.hpp"
#include "verify.hpp"

namespace ljsde::cli {

namespace fs = std::filesystem;

namespace {

std::ofstream open_output(const Options& opt, const std::string& name) {
  std::error_code ec;
  fs::create_directories(opt.out_dir, ec);
  const fs::path path = fs::path(opt.out_dir) / name;
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw ConfigError("cannot write '" + path.string() + "'");
  return os;
}

std::string run_file_name(std::size_t run) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "trajectory_%04zu.jsonl", run);
  return buf;
}

// eta from diag.eta, else an h3 scan seeded from the master seed.
double resolve_eta(const RunConfig& cfg, const SystemSpec& s, std::ostream& out) {
  if (cfg.eta) return *cfg.eta;
  Rng rng(mix_seed(cfg.seed, 0xE7A));
  const H3Report rep = h3_scan(s, cfg.h3_samples, rng);
  out << "eta (h3 scan, " << cfg.h3_samples << " shapes) = " << io::format_double(rep.eta_estimate)
      << "\n";
  return rep.eta_estimate;
}

}  // namespace

RunConfig effective_config(const std::string&, const Options& opt) {
  RunConfig cfg = opt.config_path.empty() ? RunConfig{} : load_config(opt.config_path);
  if (opt.seed) cfg.seed = *opt.seed;
  if (opt.runs) {
    cfg.runs = *opt.runs;
    cfg.certify_runs = *opt.runs;
  }
  return cfg;
}

int cmd_simulate(const RunConfig& cfg, const Options& opt, std::ostream& out, std::ostream& err) {
  const SimulationSpec spec = simulation_of(cfg);
  const ConfigSampler init = initializer_of(cfg);
  out << "seed " << spec.seed << "\n";

  const auto summaries = run_batch(spec, cfg.runs, init, 0, [&](std::size_t run, const Trajectory& t) {
    SimulationSpec local = spec;
    local.seed = t.seed;
    std::ofstream os = open_output(opt, run_file_name(run));
    io::write_trajectory(os, local, run, t);
  });

  std::ofstream csv = open_output(opt, "summary.csv");
  csv << io::summary_csv_header() << "\n";
  std::size_t failed = 0;
  std::size_t exited = 0;
  for (const auto& s : summaries) {
    csv << io::summary_csv_row(s) << "\n";
    if (!s.ok()) {
      ++failed;
      err << "run " << s.run << ": " << s.error << "\n";
    }
    if (s.exited) ++exited;
  }
  out << "runs " << summaries.size() << ", exited " << exited << ", failed " << failed << "\n";
  return failed ? kNumericError : kOk;
}

int cmd_sweep(const RunConfig& cfg_in, const Options& opt, std::ostream& out, std::ostream&) {
  RunConfig cfg = cfg_in;
  const std::vector<double> eps = sweep_thresholds(cfg);
  if (!cfg.epsilon && !cfg.epsilon_rbar) cfg.epsilon = eps.back();
  SimulationSpec spec = simulation_of(cfg);
  spec.epsilon = eps.back();
  if (!spec.system.potential) throw ConfigError("sweep: requires potential.kind = lj");
  const ConfigSampler init = initializer_of(cfg);
  out << "seed " << spec.seed << "\n";

  const double eta = resolve_eta(cfg, spec.system, out);
  const double c_markov = cfg.c_markov ? *cfg.c_markov
                                       : estimate_markov_constant(init, *spec.system.potential,
                                                                  cfg.runs, spec.seed);
  const CollisionSweep sweep =
      cfg.sweep_coupled ? collision_sweep(spec, eps, cfg.runs, eta, c_markov, init)
                        : collision_sweep_uncoupled(spec, eps, cfg.runs, eta, c_markov, init);

  std::ofstream csv = open_output(opt, "sweep.csv");
  csv << io::sweep_csv_header() << "\n";
  for (const auto& row : sweep.rows) csv << io::sweep_csv_row(row) << "\n";
  out << "C = " << io::format_double(c_markov) << ", failed runs " << sweep.failed_runs << "\n";
  return sweep.failed_runs ? kNumericError : kOk;
}

int cmd_verify(const RunConfig& cfg, const Options& opt, std::ostream& out, std::ostream&) {
  VerifyPlan plan;
  plan.potential = potential_of(cfg);
  if (!plan.potential.has_attraction()) {
    throw ConfigError("verify-lemmas: the potential needs an attractive branch (beta > 0, B > 0)");
  }
  plan.h_override = cfg.h_override;
  plan.seed = cfg.seed;
  plan.triples = cfg.verify_triples;
  plan.configs = cfg.verify_configs;
  if (opt.quick) {
    plan.triples = std::min<std::size_t>(plan.triples, 10000);
    plan.configs = std::min<std::size_t>(plan.configs, 1000);
    plan.oracle_samples = 200;
  }
  const auto rows = run_verification(plan);
  std::ofstream csv = open_output(opt, "verify.csv");
  csv << verify_csv_header() << "\n";
  bool ok = true;
  for (const auto& r : rows) {
    csv << verify_csv_row(r) << "\n";
    out << (r.pass() ? "PASS " : "FAIL ") << r.check << " [" << r.case_tag << "] "
        << r.violations << "/" << r.samples << "\n";
    ok = ok && r.pass();
  }
  return ok ? kOk : kVerificationFailure;
}

int cmd_check_h(const RunConfig& cfg, const Options& opt, std::ostream& out, std::ostream&) {
  const SystemSpec s = system_of(cfg);
  if (!s.potential) throw ConfigError("check-h: requires potential.kind = lj");
  if (s.n < 2) throw ConfigError("check-h: system.n must be >= 2");
  if (cfg.h3_samples < 1) throw ConfigError("diag.h3_samples: must be >= 1");
  Rng rng(mix_seed(cfg.seed, 0xE7A));
  const H3Report rep = h3_scan(s, cfg.h3_samples, rng);
  std::ofstream csv = open_output(opt, "h3.csv");
  csv << "m_over_rbar,mean,max\n";
  for (const auto& st : rep.strata) {
    csv << io::format_double(st.m_over_rbar) << ',' << io::format_double(st.mean) << ','
        << io::format_double(st.max) << "\n";
  }
  out << "eta_estimate = " << io::format_double(rep.eta_estimate) << "\n"
      << "argmax_m_over_rbar = " << io::format_double(rep.argmax_m_over_rbar) << "\n"
      << "singular_monotone = " << (rep.singular_monotone ? "true" : "false") << " ("
      << rep.monotone_failures << " failures over " << rep.shapes << " shapes)\n"
      << "r_star = " << io::format_double(rep.r_star)
      << (rep.r_star_found ? "" : " (not found)") << "\n";
  return rep.singular_monotone ? kOk : kVerificationFailure;
}

int cmd_sample_init(const RunConfig& cfg, const Options& opt, std::ostream& out,
                    std::ostream& err) {
  const LJParams p = potential_of(cfg);
  if (cfg.init == InitKind::gaussian || cfg.init == InitKind::uniform_ball) {
    const Applicability a = check_iid_applicability(p, cfg.d);
    if (!a.applicable) {
      err << "warning: i.i.d. initial law without integrability guarantee (" << a.reason << ")\n";
    }
  }
  if (cfg.certify_runs < 2) throw ConfigError("certify.runs: must be >= 2");
  const ConfigSampler base = initializer_of(cfg);
  std::ofstream jsonl = open_output(opt, "init.jsonl");
  const ConfigSampler recording = [&](std::uint64_t seed) {
    Configuration x = base(seed);
    jsonl << io::configuration_record(x, 0.0) << "\n";
    return x;
  };
  const EnergyCertificate cert =
      certify_initial_energy(recording, p, cfg.certify_runs, cfg.seed, cfg.certify_ceiling);
  std::ofstream csv = open_output(opt, "cert.csv");
  csv << io::certificate_csv_header() << "\n" << io::certificate_csv_row(cert) << "\n";
  out << "seed " << cfg.seed << "\n"
      << "mean_energy = " << io::format_double(cert.mean) << " +- "
      << io::format_double(cert.ci_half_width) << "\n"
      << "ceiling = " << io::format_double(cert.ceiling) << ", hits " << cert.ceiling_hits
      << "\n";
  return cert.certified() ? kOk : kVerificationFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Monte Carlo and oracle toolkit for Lennard-Jones particle SDEs"};
  app.require_subcommand(1);
  Options opt;
  std::uint64_t seed = 0;
  std::size_t runs = 0;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "Config file (key = value)");
    sub->add_option("--seed", seed, "Master seed (overrides config)");
    sub->add_option("--out", opt.out_dir, "Output directory");
    sub->add_option("--runs", runs, "Run count (overrides sim.runs / certify.runs)");
    sub->add_flag("--quick", opt.quick, "Reduced sample sizes (verify-lemmas)");
    sub->add_flag("--print-config", opt.print_config, "Print the effective config and exit");
  };
  struct Entry {
    const char* name;
    const char* help;
    int (*fn)(const RunConfig&, const Options&, std::ostream&, std::ostream&);
  };
  const Entry entries[] = {
      {"simulate", "Integrate runs; write trajectory JSONL and summary.csv", cmd_simulate},
      {"sweep", "Collision probability over a threshold list; write sweep.csv", cmd_sweep},
      {"verify-lemmas", "Property suite for the potential and pair inequalities", cmd_verify},
      {"check-h", "Scan the regularity expression over configurations; write h3.csv",
       cmd_check_h},
      {"sample-init", "Draw initial configurations and certify their energy", cmd_sample_init},
  };
  std::vector<std::pair<CLI::App*, const Entry*>> subs;
  for (const auto& e : entries) {
    CLI::App* sub = app.add_subcommand(e.name, e.help);
    add_common(sub);
    subs.emplace_back(sub, &e);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kOk : kConfigError;
  }

  for (const auto& [sub, entry] : subs) {
    if (!sub->parsed()) continue;
    if (sub->count("--seed")) opt.seed = seed;
    if (sub->count("--runs")) opt.runs = runs;
    try {
      const RunConfig cfg = effective_config(entry->name, opt);
      if (opt.print_config) {
        out << print_config(cfg);
        return kOk;
      }
      return entry->fn(cfg, opt, out, err);
    } catch (const ConfigError& e) {
      err << "config error: " << e.what() << "\n";
      return kConfigError;
    } catch (const PreconditionError& e) {
      err << "config error: " << e.what() << "\n";
      return kConfigError;
    } catch (const NumericError& e) {
      err << "numeric error at step " << e.step() << ": " << e.what() << "\n";
      return kNumericError;
    } catch (const DomainError& e) {
      err << "numeric error: " << e.what() << "\n";
      return kNumericError;
    }
  }
  return kConfigError;
}

}  // namespace ljsde::cli

// Command-line driver for the parametric associative-memory simulator.
//
// Subcommands: recall, error-rate, capacity, bound, fixed-points,
// compare-potts. Every option can also come from a config file
// (--config file with `key=value` lines); explicit flags win.
//
// Exit codes: 0 success, 1 invalid arguments, 2 I/O failure.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "parmem/parmem.hpp"

namespace {

struct CommonOpts {
  parmem::ExperimentConfig cfg;
  std::string p_text = "1";
  std::string format_text = "csv";
};

void add_common_options(CLI::App& cmd, CommonOpts& opts) {
  cmd.add_option("--n", opts.cfg.n, "neuron count N");
  cmd.add_option("--q", opts.cfg.q, "frequency channel count q");
  cmd.add_option("--p", opts.p_text, "stored pattern count, a value or a range lo:hi");
  cmd.add_option("--a", opts.cfg.noise.a, "sign-flip probability");
  cmd.add_option("--b", opts.cfg.noise.b, "frequency-change probability");
  cmd.add_option("--trials", opts.cfg.trials, "Monte Carlo trials per parameter point");
  cmd.add_option("--seed", opts.cfg.seed, "master seed; per-trial seeds derive from it");
  cmd.add_option("--workers", opts.cfg.workers, "worker threads (0: all cores)");
  cmd.add_option("--max-sweeps", opts.cfg.max_sweeps, "sweep budget per trial");
  cmd.add_option("--out", opts.cfg.out, "output path (default: stdout)");
  cmd.add_option("--format", opts.format_text, "output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd.set_config("--config", "", "config file with key=value lines mirroring these flags");
}

void finalize(CommonOpts& opts) {
  opts.cfg.p = parmem::parse_p_range(opts.p_text);
  opts.cfg.format = parmem::parse_output_format(opts.format_text);
}

void emit(const parmem::ResultTable& table, const parmem::ExperimentConfig& cfg) {
  if (cfg.out.empty())
    parmem::emit_results(table, std::cout, cfg.format);
  else
    parmem::emit_results(table, cfg.out, cfg.format);
}

std::string spin_token(parmem::SpinState s) {
  return std::string(s.sign > 0 ? "+" : "-") + std::to_string(s.freq);
}

std::string pattern_text(const parmem::Pattern& x) {
  std::string text;
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (j) text += ' ';
    text += spin_token(x[j]);
  }
  return text;
}

int run_recall(const CommonOpts& opts) {
  const auto& cfg = opts.cfg;
  if (cfg.p.lo != cfg.p.hi)
    throw std::invalid_argument("recall: --p must be a single value");
  const parmem::ModelParams params{cfg.n, cfg.q, cfg.p.lo, cfg.noise};
  parmem::Rng rng(parmem::derive_seed(cfg.seed, static_cast<std::uint64_t>(cfg.p.lo), 0));
  std::vector<parmem::SweepTraceEntry> trace;
  const parmem::TrialReport report = parmem::recall_trial(params, rng, cfg.max_sweeps, &trace);

  std::printf("trial: n=%d q=%d p=%d a=%g b=%g seed=%llu max-sweeps=%d\n", cfg.n, cfg.q,
              cfg.p.lo, cfg.noise.a, cfg.noise.b,
              static_cast<unsigned long long>(cfg.seed), cfg.max_sweeps);
  for (const auto& entry : trace) {
    if (entry.sweep == 0)
      std::printf("start:   errors=%d energy2=%lld\n", entry.errors_vs_target,
                  static_cast<long long>(entry.energy2));
    else
      std::printf("sweep %2d: changed=%d errors=%d energy2=%lld\n", entry.sweep, entry.changed,
                  entry.errors_vs_target, static_cast<long long>(entry.energy2));
  }
  std::printf("result: recalled=%s recalled_mod_sign=%s converged=%s sweeps=%d one_step_errors=%d\n",
              report.recalled ? "true" : "false", report.recalled_mod_sign ? "true" : "false",
              report.converged ? "true" : "false", report.sweeps_used,
              report.neuron_errors_one_step);
  return 0;
}

int run_error_rate(const CommonOpts& opts) {
  const auto points = parmem::error_rate(opts.cfg);
  emit(parmem::error_rate_table(opts.cfg, points), opts.cfg);
  return 0;
}

int run_capacity(const CommonOpts& opts, double threshold) {
  const auto estimate = parmem::capacity_sweep(opts.cfg, threshold);
  for (const std::string& warning : estimate.warnings)
    std::cerr << "warning: " << warning << "\n";
  emit(parmem::capacity_table(opts.cfg, estimate), opts.cfg);
  return 0;
}

int run_bound(const CommonOpts& opts) {
  const auto& cfg = opts.cfg;
  parmem::ResultTable table;
  table.columns = {"n", "q", "p", "a", "b", "bound_eq14", "capacity_eq15"};
  for (int p = cfg.p.lo; p <= cfg.p.hi; ++p) {
    const double bound = parmem::chernov_error_bound({cfg.n, cfg.q, p, cfg.noise});
    const double capacity = parmem::storage_capacity(cfg.n, cfg.q, cfg.noise);
    table.rows.push_back({std::int64_t{cfg.n}, std::int64_t{cfg.q}, std::int64_t{p},
                          cfg.noise.a, cfg.noise.b, bound, capacity});
  }
  table.meta = parmem::config_echo(cfg);
  emit(table, cfg);
  return 0;
}

int run_fixed_points(const CommonOpts& opts) {
  const auto& cfg = opts.cfg;
  if (cfg.p.lo != cfg.p.hi)
    throw std::invalid_argument("fixed-points: --p must be a single value");
  parmem::Rng rng(parmem::derive_seed(cfg.seed, static_cast<std::uint64_t>(cfg.p.lo), 0));
  std::vector<parmem::Pattern> patterns;
  for (int mu = 0; mu < cfg.p.lo; ++mu)
    patterns.push_back(parmem::random_pattern(cfg.n, cfg.q, rng));
  const parmem::Network net(cfg.q, patterns);

  std::printf("stored patterns (n=%d q=%d p=%d seed=%llu):\n", cfg.n, cfg.q, cfg.p.lo,
              static_cast<unsigned long long>(cfg.seed));
  for (std::size_t mu = 0; mu < patterns.size(); ++mu)
    std::printf("  X%zu: %s\n", mu + 1, pattern_text(patterns[mu]).c_str());

  const parmem::FixedPointCensus census = parmem::fixed_point_census(net);
  std::printf("fixed points (%zu states):\n", census.fixed.size());
  for (const parmem::Pattern& state : census.fixed) {
    const char* label = "spurious";
    for (std::size_t mu = 0; mu < patterns.size(); ++mu) {
      if (state == patterns[mu]) label = "stored";
      if (state == parmem::negated(patterns[mu])) label = "stored, sign-flipped";
    }
    std::printf("  %s  [%s]\n", pattern_text(state).c_str(), label);
  }
  std::printf("matches {+/-X_mu}: %s\n", census.matches_stored_mod_sign() ? "yes" : "no");
  if (!census.matches_stored_mod_sign())
    std::printf("discrepancies tie-explained: %s\n",
                census.discrepancies_tie_explained ? "yes" : "no");
  return 0;
}

int run_compare_potts(const CommonOpts& opts) {
  const parmem::PottsComparison c = parmem::potts_capacity_ratio(opts.cfg.q);
  parmem::ResultTable table;
  table.columns = {"q", "ours", "potts", "ratio"};
  table.rows.push_back({std::int64_t{opts.cfg.q}, c.ours, c.potts, c.ratio});
  table.meta = {{"q", std::int64_t{opts.cfg.q}}};
  emit(table, opts.cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"parametric (sign x frequency) associative-memory simulator"};
  app.require_subcommand(1);

  CommonOpts recall_opts, error_opts, capacity_opts, bound_opts, fixed_opts, potts_opts;
  double threshold = 0.05;

  CLI::App* recall = app.add_subcommand("recall", "run one recall trial with a sweep trace");
  add_common_options(*recall, recall_opts);

  CLI::App* error_rate_cmd =
      app.add_subcommand("error-rate", "one-step recognition-error rates over a p range");
  add_common_options(*error_rate_cmd, error_opts);

  CLI::App* capacity = app.add_subcommand("capacity", "bisect for the largest p under a "
                                                      "recall-failure threshold");
  add_common_options(*capacity, capacity_opts);
  capacity->add_option("--threshold", threshold, "failure-rate threshold (default 0.05)");

  CLI::App* bound = app.add_subcommand("bound", "print the recognition-error bound and the "
                                                "capacity formula");
  add_common_options(*bound, bound_opts);

  CLI::App* fixed = app.add_subcommand("fixed-points", "enumerate all fixed points of a random "
                                                       "instance");
  add_common_options(*fixed, fixed_opts);

  CLI::App* potts = app.add_subcommand("compare-potts", "capacity comparison against the "
                                                        "Potts-glass network");
  add_common_options(*potts, potts_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (recall->parsed()) {
      finalize(recall_opts);
      return run_recall(recall_opts);
    }
    if (error_rate_cmd->parsed()) {
      finalize(error_opts);
      return run_error_rate(error_opts);
    }
    if (capacity->parsed()) {
      finalize(capacity_opts);
      return run_capacity(capacity_opts, threshold);
    }
    if (bound->parsed()) {
      finalize(bound_opts);
      return run_bound(bound_opts);
    }
    if (fixed->parsed()) {
      finalize(fixed_opts);
      return run_fixed_points(fixed_opts);
    }
    if (potts->parsed()) {
      finalize(potts_opts);
      return run_compare_potts(potts_opts);
    }
  } catch (const parmem::IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

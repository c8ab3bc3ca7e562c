#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "parmem/harness/results.hpp"
#include "parmem/harness/trial.hpp"
#include "parmem/rng.hpp"
#include "parmem/theory.hpp"

namespace parmem {

// Inclusive pattern-count range; lo == hi for a single point.
struct PRange {
  int lo = 1;
  int hi = 1;
};

// Parses "16" or "4:32".
inline PRange parse_p_range(const std::string& text) {
  const auto colon = text.find(':');
  try {
    std::size_t pos = 0;
    if (colon == std::string::npos) {
      const int v = std::stoi(text, &pos);
      if (pos != text.size()) throw std::invalid_argument("");
      return {v, v};
    }
    const std::string lo_text = text.substr(0, colon);
    const std::string hi_text = text.substr(colon + 1);
    const int lo = std::stoi(lo_text, &pos);
    if (pos != lo_text.size()) throw std::invalid_argument("");
    const int hi = std::stoi(hi_text, &pos);
    if (pos != hi_text.size()) throw std::invalid_argument("");
    return {lo, hi};
  } catch (const std::exception&) {
    throw std::invalid_argument("bad pattern count '" + text + "', expected <p> or <lo>:<hi>");
  }
}

struct ExperimentConfig {
  int n = 100;
  int q = 1;
  PRange p;
  NoiseSpec noise;
  int trials = 100;
  std::uint64_t seed = 1;
  int workers = 0;  // 0: hardware concurrency
  int max_sweeps = 50;
  std::string out;  // empty: stdout
  OutputFormat format = OutputFormat::csv;
};

inline void validate(const ExperimentConfig& cfg) {
  detail::require(cfg.n >= 2, "ExperimentConfig: n must be >= 2");
  detail::require(cfg.q >= 1, "ExperimentConfig: q must be >= 1");
  detail::require(cfg.p.lo >= 1 && cfg.p.hi >= cfg.p.lo, "ExperimentConfig: empty p range");
  detail::require(cfg.trials >= 1, "ExperimentConfig: trials must be >= 1");
  detail::require(cfg.max_sweeps >= 1, "ExperimentConfig: max_sweeps must be >= 1");
  validate(cfg.noise);
}

// Runs fn(trial_index) for every index on a small thread pool. Each call must
// be independent and write only to its own slot; aggregation stays a
// deterministic reduction over trial indices, so worker count and scheduling
// cannot change any result.
template <class Fn>
inline void parallel_for_trials(int count, int workers, Fn&& fn) {
  if (workers <= 0) workers = static_cast<int>(std::thread::hardware_concurrency());
  workers = std::clamp(workers, 1, std::max(count, 1));
  if (workers == 1 || count <= 1) {
    for (int t = 0; t < count; ++t) fn(t);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int t = next.fetch_add(1); t < count; t = next.fetch_add(1)) fn(t);
    });
  }
  for (std::thread& th : pool) th.join();
}

// One row of an error-rate sweep: the one-step recognition-error frequency at
// a parameter point, with its Monte Carlo standard error and the analytic
// bound it is compared against.
struct ErrorRatePoint {
  int p = 0;
  int trials = 0;
  int errors = 0;  // trials whose one-step reconstruction had any wrong neuron
  double error_rate = 0.0;
  double std_err = 0.0;
  double bound = 0.0;
};

namespace detail {
template <class Outcome, class RunTrial>
inline std::vector<Outcome> run_point(const ExperimentConfig& cfg, int p, RunTrial&& run) {
  std::vector<Outcome> slots(static_cast<std::size_t>(cfg.trials));
  parallel_for_trials(cfg.trials, cfg.workers, [&](int t) {
    Rng rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(t)));
    const ModelParams params{cfg.n, cfg.q, p, cfg.noise};
    slots[static_cast<std::size_t>(t)] = run(params, rng);
  });
  return slots;
}

inline double binomial_std_err(double rate, int trials) {
  return std::sqrt(rate * (1.0 - rate) / static_cast<double>(trials));
}
}  // namespace detail

inline std::vector<ErrorRatePoint> error_rate(const ExperimentConfig& cfg) {
  validate(cfg);
  std::vector<ErrorRatePoint> points;
  points.reserve(static_cast<std::size_t>(cfg.p.hi - cfg.p.lo + 1));
  for (int p = cfg.p.lo; p <= cfg.p.hi; ++p) {
    const auto outcomes = detail::run_point<std::uint8_t>(
        cfg, p, [&](const ModelParams& params, Rng& rng) -> std::uint8_t {
          return recall_trial(params, rng, cfg.max_sweeps).neuron_errors_one_step > 0;
        });
    ErrorRatePoint point;
    point.p = p;
    point.trials = cfg.trials;
    for (const std::uint8_t e : outcomes) point.errors += e;
    point.error_rate = static_cast<double>(point.errors) / cfg.trials;
    point.std_err = detail::binomial_std_err(point.error_rate, cfg.trials);
    point.bound = chernov_error_bound({cfg.n, cfg.q, p, cfg.noise});
    points.push_back(point);
  }
  return points;
}

inline std::vector<std::pair<std::string, Cell>> config_echo(const ExperimentConfig& cfg) {
  return {
      {"n", std::int64_t{cfg.n}},
      {"q", std::int64_t{cfg.q}},
      {"p_lo", std::int64_t{cfg.p.lo}},
      {"p_hi", std::int64_t{cfg.p.hi}},
      {"a", cfg.noise.a},
      {"b", cfg.noise.b},
      {"trials", std::int64_t{cfg.trials}},
      {"seed", cfg.seed},
      {"workers", std::int64_t{cfg.workers}},
      {"max_sweeps", std::int64_t{cfg.max_sweeps}},
  };
}

inline ResultTable error_rate_table(const ExperimentConfig& cfg,
                                    const std::vector<ErrorRatePoint>& points) {
  ResultTable table;
  table.columns = {"n",      "q",          "p",       "a",          "b",    "trials",
                   "errors", "error_rate", "std_err", "bound_eq14", "seed"};
  for (const ErrorRatePoint& pt : points) {
    table.rows.push_back({std::int64_t{cfg.n}, std::int64_t{cfg.q}, std::int64_t{pt.p},
                          cfg.noise.a, cfg.noise.b, std::int64_t{pt.trials},
                          std::int64_t{pt.errors}, pt.error_rate, pt.std_err, pt.bound,
                          cfg.seed});
  }
  table.meta = config_echo(cfg);
  return table;
}

// One sampled point of a capacity search. Failure here is the fixed-point
// criterion: the run did not converge to ±target.
struct CapacityPoint {
  int p = 0;
  int trials = 0;
  int failures = 0;
  double failure_rate = 0.0;
  double std_err = 0.0;
};

struct CapacityEstimate {
  int p_critical = 0;  // largest sampled p with failure rate <= threshold
  double threshold = 0.0;
  int trials_per_point = 0;
  std::pair<int, int> confidence_band{0, 0};
  std::vector<CapacityPoint> samples;  // every evaluated point, ascending p
  std::vector<std::string> warnings;
};

// Bisection over p for the largest pattern count whose recall-failure rate
// stays within the threshold. Failure rates are assumed monotone in p inside
// the search; the sampled points are checked afterwards and violations beyond
// 3 combined standard errors are recorded as warnings, not errors.
inline CapacityEstimate capacity_sweep(const ExperimentConfig& cfg, double threshold) {
  validate(cfg);
  detail::require(threshold > 0.0 && threshold < 1.0,
                  "capacity_sweep: threshold must lie in (0,1)");

  std::map<int, CapacityPoint> sampled;
  const auto rate_at = [&](int p) -> const CapacityPoint& {
    const auto found = sampled.find(p);
    if (found != sampled.end()) return found->second;
    const auto outcomes = detail::run_point<std::uint8_t>(
        cfg, p, [&](const ModelParams& params, Rng& rng) -> std::uint8_t {
          return !recall_trial(params, rng, cfg.max_sweeps).recalled_mod_sign;
        });
    CapacityPoint point;
    point.p = p;
    point.trials = cfg.trials;
    for (const std::uint8_t f : outcomes) point.failures += f;
    point.failure_rate = static_cast<double>(point.failures) / cfg.trials;
    point.std_err = detail::binomial_std_err(point.failure_rate, cfg.trials);
    return sampled.emplace(p, point).first->second;
  };

  CapacityEstimate estimate;
  estimate.threshold = threshold;
  estimate.trials_per_point = cfg.trials;

  const int lo = cfg.p.lo;
  const int hi = cfg.p.hi;
  if (rate_at(lo).failure_rate > threshold) {
    estimate.p_critical = lo - 1;
    estimate.confidence_band = {lo - 1, lo};
    estimate.warnings.push_back("no p in range meets the threshold; p_critical clamped below " +
                                std::to_string(lo));
  } else if (lo == hi || rate_at(hi).failure_rate <= threshold) {
    estimate.p_critical = hi;
    estimate.confidence_band = {hi, hi};
  } else {
    int pass_p = lo;
    int fail_p = hi;
    while (fail_p - pass_p > std::max(1, pass_p / 50)) {
      const int mid = pass_p + (fail_p - pass_p) / 2;
      if (rate_at(mid).failure_rate <= threshold)
        pass_p = mid;
      else
        fail_p = mid;
    }
    estimate.p_critical = pass_p;
    estimate.confidence_band = {pass_p, fail_p};
  }

  for (const auto& [p, point] : sampled) estimate.samples.push_back(point);
  for (std::size_t i = 0; i < estimate.samples.size(); ++i) {
    for (std::size_t j = i + 1; j < estimate.samples.size(); ++j) {
      const CapacityPoint& low = estimate.samples[i];
      const CapacityPoint& high = estimate.samples[j];
      const double slack =
          3.0 * std::sqrt(low.std_err * low.std_err + high.std_err * high.std_err);
      if (low.failure_rate > high.failure_rate + slack) {
        estimate.warnings.push_back(
            "failure rate not monotone beyond noise: p=" + std::to_string(low.p) + " rate " +
            detail::format_double(low.failure_rate) + " vs p=" + std::to_string(high.p) +
            " rate " + detail::format_double(high.failure_rate));
      }
    }
  }
  return estimate;
}

inline ResultTable capacity_table(const ExperimentConfig& cfg, const CapacityEstimate& estimate) {
  ResultTable table;
  table.columns = {"p",       "trials",     "failures", "failure_rate", "std_err",
                   "p_critical", "band_lo", "band_hi",  "threshold",    "seed"};
  for (const CapacityPoint& pt : estimate.samples) {
    table.rows.push_back({std::int64_t{pt.p}, std::int64_t{pt.trials}, std::int64_t{pt.failures},
                          pt.failure_rate, pt.std_err, std::int64_t{estimate.p_critical},
                          std::int64_t{estimate.confidence_band.first},
                          std::int64_t{estimate.confidence_band.second}, estimate.threshold,
                          cfg.seed});
  }
  table.meta = config_echo(cfg);
  table.meta.emplace_back("threshold", estimate.threshold);
  table.meta.emplace_back("p_critical", std::int64_t{estimate.p_critical});
  table.meta.emplace_back("band_lo", std::int64_t{estimate.confidence_band.first});
  table.meta.emplace_back("band_hi", std::int64_t{estimate.confidence_band.second});
  std::string joined;
  for (const std::string& w : estimate.warnings) {
    if (!joined.empty()) joined += "; ";
    joined += w;
  }
  table.meta.emplace_back("warnings", joined);
  return table;
}

}  // namespace parmem

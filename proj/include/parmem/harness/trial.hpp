#pragma once

#include <vector>

#include "parmem/model.hpp"
#include "parmem/noise.hpp"
#include "parmem/theory.hpp"

namespace parmem {

// Outcome of one recall experiment.
struct TrialReport {
  bool recalled = false;           // final state equals the target exactly
  bool recalled_mod_sign = false;  // equals the target up to a global sign flip
  int neuron_errors_one_step = 0;  // wrong neurons after the first sweep
  int sweeps_used = 0;
  bool converged = false;
};

// Optional per-sweep trace; entry 0 describes the distorted state before any
// update.
struct SweepTraceEntry {
  int sweep = 0;
  int changed = 0;
  int errors_vs_target = 0;
  std::int64_t energy2 = 0;
};

// Draws p uniform patterns, distorts the first one, and runs the dynamics.
// The distorted pattern is always pattern 0: the draws are i.i.d., so the
// choice loses no generality. The one-step error count is what the
// recognition-error bound is compared against.
template <class URBG>
inline TrialReport recall_trial(const ModelParams& params, URBG& rng, int max_sweeps,
                                std::vector<SweepTraceEntry>* trace = nullptr) {
  validate(params);
  detail::require(max_sweeps >= 1, "recall_trial: max_sweeps must be >= 1");

  std::vector<Pattern> patterns;
  patterns.reserve(static_cast<std::size_t>(params.p));
  for (int mu = 0; mu < params.p; ++mu)
    patterns.push_back(random_pattern(params.n, params.q, rng));
  const Pattern target = patterns.front();
  const Network net(params.q, std::move(patterns));

  Pattern state = apply_noise(target, params.q, params.noise, rng);
  if (trace)
    trace->push_back({0, 0, count_mismatches(state, target), energy_twice(net, state)});

  TrialReport report;
  for (int s = 1; s <= max_sweeps; ++s) {
    const std::vector<int> order = random_permutation(params.n, rng);
    const int changed = async_sweep(net, state, order);
    if (s == 1) report.neuron_errors_one_step = count_mismatches(state, target);
    if (trace)
      trace->push_back({s, changed, count_mismatches(state, target), energy_twice(net, state)});
    report.sweeps_used = s;
    if (changed == 0) {
      report.converged = true;
      break;
    }
  }
  report.recalled = state == target;
  report.recalled_mod_sign = report.recalled || state == negated(target);
  return report;
}

}  // namespace parmem

#pragma once

#include <algorithm>
#include <cmath>

#include "parmem/model.hpp"
#include "parmem/noise.hpp"

namespace parmem {

struct ModelParams {
  int n = 2;  // neurons
  int q = 1;  // frequency channels
  int p = 1;  // stored patterns
  NoiseSpec noise;
};

inline void validate(const ModelParams& mp) {
  detail::require(mp.n >= 2, "ModelParams: n must be >= 2");
  detail::require(mp.q >= 1, "ModelParams: q must be >= 1");
  detail::require(mp.p >= 1, "ModelParams: p must be >= 1");
  validate(mp.noise);
}

// Chernov-type upper bound on the probability that the one-step
// reconstruction of a stored pattern from its distorted version contains any
// wrong neuron:
//   Pr = N exp[-(N q^2 / 2p) (1-2a)^2 (1-b)^2].
// An upper bound, not an estimate: it may exceed 1, and callers clamp for
// display only.
inline double chernov_error_bound(const ModelParams& mp) {
  validate(mp);
  const double n = static_cast<double>(mp.n);
  const double q = static_cast<double>(mp.q);
  const double sign_margin = 1.0 - 2.0 * mp.noise.a;
  const double freq_margin = 1.0 - mp.noise.b;
  const double exponent =
      (n * q * q / (2.0 * static_cast<double>(mp.p))) * sign_margin * sign_margin *
      freq_margin * freq_margin;
  return n * std::exp(-exponent);
}

// Asymptotic pattern budget with vanishing recognition error:
//   p_bar = (N / 2 ln N) q^2 (1-2a)^2 (1-b)^2.
inline double storage_capacity(int n, int q, const NoiseSpec& noise) {
  detail::require(n >= 2, "storage_capacity: n must be >= 2");
  detail::require(q >= 1, "storage_capacity: q must be >= 1");
  validate(noise);
  const double sign_margin = 1.0 - 2.0 * noise.a;
  const double freq_margin = 1.0 - noise.b;
  return (static_cast<double>(n) / (2.0 * std::log(static_cast<double>(n)))) *
         static_cast<double>(q) * static_cast<double>(q) * sign_margin * sign_margin *
         freq_margin * freq_margin;
}

inline constexpr double kAlpha0 = 0.138;

struct PottsComparison {
  double ours = 0.0;   // q^2 alpha_0
  double potts = 0.0;  // q(q-1)/2 alpha_0
  double ratio = 0.0;  // 2q / (q-1)
};

// Capacity comparison against the q-state Potts network. Both sides collapse
// to the classical scalar value at their respective q.
inline PottsComparison potts_capacity_ratio(int q) {
  detail::require(q >= 2, "potts_capacity_ratio: q must be >= 2");
  PottsComparison c;
  c.ours = static_cast<double>(q) * static_cast<double>(q) * kAlpha0;
  c.potts = 0.5 * static_cast<double>(q) * static_cast<double>(q - 1) * kAlpha0;
  c.ratio = 2.0 * static_cast<double>(q) / static_cast<double>(q - 1);
  return c;
}

struct AmplitudeSplit {
  std::int64_t signal = 0;     // contribution of the reference pattern
  std::int64_t crosstalk = 0;  // interference of the other p-1 patterns
};

// Splits the channel-k amplitude at neuron i into the reference-pattern term
// and the cross-pattern interference. The parts sum to
// local_field(net, state, i)[k-1] exactly, on every instance.
inline AmplitudeSplit signal_crosstalk_decomposition(const Network& net, const Pattern& state,
                                                     const Pattern& reference, int i, int k) {
  detail::validate_state(net, state, "signal_crosstalk_decomposition");
  detail::validate_neuron_index(net, i, "signal_crosstalk_decomposition");
  detail::require(k >= 1 && k <= net.freq_count(),
                  "signal_crosstalk_decomposition: frequency index out of range");
  const auto& patterns = net.patterns();
  const auto it = std::find(patterns.begin(), patterns.end(), reference);
  detail::require(it != patterns.end(),
                  "signal_crosstalk_decomposition: reference is not a stored pattern");
  const int m = static_cast<int>(it - patterns.begin());

  AmplitudeSplit split;
  for (int mu = 0; mu < net.pattern_count(); ++mu) {
    const Pattern& x = patterns[static_cast<std::size_t>(mu)];
    const SpinState si = x[static_cast<std::size_t>(i)];
    if (si.freq != k) continue;
    std::int64_t overlap = 0;
    for (int j = 0; j < net.neuron_count(); ++j)
      if (j != i)
        overlap += dot(x[static_cast<std::size_t>(j)], state[static_cast<std::size_t>(j)]);
    (mu == m ? split.signal : split.crosstalk) += si.sign * overlap;
  }
  return split;
}

}  // namespace parmem

#pragma once

#include "parmem/model.hpp"
#include "parmem/rng.hpp"

namespace parmem {

// Multiplicative distortion: with probability a the sign flips, independently
// with probability b the frequency moves to one of the other q-1 channels.
struct NoiseSpec {
  double a = 0.0;  // sign-flip probability
  double b = 0.0;  // frequency-change probability
};

inline void validate(const NoiseSpec& spec) {
  detail::require(spec.a >= 0.0 && spec.a <= 1.0, "NoiseSpec: a must lie in [0,1]");
  detail::require(spec.b >= 0.0 && spec.b <= 1.0, "NoiseSpec: b must lie in [0,1]");
}

// Three-point law of xi = a_j (x_mj . b_j x_mj), the per-neuron overlap of a
// distorted component with its original.
struct XiDistribution {
  double p_plus = 1.0;
  double p_zero = 0.0;
  double p_minus = 0.0;
};

inline XiDistribution xi_sample_distribution(const NoiseSpec& spec) {
  validate(spec);
  return {(1.0 - spec.a) * (1.0 - spec.b), spec.b, spec.a * (1.0 - spec.b)};
}

// Distorts each neuron independently. The frequency step never reselects the
// original channel: conditioned on it firing, the overlap with the original
// state is exactly 0, which is what puts mass b on the middle of the xi law.
// The sign step acts after it and touches only the sign. For q = 1 the
// frequency step is a no-op and draws nothing.
template <class URBG>
inline Pattern apply_noise(const Pattern& x, int q, const NoiseSpec& spec, URBG& rng) {
  validate(spec);
  detail::require(q >= 1, "apply_noise: q must be >= 1");
  detail::validate_pattern(x, x.size(), q, "apply_noise");
  Pattern out = x;
  for (SpinState& s : out) {
    if (q >= 2 && chance(rng, spec.b)) {
      const int r = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(q - 1))) + 1;
      s.freq = static_cast<std::int16_t>(r >= s.freq ? r + 1 : r);
    }
    if (chance(rng, spec.a)) s.sign = static_cast<std::int16_t>(-s.sign);
  }
  return out;
}

}  // namespace parmem

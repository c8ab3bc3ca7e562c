#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "parmem/model.hpp"

namespace parmem {

inline constexpr std::uint64_t kEnumerationCap = 10'000'000;

namespace detail {
inline std::uint64_t checked_state_space_size(const Network& net) {
  const std::uint64_t radix = 2ULL * static_cast<std::uint64_t>(net.freq_count());
  std::uint64_t size = 1;
  for (int i = 0; i < net.neuron_count(); ++i) {
    if (size > kEnumerationCap / radix) {
      const double approx = static_cast<double>(net.neuron_count()) * std::log10(2.0 * net.freq_count());
      throw std::invalid_argument("enumerate_fixed_points: state space (2q)^N ~ 10^" +
                                  std::to_string(approx) + " exceeds cap " +
                                  std::to_string(kEnumerationCap));
    }
    size *= radix;
  }
  return size;
}

// Visits every network state in mixed-radix order (digit d at a neuron maps
// to sign = +1 for even d, channel d/2 + 1).
template <class Visit>
inline void for_each_state(int n, int q, Visit&& visit) {
  const int radix = 2 * q;
  std::vector<int> digits(static_cast<std::size_t>(n), 0);
  const auto to_spin = [](int d) {
    return SpinState{static_cast<std::int16_t>((d & 1) ? -1 : 1),
                     static_cast<std::int16_t>(d / 2 + 1)};
  };
  Pattern state(static_cast<std::size_t>(n), to_spin(0));
  for (;;) {
    visit(static_cast<const Pattern&>(state));
    int pos = 0;
    while (pos < n) {
      auto& d = digits[static_cast<std::size_t>(pos)];
      if (++d < radix) {
        state[static_cast<std::size_t>(pos)] = to_spin(d);
        break;
      }
      d = 0;
      state[static_cast<std::size_t>(pos)] = to_spin(0);
      ++pos;
    }
    if (pos == n) return;
  }
}
}  // namespace detail

// Exhaustively tests every state of the configuration space for stability
// under one deterministic identity-order sweep. Guarded by kEnumerationCap;
// larger spaces are rejected with the computed size.
inline std::vector<Pattern> enumerate_fixed_points(const Network& net) {
  detail::checked_state_space_size(net);
  std::vector<Pattern> fixed;
  detail::for_each_state(net.neuron_count(), net.freq_count(), [&](const Pattern& state) {
    for (int i = 0; i < net.neuron_count(); ++i) {
      if (!(update_neuron(local_field(net, state, i)) == state[static_cast<std::size_t>(i)]))
        return;
    }
    fixed.push_back(state);
  });
  return fixed;
}

// Full comparison of the fixed-point set against {±X_mu}, with tie forensics.
//
// A state's stability can hinge on the deterministic tie conventions (lowest
// channel index among equal moduli, sgn(0) = +1). The census marks each
// discrepancy against {±X_mu} as tie-explained when a different convention
// could have flipped the outcome: a spurious fixed state whose stability
// check crossed a tie, or a stored pattern that lost stability only at
// tie-crossed neurons. Draws whose discrepancies are all tie-explained are
// "degenerate" draws: logged by callers, not asserted against.
struct FixedPointCensus {
  std::vector<Pattern> fixed;     // canonically fixed states
  std::vector<Pattern> expected;  // {±X_mu}, deduplicated
  std::vector<Pattern> spurious;  // fixed but outside {±X_mu}
  std::vector<Pattern> missing;   // in {±X_mu} but not fixed
  bool discrepancies_tie_explained = true;

  bool matches_stored_mod_sign() const { return spurious.empty() && missing.empty(); }
};

inline FixedPointCensus fixed_point_census(const Network& net) {
  detail::checked_state_space_size(net);
  FixedPointCensus census;
  for (const Pattern& x : net.patterns()) {
    const Pattern flipped = negated(x);
    if (std::find(census.expected.begin(), census.expected.end(), x) == census.expected.end())
      census.expected.push_back(x);
    if (std::find(census.expected.begin(), census.expected.end(), flipped) ==
        census.expected.end())
      census.expected.push_back(flipped);
  }

  detail::for_each_state(net.neuron_count(), net.freq_count(), [&](const Pattern& state) {
    const bool is_expected = std::find(census.expected.begin(), census.expected.end(), state) !=
                             census.expected.end();
    bool canonically_fixed = true;
    bool reachable_by_some_tie_break = true;
    bool tie_crossed = false;
    for (int i = 0; i < net.neuron_count(); ++i) {
      const Amplitudes amp = local_field(net, state, i);
      std::int64_t max_abs = 0;
      int max_count = 0;
      for (const std::int64_t a : amp) {
        const std::int64_t mag = detail::abs64(a);
        if (mag > max_abs) {
          max_abs = mag;
          max_count = 1;
        } else if (mag == max_abs) {
          ++max_count;
        }
      }
      // max_abs == 0 admits every channel with either sign; treat it as a tie.
      if (max_abs == 0 || max_count > 1) tie_crossed = true;

      const SpinState si = state[static_cast<std::size_t>(i)];
      if (!(update_neuron(amp) == si)) {
        canonically_fixed = false;
        if (!is_expected) return;  // only {±X_mu} need the missing/tie forensics
      }
      const std::int64_t own = amp[static_cast<std::size_t>(si.freq - 1)];
      if (!(max_abs == 0 || (detail::abs64(own) == max_abs && (own >= 0) == (si.sign > 0))))
        reachable_by_some_tie_break = false;
    }

    if (canonically_fixed) {
      census.fixed.push_back(state);
      if (!is_expected) {
        census.spurious.push_back(state);
        if (!tie_crossed) census.discrepancies_tie_explained = false;
      }
    } else if (is_expected) {
      census.missing.push_back(state);
      if (!reachable_by_some_tie_break) census.discrepancies_tie_explained = false;
    }
  });
  return census;
}

}  // namespace parmem

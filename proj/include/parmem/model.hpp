#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "parmem/rng.hpp"

namespace parmem {

namespace detail {
inline void require(bool cond, const std::string& msg) {
  if (!cond) throw std::invalid_argument(msg);
}

inline std::int64_t abs64(std::int64_t v) { return v < 0 ? -v : v; }
}  // namespace detail

// State of one neuron: a sign (+1/-1) and a frequency channel k in 1..q.
// Channels are orthonormal, so two states interact only when they share a
// frequency.
struct SpinState {
  std::int16_t sign = 1;
  std::int16_t freq = 1;

  friend bool operator==(SpinState, SpinState) = default;
};

inline int dot(SpinState a, SpinState b) {
  return a.freq == b.freq ? static_cast<int>(a.sign) * static_cast<int>(b.sign) : 0;
}

inline SpinState negated(SpinState s) {
  return {static_cast<std::int16_t>(-s.sign), s.freq};
}

// A full network state, and also a stored memory: one SpinState per neuron.
using Pattern = std::vector<SpinState>;

inline Pattern negated(const Pattern& x) {
  Pattern out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = negated(x[i]);
  return out;
}

inline int count_mismatches(const Pattern& x, const Pattern& y) {
  detail::require(x.size() == y.size(), "count_mismatches: length mismatch");
  int count = 0;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (!(x[i] == y[i])) ++count;
  return count;
}

inline bool equal_mod_sign(const Pattern& x, const Pattern& y) {
  return x == y || x == negated(y);
}

// Field amplitudes A_k for one neuron, index k-1 holds channel k. All exact
// integers: every contribution is a product of {-1, 0, +1} factors.
using Amplitudes = std::vector<std::int64_t>;

// q x q interaction block between two neurons; entry (k, l) couples channel k
// at the receiving neuron with channel l at the sender. At most one entry per
// stored pattern is touched, so a block holds at most p nonzeros.
class WeightBlock {
 public:
  WeightBlock() = default;
  explicit WeightBlock(int q)
      : q_(q), entries_(static_cast<std::size_t>(q) * static_cast<std::size_t>(q), 0) {}

  int freq_count() const { return q_; }

  // k, l are 1-based frequency indices.
  std::int32_t at(int k, int l) const { return entries_[index(k, l)]; }
  std::int32_t& at(int k, int l) { return entries_[index(k, l)]; }

  friend bool operator==(const WeightBlock&, const WeightBlock&) = default;

 private:
  std::size_t index(int k, int l) const {
    return static_cast<std::size_t>(k - 1) * static_cast<std::size_t>(q_) +
           static_cast<std::size_t>(l - 1);
  }

  int q_ = 0;
  std::vector<std::int32_t> entries_;
};

namespace detail {
inline void validate_pattern(const Pattern& x, std::size_t n, int q, const char* what) {
  require(x.size() == n, std::string(what) + ": pattern length mismatch");
  for (const SpinState& s : x) {
    require(s.sign == 1 || s.sign == -1, std::string(what) + ": sign must be +1 or -1");
    require(s.freq >= 1 && s.freq <= q, std::string(what) + ": frequency out of range");
  }
}
}  // namespace detail

// Generalized Hebb rule: T_ij^(kl) = sum_mu (e_k . x_mu_i)(x_mu_j . e_l),
// diagonal blocks identically zero. Returns an n*n row-major grid.
inline std::vector<WeightBlock> hebb_weights(int q, const std::vector<Pattern>& patterns) {
  detail::require(q >= 1, "hebb_weights: q must be >= 1");
  detail::require(!patterns.empty(), "hebb_weights: empty pattern set");
  const std::size_t n = patterns.front().size();
  detail::require(n >= 2, "hebb_weights: need at least 2 neurons");
  for (const Pattern& x : patterns) detail::validate_pattern(x, n, q, "hebb_weights");

  std::vector<WeightBlock> grid(n * n, WeightBlock(q));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      WeightBlock& block = grid[i * n + j];
      for (const Pattern& x : patterns)
        block.at(x[i].freq, x[j].freq) += static_cast<std::int32_t>(x[i].sign) * x[j].sign;
    }
  }
  return grid;
}

// Immutable after construction: stored patterns plus, optionally, the
// materialized Hebb blocks. Fields are evaluated from the pattern sums by
// default; materialized weights cost O(N^2 q^2) memory and exist for
// cross-checks and small-N experiments.
class Network {
 public:
  Network(int q, std::vector<Pattern> patterns, bool materialize_weights = false)
      : q_(q), patterns_(std::move(patterns)) {
    detail::require(q_ >= 1, "Network: q must be >= 1");
    detail::require(!patterns_.empty(), "Network: need at least one stored pattern");
    n_ = static_cast<int>(patterns_.front().size());
    detail::require(n_ >= 2, "Network: need at least 2 neurons");
    for (const Pattern& x : patterns_)
      detail::validate_pattern(x, static_cast<std::size_t>(n_), q_, "Network");

    // Transposed copy: per-neuron scans over mu are the hot path of a sweep.
    const std::size_t p = patterns_.size();
    by_neuron_.resize(static_cast<std::size_t>(n_) * p);
    for (std::size_t mu = 0; mu < p; ++mu)
      for (std::size_t i = 0; i < static_cast<std::size_t>(n_); ++i)
        by_neuron_[i * p + mu] = patterns_[mu][i];

    if (materialize_weights) weights_ = hebb_weights(q_, patterns_);
  }

  int neuron_count() const { return n_; }
  int freq_count() const { return q_; }
  int pattern_count() const { return static_cast<int>(patterns_.size()); }

  const std::vector<Pattern>& patterns() const { return patterns_; }

  // Stored value of pattern mu at neuron i.
  SpinState stored(int i, int mu) const {
    return by_neuron_[static_cast<std::size_t>(i) * patterns_.size() +
                      static_cast<std::size_t>(mu)];
  }

  bool has_weights() const { return !weights_.empty(); }

  const WeightBlock& weight_block(int i, int j) const {
    detail::require(has_weights(), "Network: weights were not materialized");
    return weights_[static_cast<std::size_t>(i) * static_cast<std::size_t>(n_) +
                    static_cast<std::size_t>(j)];
  }

 private:
  int q_;
  int n_ = 0;
  std::vector<Pattern> patterns_;
  std::vector<SpinState> by_neuron_;
  std::vector<WeightBlock> weights_;
};

namespace detail {
inline void validate_state(const Network& net, const Pattern& state, const char* what) {
  validate_pattern(state, static_cast<std::size_t>(net.neuron_count()), net.freq_count(), what);
}

inline void validate_neuron_index(const Network& net, int i, const char* what) {
  require(i >= 0 && i < net.neuron_count(), std::string(what) + ": neuron index out of range");
}
}  // namespace detail

// One neuron drawn uniformly over the 2q states.
template <class URBG>
inline SpinState random_spin(int q, URBG& rng) {
  SpinState s;
  s.sign = static_cast<std::int16_t>(uniform_sign(rng));
  s.freq = static_cast<std::int16_t>(1 + uniform_index(rng, static_cast<std::uint64_t>(q)));
  return s;
}

template <class URBG>
inline Pattern random_pattern(int n, int q, URBG& rng) {
  detail::require(n >= 1, "random_pattern: n must be >= 1");
  detail::require(q >= 1, "random_pattern: q must be >= 1");
  Pattern x(static_cast<std::size_t>(n));
  for (SpinState& s : x) s = random_spin(q, rng);
  return x;
}

// Field amplitudes at neuron i, evaluated from the pattern sums:
// A_k = sum_{j != i} sum_mu (e_k . x_mu_i)(x_mu_j . x_j). O(N p) per call.
inline Amplitudes local_field(const Network& net, const Pattern& state, int i) {
  detail::validate_state(net, state, "local_field");
  detail::validate_neuron_index(net, i, "local_field");
  const int n = net.neuron_count();
  Amplitudes amp(static_cast<std::size_t>(net.freq_count()), 0);
  for (int mu = 0; mu < net.pattern_count(); ++mu) {
    const Pattern& x = net.patterns()[static_cast<std::size_t>(mu)];
    std::int64_t overlap = 0;
    for (int j = 0; j < n; ++j)
      if (j != i) overlap += dot(x[static_cast<std::size_t>(j)], state[static_cast<std::size_t>(j)]);
    const SpinState si = x[static_cast<std::size_t>(i)];
    amp[static_cast<std::size_t>(si.freq - 1)] += si.sign * overlap;
  }
  return amp;
}

// Same field through the materialized blocks: h_i = sum_{j != i} T_ij x_j.
// Must agree with local_field entry for entry.
inline Amplitudes local_field_from_weights(const Network& net, const Pattern& state, int i) {
  detail::validate_state(net, state, "local_field_from_weights");
  detail::validate_neuron_index(net, i, "local_field_from_weights");
  detail::require(net.has_weights(), "local_field_from_weights: weights were not materialized");
  const int q = net.freq_count();
  Amplitudes amp(static_cast<std::size_t>(q), 0);
  for (int j = 0; j < net.neuron_count(); ++j) {
    if (j == i) continue;
    const WeightBlock& block = net.weight_block(i, j);
    const SpinState sj = state[static_cast<std::size_t>(j)];
    for (int k = 1; k <= q; ++k)
      amp[static_cast<std::size_t>(k - 1)] +=
          static_cast<std::int64_t>(block.at(k, sj.freq)) * sj.sign;
  }
  return amp;
}

// Winner-take-all: align with the channel whose amplitude is largest in
// modulus, carrying that amplitude's sign. Ties break to the lowest channel
// index and sgn(0) = +1, so trajectories are reproducible.
inline SpinState update_neuron(const Amplitudes& amp) {
  detail::require(!amp.empty(), "update_neuron: empty amplitude vector");
  std::size_t best = 0;
  std::int64_t best_abs = detail::abs64(amp[0]);
  for (std::size_t k = 1; k < amp.size(); ++k) {
    const std::int64_t a = detail::abs64(amp[k]);
    if (a > best_abs) {
      best = k;
      best_abs = a;
    }
  }
  return {static_cast<std::int16_t>(amp[best] >= 0 ? 1 : -1),
          static_cast<std::int16_t>(best + 1)};
}

struct UpdateEvent {
  int neuron = 0;
  SpinState before;
  SpinState after;
  std::int64_t energy2_delta = 0;  // change in 2H caused by this update
};

namespace detail {
inline void validate_order(const Network& net, std::span<const int> order, const char* what) {
  const int n = net.neuron_count();
  require(static_cast<int>(order.size()) == n, std::string(what) + ": order must have length N");
  std::vector<bool> seen(static_cast<std::size_t>(n), false);
  for (int i : order) {
    require(i >= 0 && i < n, std::string(what) + ": order entry out of range");
    require(!seen[static_cast<std::size_t>(i)], std::string(what) + ": order repeats a neuron");
    seen[static_cast<std::size_t>(i)] = true;
  }
}
}  // namespace detail

// One asynchronous sweep in the given neuron order; each update sees all
// previous ones. Running overlaps with every stored pattern make an update
// O(p + q). Returns the number of neurons whose state changed.
template <class Observer>
inline int async_sweep(const Network& net, Pattern& state, std::span<const int> order,
                       Observer&& observe) {
  detail::validate_state(net, state, "async_sweep");
  detail::validate_order(net, order, "async_sweep");
  const int n = net.neuron_count();
  const int p = net.pattern_count();
  const int q = net.freq_count();

  std::vector<std::int64_t> total(static_cast<std::size_t>(p), 0);
  for (int mu = 0; mu < p; ++mu) {
    const Pattern& x = net.patterns()[static_cast<std::size_t>(mu)];
    std::int64_t acc = 0;
    for (int j = 0; j < n; ++j)
      acc += dot(x[static_cast<std::size_t>(j)], state[static_cast<std::size_t>(j)]);
    total[static_cast<std::size_t>(mu)] = acc;
  }

  Amplitudes amp(static_cast<std::size_t>(q));
  int changed = 0;
  for (const int i : order) {
    const SpinState old = state[static_cast<std::size_t>(i)];
    std::fill(amp.begin(), amp.end(), 0);
    for (int mu = 0; mu < p; ++mu) {
      const SpinState s = net.stored(i, mu);
      amp[static_cast<std::size_t>(s.freq - 1)] +=
          s.sign * (total[static_cast<std::size_t>(mu)] - dot(s, old));
    }
    const SpinState next = update_neuron(amp);
    const std::int64_t d2h =
        2 * (static_cast<std::int64_t>(old.sign) * amp[static_cast<std::size_t>(old.freq - 1)] -
             static_cast<std::int64_t>(next.sign) * amp[static_cast<std::size_t>(next.freq - 1)]);
    if (!(next == old)) {
      ++changed;
      for (int mu = 0; mu < p; ++mu) {
        const SpinState s = net.stored(i, mu);
        total[static_cast<std::size_t>(mu)] += dot(s, next) - dot(s, old);
      }
      state[static_cast<std::size_t>(i)] = next;
    }
    observe(UpdateEvent{i, old, next, d2h});
  }
  return changed;
}

inline int async_sweep(const Network& net, Pattern& state, std::span<const int> order) {
  return async_sweep(net, state, order, [](const UpdateEvent&) {});
}

struct RunResult {
  int sweeps_used = 0;
  bool converged = false;
};

// Repeated sweeps with a fresh random order each time, until one sweep changes
// nothing or the budget runs out. A zero-change sweep counts toward
// sweeps_used. With deterministic tie-breaking a zero-change sweep under any
// order is a fixed point.
template <class URBG>
inline RunResult run_to_fixed_point(const Network& net, Pattern& state, URBG& rng,
                                    int max_sweeps) {
  detail::require(max_sweeps >= 1, "run_to_fixed_point: max_sweeps must be >= 1");
  for (int s = 1; s <= max_sweeps; ++s) {
    const std::vector<int> order = random_permutation(net.neuron_count(), rng);
    if (async_sweep(net, state, order) == 0) return {s, true};
  }
  return {max_sweeps, false};
}

// Exact 2H. H itself is integral (each unordered pair contributes twice) but
// doubling keeps the arithmetic visibly fraction-free:
//   2H = -sum_mu (M_mu^2 - C_mu),  M_mu = sum_j (x_mu_j . x_j),
//   C_mu = #{j : channels match}.
inline std::int64_t energy_twice(const Network& net, const Pattern& state) {
  detail::validate_state(net, state, "energy_twice");
  std::int64_t twice = 0;
  for (const Pattern& x : net.patterns()) {
    std::int64_t overlap = 0;
    std::int64_t matches = 0;
    for (std::size_t j = 0; j < state.size(); ++j) {
      const int d = dot(x[j], state[j]);
      overlap += d;
      matches += d != 0;
    }
    twice -= overlap * overlap - matches;
  }
  return twice;
}

}  // namespace parmem

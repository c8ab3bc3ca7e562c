#pragma once

#include <bit>
#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

namespace parmem {

// Engine used throughout. Every trial owns its own instance; nothing in the
// library keeps hidden generator state.
using Rng = std::mt19937_64;

// SplitMix64 finalizer.
inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Per-trial seed as a pure function of (master, stream, counter). Trials keyed
// this way reproduce no matter how they are scheduled across workers.
inline constexpr std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                           std::uint64_t counter) {
  std::uint64_t s = splitmix64(master);
  s = splitmix64(s ^ splitmix64(stream + 0xd1b54a32d192ed03ULL));
  return splitmix64(s + counter);
}

namespace detail {
template <class URBG>
inline std::uint64_t next_bits(URBG& rng) {
  static_assert(URBG::min() == 0 && URBG::max() == 0xffffffffffffffffULL,
                "parmem expects a full-range 64-bit engine");
  return rng();
}
}  // namespace detail

// The draw helpers below fix the mapping from raw engine bits to values, so a
// seed reproduces the same experiment under any standard library.

// Uniform draw from [0, n). Masked rejection; consumes no entropy when n == 1.
template <class URBG>
inline std::uint64_t uniform_index(URBG& rng, std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t mask = ~std::uint64_t{0} >> std::countl_zero(n - 1);
  for (;;) {
    const std::uint64_t v = detail::next_bits(rng) & mask;
    if (v < n) return v;
  }
}

// Fair +1/-1 from the low bit.
template <class URBG>
inline int uniform_sign(URBG& rng) {
  return (detail::next_bits(rng) & 1u) ? -1 : +1;
}

// Uniform double in [0, 1) with 53 random bits.
template <class URBG>
inline double uniform_unit(URBG& rng) {
  return static_cast<double>(detail::next_bits(rng) >> 11) * 0x1.0p-53;
}

// Bernoulli(prob). prob <= 0 never fires, prob >= 1 always does.
template <class URBG>
inline bool chance(URBG& rng, double prob) {
  return uniform_unit(rng) < prob;
}

// Fisher-Yates permutation of 0..n-1.
template <class URBG>
inline std::vector<int> random_permutation(int n, URBG& rng) {
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(i) + 1));
    std::swap(order[static_cast<std::size_t>(i)], order[static_cast<std::size_t>(j)]);
  }
  return order;
}

}  // namespace parmem

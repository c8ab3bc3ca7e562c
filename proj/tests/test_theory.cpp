#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "parmem/harness/trial.hpp"
#include "parmem/theory.hpp"

using namespace parmem;
using Catch::Matchers::WithinRel;

TEST_CASE("chernov_error_bound: spot value and vacuous limits") {
  // Exponent by hand: (100 * 4 / 20) * (0.8)^2 = 12.8.
  const double spot = chernov_error_bound({100, 2, 10, {0.1, 0.0}});
  CHECK_THAT(spot, WithinRel(100.0 * std::exp(-12.8), 1e-12));

  CHECK(chernov_error_bound({100, 2, 10, {0.5, 0.0}}) == 100.0);  // (1-2a) = 0
  CHECK(chernov_error_bound({100, 2, 10, {0.1, 1.0}}) == 100.0);  // (1-b) = 0

  CHECK_THROWS_AS(chernov_error_bound({100, 2, 0, {0.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(chernov_error_bound({1, 2, 5, {0.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("chernov_error_bound: directional monotonicity") {
  const NoiseSpec mild{0.1, 0.1};
  for (int q = 1; q <= 5; ++q)
    CHECK(chernov_error_bound({200, q + 1, 10, mild}) <=
          chernov_error_bound({200, q, 10, mild}));
  for (int p = 1; p < 30; ++p)
    CHECK(chernov_error_bound({200, 2, p, mild}) <= chernov_error_bound({200, 2, p + 1, mild}));
  for (double a = 0.0; a < 0.5; a += 0.05)
    CHECK(chernov_error_bound({200, 2, 10, {a, 0.1}}) <=
          chernov_error_bound({200, 2, 10, {a + 0.05, 0.1}}));
  for (double a = 0.5; a < 1.0; a += 0.05)
    CHECK(chernov_error_bound({200, 2, 10, {a + 0.05, 0.1}}) <=
          chernov_error_bound({200, 2, 10, {a, 0.1}}));
  for (double b = 0.0; b < 1.0; b += 0.1)
    CHECK(chernov_error_bound({200, 2, 10, {0.1, b}}) <=
          chernov_error_bound({200, 2, 10, {0.1, b + 0.1}}));
}

TEST_CASE("storage_capacity: spot values and the q^2 law") {
  CHECK_THAT(storage_capacity(1000, 4, {0.0, 0.0}),
             WithinRel(16000.0 / (2.0 * std::log(1000.0)), 1e-12));
  // q = 1 is the classical scalar asymptotic N / (2 ln N).
  CHECK_THAT(storage_capacity(1000, 1, {0.0, 0.0}),
             WithinRel(1000.0 / (2.0 * std::log(1000.0)), 1e-12));
  CHECK_THAT(storage_capacity(1000, 1, {0.0, 0.0}), WithinRel(72.382, 1e-4));

  for (int q = 1; q <= 8; ++q) {
    const double ratio =
        storage_capacity(500, q, {0.05, 0.1}) / storage_capacity(500, 1, {0.05, 0.1});
    CHECK_THAT(ratio, WithinRel(static_cast<double>(q) * q, 1e-12));
  }

  CHECK_THROWS_AS(storage_capacity(1, 2, {0.0, 0.0}), std::invalid_argument);
  CHECK_THROWS_AS(storage_capacity(100, 0, {0.0, 0.0}), std::invalid_argument);
}

TEST_CASE("potts_capacity_ratio: spot values, scalar collapse, large-q limit") {
  const PottsComparison at2 = potts_capacity_ratio(2);
  CHECK(at2.potts == 0.138);  // the classical scalar value

  const PottsComparison at4 = potts_capacity_ratio(4);
  CHECK_THAT(at4.ours, WithinRel(2.208, 1e-12));
  CHECK_THAT(at4.potts, WithinRel(0.828, 1e-12));
  CHECK_THAT(at4.ratio, WithinRel(8.0 / 3.0, 1e-12));

  CHECK_THAT(potts_capacity_ratio(1000000).ratio, WithinRel(2.0, 1e-5));
  CHECK_THROWS_AS(potts_capacity_ratio(1), std::invalid_argument);
}

TEST_CASE("signal/crosstalk split: p=1 has no crosstalk") {
  Rng rng(808);
  for (int rep = 0; rep < 10; ++rep) {
    const Pattern x1 = random_pattern(8, 3, rng);
    const Network net(3, {x1});
    const Pattern state = random_pattern(8, 3, rng);
    for (int k = 1; k <= 3; ++k) {
      const AmplitudeSplit split = signal_crosstalk_decomposition(net, state, x1, 2, k);
      CHECK(split.crosstalk == 0);
    }
  }
}

TEST_CASE("signal/crosstalk split: undistorted input carries the full signal") {
  Rng rng(809);
  const int n = 12;
  std::vector<Pattern> patterns;
  for (int mu = 0; mu < 4; ++mu) patterns.push_back(random_pattern(n, 3, rng));
  const Network net(3, patterns);
  const Pattern& target = patterns[0];
  for (int i = 0; i < n; ++i) {
    const SpinState si = target[static_cast<std::size_t>(i)];
    const AmplitudeSplit split =
        signal_crosstalk_decomposition(net, target, target, i, si.freq);
    CHECK(split.signal == static_cast<std::int64_t>(si.sign) * (n - 1));
  }
}

TEST_CASE("signal/crosstalk split: parts sum to the local field exactly") {
  Rng rng(810);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + static_cast<int>(uniform_index(rng, 9));
    const int q = 1 + static_cast<int>(uniform_index(rng, 4));
    const int p = 1 + static_cast<int>(uniform_index(rng, 5));
    std::vector<Pattern> patterns;
    for (int mu = 0; mu < p; ++mu) patterns.push_back(random_pattern(n, q, rng));
    const Network net(q, patterns);
    const int m = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(p)));
    const Pattern state = random_pattern(n, q, rng);
    const int i = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    const Amplitudes amp = local_field(net, state, i);
    for (int k = 1; k <= q; ++k) {
      const AmplitudeSplit split =
          signal_crosstalk_decomposition(net, state, patterns[static_cast<std::size_t>(m)], i, k);
      REQUIRE(split.signal + split.crosstalk == amp[static_cast<std::size_t>(k - 1)]);
    }
  }
}

TEST_CASE("signal/crosstalk split validates the reference pattern") {
  Rng rng(811);
  const Pattern x1 = random_pattern(6, 2, rng);
  const Network net(2, {x1});
  Pattern stranger = x1;
  stranger[0] = negated(stranger[0]);
  CHECK_THROWS_AS(signal_crosstalk_decomposition(net, x1, stranger, 0, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(signal_crosstalk_decomposition(net, x1, x1, 0, 3), std::invalid_argument);
}

TEST_CASE("bound stays above a quick empirical error rate") {
  // Small consistency probe; the acceptance suite runs the full-size one.
  const ModelParams params{100, 2, 8, {0.05, 0.0}};
  const double bound = chernov_error_bound(params);
  REQUIRE(bound < 0.5);
  const int trials = 400;
  int errors = 0;
  for (int t = 0; t < trials; ++t) {
    Rng rng(derive_seed(5150, 0, static_cast<std::uint64_t>(t)));
    errors += recall_trial(params, rng, 20).neuron_errors_one_step > 0;
  }
  const double rate = static_cast<double>(errors) / trials;
  const double std_err = std::sqrt(rate * (1.0 - rate) / trials);
  CHECK(rate <= bound + 3.0 * std_err);
}

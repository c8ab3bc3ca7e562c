#include <catch2/catch_amalgamated.hpp>

#include "parmem/noise.hpp"
#include "support/stats.hpp"

using namespace parmem;
using parmem_test::within_binomial_band;

TEST_CASE("apply_noise: a=b=0 is the identity") {
  Rng rng(1);
  const Pattern x = random_pattern(50, 4, rng);
  CHECK(apply_noise(x, 4, {0.0, 0.0}, rng) == x);
}

TEST_CASE("apply_noise: a=1 flips every sign and keeps every frequency") {
  Rng rng(2);
  const Pattern x = random_pattern(50, 4, rng);
  const Pattern noisy = apply_noise(x, 4, {1.0, 0.0}, rng);
  REQUIRE(noisy.size() == x.size());
  for (std::size_t j = 0; j < x.size(); ++j) {
    CHECK(noisy[j].sign == -x[j].sign);
    CHECK(noisy[j].freq == x[j].freq);
  }
}

TEST_CASE("apply_noise: b=1 always moves to a different channel, signs untouched") {
  Rng rng(3);
  const Pattern x = random_pattern(200, 5, rng);
  const Pattern noisy = apply_noise(x, 5, {0.0, 1.0}, rng);
  for (std::size_t j = 0; j < x.size(); ++j) {
    CHECK(noisy[j].freq != x[j].freq);
    CHECK(noisy[j].freq >= 1);
    CHECK(noisy[j].freq <= 5);
    CHECK(noisy[j].sign == x[j].sign);
  }
}

TEST_CASE("apply_noise: q=1 leaves the frequency step a no-op") {
  Rng rng(4);
  const Pattern x = random_pattern(100, 1, rng);
  const Pattern noisy = apply_noise(x, 1, {0.0, 1.0}, rng);
  CHECK(noisy == x);
}

TEST_CASE("apply_noise: empirical sign-flip and channel-change fractions") {
  Rng rng(2718);
  const int n = 100000;
  const int q = 4;
  const Pattern x = random_pattern(n, q, rng);
  const Pattern noisy = apply_noise(x, q, {0.1, 0.3}, rng);
  long long flipped = 0;
  long long moved = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    flipped += noisy[j].sign != x[j].sign;
    moved += noisy[j].freq != x[j].freq;
  }
  CHECK(within_binomial_band(flipped, n, 0.1, 3.0));
  CHECK(within_binomial_band(moved, n, 0.3, 3.0));
}

TEST_CASE("apply_noise: determinism under a shared seed") {
  Rng rng_a(99);
  Rng rng_b(99);
  Rng source(7);
  const Pattern x = random_pattern(64, 3, source);
  CHECK(apply_noise(x, 3, {0.25, 0.4}, rng_a) == apply_noise(x, 3, {0.25, 0.4}, rng_b));
}

TEST_CASE("apply_noise validates its inputs") {
  Rng rng(5);
  const Pattern x = random_pattern(4, 2, rng);
  CHECK_THROWS_AS(apply_noise(x, 2, {-0.1, 0.0}, rng), std::invalid_argument);
  CHECK_THROWS_AS(apply_noise(x, 2, {0.0, 1.5}, rng), std::invalid_argument);
  CHECK_THROWS_AS(apply_noise(x, 1, {0.0, 0.0}, rng), std::invalid_argument);  // freq 2 > q
}

TEST_CASE("xi_sample_distribution: exact three-point law") {
  const XiDistribution identity = xi_sample_distribution({0.0, 0.0});
  CHECK(identity.p_plus == 1.0);
  CHECK(identity.p_zero == 0.0);
  CHECK(identity.p_minus == 0.0);

  const XiDistribution law = xi_sample_distribution({0.1, 0.3});
  CHECK_THAT(law.p_plus, Catch::Matchers::WithinAbs(0.63, 1e-15));
  CHECK_THAT(law.p_zero, Catch::Matchers::WithinAbs(0.30, 1e-15));
  CHECK_THAT(law.p_minus, Catch::Matchers::WithinAbs(0.07, 1e-15));

  Rng rng(11);
  for (int rep = 0; rep < 50; ++rep) {
    const NoiseSpec spec{uniform_unit(rng), uniform_unit(rng)};
    const XiDistribution d = xi_sample_distribution(spec);
    CHECK_THAT(d.p_plus + d.p_zero + d.p_minus, Catch::Matchers::WithinAbs(1.0, 1e-12));
  }

  CHECK_THROWS_AS(xi_sample_distribution({2.0, 0.0}), std::invalid_argument);
}

TEST_CASE("empirical xi values follow the stated law") {
  Rng rng(31415);
  const int n = 100000;
  const int q = 4;
  const NoiseSpec spec{0.1, 0.3};
  const Pattern x = random_pattern(n, q, rng);
  const Pattern noisy = apply_noise(x, q, spec, rng);

  long long plus = 0, zero = 0, minus = 0;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const int xi = dot(noisy[j], x[j]);
    plus += xi == 1;
    zero += xi == 0;
    minus += xi == -1;
  }
  const XiDistribution law = xi_sample_distribution(spec);
  CHECK(within_binomial_band(plus, n, law.p_plus, 3.0));
  CHECK(within_binomial_band(zero, n, law.p_zero, 3.0));
  CHECK(within_binomial_band(minus, n, law.p_minus, 3.0));
}

// The crosstalk law (+1 and -1 each with probability 1/(2q^2)) is exact for
// b = 0 against a single cross pattern; general b is only an approximation
// and is not asserted.
TEST_CASE("empirical eta values follow the crosstalk law at b=0") {
  Rng rng(1618);
  const int n = 100000;
  const int q = 3;
  const int k = 2;
  const NoiseSpec spec{0.3, 0.0};
  const Pattern target = random_pattern(n, q, rng);
  const Pattern cross = random_pattern(n, q, rng);
  const Pattern noisy = apply_noise(target, q, spec, rng);

  long long plus = 0, minus = 0;
  for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
    const int channel_pick = cross[j].freq == k ? cross[j].sign : 0;
    const int eta = channel_pick * dot(cross[j], noisy[j]);
    plus += eta == 1;
    minus += eta == -1;
  }
  const double tail = 1.0 / (2.0 * q * q);
  CHECK(within_binomial_band(plus, n, tail, 3.0));
  CHECK(within_binomial_band(minus, n, tail, 3.0));
}

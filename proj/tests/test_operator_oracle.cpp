#include <catch2/catch_amalgamated.hpp>

#include "parmem/model.hpp"
#include "parmem/operator_oracle.hpp"

using namespace parmem;

TEST_CASE("operator oracle reproduces the forced p=1 self-field") {
  const Pattern x1 = {{1, 1}, {1, 2}, {-1, 1}};
  const Network net(2, {x1});
  CHECK(operator_oracle_amplitudes(net, x1, 0) == Amplitudes{2, 0});
  CHECK(operator_oracle_amplitudes(net, x1, 2) == Amplitudes{-2, 0});
}

TEST_CASE("operator and vector formalisms agree on 100 random instances") {
  Rng rng(100);
  for (int rep = 0; rep < 100; ++rep) {
    const int n = 2 + static_cast<int>(uniform_index(rng, 9));   // N <= 10
    const int q = 1 + static_cast<int>(uniform_index(rng, 4));   // q <= 4
    const int p = 1 + static_cast<int>(uniform_index(rng, 5));   // p <= 5
    std::vector<Pattern> patterns;
    for (int mu = 0; mu < p; ++mu) patterns.push_back(random_pattern(n, q, rng));
    const Network net(q, patterns);
    const Pattern state = random_pattern(n, q, rng);
    const int i = static_cast<int>(uniform_index(rng, static_cast<std::uint64_t>(n)));
    REQUIRE(operator_oracle_amplitudes(net, state, i) == local_field(net, state, i));
  }
}

TEST_CASE("operator oracle validates like local_field") {
  const Pattern x1 = {{1, 1}, {1, 2}, {-1, 1}};
  const Network net(2, {x1});
  CHECK_THROWS_AS(operator_oracle_amplitudes(net, x1, 3), std::invalid_argument);
  CHECK_THROWS_AS(operator_oracle_amplitudes(net, Pattern{{1, 1}}, 0), std::invalid_argument);
}

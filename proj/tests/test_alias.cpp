#include "doctest.h"

#include <cmath>
#include <limits>

#include "lifegraph/alias.hpp"
#include "lifegraph/errors.hpp"

using namespace lifegraph;

TEST_CASE("implied probabilities equal normalized weights") {
    const AliasTable table({1.0, 2.0, 1.0});
    const auto p = table.implied_probabilities();
    REQUIRE(p.size() == 3);
    CHECK(std::abs(p[0] - 0.25) < 1e-12);
    CHECK(std::abs(p[1] - 0.50) < 1e-12);
    CHECK(std::abs(p[2] - 0.25) < 1e-12);
}

TEST_CASE("implied probabilities are exact for random weight lists") {
    Rng rng(8080);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.next_below(40);
        std::vector<double> weights(n);
        double total = 0;
        for (auto& w : weights) {
            w = std::exp(rng.next_double(-6.0, 6.0));
            total += w;
        }
        const AliasTable table(weights);
        const auto p = table.implied_probabilities();
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(p[i] - weights[i] / total) < 1e-12);
        }
    }
}

TEST_CASE("degenerate and uniform tables") {
    const AliasTable single({5.0});
    Rng rng(1);
    for (int i = 0; i < 100; ++i) CHECK(single.sample(rng) == 0);

    const AliasTable uniform({1.0, 1.0, 1.0, 1.0});
    const auto p = uniform.implied_probabilities();
    for (double x : p) CHECK(std::abs(x - 0.25) < 1e-12);
}

TEST_CASE("empirical frequencies match within L1 0.01 over 1e6 draws") {
    const std::vector<double> weights{1.0, 2.0, 1.0};
    const AliasTable table(weights);
    Rng rng(990);
    std::vector<std::size_t> counts(3, 0);
    const std::size_t draws = 1'000'000;
    for (std::size_t i = 0; i < draws; ++i) ++counts[table.sample(rng)];
    const double expected[3] = {0.25, 0.5, 0.25};
    double l1 = 0;
    for (int i = 0; i < 3; ++i) {
        l1 += std::abs(static_cast<double>(counts[i]) / static_cast<double>(draws) - expected[i]);
    }
    CHECK(l1 < 0.01);
}

TEST_CASE("alias table rejects bad weights") {
    CHECK_THROWS_AS(AliasTable({}), UsageError);
    CHECK_THROWS_AS(AliasTable({1.0, 0.0}), UsageError);
    CHECK_THROWS_AS(AliasTable({1.0, -2.0}), UsageError);
    CHECK_THROWS_AS(AliasTable({1.0, std::numeric_limits<double>::infinity()}), UsageError);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "risktool/distribution.hpp"
#include "risktool/errors.hpp"
#include "test_util.hpp"

using namespace risktool;

TEST_CASE("loss vector validation") {
    CHECK_THROWS_AS(LossVector({}), EmptyInput);
    CHECK_THROWS_AS(LossVector({1.0, std::nan("")}), NonFiniteValue);
    CHECK_THROWS_AS(LossVector({std::numeric_limits<double>::infinity()}), NonFiniteValue);
    const LossVector v({3.0, 1.0, 2.0});
    CHECK(v.size() == 3);
    CHECK(v.mean() == doctest::Approx(2.0));
}

TEST_CASE("canonicalize sorts, merges and renormalizes") {
    const auto d = DiscreteDistribution::canonicalize({{2.0, 0.5}, {1.0, 0.5}});
    REQUIRE(d.size() == 2);
    CHECK(d.atoms()[0].value == 1.0);
    CHECK(d.atoms()[1].value == 2.0);

    const auto merged = DiscreteDistribution::canonicalize({{1.0, 0.5}, {1.0, 0.5}});
    REQUIRE(merged.size() == 1);
    CHECK(merged.atoms()[0].value == 1.0);
    CHECK(merged.atoms()[0].prob == 1.0);

    CHECK_THROWS_AS(DiscreteDistribution::canonicalize({{1.0, 0.3}, {2.0, 0.8}}), BadProbability);
    CHECK_THROWS_AS(DiscreteDistribution::canonicalize({}), EmptyInput);
    CHECK_THROWS_AS(DiscreteDistribution::canonicalize({{std::nan(""), 1.0}}), NonFiniteValue);
    CHECK_THROWS_AS(DiscreteDistribution::canonicalize({{1.0, 0.0}, {2.0, 1.0}}), BadProbability);
    CHECK_THROWS_AS(DiscreteDistribution::canonicalize({{1.0, -0.1}, {2.0, 1.1}}), BadProbability);
}

TEST_CASE("canonicalize is idempotent") {
    SplitMix64 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
        const auto d = testutil::random_distribution(rng);
        const auto again = DiscreteDistribution::canonicalize(d.atoms());
        REQUIRE(again.size() == d.size());
        for (std::size_t i = 0; i < d.size(); ++i) {
            CHECK(again.atoms()[i].value == d.atoms()[i].value);
            CHECK(again.atoms()[i].prob == d.atoms()[i].prob);
        }
    }
}

TEST_CASE("empirical distribution") {
    const auto d = DiscreteDistribution::empirical(LossVector({3.0, 1.0, 1.0}));
    REQUIRE(d.size() == 2);
    CHECK(d.atoms()[0].value == 1.0);
    CHECK(d.atoms()[0].prob == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(d.atoms()[1].value == 3.0);
    CHECK(d.atoms()[1].prob == doctest::Approx(1.0 / 3.0).epsilon(1e-15));

    const auto point = DiscreteDistribution::empirical(LossVector({5.0}));
    REQUIRE(point.size() == 1);
    CHECK(point.atoms()[0].prob == 1.0);

    const auto four = DiscreteDistribution::empirical(LossVector({0.0, 1.0, 2.0, 3.0}));
    REQUIRE(four.size() == 4);
    for (const Atom& a : four.atoms()) {
        CHECK(a.prob == 0.25);
    }
}

TEST_CASE("empirical distribution preserves the mean") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.next_unit() * 63);
        const LossVector v(testutil::random_losses(rng, n));
        const auto d = DiscreteDistribution::empirical(v);
        CHECK(std::abs(d.mean() - v.mean()) <= 1e-12);
    }
}

TEST_CASE("cdf is a right-continuous step function") {
    const auto d = DiscreteDistribution::empirical(LossVector({1.0, 2.0, 3.0, 4.0}));
    CHECK(d.cdf(2.0) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.cdf(0.9) == 0.0);
    CHECK(d.cdf(2.5) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(d.cdf(4.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(d.cdf(100.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK_THROWS_AS(d.cdf(std::nan("")), NonFiniteValue);
}

TEST_CASE("quantile follows the inf convention") {
    const auto d = DiscreteDistribution::empirical(LossVector({1.0, 2.0, 3.0, 4.0}));
    CHECK(d.quantile(0.5) == 2.0);
    CHECK(d.quantile(0.75) == 3.0);
    CHECK(d.quantile(0.51) == 3.0);
    CHECK(d.quantile(0.25) == 1.0);

    const auto point = DiscreteDistribution::empirical(LossVector({7.0}));
    CHECK(point.quantile(0.01) == 7.0);
    CHECK(point.quantile(0.99) == 7.0);

    CHECK_THROWS_AS(d.quantile(0.0), BetaOutOfRange);
    CHECK_THROWS_AS(d.quantile(1.0), BetaOutOfRange);
    CHECK_THROWS_AS(d.quantile(-0.5), BetaOutOfRange);
}

TEST_CASE("quantile and cdf form a Galois pair") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const auto d = testutil::random_distribution(rng);
        for (int j = 0; j < 20; ++j) {
            const double beta = 1e-6 + (1.0 - 2e-6) * rng.next_unit();
            CHECK(d.cdf(d.quantile(beta)) >= beta);
        }
        for (const Atom& a : d.atoms()) {
            const double f = d.cdf(a.value);
            if (f > 0.0 && f < 1.0) {
                CHECK(d.quantile(f) <= a.value);
            }
        }
    }
}

TEST_CASE("order statistics") {
    const LossVector v({3.0, 1.0, 2.0});
    CHECK(order_statistic(v, 1, Order::descending) == 3.0);
    CHECK(order_statistic(v, 2, Order::ascending) == 2.0);
    CHECK(order_statistic(LossVector({5.0, 5.0}), 2, Order::descending) == 5.0);
    CHECK_THROWS_AS(order_statistic(v, 0, Order::ascending), IndexOutOfRange);
    CHECK_THROWS_AS(order_statistic(v, 4, Order::ascending), IndexOutOfRange);
}

TEST_CASE("descending and ascending order statistics mirror each other") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.next_unit() * 31);
        const LossVector v(testutil::random_losses(rng, n));
        for (std::size_t k = 1; k <= n; ++k) {
            CHECK(order_statistic(v, k, Order::descending) ==
                  order_statistic(v, n + 1 - k, Order::ascending));
        }
    }
}

TEST_CASE("shift and negate preserve canonical form") {
    SplitMix64 rng(17);
    const auto d = testutil::random_distribution(rng);
    const auto shifted = d.shifted(2.5);
    REQUIRE(shifted.size() == d.size());
    for (std::size_t i = 0; i < d.size(); ++i) {
        CHECK(shifted.atoms()[i].value == d.atoms()[i].value + 2.5);
        CHECK(shifted.atoms()[i].prob == d.atoms()[i].prob);
    }
    const auto neg = d.negated();
    REQUIRE(neg.size() == d.size());
    CHECK(neg.min_value() == -d.max_value());
    CHECK(neg.max_value() == -d.min_value());
    CHECK(std::abs(neg.mean() + d.mean()) < 1e-12);
}

TEST_CASE("spectrum validation") {
    CHECK_NOTHROW(SpectrumFunction::uniform());
    CHECK_NOTHROW(SpectrumFunction::cvar(0.5));
    CHECK_NOTHROW(SpectrumFunction({0.0, 0.25, 1.0}, {0.4, 1.2}));

    // decreasing levels
    CHECK_THROWS_AS(SpectrumFunction({0.0, 0.5, 1.0}, {1.5, 0.5}), BadSpectrum);
    // does not integrate to one
    CHECK_THROWS_AS(SpectrumFunction({0.0, 1.0}, {0.9}), BadSpectrum);
    // breakpoints must span [0,1]
    CHECK_THROWS_AS(SpectrumFunction({0.1, 1.0}, {1.0 / 0.9}), BadSpectrum);
    CHECK_THROWS_AS(SpectrumFunction({0.0, 0.5}, {2.0}), BadSpectrum);
    // negative level
    CHECK_THROWS_AS(SpectrumFunction({0.0, 0.5, 1.0}, {-0.5, 2.5}), BadSpectrum);
    CHECK_THROWS_AS(SpectrumFunction::cvar(1.0), BetaOutOfRange);
}


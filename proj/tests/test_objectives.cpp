#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "risktool/errors.hpp"
#include "risktool/objectives.hpp"
#include "test_util.hpp"

using namespace risktool;

namespace {

// brute-force pairwise sample variance, the definitional form
double pairwise_variance(const std::vector<double>& x) {
    const std::size_t n = x.size();
    if (n < 2) return 0.0;
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            s += (x[i] - x[j]) * (x[i] - x[j]);
        }
    }
    return s / (static_cast<double>(n) * static_cast<double>(n - 1));
}

} // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(ObjectiveSpec::exp_smooth(0.0), BadSpec);
    CHECK_THROWS_AS(ObjectiveSpec::svp(-1.0), BadSpec);
    CHECK_THROWS_AS(ObjectiveSpec::kth_largest(0), BadSpec);
    CHECK_THROWS_AS(ObjectiveSpec::l_statistic({0.5, 0.4}), BadSpec);
    CHECK_THROWS_AS(ObjectiveSpec::l_statistic({}), BadSpec);
    CHECK_THROWS_AS(ObjectiveSpec::cvar(1.0), BadSpec);
    CHECK_THROWS_AS(ObjectiveSpec::m_estimator(ScalarFunction::squared(), 0.0), BadSpec);
    CHECK_THROWS_AS(ObjectiveSpec::m_estimator(ScalarFunction::log_utility()), BadSpec);
}

TEST_CASE("objective values on worked examples") {
    const LossVector v123({1.0, 2.0, 3.0});
    const LossVector v312({3.0, 1.0, 2.0});
    CHECK(eval_objective(ObjectiveSpec::mean(), v123) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(eval_objective(ObjectiveSpec::avg_top_k(2), v312) ==
          doctest::Approx(2.5).epsilon(1e-15));
    CHECK(eval_objective(ObjectiveSpec::kth_largest(1), v312) == 3.0);
    CHECK(eval_objective(ObjectiveSpec::l_statistic({0.0, 1.0, 0.0}), v312) == 2.0);

    // (1/1) log((e^0 + e^{ln 3})/2) = ln 2
    const LossVector tilt({0.0, std::log(3.0)});
    CHECK(eval_objective(ObjectiveSpec::exp_smooth(1.0), tilt) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));

    // quadratic rho forces the location to the sample mean
    SplitMix64 rng(3);
    for (int trial = 0; trial < 20; ++trial) {
        const LossVector v(testutil::random_losses(rng, 17));
        const double m = eval_objective(
            ObjectiveSpec::m_estimator(ScalarFunction::squared(), 1.0), v);
        CHECK(m == doctest::Approx(v.mean()).epsilon(1e-10));
    }

    // svp on {0,1}: 0.5 + sqrt(0.5/2) = 1, with the pairwise form as oracle
    const LossVector two({0.0, 1.0});
    CHECK(pairwise_variance(two.values()) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(eval_objective(ObjectiveSpec::svp(1.0), two) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("svp matches the pairwise enumeration oracle") {
    SplitMix64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next_unit() * 20);
        const LossVector v(testutil::random_losses(rng, n));
        const double eta = 2.0 * rng.next_unit();
        const double expected =
            v.mean() + eta * std::sqrt(pairwise_variance(v.values()) / static_cast<double>(n));
        CHECK(eval_objective(ObjectiveSpec::svp(eta), v) ==
              doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("evaluation-time validation") {
    const LossVector v({1.0, 2.0});
    CHECK_THROWS_AS(eval_objective(ObjectiveSpec::kth_largest(3), v), BadSpec);
    CHECK_THROWS_AS(eval_objective(ObjectiveSpec::avg_top_k(5), v), BadSpec);
    CHECK_THROWS_AS(eval_objective(ObjectiveSpec::l_statistic({1.0}), v), BadSpec);
}

TEST_CASE("top-k family identities") {
    SplitMix64 rng(9);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + static_cast<std::size_t>(rng.next_unit() * 31);
        const LossVector v(testutil::random_losses(rng, n));
        CHECK(eval_objective(ObjectiveSpec::avg_top_k(n), v) ==
              doctest::Approx(v.mean()).epsilon(1e-13));
        CHECK(eval_objective(ObjectiveSpec::avg_top_k(1), v) == v.max());
        CHECK(eval_objective(ObjectiveSpec::kth_largest(1), v) == v.max());
    }
}

TEST_CASE("l_statistic specializations") {
    SplitMix64 rng(15);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next_unit() * 20);
        const LossVector v(testutil::random_losses(rng, n));
        const std::vector<double> uniform(n, 1.0 / static_cast<double>(n));
        CHECK(eval_objective(ObjectiveSpec::l_statistic(uniform), v) ==
              doctest::Approx(v.mean()).epsilon(1e-12));

        const std::size_t k = 1 + static_cast<std::size_t>(rng.next_unit() * (n - 1));
        std::vector<double> topk(n, 0.0);
        for (std::size_t i = n - k; i < n; ++i) {
            topk[i] = 1.0 / static_cast<double>(k);
        }
        CHECK(eval_objective(ObjectiveSpec::l_statistic(topk), v) ==
              doctest::Approx(eval_objective(ObjectiveSpec::avg_top_k(k), v)).epsilon(1e-12));
    }
}

TEST_CASE("exponential smoothing limits and monotonicity") {
    SplitMix64 rng(21);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(rng.next_unit() * 14);
        const LossVector v(testutil::random_losses(rng, n, -5.0, 5.0));

        // nondecreasing in gamma
        double prev = -1e18;
        for (double gamma : {-8.0, -2.0, -0.5, 0.5, 2.0, 8.0}) {
            const double cur = eval_objective(ObjectiveSpec::exp_smooth(gamma), v);
            CHECK(cur >= prev - 1e-10);
            prev = cur;
        }

        // small gamma approaches the mean linearly
        CHECK(std::abs(eval_objective(ObjectiveSpec::exp_smooth(1e-6), v) - v.mean()) <= 1e-4);

        // the max-approximation gap is log(n)/gamma
        const double g50 = eval_objective(ObjectiveSpec::exp_smooth(50.0), v);
        CHECK(v.max() - g50 <= std::log(static_cast<double>(n)) / 50.0 + 1e-9);
        CHECK(g50 <= v.max() + 1e-12);
    }

    // with a unit gap and a tilt big enough to swallow log(n), the smoothed
    // objective pins the max loss
    const LossVector gap({0.0, 1.0, 2.5, 4.0});
    CHECK(std::abs(eval_objective(ObjectiveSpec::exp_smooth(1e7), gap) - 4.0) <= 1e-6);
}

TEST_CASE("m-estimator is translation equivariant") {
    SplitMix64 rng(27);
    for (const auto& rho : {ScalarFunction::squared(), ScalarFunction::huber(0.8)}) {
        for (int trial = 0; trial < 20; ++trial) {
            const std::size_t n = 3 + static_cast<std::size_t>(rng.next_unit() * 20);
            const std::vector<double> base = testutil::random_losses(rng, n);
            const double c = testutil::uniform_in(rng, -5.0, 5.0);
            std::vector<double> moved = base;
            for (double& x : moved) x += c;
            const auto spec = ObjectiveSpec::m_estimator(rho, 1.3);
            CHECK(eval_objective(spec, LossVector(moved)) ==
                  doctest::Approx(eval_objective(spec, LossVector(base)) + c).epsilon(1e-9));
        }
    }
}

TEST_CASE("subgradient weights on worked examples") {
    const LossVector v({3.0, 1.0, 2.0});
    const std::vector<std::vector<double>> dloss = {{1.0, 0.0}, {0.0, 1.0}, {1.0, 1.0}};

    const auto g_mean = objective_subgradient(ObjectiveSpec::mean(), v, dloss);
    CHECK(g_mean[0] == doctest::Approx(2.0 / 3.0));
    CHECK(g_mean[1] == doctest::Approx(2.0 / 3.0));

    // max attained at original index 0
    const auto g_max = objective_subgradient(ObjectiveSpec::kth_largest(1), v, dloss);
    CHECK(g_max[0] == 1.0);
    CHECK(g_max[1] == 0.0);

    // equal losses smooth to a uniform average
    const LossVector flat({2.0, 2.0, 2.0});
    const auto g_tilt = objective_subgradient(ObjectiveSpec::exp_smooth(3.0), flat, dloss);
    CHECK(g_tilt[0] == doctest::Approx(2.0 / 3.0));
    CHECK(g_tilt[1] == doctest::Approx(2.0 / 3.0));

    CHECK_THROWS_AS(objective_subgradient(ObjectiveSpec::mean(), v, {{1.0}}), DimensionMismatch);
    CHECK_THROWS_AS(objective_subgradient(ObjectiveSpec::mean(), v, {{1.0}, {1.0}, {1.0, 2.0}}),
                    DimensionMismatch);
}

TEST_CASE("ties route subgradients to the lowest index") {
    const LossVector tied({5.0, 5.0, 1.0});
    const std::vector<std::vector<double>> dloss = {{1.0}, {10.0}, {100.0}};
    const auto g1 = objective_subgradient(ObjectiveSpec::kth_largest(1), tied, dloss);
    CHECK(g1[0] == 1.0);
    const auto g2 = objective_subgradient(ObjectiveSpec::kth_largest(2), tied, dloss);
    CHECK(g2[0] == 10.0);
}

TEST_CASE("subgradients match finite differences through a smooth path") {
    // losses move linearly in a scalar parameter: loss_i(t) = a_i t + b_i,
    // so dloss_i = {a_i} and the chain rule is checkable by differencing
    SplitMix64 rng(33);
    const std::vector<ObjectiveSpec> specs = {
        ObjectiveSpec::mean(),
        ObjectiveSpec::exp_smooth(1.2),
        ObjectiveSpec::exp_smooth(-0.8),
        ObjectiveSpec::svp(0.7),
        ObjectiveSpec::avg_top_k(3),
        ObjectiveSpec::kth_largest(2),
        ObjectiveSpec::cvar(0.7),
        ObjectiveSpec::m_estimator(ScalarFunction::squared(), 1.0),
        ObjectiveSpec::m_estimator(ScalarFunction::huber(1.5), 2.0),
        ObjectiveSpec::m_estimator(ScalarFunction::catoni(), 1.0),
    };
    const std::size_t n = 9;
    for (const auto& spec : specs) {
        CAPTURE(spec.describe());
        for (int trial = 0; trial < 10; ++trial) {
            const std::vector<double> a = testutil::random_losses(rng, n, -2.0, 2.0);
            const std::vector<double> b = testutil::random_losses(rng, n, 0.0, 10.0);
            const double t0 = testutil::uniform_in(rng, -1.0, 1.0);
            auto losses_at = [&](double t) {
                std::vector<double> out(n);
                for (std::size_t i = 0; i < n; ++i) {
                    out[i] = a[i] * t + b[i];
                }
                return out;
            };
            // skip configurations where order statistics tie or sit near a
            // switch; the derivative is not defined there
            const std::vector<double> l0 = losses_at(t0);
            std::vector<double> sorted = l0;
            std::sort(sorted.begin(), sorted.end());
            bool near_tie = false;
            for (std::size_t i = 1; i < n; ++i) {
                if (sorted[i] - sorted[i - 1] < 1e-3) near_tie = true;
            }
            if (near_tie) continue;

            std::vector<std::vector<double>> dloss(n);
            for (std::size_t i = 0; i < n; ++i) {
                dloss[i] = {a[i]};
            }
            const double grad =
                objective_subgradient(spec, LossVector(l0), dloss)[0];
            const double fd = testutil::central_diff(
                [&](double t) { return eval_objective(spec, LossVector(losses_at(t))); }, t0,
                1e-6);
            CHECK(std::abs(grad - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
        }
    }
}

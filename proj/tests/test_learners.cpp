#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "risktool/datagen.hpp"
#include "risktool/errors.hpp"
#include "risktool/learners.hpp"
#include "risktool/oracle.hpp"
#include "test_util.hpp"

using namespace risktool;

namespace {

Dataset single_feature(const std::vector<double>& xs, const std::vector<double>& ys) {
    std::vector<Row> rows;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        rows.push_back({{xs[i]}, ys[i], ""});
    }
    return Dataset(std::move(rows));
}

// fixed 1-d regression sample with a benign spread of inputs
Dataset regression_instance() {
    return gen_regression(1, 60, {2.0}, DistSpec::normal(0.0, 0.5), 424242);
}

double objective_of_weight(const Dataset& data, const ObjectiveSpec& spec, double w) {
    LinearModel m;
    m.weights = {w};
    std::vector<double> losses;
    for (const Row& row : data.rows()) {
        losses.push_back(pointwise_loss(m, row, LossKind::squared));
    }
    return eval_objective(spec, LossVector(losses));
}

} // namespace

TEST_CASE("dataset validation") {
    CHECK_THROWS_AS(Dataset({}), EmptyInput);
    CHECK_THROWS_AS(Dataset({{{1.0}, 0.0, ""}, {{1.0, 2.0}, 0.0, ""}}), DimensionMismatch);
    CHECK_THROWS_AS(Dataset({{{std::nan("")}, 0.0, ""}}), NonFiniteValue);
    CHECK_THROWS_AS(Dataset({{{1.0}, std::nan(""), ""}}), NonFiniteValue);
    const Dataset d({{{1.0}, 1.0, "a"}, {{2.0}, -1.0, ""}});
    CHECK(d.has_groups());
}

TEST_CASE("pointwise losses") {
    LinearModel m;
    m.weights = {1.0};
    m.bias = 0.0;

    CHECK(pointwise_loss(m, {{2.0}, 2.0, ""}, LossKind::squared) == 0.0);
    CHECK(pointwise_loss(m, {{1.0}, 1.0, ""}, LossKind::hinge) == 0.0);
    CHECK(pointwise_loss(m, {{0.0}, 1.0, ""}, LossKind::logistic) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
    CHECK(pointwise_loss(m, {{-3.0}, 1.0, ""}, LossKind::hinge) == doctest::Approx(4.0));

    CHECK_THROWS_AS(pointwise_loss(m, {{1.0, 2.0}, 0.0, ""}, LossKind::squared),
                    DimensionMismatch);
    CHECK_THROWS_AS(pointwise_loss(m, {{1.0}, 0.5, ""}, LossKind::hinge), BadSpec);
    CHECK_THROWS_AS(pointwise_loss(m, {{1.0}, 2.0, ""}, LossKind::logistic), BadSpec);
}

TEST_CASE("pointwise subgradients") {
    LinearModel m;
    m.weights = {1.0};
    m.bias = 0.0;

    // squared: d/dw (w*1 - 0)^2 = 2
    const auto g = pointwise_subgrad(m, {{1.0}, 0.0, ""}, LossKind::squared);
    CHECK(g[0] == doctest::Approx(2.0));
    CHECK(g[1] == doctest::Approx(2.0));

    // hinge at margin exactly one: right derivative gives the zero vector
    const auto gz = pointwise_subgrad(m, {{1.0}, 1.0, ""}, LossKind::hinge);
    CHECK(gz[0] == 0.0);
    CHECK(gz[1] == 0.0);

    // logistic matches central differences in (w, b)
    SplitMix64 rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        LinearModel mm;
        mm.weights = {testutil::uniform_in(rng, -2.0, 2.0),
                      testutil::uniform_in(rng, -2.0, 2.0)};
        mm.bias = testutil::uniform_in(rng, -1.0, 1.0);
        const Row row{{testutil::uniform_in(rng, -2.0, 2.0),
                       testutil::uniform_in(rng, -2.0, 2.0)},
                      rng.next_unit() < 0.5 ? -1.0 : 1.0,
                      ""};
        const auto grad = pointwise_subgrad(mm, row, LossKind::logistic);
        const auto fd = finite_diff_grad(
            [&](const std::vector<double>& x) {
                LinearModel probe;
                probe.weights = {x[0], x[1]};
                probe.bias = x[2];
                return pointwise_loss(probe, row, LossKind::logistic);
            },
            {mm.weights[0], mm.weights[1], mm.bias}, 1e-6);
        for (int j = 0; j < 3; ++j) {
            CHECK(std::abs(grad[j] - fd[j]) <= 1e-6 * std::max(1.0, std::abs(fd[j])));
        }
    }
}

TEST_CASE("training recovers a constant target") {
    // n identical rows (x=1, y=c): model output w + b must converge to c
    const double c = 3.0;
    Dataset data = single_feature(std::vector<double>(8, 1.0), std::vector<double>(8, c));
    TrainConfig cfg;
    cfg.objective = ObjectiveSpec::mean();
    cfg.loss = LossKind::squared;
    cfg.steps = 2000;
    cfg.step = {StepSchedule::Kind::constant, 0.1};
    cfg.seed = 1;
    cfg.averaging = Averaging::last;
    const TrainResult r = train(cfg, data);
    CHECK(r.model.weights[0] + r.model.bias == doctest::Approx(c).epsilon(1e-6));
    CHECK(r.trace.size() == 2000);

    cfg.steps = 1;
    CHECK(train(cfg, data).trace.size() == 1);
    cfg.steps = 0;
    CHECK_THROWS_AS(train(cfg, data), BadSpec);
}

TEST_CASE("training is deterministic, minibatch mode included") {
    const Dataset data = regression_instance();
    TrainConfig cfg;
    cfg.objective = ObjectiveSpec::avg_top_k(5);
    cfg.loss = LossKind::squared;
    cfg.steps = 200;
    cfg.step = {StepSchedule::Kind::inv_sqrt, 0.2};
    cfg.seed = 99;
    cfg.minibatch = 16;
    const TrainResult a = train(cfg, data);
    const TrainResult b = train(cfg, data);
    REQUIRE(a.trace.size() == b.trace.size());
    for (std::size_t i = 0; i < a.trace.size(); ++i) {
        CHECK(a.trace[i] == b.trace[i]);
    }
    CHECK(a.model.weights[0] == b.model.weights[0]);
    CHECK(a.model.bias == b.model.bias);

    cfg.seed = 100;
    const TrainResult other = train(cfg, data);
    CHECK(a.trace.back() != other.trace.back());

    cfg.minibatch = data.size() + 1;
    CHECK_THROWS_AS(train(cfg, data), BadSpec);
}

TEST_CASE("best iterate lands near the grid optimum on convex instances") {
    const Dataset data = regression_instance();
    for (const auto& spec : {ObjectiveSpec::mean(), ObjectiveSpec::avg_top_k(10),
                             ObjectiveSpec::cvar(0.9), ObjectiveSpec::exp_smooth(1.0)}) {
        CAPTURE(spec.describe());
        TrainConfig cfg;
        cfg.objective = spec;
        cfg.loss = LossKind::squared;
        cfg.steps = 3000;
        cfg.step = {StepSchedule::Kind::inv_sqrt, 0.3};
        cfg.seed = 11;
        cfg.averaging = Averaging::best;
        cfg.fit_bias = false;
        const TrainResult r = train(cfg, data);

        const GridResult grid = grid_min_scalar(
            [&](double w) { return objective_of_weight(data, spec, w); }, -5.0, 5.0, 10000);
        const double best = *std::min_element(r.trace.begin(), r.trace.end());
        CHECK(best <= grid.min * 1.01 + 1e-9);
    }
}

TEST_CASE("uniform-average iterate objective settles monotonically") {
    const Dataset data = regression_instance();
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t T : {100, 200, 300, 400, 500}) {
        TrainConfig cfg;
        cfg.objective = ObjectiveSpec::mean();
        cfg.loss = LossKind::squared;
        cfg.steps = T;
        cfg.step = {StepSchedule::Kind::inv_sqrt, 0.3};
        cfg.seed = 21;
        cfg.averaging = Averaging::uniform_average;
        cfg.fit_bias = false;
        const TrainResult r = train(cfg, data);
        const double avg_obj =
            objective_of_weight(data, ObjectiveSpec::mean(), r.model.weights[0]);
        CHECK(avg_obj <= prev + 1e-9);
        prev = avg_obj;
    }
}

TEST_CASE("cvar joint descent tracks the loss quantile") {
    const Dataset data = regression_instance();
    TrainConfig cfg;
    cfg.objective = ObjectiveSpec::cvar(0.9);
    cfg.loss = LossKind::squared;
    cfg.steps = 6000;
    cfg.step = {StepSchedule::Kind::inv_sqrt, 0.1};
    cfg.seed = 31;
    cfg.averaging = Averaging::last;
    const TrainResult r = train(cfg, data);
    REQUIRE(r.theta.has_value());

    std::vector<double> losses;
    for (const Row& row : data.rows()) {
        losses.push_back(pointwise_loss(r.model, row, LossKind::squared));
    }
    const double q = DiscreteDistribution::empirical(LossVector(losses)).quantile(0.9);
    CHECK(std::abs(*r.theta - q) <= 1e-2);
}

TEST_CASE("worst-case emphasis: tilted training beats mean training on the max loss") {
    // bulk at y = 0, one strong outlier row
    std::vector<double> xs(30, 1.0);
    std::vector<double> ys(30, 0.0);
    ys.back() = 5.0; // outlier
    const Dataset data = single_feature(xs, ys);

    auto run = [&](const ObjectiveSpec& spec) {
        TrainConfig cfg;
        cfg.objective = spec;
        cfg.loss = LossKind::squared;
        cfg.steps = 4000;
        cfg.step = {StepSchedule::Kind::inv_sqrt, 0.2};
        cfg.seed = 7;
        cfg.averaging = Averaging::best;
        const TrainResult r = train(cfg, data);
        double worst = 0.0;
        for (const Row& row : data.rows()) {
            worst = std::max(worst, pointwise_loss(r.model, row, LossKind::squared));
        }
        return worst;
    };
    const double worst_tilted = run(ObjectiveSpec::exp_smooth(50.0));
    const double worst_mean = run(ObjectiveSpec::mean());
    CHECK(worst_tilted <= worst_mean);
}

TEST_CASE("divergence guard trips with the trace attached") {
    const Dataset data = regression_instance();
    TrainConfig cfg;
    cfg.objective = ObjectiveSpec::mean();
    cfg.loss = LossKind::squared;
    cfg.steps = 100;
    cfg.step = {StepSchedule::Kind::constant, 1e6};
    cfg.seed = 3;
    CHECK_THROWS_AS(train(cfg, data), NonFiniteObjective);
    try {
        train(cfg, data);
    } catch (const NonFiniteObjective& e) {
        CHECK(e.trace.size() < 100);
    }
}

TEST_CASE("evaluate reports risks of the empirical test losses") {
    // a perfect model has identically zero losses, so every risk is zero
    std::vector<Row> rows;
    for (double x : {0.5, 1.0, 1.5, -2.0}) {
        rows.push_back({{x}, 2.0 * x, ""});
    }
    const Dataset data(rows);
    LinearModel perfect;
    perfect.weights = {2.0};
    perfect.bias = 0.0;
    CHECK(evaluate(perfect, data, RiskSpec::mean(), LossKind::squared).value == 0.0);
    CHECK(evaluate(perfect, data, RiskSpec::cvar(0.9), LossKind::squared).value == 0.0);
    CHECK(evaluate(perfect, data, RiskSpec::entropic(1.0), LossKind::squared).value ==
          doctest::Approx(0.0).epsilon(1e-12));

    // an imperfect model: spec mean equals the average loss, and the
    // cvar(1-k/n) evaluation matches the average top-k losses
    LinearModel rough;
    rough.weights = {1.0};
    rough.bias = 0.25;
    std::vector<double> losses;
    for (const Row& row : data.rows()) {
        losses.push_back(pointwise_loss(rough, row, LossKind::squared));
    }
    const LossVector lv(losses);
    CHECK(evaluate(rough, data, RiskSpec::mean(), LossKind::squared).value ==
          doctest::Approx(lv.mean()).epsilon(1e-12));
    const std::size_t k = 2;
    const double beta = 1.0 - static_cast<double>(k) / static_cast<double>(data.size());
    CHECK(evaluate(rough, data, RiskSpec::cvar(beta), LossKind::squared).value ==
          doctest::Approx(eval_objective(ObjectiveSpec::avg_top_k(k), lv)).epsilon(1e-12));

    // grouped data routes fairness through group-conditional means
    std::vector<Row> grows = {{{1.0}, 0.0, "a"},
                              {{1.0}, 0.0, "a"},
                              {{1.0}, 1.0, "b"},
                              {{1.0}, 1.0, "b"}};
    LinearModel zero;
    zero.weights = {0.0};
    zero.bias = 0.0;
    // losses: group a -> 0, group b -> 1; fairness = 0.5 + 0.25
    CHECK(evaluate(zero, Dataset(grows), RiskSpec::fairness_mean_var(), LossKind::squared)
              .value == doctest::Approx(0.75).epsilon(1e-12));
}

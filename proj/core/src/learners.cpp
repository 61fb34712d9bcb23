#include "risktool/learners.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "risktool/errors.hpp"
#include "risktool/rng.hpp"

namespace risktool {

namespace {

void require_dim(const LinearModel& model, const Row& row) {
    if (model.weights.size() != row.features.size()) {
        throw DimensionMismatch("model has " + std::to_string(model.weights.size()) +
                                " weights but the row has " +
                                std::to_string(row.features.size()) + " features");
    }
}

void require_label(const Row& row, LossKind kind) {
    if (kind != LossKind::squared && row.label != 1.0 && row.label != -1.0) {
        throw BadSpec("classification losses need labels in {-1,+1}");
    }
}

double stable_log1pexp(double z) {
    // log(1 + e^z) without overflow
    return z > 0.0 ? z + std::log1p(std::exp(-z)) : std::log1p(std::exp(z));
}

std::vector<double> all_losses(const LinearModel& model, const Dataset& data, LossKind kind) {
    std::vector<double> out;
    out.reserve(data.size());
    for (const Row& row : data.rows()) {
        out.push_back(pointwise_loss(model, row, kind));
    }
    return out;
}

double empirical_quantile(std::vector<double> losses, double beta) {
    std::stable_sort(losses.begin(), losses.end());
    const double n = static_cast<double>(losses.size());
    for (std::size_t i = 0; i < losses.size(); ++i) {
        if (static_cast<double>(i + 1) / n >= beta) {
            return losses[i];
        }
    }
    return losses.back();
}

} // namespace

double LinearModel::predict(const std::vector<double>& features) const {
    if (features.size() != weights.size()) {
        throw DimensionMismatch("feature dimension does not match the model");
    }
    double m = bias;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        m += weights[j] * features[j];
    }
    return m;
}

Dataset::Dataset(std::vector<Row> rows) : rows_(std::move(rows)) {
    if (rows_.empty()) {
        throw EmptyInput("dataset must contain at least one row");
    }
    const std::size_t d = rows_.front().features.size();
    if (d == 0) {
        throw BadSpec("rows must carry at least one feature");
    }
    for (const Row& row : rows_) {
        if (row.features.size() != d) {
            throw DimensionMismatch("all rows must share one feature dimension");
        }
        for (double x : row.features) {
            if (!std::isfinite(x)) {
                throw NonFiniteValue("feature values must be finite");
            }
        }
        if (!std::isfinite(row.label)) {
            throw NonFiniteValue("labels must be finite");
        }
        if (!row.group.empty()) {
            has_groups_ = true;
        }
    }
}

double pointwise_loss(const LinearModel& model, const Row& row, LossKind kind) {
    require_dim(model, row);
    require_label(row, kind);
    const double m = model.predict(row.features);
    switch (kind) {
    case LossKind::squared: {
        const double r = m - row.label;
        return r * r;
    }
    case LossKind::logistic:
        return stable_log1pexp(-row.label * m);
    case LossKind::hinge:
        return std::max(0.0, 1.0 - row.label * m);
    }
    throw BadSpec("unknown loss kind");
}

std::vector<double> pointwise_subgrad(const LinearModel& model, const Row& row, LossKind kind) {
    require_dim(model, row);
    require_label(row, kind);
    const std::size_t d = row.features.size();
    const double m = model.predict(row.features);
    double dm = 0.0; // derivative of the loss in the margin m
    switch (kind) {
    case LossKind::squared:
        dm = 2.0 * (m - row.label);
        break;
    case LossKind::logistic: {
        const double z = -row.label * m;
        const double s = 1.0 / (1.0 + std::exp(-z));
        dm = -row.label * s;
        break;
    }
    case LossKind::hinge:
        // active only strictly inside the margin (right derivative at the kink)
        dm = (1.0 - row.label * m) > 0.0 ? -row.label : 0.0;
        break;
    }
    std::vector<double> g(d + 1, 0.0);
    for (std::size_t j = 0; j < d; ++j) {
        g[j] = dm * row.features[j];
    }
    g[d] = dm;
    return g;
}

TrainResult train(const TrainConfig& cfg, const Dataset& data) {
    if (cfg.steps < 1) {
        throw BadSpec("training needs at least one step");
    }
    if (!(cfg.step.a > 0.0) || !std::isfinite(cfg.step.a)) {
        throw BadSpec("step size must be positive and finite");
    }
    const std::size_t n = data.size();
    if (cfg.minibatch > n) {
        throw BadSpec("minibatch size exceeds the dataset");
    }
    const std::size_t d = data.dim();
    const bool cvar_mode = cfg.objective.kind() == ObjectiveKind::cvar;
    const double beta = cvar_mode ? cfg.objective.beta() : 0.0;

    LinearModel model;
    model.weights.assign(d, 0.0);
    model.bias = 0.0;
    double theta = 0.0;
    if (cvar_mode) {
        theta = empirical_quantile(all_losses(model, data, cfg.loss), beta);
    }

    SplitMix64 batch_rng(SplitMix64::derive(cfg.seed, 17));
    std::vector<std::size_t> batch;
    const std::size_t batch_size = cfg.minibatch == 0 ? n : cfg.minibatch;

    std::vector<double> avg_w(d, 0.0);
    double avg_b = 0.0;
    double avg_theta = 0.0;
    LinearModel best_model = model;
    double best_theta = theta;
    double best_obj = std::numeric_limits<double>::infinity();

    std::vector<double> trace;
    trace.reserve(cfg.steps);

    std::vector<double> batch_losses(batch_size);
    std::vector<std::vector<double>> batch_grads(batch_size);

    for (std::size_t t = 1; t <= cfg.steps; ++t) {
        batch.clear();
        if (cfg.minibatch == 0) {
            batch.resize(n);
            std::iota(batch.begin(), batch.end(), 0);
        } else {
            for (std::size_t i = 0; i < batch_size; ++i) {
                batch.push_back(static_cast<std::size_t>(batch_rng.next_u64() % n));
            }
        }
        for (std::size_t i = 0; i < batch_size; ++i) {
            const Row& row = data.rows()[batch[i]];
            batch_losses[i] = pointwise_loss(model, row, cfg.loss);
            batch_grads[i] = pointwise_subgrad(model, row, cfg.loss);
        }

        std::vector<double> g(d + 1, 0.0);
        double g_theta = 0.0;
        if (cvar_mode) {
            // joint subgradient of theta + (1/B) sum [loss - theta]_+ / (1-beta)
            const double unit = 1.0 / (static_cast<double>(batch_size) * (1.0 - beta));
            std::size_t active = 0;
            for (std::size_t i = 0; i < batch_size; ++i) {
                if (batch_losses[i] >= theta) {
                    ++active;
                    for (std::size_t j = 0; j <= d; ++j) {
                        g[j] += unit * batch_grads[i][j];
                    }
                }
            }
            g_theta = 1.0 - static_cast<double>(active) * unit;
        } else {
            const LossVector lv(batch_losses);
            g = objective_subgradient(cfg.objective, lv, batch_grads);
        }

        const double a_t = cfg.step.kind == StepSchedule::Kind::constant
                               ? cfg.step.a
                               : cfg.step.a / std::sqrt(static_cast<double>(t));
        for (std::size_t j = 0; j < d; ++j) {
            model.weights[j] -= a_t * g[j];
        }
        if (cfg.fit_bias) {
            model.bias -= a_t * g[d];
        }
        if (cvar_mode) {
            theta -= a_t * g_theta;
        }

        const LossVector full(all_losses(model, data, cfg.loss));
        const double obj = eval_objective(cfg.objective, full);
        if (!std::isfinite(obj) || obj > 1e12) {
            throw NonFiniteObjective("objective diverged at step " + std::to_string(t), trace);
        }
        trace.push_back(obj);

        for (std::size_t j = 0; j < d; ++j) {
            avg_w[j] += model.weights[j];
        }
        avg_b += model.bias;
        avg_theta += theta;
        if (obj < best_obj) {
            best_obj = obj;
            best_model = model;
            best_theta = theta;
        }
    }

    TrainResult out;
    switch (cfg.averaging) {
    case Averaging::last:
        out.model = model;
        if (cvar_mode) out.theta = theta;
        break;
    case Averaging::best:
        out.model = best_model;
        if (cvar_mode) out.theta = best_theta;
        break;
    case Averaging::uniform_average: {
        const double T = static_cast<double>(cfg.steps);
        out.model.weights.resize(d);
        for (std::size_t j = 0; j < d; ++j) {
            out.model.weights[j] = avg_w[j] / T;
        }
        out.model.bias = avg_b / T;
        if (cvar_mode) out.theta = avg_theta / T;
        break;
    }
    }
    out.trace = std::move(trace);
    return out;
}

RiskResult evaluate(const LinearModel& model, const Dataset& test, const RiskSpec& spec,
                    LossKind loss) {
    if (spec.kind() == RiskKind::fairness_mean_var && test.has_groups()) {
        std::map<std::string, std::vector<double>> by_group;
        for (const Row& row : test.rows()) {
            by_group[row.group].push_back(pointwise_loss(model, row, loss));
        }
        std::vector<std::pair<double, DiscreteDistribution>> groups;
        const double n = static_cast<double>(test.size());
        for (const auto& [tag, losses] : by_group) {
            groups.emplace_back(static_cast<double>(losses.size()) / n,
                                DiscreteDistribution::empirical(LossVector(losses)));
        }
        RiskResult r;
        r.value = fairness_risk(groups);
        return r;
    }
    const LossVector losses(all_losses(model, test, loss));
    return risk_eval(spec, DiscreteDistribution::empirical(losses));
}

} // namespace risktool

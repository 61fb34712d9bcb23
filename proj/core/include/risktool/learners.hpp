#ifndef RISKTOOL_LEARNERS_HPP
#define RISKTOOL_LEARNERS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "risktool/distribution.hpp"
#include "risktool/objectives.hpp"
#include "risktool/risks.hpp"

namespace risktool {

enum class LossKind { squared, logistic, hinge };

struct LinearModel {
    std::vector<double> weights;
    double bias = 0.0;

    double predict(const std::vector<double>& features) const;
};

struct Row {
    std::vector<double> features;
    double label = 0.0;
    std::string group; // empty when the data carries no group tags
};

class Dataset {
public:
    explicit Dataset(std::vector<Row> rows);

    const std::vector<Row>& rows() const { return rows_; }
    std::size_t size() const { return rows_.size(); }
    std::size_t dim() const { return rows_.front().features.size(); }
    bool has_groups() const { return has_groups_; }

private:
    std::vector<Row> rows_;
    bool has_groups_ = false;
};

struct StepSchedule {
    enum class Kind { constant, inv_sqrt };
    Kind kind = Kind::constant;
    double a = 0.1;
};

enum class Averaging { last, best, uniform_average };

struct TrainConfig {
    ObjectiveSpec objective = ObjectiveSpec::mean();
    LossKind loss = LossKind::squared;
    std::size_t steps = 1000;
    StepSchedule step;
    std::uint64_t seed = 0;
    std::size_t minibatch = 0; // 0 selects full-batch subgradients
    Averaging averaging = Averaging::uniform_average;
    bool fit_bias = true;
};

struct TrainResult {
    LinearModel model;
    // full-sample objective of the iterate after each step
    std::vector<double> trace;
    // joint Rockafellar-Uryasev variable, present for cvar objectives
    std::optional<double> theta;
};

double pointwise_loss(const LinearModel& model, const Row& row, LossKind kind);

// Subgradient in (weights..., bias), length dim+1; hinge kinks take the right
// derivative so repeated runs are bit-identical.
std::vector<double> pointwise_subgrad(const LinearModel& model, const Row& row, LossKind kind);

// Deterministic subgradient descent from zero initialization. Identical
// (config, data) pairs produce bit-identical traces, minibatch mode included.
TrainResult train(const TrainConfig& cfg, const Dataset& data);

// Risk of the empirical test-loss distribution under the model. Group-aware
// specs (fairness) use the dataset's group tags.
RiskResult evaluate(const LinearModel& model, const Dataset& test, const RiskSpec& spec,
                    LossKind loss);

} // namespace risktool

#endif

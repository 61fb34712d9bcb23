#ifndef RISKTOOL_CONFIG_HPP
#define RISKTOOL_CONFIG_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "risktool/datagen.hpp"
#include "risktool/learners.hpp"
#include "risktool/objectives.hpp"
#include "risktool/risks.hpp"

namespace risktool {

// Declarative run configuration: a single JSON document per command. Unknown
// keys are errors, every numeric constraint is enforced at parse time, and a
// seed is mandatory everywhere so no run depends on wall-clock entropy.

struct GeneratedRegression {
    std::size_t dim = 1;
    std::size_t n = 1;
    std::vector<double> w_star;
    DistSpec noise = DistSpec::finite(
        DiscreteDistribution::canonicalize({{0.0, 1.0}}));
};

struct DataSourceCfg {
    std::optional<std::string> file;
    std::optional<GeneratedRegression> generate;
};

struct TrainSection {
    std::size_t steps = 1000;
    StepSchedule step;
    std::size_t minibatch = 0;
    Averaging averaging = Averaging::uniform_average;
    bool fit_bias = true;
};

struct EvalRunConfig {
    std::uint64_t seed = 0;
    std::string losses_path;
    std::vector<RiskSpec> risks;
};

struct TrainRunConfig {
    std::uint64_t seed = 0;
    DataSourceCfg data;
    std::optional<DataSourceCfg> test;
    LossKind loss = LossKind::squared;
    ObjectiveSpec objective = ObjectiveSpec::mean();
    TrainSection train;
    std::vector<RiskSpec> eval_risks;
    std::string model_out;
};

struct CompareRunConfig {
    std::uint64_t seed = 0;
    DataSourceCfg data;
    std::optional<DataSourceCfg> test;
    LossKind loss = LossKind::squared;
    std::vector<ObjectiveSpec> objectives;
    std::vector<RiskSpec> risks;
    TrainSection train;
};

struct DemoRunConfig {
    std::uint64_t seed = 0;
    std::vector<std::size_t> sizes = {100, 1000, 10000, 100000};
};

EvalRunConfig parse_eval_config(const std::string& json_text);
TrainRunConfig parse_train_config(const std::string& json_text);
CompareRunConfig parse_compare_config(const std::string& json_text);
DemoRunConfig parse_demo_config(const std::string& json_text);

// Materializes a data source: reads the CSV or generates synthetic rows on a
// stream derived from the config seed.
Dataset realize_data(const DataSourceCfg& cfg, std::uint64_t seed, std::uint64_t stream);

} // namespace risktool

#endif

// risktool: evaluate risk profiles of loss files, train linear models under a
// chosen objective, and compare objective choices side by side.
//
//   risktool eval    --config cfg.json [--format json|text] [--out report]
//   risktool train   --config cfg.json [--format json|text] [--out report]
//   risktool compare --config cfg.json [--format json|text] [--out report]
//   risktool demo    --config cfg.json [--format json|text] [--out report]
//
// Exit codes: 0 success, 1 numeric/solver failure, 2 input/validation failure.

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "risktool/config.hpp"
#include "risktool/csv.hpp"
#include "risktool/datagen.hpp"
#include "risktool/errors.hpp"
#include "risktool/learners.hpp"
#include "risktool/oracle.hpp"
#include "risktool/report.hpp"
#include "risktool/risks.hpp"
#include "risktool/rng.hpp"

namespace {

using namespace risktool;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError("cannot open config '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write '" + out_path + "'");
    }
    out << text;
}

RiskRow make_row(const RiskSpec& spec, const RiskResult& result) {
    RiskRow row;
    row.spec = spec.describe();
    row.value = result.value;
    row.theta = result.theta;
    return row;
}

// Risk rows for raw loss records; group-aware specs use the file's group tags.
std::vector<RiskRow> risk_rows(const std::vector<LossRecord>& records,
                               const std::vector<RiskSpec>& specs) {
    std::vector<double> losses;
    losses.reserve(records.size());
    bool grouped = false;
    for (const LossRecord& rec : records) {
        losses.push_back(rec.loss);
        grouped = grouped || !rec.group.empty();
    }
    const DiscreteDistribution dist = DiscreteDistribution::empirical(LossVector(losses));

    std::vector<RiskRow> rows;
    for (const RiskSpec& spec : specs) {
        if (spec.kind() == RiskKind::fairness_mean_var && grouped) {
            std::map<std::string, std::vector<double>> by_group;
            for (const LossRecord& rec : records) {
                by_group[rec.group].push_back(rec.loss);
            }
            std::vector<std::pair<double, DiscreteDistribution>> groups;
            for (const auto& [tag, group_losses] : by_group) {
                groups.emplace_back(static_cast<double>(group_losses.size()) /
                                        static_cast<double>(records.size()),
                                    DiscreteDistribution::empirical(LossVector(group_losses)));
            }
            RiskRow row;
            row.spec = spec.describe();
            row.value = fairness_risk(groups);
            rows.push_back(std::move(row));
        } else {
            rows.push_back(make_row(spec, risk_eval(spec, dist)));
        }
    }
    return rows;
}

int cmd_eval(const std::string& config_text, ReportFormat format, const std::string& out_path) {
    const EvalRunConfig cfg = parse_eval_config(config_text);
    const std::vector<LossRecord> records = read_loss_csv(cfg.losses_path);
    EvalReport report;
    report.rows = risk_rows(records, cfg.risks);
    write_output(render(report, format), out_path);
    return 0;
}

TrainConfig to_train_config(const TrainSection& section, const ObjectiveSpec& objective,
                            LossKind loss, std::uint64_t seed) {
    TrainConfig tc;
    tc.objective = objective;
    tc.loss = loss;
    tc.steps = section.steps;
    tc.step = section.step;
    tc.minibatch = section.minibatch;
    tc.averaging = section.averaging;
    tc.fit_bias = section.fit_bias;
    tc.seed = seed;
    return tc;
}

int cmd_train(const std::string& config_text, ReportFormat format, const std::string& out_path) {
    const TrainRunConfig cfg = parse_train_config(config_text);
    const Dataset train_data = realize_data(cfg.data, cfg.seed, 101);
    const Dataset test_data = cfg.test ? realize_data(*cfg.test, cfg.seed, 102) : train_data;

    const TrainConfig tc =
        to_train_config(cfg.train, cfg.objective, cfg.loss, SplitMix64::derive(cfg.seed, 1));
    const TrainResult result = train(tc, train_data);

    TrainReport report;
    report.objective = cfg.objective.describe();
    report.loss = cfg.loss == LossKind::squared    ? "squared"
                  : cfg.loss == LossKind::logistic ? "logistic"
                                                   : "hinge";
    report.steps = cfg.train.steps;
    report.final_objective = result.trace.back();
    report.trace_head.assign(result.trace.begin(),
                             result.trace.begin() +
                                 std::min<std::size_t>(result.trace.size(), 10));
    report.weights = result.model.weights;
    report.bias = result.model.bias;
    report.theta = result.theta;
    for (const RiskSpec& spec : cfg.eval_risks) {
        report.held_out.push_back(
            make_row(spec, evaluate(result.model, test_data, spec, cfg.loss)));
    }
    write_output(render(report, format), out_path);

    if (!cfg.model_out.empty()) {
        write_output(render_model_file(result.model.weights, result.model.bias, result.theta,
                                       config_hash_hex(config_text)),
                     cfg.model_out);
    }
    return 0;
}

QuantileSummary loss_quantiles(const LinearModel& model, const Dataset& test, LossKind loss) {
    std::vector<double> losses;
    losses.reserve(test.size());
    for (const Row& row : test.rows()) {
        losses.push_back(pointwise_loss(model, row, loss));
    }
    const DiscreteDistribution d = DiscreteDistribution::empirical(LossVector(losses));
    QuantileSummary q;
    q.q05 = d.quantile(0.05);
    q.q25 = d.quantile(0.25);
    q.q50 = d.quantile(0.50);
    q.q75 = d.quantile(0.75);
    q.q95 = d.quantile(0.95);
    q.max = d.max_value();
    return q;
}

int cmd_compare(const std::string& config_text, ReportFormat format,
                const std::string& out_path) {
    const CompareRunConfig cfg = parse_compare_config(config_text);
    const Dataset train_data = realize_data(cfg.data, cfg.seed, 101);
    const Dataset test_data = cfg.test ? realize_data(*cfg.test, cfg.seed, 102) : train_data;

    CompareReport report;
    for (const RiskSpec& spec : cfg.risks) {
        report.risks.push_back(spec.describe());
    }
    for (std::size_t i = 0; i < cfg.objectives.size(); ++i) {
        // each model owns an independent derived seed; report order is fixed
        // by config order
        const TrainConfig tc = to_train_config(cfg.train, cfg.objectives[i], cfg.loss,
                                               SplitMix64::derive(cfg.seed, 200 + i));
        const TrainResult result = train(tc, train_data);
        CompareModelRow row;
        row.objective = cfg.objectives[i].describe();
        for (const RiskSpec& spec : cfg.risks) {
            row.values.push_back(evaluate(result.model, test_data, spec, cfg.loss).value);
        }
        row.quantiles = loss_quantiles(result.model, test_data, cfg.loss);
        report.models.push_back(std::move(row));
    }
    write_output(render(report, format), out_path);
    return 0;
}

int cmd_demo(const std::string& config_text, ReportFormat format, const std::string& out_path) {
    const DemoRunConfig cfg = parse_demo_config(config_text);
    const DistSpec game = DistSpec::stpetersburg();
    DemoReport report;
    for (std::size_t i = 0; i < cfg.sizes.size(); ++i) {
        const std::size_t n = cfg.sizes[i];
        const LossVector payouts = sample(game, n, SplitMix64::derive(cfg.seed, 300 + i));
        const DiscreteDistribution d = DiscreteDistribution::empirical(payouts);
        DemoRow row;
        row.n = n;
        row.mean = d.mean();
        row.median = d.quantile(0.5);
        row.entropic1 = entropic(d, 1.0);
        row.cvar90 = cvar(d, 0.9).value;
        report.rows.push_back(row);
    }
    write_output(render(report, format), out_path);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"risk profile evaluation and risk-sensitive training for linear models"};
    app.require_subcommand(1);

    std::string config_path;
    std::string format_name = "text";
    std::string out_path;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "path to the JSON run config")->required();
        sub->add_option("--format", format_name, "report format: json or text");
        sub->add_option("--out", out_path, "report destination (default: stdout)");
    };
    CLI::App* eval_cmd = app.add_subcommand("eval", "risk profile of a loss file");
    CLI::App* train_cmd = app.add_subcommand("train", "train a linear model");
    CLI::App* compare_cmd = app.add_subcommand("compare", "train one model per objective");
    CLI::App* demo_cmd = app.add_subcommand("demo", "st. petersburg sampling walkthrough");
    add_common(eval_cmd);
    add_common(train_cmd);
    add_common(compare_cmd);
    add_common(demo_cmd);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        ReportFormat format;
        if (format_name == "json") {
            format = ReportFormat::json;
        } else if (format_name == "text") {
            format = ReportFormat::text;
        } else {
            throw InputError("--format must be 'json' or 'text'");
        }
        const std::string config_text = read_file(config_path);
        if (app.got_subcommand(eval_cmd)) return cmd_eval(config_text, format, out_path);
        if (app.got_subcommand(train_cmd)) return cmd_train(config_text, format, out_path);
        if (app.got_subcommand(compare_cmd)) return cmd_compare(config_text, format, out_path);
        return cmd_demo(config_text, format, out_path);
    } catch (const NonFiniteObjective& e) {
        std::cerr << "error: " << e.what() << "\n";
        std::cerr << "trace prefix:";
        const std::size_t head = std::min<std::size_t>(e.trace.size(), 20);
        for (std::size_t i = 0; i < head; ++i) {
            std::cerr << " " << format_double(e.trace[i]);
        }
        std::cerr << "\n";
        return 1;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

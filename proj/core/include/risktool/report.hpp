#ifndef RISKTOOL_REPORT_HPP
#define RISKTOOL_REPORT_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace risktool {

enum class ReportFormat { json, text };

// Doubles in reports and model files carry 17 significant digits so a
// re-parsed report reproduces each value bit-exactly.
std::string format_double(double x);

struct RiskRow {
    std::string spec;
    double value = 0.0;
    std::optional<double> theta;
};

struct EvalReport {
    std::vector<RiskRow> rows;
};

struct TrainReport {
    std::string objective;
    std::string loss;
    std::size_t steps = 0;
    double final_objective = 0.0;
    std::vector<double> trace_head; // first entries of the objective trace
    std::vector<double> weights;
    double bias = 0.0;
    std::optional<double> theta;
    std::vector<RiskRow> held_out;
};

struct QuantileSummary {
    double q05 = 0.0, q25 = 0.0, q50 = 0.0, q75 = 0.0, q95 = 0.0, max = 0.0;
};

struct CompareModelRow {
    std::string objective;
    std::vector<double> values; // one per risk column
    QuantileSummary quantiles;  // of the model's test losses
};

struct CompareReport {
    std::vector<std::string> risks;
    std::vector<CompareModelRow> models;
};

struct DemoRow {
    std::size_t n = 0;
    double mean = 0.0;
    double median = 0.0;
    double entropic1 = 0.0;
    double cvar90 = 0.0;
};

struct DemoReport {
    std::vector<DemoRow> rows;
};

std::string render(const EvalReport& r, ReportFormat f);
std::string render(const TrainReport& r, ReportFormat f);
std::string render(const CompareReport& r, ReportFormat f);
std::string render(const DemoReport& r, ReportFormat f);

// Model file: weights, bias, aux theta and the config hash, as JSON.
std::string render_model_file(const std::vector<double>& weights, double bias,
                              std::optional<double> theta, const std::string& config_hash);

// FNV-1a over the raw config bytes; ties a model file to the exact config.
std::string config_hash_hex(const std::string& config_text);

} // namespace risktool

#endif

#include "risktool/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace risktool {

namespace {

std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size() + 2);
    for (char c : s) {
        switch (c) {
        case '"': out += "\\\""; break;
        case '\\': out += "\\\\"; break;
        case '\n': out += "\\n"; break;
        case '\t': out += "\\t"; break;
        case '\r': out += "\\r"; break;
        default: out += c;
        }
    }
    return out;
}

std::string quoted(const std::string& s) { return "\"" + json_escape(s) + "\""; }

std::string opt_double(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("null");
}

std::string risk_rows_json(const std::vector<RiskRow>& rows, const std::string& indent) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        os << (i == 0 ? "\n" : ",\n") << indent << "  {\"spec\": " << quoted(rows[i].spec)
           << ", \"value\": " << format_double(rows[i].value)
           << ", \"theta\": " << opt_double(rows[i].theta) << "}";
    }
    os << "\n" << indent << "]";
    return os.str();
}

std::string double_array_json(const std::vector<double>& v) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        os << (i == 0 ? "" : ", ") << format_double(v[i]);
    }
    os << "]";
    return os.str();
}

void risk_rows_text(std::ostringstream& os, const std::vector<RiskRow>& rows) {
    std::size_t width = 12;
    for (const RiskRow& r : rows) {
        width = std::max(width, r.spec.size());
    }
    for (const RiskRow& r : rows) {
        os << "  " << r.spec << std::string(width - r.spec.size() + 2, ' ')
           << format_double(r.value);
        if (r.theta) {
            os << "  (theta* = " << format_double(*r.theta) << ")";
        }
        os << "\n";
    }
}

} // namespace

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string render(const EvalReport& r, ReportFormat f) {
    std::ostringstream os;
    if (f == ReportFormat::json) {
        os << "{\n  \"command\": \"eval\",\n  \"rows\": " << risk_rows_json(r.rows, "  ")
           << "\n}\n";
    } else {
        os << "risk profile\n";
        risk_rows_text(os, r.rows);
    }
    return os.str();
}

std::string render(const TrainReport& r, ReportFormat f) {
    std::ostringstream os;
    if (f == ReportFormat::json) {
        os << "{\n  \"command\": \"train\",\n"
           << "  \"objective\": " << quoted(r.objective) << ",\n"
           << "  \"loss\": " << quoted(r.loss) << ",\n"
           << "  \"steps\": " << r.steps << ",\n"
           << "  \"final_objective\": " << format_double(r.final_objective) << ",\n"
           << "  \"trace_head\": " << double_array_json(r.trace_head) << ",\n"
           << "  \"model\": {\"weights\": " << double_array_json(r.weights)
           << ", \"bias\": " << format_double(r.bias) << ", \"theta\": " << opt_double(r.theta)
           << "},\n"
           << "  \"held_out\": " << risk_rows_json(r.held_out, "  ") << "\n}\n";
    } else {
        os << "trained " << r.objective << " with " << r.loss << " loss, " << r.steps
           << " steps\n";
        os << "  final objective  " << format_double(r.final_objective) << "\n";
        os << "  weights          " << double_array_json(r.weights) << "\n";
        os << "  bias             " << format_double(r.bias) << "\n";
        if (r.theta) {
            os << "  theta*           " << format_double(*r.theta) << "\n";
        }
        if (!r.held_out.empty()) {
            os << "held-out risks\n";
            risk_rows_text(os, r.held_out);
        }
    }
    return os.str();
}

std::string render(const CompareReport& r, ReportFormat f) {
    std::ostringstream os;
    if (f == ReportFormat::json) {
        os << "{\n  \"command\": \"compare\",\n  \"risks\": [";
        for (std::size_t i = 0; i < r.risks.size(); ++i) {
            os << (i == 0 ? "" : ", ") << quoted(r.risks[i]);
        }
        os << "],\n  \"models\": [";
        for (std::size_t i = 0; i < r.models.size(); ++i) {
            const CompareModelRow& m = r.models[i];
            os << (i == 0 ? "\n" : ",\n") << "    {\"objective\": " << quoted(m.objective)
               << ", \"values\": " << double_array_json(m.values) << ", \"loss_quantiles\": {"
               << "\"q05\": " << format_double(m.quantiles.q05)
               << ", \"q25\": " << format_double(m.quantiles.q25)
               << ", \"q50\": " << format_double(m.quantiles.q50)
               << ", \"q75\": " << format_double(m.quantiles.q75)
               << ", \"q95\": " << format_double(m.quantiles.q95)
               << ", \"max\": " << format_double(m.quantiles.max) << "}}";
        }
        os << "\n  ]\n}\n";
    } else {
        std::size_t width = 10;
        for (const CompareModelRow& m : r.models) {
            width = std::max(width, m.objective.size());
        }
        os << "objectives \\ risks";
        for (const std::string& rk : r.risks) {
            os << "  " << rk;
        }
        os << "\n";
        for (const CompareModelRow& m : r.models) {
            os << "  " << m.objective << std::string(width - m.objective.size() + 2, ' ');
            for (double v : m.values) {
                os << format_double(v) << "  ";
            }
            os << "\n";
        }
        os << "test-loss quantiles (q05/q25/q50/q75/q95/max)\n";
        for (const CompareModelRow& m : r.models) {
            os << "  " << m.objective << std::string(width - m.objective.size() + 2, ' ')
               << format_double(m.quantiles.q05) << "  " << format_double(m.quantiles.q25) << "  "
               << format_double(m.quantiles.q50) << "  " << format_double(m.quantiles.q75) << "  "
               << format_double(m.quantiles.q95) << "  " << format_double(m.quantiles.max)
               << "\n";
        }
    }
    return os.str();
}

std::string render(const DemoReport& r, ReportFormat f) {
    std::ostringstream os;
    if (f == ReportFormat::json) {
        os << "{\n  \"command\": \"demo\",\n  \"preset\": \"stpetersburg\",\n  \"rows\": [";
        for (std::size_t i = 0; i < r.rows.size(); ++i) {
            const DemoRow& row = r.rows[i];
            os << (i == 0 ? "\n" : ",\n") << "    {\"n\": " << row.n
               << ", \"mean\": " << format_double(row.mean)
               << ", \"median\": " << format_double(row.median)
               << ", \"entropic_1\": " << format_double(row.entropic1)
               << ", \"cvar_0.9\": " << format_double(row.cvar90) << "}";
        }
        os << "\n  ]\n}\n";
    } else {
        os << "st. petersburg payouts: per-sample summary by sample size\n";
        os << "  n         mean            median   entropic(1)        cvar(0.9)\n";
        for (const DemoRow& row : r.rows) {
            char buf[160];
            std::snprintf(buf, sizeof(buf), "  %-8zu  %-14.6g  %-7.6g  %-13.6g  %-.6g\n", row.n,
                          row.mean, row.median, row.entropic1, row.cvar90);
            os << buf;
        }
        os << "the mean column tracks the heaviest draw in the sample; the median stays put\n";
    }
    return os.str();
}

std::string render_model_file(const std::vector<double>& weights, double bias,
                              std::optional<double> theta, const std::string& config_hash) {
    std::ostringstream os;
    os << "{\n  \"weights\": " << double_array_json(weights)
       << ",\n  \"bias\": " << format_double(bias) << ",\n  \"theta\": " << opt_double(theta)
       << ",\n  \"config_hash\": " << quoted(config_hash) << "\n}\n";
    return os.str();
}

std::string config_hash_hex(const std::string& config_text) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : config_text) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace risktool

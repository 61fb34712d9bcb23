#include "risktool/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "risktool/errors.hpp"

namespace risktool {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        out.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        out.emplace_back();
    }
    return out;
}

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_double(const std::string& raw, std::size_t line_no, const std::string& what) {
    const std::string s = strip(raw);
    double value = 0.0;
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc() || ptr != last || s.empty()) {
        throw InputError("line " + std::to_string(line_no) + ": cannot parse " + what + " '" +
                         raw + "'");
    }
    return value;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path + "'");
    }
    return in;
}

} // namespace

std::vector<LossRecord> read_loss_csv(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw InputError(path + ": empty file");
    }
    const std::vector<std::string> header = split_fields(strip(line));
    bool grouped = false;
    if (header.size() == 1 && strip(header[0]) == "loss") {
        grouped = false;
    } else if (header.size() == 2 && strip(header[0]) == "loss" && strip(header[1]) == "group") {
        grouped = true;
    } else {
        throw InputError(path + ": line 1: expected header 'loss' or 'loss,group'");
    }

    std::vector<LossRecord> records;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = strip(line);
        if (body.empty()) continue;
        const std::vector<std::string> fields = split_fields(body);
        if (fields.size() != (grouped ? 2u : 1u)) {
            throw InputError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(grouped ? 2 : 1) + " fields, got " +
                             std::to_string(fields.size()));
        }
        LossRecord rec;
        rec.loss = parse_double(fields[0], line_no, "loss");
        if (grouped) {
            rec.group = strip(fields[1]);
        }
        records.push_back(std::move(rec));
    }
    if (records.empty()) {
        throw InputError(path + ": no records");
    }
    return records;
}

Dataset read_dataset_csv(const std::string& path) {
    std::ifstream in = open_or_throw(path);
    std::string line;
    if (!std::getline(in, line)) {
        throw InputError(path + ": empty file");
    }
    const std::vector<std::string> header = split_fields(strip(line));
    std::size_t dim = 0;
    bool grouped = false;
    for (std::size_t i = 0; i < header.size(); ++i) {
        const std::string h = strip(header[i]);
        if (h == "f" + std::to_string(i + 1)) {
            ++dim;
        } else if (h == "label" && i == dim) {
            grouped = i + 2 == header.size() && strip(header[i + 1]) == "group";
            if (!grouped && i + 1 != header.size()) {
                throw InputError(path + ": line 1: unexpected columns after 'label'");
            }
            break;
        } else {
            throw InputError(path + ": line 1: expected header 'f1,...,fd,label[,group]'");
        }
    }
    if (dim == 0 || dim + 1 > header.size()) {
        throw InputError(path + ": line 1: expected header 'f1,...,fd,label[,group]'");
    }

    std::vector<Row> rows;
    std::size_t line_no = 1;
    const std::size_t want = dim + 1 + (grouped ? 1 : 0);
    while (std::getline(in, line)) {
        ++line_no;
        const std::string body = strip(line);
        if (body.empty()) continue;
        const std::vector<std::string> fields = split_fields(body);
        if (fields.size() != want) {
            throw InputError("line " + std::to_string(line_no) + ": expected " +
                             std::to_string(want) + " fields, got " +
                             std::to_string(fields.size()));
        }
        Row row;
        row.features.reserve(dim);
        for (std::size_t j = 0; j < dim; ++j) {
            row.features.push_back(parse_double(fields[j], line_no, "f" + std::to_string(j + 1)));
        }
        row.label = parse_double(fields[dim], line_no, "label");
        if (grouped) {
            row.group = strip(fields[dim + 1]);
        }
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        throw InputError(path + ": no records");
    }
    return Dataset(std::move(rows));
}

} // namespace risktool

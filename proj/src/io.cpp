#include "itisc/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include <json.hpp>

#include "itisc/errors.hpp"

namespace itisc {

std::string format_double(double v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw numerical_error("failed to format value");
    return std::string(buf, ptr);
}

namespace {

double parse_double(const std::string& text) {
    double v = 0.0;
    const char* begin = text.data();
    const char* end = begin + text.size();
    const auto [ptr, ec] = std::from_chars(begin, end, v);
    if (ec != std::errc() || ptr != end) {
        throw config_error("malformed number: '" + text + "'");
    }
    return v;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = line.find(sep, start);
        if (pos == std::string::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream os(path);
    if (!os) throw config_error("cannot open for writing: " + path);
    return os;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw config_error("cannot open for reading: " + path);
    return is;
}

}  // namespace

void write_dataset_csv(std::ostream& os, const Dataset& dataset,
                       const std::vector<int>& components) {
    const bool with_components = !components.empty();
    if (with_components && components.size() != dataset.size()) {
        throw std::invalid_argument("component labels do not match dataset size");
    }
    for (std::size_t s = 0; s < dataset.dim(); ++s) {
        if (s > 0) os << ',';
        os << 'x' << (s + 1);
    }
    if (with_components) os << ",component";
    os << '\n';
    for (std::size_t i = 0; i < dataset.size(); ++i) {
        const auto x = dataset.point(i);
        for (std::size_t s = 0; s < dataset.dim(); ++s) {
            if (s > 0) os << ',';
            os << format_double(x[s]);
        }
        if (with_components) os << ',' << components[i];
        os << '\n';
    }
}

void write_dataset_csv(const std::string& path, const Dataset& dataset,
                       const std::vector<int>& components) {
    auto os = open_out(path);
    write_dataset_csv(os, dataset, components);
}

LoadedDataset read_dataset_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw config_error("dataset CSV is empty");
    if (!line.empty() && line.back() == '\r') line.pop_back();

    const std::vector<std::string> header = split(line, ',');
    const bool with_components = !header.empty() && header.back() == "component";
    const std::size_t dim = header.size() - (with_components ? 1 : 0);
    if (dim == 0) throw config_error("dataset CSV has no coordinate columns");
    for (std::size_t s = 0; s < dim; ++s) {
        if (header[s] != "x" + std::to_string(s + 1)) {
            throw config_error("dataset CSV header must be x1,...,xS[,component]");
        }
    }

    std::vector<double> values;
    std::vector<int> components;
    std::size_t rows = 0;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != header.size()) {
            throw config_error("dataset CSV row has wrong column count");
        }
        for (std::size_t s = 0; s < dim; ++s) values.push_back(parse_double(fields[s]));
        if (with_components) {
            components.push_back(static_cast<int>(parse_double(fields[dim])));
        }
        ++rows;
    }
    if (rows == 0) throw config_error("dataset CSV has no data rows");

    Matrix points(rows, dim);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t s = 0; s < dim; ++s) points(i, s) = values[i * dim + s];
    }
    return LoadedDataset{Dataset(std::move(points)), std::move(components)};
}

LoadedDataset read_dataset_csv(const std::string& path) {
    auto is = open_in(path);
    return read_dataset_csv(is);
}

namespace {

constexpr const char* kReportHeader = "experiment,algorithm,param,metric,value";

void check_field(const std::string& field) {
    if (field.find(',') != std::string::npos || field.find('\n') != std::string::npos) {
        throw std::invalid_argument("report fields must not contain commas or newlines");
    }
}

}  // namespace

void write_report_csv(std::ostream& os, const Report& report) {
    for (const auto& [key, value] : report.metadata) {
        os << "# " << key << ": " << value << '\n';
    }
    os << kReportHeader << '\n';
    for (const auto& row : report.rows) {
        check_field(row.experiment);
        check_field(row.algorithm);
        check_field(row.param);
        check_field(row.metric);
        os << row.experiment << ',' << row.algorithm << ',' << row.param << ','
           << row.metric << ',' << format_double(row.value) << '\n';
    }
}

Report parse_report_csv(std::istream& is) {
    Report report;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::size_t start = 1;
            while (start < line.size() && line[start] == ' ') ++start;
            const std::size_t sep = line.find(": ", start);
            if (sep == std::string::npos) {
                throw config_error("malformed report metadata line: " + line);
            }
            report.metadata[line.substr(start, sep - start)] = line.substr(sep + 2);
            continue;
        }
        if (!header_seen) {
            if (line != kReportHeader) {
                throw config_error("unexpected report header: " + line);
            }
            header_seen = true;
            continue;
        }
        const std::vector<std::string> fields = split(line, ',');
        if (fields.size() != 5) throw config_error("malformed report row: " + line);
        report.rows.push_back(ReportRow{fields[0], fields[1], fields[2], fields[3],
                                        parse_double(fields[4])});
    }
    if (!header_seen) throw config_error("report CSV has no header");
    return report;
}

void write_report_json(std::ostream& os, const Report& report) {
    nlohmann::json doc;
    doc["metadata"] = report.metadata;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : report.rows) {
        rows.push_back({{"experiment", row.experiment},
                        {"algorithm", row.algorithm},
                        {"param", row.param},
                        {"metric", row.metric},
                        {"value", row.value}});
    }
    doc["rows"] = std::move(rows);
    os << doc.dump(2) << '\n';
}

Report parse_report_json(std::istream& is) {
    nlohmann::json doc;
    try {
        is >> doc;
    } catch (const nlohmann::json::exception& e) {
        throw config_error(std::string("malformed report JSON: ") + e.what());
    }
    Report report;
    if (doc.contains("metadata")) {
        for (const auto& [key, value] : doc["metadata"].items()) {
            report.metadata[key] = value.get<std::string>();
        }
    }
    for (const auto& row : doc.at("rows")) {
        report.rows.push_back(ReportRow{row.at("experiment").get<std::string>(),
                                        row.at("algorithm").get<std::string>(),
                                        row.at("param").get<std::string>(),
                                        row.at("metric").get<std::string>(),
                                        row.at("value").get<double>()});
    }
    return report;
}

void write_report(const std::string& path, const Report& report,
                  const std::string& format) {
    auto os = open_out(path);
    if (format == "csv") {
        write_report_csv(os, report);
    } else if (format == "json") {
        write_report_json(os, report);
    } else {
        throw config_error("unknown report format: " + format);
    }
}

}  // namespace itisc

#ifndef ITISC_IO_HPP
#define ITISC_IO_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "itisc/types.hpp"

namespace itisc {

inline constexpr const char* kVersion = "0.1.0";

/// Shortest decimal form that parses back to the same double ("%.17g" with
/// trailing precision trimmed). Used everywhere numbers are serialized so
/// output is byte-stable and round-trips exactly.
std::string format_double(double v);

struct LoadedDataset {
    Dataset data;
    std::vector<int> components;  // empty when the CSV had no component column
};

/// CSV with header x1,...,xS, one row per point, and an optional trailing
/// `component` column.
void write_dataset_csv(std::ostream& os, const Dataset& dataset,
                       const std::vector<int>& components = {});
void write_dataset_csv(const std::string& path, const Dataset& dataset,
                       const std::vector<int>& components = {});
LoadedDataset read_dataset_csv(std::istream& is);
LoadedDataset read_dataset_csv(const std::string& path);

struct ReportRow {
    std::string experiment;
    std::string algorithm;
    std::string param;
    std::string metric;
    double value = 0.0;

    bool operator==(const ReportRow&) const = default;
};

/// Long-format experiment report. Metadata (seed list, version, optional
/// timestamp) rides along as `# key: value` comment lines in CSV or a
/// "metadata" object in JSON; rows are the plot-ready table.
struct Report {
    std::map<std::string, std::string> metadata;
    std::vector<ReportRow> rows;

    bool operator==(const Report&) const = default;
};

/// Header: experiment,algorithm,param,metric,value. parse(emit(r)) == r.
void write_report_csv(std::ostream& os, const Report& report);
Report parse_report_csv(std::istream& is);

void write_report_json(std::ostream& os, const Report& report);
Report parse_report_json(std::istream& is);

/// Writes in the format implied by the path/format name ("csv" or "json").
void write_report(const std::string& path, const Report& report,
                  const std::string& format);

}  // namespace itisc

#endif  // ITISC_IO_HPP

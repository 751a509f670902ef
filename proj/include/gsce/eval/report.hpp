#pragma once

#include <cmath>
#include <compare>
#include <optional>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "gsce/dronesim/simulator.hpp"
#include "gsce/errors.hpp"

namespace gsce::eval {

// One (task, method, repeat) evaluation outcome.
struct RunResult {
    std::string task_id;
    std::string method;  // preset label: base / constraints / examples / gsce
    std::string model;
    int k = 0;
    bool cot = false;
    bool constraint_impl = false;
    int repeat_index = 0;
    bool success = false;
    double completeness = 0.0;
    ErrorCategory error = ErrorCategory::None;
    std::vector<sim::StateTransition> actual_transitions;
    std::string response_ref;  // request digest when the response was cached, else empty
};

using json = nlohmann::json;

inline json run_result_to_json(const RunResult& r) {
    json transitions = json::array();
    for (const sim::StateTransition& t : r.actual_transitions) {
        transitions.push_back(json::array({t.dx, t.dy, t.dz, t.dyaw}));
    }
    return json{{"task_id", r.task_id},
                {"method", r.method},
                {"model", r.model},
                {"k", r.k},
                {"cot", r.cot},
                {"constraint_impl", r.constraint_impl},
                {"repeat_index", r.repeat_index},
                {"success", r.success},
                {"completeness", r.completeness},
                {"error", to_string(r.error)},
                {"actual_transitions", std::move(transitions)},
                {"response_ref", r.response_ref}};
}

inline RunResult run_result_from_json(const json& j) {
    RunResult r;
    r.task_id = j.at("task_id").get<std::string>();
    r.method = j.at("method").get<std::string>();
    r.model = j.at("model").get<std::string>();
    r.k = j.at("k").get<int>();
    r.cot = j.at("cot").get<bool>();
    r.constraint_impl = j.at("constraint_impl").get<bool>();
    r.repeat_index = j.at("repeat_index").get<int>();
    r.success = j.at("success").get<bool>();
    r.completeness = j.at("completeness").get<double>();
    const std::string error_name = j.at("error").get<std::string>();
    std::optional<ErrorCategory> category = error_category_from_string(error_name);
    if (!category) throw std::runtime_error("unknown error category: " + error_name);
    r.error = *category;
    for (const json& row : j.at("actual_transitions")) {
        r.actual_transitions.push_back(
            {row.at(0).get<double>(), row.at(1).get<double>(), row.at(2).get<double>(),
             row.at(3).get<double>()});
    }
    r.response_ref = j.at("response_ref").get<std::string>();
    return r;
}

inline std::string results_to_jsonl(const std::vector<RunResult>& results) {
    std::string out;
    for (const RunResult& r : results) out += run_result_to_json(r).dump() + "\n";
    return out;
}

inline void write_results(const std::vector<RunResult>& results, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << results_to_jsonl(results);
    if (!out) throw std::runtime_error("write failed: " + path);
}

inline std::vector<RunResult> read_results(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open results: " + path);
    std::vector<RunResult> out;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            out.push_back(run_result_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw std::runtime_error("results " + path + " line " + std::to_string(line_no) +
                                     ": " + e.what());
        }
    }
    return out;
}

// Aggregation -------------------------------------------------------

struct CellKey {
    std::string method;
    std::string model;
    int k = 0;
    bool cot = false;
    bool constraint_impl = false;

    auto operator<=>(const CellKey&) const = default;
};

struct CellStats {
    std::size_t runs = 0;
    std::size_t successes = 0;
    double completeness_sum = 0.0;

    double success_rate() const {
        return runs == 0 ? 0.0 : static_cast<double>(successes) / static_cast<double>(runs);
    }
    double mean_completeness() const { return runs == 0 ? 0.0 : completeness_sum / static_cast<double>(runs); }
};

struct AggregateReport {
    std::map<CellKey, CellStats> cells;  // sorted by grouping key
};

inline AggregateReport aggregate(const std::vector<RunResult>& results) {
    AggregateReport report;
    for (const RunResult& r : results) {
        CellStats& cell = report.cells[CellKey{r.method, r.model, r.k, r.cot, r.constraint_impl}];
        ++cell.runs;
        if (r.success) ++cell.successes;
        cell.completeness_sum += r.completeness;
    }
    return report;
}

// Rendering ---------------------------------------------------------

enum class ReportFormat { Markdown, Csv, Json };

inline ReportFormat report_format_from_string(const std::string& s) {
    if (s == "markdown") return ReportFormat::Markdown;
    if (s == "csv") return ReportFormat::Csv;
    if (s == "json") return ReportFormat::Json;
    throw std::invalid_argument("unknown report format: " + s);
}

namespace detail {

// Single rounding rule shared by every format so numeric values agree:
// fraction -> percent with one decimal.
inline double percent_value(double fraction) { return std::round(fraction * 1000.0) / 10.0; }

inline std::string percent_string(double fraction) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f%%", percent_value(fraction));
    return buf;
}

}  // namespace detail

inline std::string render_report(const AggregateReport& report, ReportFormat format) {
    using detail::percent_string;
    using detail::percent_value;

    if (format == ReportFormat::Json) {
        json cells = json::array();
        for (const auto& [key, stats] : report.cells) {
            cells.push_back({{"method", key.method},
                             {"model", key.model},
                             {"k", key.k},
                             {"cot", key.cot},
                             {"constraint_impl", key.constraint_impl},
                             {"runs", stats.runs},
                             {"success_rate_pct", percent_value(stats.success_rate())},
                             {"mean_completeness_pct", percent_value(stats.mean_completeness())}});
        }
        return json{{"cells", std::move(cells)}}.dump(2) + "\n";
    }

    std::ostringstream out;
    if (format == ReportFormat::Csv) {
        out << "method,model,k,cot,constraint_impl,runs,success_rate,completeness\n";
        for (const auto& [key, stats] : report.cells) {
            out << key.method << ',' << key.model << ',' << key.k << ','
                << (key.cot ? "true" : "false") << ',' << (key.constraint_impl ? "true" : "false")
                << ',' << stats.runs << ',' << percent_string(stats.success_rate()) << ','
                << percent_string(stats.mean_completeness()) << '\n';
        }
        return out.str();
    }

    out << "| method | model | k | cot | constraint_impl | runs | success rate | completeness |\n";
    out << "|---|---|---|---|---|---|---|---|\n";
    for (const auto& [key, stats] : report.cells) {
        out << "| " << key.method << " | " << key.model << " | " << key.k << " | "
            << (key.cot ? "true" : "false") << " | " << (key.constraint_impl ? "true" : "false")
            << " | " << stats.runs << " | " << percent_string(stats.success_rate()) << " | "
            << percent_string(stats.mean_completeness()) << " |\n";
    }
    return out.str();
}

}  // namespace gsce::eval

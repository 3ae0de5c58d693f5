#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "irp/search.hpp"

namespace irp {

/// Everything a run log carries: the trace plus the closing record.
struct RunLog {
    RunTrace trace;
    SearchMode mode = SearchMode::guided;
    WeightVector weights;
    std::optional<ReferencePoint> reference_point;
    std::optional<Solution> most_preferred;  // plan elided

    friend bool operator==(const RunLog& a, const RunLog& b);
};

RunLog make_run_log(const RunResult& result, const SearchConfig& config);

/// Line-delimited JSON: one {"type":"trace",...} object per trace point and a
/// final {"type":"final",...} object. Keys are sorted and reals use the
/// shortest round-trip form, so equal logs are byte-identical.
std::string trace_line(const TracePoint& p);
std::string final_line(const RunLog& log);
std::string serialize_run_log(const RunLog& log);

/// Throws std::invalid_argument on malformed input.
RunLog parse_run_log(std::string_view text);

/// Full delivery plan of a solution as a JSON document.
std::string plan_json(const Solution& solution, const DeliveryPlan& plan);

}  // namespace irp

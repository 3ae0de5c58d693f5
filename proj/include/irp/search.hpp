#pragma once

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "irp/archive.hpp"
#include "irp/evaluation.hpp"
#include "irp/instance.hpp"
#include "irp/scalarization.hpp"

namespace irp {

enum class SearchMode { guided, offline };
enum class TerminationReason { budget_exhausted, cone_exited, frontier_exhausted, user_stop };

const char* to_string(SearchMode m);
const char* to_string(TerminationReason r);
SearchMode parse_search_mode(const std::string& s);
TerminationReason parse_termination_reason(const std::string& s);

class ConfigError : public std::invalid_argument {
public:
    ConfigError(std::string field, const std::string& message)
        : std::invalid_argument(message), field(std::move(field)) {}

    std::string field;
};

struct SearchConfig {
    SearchMode mode = SearchMode::guided;
    std::optional<ReferencePoint> reference_point;  // required when guided
    std::optional<WeightVector> weights;            // computed from the start archive if unset
    std::int64_t evaluation_budget = 10000;
    std::optional<std::int64_t> cone_warmup_evals;  // default: 1% of budget, at least 100
    std::uint64_t seed = 0;                         // reserved; every step is deterministic
    std::int64_t trace_stride = 100;                // 0 records improvements only
    bool record_wall_time = false;                  // wall_ms stays 0 so logs are reproducible

    std::int64_t warmup() const;
    void validate() const;
};

struct TracePoint {
    std::int64_t eval_index = 0;
    std::optional<double> best_achievement;
    std::int64_t archive_size = 0;
    std::int64_t in_cone_count = 0;
    std::int64_t wall_ms = 0;

    friend bool operator==(const TracePoint&, const TracePoint&) = default;
};

struct RunTrace {
    std::vector<TracePoint> points;
    TerminationReason termination_reason = TerminationReason::budget_exhausted;
    std::int64_t evaluations = 0;

    friend bool operator==(const RunTrace&, const RunTrace&) = default;
};

struct RunResult {
    Archive archive;
    RunTrace trace;
    WeightVector weights;
    std::optional<Solution> most_preferred;  // set when a reference point is configured
};

/// Hooks for interactive callers. on_trace runs on the search thread after
/// each recorded trace point; on_accept after each archive acceptance with
/// the 1-based evaluation index; stop is polled between expansion rounds.
struct RunControl {
    const std::atomic<bool>* stop = nullptr;
    std::function<void(const TracePoint&)> on_trace;
    std::function<void(const Outcome&, std::int64_t)> on_accept;
};

struct Construction {
    Archive archive;
    int stop_m = 0;               // first m whose identical-period vector was not added
    std::int64_t evaluations = 0;
};

/// Evaluates pi = (m, ..., m) for m = 1, 2, ... and stops at the first m
/// whose solution is not added to the archive. Past the horizon every
/// coordinate is truncated to T, which reproduces m = T; that candidate is a
/// duplicate, so stop_m = T + 1 when all of 1..T were accepted.
Construction construct_initial_front(const Instance& instance);
Construction construct_initial_front(Evaluator& evaluator);

/// Reference-point guided local search: repeatedly expands the unexpanded
/// archive member with the lowest achievement value (ties: lower g1, then
/// g2) by evaluating all its +-1 neighbours. After the warmup, a round that
/// expands an out-of-cone member without accepting any in-cone solution
/// ends the run (cone_exited).
RunResult run_guided(const Instance& instance, Archive start, const SearchConfig& config,
                     const RunControl& control = {});

/// Same expansion mechanics with a first-in-first-out frontier and no cone
/// test. A reference point, if configured, is only used for reporting.
RunResult run_offline(const Instance& instance, Archive start, const SearchConfig& config,
                      const RunControl& control = {});

/// Dispatches on config.mode.
RunResult run_search(const Instance& instance, Archive start, const SearchConfig& config,
                     const RunControl& control = {});

/// Member with minimal achievement; ties by lower g1, then lower g2.
/// Throws std::invalid_argument on an empty archive.
const Solution& most_preferred(const Archive& archive, const ReferencePoint& r, const WeightVector& w);

}  // namespace irp

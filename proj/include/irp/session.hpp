#pragma once

#include <atomic>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "irp/run_log.hpp"
#include "irp/search.hpp"

namespace irp {

/// Error surfaced to API clients as {code, message, field?}.
class ServiceError : public std::runtime_error {
public:
    ServiceError(int http_status, std::string code, const std::string& message, std::string field = {})
        : std::runtime_error(message), http_status(http_status), code(std::move(code)), field(std::move(field)) {}

    int http_status;
    std::string code;
    std::string field;
};

enum class RunStatus { running, finished, stopped };
const char* to_string(RunStatus s);

struct RunRequest {
    SearchMode mode = SearchMode::guided;
    std::optional<ReferencePoint> reference_point;
    std::optional<std::size_t> reference_index;  // pick an approximation member's outcome instead
    std::int64_t evaluation_budget = 10000;
    std::optional<std::int64_t> cone_warmup_evals;
    std::uint64_t seed = 0;
    std::int64_t trace_stride = 100;
};

struct SessionSummary {
    std::string session_id;
    std::string instance_name;
    std::vector<Solution> front;  // construction order
};

struct PollResult {
    std::vector<TracePoint> points;
    RunStatus status = RunStatus::running;
    std::optional<TerminationReason> termination_reason;
};

enum class ExportFormat { front_csv, run_log, plan_json };
ExportFormat parse_export_format(const std::string& s);

/// Builds the SearchConfig a run request maps to, given the session's
/// approximation and frozen weights. Shared with the batch CLI so both paths
/// produce identical run logs.
SearchConfig make_search_config(const RunRequest& request, const Archive& approximation, const WeightVector& weights);

/// Hosts sessions and runs for the interactive loop. Each run executes on
/// its own thread; trace appends and polls share a short per-run lock.
///
/// With a log directory configured, every session stores instance.json and
/// each finished run stores {run}.log and {run}.front.csv under
/// {log_dir}/{session}/, from which restore() rebuilds finished runs.
class SessionService {
public:
    struct Options {
        std::size_t max_concurrent_runs = 4;
        std::optional<std::filesystem::path> log_dir;
    };

    SessionService();
    explicit SessionService(Options options);
    ~SessionService();

    SessionService(const SessionService&) = delete;
    SessionService& operator=(const SessionService&) = delete;

    SessionSummary create_session_from_text(std::string_view instance_text);
    SessionSummary create_session_from_file(const std::string& path);

    SessionSummary session(const std::string& session_id) const;

    std::string start_run(const std::string& session_id, const RunRequest& request);
    PollResult poll_trace(const std::string& session_id, const std::string& run_id, std::int64_t since) const;
    void stop_run(const std::string& session_id, const std::string& run_id);
    std::string export_run(const std::string& session_id, const std::string& run_id, ExportFormat format) const;

    /// Blocks until the run is no longer running.
    void wait(const std::string& session_id, const std::string& run_id) const;

    std::optional<WeightVector> weights(const std::string& session_id) const;

    /// Reloads every persisted session and its finished runs.
    void restore();

private:
    struct Run;
    struct Session;

    std::shared_ptr<Session> find_session(const std::string& id) const;
    std::shared_ptr<Run> find_run(const std::string& session_id, const std::string& run_id) const;
    SessionSummary register_session(Instance instance, std::optional<std::string> forced_id);
    void execute(std::shared_ptr<Session> session, std::shared_ptr<Run> run);
    std::optional<std::filesystem::path> session_dir(const std::string& session_id) const;

    Options options_;
    mutable std::mutex mutex_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t next_session_ = 1;
    std::atomic<std::size_t> running_{0};
};

}  // namespace irp

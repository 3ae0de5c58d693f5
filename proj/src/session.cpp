#include "irp/session.hpp"

#include <condition_variable>
#include <fstream>
#include <sstream>

namespace irp {

namespace fs = std::filesystem;

const char* to_string(RunStatus s) {
    switch (s) {
        case RunStatus::running: return "running";
        case RunStatus::finished: return "finished";
        case RunStatus::stopped: return "stopped";
    }
    return "unknown";
}

ExportFormat parse_export_format(const std::string& s) {
    if (s == "front_csv") return ExportFormat::front_csv;
    if (s == "run_log") return ExportFormat::run_log;
    if (s == "plan_json") return ExportFormat::plan_json;
    throw ServiceError(400, "unknown_format", "unknown export format '" + s + "'", "format");
}

SearchConfig make_search_config(const RunRequest& request, const Archive& approximation, const WeightVector& weights) {
    SearchConfig config;
    config.mode = request.mode;
    config.reference_point = request.reference_point;
    if (request.reference_index) {
        const auto idx = *request.reference_index;
        if (idx >= approximation.size()) {
            throw ConfigError("reference_index", "reference_index " + std::to_string(idx) +
                                                     " outside the approximation (size " +
                                                     std::to_string(approximation.size()) + ")");
        }
        const auto& o = approximation.members()[idx].outcome;
        config.reference_point = ReferencePoint{as_vector(o), "approximation[" + std::to_string(idx) + "]"};
    }
    config.weights = weights;
    config.evaluation_budget = request.evaluation_budget;
    config.cone_warmup_evals = request.cone_warmup_evals;
    config.seed = request.seed;
    config.trace_stride = request.trace_stride;
    config.validate();
    return config;
}

struct SessionService::Run {
    std::string id;
    SearchConfig config;
    std::atomic<bool> stop{false};

    mutable std::mutex m;
    mutable std::condition_variable cv;
    RunStatus status = RunStatus::running;
    std::vector<TracePoint> points;
    std::optional<TerminationReason> termination_reason;
    std::optional<Solution> most_preferred;
    std::string run_log;
    std::string front_csv;
    std::string error;

    std::thread worker;
};

struct SessionService::Session {
    std::string id;
    std::shared_ptr<const Instance> instance;
    Archive approximation;

    mutable std::mutex m;
    std::optional<WeightVector> weights;
    std::map<std::string, std::shared_ptr<Run>> runs;
    std::uint64_t next_run = 1;
};

namespace {

std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out << text;
}

std::uint64_t id_number(const std::string& id) {
    try {
        return id.size() > 1 ? std::stoull(id.substr(1)) : 0;
    } catch (const std::exception&) {
        return 0;
    }
}

}  // namespace

SessionService::SessionService() : SessionService(Options{}) {}

SessionService::SessionService(Options options) : options_(std::move(options)) {
    if (options_.log_dir) fs::create_directories(*options_.log_dir);
}

SessionService::~SessionService() {
    std::vector<std::shared_ptr<Run>> runs;
    {
        std::lock_guard lock(mutex_);
        for (auto& [_, s] : sessions_) {
            std::lock_guard slock(s->m);
            for (auto& [__, r] : s->runs) runs.push_back(r);
        }
    }
    for (auto& r : runs) r->stop = true;
    for (auto& r : runs) {
        if (r->worker.joinable()) r->worker.join();
    }
}

std::optional<fs::path> SessionService::session_dir(const std::string& session_id) const {
    if (!options_.log_dir) return std::nullopt;
    return *options_.log_dir / session_id;
}

SessionSummary SessionService::register_session(Instance instance, std::optional<std::string> forced_id) {
    auto session = std::make_shared<Session>();
    session->instance = std::make_shared<const Instance>(std::move(instance));
    session->approximation = construct_initial_front(*session->instance).archive;

    {
        std::lock_guard lock(mutex_);
        if (forced_id) {
            session->id = *forced_id;
            next_session_ = std::max(next_session_, id_number(*forced_id) + 1);
        } else {
            do {
                session->id = "s" + std::to_string(next_session_++);
            } while (sessions_.count(session->id) != 0 ||
                     (options_.log_dir && fs::exists(*options_.log_dir / session->id)));
        }
        sessions_[session->id] = session;
    }
    if (auto dir = session_dir(session->id); dir && !forced_id) {
        fs::create_directories(*dir);
        write_file(*dir / "instance.json", serialize_instance(*session->instance));
    }
    return {session->id, session->instance->name, session->approximation.members()};
}

SessionSummary SessionService::create_session_from_text(std::string_view instance_text) {
    Instance inst;
    try {
        inst = parse_instance(instance_text);
    } catch (const ParseError& e) {
        throw ServiceError(422, "parse_error", e.what(), e.field());
    }
    return register_session(std::move(inst), std::nullopt);
}

SessionSummary SessionService::create_session_from_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ServiceError(422, "parse_error", "cannot open instance file " + path, "instance_path");
    std::ostringstream buf;
    buf << in.rdbuf();
    return create_session_from_text(buf.str());
}

std::shared_ptr<SessionService::Session> SessionService::find_session(const std::string& id) const {
    std::lock_guard lock(mutex_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) throw ServiceError(404, "not_found", "unknown session '" + id + "'", "session_id");
    return it->second;
}

std::shared_ptr<SessionService::Run> SessionService::find_run(const std::string& session_id,
                                                              const std::string& run_id) const {
    auto session = find_session(session_id);
    std::lock_guard lock(session->m);
    auto it = session->runs.find(run_id);
    if (it == session->runs.end()) throw ServiceError(404, "not_found", "unknown run '" + run_id + "'", "run_id");
    return it->second;
}

SessionSummary SessionService::session(const std::string& session_id) const {
    auto s = find_session(session_id);
    return {s->id, s->instance->name, s->approximation.members()};
}

std::optional<WeightVector> SessionService::weights(const std::string& session_id) const {
    auto s = find_session(session_id);
    std::lock_guard lock(s->m);
    return s->weights;
}

std::string SessionService::start_run(const std::string& session_id, const RunRequest& request) {
    auto session = find_session(session_id);

    std::shared_ptr<Run> run;
    {
        std::lock_guard lock(session->m);
        const WeightVector w = session->weights ? *session->weights : compute_weights(session->approximation.outcomes());
        SearchConfig config;
        try {
            config = make_search_config(request, session->approximation, w);
        } catch (const ConfigError& e) {
            throw ServiceError(422, "invalid_config", e.what(), e.field);
        }
        if (running_.load() >= options_.max_concurrent_runs) {
            throw ServiceError(429, "run_limit", "concurrent run limit of " +
                                                     std::to_string(options_.max_concurrent_runs) + " reached");
        }
        session->weights = w;
        run = std::make_shared<Run>();
        run->id = "r" + std::to_string(session->next_run++);
        run->config = std::move(config);
        session->runs[run->id] = run;
        ++running_;
    }
    run->worker = std::thread([this, session, run] { execute(session, run); });
    return run->id;
}

void SessionService::execute(std::shared_ptr<Session> session, std::shared_ptr<Run> run) {
    RunControl control;
    control.stop = &run->stop;
    control.on_trace = [run](const TracePoint& p) {
        std::lock_guard lock(run->m);
        run->points.push_back(p);
    };

    std::optional<RunResult> result;
    std::string error;
    try {
        result = run_search(*session->instance, session->approximation, run->config, control);
    } catch (const std::exception& e) {
        error = e.what();
    }

    std::string log_text;
    std::string csv;
    if (result) {
        log_text = serialize_run_log(make_run_log(*result, run->config));
        csv = result->archive.to_csv();
        if (auto dir = session_dir(session->id)) {
            fs::create_directories(*dir);
            write_file(*dir / (run->id + ".front.csv"), csv);
            write_file(*dir / (run->id + ".log"), log_text);
        }
    }

    {
        std::lock_guard lock(run->m);
        if (result) {
            run->termination_reason = result->trace.termination_reason;
            run->status = result->trace.termination_reason == TerminationReason::user_stop ? RunStatus::stopped
                                                                                           : RunStatus::finished;
            run->most_preferred = result->most_preferred;
            run->run_log = std::move(log_text);
            run->front_csv = std::move(csv);
        } else {
            run->status = RunStatus::stopped;
            run->error = std::move(error);
        }
    }
    --running_;
    run->cv.notify_all();
}

PollResult SessionService::poll_trace(const std::string& session_id, const std::string& run_id,
                                      std::int64_t since) const {
    auto run = find_run(session_id, run_id);
    PollResult out;
    std::lock_guard lock(run->m);
    for (const auto& p : run->points) {
        // since <= 0 means "from the start", which includes the eval 0 point
        if (since <= 0 || p.eval_index > since) out.points.push_back(p);
    }
    out.status = run->status;
    out.termination_reason = run->termination_reason;
    return out;
}

void SessionService::stop_run(const std::string& session_id, const std::string& run_id) {
    auto run = find_run(session_id, run_id);
    run->stop = true;
    wait(session_id, run_id);
}

void SessionService::wait(const std::string& session_id, const std::string& run_id) const {
    auto run = find_run(session_id, run_id);
    std::unique_lock lock(run->m);
    run->cv.wait(lock, [&] { return run->status != RunStatus::running; });
}

std::string SessionService::export_run(const std::string& session_id, const std::string& run_id,
                                       ExportFormat format) const {
    auto session = find_session(session_id);
    auto run = find_run(session_id, run_id);
    std::lock_guard lock(run->m);
    if (run->status == RunStatus::running) {
        throw ServiceError(409, "not_finished", "run '" + run_id + "' is still running", "run_id");
    }
    if (!run->error.empty()) throw ServiceError(500, "run_failed", run->error);
    switch (format) {
        case ExportFormat::front_csv: return run->front_csv;
        case ExportFormat::run_log: return run->run_log;
        case ExportFormat::plan_json: {
            if (!run->most_preferred) {
                throw ServiceError(409, "no_preferred_solution",
                                   "run has no reference point, so no most-preferred solution", "format");
            }
            Evaluator ev(*session->instance);
            const auto plan = ev.plan(run->most_preferred->pi);
            return irp::plan_json(*run->most_preferred, plan);
        }
    }
    throw ServiceError(400, "unknown_format", "unknown export format", "format");
}

void SessionService::restore() {
    if (!options_.log_dir) return;
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(*options_.log_dir)) {
        if (entry.is_directory() && fs::exists(entry.path() / "instance.json")) dirs.push_back(entry.path());
    }
    std::sort(dirs.begin(), dirs.end());

    for (const auto& dir : dirs) {
        const std::string sid = dir.filename().string();
        {
            std::lock_guard lock(mutex_);
            if (sessions_.count(sid) != 0) continue;
        }
        register_session(parse_instance(read_file(dir / "instance.json")), sid);
        auto session = find_session(sid);

        std::vector<fs::path> logs;
        for (const auto& entry : fs::directory_iterator(dir)) {
            if (entry.path().extension() == ".log") logs.push_back(entry.path());
        }
        std::sort(logs.begin(), logs.end());
        for (const auto& path : logs) {
            auto run = std::make_shared<Run>();
            run->id = path.stem().string();
            run->run_log = read_file(path);
            const auto log = parse_run_log(run->run_log);
            run->config.mode = log.mode;
            run->config.reference_point = log.reference_point;
            run->config.weights = log.weights;
            run->points = log.trace.points;
            run->termination_reason = log.trace.termination_reason;
            run->status = log.trace.termination_reason == TerminationReason::user_stop ? RunStatus::stopped
                                                                                       : RunStatus::finished;
            run->most_preferred = log.most_preferred;
            if (const auto csv = dir / (run->id + ".front.csv"); fs::exists(csv)) run->front_csv = read_file(csv);

            std::lock_guard lock(session->m);
            session->weights = log.weights;
            session->next_run = std::max(session->next_run, id_number(run->id) + 1);
            session->runs[run->id] = run;
        }
    }
}

}  // namespace irp

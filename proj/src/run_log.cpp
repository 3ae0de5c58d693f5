#include "irp/run_log.hpp"

#include <sstream>

#include <json.hpp>

namespace irp {

using nlohmann::json;

namespace {

bool same_solution(const std::optional<Solution>& a, const std::optional<Solution>& b) {
    if (a.has_value() != b.has_value()) return false;
    return !a || (a->pi == b->pi && a->outcome == b->outcome);
}

json solution_json(const Solution& s) {
    return json{{"g1", s.outcome.inventory}, {"g2", s.outcome.routing}, {"pi", s.pi.periods}};
}

}  // namespace

bool operator==(const RunLog& a, const RunLog& b) {
    return a.trace == b.trace && a.mode == b.mode && a.weights == b.weights &&
           a.reference_point == b.reference_point && same_solution(a.most_preferred, b.most_preferred);
}

RunLog make_run_log(const RunResult& result, const SearchConfig& config) {
    RunLog log;
    log.trace = result.trace;
    log.mode = config.mode;
    log.weights = result.weights;
    log.reference_point = config.reference_point;
    if (result.most_preferred) {
        log.most_preferred = Solution{result.most_preferred->pi, result.most_preferred->outcome, std::nullopt};
    }
    return log;
}

std::string trace_line(const TracePoint& p) {
    json j{{"type", "trace"},
           {"eval_index", p.eval_index},
           {"archive_size", p.archive_size},
           {"in_cone_count", p.in_cone_count},
           {"wall_ms", p.wall_ms}};
    j["best_achievement"] = p.best_achievement ? json(*p.best_achievement) : json(nullptr);
    return j.dump();
}

std::string final_line(const RunLog& log) {
    json j{{"type", "final"},
           {"mode", to_string(log.mode)},
           {"evaluations", log.trace.evaluations},
           {"termination_reason", to_string(log.trace.termination_reason)},
           {"weights", log.weights.w}};
    j["reference_point"] = log.reference_point
                               ? json{{"r", log.reference_point->r}, {"label", log.reference_point->label}}
                               : json(nullptr);
    j["most_preferred"] = log.most_preferred ? solution_json(*log.most_preferred) : json(nullptr);
    return j.dump();
}

std::string serialize_run_log(const RunLog& log) {
    std::string out;
    for (const auto& p : log.trace.points) {
        out += trace_line(p);
        out += '\n';
    }
    out += final_line(log);
    out += '\n';
    return out;
}

RunLog parse_run_log(std::string_view text) {
    RunLog log;
    bool seen_final = false;
    std::istringstream in{std::string(text)};
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (seen_final) throw std::invalid_argument("run log: record after final record at line " + std::to_string(line_no));
        try {
            const auto j = json::parse(line);
            const auto type = j.at("type").get<std::string>();
            if (type == "trace") {
                TracePoint p;
                p.eval_index = j.at("eval_index").get<std::int64_t>();
                p.archive_size = j.at("archive_size").get<std::int64_t>();
                p.in_cone_count = j.at("in_cone_count").get<std::int64_t>();
                p.wall_ms = j.at("wall_ms").get<std::int64_t>();
                if (!j.at("best_achievement").is_null()) p.best_achievement = j.at("best_achievement").get<double>();
                log.trace.points.push_back(p);
            } else if (type == "final") {
                seen_final = true;
                log.mode = parse_search_mode(j.at("mode").get<std::string>());
                log.trace.evaluations = j.at("evaluations").get<std::int64_t>();
                log.trace.termination_reason = parse_termination_reason(j.at("termination_reason").get<std::string>());
                log.weights.w = j.at("weights").get<std::array<double, 2>>();
                if (const auto& rp = j.at("reference_point"); !rp.is_null()) {
                    log.reference_point = ReferencePoint{rp.at("r").get<std::array<double, 2>>(),
                                                         rp.at("label").get<std::string>()};
                }
                if (const auto& mp = j.at("most_preferred"); !mp.is_null()) {
                    Solution s;
                    s.pi.periods = mp.at("pi").get<std::vector<int>>();
                    s.outcome = {mp.at("g1").get<std::int64_t>(), mp.at("g2").get<double>()};
                    log.most_preferred = std::move(s);
                }
            } else {
                throw std::invalid_argument("unknown record type '" + type + "'");
            }
        } catch (const json::exception& e) {
            throw std::invalid_argument("run log line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    if (!seen_final) throw std::invalid_argument("run log has no final record");
    return log;
}

std::string plan_json(const Solution& solution, const DeliveryPlan& plan) {
    json routes = json::array();
    for (std::size_t t = 0; t < plan.per_period_routes.size(); ++t) {
        const auto& rs = plan.per_period_routes[t];
        json period{{"period", t + 1}, {"total_distance", rs.total_distance}, {"routes", json::array()}};
        for (const auto& r : rs.routes) {
            period["routes"].push_back({{"customer_sequence", r.customers}, {"load", r.load}, {"length", r.length}});
        }
        routes.push_back(std::move(period));
    }
    json j{{"pi", solution.pi.periods},
           {"inventory_g1", solution.outcome.inventory},
           {"routing_g2", solution.outcome.routing},
           {"quantities", plan.quantities},
           {"end_inventory", plan.end_inventory},
           {"per_period_routes", std::move(routes)}};
    return j.dump(2) + "\n";
}

}  // namespace irp

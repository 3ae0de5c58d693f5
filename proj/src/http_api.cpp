#include "irp/http_api.hpp"

#include <httplib.h>
#include <json.hpp>

#include "irp/session.hpp"

namespace irp {

using nlohmann::json;

namespace {

json front_json(const std::vector<Solution>& front) {
    json out = json::array();
    for (const auto& s : front) {
        out.push_back({{"g1", s.outcome.inventory}, {"g2", s.outcome.routing}, {"pi", s.pi.periods}});
    }
    return out;
}

json trace_point_json(const TracePoint& p) {
    json j{{"eval_index", p.eval_index},
           {"archive_size", p.archive_size},
           {"in_cone_count", p.in_cone_count},
           {"wall_ms", p.wall_ms}};
    j["best_achievement"] = p.best_achievement ? json(*p.best_achievement) : json(nullptr);
    return j;
}

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, const ServiceError& e) {
    json body{{"code", e.code}, {"message", e.what()}};
    if (!e.field.empty()) body["field"] = e.field;
    send_json(res, e.http_status, body);
}

json parse_body(const httplib::Request& req) {
    if (req.body.empty()) return json::object();
    try {
        auto j = json::parse(req.body);
        if (!j.is_object()) throw ServiceError(400, "bad_request", "request body must be a JSON object");
        return j;
    } catch (const json::parse_error& e) {
        throw ServiceError(400, "bad_request", std::string("malformed JSON body: ") + e.what());
    }
}

RunRequest parse_run_request(const json& body) {
    RunRequest r;
    try {
        if (body.contains("mode")) {
            try {
                r.mode = parse_search_mode(body.at("mode").get<std::string>());
            } catch (const ConfigError& e) {
                throw ServiceError(422, "invalid_config", e.what(), "mode");
            }
        }
        if (body.contains("reference_point") && !body.at("reference_point").is_null()) {
            const auto& rp = body.at("reference_point");
            ReferencePoint p;
            if (rp.is_array()) {
                p.r = rp.get<std::array<double, 2>>();
            } else {
                p.r = rp.at("r").get<std::array<double, 2>>();
                p.label = rp.value("label", "");
            }
            r.reference_point = p;
        }
        if (body.contains("reference_index") && !body.at("reference_index").is_null()) {
            r.reference_index = body.at("reference_index").get<std::size_t>();
        }
        if (body.contains("evaluation_budget")) r.evaluation_budget = body.at("evaluation_budget").get<std::int64_t>();
        if (body.contains("cone_warmup_evals") && !body.at("cone_warmup_evals").is_null()) {
            r.cone_warmup_evals = body.at("cone_warmup_evals").get<std::int64_t>();
        }
        if (body.contains("seed")) r.seed = body.at("seed").get<std::uint64_t>();
        if (body.contains("trace_stride")) r.trace_stride = body.at("trace_stride").get<std::int64_t>();
    } catch (const json::exception& e) {
        throw ServiceError(422, "invalid_config", std::string("invalid run request: ") + e.what());
    }
    return r;
}

template <typename Handler>
httplib::Server::Handler guarded(Handler h) {
    return [h](const httplib::Request& req, httplib::Response& res) {
        try {
            h(req, res);
        } catch (const ServiceError& e) {
            send_error(res, e);
        } catch (const std::exception& e) {
            send_error(res, ServiceError(500, "internal", e.what()));
        }
    };
}

}  // namespace

void mount_api(httplib::Server& server, SessionService& service) {
    server.Post("/api/sessions", guarded([&service](const httplib::Request& req, httplib::Response& res) {
        const auto body = parse_body(req);
        SessionSummary summary;
        if (body.contains("instance_path")) {
            summary = service.create_session_from_file(body.at("instance_path").get<std::string>());
        } else if (body.contains("instance") && body.at("instance").is_object()) {
            summary = service.create_session_from_text(body.at("instance").dump(2));
        } else if (body.contains("instance") && body.at("instance").is_string()) {
            summary = service.create_session_from_text(body.at("instance").get<std::string>());
        } else {
            throw ServiceError(422, "invalid_request", "provide 'instance' or 'instance_path'", "instance");
        }
        send_json(res, 201,
                  {{"session_id", summary.session_id}, {"name", summary.instance_name},
                   {"front", front_json(summary.front)}});
    }));

    server.Get("/api/sessions/:id/front", guarded([&service](const httplib::Request& req, httplib::Response& res) {
        const auto& id = req.path_params.at("id");
        const auto summary = service.session(id);
        json body{{"session_id", summary.session_id}, {"front", front_json(summary.front)}};
        if (auto w = service.weights(id)) body["weights"] = w->w;
        send_json(res, 200, body);
    }));

    server.Post("/api/sessions/:id/runs", guarded([&service](const httplib::Request& req, httplib::Response& res) {
        const auto request = parse_run_request(parse_body(req));
        const auto run_id = service.start_run(req.path_params.at("id"), request);
        send_json(res, 202, {{"run_id", run_id}, {"status", "running"}});
    }));

    server.Get("/api/sessions/:id/runs/:rid/trace",
               guarded([&service](const httplib::Request& req, httplib::Response& res) {
                   std::int64_t since = 0;
                   if (req.has_param("since")) {
                       try {
                           since = std::stoll(req.get_param_value("since"));
                       } catch (const std::exception&) {
                           throw ServiceError(400, "bad_request", "since must be an integer", "since");
                       }
                   }
                   const auto poll = service.poll_trace(req.path_params.at("id"), req.path_params.at("rid"), since);
                   json points = json::array();
                   for (const auto& p : poll.points) points.push_back(trace_point_json(p));
                   json body{{"points", std::move(points)}, {"status", to_string(poll.status)}};
                   body["termination_reason"] =
                       poll.termination_reason ? json(to_string(*poll.termination_reason)) : json(nullptr);
                   send_json(res, 200, body);
               }));

    server.Post("/api/sessions/:id/runs/:rid/stop",
                guarded([&service](const httplib::Request& req, httplib::Response& res) {
                    const auto& sid = req.path_params.at("id");
                    const auto& rid = req.path_params.at("rid");
                    service.stop_run(sid, rid);
                    const auto poll = service.poll_trace(sid, rid, std::numeric_limits<std::int64_t>::max());
                    send_json(res, 200, {{"run_id", rid}, {"status", to_string(poll.status)}, {"acknowledged", true}});
                }));

    server.Get("/api/sessions/:id/runs/:rid/export",
               guarded([&service](const httplib::Request& req, httplib::Response& res) {
                   if (!req.has_param("format")) throw ServiceError(400, "bad_request", "format is required", "format");
                   const auto format = parse_export_format(req.get_param_value("format"));
                   const auto bytes = service.export_run(req.path_params.at("id"), req.path_params.at("rid"), format);
                   const char* type = format == ExportFormat::front_csv ? "text/csv"
                                      : format == ExportFormat::run_log ? "application/x-ndjson"
                                                                        : "application/json";
                   res.status = 200;
                   res.set_content(bytes, type);
               }));
}

}  // namespace irp

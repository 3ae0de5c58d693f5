// Command line front end: instance generation, batch runs and the API host.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <httplib.h>

#include "irp/http_api.hpp"
#include "irp/run_log.hpp"
#include "irp/search.hpp"
#include "irp/session.hpp"

namespace {

void write_output(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

irp::ReferencePoint parse_rp(const std::string& text) {
    std::istringstream in(text);
    irp::ReferencePoint rp;
    char comma = 0;
    if (!(in >> rp.r[0] >> comma >> rp.r[1]) || comma != ',') {
        throw CLI::ValidationError("--rp", "expected \"g1,g2\", got '" + text + "'");
    }
    rp.label = text;
    return rp;
}

httplib::Server* g_server = nullptr;

void on_signal(int) {
    if (g_server != nullptr) g_server->stop();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Interactive bi-objective inventory routing solver"};
    app.require_subcommand(1);

    irp::GeneratorConfig gen_cfg;
    std::string out_path;
    auto* gen = app.add_subcommand("gen", "Generate a random instance");
    gen->add_option("--n", gen_cfg.n_customers, "Number of customers")->capture_default_str();
    gen->add_option("--horizon,-T", gen_cfg.horizon, "Planning horizon")->capture_default_str();
    gen->add_option("--seed", gen_cfg.seed, "Generator seed")->capture_default_str();
    gen->add_option("--noise", gen_cfg.noise_fraction, "Relative demand noise")->capture_default_str();
    gen->add_option("--mean-lo", gen_cfg.mean_demand_range.first, "Lowest mean demand")->capture_default_str();
    gen->add_option("--mean-hi", gen_cfg.mean_demand_range.second, "Highest mean demand")->capture_default_str();
    gen->add_option("--capacity", gen_cfg.vehicle_capacity, "Vehicle capacity")->capture_default_str();
    gen->add_option("--name", gen_cfg.name, "Instance name");
    gen->add_option("--out", out_path, "Output file (stdout if omitted)");

    std::string instance_path;
    auto* approx = app.add_subcommand("approx", "Build the identical-period approximation and print it as CSV");
    approx->add_option("--instance", instance_path, "Instance file")->required();
    approx->add_option("--out", out_path, "Output file (stdout if omitted)");

    irp::RunRequest request;
    std::string rp_text;
    std::string front_out;
    bool wall_time = false;
    auto add_run_options = [&](CLI::App* cmd) {
        cmd->add_option("--instance", instance_path, "Instance file")->required();
        cmd->add_option("--budget", request.evaluation_budget, "Evaluation budget")->capture_default_str();
        cmd->add_option("--seed", request.seed, "Run seed (recorded, currently unused)")->capture_default_str();
        cmd->add_option("--stride", request.trace_stride, "Trace every k-th evaluation")->capture_default_str();
        cmd->add_option("--rp", rp_text, "Reference point \"g1,g2\"");
        cmd->add_option("--rp-index", request.reference_index, "Use the outcome of approximation member k");
        cmd->add_option("--out", out_path, "Run log file (stdout if omitted)");
        cmd->add_option("--front-out", front_out, "Write the final archive as CSV");
        cmd->add_flag("--wall-time", wall_time, "Record wall-clock milliseconds in the trace");
    };
    auto* offline = app.add_subcommand("offline", "Run the undirected full-front search");
    add_run_options(offline);
    auto* guided = app.add_subcommand("guided", "Run the reference point guided search");
    add_run_options(guided);
    std::int64_t warmup = -1;
    guided->add_option("--warmup", warmup, "Evaluations before cone exit may stop the run (default 1% of budget, >= 100)");

    int port = 8080;
    std::string host = "127.0.0.1";
    std::string log_dir;
    std::size_t max_runs = 4;
    auto* serve = app.add_subcommand("serve", "Start the HTTP+JSON API host");
    serve->add_option("--port", port, "Listen port")->capture_default_str();
    serve->add_option("--host", host, "Listen address")->capture_default_str();
    serve->add_option("--log-dir", log_dir, "Persist sessions and run logs here");
    serve->add_option("--max-runs", max_runs, "Concurrent run limit")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gen) {
            write_output(out_path, irp::serialize_instance(irp::generate(gen_cfg)));
        } else if (*approx) {
            const auto inst = irp::load_instance(instance_path);
            write_output(out_path, irp::construct_initial_front(inst).archive.to_csv());
        } else if (*offline || *guided) {
            const auto inst = irp::load_instance(instance_path);
            auto construction = irp::construct_initial_front(inst);
            request.mode = *guided ? irp::SearchMode::guided : irp::SearchMode::offline;
            if (!rp_text.empty()) request.reference_point = parse_rp(rp_text);
            if (warmup >= 0) request.cone_warmup_evals = warmup;
            const auto weights = irp::compute_weights(construction.archive.outcomes());
            auto config = irp::make_search_config(request, construction.archive, weights);
            config.record_wall_time = wall_time;
            const auto result = irp::run_search(inst, std::move(construction.archive), config);
            write_output(out_path, irp::serialize_run_log(irp::make_run_log(result, config)));
            if (!front_out.empty()) write_output(front_out, result.archive.to_csv());
        } else if (*serve) {
            irp::SessionService::Options options;
            options.max_concurrent_runs = max_runs;
            if (!log_dir.empty()) options.log_dir = log_dir;
            irp::SessionService service(options);
            service.restore();
            httplib::Server server;
            irp::mount_api(server, service);
            g_server = &server;
            std::signal(SIGINT, on_signal);
            std::signal(SIGTERM, on_signal);
            std::cerr << "listening on " << host << ":" << port << "\n";
            if (!server.listen(host, port)) {
                std::cerr << "error: cannot listen on " << host << ":" << port << "\n";
                return 1;
            }
        }
    } catch (const irp::ConfigError& e) {
        std::cerr << "error: " << e.field << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}

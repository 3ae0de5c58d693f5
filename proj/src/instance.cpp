#include "irp/instance.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace irp {

double euclidean(const Point& a, const Point& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

void validate(const Instance& instance) {
    if (instance.horizon < 1) {
        throw std::invalid_argument("horizon must be at least 1");
    }
    if (instance.customers.empty()) {
        throw std::invalid_argument("instance needs at least one customer");
    }
    if (instance.vehicle_capacity <= 0) {
        throw std::invalid_argument("vehicle_capacity must be positive");
    }
    for (std::size_t i = 0; i < instance.customers.size(); ++i) {
        const auto& c = instance.customers[i];
        if (c.id != static_cast<int>(i) + 1) {
            throw std::invalid_argument("customer ids must be contiguous 1..n");
        }
        if (c.demand.size() != static_cast<std::size_t>(instance.horizon)) {
            throw std::invalid_argument("customer " + std::to_string(c.id) + ": demand length mismatch");
        }
        for (auto d : c.demand) {
            if (d < 0) {
                throw std::invalid_argument("customer " + std::to_string(c.id) + ": negative demand");
            }
            if (d > instance.vehicle_capacity) {
                throw std::invalid_argument("customer " + std::to_string(c.id) + ": demand exceeds vehicle capacity");
            }
            if (d > c.inventory_capacity) {
                throw std::invalid_argument("customer " + std::to_string(c.id) +
                                            ": demand exceeds inventory capacity");
            }
        }
    }
}

namespace {

// mt19937_64 output is fixed by the standard; the distributions are not,
// so the mapping to ranges is done here to keep instances identical
// across standard libraries.
double unit_real(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double uniform_real(std::mt19937_64& rng, double lo, double hi) {
    return lo + (hi - lo) * unit_real(rng);
}

std::int64_t uniform_int(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(rng() % span);
}

double quantize6(double v) {
    return std::round(v * 1e6) / 1e6;
}

}  // namespace

Instance generate(const GeneratorConfig& config) {
    if (config.n_customers < 1 || config.horizon < 1) {
        throw std::invalid_argument("generator needs n_customers >= 1 and horizon >= 1");
    }
    if (!(config.noise_fraction >= 0.0 && config.noise_fraction < 1.0)) {
        throw std::invalid_argument("noise_fraction must lie in [0, 1)");
    }
    if (config.mean_demand_range.first > config.mean_demand_range.second ||
        config.coordinate_range.first > config.coordinate_range.second) {
        throw std::invalid_argument("range lower bound exceeds upper bound");
    }
    if (config.mean_demand_range.first < 0) {
        throw std::invalid_argument("mean demand must be non-negative");
    }
    if (config.vehicle_capacity <= 0) {
        throw std::invalid_argument("vehicle_capacity must be positive");
    }

    std::mt19937_64 rng(config.seed);
    Instance inst;
    inst.name = config.name.empty() ? "gen-" + std::to_string(config.seed) : config.name;
    inst.horizon = config.horizon;
    inst.vehicle_capacity = config.vehicle_capacity;
    const auto [clo, chi] = config.coordinate_range;
    inst.depot = {quantize6((clo + chi) / 2.0), quantize6((clo + chi) / 2.0)};

    inst.customers.reserve(static_cast<std::size_t>(config.n_customers));
    for (int i = 0; i < config.n_customers; ++i) {
        Customer c;
        c.id = i + 1;
        c.location.x = quantize6(uniform_real(rng, clo, chi));
        c.location.y = quantize6(uniform_real(rng, clo, chi));
        const auto mean = static_cast<double>(
            uniform_int(rng, config.mean_demand_range.first, config.mean_demand_range.second));
        const double lo = mean * (1.0 - config.noise_fraction);
        const double hi = mean * (1.0 + config.noise_fraction);
        c.demand.reserve(static_cast<std::size_t>(config.horizon));
        for (int t = 0; t < config.horizon; ++t) {
            const auto d = static_cast<std::int64_t>(std::round(uniform_real(rng, lo, hi)));
            c.demand.push_back(std::max<std::int64_t>(d, 0));
        }
        const auto peak = *std::max_element(c.demand.begin(), c.demand.end());
        if (peak > config.vehicle_capacity) {
            throw std::invalid_argument("customer " + std::to_string(c.id) + " demand " +
                                        std::to_string(peak) + " exceeds vehicle capacity " +
                                        std::to_string(config.vehicle_capacity));
        }
        c.inventory_capacity = config.vehicle_capacity;
        inst.customers.push_back(std::move(c));
    }
    return inst;
}

ParseError::ParseError(std::string field, int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ", field '" + field + "': " + message),
      field_(std::move(field)),
      line_(line) {}

namespace {

int line_of_offset(std::string_view text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

// Line of the k-th occurrence (0-based) of a quoted key; 1 if not found.
int line_of_key(std::string_view text, std::string_view key, std::size_t k) {
    const std::string quoted = "\"" + std::string(key) + "\"";
    std::size_t pos = 0;
    for (std::size_t seen = 0;; ++seen) {
        pos = text.find(quoted, pos);
        if (pos == std::string_view::npos) return 1;
        if (seen == k) return line_of_offset(text, pos);
        pos += quoted.size();
    }
}

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& path, int line) {
    if (!obj.is_object() || !obj.contains(key)) {
        throw ParseError(path + key, line, "missing field");
    }
    return obj.at(key);
}

std::int64_t as_int(const json& v, const std::string& field, int line) {
    if (!v.is_number_integer()) throw ParseError(field, line, "expected integer");
    return v.get<std::int64_t>();
}

double as_real(const json& v, const std::string& field, int line) {
    if (!v.is_number()) throw ParseError(field, line, "expected number");
    return v.get<double>();
}

Point as_point(const json& obj, const std::string& path, int line) {
    return {as_real(require(obj, "x", path, line), path + "x", line),
            as_real(require(obj, "y", path, line), path + "y", line)};
}

}  // namespace

Instance parse_instance(std::string_view text) {
    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ParseError("document", line_of_offset(text, e.byte > 0 ? e.byte - 1 : 0), e.what());
    }
    if (!doc.is_object()) throw ParseError("document", 1, "expected an object");

    Instance inst;
    const auto& name = require(doc, "name", "", line_of_key(text, "name", 0));
    if (!name.is_string()) throw ParseError("name", line_of_key(text, "name", 0), "expected string");
    inst.name = name.get<std::string>();

    const int horizon_line = line_of_key(text, "horizon", 0);
    const auto horizon = as_int(require(doc, "horizon", "", horizon_line), "horizon", horizon_line);
    if (horizon < 1) throw ParseError("horizon", horizon_line, "must be at least 1");
    inst.horizon = static_cast<int>(horizon);

    const int q_line = line_of_key(text, "vehicle_capacity", 0);
    inst.vehicle_capacity = as_int(require(doc, "vehicle_capacity", "", q_line), "vehicle_capacity", q_line);
    if (inst.vehicle_capacity <= 0) throw ParseError("vehicle_capacity", q_line, "must be positive");

    const int depot_line = line_of_key(text, "depot", 0);
    inst.depot = as_point(require(doc, "depot", "", depot_line), "depot.", depot_line);

    const int customers_line = line_of_key(text, "customers", 0);
    const auto& customers = require(doc, "customers", "", customers_line);
    if (!customers.is_array() || customers.empty()) {
        throw ParseError("customers", customers_line, "expected a non-empty array");
    }
    for (std::size_t k = 0; k < customers.size(); ++k) {
        const auto& cj = customers[k];
        const std::string path = "customers[" + std::to_string(k) + "].";
        const int line = std::max(line_of_key(text, "demand", k), customers_line);
        Customer c;
        c.id = static_cast<int>(as_int(require(cj, "id", path, line), path + "id", line));
        if (c.id != static_cast<int>(k) + 1) {
            throw ParseError(path + "id", line, "customer ids must be contiguous 1..n in order");
        }
        c.location = as_point(cj, path, line);
        c.inventory_capacity = as_int(require(cj, "inventory_capacity", path, line), path + "inventory_capacity", line);
        if (c.inventory_capacity <= 0) throw ParseError(path + "inventory_capacity", line, "must be positive");
        const auto& dem = require(cj, "demand", path, line);
        if (!dem.is_array()) throw ParseError(path + "demand", line, "expected an array");
        if (dem.size() != static_cast<std::size_t>(inst.horizon)) {
            throw ParseError(path + "demand", line,
                             "demand length mismatch: got " + std::to_string(dem.size()) + ", horizon is " +
                                 std::to_string(inst.horizon));
        }
        for (const auto& dv : dem) {
            const auto d = as_int(dv, path + "demand", line);
            if (d < 0) throw ParseError(path + "demand", line, "negative demand");
            if (d > inst.vehicle_capacity) throw ParseError(path + "demand", line, "demand exceeds vehicle capacity");
            if (d > c.inventory_capacity) throw ParseError(path + "demand", line, "demand exceeds inventory capacity");
            c.demand.push_back(d);
        }
        inst.customers.push_back(std::move(c));
    }
    return inst;
}

Instance load_instance(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("file", 0, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_instance(buf.str());
}

namespace {

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

}  // namespace

std::string serialize_instance(const Instance& instance) {
    std::string out = "{\n  \"customers\": [\n";
    for (std::size_t i = 0; i < instance.customers.size(); ++i) {
        const auto& c = instance.customers[i];
        out += "    {\"demand\": [";
        for (std::size_t t = 0; t < c.demand.size(); ++t) {
            if (t) out += ", ";
            out += std::to_string(c.demand[t]);
        }
        out += "], \"id\": " + std::to_string(c.id);
        out += ", \"inventory_capacity\": " + std::to_string(c.inventory_capacity);
        out += ", \"x\": " + fixed6(c.location.x) + ", \"y\": " + fixed6(c.location.y) + "}";
        out += i + 1 < instance.customers.size() ? ",\n" : "\n";
    }
    out += "  ],\n";
    out += "  \"depot\": {\"x\": " + fixed6(instance.depot.x) + ", \"y\": " + fixed6(instance.depot.y) + "},\n";
    out += "  \"horizon\": " + std::to_string(instance.horizon) + ",\n";
    out += "  \"name\": " + nlohmann::json(instance.name).dump() + ",\n";
    out += "  \"vehicle_capacity\": " + std::to_string(instance.vehicle_capacity) + "\n";
    out += "}\n";
    return out;
}

}  // namespace irp

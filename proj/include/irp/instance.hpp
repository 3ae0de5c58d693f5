#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace irp {

struct Point {
    double x = 0.0;
    double y = 0.0;

    friend bool operator==(const Point&, const Point&) = default;
};

double euclidean(const Point& a, const Point& b);

struct Customer {
    int id = 0;
    Point location;
    std::int64_t inventory_capacity = 0;
    std::vector<std::int64_t> demand;  // one entry per period

    friend bool operator==(const Customer&, const Customer&) = default;
};

/// An inventory routing instance: a depot, n customers with per-period
/// deterministic demand, a homogeneous vehicle capacity and a horizon.
///
/// Customers are indexed 0..n-1 internally and carry ids 1..n. Initial
/// inventory is zero for every customer.
struct Instance {
    std::string name;
    int horizon = 0;
    Point depot;
    std::int64_t vehicle_capacity = 0;
    std::vector<Customer> customers;

    std::size_t size() const { return customers.size(); }

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// Throws std::invalid_argument if any structural invariant is broken.
void validate(const Instance& instance);

struct GeneratorConfig {
    int n_customers = 50;
    int horizon = 30;
    std::pair<std::int64_t, std::int64_t> mean_demand_range{20, 100};
    double noise_fraction = 0.25;
    std::pair<double, double> coordinate_range{0.0, 100.0};
    std::int64_t vehicle_capacity = 200;
    std::uint64_t seed = 1;
    std::string name;  // defaults to "gen-<seed>"
};

/// Random instance generator: constant mean demand per customer with
/// uniform noise of +-noise_fraction around it. Coordinates are quantized
/// to 6 decimals so the canonical text form round-trips exactly. Every
/// customer's inventory capacity equals the vehicle capacity.
Instance generate(const GeneratorConfig& config);

class ParseError : public std::runtime_error {
public:
    ParseError(std::string field, int line, const std::string& message);

    const std::string& field() const { return field_; }
    int line() const { return line_; }

private:
    std::string field_;
    int line_;
};

Instance parse_instance(std::string_view text);
Instance load_instance(const std::string& path);

/// Canonical form: sorted keys, one customer per line, coordinates with
/// 6-decimal fixed point. Byte-stable for equal instances.
std::string serialize_instance(const Instance& instance);

}  // namespace irp

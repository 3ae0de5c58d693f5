#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "irp/instance.hpp"

namespace irp {

struct Route {
    std::vector<int> customers;  // customer ids; the depot is implicit at both ends
    std::int64_t load = 0;
    double length = 0.0;

    friend bool operator==(const Route&, const Route&) = default;
};

struct RoutingSolution {
    std::vector<Route> routes;
    double total_distance = 0.0;

    friend bool operator==(const RoutingSolution&, const RoutingSolution&) = default;
};

/// Clarke & Wright saving of joining i and j on one route.
constexpr double savings_value(double d0i, double d0j, double dij) {
    return d0i + d0j - dij;
}

/// Parallel Clarke & Wright savings heuristic bound to one instance.
///
/// The pair list is sorted once (descending saving, ties by ascending
/// (min id, max id)); each call then filters it down to the customers that
/// receive a delivery. Pairs with non-positive saving are never merged.
/// Thread-safe for concurrent route() calls.
class SavingsRouter {
public:
    explicit SavingsRouter(const Instance& instance);

    /// quantities[i] is the delivery to customer index i (id i+1); zero means
    /// not served. Throws std::invalid_argument if a quantity exceeds the
    /// vehicle capacity or is negative.
    RoutingSolution route(std::span<const std::int64_t> quantities) const;

    /// Same merges as route(), returning only the total distance.
    double total_distance(std::span<const std::int64_t> quantities) const;

    double distance(int a, int b) const { return dist_[static_cast<std::size_t>(a) * stride_ + b]; }
    double depot_distance(int customer_index) const { return distance(0, customer_index + 1); }
    std::size_t customer_count() const { return stride_ - 1; }

private:
    // Routes as doubly linked chains over customer indices, -1 marking the
    // depot. owner is a union-find forest whose roots hold route loads.
    struct Chains {
        std::vector<int> next, prev, owner;
        std::vector<std::int64_t> load;
        std::vector<int> served;
    };

    void merge_all(std::span<const std::int64_t> quantities, Chains& ch) const;
    double chain_length(const Chains& ch, int head) const;

    std::int64_t capacity_;
    std::size_t stride_;
    std::vector<double> dist_;  // (n+1)^2, node 0 is the depot
    std::vector<std::pair<int, int>> pairs_;  // merge candidates in processing order
};

/// Convenience entry point keyed by customer id.
RoutingSolution solve_savings(const Instance& instance, const std::map<int, std::int64_t>& demands);

}  // namespace irp

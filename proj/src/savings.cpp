#include "irp/savings.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace irp {

SavingsRouter::SavingsRouter(const Instance& instance)
    : capacity_(instance.vehicle_capacity), stride_(instance.customers.size() + 1) {
    dist_.resize(stride_ * stride_);
    auto location = [&](std::size_t node) {
        return node == 0 ? instance.depot : instance.customers[node - 1].location;
    };
    for (std::size_t a = 0; a < stride_; ++a) {
        for (std::size_t b = 0; b < stride_; ++b) {
            dist_[a * stride_ + b] = a == b ? 0.0 : euclidean(location(a), location(b));
        }
    }

    const auto n = static_cast<int>(instance.customers.size());
    struct Candidate {
        double saving;
        int i;  // customer index, i < j
        int j;
    };
    std::vector<Candidate> candidates;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double s = savings_value(depot_distance(i), depot_distance(j), distance(i + 1, j + 1));
            if (s > 0.0) candidates.push_back({s, i, j});
        }
    }
    std::sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
        if (a.saving != b.saving) return a.saving > b.saving;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    });
    pairs_.reserve(candidates.size());
    for (const auto& c : candidates) pairs_.emplace_back(c.i, c.j);
}

namespace {

int find_root(std::vector<int>& owner, int c) {
    while (owner[static_cast<std::size_t>(c)] != c) {
        auto& o = owner[static_cast<std::size_t>(c)];
        o = owner[static_cast<std::size_t>(o)];
        c = o;
    }
    return c;
}

// Flips the chain starting at head in place.
void reverse_chain(std::vector<int>& next, std::vector<int>& prev, int head) {
    for (int c = head; c != -1;) {
        const int after = next[static_cast<std::size_t>(c)];
        std::swap(next[static_cast<std::size_t>(c)], prev[static_cast<std::size_t>(c)]);
        c = after;
    }
}

int head_of(const std::vector<int>& prev, int c) {
    while (prev[static_cast<std::size_t>(c)] != -1) c = prev[static_cast<std::size_t>(c)];
    return c;
}

}  // namespace

void SavingsRouter::merge_all(std::span<const std::int64_t> quantities, Chains& ch) const {
    const std::size_t n = customer_count();
    if (quantities.size() != n) {
        throw std::invalid_argument("quantity vector size does not match customer count");
    }
    ch.next.assign(n, -1);
    ch.prev.assign(n, -1);
    ch.owner.assign(n, -1);
    ch.load.assign(n, 0);
    ch.served.clear();
    for (std::size_t i = 0; i < n; ++i) {
        const auto q = quantities[i];
        if (q < 0) throw std::invalid_argument("negative delivery quantity for customer " + std::to_string(i + 1));
        if (q == 0) continue;
        if (q > capacity_) {
            throw std::invalid_argument("delivery of " + std::to_string(q) + " to customer " + std::to_string(i + 1) +
                                        " exceeds vehicle capacity");
        }
        ch.owner[i] = static_cast<int>(i);
        ch.load[i] = q;
        ch.served.push_back(static_cast<int>(i));
    }
    if (ch.served.size() < 2) return;

    std::size_t remaining = ch.served.size() - 1;
    for (const auto& [pi, pj] : pairs_) {
        const auto ui = static_cast<std::size_t>(pi);
        const auto uj = static_cast<std::size_t>(pj);
        if (ch.owner[ui] < 0 || ch.owner[uj] < 0) continue;
        const bool i_end = ch.prev[ui] == -1 || ch.next[ui] == -1;
        const bool j_end = ch.prev[uj] == -1 || ch.next[uj] == -1;
        if (!i_end || !j_end) continue;
        const int ra = find_root(ch.owner, pi);
        const int rb = find_root(ch.owner, pj);
        if (ra == rb) continue;
        if (ch.load[static_cast<std::size_t>(ra)] + ch.load[static_cast<std::size_t>(rb)] > capacity_) continue;

        // Orient so that ... -> i  joins  j -> ...
        if (ch.next[ui] != -1) reverse_chain(ch.next, ch.prev, head_of(ch.prev, pi));
        if (ch.prev[uj] != -1) reverse_chain(ch.next, ch.prev, head_of(ch.prev, pj));
        ch.next[ui] = pj;
        ch.prev[uj] = pi;
        ch.owner[static_cast<std::size_t>(rb)] = ra;
        ch.load[static_cast<std::size_t>(ra)] += ch.load[static_cast<std::size_t>(rb)];
        if (--remaining == 0) break;
    }
}

double SavingsRouter::chain_length(const Chains& ch, int head) const {
    double length = 0.0;
    int prev_node = 0;
    for (int c = head; c != -1; c = ch.next[static_cast<std::size_t>(c)]) {
        length += distance(prev_node, c + 1);
        prev_node = c + 1;
    }
    return length + distance(prev_node, 0);
}

namespace {

// Chain heads ordered by the smallest customer index on each chain, which
// fixes both the route listing order and the summation order of lengths.
std::vector<int> ordered_heads(const std::vector<int>& served, const std::vector<int>& next,
                               const std::vector<int>& prev) {
    std::vector<std::pair<int, int>> keyed;
    for (int c : served) {
        if (prev[static_cast<std::size_t>(c)] != -1) continue;
        int smallest = c;
        for (int k = c; k != -1; k = next[static_cast<std::size_t>(k)]) smallest = std::min(smallest, k);
        keyed.emplace_back(smallest, c);
    }
    std::sort(keyed.begin(), keyed.end());
    std::vector<int> heads;
    heads.reserve(keyed.size());
    for (const auto& [_, head] : keyed) heads.push_back(head);
    return heads;
}

}  // namespace

RoutingSolution SavingsRouter::route(std::span<const std::int64_t> quantities) const {
    Chains ch;
    merge_all(quantities, ch);
    RoutingSolution sol;
    for (int head : ordered_heads(ch.served, ch.next, ch.prev)) {
        Route route;
        for (int k = head; k != -1; k = ch.next[static_cast<std::size_t>(k)]) {
            route.customers.push_back(k + 1);
            route.load += quantities[static_cast<std::size_t>(k)];
        }
        route.length = chain_length(ch, head);
        sol.total_distance += route.length;
        sol.routes.push_back(std::move(route));
    }
    return sol;
}

double SavingsRouter::total_distance(std::span<const std::int64_t> quantities) const {
    thread_local Chains ch;
    merge_all(quantities, ch);
    double total = 0.0;
    for (int head : ordered_heads(ch.served, ch.next, ch.prev)) total += chain_length(ch, head);
    return total;
}

RoutingSolution solve_savings(const Instance& instance, const std::map<int, std::int64_t>& demands) {
    std::vector<std::int64_t> quantities(instance.customers.size(), 0);
    for (const auto& [id, q] : demands) {
        if (id < 1 || static_cast<std::size_t>(id) > instance.customers.size()) {
            throw std::invalid_argument("unknown customer id " + std::to_string(id));
        }
        if (q <= 0) throw std::invalid_argument("delivery quantities must be positive");
        quantities[static_cast<std::size_t>(id - 1)] = q;
    }
    return SavingsRouter(instance).route(quantities);
}

}  // namespace irp

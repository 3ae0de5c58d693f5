#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "irp/instance.hpp"
#include "irp/savings.hpp"

namespace irp {

/// Delivery period vector: for each customer, how many consecutive periods
/// of demand one delivery covers. The search genotype.
struct PeriodVector {
    std::vector<int> periods;

    std::size_t size() const { return periods.size(); }
    friend bool operator==(const PeriodVector&, const PeriodVector&) = default;
    friend auto operator<=>(const PeriodVector&, const PeriodVector&) = default;
};

/// Both objectives are minimized.
struct Outcome {
    std::int64_t inventory = 0;  // sum of end-of-period inventories
    double routing = 0.0;        // sum of route lengths over all periods

    friend bool operator==(const Outcome&, const Outcome&) = default;
};

struct DeliveryPlan {
    // [customer index][period index]
    std::vector<std::vector<std::int64_t>> quantities;
    std::vector<std::vector<std::int64_t>> end_inventory;
    std::vector<RoutingSolution> per_period_routes;

    friend bool operator==(const DeliveryPlan&, const DeliveryPlan&) = default;
};

struct Solution {
    PeriodVector pi;
    Outcome outcome;
    std::optional<DeliveryPlan> plan;  // elided inside archives
};

class InfeasibleDelivery : public std::runtime_error {
public:
    InfeasibleDelivery(int customer_id, int period)
        : std::runtime_error("infeasible delivery for customer " + std::to_string(customer_id) + " in period " +
                             std::to_string(period)),
          customer_id(customer_id),
          period(period) {}

    int customer_id;
    int period;  // 1-based
};

/// Throws std::invalid_argument unless pi has one entry per customer, each in [1, T].
void validate(const PeriodVector& pi, const Instance& instance);

/// Evaluates period vectors against one instance.
///
/// Replenishment rule per customer and period: if the stock carried in
/// covers the period's demand nothing is delivered; otherwise the customer is
/// topped up to exactly the demand of the next k periods, with k the largest
/// value <= min(pi_i, T-t+1) keeping the delivery within vehicle and
/// inventory capacity. Each period's delivery set is routed with the savings
/// heuristic.
///
/// A customer's schedule depends only on its own pi_i, so schedules are
/// memoized per (customer, pi_i); routed periods are memoized on their
/// delivery column. Not thread-safe: use one Evaluator per thread.
class Evaluator {
public:
    explicit Evaluator(const Instance& instance, std::size_t period_cache_limit = 1u << 16);

    Outcome outcome(const PeriodVector& pi);
    Solution evaluate(const PeriodVector& pi, bool with_plan = false);
    DeliveryPlan plan(const PeriodVector& pi);

    const Instance& instance() const { return *instance_; }
    const SavingsRouter& router() const { return router_; }

private:
    struct Schedule {
        std::vector<std::int64_t> quantity;
        std::vector<std::int64_t> inventory;
        std::int64_t inventory_sum = 0;
    };

    struct ColumnHash {
        std::size_t operator()(const std::vector<std::int64_t>& v) const noexcept;
    };

    const Schedule& schedule(std::size_t customer, int periods);
    double period_distance(const std::vector<std::int64_t>& column);

    const Instance* instance_;
    SavingsRouter router_;
    std::vector<std::vector<std::optional<Schedule>>> schedules_;
    std::size_t cache_limit_;
    std::unordered_map<std::vector<std::int64_t>, double, ColumnHash> period_cache_;
};

/// One-shot evaluation including the full delivery plan.
Solution evaluate(const Instance& instance, const PeriodVector& pi);

/// All vectors one +-1 step away, customer index ascending, -1 before +1,
/// restricted to [1, horizon].
std::vector<PeriodVector> neighbors(const PeriodVector& pi, int horizon);

}  // namespace irp

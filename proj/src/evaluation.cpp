#include "irp/evaluation.hpp"

#include <algorithm>

namespace irp {

void validate(const PeriodVector& pi, const Instance& instance) {
    if (pi.size() != instance.customers.size()) {
        throw std::invalid_argument("period vector has " + std::to_string(pi.size()) + " entries, instance has " +
                                    std::to_string(instance.customers.size()) + " customers");
    }
    for (std::size_t i = 0; i < pi.size(); ++i) {
        if (pi.periods[i] < 1 || pi.periods[i] > instance.horizon) {
            throw std::invalid_argument("period value for customer " + std::to_string(i + 1) + " outside [1, " +
                                        std::to_string(instance.horizon) + "]");
        }
    }
}

std::size_t Evaluator::ColumnHash::operator()(const std::vector<std::int64_t>& v) const noexcept {
    std::uint64_t h = 1469598103934665603ull;
    for (auto x : v) {
        h ^= static_cast<std::uint64_t>(x);
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

Evaluator::Evaluator(const Instance& instance, std::size_t period_cache_limit)
    : instance_(&instance),
      router_(instance),
      schedules_(instance.customers.size(),
                 std::vector<std::optional<Schedule>>(static_cast<std::size_t>(instance.horizon))),
      cache_limit_(period_cache_limit) {
    validate(instance);
}

const Evaluator::Schedule& Evaluator::schedule(std::size_t customer, int periods) {
    auto& slot = schedules_[customer][static_cast<std::size_t>(periods - 1)];
    if (slot) return *slot;

    const auto& c = instance_->customers[customer];
    const int horizon = instance_->horizon;
    const auto q_max = instance_->vehicle_capacity;
    Schedule s;
    s.quantity.assign(static_cast<std::size_t>(horizon), 0);
    s.inventory.assign(static_cast<std::size_t>(horizon), 0);

    std::int64_t stock = 0;
    for (int t = 0; t < horizon; ++t) {
        const auto d = c.demand[static_cast<std::size_t>(t)];
        std::int64_t q = 0;
        if (stock < d) {
            const int max_k = std::min(periods, horizon - t);
            std::int64_t covered = 0;
            for (int k = 1; k <= max_k; ++k) {
                const auto candidate = covered + c.demand[static_cast<std::size_t>(t + k - 1)] - stock;
                if (candidate > q_max || stock + candidate > c.inventory_capacity) {
                    if (k == 1) throw InfeasibleDelivery(c.id, t + 1);
                    break;
                }
                covered += c.demand[static_cast<std::size_t>(t + k - 1)];
                q = candidate;
            }
        }
        stock = stock + q - d;
        s.quantity[static_cast<std::size_t>(t)] = q;
        s.inventory[static_cast<std::size_t>(t)] = stock;
        s.inventory_sum += stock;
    }
    slot = std::move(s);
    return *slot;
}

double Evaluator::period_distance(const std::vector<std::int64_t>& column) {
    if (auto it = period_cache_.find(column); it != period_cache_.end()) return it->second;
    const double d = router_.total_distance(column);
    if (period_cache_.size() >= cache_limit_) period_cache_.clear();
    period_cache_.emplace(column, d);
    return d;
}

Outcome Evaluator::outcome(const PeriodVector& pi) {
    validate(pi, *instance_);
    const std::size_t n = pi.size();
    const int horizon = instance_->horizon;

    std::vector<const Schedule*> sched(n);
    Outcome out;
    for (std::size_t i = 0; i < n; ++i) {
        sched[i] = &schedule(i, pi.periods[i]);
        out.inventory += sched[i]->inventory_sum;
    }
    std::vector<std::int64_t> column(n);
    for (int t = 0; t < horizon; ++t) {
        bool any = false;
        for (std::size_t i = 0; i < n; ++i) {
            column[i] = sched[i]->quantity[static_cast<std::size_t>(t)];
            any = any || column[i] > 0;
        }
        if (any) out.routing += period_distance(column);
    }
    return out;
}

DeliveryPlan Evaluator::plan(const PeriodVector& pi) {
    validate(pi, *instance_);
    const std::size_t n = pi.size();
    const int horizon = instance_->horizon;
    DeliveryPlan plan;
    for (std::size_t i = 0; i < n; ++i) {
        const auto& s = schedule(i, pi.periods[i]);
        plan.quantities.push_back(s.quantity);
        plan.end_inventory.push_back(s.inventory);
    }
    std::vector<std::int64_t> column(n);
    for (int t = 0; t < horizon; ++t) {
        for (std::size_t i = 0; i < n; ++i) column[i] = plan.quantities[i][static_cast<std::size_t>(t)];
        plan.per_period_routes.push_back(router_.route(column));
    }
    return plan;
}

Solution Evaluator::evaluate(const PeriodVector& pi, bool with_plan) {
    Solution s{pi, outcome(pi), std::nullopt};
    if (with_plan) s.plan = plan(pi);
    return s;
}

Solution evaluate(const Instance& instance, const PeriodVector& pi) {
    Evaluator ev(instance);
    return ev.evaluate(pi, true);
}

std::vector<PeriodVector> neighbors(const PeriodVector& pi, int horizon) {
    std::vector<PeriodVector> out;
    out.reserve(2 * pi.size());
    for (std::size_t i = 0; i < pi.size(); ++i) {
        for (int step : {-1, +1}) {
            const int v = pi.periods[i] + step;
            if (v < 1 || v > horizon) continue;
            PeriodVector next = pi;
            next.periods[i] = v;
            out.push_back(std::move(next));
        }
    }
    return out;
}

}  // namespace irp

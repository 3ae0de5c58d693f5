#include "irp/archive.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <json.hpp>

namespace irp {

const char* to_string(InsertResult r) {
    switch (r) {
        case InsertResult::accepted: return "accepted";
        case InsertResult::rejected_dominated: return "rejected_dominated";
        case InsertResult::rejected_duplicate: return "rejected_duplicate";
    }
    return "unknown";
}

InsertReport Archive::try_insert(Solution s) {
    ++insert_counter_;
    InsertReport report;
    for (const auto& m : members_) {
        if (m.outcome == s.outcome) {
            report.result = InsertResult::rejected_duplicate;
            return report;
        }
        if (dominates(m.outcome, s.outcome)) {
            report.result = InsertResult::rejected_dominated;
            return report;
        }
    }

    std::size_t keep = 0;
    for (std::size_t k = 0; k < members_.size(); ++k) {
        if (dominates(s.outcome, members_[k].outcome)) {
            report.removed.push_back(std::move(members_[k]));
            continue;
        }
        if (keep != k) {
            members_[keep] = std::move(members_[k]);
            inserted_at_[keep] = inserted_at_[k];
        }
        ++keep;
    }
    members_.resize(keep);
    inserted_at_.resize(keep);

    s.plan.reset();
    members_.push_back(std::move(s));
    inserted_at_.push_back(eval_index_);
    report.result = InsertResult::accepted;
    return report;
}

bool Archive::contains(const Outcome& o) const {
    return std::any_of(members_.begin(), members_.end(), [&](const Solution& m) { return m.outcome == o; });
}

std::vector<Outcome> Archive::outcomes() const {
    std::vector<Outcome> out;
    out.reserve(members_.size());
    for (const auto& m : members_) out.push_back(m.outcome);
    return out;
}

std::string Archive::to_csv() const {
    std::vector<std::size_t> order(members_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& oa = members_[a].outcome;
        const auto& ob = members_[b].outcome;
        if (oa.inventory != ob.inventory) return oa.inventory < ob.inventory;
        return oa.routing < ob.routing;
    });

    std::string out = "eval_index,g1,g2,pi\n";
    for (auto k : order) {
        const auto& m = members_[k];
        out += std::to_string(inserted_at_[k]) + "," + std::to_string(m.outcome.inventory) + ",";
        // shortest round-trip representation, same as the JSON outputs
        out += nlohmann::json(m.outcome.routing).dump() + ",";
        for (std::size_t i = 0; i < m.pi.size(); ++i) {
            if (i) out += ';';
            out += std::to_string(m.pi.periods[i]);
        }
        out += '\n';
    }
    return out;
}

bool weak_dominance_filter_check(std::span<const Outcome> points) {
    for (const auto& a : points) {
        for (const auto& b : points) {
            if (dominates(a, b)) return false;
        }
    }
    return true;
}

}  // namespace irp

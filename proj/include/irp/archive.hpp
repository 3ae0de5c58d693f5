#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "irp/evaluation.hpp"

namespace irp {

/// a dominates b: no worse in both objectives, strictly better in one.
constexpr bool dominates(const Outcome& a, const Outcome& b) {
    const bool no_worse = a.inventory <= b.inventory && a.routing <= b.routing;
    const bool better = a.inventory < b.inventory || a.routing < b.routing;
    return no_worse && better;
}

enum class InsertResult { accepted, rejected_dominated, rejected_duplicate };

const char* to_string(InsertResult r);

struct InsertReport {
    InsertResult result = InsertResult::rejected_dominated;
    std::vector<Solution> removed;  // members displaced by an accepted insertion

    bool accepted() const { return result == InsertResult::accepted; }
};

/// Unbounded archive of mutually non-dominated solutions with distinct
/// outcome vectors. The first solution seen for an outcome is kept.
class Archive {
public:
    InsertReport try_insert(Solution s);

    const std::vector<Solution>& members() const { return members_; }
    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    std::int64_t insert_counter() const { return insert_counter_; }
    bool contains(const Outcome& o) const;

    std::vector<Outcome> outcomes() const;

    /// CSV snapshot: header "eval_index,g1,g2,pi", rows sorted by g1 then g2.
    /// eval_index is the evaluation at which the member was inserted (0 for
    /// members present before a run started).
    std::string to_csv() const;

    /// Records the evaluation index reported for the next inserted members.
    void set_eval_index(std::int64_t index) { eval_index_ = index; }

private:
    std::vector<Solution> members_;
    std::vector<std::int64_t> inserted_at_;
    std::int64_t insert_counter_ = 0;
    std::int64_t eval_index_ = 0;
};

/// True iff no point dominates another. Points strictly better in every
/// objective are a special case, so a passing set holds no weakly efficient
/// but dominated member.
bool weak_dominance_filter_check(std::span<const Outcome> points);

}  // namespace irp

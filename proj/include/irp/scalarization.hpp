#pragma once

#include <array>
#include <span>
#include <string>

#include "irp/evaluation.hpp"

namespace irp {

struct ReferencePoint {
    std::array<double, 2> r{};  // (inventory, routing)
    std::string label;

    friend bool operator==(const ReferencePoint&, const ReferencePoint&) = default;
};

struct WeightVector {
    std::array<double, 2> w{1.0, 1.0};

    friend bool operator==(const WeightVector&, const WeightVector&) = default;
};

inline std::array<double, 2> as_vector(const Outcome& o) {
    return {static_cast<double>(o.inventory), o.routing};
}

/// w_k = 1 / (max_k - min_k) over the outcomes; 1 for a flat objective.
/// Throws std::invalid_argument on an empty set.
WeightVector compute_weights(std::span<const Outcome> outcomes);

/// Weighted Chebyshev distance to the reference point, max_k w_k (g_k - r_k).
/// No augmentation term: dominated points never survive in the archive.
/// Negative when x strictly dominates r in every objective.
double achievement(const Outcome& x, const ReferencePoint& r, const WeightVector& w);

/// x lies in the orthant weakly dominating r (boundary included).
bool in_cone(const Outcome& x, const ReferencePoint& r);

/// min over the snapshot of achievement, minus the achievement of the
/// best-known outcome. Zero once the best-known is matched, negative when
/// it is beaten. Throws std::invalid_argument on an empty snapshot.
double progress_metric(std::span<const Outcome> snapshot, const ReferencePoint& r, const WeightVector& w,
                       const Outcome& best_known);

}  // namespace irp

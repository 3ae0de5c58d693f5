#include "irp/scalarization.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace irp {

WeightVector compute_weights(std::span<const Outcome> outcomes) {
    if (outcomes.empty()) throw std::invalid_argument("cannot compute weights from an empty outcome set");
    std::array<double, 2> lo = as_vector(outcomes.front());
    std::array<double, 2> hi = lo;
    for (const auto& o : outcomes) {
        const auto v = as_vector(o);
        for (std::size_t k = 0; k < 2; ++k) {
            lo[k] = std::min(lo[k], v[k]);
            hi[k] = std::max(hi[k], v[k]);
        }
    }
    WeightVector w;
    for (std::size_t k = 0; k < 2; ++k) {
        w.w[k] = hi[k] > lo[k] ? 1.0 / (hi[k] - lo[k]) : 1.0;
    }
    return w;
}

double achievement(const Outcome& x, const ReferencePoint& r, const WeightVector& w) {
    const auto g = as_vector(x);
    return std::max(w.w[0] * (g[0] - r.r[0]), w.w[1] * (g[1] - r.r[1]));
}

bool in_cone(const Outcome& x, const ReferencePoint& r) {
    const auto g = as_vector(x);
    return g[0] <= r.r[0] && g[1] <= r.r[1];
}

double progress_metric(std::span<const Outcome> snapshot, const ReferencePoint& r, const WeightVector& w,
                       const Outcome& best_known) {
    if (snapshot.empty()) throw std::invalid_argument("progress metric needs a non-empty snapshot");
    double best = std::numeric_limits<double>::infinity();
    for (const auto& o : snapshot) best = std::min(best, achievement(o, r, w));
    return best - achievement(best_known, r, w);
}

}  // namespace irp

#include "irp/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>

namespace irp {

const char* to_string(SearchMode m) {
    return m == SearchMode::guided ? "guided" : "offline";
}

const char* to_string(TerminationReason r) {
    switch (r) {
        case TerminationReason::budget_exhausted: return "budget_exhausted";
        case TerminationReason::cone_exited: return "cone_exited";
        case TerminationReason::frontier_exhausted: return "frontier_exhausted";
        case TerminationReason::user_stop: return "user_stop";
    }
    return "unknown";
}

SearchMode parse_search_mode(const std::string& s) {
    if (s == "guided") return SearchMode::guided;
    if (s == "offline") return SearchMode::offline;
    throw ConfigError("mode", "unknown mode '" + s + "'");
}

TerminationReason parse_termination_reason(const std::string& s) {
    for (auto r : {TerminationReason::budget_exhausted, TerminationReason::cone_exited,
                   TerminationReason::frontier_exhausted, TerminationReason::user_stop}) {
        if (s == to_string(r)) return r;
    }
    throw std::invalid_argument("unknown termination reason '" + s + "'");
}

std::int64_t SearchConfig::warmup() const {
    if (cone_warmup_evals) return *cone_warmup_evals;
    const std::int64_t w = std::max<std::int64_t>(100, evaluation_budget / 100);
    return std::max<std::int64_t>(0, std::min(w, evaluation_budget - 1));
}

void SearchConfig::validate() const {
    if (evaluation_budget < 0) throw ConfigError("evaluation_budget", "evaluation budget must be non-negative");
    if (trace_stride < 0) throw ConfigError("trace_stride", "trace stride must be non-negative");
    if (mode == SearchMode::guided) {
        if (!reference_point) throw ConfigError("reference_point", "guided mode requires a reference point");
        if (evaluation_budget < 1) throw ConfigError("evaluation_budget", "guided mode needs a budget of at least 1");
    }
    if (cone_warmup_evals && (*cone_warmup_evals < 0 || *cone_warmup_evals >= std::max<std::int64_t>(1, evaluation_budget))) {
        throw ConfigError("cone_warmup_evals", "warmup must lie in [0, budget)");
    }
    if (reference_point) {
        for (double v : reference_point->r) {
            if (!std::isfinite(v)) throw ConfigError("reference_point", "reference point components must be finite");
        }
    }
    if (weights) {
        for (double v : weights->w) {
            if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("weights", "weights must be positive and finite");
        }
    }
}

Construction construct_initial_front(Evaluator& evaluator) {
    const auto& inst = evaluator.instance();
    Construction c;
    c.stop_m = inst.horizon + 1;
    for (int m = 1; m <= inst.horizon; ++m) {
        PeriodVector pi{std::vector<int>(inst.customers.size(), m)};
        auto s = evaluator.evaluate(pi);
        ++c.evaluations;
        if (!c.archive.try_insert(std::move(s)).accepted()) {
            c.stop_m = m;
            break;
        }
    }
    return c;
}

Construction construct_initial_front(const Instance& instance) {
    Evaluator ev(instance);
    return construct_initial_front(ev);
}

const Solution& most_preferred(const Archive& archive, const ReferencePoint& r, const WeightVector& w) {
    if (archive.empty()) throw std::invalid_argument("most_preferred needs a non-empty archive");
    const Solution* best = nullptr;
    double best_value = std::numeric_limits<double>::infinity();
    for (const auto& m : archive.members()) {
        const double a = achievement(m.outcome, r, w);
        const bool better = best == nullptr || a < best_value ||
                            (a == best_value && (m.outcome.inventory < best->outcome.inventory ||
                                                 (m.outcome.inventory == best->outcome.inventory &&
                                                  m.outcome.routing < best->outcome.routing)));
        if (better) {
            best = &m;
            best_value = a;
        }
    }
    return *best;
}

namespace {

class SearchRun {
public:
    SearchRun(const Instance& instance, Archive start, const SearchConfig& config, const RunControl& control)
        : evaluator_(instance), config_(config), control_(control), archive_(std::move(start)) {
        config_.validate();
        if (config_.weights) {
            weights_ = *config_.weights;
        } else if (!archive_.empty()) {
            const auto outs = archive_.outcomes();
            weights_ = compute_weights(outs);
        }
        if (config_.mode == SearchMode::guided && archive_.empty()) {
            throw ConfigError("start", "guided search needs a non-empty start archive");
        }
        has_rp_ = config_.reference_point.has_value();
        for (const auto& m : archive_.members()) {
            frontier_.push_back(m);
            if (has_rp_) {
                best_ = std::min(best_, achievement(m.outcome, *config_.reference_point, weights_));
                if (in_cone(m.outcome, *config_.reference_point)) ++in_cone_count_;
            }
        }
        started_ = std::chrono::steady_clock::now();
    }

    RunResult run() {
        record();
        const bool guided = config_.mode == SearchMode::guided;
        const auto warmup = config_.warmup();
        const int horizon = evaluator_.instance().horizon;

        for (;;) {
            if (control_.stop != nullptr && control_.stop->load(std::memory_order_relaxed)) {
                trace_.termination_reason = TerminationReason::user_stop;
                break;
            }
            if (frontier_.empty()) {
                trace_.termination_reason = TerminationReason::frontier_exhausted;
                break;
            }
            if (evals_ >= config_.evaluation_budget) {
                trace_.termination_reason = TerminationReason::budget_exhausted;
                break;
            }

            const Solution selected = take_next(guided);
            bool accepted_in_cone = false;
            bool budget_hit = false;
            for (auto& nb : neighbors(selected.pi, horizon)) {
                if (evals_ >= config_.evaluation_budget) {
                    budget_hit = true;
                    break;
                }
                auto s = evaluator_.evaluate(nb);
                ++evals_;
                archive_.set_eval_index(evals_);
                const Outcome out = s.outcome;
                auto report = archive_.try_insert(s);
                bool improved = false;
                if (report.accepted()) {
                    for (const auto& gone : report.removed) drop(gone.outcome);
                    frontier_.push_back(std::move(s));
                    if (control_.on_accept) control_.on_accept(out, evals_);
                    if (has_rp_) {
                        const auto& rp = *config_.reference_point;
                        if (in_cone(out, rp)) {
                            ++in_cone_count_;
                            accepted_in_cone = true;
                        }
                        const double a = achievement(out, rp, weights_);
                        if (a < best_) {
                            best_ = a;
                            improved = true;
                        }
                    }
                }
                if (improved || (config_.trace_stride > 0 && evals_ % config_.trace_stride == 0)) record();
            }
            if (budget_hit) {
                trace_.termination_reason = TerminationReason::budget_exhausted;
                break;
            }
            if (guided && evals_ > warmup && !accepted_in_cone &&
                !in_cone(selected.outcome, *config_.reference_point)) {
                trace_.termination_reason = TerminationReason::cone_exited;
                break;
            }
        }

        if (trace_.points.empty() || trace_.points.back().eval_index != evals_) record();
        trace_.evaluations = evals_;

        RunResult result;
        if (has_rp_ && !archive_.empty()) {
            result.most_preferred = most_preferred(archive_, *config_.reference_point, weights_);
        }
        result.archive = std::move(archive_);
        result.trace = std::move(trace_);
        result.weights = weights_;
        return result;
    }

private:
    Solution take_next(bool guided) {
        std::size_t pick = 0;
        if (guided) {
            const auto& rp = *config_.reference_point;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t k = 0; k < frontier_.size(); ++k) {
                const auto& o = frontier_[k].outcome;
                const double a = achievement(o, rp, weights_);
                const auto& cur = frontier_[pick].outcome;
                if (k == 0 || a < best ||
                    (a == best && (o.inventory < cur.inventory ||
                                   (o.inventory == cur.inventory && o.routing < cur.routing)))) {
                    pick = k;
                    best = a;
                }
            }
        }
        Solution s = std::move(frontier_[pick]);
        frontier_.erase(frontier_.begin() + static_cast<std::ptrdiff_t>(pick));
        return s;
    }

    void drop(const Outcome& gone) {
        if (has_rp_ && in_cone(gone, *config_.reference_point)) --in_cone_count_;
        auto it = std::find_if(frontier_.begin(), frontier_.end(),
                               [&](const Solution& f) { return f.outcome == gone; });
        if (it != frontier_.end()) frontier_.erase(it);
    }

    void record() {
        TracePoint p;
        p.eval_index = evals_;
        if (has_rp_) p.best_achievement = best_;
        p.archive_size = static_cast<std::int64_t>(archive_.size());
        p.in_cone_count = in_cone_count_;
        if (config_.record_wall_time) {
            p.wall_ms = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() -
                                                                              started_)
                            .count();
        }
        trace_.points.push_back(p);
        if (control_.on_trace) control_.on_trace(p);
    }

    Evaluator evaluator_;
    SearchConfig config_;
    const RunControl& control_;
    Archive archive_;
    WeightVector weights_;
    bool has_rp_ = false;
    double best_ = std::numeric_limits<double>::infinity();
    std::int64_t in_cone_count_ = 0;
    std::int64_t evals_ = 0;
    std::deque<Solution> frontier_;
    RunTrace trace_;
    std::chrono::steady_clock::time_point started_;
};

}  // namespace

RunResult run_guided(const Instance& instance, Archive start, const SearchConfig& config, const RunControl& control) {
    if (config.mode != SearchMode::guided) throw ConfigError("mode", "run_guided called with a non-guided config");
    return SearchRun(instance, std::move(start), config, control).run();
}

RunResult run_offline(const Instance& instance, Archive start, const SearchConfig& config, const RunControl& control) {
    if (config.mode != SearchMode::offline) throw ConfigError("mode", "run_offline called with a non-offline config");
    return SearchRun(instance, std::move(start), config, control).run();
}

RunResult run_search(const Instance& instance, Archive start, const SearchConfig& config, const RunControl& control) {
    return config.mode == SearchMode::guided ? run_guided(instance, std::move(start), config, control)
                                             : run_offline(instance, std::move(start), config, control);
}

}  // namespace irp

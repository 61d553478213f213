#include "superflow/monitor.hpp"

#include <limits>

#include "superflow/errors.hpp"
#include "superflow/evaluate.hpp"

namespace superflow {

namespace {

constexpr int64_t kNoMax = std::numeric_limits<int64_t>::min();
constexpr int64_t kNoMin = std::numeric_limits<int64_t>::max();

bool unary_holds(const ExprPtr& e, const std::string& var, const FlowRecord& f) {
    // Plan expressions are quantifier-free, so no flow-set context is needed.
    return evaluate_unary(e, var, f, {});
}

} // namespace

Monitor::Monitor(const HypothesisClass& cls) : plan_(&cls.plan) {
    if (!cls.monitorable) {
        throw UnsupportedHypothesisError(
            "hypothesis is not streaming-monitorable: " + cls.reason);
    }
    spreads_.resize(plan_->spreads.size(), SpreadState{kNoMax, kNoMin});
    distinct_.reserve(plan_->quals.size());
    for (const auto& q : plan_->quals) {
        distinct_.push_back(DistinctState{{}, q.min_distinct});
    }
    witness_rings_.resize(plan_->witnesses.size());
}

bool Monitor::witness_satisfiable(const WitnessSpec& w, std::size_t ring_idx,
                                  const FlowRecord& f) const {
    if (w.guard && !unary_holds(w.guard, w.guard_var, f)) return true;

    const int64_t subject_t =
        static_cast<int64_t>(attr_value(f, w.subject_time));
    auto in_window = [&](int64_t witness_t) {
        int64_t diff = subject_t - witness_t;
        if (w.lo_ms) {
            if (w.lo_strict ? diff <= *w.lo_ms : diff < *w.lo_ms) return false;
        }
        if (w.hi_ms) {
            if (w.hi_strict ? diff >= *w.hi_ms : diff > *w.hi_ms) return false;
        }
        return true;
    };

    for (int64_t t : witness_rings_[ring_idx]) {
        if (in_window(t)) return true;
    }
    // The flow may witness itself.
    if (unary_holds(w.witness_test, w.witness_var, f) &&
        in_window(static_cast<int64_t>(attr_value(f, w.witness_time)))) {
        return true;
    }
    return false;
}

bool Monitor::would_accept(const FlowRecord& f) const {
    for (const auto& [e, var] : plan_->unary) {
        if (!unary_holds(e, var, f)) return false;
    }
    if (anchor_) {
        for (AttrId attr : plan_->eq_attrs) {
            if (attr_value(f, attr) != attr_value(*anchor_, attr)) return false;
        }
        if (plan_->endpoint_pair) {
            bool same = f.src_ip == anchor_->src_ip && f.dst_ip == anchor_->dst_ip;
            bool cross = f.src_ip == anchor_->dst_ip && f.dst_ip == anchor_->src_ip;
            if (!same && !cross) return false;
        }
    }
    for (std::size_t i = 0; i < plan_->spreads.size(); ++i) {
        const SpreadBound& b = plan_->spreads[i];
        int64_t new_max = std::max(
            spreads_[i].max_seen, static_cast<int64_t>(attr_value(f, b.max_attr)));
        int64_t new_min = std::min(
            spreads_[i].min_seen, static_cast<int64_t>(attr_value(f, b.min_attr)));
        int64_t spread = new_max - new_min;
        if (b.strict ? spread >= b.bound_ms : spread > b.bound_ms) return false;
    }
    for (std::size_t i = 0; i < plan_->witnesses.size(); ++i) {
        if (!witness_satisfiable(plan_->witnesses[i], i, f)) return false;
    }
    return true;
}

OfferOutcome Monitor::offer(const FlowRecord& f) {
    if (!would_accept(f)) return OfferOutcome::Rejected;

    // Flow is compatible; refuse instead of overflowing a witness ring.
    for (std::size_t i = 0; i < plan_->witnesses.size(); ++i) {
        const WitnessSpec& w = plan_->witnesses[i];
        if (unary_holds(w.witness_test, w.witness_var, f) &&
            witness_rings_[i].size() >= plan_->witness_ring_capacity) {
            return OfferOutcome::RejectedWitnessExhausted;
        }
    }

    if (!anchor_) anchor_ = f;
    for (std::size_t i = 0; i < plan_->spreads.size(); ++i) {
        const SpreadBound& b = plan_->spreads[i];
        spreads_[i].max_seen = std::max(
            spreads_[i].max_seen, static_cast<int64_t>(attr_value(f, b.max_attr)));
        spreads_[i].min_seen = std::min(
            spreads_[i].min_seen, static_cast<int64_t>(attr_value(f, b.min_attr)));
    }
    for (std::size_t i = 0; i < plan_->quals.size(); ++i) {
        const CardinalityBound& q = plan_->quals[i];
        DistinctState& d = distinct_[i];
        if (d.values.size() >= d.target) continue;  // capped: count is enough
        if (q.filter && !unary_holds(*q.filter, q.var, f)) continue;
        d.values.insert(attr_value(f, q.attr));
    }
    for (std::size_t i = 0; i < plan_->witnesses.size(); ++i) {
        const WitnessSpec& w = plan_->witnesses[i];
        if (unary_holds(w.witness_test, w.witness_var, f)) {
            witness_rings_[i].push_back(
                static_cast<int64_t>(attr_value(f, w.witness_time)));
        }
    }
    ++accepted_count_;
    return OfferOutcome::Accepted;
}

bool Monitor::qualified() const {
    for (const auto& d : distinct_) {
        if (d.values.size() < d.target) return false;
    }
    return true;
}

std::size_t Monitor::retained_values() const {
    std::size_t n = 0;
    for (const auto& d : distinct_) n += d.values.size();
    for (const auto& r : witness_rings_) n += r.size();
    return n;
}

} // namespace superflow

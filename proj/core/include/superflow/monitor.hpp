#ifndef SUPERFLOW_MONITOR_HPP
#define SUPERFLOW_MONITOR_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include "superflow/classify.hpp"
#include "superflow/flow_record.hpp"

namespace superflow {

// Bounded-memory streaming model checker for one candidate superflow.
// Invariant: the accepted set always satisfies the compatibility formula, and
// offer() accepts exactly when it still would after adding the flow. State is
// one anchor flow, two scalars per time constraint, capped distinct-value
// sets, and the witness rings, never proportional to the stream.

enum class OfferOutcome : uint8_t {
    Accepted,
    Rejected,
    /// Witness ring full; the flow was refused to keep memory bounded, not
    /// because the hypothesis ruled it out.
    RejectedWitnessExhausted,
};

class Monitor {
public:
    /// Throws UnsupportedHypothesisError unless cls.monitorable.
    explicit Monitor(const HypothesisClass& cls);

    /// Pure check: would this flow be compatible with the accepted set?
    bool would_accept(const FlowRecord& f) const;

    /// State changes only on Accepted; a rejected flow leaves the monitor
    /// bit-identical, however often it is offered.
    OfferOutcome offer(const FlowRecord& f);

    /// All cardinality lower bounds met. Monotone: never true -> false.
    bool qualified() const;

    std::size_t accepted_count() const { return accepted_count_; }
    const std::optional<FlowRecord>& anchor() const { return anchor_; }

    /// Attribute values currently retained (distinct sets + witness rings);
    /// bounded by sum of bounds + ring capacities, not by flows seen.
    std::size_t retained_values() const;

    friend bool operator==(const Monitor&, const Monitor&) = default;

private:
    struct SpreadState {
        int64_t max_seen;
        int64_t min_seen;
        friend bool operator==(const SpreadState&, const SpreadState&) = default;
    };
    struct DistinctState {
        std::set<uint64_t> values;  // insertion stops once |values| == target
        uint64_t target;
        friend bool operator==(const DistinctState&, const DistinctState&) = default;
    };

    const MonitorPlan* plan_;  // owned by the HypothesisClass; not copied
    std::optional<FlowRecord> anchor_;
    std::vector<SpreadState> spreads_;
    std::vector<DistinctState> distinct_;
    std::vector<std::vector<int64_t>> witness_rings_;
    std::size_t accepted_count_ = 0;

    bool witness_satisfiable(const WitnessSpec& w, std::size_t ring_idx,
                             const FlowRecord& f) const;
};

} // namespace superflow

#endif // SUPERFLOW_MONITOR_HPP

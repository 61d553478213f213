#ifndef SUPERFLOW_CLASSIFY_HPP
#define SUPERFLOW_CLASSIFY_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "superflow/ast.hpp"

namespace superflow {

// Splits a hypothesis into the part a streaming monitor can grow greedily
// (the compatibility formula) and the cardinality lower bounds checked only
// at finalization (qualifications), and decides whether the whole thing falls
// in the efficiently monitorable fragment.

/// Distinct-count lower bound, normalized to ">= min_distinct".
struct CardinalityBound {
    AttrId attr;
    std::string var;
    std::optional<ExprPtr> filter;
    uint64_t min_distinct;
};

/// max over accepted flows of `max_attr` minus min of `min_attr` must stay
/// <= bound_ms (< if strict). This is how universal pairwise time constraints
/// monitor in O(1): the two running extremes decide every pair at once.
struct SpreadBound {
    AttrId max_attr;
    AttrId min_attr;
    int64_t bound_ms;
    bool strict = false;
};

/// "Every flow matching `guard` needs some flow matching `witness_test` with
/// lo <= t(flow) - t(witness) <= hi." The Eq-3-style forall/exists shape.
struct WitnessSpec {
    ExprPtr guard;              // unary over guard_var
    std::string guard_var;
    ExprPtr witness_test;       // unary over witness_var
    std::string witness_var;
    AttrId subject_time = AttrId::TStart;
    AttrId witness_time = AttrId::TStart;
    std::optional<int64_t> lo_ms;  // absent = unbounded below
    std::optional<int64_t> hi_ms;
    bool lo_strict = false;
    bool hi_strict = false;
};

/// Everything the streaming monitor needs, precompiled from the AST.
struct MonitorPlan {
    std::vector<AttrId> eq_attrs;  // attr(f) == attr(g) for all pairs
    bool endpoint_pair = false;    // same two hosts, either direction
    std::vector<SpreadBound> spreads;
    std::vector<std::pair<ExprPtr, std::string>> unary;  // (expr, var)
    std::vector<WitnessSpec> witnesses;
    std::vector<CardinalityBound> quals;
    std::size_t witness_ring_capacity = 4096;
};

/// Guides which summary record the decomposer accumulates per candidate.
enum class SummaryKind : uint8_t { Generic, Scan, Web, Chat };

struct HypothesisClass {
    bool monitorable = false;
    std::string reason;        // why not, when monitorable is false
    Hypothesis compatibility;  // original minus cardinality lower bounds
    std::vector<CardinalityBound> qualifications;
    MonitorPlan plan;          // meaningful only when monitorable
    SummaryKind summary_kind = SummaryKind::Generic;

    /// Human-readable predicate families used (for diagnostics output).
    std::vector<std::string> families;
};

/// Never fails: unsupported shapes come back with monitorable=false and a
/// reason. evaluate(h, F) == evaluate(compatibility, F) && qualifications(F)
/// holds for every F regardless of monitorability.
HypothesisClass classify(const Hypothesis& h);

/// True when every qualification bound holds on `flows` per the reference
/// distinct-count semantics.
bool qualifications_hold(const std::vector<CardinalityBound>& quals,
                         std::span<const FlowRecord> flows);

} // namespace superflow

#endif // SUPERFLOW_CLASSIFY_HPP

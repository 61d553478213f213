#ifndef SUPERFLOW_EVALUATE_HPP
#define SUPERFLOW_EVALUATE_HPP

#include <span>

#include "superflow/ast.hpp"
#include "superflow/flow_record.hpp"

namespace superflow {

// Reference (non-streaming) semantics by direct expansion: quantifiers loop
// over F, cardinality clauses count distinct attribute values. Total on valid
// ASTs; no performance contract, intended for small F and as the oracle the
// streaming monitor is checked against.

bool evaluate(const Hypothesis& h, std::span<const FlowRecord> flows);

bool evaluate_clause(const Clause& c, std::span<const FlowRecord> flows);

/// Evaluates an expression with a single free variable bound to `f`.
/// Nested quantifiers inside `e` still range over `flows`.
bool evaluate_unary(const ExprPtr& e, std::string_view var, const FlowRecord& f,
                    std::span<const FlowRecord> flows);

/// Distinct values of `attr` among flows passing `filter` (all flows if
/// absent), as used by cardinality clauses.
uint64_t distinct_count(AttrId attr, std::string_view var,
                        const std::optional<ExprPtr>& filter,
                        std::span<const FlowRecord> flows);

} // namespace superflow

#endif // SUPERFLOW_EVALUATE_HPP

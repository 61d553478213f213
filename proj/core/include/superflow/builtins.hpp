#ifndef SUPERFLOW_BUILTINS_HPP
#define SUPERFLOW_BUILTINS_HPP

#include <cstdint>

#include "superflow/ast.hpp"

namespace superflow {

// The three stock hypotheses. Each constructor returns the exact AST the
// parser produces for the corresponding shipped DSL text (examples/*.sf), so
// structural equality with parsed files holds.

/// Scan: all flows share a source address, target the prefix, start within
/// `window_ms` of each other, and cover at least `min_distinct_dsts` distinct
/// destinations.
Hypothesis builtin_scan(const Cidr& prefix, int64_t window_ms,
                        uint64_t min_distinct_dsts);

/// Chat: every pair of flows connects the same two hosts (either direction)
/// and every flow is at most `mtu_bytes` long.
Hypothesis builtin_chat(uint64_t mtu_bytes);

/// Web fetch: every flow heads to port 53, 80, or 443, and every HTTP(S)
/// flow follows a DNS flow by at most `window_ms`.
Hypothesis builtin_web(int64_t window_ms);

} // namespace superflow

#endif // SUPERFLOW_BUILTINS_HPP

#ifndef SUPERFLOW_ORACLE_HPP
#define SUPERFLOW_ORACLE_HPP

#include <span>
#include <string>
#include <vector>

#include "superflow/ast.hpp"
#include "superflow/decompose.hpp"

namespace superflow {

// Desk-scale validation apparatus. Both functions drive the reference
// evaluator only; they share nothing with the streaming path they check.

struct MaximalityViolation {
    /// -1: a nonempty subset of rest satisfies h on its own.
    /// >= 0: h holds on superflow [index] unioned with the subset.
    int superflow_index;
    std::vector<std::size_t> rest_subset;  // indices into the input stream
};

struct MaximalityReport {
    std::vector<MaximalityViolation> violations;
    bool partial = false;  // sampling mode: only singletons and pairs checked
    bool maximal() const { return violations.empty() && !partial; }
};

enum class VerifyMode {
    Full,      // every nonempty subset of rest; |rest| <= 20
    Sampling,  // singleton and pair subsets only; reported as partial
};

/// Enumerates rest subsets against both maximality conditions. Empty subsets
/// are excluded (a universally quantified hypothesis is vacuously true on
/// them). Throws SizeError in Full mode when |rest| > 20, suggesting
/// Sampling.
MaximalityReport verify_maximal(const Decomposition& d,
                                std::span<const FlowRecord> flows,
                                const Hypothesis& h,
                                VerifyMode mode = VerifyMode::Full);

/// Exhaustive search over all ways to split the flows into hypothesis-
/// satisfying groups plus rest, keeping only maximal decompositions. Returns
/// the one with the smallest rest, ties broken by the lexicographically
/// smallest assignment vector (groups numbered by first appearance, rest
/// last). Throws SizeError when |flows| > 10.
Decomposition brute_force_decompose(std::span<const FlowRecord> flows,
                                    const Hypothesis& h,
                                    const std::string& hypothesis_id = "h");

} // namespace superflow

#endif // SUPERFLOW_ORACLE_HPP

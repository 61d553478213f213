#ifndef SUPERFLOW_AST_HPP
#define SUPERFLOW_AST_HPP

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "superflow/flow_record.hpp"
#include "superflow/ip.hpp"

namespace superflow {

// AST for superflow hypotheses: closed first-order formulas over a finite
// flow set F, plus distinct-count cardinality constraints. A hypothesis is a
// conjunction of top-level clauses; quantifiers inside clause bodies range
// over F as well.

enum class CmpOp : uint8_t { Eq, Ne, Le, Ge, Lt, Gt };

std::string_view cmp_op_text(CmpOp op);
bool cmp_apply_signed(int64_t lhs, CmpOp op, int64_t rhs);
bool cmp_apply(uint64_t lhs, CmpOp op, uint64_t rhs);

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

/// attr(var): an attribute of a quantified flow variable.
struct AttrRef {
    AttrId attr;
    std::string var;
    friend bool operator==(const AttrRef&, const AttrRef&) = default;
};

/// attr(v) op attr(w). Covers same-variable comparisons too.
struct CmpAttrAttr {
    AttrRef lhs;
    CmpOp op;
    AttrRef rhs;
};

/// attr(v) op literal. `is_ip` only affects printing.
struct CmpAttrConst {
    AttrRef lhs;
    CmpOp op;
    uint64_t value;
    bool is_ip = false;
};

/// attr(v) in a.b.c.d/len
struct InCidr {
    AttrRef lhs;
    Cidr cidr;
};

/// attr(v) in {l1, l2, ...}; literal order is preserved.
struct InSet {
    AttrRef lhs;
    std::vector<uint64_t> values;
    bool values_are_ips = false;
};

/// t1(v) - t2(w) op duration. Only time attributes; bound in milliseconds.
struct TimeDiffCmp {
    AttrRef lhs;
    AttrRef rhs;
    CmpOp op;
    int64_t bound_ms;
};

/// Nested quantifier inside a clause body ("exists g in F: ...").
struct QuantExpr {
    bool is_forall;
    std::vector<std::string> vars;
    ExprPtr body;
};

struct AndExpr { ExprPtr lhs, rhs; };
struct OrExpr  { ExprPtr lhs, rhs; };
struct NotExpr { ExprPtr operand; };

struct Expr {
    std::variant<CmpAttrAttr, CmpAttrConst, InCidr, InSet, TimeDiffCmp,
                 QuantExpr, AndExpr, OrExpr, NotExpr>
        node;
};

inline ExprPtr expr(decltype(Expr::node) node) {
    return std::make_shared<const Expr>(Expr{std::move(node)});
}

/// Top-level quantified clause: "forall f, g in F: body;"
struct QuantClause {
    bool is_forall;
    std::vector<std::string> vars;
    ExprPtr body;
};

/// "require count(distinct attr(v) [where filter]) op bound;"
/// Counts distinct values of `attr` over flows in F passing `filter`.
struct CardinalityClause {
    AttrId attr;
    std::string var;
    std::optional<ExprPtr> filter;  // unary over `var`; absent = all of F
    CmpOp op;                       // Eq, Le, Ge, Lt, Gt (never Ne)
    uint64_t bound;
};

using Clause = std::variant<QuantClause, CardinalityClause>;

struct Hypothesis {
    std::vector<Clause> clauses;
};

// Deep structural equality (variable names included; builtins use the
// canonical names f, g).
bool expr_equal(const ExprPtr& a, const ExprPtr& b);
bool operator==(const Clause& a, const Clause& b);
bool operator==(const Hypothesis& a, const Hypothesis& b);

/// Free flow variables of an expression (bound ones excluded).
std::vector<std::string> free_vars(const ExprPtr& e);

} // namespace superflow

#endif // SUPERFLOW_AST_HPP

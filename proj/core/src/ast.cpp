#include "superflow/ast.hpp"

#include <algorithm>

namespace superflow {

std::string_view cmp_op_text(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "==";
        case CmpOp::Ne: return "!=";
        case CmpOp::Le: return "<=";
        case CmpOp::Ge: return ">=";
        case CmpOp::Lt: return "<";
        case CmpOp::Gt: return ">";
    }
    return "?";
}

bool cmp_apply_signed(int64_t lhs, CmpOp op, int64_t rhs) {
    switch (op) {
        case CmpOp::Eq: return lhs == rhs;
        case CmpOp::Ne: return lhs != rhs;
        case CmpOp::Le: return lhs <= rhs;
        case CmpOp::Ge: return lhs >= rhs;
        case CmpOp::Lt: return lhs < rhs;
        case CmpOp::Gt: return lhs > rhs;
    }
    return false;
}

bool cmp_apply(uint64_t lhs, CmpOp op, uint64_t rhs) {
    switch (op) {
        case CmpOp::Eq: return lhs == rhs;
        case CmpOp::Ne: return lhs != rhs;
        case CmpOp::Le: return lhs <= rhs;
        case CmpOp::Ge: return lhs >= rhs;
        case CmpOp::Lt: return lhs < rhs;
        case CmpOp::Gt: return lhs > rhs;
    }
    return false;
}

bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->node.index() != b->node.index()) return false;

    struct Cmp {
        const Expr& other;
        bool operator()(const CmpAttrAttr& x) const {
            const auto& y = std::get<CmpAttrAttr>(other.node);
            return x.lhs == y.lhs && x.op == y.op && x.rhs == y.rhs;
        }
        bool operator()(const CmpAttrConst& x) const {
            const auto& y = std::get<CmpAttrConst>(other.node);
            return x.lhs == y.lhs && x.op == y.op && x.value == y.value;
        }
        bool operator()(const InCidr& x) const {
            const auto& y = std::get<InCidr>(other.node);
            return x.lhs == y.lhs && x.cidr == y.cidr;
        }
        bool operator()(const InSet& x) const {
            const auto& y = std::get<InSet>(other.node);
            return x.lhs == y.lhs && x.values == y.values;
        }
        bool operator()(const TimeDiffCmp& x) const {
            const auto& y = std::get<TimeDiffCmp>(other.node);
            return x.lhs == y.lhs && x.rhs == y.rhs && x.op == y.op &&
                   x.bound_ms == y.bound_ms;
        }
        bool operator()(const QuantExpr& x) const {
            const auto& y = std::get<QuantExpr>(other.node);
            return x.is_forall == y.is_forall && x.vars == y.vars &&
                   expr_equal(x.body, y.body);
        }
        bool operator()(const AndExpr& x) const {
            const auto& y = std::get<AndExpr>(other.node);
            return expr_equal(x.lhs, y.lhs) && expr_equal(x.rhs, y.rhs);
        }
        bool operator()(const OrExpr& x) const {
            const auto& y = std::get<OrExpr>(other.node);
            return expr_equal(x.lhs, y.lhs) && expr_equal(x.rhs, y.rhs);
        }
        bool operator()(const NotExpr& x) const {
            const auto& y = std::get<NotExpr>(other.node);
            return expr_equal(x.operand, y.operand);
        }
    };
    return std::visit(Cmp{*b}, a->node);
}

bool operator==(const Clause& a, const Clause& b) {
    if (a.index() != b.index()) return false;
    if (std::holds_alternative<QuantClause>(a)) {
        const auto& x = std::get<QuantClause>(a);
        const auto& y = std::get<QuantClause>(b);
        return x.is_forall == y.is_forall && x.vars == y.vars &&
               expr_equal(x.body, y.body);
    }
    const auto& x = std::get<CardinalityClause>(a);
    const auto& y = std::get<CardinalityClause>(b);
    bool filter_eq = x.filter.has_value() == y.filter.has_value() &&
                     (!x.filter || expr_equal(*x.filter, *y.filter));
    return x.attr == y.attr && x.var == y.var && filter_eq && x.op == y.op &&
           x.bound == y.bound;
}

bool operator==(const Hypothesis& a, const Hypothesis& b) {
    return a.clauses == b.clauses;
}

namespace {

void collect_free(const ExprPtr& e, std::vector<std::string>& bound,
                  std::vector<std::string>& out) {
    auto is_bound = [&](const std::string& v) {
        return std::find(bound.begin(), bound.end(), v) != bound.end();
    };
    auto add = [&](const std::string& v) {
        if (!is_bound(v) && std::find(out.begin(), out.end(), v) == out.end()) {
            out.push_back(v);
        }
    };

    struct Walk {
        decltype(add)& add_fn;
        std::vector<std::string>& bound;
        std::vector<std::string>& out;
        void operator()(const CmpAttrAttr& x) {
            add_fn(x.lhs.var);
            add_fn(x.rhs.var);
        }
        void operator()(const CmpAttrConst& x) { add_fn(x.lhs.var); }
        void operator()(const InCidr& x) { add_fn(x.lhs.var); }
        void operator()(const InSet& x) { add_fn(x.lhs.var); }
        void operator()(const TimeDiffCmp& x) {
            add_fn(x.lhs.var);
            add_fn(x.rhs.var);
        }
        void operator()(const QuantExpr& x) {
            std::size_t mark = bound.size();
            bound.insert(bound.end(), x.vars.begin(), x.vars.end());
            collect_free(x.body, bound, out);
            bound.resize(mark);
        }
        void operator()(const AndExpr& x) {
            collect_free(x.lhs, bound, out);
            collect_free(x.rhs, bound, out);
        }
        void operator()(const OrExpr& x) {
            collect_free(x.lhs, bound, out);
            collect_free(x.rhs, bound, out);
        }
        void operator()(const NotExpr& x) { collect_free(x.operand, bound, out); }
    };
    if (e) std::visit(Walk{add, bound, out}, e->node);
}

} // namespace

std::vector<std::string> free_vars(const ExprPtr& e) {
    std::vector<std::string> bound;
    std::vector<std::string> out;
    collect_free(e, bound, out);
    return out;
}

} // namespace superflow

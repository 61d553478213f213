#include "superflow/evaluate.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace superflow {

namespace {

// Variable environment: small, so linear lookup.
struct Env {
    std::vector<std::pair<std::string_view, const FlowRecord*>> bindings;

    const FlowRecord& lookup(std::string_view var) const {
        for (auto it = bindings.rbegin(); it != bindings.rend(); ++it) {
            if (it->first == var) return *it->second;
        }
        // Parser guarantees closedness; reaching here is a programming error.
        throw std::logic_error("unbound variable in evaluation: " +
                               std::string(var));
    }
};

bool eval_expr(const ExprPtr& e, Env& env, std::span<const FlowRecord> flows);

// Quantifiers range over all assignments of their variables to flows,
// repeats included.
bool eval_quant(bool is_forall, std::span<const std::string> vars,
                const ExprPtr& body, Env& env,
                std::span<const FlowRecord> flows) {
    if (vars.empty()) return eval_expr(body, env, flows);
    for (const auto& f : flows) {
        env.bindings.emplace_back(vars.front(), &f);
        bool sub = eval_quant(is_forall, vars.subspan(1), body, env, flows);
        env.bindings.pop_back();
        if (is_forall && !sub) return false;
        if (!is_forall && sub) return true;
    }
    return is_forall;
}

bool eval_expr(const ExprPtr& e, Env& env, std::span<const FlowRecord> flows) {
    struct Eval {
        Env& env;
        std::span<const FlowRecord> flows;

        bool operator()(const CmpAttrAttr& x) const {
            uint64_t l = attr_value(env.lookup(x.lhs.var), x.lhs.attr);
            uint64_t r = attr_value(env.lookup(x.rhs.var), x.rhs.attr);
            return cmp_apply(l, x.op, r);
        }
        bool operator()(const CmpAttrConst& x) const {
            return cmp_apply(attr_value(env.lookup(x.lhs.var), x.lhs.attr), x.op,
                             x.value);
        }
        bool operator()(const InCidr& x) const {
            return x.cidr.contains(static_cast<uint32_t>(
                attr_value(env.lookup(x.lhs.var), x.lhs.attr)));
        }
        bool operator()(const InSet& x) const {
            uint64_t v = attr_value(env.lookup(x.lhs.var), x.lhs.attr);
            return std::find(x.values.begin(), x.values.end(), v) !=
                   x.values.end();
        }
        bool operator()(const TimeDiffCmp& x) const {
            int64_t l = static_cast<int64_t>(
                attr_value(env.lookup(x.lhs.var), x.lhs.attr));
            int64_t r = static_cast<int64_t>(
                attr_value(env.lookup(x.rhs.var), x.rhs.attr));
            return cmp_apply_signed(l - r, x.op, x.bound_ms);
        }
        bool operator()(const QuantExpr& x) const {
            return eval_quant(x.is_forall, x.vars, x.body, env, flows);
        }
        bool operator()(const AndExpr& x) const {
            return eval_expr(x.lhs, env, flows) && eval_expr(x.rhs, env, flows);
        }
        bool operator()(const OrExpr& x) const {
            return eval_expr(x.lhs, env, flows) || eval_expr(x.rhs, env, flows);
        }
        bool operator()(const NotExpr& x) const {
            return !eval_expr(x.operand, env, flows);
        }
    };
    return std::visit(Eval{env, flows}, e->node);
}

} // namespace

uint64_t distinct_count(AttrId attr, std::string_view var,
                        const std::optional<ExprPtr>& filter,
                        std::span<const FlowRecord> flows) {
    std::set<uint64_t> values;
    Env env;
    for (const auto& f : flows) {
        if (filter) {
            env.bindings.clear();
            env.bindings.emplace_back(var, &f);
            if (!eval_expr(*filter, env, flows)) continue;
        }
        values.insert(attr_value(f, attr));
    }
    return values.size();
}

bool evaluate_clause(const Clause& c, std::span<const FlowRecord> flows) {
    if (std::holds_alternative<QuantClause>(c)) {
        const auto& q = std::get<QuantClause>(c);
        Env env;
        return eval_quant(q.is_forall, q.vars, q.body, env, flows);
    }
    const auto& card = std::get<CardinalityClause>(c);
    uint64_t n = distinct_count(card.attr, card.var, card.filter, flows);
    return cmp_apply(n, card.op, card.bound);
}

bool evaluate(const Hypothesis& h, std::span<const FlowRecord> flows) {
    for (const auto& c : h.clauses) {
        if (!evaluate_clause(c, flows)) return false;
    }
    return true;
}

bool evaluate_unary(const ExprPtr& e, std::string_view var, const FlowRecord& f,
                    std::span<const FlowRecord> flows) {
    Env env;
    env.bindings.emplace_back(var, &f);
    return eval_expr(e, env, flows);
}

} // namespace superflow

#include "superflow/printer.hpp"

#include <string>

namespace superflow {

namespace {

// Precedence used for minimal parenthesization: or < and < not/atom.
enum Prec { kOr = 1, kAnd = 2, kUnary = 3 };

std::string attr_ref_text(const AttrRef& r) {
    return std::string(attr_name(r.attr)) + "(" + r.var + ")";
}

std::string duration_text(int64_t ms) {
    if (ms > 0 && ms % 1000 == 0) return std::to_string(ms / 1000) + "s";
    return std::to_string(ms) + "ms";
}

void print_expr(const ExprPtr& e, int parent_prec, std::string& out);

struct Printer {
    std::string& out;
    int parent_prec;

    void parenthesized(const ExprPtr& inner, int prec, int child_prec) const {
        bool need = prec < parent_prec;
        if (need) out += '(';
        print_expr(inner, child_prec, out);
        if (need) out += ')';
    }

    void operator()(const CmpAttrAttr& x) const {
        out += attr_ref_text(x.lhs);
        out += ' ';
        out += cmp_op_text(x.op);
        out += ' ';
        out += attr_ref_text(x.rhs);
    }
    void operator()(const CmpAttrConst& x) const {
        out += attr_ref_text(x.lhs);
        out += ' ';
        out += cmp_op_text(x.op);
        out += ' ';
        out += x.is_ip ? format_ipv4(static_cast<uint32_t>(x.value))
                       : std::to_string(x.value);
    }
    void operator()(const InCidr& x) const {
        out += attr_ref_text(x.lhs);
        out += " in ";
        out += format_cidr(x.cidr);
    }
    void operator()(const InSet& x) const {
        out += attr_ref_text(x.lhs);
        out += " in {";
        for (std::size_t i = 0; i < x.values.size(); ++i) {
            if (i) out += ", ";
            out += x.values_are_ips
                       ? format_ipv4(static_cast<uint32_t>(x.values[i]))
                       : std::to_string(x.values[i]);
        }
        out += '}';
    }
    void operator()(const TimeDiffCmp& x) const {
        out += attr_ref_text(x.lhs);
        out += " - ";
        out += attr_ref_text(x.rhs);
        out += ' ';
        out += cmp_op_text(x.op);
        out += ' ';
        out += duration_text(x.bound_ms);
    }
    void operator()(const QuantExpr& x) const {
        // Always parenthesized when nested: the body extends maximally.
        out += '(';
        out += x.is_forall ? "forall " : "exists ";
        for (std::size_t i = 0; i < x.vars.size(); ++i) {
            if (i) out += ", ";
            out += x.vars[i];
        }
        out += " in F: ";
        print_expr(x.body, kOr, out);
        out += ')';
    }
    void operator()(const AndExpr& x) const {
        bool need = kAnd < parent_prec;
        if (need) out += '(';
        print_expr(x.lhs, kAnd, out);
        out += " and ";
        print_expr(x.rhs, kAnd + 1, out);  // right child one tighter: left-assoc
        if (need) out += ')';
    }
    void operator()(const OrExpr& x) const {
        bool need = kOr < parent_prec;
        if (need) out += '(';
        print_expr(x.lhs, kOr, out);
        out += " or ";
        print_expr(x.rhs, kOr + 1, out);
        if (need) out += ')';
    }
    void operator()(const NotExpr& x) const {
        out += "not ";
        print_expr(x.operand, kUnary, out);
    }
};

void print_expr(const ExprPtr& e, int parent_prec, std::string& out) {
    std::visit(Printer{out, parent_prec}, e->node);
}

} // namespace

std::string to_dsl(const ExprPtr& e) {
    std::string out;
    print_expr(e, kOr, out);
    return out;
}

std::string to_dsl(const Hypothesis& h) {
    std::string out;
    for (const auto& clause : h.clauses) {
        if (std::holds_alternative<QuantClause>(clause)) {
            const auto& q = std::get<QuantClause>(clause);
            out += q.is_forall ? "forall " : "exists ";
            for (std::size_t i = 0; i < q.vars.size(); ++i) {
                if (i) out += ", ";
                out += q.vars[i];
            }
            out += " in F: ";
            print_expr(q.body, kOr, out);
        } else {
            const auto& c = std::get<CardinalityClause>(clause);
            out += "require count(distinct ";
            out += attr_name(c.attr);
            out += '(';
            out += c.var;
            out += ')';
            if (c.filter) {
                out += " where ";
                print_expr(*c.filter, kOr, out);
            }
            out += ") ";
            out += cmp_op_text(c.op);
            out += ' ';
            out += std::to_string(c.bound);
        }
        out += ";\n";
    }
    return out;
}

} // namespace superflow

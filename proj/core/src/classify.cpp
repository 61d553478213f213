#include "superflow/classify.hpp"

#include <algorithm>
#include <set>

#include "superflow/evaluate.hpp"
#include "superflow/printer.hpp"

namespace superflow {

namespace {

void flatten_and(const ExprPtr& e, std::vector<ExprPtr>& out) {
    if (const auto* a = std::get_if<AndExpr>(&e->node)) {
        flatten_and(a->lhs, out);
        flatten_and(a->rhs, out);
    } else {
        out.push_back(e);
    }
}

bool contains_quant(const ExprPtr& e) {
    if (std::holds_alternative<QuantExpr>(e->node)) return true;
    if (const auto* a = std::get_if<AndExpr>(&e->node)) {
        return contains_quant(a->lhs) || contains_quant(a->rhs);
    }
    if (const auto* o = std::get_if<OrExpr>(&e->node)) {
        return contains_quant(o->lhs) || contains_quant(o->rhs);
    }
    if (const auto* n = std::get_if<NotExpr>(&e->node)) {
        return contains_quant(n->operand);
    }
    return false;
}

// Equality atom between two distinct variables, normalized as the attribute
// pair (attr of vars[0], attr of vars[1]).
struct PairEq {
    AttrId first_attr;
    AttrId second_attr;
    friend bool operator==(const PairEq&, const PairEq&) = default;
};

std::optional<PairEq> normalize_pair_eq(const ExprPtr& e, const std::string& v1,
                                        const std::string& v2) {
    const auto* cmp = std::get_if<CmpAttrAttr>(&e->node);
    if (!cmp || cmp->op != CmpOp::Eq) return std::nullopt;
    if (cmp->lhs.var == v1 && cmp->rhs.var == v2) {
        return PairEq{cmp->lhs.attr, cmp->rhs.attr};
    }
    if (cmp->lhs.var == v2 && cmp->rhs.var == v1) {
        return PairEq{cmp->rhs.attr, cmp->lhs.attr};
    }
    return std::nullopt;
}

// (srcip==srcip and dstip==dstip) or (srcip==dstip and dstip==srcip), atoms
// and disjuncts in any order: the "same two hosts, either direction" shape.
// The disjunction is an equivalence relation over flows, so anchor checks are
// exact; either half alone is not.
bool match_endpoint_pair(const ExprPtr& e, const std::vector<std::string>& vars) {
    const auto* disj = std::get_if<OrExpr>(&e->node);
    if (!disj) return false;

    auto collect_side = [&](const ExprPtr& side,
                            std::vector<PairEq>& out) -> bool {
        std::vector<ExprPtr> atoms;
        flatten_and(side, atoms);
        if (atoms.size() != 2) return false;
        for (const auto& atom : atoms) {
            // Variable order inside the atom is irrelevant; use the first two
            // distinct variables mentioned across the disjunction.
            auto fv = free_vars(atom);
            if (fv.size() != 2) return false;
            auto eq = normalize_pair_eq(atom, vars[0], vars[1]);
            if (!eq) return false;
            out.push_back(*eq);
        }
        return true;
    };

    if (vars.size() < 2) return false;
    std::vector<PairEq> a, b;
    if (!collect_side(disj->lhs, a) || !collect_side(disj->rhs, b)) return false;

    auto is_same = [](const std::vector<PairEq>& side) {
        return (side[0] == PairEq{AttrId::SrcIp, AttrId::SrcIp} &&
                side[1] == PairEq{AttrId::DstIp, AttrId::DstIp}) ||
               (side[0] == PairEq{AttrId::DstIp, AttrId::DstIp} &&
                side[1] == PairEq{AttrId::SrcIp, AttrId::SrcIp});
    };
    auto is_cross = [](const std::vector<PairEq>& side) {
        return (side[0] == PairEq{AttrId::SrcIp, AttrId::DstIp} &&
                side[1] == PairEq{AttrId::DstIp, AttrId::SrcIp}) ||
               (side[0] == PairEq{AttrId::DstIp, AttrId::SrcIp} &&
                side[1] == PairEq{AttrId::SrcIp, AttrId::DstIp});
    };
    return (is_same(a) && is_cross(b)) || (is_cross(a) && is_same(b));
}

// Or(Not(unary guard), exists w: ...) or a bare exists, one witness shape.
struct WitnessParts {
    ExprPtr guard;  // null = unguarded
    const QuantExpr* exists;
};

std::optional<WitnessParts> split_witness(const ExprPtr& e) {
    if (const auto* q = std::get_if<QuantExpr>(&e->node)) {
        if (!q->is_forall) return WitnessParts{nullptr, q};
        return std::nullopt;
    }
    const auto* disj = std::get_if<OrExpr>(&e->node);
    if (!disj) return std::nullopt;
    const auto* neg = std::get_if<NotExpr>(&disj->lhs->node);
    const auto* q = std::get_if<QuantExpr>(&disj->rhs->node);
    if (!neg || !q || q->is_forall) return std::nullopt;
    return WitnessParts{neg->operand, q};
}

struct Analysis {
    MonitorPlan plan;
    std::vector<std::string> families;
    std::string reason;  // nonempty = not monitorable

    void refuse(const std::string& why) {
        if (reason.empty()) reason = why;
    }

    void add_family(const std::string& f) {
        if (std::find(families.begin(), families.end(), f) == families.end()) {
            families.push_back(f);
        }
    }
};

void analyze_witness(const ExprPtr& conjunct, const QuantClause& clause,
                     Analysis& out) {
    auto parts = split_witness(conjunct);
    if (!parts) {
        out.refuse("unsupported pairwise shape: " + to_dsl(conjunct));
        return;
    }
    if (clause.vars.size() != 1) {
        out.refuse("witness constraints need a single-variable forall clause");
        return;
    }
    const std::string& subject = clause.vars.front();

    WitnessSpec w;
    w.guard_var = subject;
    if (parts->guard) {
        auto gv = free_vars(parts->guard);
        if (contains_quant(parts->guard) || gv.size() > 1 ||
            (gv.size() == 1 && gv[0] != subject)) {
            out.refuse("witness guard must be a plain test on the quantified flow");
            return;
        }
        w.guard = parts->guard;
    }

    const QuantExpr& ex = *parts->exists;
    if (ex.vars.size() != 1) {
        out.refuse("witness existential must bind one variable");
        return;
    }
    w.witness_var = ex.vars.front();

    std::vector<ExprPtr> atoms;
    flatten_and(ex.body, atoms);
    std::vector<ExprPtr> tests;
    bool time_pair_set = false;
    for (const auto& atom : atoms) {
        if (const auto* td = std::get_if<TimeDiffCmp>(&atom->node)) {
            bool fw = td->lhs.var == subject && td->rhs.var == w.witness_var;
            bool bw = td->lhs.var == w.witness_var && td->rhs.var == subject;
            if (!fw && !bw) {
                out.refuse("witness time bound must relate subject and witness");
                return;
            }
            AttrId sub_attr = fw ? td->lhs.attr : td->rhs.attr;
            AttrId wit_attr = fw ? td->rhs.attr : td->lhs.attr;
            if (time_pair_set &&
                (sub_attr != w.subject_time || wit_attr != w.witness_time)) {
                out.refuse("witness uses more than one time attribute pair");
                return;
            }
            w.subject_time = sub_attr;
            w.witness_time = wit_attr;
            time_pair_set = true;

            // Normalize onto subject_time - witness_time.
            int64_t bound = td->bound_ms;
            CmpOp op = td->op;
            if (bw) {
                // (w - s) op b  <=>  (s - w) flipped-op -b
                bound = -bound;
                if (op == CmpOp::Le) op = CmpOp::Ge;
                else if (op == CmpOp::Lt) op = CmpOp::Gt;
                else if (op == CmpOp::Ge) op = CmpOp::Le;
                else if (op == CmpOp::Gt) op = CmpOp::Lt;
            }
            switch (op) {
                case CmpOp::Le:
                    if (!w.hi_ms || bound < *w.hi_ms) { w.hi_ms = bound; w.hi_strict = false; }
                    break;
                case CmpOp::Lt:
                    if (!w.hi_ms || bound <= *w.hi_ms) { w.hi_ms = bound; w.hi_strict = true; }
                    break;
                case CmpOp::Ge:
                    if (!w.lo_ms || bound > *w.lo_ms) { w.lo_ms = bound; w.lo_strict = false; }
                    break;
                case CmpOp::Gt:
                    if (!w.lo_ms || bound >= *w.lo_ms) { w.lo_ms = bound; w.lo_strict = true; }
                    break;
                case CmpOp::Eq:
                    if (!w.hi_ms || bound < *w.hi_ms) { w.hi_ms = bound; w.hi_strict = false; }
                    if (!w.lo_ms || bound > *w.lo_ms) { w.lo_ms = bound; w.lo_strict = false; }
                    break;
                case CmpOp::Ne:
                    out.refuse("witness time bound does not support '!='");
                    return;
            }
            continue;
        }
        auto fv = free_vars(atom);
        if (contains_quant(atom) || fv.size() > 1 ||
            (fv.size() == 1 && fv[0] != w.witness_var)) {
            out.refuse("witness body must test the witness flow only");
            return;
        }
        tests.push_back(atom);
    }
    if (tests.empty()) {
        out.refuse("witness existential needs a test on the witness flow");
        return;
    }
    // Conjoin the tests back into one unary expression.
    ExprPtr test = tests.front();
    for (std::size_t i = 1; i < tests.size(); ++i) {
        test = expr(AndExpr{std::move(test), tests[i]});
    }
    w.witness_test = std::move(test);

    out.plan.witnesses.push_back(std::move(w));
    out.add_family("witness");
}

void analyze_quant_clause(const QuantClause& clause, Analysis& out) {
    if (!clause.is_forall) {
        out.refuse("top-level existential quantifier is outside the monitorable fragment");
        return;
    }

    std::vector<ExprPtr> conjuncts;
    flatten_and(clause.body, conjuncts);

    for (const auto& conjunct : conjuncts) {
        auto fv = free_vars(conjunct);

        // Plain per-flow test: any quantifier-free boolean combination over
        // one variable.
        if (fv.size() <= 1 && !contains_quant(conjunct)) {
            std::string var = fv.empty() ? clause.vars.front() : fv.front();
            out.plan.unary.emplace_back(conjunct, var);
            out.add_family("unary");
            continue;
        }

        if (const auto* cmp = std::get_if<CmpAttrAttr>(&conjunct->node)) {
            if (fv.size() == 2 && cmp->op == CmpOp::Eq &&
                cmp->lhs.attr == cmp->rhs.attr) {
                out.plan.eq_attrs.push_back(cmp->lhs.attr);
                out.add_family("equality(" + std::string(attr_name(cmp->lhs.attr)) + ")");
                continue;
            }
            out.refuse("binary comparison outside the transitive whitelist: " +
                       to_dsl(conjunct));
            continue;
        }

        if (const auto* td = std::get_if<TimeDiffCmp>(&conjunct->node)) {
            if (fv.size() == 2 && (td->op == CmpOp::Le || td->op == CmpOp::Lt)) {
                // Quantification covers both variable orders, so the bound
                // caps the running spread max(lhs.attr) - min(rhs.attr).
                out.plan.spreads.push_back(SpreadBound{
                    td->lhs.attr, td->rhs.attr, td->bound_ms, td->op == CmpOp::Lt});
                out.add_family("time-spread(" + std::string(attr_name(td->lhs.attr)) +
                               "-" + std::string(attr_name(td->rhs.attr)) + ")");
                continue;
            }
            out.refuse("pairwise time constraint must be an upper bound: " +
                       to_dsl(conjunct));
            continue;
        }

        if (match_endpoint_pair(conjunct, clause.vars)) {
            out.plan.endpoint_pair = true;
            out.add_family("endpoint-pair");
            continue;
        }

        if (split_witness(conjunct)) {
            analyze_witness(conjunct, clause, out);
            continue;
        }

        out.refuse("unsupported constraint shape: " + to_dsl(conjunct));
    }
}

SummaryKind detect_summary_kind(const MonitorPlan& plan) {
    if (plan.endpoint_pair) return SummaryKind::Chat;
    if (!plan.witnesses.empty()) return SummaryKind::Web;
    bool src_eq = std::find(plan.eq_attrs.begin(), plan.eq_attrs.end(),
                            AttrId::SrcIp) != plan.eq_attrs.end();
    bool dst24 = false;
    for (const auto& [e, var] : plan.unary) {
        const auto* in = std::get_if<InCidr>(&e->node);
        if (in && in->lhs.attr == AttrId::DstIp && in->cidr.prefix_len == 24) {
            dst24 = true;
        }
    }
    if (src_eq && dst24) return SummaryKind::Scan;
    return SummaryKind::Generic;
}

} // namespace

HypothesisClass classify(const Hypothesis& h) {
    HypothesisClass cls;
    Analysis an;

    for (const auto& clause : h.clauses) {
        if (const auto* card = std::get_if<CardinalityClause>(&clause)) {
            if (card->filter) {
                auto fv = free_vars(*card->filter);
                if (contains_quant(*card->filter) || fv.size() > 1 ||
                    (fv.size() == 1 && fv[0] != card->var)) {
                    an.refuse("cardinality filter must be a plain per-flow test");
                }
            }
            if (card->op == CmpOp::Ge || card->op == CmpOp::Gt) {
                CardinalityBound b;
                b.attr = card->attr;
                b.var = card->var;
                b.filter = card->filter;
                b.min_distinct =
                    card->op == CmpOp::Ge ? card->bound : card->bound + 1;
                cls.qualifications.push_back(std::move(b));
                an.add_family("cardinality(" + std::string(attr_name(card->attr)) +
                              " >= " + std::to_string(cls.qualifications.back().min_distinct) + ")");
                continue;  // lower bounds never enter compatibility
            }
            // Upper bounds stay in compatibility for the reference split but
            // are excluded from the monitorable fragment: greedy growth could
            // pass the bound and invalidate earlier acceptances.
            cls.compatibility.clauses.push_back(clause);
            an.refuse("cardinality upper bounds are not greedily monitorable");
            continue;
        }
        cls.compatibility.clauses.push_back(clause);
        analyze_quant_clause(std::get<QuantClause>(clause), an);
    }

    an.plan.quals = cls.qualifications;
    cls.monitorable = an.reason.empty();
    cls.reason = std::move(an.reason);
    cls.plan = std::move(an.plan);
    cls.families = std::move(an.families);
    cls.summary_kind = detect_summary_kind(cls.plan);
    return cls;
}

bool qualifications_hold(const std::vector<CardinalityBound>& quals,
                         std::span<const FlowRecord> flows) {
    for (const auto& q : quals) {
        if (distinct_count(q.attr, q.var, q.filter, flows) < q.min_distinct) {
            return false;
        }
    }
    return true;
}

} // namespace superflow

#include "superflow/builtins.hpp"

#include "superflow/errors.hpp"

namespace superflow {

namespace {

// The parser left-folds "a and b and c" into And(And(a, b), c); constructors
// below fold the same way so parsed text compares equal.

AttrRef ref(AttrId attr, const char* var) { return AttrRef{attr, var}; }

ExprPtr eq(AttrId a, const char* va, AttrId b, const char* vb) {
    return expr(CmpAttrAttr{ref(a, va), CmpOp::Eq, ref(b, vb)});
}

ExprPtr conj(ExprPtr a, ExprPtr b) {
    return expr(AndExpr{std::move(a), std::move(b)});
}

} // namespace

Hypothesis builtin_scan(const Cidr& prefix, int64_t window_ms,
                        uint64_t min_distinct_dsts) {
    if (window_ms <= 0) throw SpecError("scan window must be positive");
    if (min_distinct_dsts < 1) throw SpecError("scan threshold must be >= 1");

    // forall f, g in F: srcip(f) == srcip(g) and dstip(f) in <prefix>
    //                   and tstart(g) - tstart(f) <= <window>;
    ExprPtr body = conj(
        conj(eq(AttrId::SrcIp, "f", AttrId::SrcIp, "g"),
             expr(InCidr{ref(AttrId::DstIp, "f"), prefix})),
        expr(TimeDiffCmp{ref(AttrId::TStart, "g"), ref(AttrId::TStart, "f"),
                         CmpOp::Le, window_ms}));

    Hypothesis h;
    h.clauses.push_back(QuantClause{true, {"f", "g"}, std::move(body)});
    h.clauses.push_back(CardinalityClause{AttrId::DstIp, "f", std::nullopt,
                                          CmpOp::Ge, min_distinct_dsts});
    return h;
}

Hypothesis builtin_chat(uint64_t mtu_bytes) {
    if (mtu_bytes < 1) throw SpecError("chat mtu must be >= 1");

    // forall f, g in F: (srcip(f) == srcip(g) and dstip(f) == dstip(g)
    //                    or srcip(f) == dstip(g) and dstip(f) == srcip(g))
    //                   and bytes(f) <= <mtu>;
    ExprPtr same = conj(eq(AttrId::SrcIp, "f", AttrId::SrcIp, "g"),
                        eq(AttrId::DstIp, "f", AttrId::DstIp, "g"));
    ExprPtr cross = conj(eq(AttrId::SrcIp, "f", AttrId::DstIp, "g"),
                         eq(AttrId::DstIp, "f", AttrId::SrcIp, "g"));
    ExprPtr body =
        conj(expr(OrExpr{std::move(same), std::move(cross)}),
             expr(CmpAttrConst{ref(AttrId::Bytes, "f"), CmpOp::Le, mtu_bytes}));

    Hypothesis h;
    h.clauses.push_back(QuantClause{true, {"f", "g"}, std::move(body)});
    return h;
}

Hypothesis builtin_web(int64_t window_ms) {
    if (window_ms <= 0) throw SpecError("web window must be positive");

    // forall f in F: dstport(f) in {53, 80, 443};
    // forall f in F: dstport(f) in {80, 443} implies
    //   (exists g in F: dstport(g) == 53 and tstart(f) - tstart(g) >= 0ms
    //                   and tstart(f) - tstart(g) <= <window>);
    ExprPtr all_ports =
        expr(InSet{ref(AttrId::DstPort, "f"), {53, 80, 443}, false});

    ExprPtr guard = expr(InSet{ref(AttrId::DstPort, "f"), {80, 443}, false});
    ExprPtr witness = conj(
        conj(expr(CmpAttrConst{ref(AttrId::DstPort, "g"), CmpOp::Eq, 53, false}),
             expr(TimeDiffCmp{ref(AttrId::TStart, "f"), ref(AttrId::TStart, "g"),
                              CmpOp::Ge, 0})),
        expr(TimeDiffCmp{ref(AttrId::TStart, "f"), ref(AttrId::TStart, "g"),
                         CmpOp::Le, window_ms}));
    ExprPtr follows = expr(OrExpr{
        expr(NotExpr{std::move(guard)}),
        expr(QuantExpr{false, {"g"}, std::move(witness)})});

    Hypothesis h;
    h.clauses.push_back(QuantClause{true, {"f"}, std::move(all_ports)});
    h.clauses.push_back(QuantClause{true, {"f"}, std::move(follows)});
    return h;
}

} // namespace superflow

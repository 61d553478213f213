#ifndef SUPERFLOW_TESTS_GEN_HPP
#define SUPERFLOW_TESTS_GEN_HPP

// Seeded generators shared by the property tests. Streams come from
// per-hypothesis generative models chosen so the properties under test are
// actually theorems (see the regime comments below).

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "superflow/ast.hpp"
#include "superflow/flow_record.hpp"
#include "superflow/ip.hpp"

namespace sftest {

using namespace superflow;

class Rng {
public:
    explicit Rng(uint64_t seed) : engine_(seed) {}

    uint64_t below(uint64_t n) { return n == 0 ? 0 : engine_() % n; }
    uint64_t range(uint64_t lo, uint64_t hi) { return lo + below(hi - lo + 1); }
    bool chance(unsigned percent) { return below(100) < percent; }

    template <typename T>
    const T& pick(const std::vector<T>& v) {
        return v[below(v.size())];
    }

private:
    std::mt19937_64 engine_;
};

inline FlowRecord make_flow(uint32_t src, uint32_t dst, uint16_t sport,
                            uint16_t dport, uint8_t proto, uint64_t t_ms,
                            uint64_t bytes, uint64_t packets = 1) {
    FlowRecord f;
    f.src_ip = src;
    f.dst_ip = dst;
    f.src_port = sport;
    f.dst_port = dport;
    f.protocol = proto;
    f.t_start_ms = t_ms;
    f.t_end_ms = t_ms + 1;
    f.byte_count = bytes < packets ? packets : bytes;
    f.packet_count = packets;
    return f;
}

// Small attribute pools force frequent collisions so monitors exercise both
// accept and reject paths.
inline FlowRecord random_flow(Rng& rng) {
    const uint32_t prefix = 0xC0A80100;  // 192.168.1.0
    std::vector<uint32_t> srcs = {0x0A000001, 0x0A000002, 0x0A000003};
    uint32_t src = rng.pick(srcs);
    uint32_t dst = rng.chance(70) ? prefix | uint32_t(rng.below(6))
                                  : 0x0B000000 | uint32_t(rng.below(4));
    std::vector<uint16_t> dports = {53, 80, 443, 22};
    uint16_t dport = rng.pick(dports);
    uint8_t proto = dport == 53 ? 17 : 6;
    uint64_t t = 1700000000000ull + rng.below(30000);
    uint64_t bytes = rng.range(40, 2500);
    return make_flow(src, dst, uint16_t(rng.range(1024, 65535)), dport, proto, t,
                     bytes, rng.range(1, 4));
}

inline std::vector<FlowRecord> random_stream(Rng& rng, std::size_t max_len) {
    std::vector<FlowRecord> flows(rng.below(max_len + 1));
    for (auto& f : flows) f = random_flow(rng);
    return flows;
}

// Scan regime: same-source bursts are separated by more than the window, so
// no subset straddling two bursts can satisfy the spread bound and greedy
// decomposition is provably maximal. Noise stays outside the target prefix.
struct ScanRegime {
    std::vector<FlowRecord> flows;
    uint64_t threshold = 2;  // dsts per qualifying group
};

inline ScanRegime burst_scan_stream(Rng& rng, std::size_t max_len,
                                    int64_t window_ms = 10000) {
    ScanRegime out;
    out.threshold = rng.range(2, 3);
    const uint32_t prefix = 0xC0A80100;
    std::size_t budget = rng.below(max_len + 1);
    uint64_t t = 1700000000000ull;
    unsigned scanners = unsigned(rng.range(1, 2));
    for (unsigned s = 0; s < scanners && budget > 0; ++s) {
        uint32_t src = 0x0A000001 + s;
        unsigned bursts = unsigned(rng.range(1, 2));
        for (unsigned b = 0; b < bursts && budget > 0; ++b) {
            unsigned burst_len = unsigned(rng.range(1, 4));
            uint64_t burst_start = t + rng.below(1000);
            for (unsigned i = 0; i < burst_len && budget > 0; ++i, --budget) {
                uint64_t ts =
                    burst_start + (uint64_t(i) * uint64_t(window_ms - 1)) / burst_len;
                out.flows.push_back(make_flow(src, prefix | uint32_t(rng.below(6)),
                                              uint16_t(rng.range(1024, 65535)), 80,
                                              6, ts, rng.range(40, 60)));
            }
            t = burst_start + uint64_t(window_ms) * 2 + rng.below(5000);
        }
    }
    while (budget > 0) {  // out-of-prefix noise
        out.flows.push_back(make_flow(0x0B000000 | uint32_t(rng.below(8)),
                                      0x0B000000 | uint32_t(rng.below(8)),
                                      uint16_t(rng.range(1024, 65535)), 443, 6,
                                      t + rng.below(20000), rng.range(60, 900)));
        --budget;
    }
    std::stable_sort(out.flows.begin(), out.flows.end(),
                     [](const FlowRecord& a, const FlowRecord& b) {
                         return a.t_start_ms < b.t_start_ms;
                     });
    return out;
}

// Web regime: time-sorted with strictly distinct timestamps (the order a
// flow exporter would emit), so DNS witnesses always precede their requests
// in the stream and greedy grouping is maximal.
inline std::vector<FlowRecord> web_sorted_stream(Rng& rng, std::size_t max_len) {
    std::size_t n = rng.below(max_len + 1);
    std::vector<FlowRecord> flows;
    uint64_t t = 1700000000000ull;
    for (std::size_t i = 0; i < n; ++i) {
        t += rng.range(1, 400000);  // gaps can exceed the 300 s window
        std::vector<uint16_t> dports = {53, 80, 443, 22};
        uint16_t dport = rng.pick(dports);
        uint8_t proto = dport == 53 ? 17 : 6;
        flows.push_back(make_flow(0x0A000001, 0xC6120000 | uint32_t(rng.below(5)),
                                  uint16_t(rng.range(1024, 65535)), dport, proto,
                                  t, rng.range(60, 9000), rng.range(1, 6)));
    }
    return flows;
}

// Chat regime: no qualifications, so candidates never dissolve and greedy is
// maximal on any stream order.
inline std::vector<FlowRecord> chat_stream(Rng& rng, std::size_t max_len) {
    std::size_t n = rng.below(max_len + 1);
    std::vector<FlowRecord> flows;
    std::vector<uint32_t> hosts = {0x0A000001, 0x0A000002, 0x0A000003};
    for (std::size_t i = 0; i < n; ++i) {
        uint32_t a = rng.pick(hosts);
        uint32_t b = rng.pick(hosts);
        if (a == b) b = hosts[(rng.below(2) + 1 + (a - hosts[0])) % hosts.size()];
        flows.push_back(make_flow(a, b, uint16_t(rng.range(1024, 65535)),
                                  uint16_t(rng.range(1024, 65535)), 6,
                                  1700000000000ull + rng.below(60000),
                                  rng.range(40, 2200)));
    }
    return flows;
}

// ---- random parser-constructible hypotheses (for round-trip tests) ----

inline AttrId random_numeric_attr(Rng& rng) {
    std::vector<AttrId> attrs = {AttrId::SrcPort, AttrId::DstPort, AttrId::Proto,
                                 AttrId::TcpFlags, AttrId::Bytes, AttrId::Packets};
    return rng.pick(attrs);
}

inline CmpOp random_cmp(Rng& rng) {
    std::vector<CmpOp> ops = {CmpOp::Eq, CmpOp::Ne, CmpOp::Le,
                              CmpOp::Ge, CmpOp::Lt, CmpOp::Gt};
    return rng.pick(ops);
}

inline ExprPtr random_atom(Rng& rng, const std::vector<std::string>& vars) {
    const std::string& v = vars[rng.below(vars.size())];
    switch (rng.below(6)) {
        case 0: {
            AttrId ip_attr = rng.chance(50) ? AttrId::SrcIp : AttrId::DstIp;
            return expr(CmpAttrConst{AttrRef{ip_attr, v},
                                     rng.chance(50) ? CmpOp::Eq : CmpOp::Ne,
                                     0x0A000000 | rng.below(16), true});
        }
        case 1:
            return expr(CmpAttrConst{AttrRef{random_numeric_attr(rng), v},
                                     random_cmp(rng), rng.below(3000), false});
        case 2: {
            AttrId ip_attr = rng.chance(50) ? AttrId::SrcIp : AttrId::DstIp;
            return expr(InCidr{AttrRef{ip_attr, v},
                               Cidr::make(0xC0A80000 | rng.below(65536),
                                          uint8_t(8 * rng.range(1, 4)))});
        }
        case 3: {
            std::vector<uint64_t> values;
            for (std::size_t i = rng.range(1, 3); i > 0; --i) {
                values.push_back(rng.below(1000));
            }
            return expr(InSet{AttrRef{random_numeric_attr(rng), v}, values, false});
        }
        case 4: {
            const std::string& w = vars[rng.below(vars.size())];
            if (rng.chance(30)) {
                AttrId ip_attr = rng.chance(50) ? AttrId::SrcIp : AttrId::DstIp;
                AttrId ip_attr2 = rng.chance(50) ? AttrId::SrcIp : AttrId::DstIp;
                return expr(CmpAttrAttr{AttrRef{ip_attr, v},
                                        rng.chance(50) ? CmpOp::Eq : CmpOp::Ne,
                                        AttrRef{ip_attr2, w}});
            }
            return expr(CmpAttrAttr{AttrRef{random_numeric_attr(rng), v},
                                    random_cmp(rng),
                                    AttrRef{random_numeric_attr(rng), w}});
        }
        default: {
            const std::string& w = vars[rng.below(vars.size())];
            AttrId t1 = rng.chance(50) ? AttrId::TStart : AttrId::TEnd;
            AttrId t2 = rng.chance(50) ? AttrId::TStart : AttrId::TEnd;
            int64_t bound = int64_t(rng.below(60)) * (rng.chance(50) ? 1000 : 1);
            return expr(TimeDiffCmp{AttrRef{t1, v}, AttrRef{t2, w},
                                    random_cmp(rng), bound});
        }
    }
}

inline ExprPtr random_expr(Rng& rng, std::vector<std::string> vars, int depth) {
    if (depth <= 0 || rng.chance(45)) return random_atom(rng, vars);
    switch (rng.below(4)) {
        case 0:
            return expr(AndExpr{random_expr(rng, vars, depth - 1),
                                random_expr(rng, vars, depth - 1)});
        case 1:
            return expr(OrExpr{random_expr(rng, vars, depth - 1),
                               random_expr(rng, vars, depth - 1)});
        case 2:
            return expr(NotExpr{random_expr(rng, vars, depth - 1)});
        default: {
            std::string fresh = "q" + std::to_string(vars.size());
            vars.push_back(fresh);
            ExprPtr body = random_expr(rng, vars, depth - 1);
            return expr(QuantExpr{rng.chance(30), {fresh}, std::move(body)});
        }
    }
}

inline Hypothesis random_hypothesis(Rng& rng) {
    Hypothesis h;
    std::size_t quant_clauses = rng.range(1, 2);
    for (std::size_t i = 0; i < quant_clauses; ++i) {
        bool is_forall = rng.chance(75);
        std::vector<std::string> vars = {"f"};
        if (is_forall && rng.chance(50)) vars.push_back("g");
        ExprPtr body = random_expr(rng, vars, 2);
        h.clauses.push_back(QuantClause{is_forall, std::move(vars), std::move(body)});
    }
    for (std::size_t i = rng.below(2); i > 0; --i) {
        CardinalityClause c;
        c.attr = rng.chance(50) ? AttrId::DstIp : random_numeric_attr(rng);
        c.var = "f";
        if (rng.chance(30)) {
            c.filter = random_atom(rng, {"f"});
        }
        std::vector<CmpOp> ops = {CmpOp::Eq, CmpOp::Le, CmpOp::Ge, CmpOp::Lt,
                                  CmpOp::Gt};
        c.op = rng.pick(ops);
        c.bound = rng.below(300);
        h.clauses.push_back(std::move(c));
    }
    return h;
}

} // namespace sftest

#endif // SUPERFLOW_TESTS_GEN_HPP

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "superflow/builtins.hpp"
#include "superflow/errors.hpp"
#include "superflow/evaluate.hpp"
#include "superflow/parser.hpp"
#include "superflow/printer.hpp"
#include "support/gen.hpp"

using namespace superflow;

namespace {

std::string read_file(const std::string& rel) {
    std::ifstream in(std::string(SUPERFLOW_SOURCE_DIR) + "/" + rel);
    REQUIRE(in.good());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const std::vector<FlowRecord> kEmpty;

} // namespace

TEST_CASE("shipped scan text parses equal to builtin_scan") {
    Hypothesis parsed = parse_hypothesis(read_file("examples/scan256.sf"));
    Hypothesis built = builtin_scan(*parse_cidr("192.168.1.0/24"), 10000, 256);
    CHECK(parsed == built);
}

TEST_CASE("shipped chat text parses equal to builtin_chat") {
    CHECK(parse_hypothesis(read_file("examples/chat.sf")) == builtin_chat(1500));
}

TEST_CASE("shipped web text parses equal to builtin_web") {
    CHECK(parse_hypothesis(read_file("examples/web.sf")) == builtin_web(300000));
}

TEST_CASE("minimal formula parses to a single clause") {
    Hypothesis h = parse_hypothesis("forall f in F: bytes(f) <= 1500;");
    REQUIRE(h.clauses.size() == 1);
    const auto& q = std::get<QuantClause>(h.clauses[0]);
    CHECK(q.is_forall);
    CHECK(q.vars == std::vector<std::string>{"f"});
    const auto& atom = std::get<CmpAttrConst>(q.body->node);
    CHECK(atom.lhs.attr == AttrId::Bytes);
    CHECK(atom.op == CmpOp::Le);
    CHECK(atom.value == 1500);
}

TEST_CASE("parse errors carry position and cause") {
    CHECK_THROWS_WITH_AS(parse_hypothesis("forall f in F: badattr(f) == 1;"),
                         doctest::Contains("unknown attribute"), ParseError);
    CHECK_THROWS_WITH_AS(parse_hypothesis("forall f in F: bytes(g) <= 1;"),
                         doctest::Contains("unbound variable"), ParseError);
    CHECK_THROWS_WITH_AS(
        parse_hypothesis("forall f, g in F: tstart(g) - tstart(f) <= 10;"),
        doctest::Contains("unit"), ParseError);
    CHECK_THROWS_WITH_AS(parse_hypothesis(""), doctest::Contains("empty"),
                         ParseError);
    CHECK_THROWS_AS(parse_hypothesis("forall f in F: bytes(f) <= 1500"),
                    ParseError);  // missing ';'
    CHECK_THROWS_WITH_AS(
        parse_hypothesis("forall f in F: bytes(f) <= 1;\n"
                         "require count(distinct dstip(f)) != 3;"),
        doctest::Contains("!="), ParseError);
    CHECK_THROWS_WITH_AS(parse_hypothesis("require count(distinct dstip(f)) >= 1;"),
                         doctest::Contains("forall"), ParseError);
    CHECK_THROWS_WITH_AS(parse_hypothesis("forall f, f in F: bytes(f) <= 1;"),
                         doctest::Contains("already bound"), ParseError);
    CHECK_THROWS_WITH_AS(parse_hypothesis("forall f in F: srcip(f) == 99;"),
                         doctest::Contains("dotted-quad"), ParseError);
    CHECK_THROWS_WITH_AS(parse_hypothesis("forall f in F: srcip(f) < 1.2.3.4;"),
                         doctest::Contains("== and !="), ParseError);
    CHECK_THROWS_WITH_AS(
        parse_hypothesis("forall f, g in F: bytes(f) - bytes(g) <= 10s;"),
        doctest::Contains("tstart/tend"), ParseError);

    try {
        parse_hypothesis("forall f in F: bytes(f) <= 1;\nforall g in F: zork(g) == 1;");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line() == 2);
    }
}

TEST_CASE("comments and glob prefixes are accepted") {
    Hypothesis h = parse_hypothesis(
        "# scan over a /24\n"
        "forall f in F: dstip(f) in 192.168.1.*;  # glob spelling\n");
    const auto& q = std::get<QuantClause>(h.clauses[0]);
    const auto& cidr = std::get<InCidr>(q.body->node);
    CHECK(cidr.cidr == *parse_cidr("192.168.1.0/24"));
}

TEST_CASE("and binds tighter than or; implies desugars") {
    Hypothesis h = parse_hypothesis("forall f in F: bytes(f) <= 1 and packets(f) <= 2 or bytes(f) >= 9 and packets(f) >= 8;");
    const auto& q = std::get<QuantClause>(h.clauses[0]);
    const auto& top = std::get<OrExpr>(q.body->node);
    CHECK(std::holds_alternative<AndExpr>(top.lhs->node));
    CHECK(std::holds_alternative<AndExpr>(top.rhs->node));

    Hypothesis imp = parse_hypothesis(
        "forall f in F: bytes(f) <= 1 implies packets(f) <= 2;");
    const auto& iq = std::get<QuantClause>(imp.clauses[0]);
    const auto& ior = std::get<OrExpr>(iq.body->node);
    CHECK(std::holds_alternative<NotExpr>(ior.lhs->node));
    CHECK(std::holds_alternative<CmpAttrConst>(ior.rhs->node));
}

TEST_CASE("ip literals and sets parse with type checking") {
    Hypothesis h = parse_hypothesis(
        "forall f in F: srcip(f) == 10.0.0.1 and dstport(f) in {80, 443} and "
        "dstip(f) in {10.0.0.1, 10.0.0.2};");
    CHECK(to_dsl(h) ==
          "forall f in F: srcip(f) == 10.0.0.1 and dstport(f) in {80, 443} and "
          "dstip(f) in {10.0.0.1, 10.0.0.2};\n");
}

TEST_CASE("pretty-print round trip on shipped and builtin hypotheses") {
    for (const auto& h :
         {builtin_scan(*parse_cidr("10.9.0.0/24"), 2500, 7), builtin_chat(900),
          builtin_web(120000),
          parse_hypothesis(read_file("examples/nested.sf"))}) {
        CHECK(parse_hypothesis(to_dsl(h)) == h);
    }
}

TEST_CASE("pretty-print round trip on 200 generated hypotheses") {
    sftest::Rng rng(0xA57);
    for (int i = 0; i < 200; ++i) {
        Hypothesis h = sftest::random_hypothesis(rng);
        std::string text = to_dsl(h);
        INFO("text:\n" << text);
        Hypothesis back = parse_hypothesis(text);
        CHECK(back == h);
        CHECK(to_dsl(back) == text);
    }
}

// ---- reference evaluation ----

TEST_CASE("vacuous quantification") {
    CHECK(evaluate(parse_hypothesis("forall f, g in F: bytes(f) <= 1;"), kEmpty));
    CHECK_FALSE(evaluate(parse_hypothesis("exists f in F: bytes(f) >= 0;"), kEmpty));
    // cardinality >= c with c > 0 fails on the empty set
    Hypothesis card = parse_hypothesis(
        "forall f in F: bytes(f) >= 1;\nrequire count(distinct dstip(f)) >= 1;");
    CHECK_FALSE(evaluate(card, kEmpty));
}

TEST_CASE("h_scan on miniatures") {
    Hypothesis h3 = builtin_scan(*parse_cidr("192.168.1.0/24"), 10000, 3);
    std::vector<FlowRecord> mini = {
        sftest::make_flow(0x0A000009, 0xC0A80101, 1, 80, 6, 1000, 40),
        sftest::make_flow(0x0A000009, 0xC0A80102, 2, 80, 6, 2000, 40),
        sftest::make_flow(0x0A000009, 0xC0A80103, 3, 80, 6, 3000, 40),
    };
    CHECK(evaluate(h3, mini));

    // distinct-count semantics: repeated destination does not count twice
    std::vector<FlowRecord> repeat = mini;
    repeat[2].dst_ip = repeat[1].dst_ip;
    CHECK_FALSE(evaluate(h3, repeat));

    // window: max-min spread over the group
    std::vector<FlowRecord> slow = mini;
    slow[2].t_start_ms = 12000;
    CHECK_FALSE(evaluate(h3, slow));

    // source mismatch
    std::vector<FlowRecord> mixed = mini;
    mixed[1].src_ip = 0x0A000010;
    CHECK_FALSE(evaluate(h3, mixed));
}

TEST_CASE("h_chat accepts either direction under the MTU") {
    Hypothesis h = builtin_chat(1500);
    std::vector<FlowRecord> ab = {
        sftest::make_flow(1, 2, 10, 20, 6, 1000, 1400),
        sftest::make_flow(2, 1, 20, 10, 6, 2000, 1400),
    };
    CHECK(evaluate(h, ab));
    ab[1].byte_count = 2000;
    CHECK_FALSE(evaluate(h, ab));
    // unrelated host pair
    std::vector<FlowRecord> other = {
        sftest::make_flow(1, 2, 10, 20, 6, 1000, 100),
        sftest::make_flow(1, 3, 10, 20, 6, 2000, 100),
    };
    CHECK_FALSE(evaluate(h, other));
}

TEST_CASE("h_web requires a preceding DNS witness") {
    Hypothesis h = builtin_web(300000);
    std::vector<FlowRecord> ok = {
        sftest::make_flow(1, 9, 10, 53, 17, 1000, 80),
        sftest::make_flow(1, 9, 11, 443, 6, 51000, 500),
    };
    CHECK(evaluate(h, ok));

    std::vector<FlowRecord> stale = ok;
    stale[1].t_start_ms = 1000 + 300001;
    CHECK_FALSE(evaluate(h, stale));

    std::vector<FlowRecord> reversed = ok;
    reversed[1].t_start_ms = 500;  // request before the lookup
    CHECK_FALSE(evaluate(h, reversed));

    std::vector<FlowRecord> off_port = ok;
    off_port[1].dst_port = 8080;  // outside {53,80,443}
    CHECK_FALSE(evaluate(h, off_port));

    // DNS-only set is fine (guard never fires)
    std::vector<FlowRecord> dns_only = {ok[0]};
    CHECK(evaluate(h, dns_only));
}

TEST_CASE("nested quantifiers evaluate by expansion") {
    Hypothesis h = parse_hypothesis("exists f in F: forall g in F: bytes(g) < bytes(f);");
    std::vector<FlowRecord> flows = {
        sftest::make_flow(1, 2, 1, 2, 6, 0, 100),
        sftest::make_flow(1, 2, 1, 2, 6, 0, 300),
    };
    // no flow is strictly heavier than every flow including itself
    CHECK_FALSE(evaluate(h, flows));
    Hypothesis le = parse_hypothesis("exists f in F: forall g in F: bytes(g) <= bytes(f);");
    CHECK(evaluate(le, flows));
}

TEST_CASE("cardinality where-filter restricts the counted flows") {
    Hypothesis h = parse_hypothesis(
        "forall f in F: bytes(f) >= 1;\n"
        "require count(distinct dstip(f) where dstport(f) == 443) >= 2;");
    std::vector<FlowRecord> flows = {
        sftest::make_flow(1, 10, 1, 443, 6, 0, 100),
        sftest::make_flow(1, 11, 1, 443, 6, 0, 100),
        sftest::make_flow(1, 12, 1, 80, 6, 0, 100),
    };
    CHECK(evaluate(h, flows));
    flows[1].dst_port = 80;  // only one 443 destination left
    CHECK_FALSE(evaluate(h, flows));
}

TEST_CASE("parser requires closed formulas") {
    // quantified variables resolve through nested scopes
    Hypothesis h = parse_hypothesis(
        "forall f in F: bytes(f) <= 10 or (exists g in F: bytes(g) > bytes(f));");
    std::vector<FlowRecord> flows = {
        sftest::make_flow(1, 2, 1, 2, 6, 0, 50),
        sftest::make_flow(1, 2, 1, 2, 6, 0, 60),
    };
    CHECK_FALSE(evaluate(h, flows));  // the 60-byte flow has no heavier peer
}

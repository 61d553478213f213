#include "superflow/parser.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <optional>
#include <string>
#include <vector>

#include "superflow/errors.hpp"

namespace superflow {

namespace {

enum class Tok : uint8_t {
    Ident, Int, Ip, CidrLit,
    LParen, RParen, LBrace, RBrace,
    Comma, Colon, Semi, Minus,
    Cmp,   // op field set
    Eof,
};

struct Token {
    Tok kind;
    std::string text;
    uint64_t int_value = 0;
    uint32_t ip_value = 0;
    Cidr cidr_value;
    CmpOp op = CmpOp::Eq;
    std::size_t line = 1;
    std::size_t col = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        for (;;) {
            skip_space_and_comments();
            Token t = next_token();
            bool eof = t.kind == Tok::Eof;
            out.push_back(std::move(t));
            if (eof) break;
        }
        return out;
    }

private:
    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;

    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
    char peek2() const { return pos_ + 1 < src_.size() ? src_[pos_ + 1] : '\0'; }

    void advance() {
        if (pos_ < src_.size()) {
            if (src_[pos_] == '\n') {
                ++line_;
                col_ = 1;
            } else {
                ++col_;
            }
            ++pos_;
        }
    }

    void skip_space_and_comments() {
        for (;;) {
            char c = peek();
            if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
                advance();
            } else if (c == '#') {
                while (peek() != '\n' && peek() != '\0') advance();
            } else {
                return;
            }
        }
    }

    Token make(Tok kind) const {
        Token t;
        t.kind = kind;
        t.line = line_;
        t.col = col_;
        return t;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line_, col_);
    }

    Token next_token() {
        Token t = make(Tok::Eof);
        char c = peek();
        if (c == '\0') return t;

        if (c >= '0' && c <= '9') return lex_numeric(t);

        if ((c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_') {
            t.kind = Tok::Ident;
            while (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_') {
                t.text += peek();
                advance();
            }
            return t;
        }

        switch (c) {
            case '(': advance(); t.kind = Tok::LParen; return t;
            case ')': advance(); t.kind = Tok::RParen; return t;
            case '{': advance(); t.kind = Tok::LBrace; return t;
            case '}': advance(); t.kind = Tok::RBrace; return t;
            case ',': advance(); t.kind = Tok::Comma; return t;
            case ':': advance(); t.kind = Tok::Colon; return t;
            case ';': advance(); t.kind = Tok::Semi; return t;
            case '-': advance(); t.kind = Tok::Minus; return t;
            case '=':
                if (peek2() == '=') {
                    advance(); advance();
                    t.kind = Tok::Cmp; t.op = CmpOp::Eq;
                    return t;
                }
                fail("stray '=' (use '==')");
            case '!':
                if (peek2() == '=') {
                    advance(); advance();
                    t.kind = Tok::Cmp; t.op = CmpOp::Ne;
                    return t;
                }
                fail("stray '!' (use '!=')");
            case '<':
                advance();
                t.kind = Tok::Cmp;
                if (peek() == '=') { advance(); t.op = CmpOp::Le; }
                else t.op = CmpOp::Lt;
                return t;
            case '>':
                advance();
                t.kind = Tok::Cmp;
                if (peek() == '=') { advance(); t.op = CmpOp::Ge; }
                else t.op = CmpOp::Gt;
                return t;
            default:
                fail(std::string("unexpected character '") + c + "'");
        }
    }

    // Integers, dotted quads, CIDRs, and globs all start with a digit.
    Token lex_numeric(Token t) {
        std::string blob;
        while ((peek() >= '0' && peek() <= '9') || peek() == '.' || peek() == '*') {
            blob += peek();
            advance();
        }
        bool dotted = blob.find('.') != std::string::npos;
        bool glob = blob.find('*') != std::string::npos;

        if (!dotted && !glob) {
            t.kind = Tok::Int;
            t.text = blob;
            auto [ptr, ec] = std::from_chars(blob.data(), blob.data() + blob.size(),
                                             t.int_value);
            if (ec != std::errc{} || ptr != blob.data() + blob.size()) {
                fail("integer literal out of range: " + blob);
            }
            return t;
        }
        if (glob) {
            auto cidr = parse_cidr(blob);
            if (!cidr) fail("malformed address glob: " + blob);
            t.kind = Tok::CidrLit;
            t.text = blob;
            t.cidr_value = *cidr;
            return t;
        }
        if (peek() == '/') {
            blob += '/';
            advance();
            while (peek() >= '0' && peek() <= '9') {
                blob += peek();
                advance();
            }
            auto cidr = parse_cidr(blob);
            if (!cidr) fail("malformed CIDR: " + blob);
            t.kind = Tok::CidrLit;
            t.text = blob;
            t.cidr_value = *cidr;
            return t;
        }
        auto ip = parse_ipv4(blob);
        if (!ip) fail("malformed IPv4 literal: " + blob);
        t.kind = Tok::Ip;
        t.text = blob;
        t.ip_value = *ip;
        return t;
    }
};

class Parser {
public:
    explicit Parser(std::string_view src) : tokens_(Lexer(src).run()) {}

    Hypothesis run() {
        Hypothesis h;
        bool requires_started = false;
        if (at_eof()) fail(cur(), "empty hypothesis: expected a forall/exists clause");
        while (!at_eof()) {
            if (peek_keyword("require")) {
                requires_started = true;
                h.clauses.push_back(parse_require());
            } else {
                if (requires_started) {
                    fail(cur(), "quantified clauses must precede require clauses");
                }
                h.clauses.push_back(parse_quant_clause());
            }
        }
        bool any_quant = false;
        for (const auto& c : h.clauses) {
            if (std::holds_alternative<QuantClause>(c)) any_quant = true;
        }
        if (!any_quant) fail(cur(), "expected at least one forall/exists clause");
        return h;
    }

private:
    std::vector<Token> tokens_;
    std::size_t idx_ = 0;
    std::vector<std::string> scope_;

    const Token& cur() const { return tokens_[idx_]; }
    bool at_eof() const { return cur().kind == Tok::Eof; }

    [[noreturn]] static void fail(const Token& at, const std::string& msg) {
        throw ParseError(msg, at.line, at.col);
    }

    bool peek_keyword(std::string_view kw) const {
        return cur().kind == Tok::Ident && cur().text == kw;
    }

    void expect_keyword(std::string_view kw) {
        if (!peek_keyword(kw)) {
            fail(cur(), "expected '" + std::string(kw) + "', got '" +
                            describe(cur()) + "'");
        }
        ++idx_;
    }

    Token expect(Tok kind, const char* what) {
        if (cur().kind != kind) {
            fail(cur(), std::string("expected ") + what + ", got '" +
                            describe(cur()) + "'");
        }
        return tokens_[idx_++];
    }

    static std::string describe(const Token& t) {
        switch (t.kind) {
            case Tok::Eof: return "end of input";
            case Tok::Ident: case Tok::Int: case Tok::Ip: case Tok::CidrLit:
                return t.text;
            case Tok::Cmp: return std::string(cmp_op_text(t.op));
            case Tok::LParen: return "(";
            case Tok::RParen: return ")";
            case Tok::LBrace: return "{";
            case Tok::RBrace: return "}";
            case Tok::Comma: return ",";
            case Tok::Colon: return ":";
            case Tok::Semi: return ";";
            case Tok::Minus: return "-";
        }
        return "?";
    }

    std::string parse_new_var() {
        Token t = expect(Tok::Ident, "a variable name");
        if (t.text == "F" || t.text == "forall" || t.text == "exists" ||
            t.text == "and" || t.text == "or" || t.text == "not" ||
            t.text == "implies" || t.text == "in" || t.text == "require") {
            fail(t, "'" + t.text + "' cannot be used as a variable name");
        }
        for (const auto& v : scope_) {
            if (v == t.text) fail(t, "variable '" + t.text + "' already bound");
        }
        return t.text;
    }

    std::vector<std::string> parse_var_list(bool single) {
        std::vector<std::string> vars;
        vars.push_back(parse_new_var());
        scope_.push_back(vars.back());
        while (!single && cur().kind == Tok::Comma) {
            ++idx_;
            vars.push_back(parse_new_var());
            scope_.push_back(vars.back());
        }
        return vars;
    }

    void pop_scope(std::size_t n) { scope_.resize(scope_.size() - n); }

    Clause parse_quant_clause() {
        bool is_forall;
        if (peek_keyword("forall")) {
            is_forall = true;
        } else if (peek_keyword("exists")) {
            is_forall = false;
        } else {
            fail(cur(), "expected 'forall', 'exists', or 'require', got '" +
                            describe(cur()) + "'");
        }
        ++idx_;
        auto vars = parse_var_list(/*single=*/!is_forall);
        expect_keyword("in");
        expect_domain();
        expect(Tok::Colon, "':'");
        ExprPtr body = parse_expr();
        expect(Tok::Semi, "';'");
        pop_scope(vars.size());
        return QuantClause{is_forall, std::move(vars), std::move(body)};
    }

    void expect_domain() {
        Token t = expect(Tok::Ident, "'F'");
        if (t.text != "F") fail(t, "quantifiers range over F");
    }

    Clause parse_require() {
        expect_keyword("require");
        expect_keyword("count");
        expect(Tok::LParen, "'('");
        expect_keyword("distinct");
        auto [attr, attr_tok] = parse_attr_name();
        expect(Tok::LParen, "'('");
        std::string var = parse_new_var();
        scope_.push_back(var);
        expect(Tok::RParen, "')'");
        std::optional<ExprPtr> filter;
        if (peek_keyword("where")) {
            ++idx_;
            filter = parse_expr();
        }
        expect(Tok::RParen, "')'");
        Token op_tok = expect(Tok::Cmp, "a comparison operator");
        if (op_tok.op == CmpOp::Ne) {
            fail(op_tok, "require does not support '!='");
        }
        Token bound = expect(Tok::Int, "an integer bound");
        expect(Tok::Semi, "';'");
        pop_scope(1);
        return CardinalityClause{attr, std::move(var), std::move(filter),
                                 op_tok.op, bound.int_value};
    }

    std::pair<AttrId, Token> parse_attr_name() {
        Token t = expect(Tok::Ident, "an attribute name");
        auto id = attr_from_name(t.text);
        if (!id) {
            fail(t, "unknown attribute '" + t.text +
                        "' (known: srcip, dstip, srcport, dstport, proto, "
                        "tcpflags, tstart, tend, bytes, packets)");
        }
        return {*id, t};
    }

    AttrRef parse_attr_ref() {
        auto [attr, tok] = parse_attr_name();
        expect(Tok::LParen, "'('");
        Token v = expect(Tok::Ident, "a variable name");
        bool bound = false;
        for (const auto& s : scope_) {
            if (s == v.text) bound = true;
        }
        if (!bound) fail(v, "unbound variable '" + v.text + "'");
        expect(Tok::RParen, "')'");
        return AttrRef{attr, v.text};
    }

    // expr := orexpr ["implies" expr]; "a implies b" => not (a) or (b)
    ExprPtr parse_expr() {
        ExprPtr lhs = parse_or();
        if (peek_keyword("implies")) {
            ++idx_;
            ExprPtr rhs = parse_expr();
            return expr(OrExpr{expr(NotExpr{std::move(lhs)}), std::move(rhs)});
        }
        return lhs;
    }

    ExprPtr parse_or() {
        ExprPtr e = parse_and();
        while (peek_keyword("or")) {
            ++idx_;
            e = expr(OrExpr{std::move(e), parse_and()});
        }
        return e;
    }

    ExprPtr parse_and() {
        ExprPtr e = parse_unary();
        while (peek_keyword("and")) {
            ++idx_;
            e = expr(AndExpr{std::move(e), parse_unary()});
        }
        return e;
    }

    ExprPtr parse_unary() {
        if (peek_keyword("not")) {
            ++idx_;
            return expr(NotExpr{parse_unary()});
        }
        if (cur().kind == Tok::LParen) {
            ++idx_;
            ExprPtr e = parse_expr();
            expect(Tok::RParen, "')'");
            return e;
        }
        if (peek_keyword("exists") || peek_keyword("forall")) {
            bool is_forall = peek_keyword("forall");
            ++idx_;
            auto vars = parse_var_list(/*single=*/!is_forall);
            expect_keyword("in");
            expect_domain();
            expect(Tok::Colon, "':'");
            ExprPtr body = parse_expr();
            pop_scope(vars.size());
            return expr(QuantExpr{is_forall, std::move(vars), std::move(body)});
        }
        return parse_term();
    }

    ExprPtr parse_term() {
        AttrRef lhs = parse_attr_ref();

        if (peek_keyword("in")) {
            ++idx_;
            return parse_membership(lhs);
        }
        if (cur().kind == Tok::Minus) {
            ++idx_;
            return parse_time_diff(lhs);
        }
        Token op_tok = expect(Tok::Cmp, "a comparison operator, 'in', or '-'");
        return parse_comparison(lhs, op_tok);
    }

    ExprPtr parse_membership(const AttrRef& lhs) {
        if (cur().kind == Tok::CidrLit) {
            Token t = tokens_[idx_++];
            if (!attr_is_ip(lhs.attr)) {
                fail(t, "'in <prefix>' needs an address attribute");
            }
            return expr(InCidr{lhs, t.cidr_value});
        }
        Token open = expect(Tok::LBrace, "a CIDR, glob, or '{'");
        InSet set{lhs, {}, false};
        bool first = true;
        while (cur().kind != Tok::RBrace) {
            if (!first) expect(Tok::Comma, "','");
            first = false;
            if (cur().kind == Tok::Int) {
                if (attr_is_ip(lhs.attr)) {
                    fail(cur(), "address sets need dotted-quad members");
                }
                set.values.push_back(tokens_[idx_++].int_value);
            } else if (cur().kind == Tok::Ip) {
                if (!attr_is_ip(lhs.attr)) {
                    fail(cur(), "numeric attribute compared with an address");
                }
                set.values_are_ips = true;
                set.values.push_back(tokens_[idx_++].ip_value);
            } else {
                fail(cur(), "expected a literal in set, got '" + describe(cur()) + "'");
            }
        }
        ++idx_;  // '}'
        if (set.values.empty()) fail(open, "empty literal set");
        return expr(std::move(set));
    }

    ExprPtr parse_time_diff(const AttrRef& lhs) {
        if (!attr_is_time(lhs.attr)) {
            fail(cur(), "time differences need tstart/tend attributes");
        }
        AttrRef rhs = parse_attr_ref();
        if (!attr_is_time(rhs.attr)) {
            fail(cur(), "time differences need tstart/tend attributes");
        }
        Token op_tok = expect(Tok::Cmp, "a comparison operator");
        Token n = expect(Tok::Int, "a duration (integer with ms/s unit)");
        int64_t ms;
        if (peek_keyword("ms")) {
            ++idx_;
            ms = static_cast<int64_t>(n.int_value);
        } else if (peek_keyword("s")) {
            ++idx_;
            ms = static_cast<int64_t>(n.int_value) * 1000;
        } else {
            fail(cur(), "time bound needs a unit (ms or s)");
        }
        return expr(TimeDiffCmp{lhs, rhs, op_tok.op, ms});
    }

    ExprPtr parse_comparison(const AttrRef& lhs, const Token& op_tok) {
        CmpOp op = op_tok.op;
        bool ip_lhs = attr_is_ip(lhs.attr);

        if (cur().kind == Tok::Int) {
            Token t = tokens_[idx_++];
            if (ip_lhs) {
                fail(t, "address attributes compare with dotted-quad literals");
            }
            // A unit here would make a duration, which only time differences take.
            if (attr_is_time(lhs.attr) && (peek_keyword("ms") || peek_keyword("s"))) {
                fail(cur(), "duration literals only apply to time differences");
            }
            return expr(CmpAttrConst{lhs, op, t.int_value, false});
        }
        if (cur().kind == Tok::Ip) {
            Token t = tokens_[idx_++];
            if (!ip_lhs) {
                fail(t, "numeric attribute compared with an address");
            }
            if (op != CmpOp::Eq && op != CmpOp::Ne) {
                fail(t, "addresses support only == and !=");
            }
            return expr(CmpAttrConst{lhs, op, t.ip_value, true});
        }
        // attr(v) op attr(w)
        AttrRef rhs = parse_attr_ref();
        bool ip_rhs = attr_is_ip(rhs.attr);
        if (ip_lhs != ip_rhs) {
            fail(op_tok, "cannot compare address and numeric attributes");
        }
        if (ip_lhs && op != CmpOp::Eq && op != CmpOp::Ne) {
            fail(op_tok, "addresses support only == and !=");
        }
        if (attr_is_time(lhs.attr) != attr_is_time(rhs.attr)) {
            fail(op_tok, "cannot compare time and non-time attributes");
        }
        return expr(CmpAttrAttr{lhs, op, rhs});
    }
};

} // namespace

Hypothesis parse_hypothesis(std::string_view text) {
    return Parser(text).run();
}

} // namespace superflow

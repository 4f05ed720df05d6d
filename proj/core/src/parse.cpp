#include "pscl/parse.hpp"

#include <cctype>

namespace pscl {

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;

    explicit Parser(const std::string& text) : s(text) {}

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }

    bool eat(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) { ++pos; return true; }
        return false;
    }

    void expect(char c, const char* what) {
        if (!eat(c)) throw ParseError(std::string("expected ") + what, pos);
    }

    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }

    Expression parse_expr() {
        Expression e = parse_term();
        for (;;) {
            char c = peek();
            if (c == '+') { ++pos; e = e + parse_term(); }
            else if (c == '-') { ++pos; e = e - parse_term(); }
            else break;
        }
        return e;
    }

    Expression parse_term() {
        Expression e = parse_factor();
        for (;;) {
            char c = peek();
            if (c == '*') { ++pos; e = e * parse_factor(); }
            else if (c == '/') {
                size_t at = pos;
                ++pos;
                Expression d = parse_factor();
                if (d.is_zero()) throw ParseError("division by zero", at);
                e = e / d;
            } else break;
        }
        return e;
    }

    Expression parse_factor() {
        char c = peek();
        if (c == '-') { ++pos; return -parse_factor(); }
        if (c == '+') { ++pos; return parse_factor(); }
        Expression base = parse_primary();
        if (peek() == '^') {
            ++pos;
            int k = parse_exponent();
            if (k < 0 && base.is_zero())
                throw ParseError("zero to a negative power", pos);
            return base.pow(k);
        }
        return base;
    }

    int parse_exponent() {
        bool paren = eat('(');
        bool neg = eat('-');
        long v = parse_integer();
        if (paren) expect(')', "')'");
        return static_cast<int>(neg ? -v : v);
    }

    long parse_integer() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected integer", pos);
        return std::stol(s.substr(start, pos - start));
    }

    Expression parse_primary() {
        skip_ws();
        if (pos >= s.size()) throw ParseError("unexpected end of input", pos);
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Expression::constant(Rational(parse_integer()));
        if (c == '(') {
            ++pos;
            Expression e = parse_expr();
            expect(')', "')'");
            return e;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        throw ParseError(std::string("unexpected character '") + c + "'", pos);
    }

    Expression parse_ident() {
        size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        std::string id = s.substr(start, pos - start);
        if (id == "D") {
            expect('[', "'[' after D");
            std::string field = parse_name();
            expect(',', "','");
            long k = parse_integer();
            expect(']', "']'");
            if (k < 0) throw ParseError("negative jet order", start);
            return Expression::jet(field, static_cast<int>(k));
        }
        if (id == "sin" || id == "cos") {
            expect('(', "'(' after trig function");
            std::string p = parse_name();
            expect(')', "')'");
            return id == "sin" ? Expression::sin(p) : Expression::cos(p);
        }
        if (id == "eta") return Expression::eta();
        // a trailing `_xx...x` run gives the jet order
        int order = 0;
        size_t us = id.rfind('_');
        if (us != std::string::npos && us + 1 < id.size()) {
            bool all_x = true;
            for (size_t i = us + 1; i < id.size(); ++i)
                if (id[i] != 'x') { all_x = false; break; }
            if (all_x) {
                order = static_cast<int>(id.size() - us - 1);
                id.erase(us);
            }
        }
        if (id.empty()) throw ParseError("unknown generator name", start);
        return Expression::jet(id, order);
    }

    std::string parse_name() {
        skip_ws();
        size_t start = pos;
        while (pos < s.size() && std::isalnum(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw ParseError("expected name", pos);
        return s.substr(start, pos - start);
    }
};

}  // namespace

Expression parse(const std::string& text) {
    Parser p(text);
    Expression e = p.parse_expr();
    p.skip_ws();
    if (p.pos != p.s.size()) throw ParseError("trailing input", p.pos);
    return e;
}

}  // namespace pscl

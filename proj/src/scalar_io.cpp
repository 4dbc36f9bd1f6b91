#include "normq/scalar_io.hpp"

#include <cctype>
#include <sstream>

namespace normq {

namespace {

std::string coeff_text(const Rational& c) { return c.str(); }

std::string poly_text(const Poly& p) {
    if (p.is_zero()) return "0";
    std::ostringstream out;
    bool first = true;
    for (std::size_t i = 0; i < static_cast<std::size_t>(p.degree()) + 1; ++i) {
        Rational c = p.coeff(i);
        if (c.is_zero()) continue;
        Rational a = c.abs();
        if (first) {
            if (c.sign() < 0) out << "-";
            first = false;
        } else {
            out << (c.sign() < 0 ? " - " : " + ");
        }
        bool unit = (a == Rational(1));
        if (i == 0) {
            out << coeff_text(a);
        } else {
            if (!unit) out << coeff_text(a) << "*";
            out << "e";
            if (i > 1) out << "^" << i;
        }
    }
    return out.str();
}

// Recursive-descent parser for scalar expressions:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | atom ('^' nat)?
//   atom   := nat | 'e' | '(' expr ')'
// Evaluation is exact in Q(e); 'e' is rejected when parsing plain rationals.
class ScalarParser {
public:
    ScalarParser(std::string_view text, bool allow_eps)
        : text_(text), allow_eps_(allow_eps) {}

    RatFunc run() {
        RatFunc v = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
        return v;
    }

private:
    RatFunc expr() {
        RatFunc v = term();
        for (;;) {
            skip_ws();
            if (peek() == '+') { ++pos_; v += term(); }
            else if (peek() == '-') { ++pos_; v -= term(); }
            else return v;
        }
    }

    RatFunc term() {
        RatFunc v = factor();
        for (;;) {
            skip_ws();
            if (peek() == '*') { ++pos_; v *= factor(); }
            else if (peek() == '/') {
                std::size_t at = pos_++;
                RatFunc d = factor();
                if (d.is_zero()) throw ParseError("division by zero", at);
                v /= d;
            } else return v;
        }
    }

    RatFunc factor() {
        skip_ws();
        if (peek() == '-') { ++pos_; return -factor(); }
        if (peek() == '+') { ++pos_; return factor(); }
        RatFunc v = atom();
        skip_ws();
        if (peek() == '^') {
            std::size_t at = ++pos_;
            skip_ws();
            if (!std::isdigit(static_cast<unsigned char>(peek())))
                throw ParseError("expected exponent", at);
            unsigned long e = 0;
            while (std::isdigit(static_cast<unsigned char>(peek()))) {
                e = e * 10 + static_cast<unsigned long>(peek() - '0');
                if (e > 4096) throw ParseError("exponent too large", at);
                ++pos_;
            }
            RatFunc r(Rational(1));
            for (unsigned long i = 0; i < e; ++i) r *= v;
            v = r;
        }
        return v;
    }

    RatFunc atom() {
        skip_ws();
        char c = peek();
        if (c == '(') {
            ++pos_;
            RatFunc v = expr();
            skip_ws();
            if (peek() != ')') throw ParseError("expected ')'", pos_);
            ++pos_;
            return v;
        }
        if (c == 'e') {
            if (!allow_eps_)
                throw ParseError("'e' is not a rational scalar", pos_);
            ++pos_;
            return RatFunc::eps();
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            mpz_class n(std::string(text_.substr(start, pos_ - start)), 10);
            return RatFunc(Rational(n));
        }
        throw ParseError("unexpected character", pos_);
    }

    void skip_ws() {
        while (pos_ < text_.size() &&
               std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }
    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    std::string_view text_;
    bool allow_eps_;
    std::size_t pos_ = 0;
};

}  // namespace

std::string scalar_text(const Rational& x) { return x.str(); }

std::string scalar_text(const RatFunc& x) {
    if (x.den() == Poly::one()) return poly_text(x.num());
    return "(" + poly_text(x.num()) + ")/(" + poly_text(x.den()) + ")";
}

std::string scalar_text(const AnyScalar& x) {
    return std::visit([](const auto& v) { return scalar_text(v); }, x);
}

Rational parse_rational(std::string_view text) {
    RatFunc v = ScalarParser(text, /*allow_eps=*/false).run();
    auto r = v.as_rational();
    if (!r) throw ParseError("not a rational value", 0);
    return *r;
}

RatFunc parse_ratfunc(std::string_view text) {
    return ScalarParser(text, /*allow_eps=*/true).run();
}

AnyScalar parse_scalar(std::string_view text, FieldKind kind) {
    if (kind == FieldKind::Rationals) return AnyScalar(parse_rational(text));
    return AnyScalar(parse_ratfunc(text));
}

VecLiteral split_vector_literal(std::string_view text) {
    std::size_t i = 0, n = text.size();
    auto ws = [&] {
        while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    };
    ws();
    if (i == n || text[i] != '(') throw ParseError("expected '('", i);
    std::size_t open = i++;
    int depth = 1;
    std::vector<std::string> parts;
    std::size_t semi_at_part = 0;  // 0: no ';' seen
    std::size_t start = i;
    for (; i < n; ++i) {
        char c = text[i];
        if (c == '(') ++depth;
        else if (c == ')') {
            if (--depth == 0) break;
        } else if (depth == 1 && (c == ',' || c == ';')) {
            parts.emplace_back(text.substr(start, i - start));
            if (c == ';') {
                if (semi_at_part) throw ParseError("multiple ';'", i);
                semi_at_part = parts.size();
            }
            start = i + 1;
        }
    }
    if (i == n) throw ParseError("unbalanced '('", open);
    parts.emplace_back(text.substr(start, i - start));
    ++i;
    while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i != n) throw ParseError("trailing input", i);

    std::size_t plane_parts = semi_at_part ? semi_at_part : parts.size();
    if (plane_parts != 2)
        throw ParseError("vector literal needs exactly two plane coordinates", open);
    VecLiteral lit;
    lit.x = parts[0];
    lit.y = parts[1];
    for (std::size_t j = 2; j < parts.size(); ++j) lit.w.push_back(parts[j]);
    return lit;
}

}  // namespace normq

#include "normq/formula.hpp"

#include <cctype>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "normq/scalar_io.hpp"

namespace normq::ast {

namespace mk {

namespace {
Ptr node(Op op, std::vector<Ptr> kids = {}) {
    auto n = std::make_shared<Node>();
    n->op = op;
    n->kids = std::move(kids);
    return n;
}
}  // namespace

Ptr zero() { return node(Op::Zero); }
Ptr one() { return node(Op::One); }
Ptr var(std::string name, Sort sort) {
    auto n = std::make_shared<Node>();
    n->op = Op::Var;
    n->name = std::move(name);
    n->sort = sort;
    return n;
}
Ptr succ(Ptr t) { return node(Op::Succ, {std::move(t)}); }
Ptr plus(Ptr a, Ptr b) { return node(Op::Plus, {std::move(a), std::move(b)}); }
Ptr times(Ptr a, Ptr b) { return node(Op::Times, {std::move(a), std::move(b)}); }
Ptr minus(Ptr a, Ptr b) { return node(Op::Minus, {std::move(a), std::move(b)}); }
Ptr vplus(Ptr a, Ptr b) { return node(Op::VPlus, {std::move(a), std::move(b)}); }
Ptr vminus(Ptr a, Ptr b) { return node(Op::VMinus, {std::move(a), std::move(b)}); }
Ptr scale(Rational c, Ptr v) {
    auto n = std::make_shared<Node>();
    n->op = Op::Scale;
    n->lit = std::move(c);
    n->kids.push_back(std::move(v));
    return n;
}
Ptr norm(Ptr v) { return node(Op::Norm, {std::move(v)}); }
Ptr eq(Ptr a, Ptr b) { return node(Op::Eq, {std::move(a), std::move(b)}); }
Ptr lt(Ptr a, Ptr b) { return node(Op::Lt, {std::move(a), std::move(b)}); }
Ptr mu(Ptr a, Ptr b, Ptr c) { return node(Op::Mu, {std::move(a), std::move(b), std::move(c)}); }
Ptr nu(Ptr a) { return node(Op::Nu, {std::move(a)}); }
Ptr not_(Ptr f) { return node(Op::Not, {std::move(f)}); }
Ptr and_(std::vector<Ptr> fs) { return node(Op::And, std::move(fs)); }
Ptr or_(std::vector<Ptr> fs) { return node(Op::Or, std::move(fs)); }
Ptr imp(Ptr a, Ptr b) { return node(Op::Imp, {std::move(a), std::move(b)}); }
Ptr forall(std::string x, Sort s, Ptr body) {
    auto n = std::make_shared<Node>();
    n->op = Op::Forall;
    n->name = std::move(x);
    n->sort = s;
    n->kids.push_back(std::move(body));
    return n;
}
Ptr exists(std::string x, Sort s, Ptr body) {
    auto n = std::make_shared<Node>();
    n->op = Op::Exists;
    n->name = std::move(x);
    n->sort = s;
    n->kids.push_back(std::move(body));
    return n;
}

}  // namespace mk

namespace {

// ---------------------------------------------------------------- reader --

struct Sexp {
    bool is_atom = false;
    std::string atom;
    std::vector<Sexp> kids;
    std::size_t pos = 0;
};

class Reader {
public:
    explicit Reader(std::string_view text) : text_(text) {}

    Sexp read() {
        Sexp s = read_one();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("trailing input", pos_);
        return s;
    }

private:
    Sexp read_one() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("unexpected end of input", pos_);
        if (text_[pos_] == '(') {
            Sexp s;
            s.pos = pos_++;
            for (;;) {
                skip_ws();
                if (pos_ >= text_.size()) throw ParseError("unbalanced '('", s.pos);
                if (text_[pos_] == ')') {
                    ++pos_;
                    return s;
                }
                s.kids.push_back(read_one());
            }
        }
        if (text_[pos_] == ')') throw ParseError("unexpected ')'", pos_);
        Sexp s;
        s.is_atom = true;
        s.pos = pos_;
        while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) &&
               text_[pos_] != '(' && text_[pos_] != ')')
            s.atom.push_back(text_[pos_++]);
        return s;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

const std::set<std::string> kKeywords = {
    "S",  "plus", "times", "minus", "vplus",  "vminus", "scale", "norm",
    "mu", "nu",   "not",   "and",   "or",     "imp",    "forall", "exists",
    "=",  "<",    "K",     "V",     "0",      "1",
};

bool is_identifier(const std::string& s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
    for (char c : s)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return !kKeywords.count(s);
}

bool is_rational_literal(const std::string& s) {
    std::size_t i = 0;
    if (i < s.size() && s[i] == '-') ++i;
    std::size_t digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    if (digits == 0) return false;
    if (i == s.size()) return true;
    if (s[i] != '/') return false;
    ++i;
    digits = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i, ++digits;
    return digits > 0 && i == s.size();
}

Rational rational_of_literal(const std::string& s, std::size_t pos) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(mpz_class(s));
    mpz_class num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in literal", pos);
    return Rational(num, den);
}

// ---------------------------------------------------------------- builder --

class Builder {
public:
    Builder(Lang lang) : lang_(lang) {}

    Ptr formula(const Sexp& s) {
        if (s.is_atom) throw ParseError("expected a formula", s.pos);
        if (s.kids.empty()) throw ParseError("empty form", s.pos);
        const Sexp& head = s.kids[0];
        if (!head.is_atom) throw ParseError("expected an operator", head.pos);
        const std::string& h = head.atom;

        if (h == "=") {
            need(s, 3);
            auto [a, sa] = term(s.kids[1]);
            auto [b, sb] = term(s.kids[2]);
            if (sa != sb) throw ParseError("'=' needs operands of one sort", s.pos);
            return mk::eq(a, b);
        }
        if (h == "<") {
            if (lang_ == Lang::PA) throw ParseError("'<' is not arithmetic vocabulary", s.pos);
            need(s, 3);
            return mk::lt(scalar(s.kids[1]), scalar(s.kids[2]));
        }
        if (h == "mu") {
            if (lang_ != Lang::K) throw ParseError("'mu' only exists in the scalar language", s.pos);
            need(s, 4);
            return mk::mu(scalar(s.kids[1]), scalar(s.kids[2]), scalar(s.kids[3]));
        }
        if (h == "nu") {
            if (lang_ != Lang::K) throw ParseError("'nu' only exists in the scalar language", s.pos);
            need(s, 2);
            return mk::nu(scalar(s.kids[1]));
        }
        if (h == "not") {
            need(s, 2);
            return mk::not_(formula(s.kids[1]));
        }
        if (h == "and" || h == "or") {
            if (s.kids.size() < 2) throw ParseError("empty connective", s.pos);
            std::vector<Ptr> fs;
            for (std::size_t i = 1; i < s.kids.size(); ++i) fs.push_back(formula(s.kids[i]));
            return h == "and" ? mk::and_(std::move(fs)) : mk::or_(std::move(fs));
        }
        if (h == "imp") {
            need(s, 3);
            Ptr a = formula(s.kids[1]);
            return mk::imp(a, formula(s.kids[2]));
        }
        if (h == "forall" || h == "exists") {
            need(s, 3);
            auto [name, sort] = binder(s.kids[1]);
            scope_.push_back({name, sort});
            Ptr body = formula(s.kids[2]);
            scope_.pop_back();
            return h == "forall" ? mk::forall(name, sort, body) : mk::exists(name, sort, body);
        }
        throw ParseError("unknown form '" + h + "'", s.pos);
    }

private:
    std::pair<std::string, Sort> binder(const Sexp& s) {
        if (lang_ == Lang::PA) {
            if (!s.is_atom || !is_identifier(s.atom))
                throw ParseError("expected a variable", s.pos);
            return {s.atom, Sort::Scalar};
        }
        if (s.is_atom || s.kids.size() != 2 || !s.kids[0].is_atom || !s.kids[1].is_atom)
            throw ParseError("expected a sorted binder like (x K)", s.pos);
        if (!is_identifier(s.kids[0].atom))
            throw ParseError("expected a variable", s.kids[0].pos);
        const std::string& sort = s.kids[1].atom;
        if (sort == "K") return {s.kids[0].atom, Sort::Scalar};
        if (sort == "V") {
            if (lang_ != Lang::NS)
                throw ParseError("vector sort only exists in the normed-space language", s.kids[1].pos);
            return {s.kids[0].atom, Sort::Vector};
        }
        throw ParseError("unknown sort '" + sort + "'", s.kids[1].pos);
    }

    std::pair<Ptr, Sort> term(const Sexp& s) {
        if (s.is_atom) {
            if (s.atom == "0") return {mk::zero(), Sort::Scalar};
            if (s.atom == "1") {
                if (lang_ == Lang::PA) throw ParseError("'1' is not arithmetic vocabulary", s.pos);
                return {mk::one(), Sort::Scalar};
            }
            if (is_identifier(s.atom)) {
                for (auto it = scope_.rbegin(); it != scope_.rend(); ++it)
                    if (it->first == s.atom) return {mk::var(s.atom, it->second), it->second};
                throw ParseError("unbound variable '" + s.atom + "'", s.pos);
            }
            throw ParseError("unknown atom '" + s.atom + "'", s.pos);
        }
        if (s.kids.empty()) throw ParseError("empty term", s.pos);
        const Sexp& head = s.kids[0];
        if (!head.is_atom) throw ParseError("expected an operator", head.pos);
        const std::string& h = head.atom;

        if (h == "S") {
            if (lang_ != Lang::PA) throw ParseError("'S' is arithmetic vocabulary only", s.pos);
            need(s, 2);
            return {mk::succ(scalar(s.kids[1])), Sort::Scalar};
        }
        if (h == "plus") {
            need(s, 3);
            return {mk::plus(scalar(s.kids[1]), scalar(s.kids[2])), Sort::Scalar};
        }
        if (h == "times") {
            if (lang_ != Lang::PA)
                throw ParseError("'times' is arithmetic vocabulary only", s.pos);
            need(s, 3);
            return {mk::times(scalar(s.kids[1]), scalar(s.kids[2])), Sort::Scalar};
        }
        if (h == "minus") {
            if (lang_ == Lang::PA) throw ParseError("'minus' is not arithmetic vocabulary", s.pos);
            need(s, 3);
            return {mk::minus(scalar(s.kids[1]), scalar(s.kids[2])), Sort::Scalar};
        }
        if (h == "vplus" || h == "vminus") {
            require_ns(s);
            need(s, 3);
            Ptr a = vector(s.kids[1]), b = vector(s.kids[2]);
            return {h == "vplus" ? mk::vplus(a, b) : mk::vminus(a, b), Sort::Vector};
        }
        if (h == "scale") {
            require_ns(s);
            need(s, 3);
            if (!s.kids[1].is_atom || !is_rational_literal(s.kids[1].atom))
                throw ParseError("expected a rational literal", s.kids[1].pos);
            Rational c = rational_of_literal(s.kids[1].atom, s.kids[1].pos);
            return {mk::scale(c, vector(s.kids[2])), Sort::Vector};
        }
        if (h == "norm") {
            require_ns(s);
            need(s, 2);
            return {mk::norm(vector(s.kids[1])), Sort::Scalar};
        }
        throw ParseError("unknown term '" + h + "'", s.pos);
    }

    Ptr scalar(const Sexp& s) {
        auto [t, sort] = term(s);
        if (sort != Sort::Scalar) throw ParseError("expected a scalar term", s.pos);
        return t;
    }
    Ptr vector(const Sexp& s) {
        auto [t, sort] = term(s);
        if (sort != Sort::Vector) throw ParseError("expected a vector term", s.pos);
        return t;
    }

    void require_ns(const Sexp& s) {
        if (lang_ != Lang::NS)
            throw ParseError("vector vocabulary only exists in the normed-space language", s.pos);
    }
    static void need(const Sexp& s, std::size_t n) {
        if (s.kids.size() != n)
            throw ParseError("wrong arity", s.pos);
    }

    Lang lang_;
    std::vector<std::pair<std::string, Sort>> scope_;
};

// ---------------------------------------------------------------- printer --

void print_rec(std::ostream& out, const Ptr& f, Lang lang) {
    switch (f->op) {
        case Op::Zero: out << "0"; return;
        case Op::One: out << "1"; return;
        case Op::Var: out << f->name; return;
        case Op::Succ: out << "(S "; print_rec(out, f->kids[0], lang); out << ")"; return;
        case Op::Plus:
        case Op::Times:
        case Op::Minus:
        case Op::VPlus:
        case Op::VMinus:
        case Op::Eq:
        case Op::Lt:
        case Op::Mu:
        case Op::Nu:
        case Op::Not:
        case Op::And:
        case Op::Or:
        case Op::Imp: {
            static const std::map<Op, std::string> names = {
                {Op::Plus, "plus"}, {Op::Times, "times"}, {Op::Minus, "minus"},
                {Op::VPlus, "vplus"}, {Op::VMinus, "vminus"}, {Op::Eq, "="},
                {Op::Lt, "<"}, {Op::Mu, "mu"}, {Op::Nu, "nu"}, {Op::Not, "not"},
                {Op::And, "and"}, {Op::Or, "or"}, {Op::Imp, "imp"}};
            out << "(" << names.at(f->op);
            for (const Ptr& k : f->kids) {
                out << " ";
                print_rec(out, k, lang);
            }
            out << ")";
            return;
        }
        case Op::Scale:
            out << "(scale " << f->lit.str() << " ";
            print_rec(out, f->kids[0], lang);
            out << ")";
            return;
        case Op::Norm:
            out << "(norm ";
            print_rec(out, f->kids[0], lang);
            out << ")";
            return;
        case Op::Forall:
        case Op::Exists:
            out << "(" << (f->op == Op::Forall ? "forall" : "exists") << " ";
            if (lang == Lang::PA) out << f->name;
            else out << "(" << f->name << " " << (f->sort == Sort::Scalar ? "K" : "V") << ")";
            out << " ";
            print_rec(out, f->kids[0], lang);
            out << ")";
            return;
    }
    throw std::logic_error("print: unhandled node");
}

// -------------------------------------------------------------- validator --

Sort check_term(const Ptr& t, Lang lang,
                std::vector<std::pair<std::string, Sort>>& scope);

void fail(const std::string& msg) { throw std::invalid_argument(msg); }

void check_formula(const Ptr& f, Lang lang,
                   std::vector<std::pair<std::string, Sort>>& scope) {
    switch (f->op) {
        case Op::Eq: {
            if (f->kids.size() != 2) fail("'=' arity");
            Sort a = check_term(f->kids[0], lang, scope);
            Sort b = check_term(f->kids[1], lang, scope);
            if (a != b) fail("'=' sort mismatch");
            return;
        }
        case Op::Lt:
            if (lang == Lang::PA) fail("'<' not in arithmetic language");
            if (f->kids.size() != 2) fail("'<' arity");
            for (const Ptr& k : f->kids)
                if (check_term(k, lang, scope) != Sort::Scalar) fail("'<' needs scalars");
            return;
        case Op::Mu:
            if (lang != Lang::K) fail("'mu' only in scalar language");
            if (f->kids.size() != 3) fail("'mu' arity");
            for (const Ptr& k : f->kids)
                if (check_term(k, lang, scope) != Sort::Scalar) fail("'mu' needs scalars");
            return;
        case Op::Nu:
            if (lang != Lang::K) fail("'nu' only in scalar language");
            if (f->kids.size() != 1) fail("'nu' arity");
            if (check_term(f->kids[0], lang, scope) != Sort::Scalar) fail("'nu' needs a scalar");
            return;
        case Op::Not:
            if (f->kids.size() != 1) fail("'not' arity");
            check_formula(f->kids[0], lang, scope);
            return;
        case Op::And:
        case Op::Or:
            if (f->kids.empty()) fail("empty connective");
            for (const Ptr& k : f->kids) check_formula(k, lang, scope);
            return;
        case Op::Imp:
            if (f->kids.size() != 2) fail("'imp' arity");
            check_formula(f->kids[0], lang, scope);
            check_formula(f->kids[1], lang, scope);
            return;
        case Op::Forall:
        case Op::Exists:
            if (f->kids.size() != 1) fail("quantifier arity");
            if (f->sort == Sort::Vector && lang != Lang::NS) fail("vector binder outside NS");
            scope.push_back({f->name, f->sort});
            check_formula(f->kids[0], lang, scope);
            scope.pop_back();
            return;
        default:
            fail("expected a formula node");
    }
}

Sort check_term(const Ptr& t, Lang lang,
                std::vector<std::pair<std::string, Sort>>& scope) {
    switch (t->op) {
        case Op::Zero: return Sort::Scalar;
        case Op::One:
            if (lang == Lang::PA) fail("'1' not in arithmetic language");
            return Sort::Scalar;
        case Op::Var: {
            for (auto it = scope.rbegin(); it != scope.rend(); ++it)
                if (it->first == t->name) {
                    if (it->second != t->sort) fail("variable sort mismatch");
                    return t->sort;
                }
            return t->sort;  // free variable: trusted sort annotation
        }
        case Op::Succ:
            if (lang != Lang::PA) fail("'S' only in arithmetic language");
            if (check_term(t->kids[0], lang, scope) != Sort::Scalar) fail("'S' needs a scalar");
            return Sort::Scalar;
        case Op::Times:
            if (lang != Lang::PA) fail("'times' only in arithmetic language");
            if (t->kids.size() != 2) fail("'times' arity");
            for (const Ptr& k : t->kids)
                if (check_term(k, lang, scope) != Sort::Scalar) fail("scalar operands expected");
            return Sort::Scalar;
        case Op::Plus:
            if (t->kids.size() != 2) fail("'plus' arity");
            for (const Ptr& k : t->kids)
                if (check_term(k, lang, scope) != Sort::Scalar) fail("scalar operands expected");
            return Sort::Scalar;
        case Op::Minus:
            if (lang == Lang::PA) fail("'minus' not in arithmetic language");
            if (t->kids.size() != 2) fail("'minus' arity");
            for (const Ptr& k : t->kids)
                if (check_term(k, lang, scope) != Sort::Scalar) fail("scalar operands expected");
            return Sort::Scalar;
        case Op::VPlus:
        case Op::VMinus:
            if (lang != Lang::NS) fail("vector vocabulary only in NS");
            for (const Ptr& k : t->kids)
                if (check_term(k, lang, scope) != Sort::Vector) fail("vector operands expected");
            return Sort::Vector;
        case Op::Scale:
            if (lang != Lang::NS) fail("vector vocabulary only in NS");
            if (check_term(t->kids[0], lang, scope) != Sort::Vector) fail("vector operand expected");
            return Sort::Vector;
        case Op::Norm:
            if (lang != Lang::NS) fail("vector vocabulary only in NS");
            if (check_term(t->kids[0], lang, scope) != Sort::Vector) fail("vector operand expected");
            return Sort::Scalar;
        default:
            fail("expected a term node");
    }
    return Sort::Scalar;  // unreachable
}

}  // namespace

Ptr parse(std::string_view text, Lang lang) {
    Sexp s = Reader(text).read();
    return Builder(lang).formula(s);
}

std::string print(const Ptr& f, Lang lang) {
    std::ostringstream out;
    print_rec(out, f, lang);
    return out.str();
}

namespace {
bool alpha_rec(const Ptr& a, const Ptr& b,
               std::map<std::string, int>& ma, std::map<std::string, int>& mb,
               int depth) {
    if (a->op != b->op || a->kids.size() != b->kids.size()) return false;
    if (a->op == Op::Var) {
        auto ia = ma.find(a->name), ib = mb.find(b->name);
        if ((ia == ma.end()) != (ib == mb.end())) return false;
        if (ia != ma.end()) return ia->second == ib->second;
        return a->name == b->name && a->sort == b->sort;
    }
    if (a->op == Op::Scale && !(a->lit == b->lit)) return false;
    if (a->op == Op::Forall || a->op == Op::Exists) {
        if (a->sort != b->sort) return false;
        auto sa = ma.find(a->name) != ma.end() ? std::optional<int>(ma.at(a->name)) : std::nullopt;
        auto sb = mb.find(b->name) != mb.end() ? std::optional<int>(mb.at(b->name)) : std::nullopt;
        ma[a->name] = depth;
        mb[b->name] = depth;
        bool r = alpha_rec(a->kids[0], b->kids[0], ma, mb, depth + 1);
        if (sa) ma[a->name] = *sa; else ma.erase(a->name);
        if (sb) mb[b->name] = *sb; else mb.erase(b->name);
        return r;
    }
    for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!alpha_rec(a->kids[i], b->kids[i], ma, mb, depth)) return false;
    return true;
}

void free_vars_rec(const Ptr& f, std::vector<std::string>& bound,
                   std::vector<std::string>& out) {
    if (f->op == Op::Var) {
        for (const auto& b : bound)
            if (b == f->name) return;
        for (const auto& o : out)
            if (o == f->name) return;
        out.push_back(f->name);
        return;
    }
    if (f->op == Op::Forall || f->op == Op::Exists) {
        bound.push_back(f->name);
        free_vars_rec(f->kids[0], bound, out);
        bound.pop_back();
        return;
    }
    for (const Ptr& k : f->kids) free_vars_rec(k, bound, out);
}
}  // namespace

bool alpha_equal(const Ptr& a, const Ptr& b) {
    std::map<std::string, int> ma, mb;
    return alpha_rec(a, b, ma, mb, 0);
}

std::vector<std::string> free_vars(const Ptr& f) {
    std::vector<std::string> bound, out;
    free_vars_rec(f, bound, out);
    return out;
}

std::set<std::string> all_var_names(const Ptr& f) {
    std::set<std::string> out;
    if (f->op == Op::Var || f->op == Op::Forall || f->op == Op::Exists) out.insert(f->name);
    for (const Ptr& k : f->kids) out.merge(all_var_names(k));
    return out;
}

bool contains_op(const Ptr& f, Op op) {
    if (f->op == op) return true;
    for (const Ptr& k : f->kids)
        if (contains_op(k, op)) return true;
    return false;
}

void validate(const Ptr& f, Lang lang) {
    std::vector<std::pair<std::string, Sort>> scope;
    check_formula(f, lang, scope);
}

}  // namespace normq::ast

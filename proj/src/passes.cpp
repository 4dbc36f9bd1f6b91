#include "normq/passes.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace normq {

using namespace ast;

namespace {

/// Fresh-name supply over a reserved prefix, skipping names already in use.
class Freshener {
public:
    Freshener(std::string prefix, const std::set<std::string>& used)
        : prefix_(std::move(prefix)), used_(used) {}

    std::string next() {
        for (;;) {
            std::string name = prefix_ + std::to_string(++counter_);
            if (!used_.count(name)) return name;
        }
    }

private:
    std::string prefix_;
    const std::set<std::string>& used_;
    std::size_t counter_ = 0;
};

bool times_free(const Ptr& t) { return !contains_op(t, Op::Times); }

bool is_normal_product_atom(const Ptr& atom) {
    const Ptr& l = atom->kids[0];
    const Ptr& r = atom->kids[1];
    auto product_of_free = [](const Ptr& t) {
        return t->op == Op::Times && times_free(t->kids[0]) && times_free(t->kids[1]);
    };
    return (product_of_free(l) && times_free(r)) || (times_free(l) && product_of_free(r));
}

/// Innermost-rightmost product node: the last node in preorder whose
/// operands are product-free.
const Node* pick_product(const Ptr& t) {
    const Node* found = nullptr;
    auto walk = [&](auto&& self, const Ptr& n) -> void {
        if (n->op == Op::Times && times_free(n->kids[0]) && times_free(n->kids[1]))
            found = n.get();
        for (const Ptr& k : n->kids) self(self, k);
    };
    walk(walk, t);
    return found;
}

Ptr replace_node(const Ptr& t, const Node* target, const Ptr& replacement) {
    if (t.get() == target) return replacement;
    bool changed = false;
    std::vector<Ptr> kids;
    kids.reserve(t->kids.size());
    for (const Ptr& k : t->kids) {
        Ptr nk = replace_node(k, target, replacement);
        changed = changed || nk != k;
        kids.push_back(std::move(nk));
    }
    if (!changed) return t;
    auto n = std::make_shared<Node>(*t);
    n->kids = std::move(kids);
    return n;
}

// pass (ii): unnest products inside equation atoms.
Ptr unnest(const Ptr& f, Freshener& fresh) {
    switch (f->op) {
        case Op::Eq: {
            if (times_free(f) || is_normal_product_atom(f)) return f;
            std::vector<Ptr> eqs;
            std::vector<std::string> names;
            Ptr atom = f;
            while (!times_free(atom)) {
                const Node* target = pick_product(atom);
                std::string name = fresh.next();
                Ptr v = mk::var(name);
                // Recover the picked node as an owned Ptr by identity.
                auto find = [&](auto&& self, const Ptr& n) -> Ptr {
                    if (n.get() == target) return n;
                    for (const Ptr& k : n->kids)
                        if (Ptr r = self(self, k)) return r;
                    return nullptr;
                };
                Ptr product = find(find, atom);
                eqs.push_back(mk::eq(v, product));
                names.push_back(name);
                atom = replace_node(atom, target, v);
            }
            // Each extraction equation sits directly under its own binder,
            // so a scan of the binder's domain prunes at the first mismatch.
            Ptr body = atom;
            for (std::size_t i = names.size(); i-- > 0;)
                body = mk::exists(names[i], Sort::Scalar, mk::and_({eqs[i], body}));
            return body;
        }
        case Op::Not:
        case Op::And:
        case Op::Or:
        case Op::Imp:
        case Op::Forall:
        case Op::Exists: {
            std::vector<Ptr> kids;
            kids.reserve(f->kids.size());
            for (const Ptr& k : f->kids) kids.push_back(unnest(k, fresh));
            auto n = std::make_shared<Node>(*f);
            n->kids = std::move(kids);
            return n;
        }
        default:
            return f;
    }
}

// pass (iii): guard every quantifier with nu.
Ptr relativize(const Ptr& f) {
    switch (f->op) {
        case Op::Forall:
        case Op::Exists: {
            Ptr body = relativize(f->kids[0]);
            Ptr guard = mk::nu(mk::var(f->name, f->sort));
            Ptr guarded = f->op == Op::Forall ? mk::imp(guard, body)
                                              : mk::and_({guard, body});
            auto n = std::make_shared<Node>(*f);
            n->kids = {guarded};
            return n;
        }
        case Op::Not:
        case Op::And:
        case Op::Or:
        case Op::Imp: {
            std::vector<Ptr> kids;
            for (const Ptr& k : f->kids) kids.push_back(relativize(k));
            auto n = std::make_shared<Node>(*f);
            n->kids = std::move(kids);
            return n;
        }
        default:
            return f;
    }
}

// pass (iv): S(t) -> t + 1, everywhere.
Ptr drop_succ(const Ptr& f) {
    std::vector<Ptr> kids;
    kids.reserve(f->kids.size());
    bool changed = false;
    for (const Ptr& k : f->kids) {
        Ptr nk = drop_succ(k);
        changed = changed || nk != k;
        kids.push_back(std::move(nk));
    }
    if (f->op == Op::Succ) return mk::plus(kids[0], mk::one());
    if (!changed) return f;
    auto n = std::make_shared<Node>(*f);
    n->kids = std::move(kids);
    return n;
}

// pass (v): product equations become mu atoms.
Ptr to_mu(const Ptr& f) {
    if (f->op == Op::Eq) {
        const Ptr& l = f->kids[0];
        const Ptr& r = f->kids[1];
        if (r->op == Op::Times) return mk::mu(r->kids[0], r->kids[1], l);
        if (l->op == Op::Times) return mk::mu(l->kids[0], l->kids[1], r);
        return f;
    }
    std::vector<Ptr> kids;
    bool changed = false;
    for (const Ptr& k : f->kids) {
        Ptr nk = to_mu(k);
        changed = changed || nk != k;
        kids.push_back(std::move(nk));
    }
    if (!changed) return f;
    auto n = std::make_shared<Node>(*f);
    n->kids = std::move(kids);
    return n;
}

}  // namespace

Ptr translate(const Ptr& pa_sentence) {
    validate(pa_sentence, Lang::PA);
    if (!free_vars(pa_sentence).empty())
        throw std::invalid_argument("translate: input must be a closed sentence");
    std::set<std::string> used = all_var_names(pa_sentence);
    Freshener fresh("_k", used);
    Ptr f = unnest(pa_sentence, fresh);  // (ii); (i) is implicit: one sort
    f = relativize(f);                   // (iii)
    f = drop_succ(f);                    // (iv)
    f = to_mu(f);                        // (v)
    validate(f, Lang::K);
    return f;
}

namespace {

Ptr two() { return mk::plus(mk::one(), mk::one()); }
Ptr four() { return mk::plus(two(), two()); }
Ptr dbl(const Ptr& t) { return mk::plus(t, t); }

/// Expansion templates for the definable-predicate tower. Vector and
/// scalar quantifier prefixes use fresh names from the shared supply.
class Tower {
public:
    Tower(Freshener& vecs, Freshener& scalars) : vecs_(vecs), scalars_(scalars) {}

    // EP(p): p is an extreme point of the sphere through p.
    Ptr ep(const Ptr& p) {
        Ptr u = vvar(), w = vvar();
        Ptr premise = mk::and_({
            mk::eq(mk::norm(u), mk::norm(p)),
            mk::eq(mk::norm(p), mk::norm(w)),
            mk::eq(p, mk::scale(Rational(1, 2), mk::vplus(u, w))),
        });
        Ptr conclusion = mk::and_({mk::eq(u, p), mk::eq(p, w)});
        return mk::forall(u->name, Sort::Vector,
                          mk::forall(w->name, Sort::Vector, mk::imp(premise, conclusion)));
    }

    // SEP(p): extreme and not equidistant from every other extreme point.
    Ptr sep(const Ptr& p) {
        Ptr u = vvar(), w = vvar();
        Ptr body = mk::and_({
            ep(u),
            ep(w),
            mk::eq(mk::norm(u), mk::norm(w)),
            mk::eq(mk::norm(w), mk::norm(p)),
            mk::not_(mk::eq(mk::zero(), mk::norm(mk::vminus(p, u)))),
            mk::not_(mk::eq(mk::norm(mk::vminus(p, u)), mk::norm(mk::vminus(p, w)))),
            mk::not_(mk::eq(mk::norm(mk::vminus(p, w)), mk::zero())),
        });
        return mk::and_({ep(p), mk::exists(u->name, Sort::Vector,
                                           mk::exists(w->name, Sort::Vector, body))});
    }

    // ADS(p,q): adjacent special extreme points of one sphere.
    Ptr ads(const Ptr& p, const Ptr& q) {
        return mk::and_({
            sep(p),
            sep(q),
            mk::not_(mk::eq(p, q)),
            mk::eq(mk::norm(p), mk::norm(q)),
            mk::eq(mk::norm(q), mk::norm(mk::scale(Rational(1, 2), mk::vplus(p, q)))),
        });
    }

    // HPV(p_1..p_n): vertices of an inscribed Hamiltonian path.
    Ptr hpv(const std::vector<Ptr>& ps) {
        std::vector<Ptr> parts;
        for (std::size_t i = 0; i + 1 < ps.size(); ++i) parts.push_back(ads(ps[i], ps[i + 1]));
        for (std::size_t i = 0; i < ps.size(); ++i)
            for (std::size_t j = i + 1; j < ps.size(); ++j)
                parts.push_back(mk::not_(mk::eq(ps[i], ps[j])));
        return mk::and_(std::move(parts));
    }

    // HPL(x_1..x_n): the x_i are the successive edge lengths of such a path.
    Ptr hpl(const std::vector<Ptr>& xs) {
        std::vector<Ptr> ps;
        for (std::size_t i = 0; i < xs.size() + 1; ++i) ps.push_back(vvar());
        std::vector<Ptr> parts{hpv(ps)};
        for (std::size_t i = 0; i < xs.size(); ++i)
            parts.push_back(mk::eq(xs[i], mk::norm(mk::vminus(ps[i + 1], ps[i]))));
        Ptr body = mk::and_(std::move(parts));
        for (auto it = ps.rbegin(); it != ps.rend(); ++it)
            body = mk::exists((*it)->name, Sort::Vector, body);
        return body;
    }

    // MGI(x,y,z): exists u. HPL(1,x,z,y,u) and 1 < x < z > y > u < 1.
    Ptr mgi(const Ptr& x, const Ptr& y, const Ptr& z) {
        Ptr u = svar();
        Ptr body = mk::and_({
            hpl({mk::one(), x, z, y, u}),
            mk::lt(mk::one(), x),
            mk::lt(x, z),
            mk::lt(y, z),
            mk::lt(u, y),
            mk::lt(u, mk::one()),
        });
        return mk::exists(u->name, Sort::Scalar, body);
    }

    // M(x,y,z) := MGI(x+2, y+2, 4+2x+2y+z).
    Ptr m(const Ptr& x, const Ptr& y, const Ptr& z) {
        return mgi(mk::plus(x, two()), mk::plus(y, two()),
                   mk::plus(mk::plus(mk::plus(four(), dbl(x)), dbl(y)), z));
    }

private:
    Ptr vvar() { return mk::var(vecs_.next(), Sort::Vector); }
    Ptr svar() { return mk::var(scalars_.next(), Sort::Scalar); }

    Freshener& vecs_;
    Freshener& scalars_;
};

Ptr expand_rec(const Ptr& f, Tower& tower) {
    if (f->op == Op::Mu)
        return tower.m(f->kids[0], f->kids[1], f->kids[2]);
    if (f->op == Op::Nu)
        return tower.m(f->kids[0], mk::zero(), mk::zero());
    if (f->kids.empty()) return f;
    std::vector<Ptr> kids;
    bool changed = false;
    for (const Ptr& k : f->kids) {
        Ptr nk = expand_rec(k, tower);
        changed = changed || nk != k;
        kids.push_back(std::move(nk));
    }
    if (!changed) return f;
    auto n = std::make_shared<Node>(*f);
    n->kids = std::move(kids);
    return n;
}

}  // namespace

Ptr expand_mu(const Ptr& k_formula) {
    std::set<std::string> used = all_var_names(k_formula);
    Freshener vecs("_p", used), scalars("_s", used);
    Tower tower(vecs, scalars);
    Ptr f = expand_rec(k_formula, tower);
    validate(f, Lang::NS);
    return f;
}

Builtins builtin_sentences() {
    using namespace mk;
    auto K = Sort::Scalar;
    Builtins b;

    auto x = [] { return var("x"); };
    auto y = [] { return var("y"); };
    auto z = [] { return var("z"); };
    auto w = [] { return var("w"); };

    // Q1: S injective.
    b.q[0] = forall("x", K, forall("y", K,
                 imp(eq(succ(x()), succ(y())), eq(x(), y()))));
    // Q2: 0 is not a successor.
    b.q[1] = forall("x", K, not_(eq(zero(), succ(x()))));
    // Q3: every nonzero number is a successor.
    b.q[2] = forall("x", K, imp(not_(eq(x(), zero())),
                                exists("y", K, eq(x(), succ(y())))));
    // Q4: x + 0 = x.
    b.q[3] = forall("x", K, eq(plus(x(), zero()), x()));
    // Q5: x + S(y) = S(x + y).
    b.q[4] = forall("x", K, forall("y", K,
                 eq(plus(x(), succ(y())), succ(plus(x(), y())))));
    // Q6: x * 0 = 0.
    b.q[5] = forall("x", K, eq(times(x(), zero()), zero()));
    // Q7: x * S(y) = x * y + x.
    b.q[6] = forall("x", K, forall("y", K,
                 eq(times(x(), succ(y())), plus(times(x(), y()), x()))));

    // OK1: nu(0).
    b.ok_part[0] = nu(zero());
    // OK2: nu(x) -> x >= 0 and nu(x+1); x >= 0 is expanded as not(x < 0).
    b.ok_part[1] = forall("x", K, imp(nu(x()),
                       and_({not_(lt(x(), zero())), nu(plus(x(), one()))})));
    // OK3: nu(x) and x > 0 -> nu(x-1).
    b.ok_part[2] = forall("x", K, imp(and_({nu(x()), lt(zero(), x())}),
                                      nu(minus(x(), one()))));
    // OK4: nu(x) and nu(y) -> exactly one z with mu(x,y,z).
    b.ok_part[3] = forall("x", K, forall("y", K,
        imp(and_({nu(x()), nu(y())}),
            exists("z", K, and_({mu(x(), y(), z()),
                forall("w", K, imp(mu(x(), y(), w()), eq(w(), z())))})))));
    // OK5: mu(x,y,z) -> nu(x) and nu(y) and nu(z).
    b.ok_part[4] = forall("x", K, forall("y", K, forall("z", K,
        imp(mu(x(), y(), z()), and_({nu(x()), nu(y()), nu(z())})))));
    // OK6: mu(x,y+1,w) and mu(x,y,z) -> w = z + x.
    b.ok_part[5] = forall("x", K, forall("y", K, forall("w", K, forall("z", K,
        imp(and_({mu(x(), plus(y(), one()), w()), mu(x(), y(), z())}),
            eq(w(), plus(z(), x())))))));

    b.ok = and_({b.ok_part[0], b.ok_part[1], b.ok_part[2],
                 b.ok_part[3], b.ok_part[4], b.ok_part[5]});

    // nu(x) := mu(x, 0, 0), stated as a biconditional.
    b.nu_def = forall("x", K, and_({imp(nu(x()), mu(x(), zero(), zero())),
                                    imp(mu(x(), zero(), zero()), nu(x()))}));
    return b;
}

}  // namespace normq

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "normq/formula.hpp"
#include "normq/predicates.hpp"

namespace normq {

inline std::vector<Rational> default_eval_extras() {
    return {Rational(-1), Rational(1, 2), Rational(7, 3)};
}

/// Finite-model falsification harness for scalar-language sentences.
/// Universal quantifiers range over {0..bound} plus the extra samples;
/// existential quantifiers search the larger set {0..(bound+1)^2} plus the
/// extras, which covers sums and products of universally chosen pairs (a
/// uniform domain would spuriously falsify totality statements at the
/// domain edge). mu and nu are decided by the multiplication-graph
/// predicate; vector-sorted constructs are rejected.
template <OrderedField K>
class BoundedEvaluator {
public:
    BoundedEvaluator(std::size_t bound, std::vector<K> extras) {
        for (std::size_t i = 0; i <= bound; ++i)
            forall_dom_.push_back(K(Rational(static_cast<long>(i))));
        std::size_t ebound = (bound + 1) * (bound + 1);
        for (std::size_t i = 0; i <= ebound; ++i)
            exists_dom_.push_back(K(Rational(static_cast<long>(i))));
        for (const K& x : extras) {
            forall_dom_.push_back(x);
            exists_dom_.push_back(x);
        }
    }

    bool eval(const ast::Ptr& f) { return formula(f); }

private:
    using Op = ast::Op;

    K term(const ast::Ptr& t) {
        switch (t->op) {
            case Op::Zero: return K(Rational(0));
            case Op::One: return K(Rational(1));
            case Op::Var: {
                auto it = env_.find(t->name);
                if (it == env_.end())
                    throw std::invalid_argument("eval: free variable " + t->name);
                return it->second;
            }
            case Op::Plus: return term(t->kids[0]) + term(t->kids[1]);
            case Op::Minus: return term(t->kids[0]) - term(t->kids[1]);
            default:
                throw std::invalid_argument(
                    "eval: unsupported term (vector-level formulas are export-only)");
        }
    }

    bool formula(const ast::Ptr& f) {
        switch (f->op) {
            case Op::Eq: return term(f->kids[0]) == term(f->kids[1]);
            case Op::Lt: return term(f->kids[0]) < term(f->kids[1]);
            case Op::Mu:
                return mult_graph_decide(term(f->kids[0]), term(f->kids[1]),
                                         term(f->kids[2]));
            case Op::Nu: {
                K zero{Rational(0)};
                return mult_graph_decide(term(f->kids[0]), zero, zero);
            }
            case Op::Not: return !formula(f->kids[0]);
            case Op::And:
                for (const auto& k : f->kids)
                    if (!formula(k)) return false;
                return true;
            case Op::Or:
                for (const auto& k : f->kids)
                    if (formula(k)) return true;
                return false;
            case Op::Imp: return !formula(f->kids[0]) || formula(f->kids[1]);
            case Op::Forall:
            case Op::Exists: {
                if (f->sort != ast::Sort::Scalar)
                    throw std::invalid_argument(
                        "eval: vector quantification is not evaluable; expanded "
                        "formulas are export-only");
                bool is_forall = f->op == Op::Forall;
                const auto& dom = is_forall ? forall_dom_ : exists_dom_;
                auto saved = env_.find(f->name) != env_.end()
                                 ? std::optional<K>(env_.at(f->name))
                                 : std::nullopt;
                bool result = is_forall;
                for (const K& v : dom) {
                    env_[f->name] = v;
                    bool b = formula(f->kids[0]);
                    if (b != is_forall) {
                        result = b;
                        break;
                    }
                }
                if (saved) env_[f->name] = *saved;
                else env_.erase(f->name);
                return result;
            }
            default:
                throw std::invalid_argument("eval: not a scalar-language formula");
        }
    }

    std::vector<K> forall_dom_, exists_dom_;
    std::map<std::string, K> env_;
};

template <OrderedField K>
bool eval_bounded(const ast::Ptr& f, std::size_t bound, std::vector<K> extras) {
    return BoundedEvaluator<K>(bound, std::move(extras)).eval(f);
}

inline bool eval_bounded(const ast::Ptr& f, std::size_t bound) {
    return eval_bounded<Rational>(f, bound, default_eval_extras());
}

}  // namespace normq

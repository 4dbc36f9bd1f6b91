#pragma once

#include <array>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "normq/rational.hpp"

namespace normq::ast {

enum class Op {
    // terms
    Zero, One, Var, Succ, Plus, Times, Minus,
    VPlus, VMinus, Scale, Norm,
    // atoms
    Eq, Lt, Mu, Nu,
    // formulas
    Not, And, Or, Imp, Forall, Exists,
};

enum class Sort { Scalar, Vector };

struct Node;
using Ptr = std::shared_ptr<const Node>;

/// Immutable s-expression AST shared by the three languages:
///   pa  - arithmetic: 0, S, plus, times, =, connectives, quantifiers
///   k   - scalar sort with mu/nu primitives: 0, 1, plus, minus, =, <
///   ns  - purely additive two-sorted normed-space language
struct Node {
    Op op;
    std::string name;          // Var: variable name; Forall/Exists: binder name
    Sort sort = Sort::Scalar;  // Var/binder sort
    Rational lit;              // Scale: the rational constant
    std::vector<Ptr> kids;
};

enum class Lang { PA, K, NS };

namespace mk {
Ptr zero();
Ptr one();
Ptr var(std::string name, Sort sort = Sort::Scalar);
Ptr succ(Ptr t);
Ptr plus(Ptr a, Ptr b);
Ptr times(Ptr a, Ptr b);
Ptr minus(Ptr a, Ptr b);
Ptr vplus(Ptr a, Ptr b);
Ptr vminus(Ptr a, Ptr b);
Ptr scale(Rational c, Ptr v);
Ptr norm(Ptr v);
Ptr eq(Ptr a, Ptr b);
Ptr lt(Ptr a, Ptr b);
Ptr mu(Ptr a, Ptr b, Ptr c);
Ptr nu(Ptr a);
Ptr not_(Ptr f);
Ptr and_(std::vector<Ptr> fs);
Ptr or_(std::vector<Ptr> fs);
Ptr imp(Ptr a, Ptr b);
Ptr forall(std::string x, Sort s, Ptr body);
Ptr exists(std::string x, Sort s, Ptr body);
}  // namespace mk

/// Parses the s-expression grammar of the given language; checks arity,
/// per-language vocabulary, sorts and variable scoping. Unbound variables
/// and syntax errors raise ParseError with a byte position.
Ptr parse(std::string_view text, Lang lang);

/// Canonical s-expression text; parse(print(f)) reproduces f node for node.
/// PA prints bare binders "(forall x ...)", the sorted languages print
/// "(forall (x K) ...)" / "(exists (v V) ...)".
std::string print(const Ptr& f, Lang lang);

/// Structural equality up to consistent renaming of bound variables.
bool alpha_equal(const Ptr& a, const Ptr& b);

/// Free variables (names), in first-occurrence order.
std::vector<std::string> free_vars(const Ptr& f);

/// All variable names occurring anywhere (free, bound or as binders).
std::set<std::string> all_var_names(const Ptr& f);

/// True if some subterm/subformula has the given op.
bool contains_op(const Ptr& f, Op op);

/// Validates f against a language's vocabulary and sort rules; throws
/// std::invalid_argument on violation.
void validate(const Ptr& f, Lang lang);

}  // namespace normq::ast

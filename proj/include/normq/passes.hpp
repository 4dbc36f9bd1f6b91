#pragma once

#include <array>

#include "normq/formula.hpp"

namespace normq {

/// The canonical arithmetic axioms Q1..Q7, the OK sentence with its six
/// conjuncts individually addressable, and the defining equivalence of nu.
struct Builtins {
    std::array<ast::Ptr, 7> q;        // PA sentences
    std::array<ast::Ptr, 6> ok_part;  // K sentences OK1..OK6
    ast::Ptr ok;                      // their conjunction
    ast::Ptr nu_def;                  // forall x: nu(x) <-> mu(x,0,0), as two imps
};

Builtins builtin_sentences();

/// Compiles an arithmetic sentence into the scalar language with the mu
/// primitive, applying in order: (i) sort labeling, (ii) unnesting of
/// times, (iii) relativization of every quantifier by nu, (iv) successor
/// elimination S(t) -> t + 1, (v) replacement of product equations by mu.
///
/// Unnesting rule (deterministic): an atom that is already of the shape
/// t = x*y or x*y = t with x, y, t product-free is left alone; otherwise
/// every product node is extracted, innermost and rightmost first, into a
/// fresh existential placed directly around the rewritten atom, with each
/// extraction equation conjoined immediately under its own binder. Fresh
/// variables are drawn from the reserved "_k<N>" namespace, skipping any
/// names already present in the input.
///
/// Throws std::invalid_argument if the input is not a closed PA sentence.
ast::Ptr translate(const ast::Ptr& pa_sentence);

/// Macro-expands mu (and nu) through the definable-predicate tower down to
/// the purely additive normed-space language; the result contains no mu or
/// nu. Fresh vector variables "_p<N>" and scalar variables "_s<N>" are
/// capture-avoiding by construction. Idempotent on mu-free formulas.
ast::Ptr expand_mu(const ast::Ptr& k_formula);

}  // namespace normq

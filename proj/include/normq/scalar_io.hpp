#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "normq/field.hpp"

namespace normq {

/// Parse/print error with a byte offset into the offending input.
struct ParseError : std::runtime_error {
    ParseError(const std::string& what, std::size_t pos)
        : std::runtime_error(what + " (at position " + std::to_string(pos) + ")"),
          position(pos) {}
    std::size_t position;
};

// Textual encoding of scalars. Rationals print as "n/d" or "n"; Q(e)
// elements print as polynomial ratios in ascending powers of e, e.g.
// "(1 - 2*e + e^2)/(3 + e)". parse(print(x)) == x exactly.
std::string scalar_text(const Rational& x);
std::string scalar_text(const RatFunc& x);
std::string scalar_text(const AnyScalar& x);

Rational parse_rational(std::string_view text);
RatFunc parse_ratfunc(std::string_view text);
AnyScalar parse_scalar(std::string_view text, FieldKind kind);

/// Raw pieces of a vector literal "(x, y)" or "(x, y; w1, ..., wn)".
struct VecLiteral {
    std::string x, y;
    std::vector<std::string> w;
};

VecLiteral split_vector_literal(std::string_view text);

}  // namespace normq

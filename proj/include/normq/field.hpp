#pragma once

#include <compare>
#include <concepts>
#include <optional>
#include <stdexcept>
#include <variant>

#include "normq/ratfunc.hpp"
#include "normq/rational.hpp"

namespace normq {

/// The scalar interface the geometry and predicate layers are written
/// against. Both Rational (archimedean) and RatFunc (non-archimedean)
/// satisfy it; all operations are exact.
template <class K>
concept OrderedField =
    std::regular<K> &&
    std::constructible_from<K, const Rational&> &&
    requires(const K a, const K b) {
        { a + b } -> std::same_as<K>;
        { a - b } -> std::same_as<K>;
        { a * b } -> std::same_as<K>;
        { a / b } -> std::same_as<K>;
        { -a } -> std::same_as<K>;
        { a < b } -> std::convertible_to<bool>;
        { a.sign() } -> std::convertible_to<int>;
        { a.abs() } -> std::same_as<K>;
        { a.standard_part() } -> std::same_as<std::optional<Rational>>;
        { K::archimedean } -> std::convertible_to<bool>;
    };

static_assert(OrderedField<Rational>);
static_assert(OrderedField<RatFunc>);

enum class FieldKind { Rationals, RationalFunctions };

/// Descriptor of the ambient scalar field. Invariant: archimedean exactly
/// for the rationals.
struct FieldDesc {
    FieldKind kind;
    bool archimedean;
};

inline constexpr FieldDesc kFieldRationals{FieldKind::Rationals, true};
inline constexpr FieldDesc kFieldRationalFunctions{FieldKind::RationalFunctions, false};

inline FieldDesc field_desc(FieldKind kind) {
    return kind == FieldKind::Rationals ? kFieldRationals : kFieldRationalFunctions;
}

/// Runtime-tagged scalar for the I/O boundary (CLI, bindings). Inside the
/// library the field is a template parameter instead.
using AnyScalar = std::variant<Rational, RatFunc>;

inline FieldKind kind_of(const AnyScalar& s) {
    return std::holds_alternative<Rational>(s) ? FieldKind::Rationals
                                               : FieldKind::RationalFunctions;
}

enum class ArithOp { Add, Sub, Mul, Div, Neg, Abs };

namespace detail {
template <class F>
auto with_same_field(const AnyScalar& a, const AnyScalar& b, F&& f) {
    if (kind_of(a) != kind_of(b))
        throw std::invalid_argument("scalars from different fields");
    if (auto* ra = std::get_if<Rational>(&a))
        return f(*ra, std::get<Rational>(b));
    return f(std::get<RatFunc>(a), std::get<RatFunc>(b));
}
}  // namespace detail

inline AnyScalar field_arith(ArithOp op, const AnyScalar& a,
                             const std::optional<AnyScalar>& b = std::nullopt) {
    auto unary = [&](auto&& x) -> AnyScalar {
        using T = std::decay_t<decltype(x)>;
        switch (op) {
            case ArithOp::Neg: return AnyScalar(T(-x));
            case ArithOp::Abs: return AnyScalar(x.abs());
            default: throw std::invalid_argument("binary op needs two operands");
        }
    };
    if (op == ArithOp::Neg || op == ArithOp::Abs)
        return std::visit(unary, a);
    if (!b) throw std::invalid_argument("binary op needs two operands");
    return detail::with_same_field(a, *b, [&](const auto& x, const auto& y) -> AnyScalar {
        switch (op) {
            case ArithOp::Add: return AnyScalar(x + y);
            case ArithOp::Sub: return AnyScalar(x - y);
            case ArithOp::Mul: return AnyScalar(x * y);
            case ArithOp::Div: return AnyScalar(x / y);
            default: throw std::logic_error("unreachable");
        }
    });
}

inline std::strong_ordering field_compare(const AnyScalar& a, const AnyScalar& b) {
    return detail::with_same_field(a, b, [](const auto& x, const auto& y) {
        return x <=> y;
    });
}

inline std::optional<Rational> standard_part(const AnyScalar& a) {
    return std::visit([](const auto& x) { return x.standard_part(); }, a);
}

}  // namespace normq

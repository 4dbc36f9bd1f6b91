#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <utility>

#include "normq/poly.hpp"
#include "normq/rational.hpp"

namespace normq {

/// Element of the non-archimedean ordered field Q(e), e a fixed positive
/// infinitesimal. Represented as a reduced quotient of polynomials in e.
///
/// Canonical form: numerator and denominator are coprime, have integer
/// coefficients with joint content 1, and the denominator's lowest-degree
/// nonzero coefficient is positive. The order is the one induced by
/// evaluating at e -> 0+: the sign of an element is the sign of the lowest
/// nonzero coefficient of its (canonical) numerator. In particular
/// 0 < e^n < q for every positive rational q and every n >= 1.
class RatFunc {
public:
    RatFunc() : num_(), den_(Poly::one()) {}
    RatFunc(const Rational& r) : num_(r), den_(Poly::one()) { normalize(); }
    RatFunc(int n) : RatFunc(Rational(n)) {}
    RatFunc(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw std::domain_error("RatFunc: zero denominator");
        normalize();
    }

    static RatFunc eps() { return RatFunc(Poly::eps(), Poly::one()); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }

    int sign() const {
        if (num_.is_zero()) return 0;
        return num_.lowest_coeff().sign();  // den is positive near 0+
    }

    RatFunc operator-() const { return RatFunc(unchecked{}, -num_, den_); }

    friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator-(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
        return RatFunc(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RatFunc operator/(const RatFunc& a, const RatFunc& b) {
        if (b.is_zero()) throw std::domain_error("RatFunc: division by zero");
        return RatFunc(a.num_ * b.den_, a.den_ * b.num_);
    }

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    friend bool operator==(const RatFunc& a, const RatFunc& b) {
        return a.num_ == b.num_ && a.den_ == b.den_;  // canonical forms
    }
    friend std::strong_ordering operator<=>(const RatFunc& a, const RatFunc& b) {
        int s = (a - b).sign();
        if (s < 0) return std::strong_ordering::less;
        if (s > 0) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

    RatFunc abs() const { return sign() < 0 ? -*this : *this; }

    /// The unique rational infinitesimally close to this element, or nullopt
    /// if the element is infinite (negative e-adic valuation).
    std::optional<Rational> standard_part() const {
        if (num_.is_zero()) return Rational(0);
        std::size_t a = num_.valuation();
        std::size_t b = den_.valuation();
        if (a < b) return std::nullopt;
        if (a > b) return Rational(0);
        return num_.coeff(a) / den_.coeff(b);
    }

    /// Exact rational value if this element lies in Q, else nullopt.
    std::optional<Rational> as_rational() const {
        if (num_.degree() > 0 || den_.degree() > 0) return std::nullopt;
        if (num_.is_zero()) return Rational(0);
        return num_.coeff(0) / den_.coeff(0);
    }

    bool is_infinitesimal() const {
        auto st = standard_part();
        return st.has_value() && st->is_zero() && !is_zero();
    }

    static constexpr bool archimedean = false;

private:
    struct unchecked {};
    RatFunc(unchecked, Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {}

    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly::one();
            return;
        }
        Poly g = Poly::gcd(num_, den_);
        if (g.degree() > 0) {
            num_ = Poly::divmod(num_, g).first;
            den_ = Poly::divmod(den_, g).first;
        }
        // Scale so that all coefficients are integers with joint content 1.
        mpz_class l(1);
        for (const auto& c : num_.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
        for (const auto& c : den_.coeffs()) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.denominator().get_mpz_t());
        num_ = num_.scaled(Rational(l));
        den_ = den_.scaled(Rational(l));
        mpz_class g2(0);
        for (const auto& c : num_.coeffs()) mpz_gcd(g2.get_mpz_t(), g2.get_mpz_t(), c.numerator().get_mpz_t());
        for (const auto& c : den_.coeffs()) mpz_gcd(g2.get_mpz_t(), g2.get_mpz_t(), c.numerator().get_mpz_t());
        if (g2 > 1) {
            Rational inv = Rational(g2).reciprocal();
            num_ = num_.scaled(inv);
            den_ = den_.scaled(inv);
        }
        if (den_.lowest_coeff().sign() < 0) {
            num_ = -num_;
            den_ = -den_;
        }
    }

    Poly num_, den_;
};

inline RatFunc abs(const RatFunc& x) { return x.abs(); }

}  // namespace normq

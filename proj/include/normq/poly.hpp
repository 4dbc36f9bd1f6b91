#pragma once

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

#include "normq/rational.hpp"

namespace normq {

/// Dense univariate polynomial over Rational (indeterminate: the
/// infinitesimal generator, written "e" in the textual encoding).
/// Invariant: no trailing zero coefficients; zero polynomial has no
/// coefficients at all.
class Poly {
public:
    Poly() = default;
    explicit Poly(Rational c) {
        if (!c.is_zero()) c_.push_back(std::move(c));
    }
    explicit Poly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

    static Poly one() { return Poly(Rational(1)); }
    static Poly eps() { return Poly(std::vector<Rational>{Rational(0), Rational(1)}); }

    bool is_zero() const { return c_.empty(); }
    /// Degree; -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    /// Index of the lowest nonzero coefficient (e-adic valuation).
    /// Precondition: nonzero.
    std::size_t valuation() const {
        for (std::size_t i = 0; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return i;
        throw std::logic_error("Poly::valuation of zero polynomial");
    }

    Rational coeff(std::size_t i) const {
        return i < c_.size() ? c_[i] : Rational(0);
    }
    const std::vector<Rational>& coeffs() const { return c_; }

    Rational lowest_coeff() const { return c_[valuation()]; }
    Rational leading_coeff() const {
        if (is_zero()) throw std::logic_error("Poly::leading_coeff of zero");
        return c_.back();
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) + b.coeff(i);
        return Poly(std::move(r));
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        std::vector<Rational> r(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < r.size(); ++i) r[i] = a.coeff(i) - b.coeff(i);
        return Poly(std::move(r));
    }
    Poly operator-() const {
        std::vector<Rational> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = -c_[i];
        return Poly(std::move(r));
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        std::vector<Rational> r(a.c_.size() + b.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j)
                r[i + j] += a.c_[i] * b.c_[j];
        return Poly(std::move(r));
    }
    Poly scaled(const Rational& s) const {
        if (s.is_zero()) return Poly();
        std::vector<Rational> r(c_.size());
        for (std::size_t i = 0; i < c_.size(); ++i) r[i] = c_[i] * s;
        return Poly(std::move(r));
    }

    friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

    /// Euclidean division over the coefficient field: a = q*b + r, deg r < deg b.
    static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
        if (b.is_zero()) throw std::domain_error("Poly: division by zero polynomial");
        Poly rem = a;
        std::vector<Rational> q;
        if (a.degree() >= b.degree())
            q.assign(static_cast<std::size_t>(a.degree() - b.degree()) + 1, Rational(0));
        Rational lead = b.leading_coeff();
        while (!rem.is_zero() && rem.degree() >= b.degree()) {
            std::size_t shift = static_cast<std::size_t>(rem.degree() - b.degree());
            Rational f = rem.leading_coeff() / lead;
            q[shift] = f;
            // rem -= f * x^shift * b
            std::vector<Rational> sub(shift + b.c_.size(), Rational(0));
            for (std::size_t i = 0; i < b.c_.size(); ++i) sub[shift + i] = b.c_[i] * f;
            rem = rem - Poly(std::move(sub));
        }
        return {Poly(std::move(q)), rem};
    }

    /// Monic gcd (Euclid); gcd(0,0) = 0.
    static Poly gcd(Poly a, Poly b) {
        while (!b.is_zero()) {
            Poly r = divmod(a, b).second;
            a = std::move(b);
            b = std::move(r);
        }
        if (a.is_zero()) return a;
        return a.scaled(a.leading_coeff().reciprocal());
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    std::vector<Rational> c_;
};

}  // namespace normq

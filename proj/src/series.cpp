#include "normq/series.hpp"

#include <numeric>
#include <stdexcept>

namespace normq {

std::pair<Rational, Rational> closed_forms(const Rational& r) {
    if (r <= Rational(1)) throw std::domain_error("closed_forms: need r > 1");
    Rational one(1);
    Rational rinv = one / r;
    Rational u = one / (one - rinv);  // (1 - 1/r)^-1
    Rational f = u - one - rinv;
    Rational g = rinv * (u * u - one);
    return {f, g};
}

Rational a_closed(unsigned p, unsigned q) {
    auto [fp, gp] = closed_forms(Rational(static_cast<long>(p)));
    auto [fq, gq] = closed_forms(Rational(static_cast<long>(q)));
    return fp * fq + gp * fq + gp * gq + fp * gq;
}

Params validate_params(unsigned p, unsigned q) {
    if (p < 2 || q < 2)
        throw std::invalid_argument("validate_params: need p, q > 1");
    if (std::gcd(p, q) != 1)
        throw std::invalid_argument("validate_params: p and q must be coprime");
    Rational a = a_closed(p, q);
    if (!(a < Rational(1)))
        throw std::invalid_argument("validate_params: series limit a >= 1");
    Params params;
    params.p = p;
    params.q = q;
    params.a = a;
    params.b = a_closed(p * p, q * q);
    return params;
}

Series::Series(Params params) : params_(std::move(params)) {
    frontier_.push(PairEntry{2, 2, key_of(2, 2)});
}

mpz_class Series::key_of(unsigned m, unsigned n) const {
    return pow_ui(mpz_class(params_.p), m) * pow_ui(mpz_class(params_.q), n);
}

void Series::ensure_pairs(std::size_t count) const {
    if (pairs_done_.load(std::memory_order_acquire) >= count) return;
    std::lock_guard<std::mutex> lock(mu_);
    ensure_pairs_locked(count);
}

void Series::ensure_pairs_locked(std::size_t count) const {
    while (pairs_.size() < count) {
        PairEntry next = frontier_.top();
        frontier_.pop();
        if (!pairs_.empty() && pairs_.back().key >= next.key)
            throw std::logic_error("pair enumeration keys not strictly increasing");
        // Children in the grid: advance m always, advance n only from m = 2,
        // so every (m, n) with m, n >= 2 is generated exactly once.
        frontier_.push(PairEntry{next.m + 1, next.n, key_of(next.m + 1, next.n)});
        if (next.m == 2)
            frontier_.push(PairEntry{2, next.n + 1, key_of(2, next.n + 1)});
        rank_[{next.m, next.n}] = pairs_.size();
        pairs_.push_back(std::move(next));
        pairs_done_.store(pairs_.size(), std::memory_order_release);
    }
}

std::pair<unsigned, unsigned> Series::pair(std::size_t i) const {
    ensure_pairs(i + 1);
    return {pairs_[i].m, pairs_[i].n};
}

mpz_class Series::key(std::size_t i) const {
    ensure_pairs(i + 1);
    return pairs_[i].key;
}

std::size_t Series::stage_of(unsigned m, unsigned n) const {
    if (m < 2 || n < 2) throw std::invalid_argument("stage_of: need m, n > 1");
    mpz_class target = key_of(m, n);
    std::lock_guard<std::mutex> lock(mu_);
    while (pairs_.empty() || pairs_.back().key < target)
        ensure_pairs_locked(pairs_.size() + 1);
    auto it = rank_.find({m, n});
    if (it == rank_.end()) throw std::logic_error("stage_of: pair missing from enumeration");
    return it->second;
}

Rational Series::coefficient_a(std::size_t k) const {
    if (k < 1) throw std::invalid_argument("coefficient_a: need k >= 1");
    std::size_t i = (k - 1) / 4;
    std::size_t j = (k - 1) % 4;  // 0..3 for 4i+1..4i+4
    ensure_pairs(i + 1);
    const PairEntry& e = pairs_[i];
    Rational base(mpz_class(1), e.key);
    switch (j) {
        case 0: return base;
        case 1: return Rational(static_cast<long>(e.m)) * base;
        case 2: return Rational(static_cast<long>(e.m) * static_cast<long>(e.n)) * base;
        default: return Rational(static_cast<long>(e.n)) * base;
    }
}

void Series::ensure_stage(std::size_t i) const {
    if (stages_done_.load(std::memory_order_acquire) > i) return;
    std::lock_guard<std::mutex> lock(mu_);
    ensure_stage_locked(i);
}

void Series::ensure_stage_locked(std::size_t i) const {
    while (stages_.size() <= i) {
        std::size_t s = stages_.size();
        ensure_pairs_locked(s + 2);  // stage s needs the key of stage s+1 for L_s
        const PairEntry& e = pairs_[s];
        StageRecord rec;
        rec.m = e.m;
        rec.n = e.n;
        rec.key = e.key;
        Rational bp(mpz_class(1), e.key);  // the flat first approximation b'
        rec.upper = (s == 0) ? Rational(1) : stages_[s - 1].b[3];
        rec.lower = Rational(mpz_class(1), pairs_[s + 1].key);
        // c_4(delta) = b' - delta * (3 a1 + 2 a2 + a3)/a4, and with the block
        // coefficients a = (1, m, mn, n) * b' the ratio is (3 + 2m + mn)/n.
        Rational ratio(static_cast<long>(3 + 2 * e.m + e.m * e.n), static_cast<long>(e.n));
        Rational delta = (rec.upper - bp) / Rational(8);
        auto ok = [&](const Rational& d) {
            Rational c1 = bp + Rational(3) * d;
            Rational c3 = bp + d;
            Rational c4 = bp - ratio * d;
            return c1 < rec.upper && bp < c3 && rec.lower < c4;
        };
        while (!ok(delta)) delta /= Rational(2);
        rec.delta = delta;
        rec.b[0] = bp + Rational(3) * delta;
        rec.b[1] = bp + Rational(2) * delta;
        rec.b[2] = bp + delta;
        rec.b[3] = bp - ratio * delta;
        stages_.push_back(std::move(rec));
        stages_done_.store(stages_.size(), std::memory_order_release);
    }
}

Rational Series::gradient_b(std::size_t k) const {
    if (k < 1) throw std::invalid_argument("gradient_b: need k >= 1");
    std::size_t i = (k - 1) / 4;
    ensure_stage(i);
    return stages_[i].b[(k - 1) % 4];
}

StageRecord Series::stage(std::size_t i) const {
    ensure_stage(i);
    return stages_[i];
}

}  // namespace normq

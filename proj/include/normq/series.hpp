#pragma once

#include <array>
#include <atomic>
#include <cstddef>
#include <deque>
#include <map>
#include <mutex>
#include <queue>
#include <utility>
#include <vector>

#include "normq/rational.hpp"

namespace normq {

/// Validated construction parameters. a is the exact limit of the segment
/// length series, b the exact weighted limit used for the vertex gradients.
/// Invariants: p, q > 1 coprime, 0 < b < a < 1.
struct Params {
    unsigned p = 2, q = 5;
    Rational a, b;
};

/// The two geometric-series tails f(r) = (1 - 1/r)^-1 - 1 - 1/r and
/// g(r) = (1/r)((1 - 1/r)^-2 - 1), for r > 1.
std::pair<Rational, Rational> closed_forms(const Rational& r);

/// Exact limit of the length series: f(p)f(q) + g(p)f(q) + g(p)g(q) + f(p)g(q).
Rational a_closed(unsigned p, unsigned q);

/// Checks p, q > 1, gcd(p,q) = 1 and a_closed(p,q) < 1, and derives the
/// weighted limit b = a_closed(p^2, q^2). Throws std::invalid_argument
/// otherwise ((2,2) and {2,3} are the classic rejections).
Params validate_params(unsigned p, unsigned q);

/// Per-stage record of the strictly-decreasing gradient construction.
struct StageRecord {
    unsigned m = 0, n = 0;
    mpz_class key;           // p^m q^n
    Rational upper, lower;   // U_i and L_i
    Rational delta;          // the accepted delta for this stage
    std::array<Rational, 4> b;  // b_{4i+1} .. b_{4i+4}
};

/// Memoized sequences: the pair enumeration sorted by p^m q^n, the segment
/// length coefficients a_k, and the gradient coefficients b_k built in
/// blocks of four. Extension is guarded by a mutex; reads of an
/// already-ensured prefix need no coordination.
class Series {
public:
    explicit Series(Params params);
    Series(const Series&) = delete;
    Series& operator=(const Series&) = delete;

    const Params& params() const { return params_; }

    // -- pair enumeration ---------------------------------------------------
    void ensure_pairs(std::size_t count) const;
    std::size_t pairs_computed() const { return pairs_done_.load(std::memory_order_acquire); }
    /// (m_i, n_i); extends the enumeration on demand.
    std::pair<unsigned, unsigned> pair(std::size_t i) const;
    /// p^{m_i} q^{n_i}.
    mpz_class key(std::size_t i) const;
    /// Rank of (m, n) in the enumeration.
    std::size_t stage_of(unsigned m, unsigned n) const;

    // -- coefficient sequences (k >= 1) -------------------------------------
    Rational coefficient_a(std::size_t k) const;
    Rational gradient_b(std::size_t k) const;

    void ensure_stage(std::size_t i) const;
    std::size_t stages_computed() const { return stages_done_.load(std::memory_order_acquire); }
    StageRecord stage(std::size_t i) const;

private:
    struct PairEntry {
        unsigned m, n;
        mpz_class key;
    };
    struct HeapCmp {
        bool operator()(const PairEntry& a, const PairEntry& b) const {
            return a.key > b.key;  // min-heap
        }
    };

    void ensure_pairs_locked(std::size_t count) const;
    void ensure_stage_locked(std::size_t i) const;
    mpz_class key_of(unsigned m, unsigned n) const;

    Params params_;

    mutable std::mutex mu_;
    mutable std::deque<PairEntry> pairs_;
    mutable std::map<std::pair<unsigned, unsigned>, std::size_t> rank_;
    mutable std::priority_queue<PairEntry, std::vector<PairEntry>, HeapCmp> frontier_;
    mutable std::deque<StageRecord> stages_;
    mutable std::atomic<std::size_t> pairs_done_{0};
    mutable std::atomic<std::size_t> stages_done_{0};
};

}  // namespace normq

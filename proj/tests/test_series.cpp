#include <doctest.h>

#include <atomic>
#include <set>
#include <thread>
#include <vector>

#include "normq/geometry.hpp"
#include "normq/series.hpp"

using namespace normq;

TEST_CASE("closed forms of the two geometric tails") {
    auto [f2, g2] = closed_forms(Rational(2));
    CHECK(f2 == Rational(1, 2));
    CHECK(g2 == Rational(3, 2));
    auto [f5, g5] = closed_forms(Rational(5));
    CHECK(f5 == Rational(1, 20));
    CHECK(g5 == Rational(9, 80));
    auto [f4, g4] = closed_forms(Rational(4));
    CHECK(f4 == Rational(1, 12));
    CHECK(g4 == Rational(7, 36));
    CHECK_THROWS_AS(closed_forms(Rational(1)), std::domain_error);
    CHECK_THROWS_AS(closed_forms(Rational(1, 2)), std::domain_error);
}

TEST_CASE("series limit in closed form") {
    CHECK(a_closed(2, 5) == Rational(13, 40));
    CHECK(a_closed(2, 2) == Rational(4));
    CHECK(a_closed(2, 3) == Rational(7, 6));
    CHECK(a_closed(4, 25) == Rational(73, 51840));

    // product-form identity a(p,q) = (f(p)+g(p)) (f(q)+g(q))
    for (unsigned p : {2u, 3u, 4u, 5u, 7u}) {
        for (unsigned q : {2u, 3u, 5u, 9u}) {
            auto [fp, gp] = closed_forms(Rational(static_cast<long>(p)));
            auto [fq, gq] = closed_forms(Rational(static_cast<long>(q)));
            CHECK(a_closed(p, q) == (fp + gp) * (fq + gq));
        }
    }
}

TEST_CASE("parameter validation") {
    Params ps = validate_params(2, 5);
    CHECK(ps.a == Rational(13, 40));
    CHECK(ps.b == Rational(73, 51840));
    CHECK(Rational(0) < ps.b);
    CHECK(ps.b < ps.a);
    CHECK(ps.a < Rational(1));

    CHECK_THROWS_AS(validate_params(2, 2), std::invalid_argument);  // not coprime (and a = 4)
    CHECK_THROWS_AS(validate_params(2, 3), std::invalid_argument);  // a = 7/6 >= 1
    CHECK_THROWS_AS(validate_params(3, 2), std::invalid_argument);
    CHECK_THROWS_AS(validate_params(2, 4), std::invalid_argument);  // not coprime
    CHECK_THROWS_AS(validate_params(1, 5), std::invalid_argument);
    CHECK_NOTHROW(validate_params(3, 10));
    CHECK_NOTHROW(validate_params(5, 2));
}

TEST_CASE("pair enumeration sorted by key") {
    Series s(validate_params(2, 5));
    std::vector<std::pair<unsigned, unsigned>> expect = {
        {2, 2}, {3, 2}, {4, 2}, {2, 3}, {5, 2}, {3, 3}};
    std::vector<long> keys = {100, 200, 400, 500, 800, 1000};
    for (std::size_t i = 0; i < expect.size(); ++i) {
        CHECK(s.pair(i) == expect[i]);
        CHECK(s.key(i) == keys[i]);
    }

    // strictly increasing keys, injective map (m,n) -> key
    std::set<mpz_class> seen;
    mpz_class prev = 0;
    for (std::size_t i = 0; i < 200; ++i) {
        mpz_class k = s.key(i);
        CHECK(prev < k);
        CHECK(seen.insert(k).second);
        prev = k;
    }

    CHECK(s.stage_of(2, 2) == 0);
    CHECK(s.stage_of(3, 2) == 1);
    CHECK(s.stage_of(2, 3) == 3);
    mpz_class want = pow_ui(mpz_class(2), 7) * pow_ui(mpz_class(5), 4);
    CHECK(s.key(s.stage_of(7, 4)) == want);
}

TEST_CASE("length coefficients a_k") {
    Series s(validate_params(2, 5));
    CHECK(s.coefficient_a(1) == Rational(1, 100));
    CHECK(s.coefficient_a(2) == Rational(1, 50));
    CHECK(s.coefficient_a(3) == Rational(1, 25));
    CHECK(s.coefficient_a(4) == Rational(1, 50));
    CHECK(s.coefficient_a(5) == Rational(1, 200));
    CHECK_THROWS_AS(s.coefficient_a(0), std::invalid_argument);
}

TEST_CASE("gradient construction, stage 0 frozen values") {
    Series s(validate_params(2, 5));
    // Deterministic delta rule: delta_0 = (1 - 1/100)/8 halved eight times.
    CHECK(s.stage(0).delta == Rational(99, 204800));
    CHECK(s.gradient_b(1) == Rational(469, 40960));
    CHECK(s.gradient_b(2) == Rational(1123, 102400));
    CHECK(s.gradient_b(3) == Rational(2147, 204800));
    CHECK(s.gradient_b(4) == Rational(3007, 409600));
    // stage-0 ordering between the bounds
    CHECK(Rational(1) > s.gradient_b(1));
    CHECK(s.gradient_b(3) > Rational(1, 100));
    CHECK(Rational(1, 100) > s.gradient_b(4));
    CHECK(s.gradient_b(4) > Rational(1, 200));
}

TEST_CASE("gradient invariants across stages") {
    Series s(validate_params(2, 5));
    const std::size_t stages = 50;

    SUBCASE("strict decrease and positivity") {
        Rational prev(1);
        for (std::size_t k = 1; k <= 4 * stages; ++k) {
            Rational b = s.gradient_b(k);
            CHECK(Rational(0) < b);
            CHECK(b < prev);
            prev = b;
        }
    }

    SUBCASE("stage inequality chain and exact block sums") {
        for (std::size_t i = 0; i < stages; ++i) {
            StageRecord rec = s.stage(i);
            Rational bp(mpz_class(1), rec.key);
            CHECK(rec.b[0] < rec.upper);
            CHECK(rec.b[1] < rec.b[0]);
            CHECK(rec.b[2] < rec.b[1]);
            CHECK(bp < rec.b[2]);
            CHECK(rec.b[3] < bp);
            CHECK(rec.lower < rec.b[3]);
            // U_{i+1} = b_{4i+4} > L_i: next stage precondition
            CHECK(s.stage(i + 1).upper == rec.b[3]);

            Rational lhs(0), rhs(0);
            for (std::size_t j = 0; j < 4; ++j) {
                Rational a = s.coefficient_a(4 * i + 1 + j);
                lhs += rec.b[j] * a;
                rhs += bp * a;
            }
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("partial sums stay below the closed-form limit") {
    Params ps = validate_params(2, 5);
    Series s(ps);
    const std::size_t blocks = 50;  // K = 200 terms
    Rational sum(0);
    for (std::size_t k = 1; k <= 4 * blocks; ++k) sum += s.coefficient_a(k);
    CHECK(sum < ps.a);

    // block sums have the closed per-stage form (1+m)(1+n)/key
    Rational block_total(0);
    for (std::size_t i = 0; i < blocks; ++i) {
        auto [m, n] = s.pair(i);
        Rational block(0);
        for (std::size_t j = 1; j <= 4; ++j) block += s.coefficient_a(4 * i + j);
        Rational closed = Rational(static_cast<long>((1 + m) * (1 + n))) /
                          Rational(s.key(i));
        CHECK(block == closed);
        block_total += block;
    }
    CHECK(block_total == sum);

    // gap below the computed tail bound sum_{i>=I} 4 (m_i+1)(n_i+1) / key_i
    Rational gap = ps.a - sum;
    Rational tail_bound = Rational(4) * (ps.a - block_total);
    CHECK(Rational(0) < gap);
    CHECK(gap < tail_bound);

    // weighted partial sums approach b the same way
    Rational wsum(0);
    for (std::size_t k = 1; k <= 4 * blocks; ++k)
        wsum += s.gradient_b(k) * s.coefficient_a(k);
    CHECK(wsum < ps.b);
    CHECK(ps.b - wsum < ps.a - sum);
}

TEST_CASE("concurrent extension and prefix reads") {
    Series s(validate_params(2, 5));
    Series baseline(validate_params(2, 5));
    baseline.ensure_stage(40);

    std::vector<std::thread> threads;
    std::atomic<bool> ok{true};
    for (int t = 0; t < 8; ++t) {
        threads.emplace_back([&, t] {
            for (std::size_t k = 1; k <= 160; ++k) {
                std::size_t idx = (t % 2 == 0) ? k : 161 - k;
                if (!(s.gradient_b(idx) == baseline.gradient_b(idx))) ok = false;
                if (!(s.coefficient_a(idx) == baseline.coefficient_a(idx))) ok = false;
            }
        });
    }
    for (auto& th : threads) th.join();
    CHECK(ok.load());

    Chain chain(validate_params(2, 5));
    Chain chain_baseline(validate_params(2, 5));
    chain_baseline.ensure_vertices(120);
    std::vector<std::thread> geo;
    std::atomic<bool> gok{true};
    for (int t = 0; t < 8; ++t) {
        geo.emplace_back([&, t] {
            for (std::size_t k = 0; k < 110; ++k) {
                std::size_t idx = (t % 2 == 0) ? k : 109 - k;
                if (!(chain.vertex(idx) == chain_baseline.vertex(idx))) gok = false;
            }
        });
    }
    for (auto& th : geo) th.join();
    CHECK(gok.load());
}

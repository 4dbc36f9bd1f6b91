// Acceptance suite: one check per shipped guarantee, each printed as a
// PASS/FAIL line. Returns the number of failed criteria.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "normq/eval.hpp"
#include "normq/passes.hpp"
#include "normq/predicates.hpp"

using namespace normq;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS" : "FAIL") << "  " << id << "  " << name;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << "\n";
    if (!ok) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

Rational random_rational(std::mt19937_64& rng, long mag) {
    std::uniform_int_distribution<long> num(-mag, mag), den(1, mag);
    return Rational(num(rng), den(rng));
}

RatFunc random_ratfunc(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> deg(0, 3);
    std::uniform_int_distribution<long> coeff(-9, 9);
    auto poly = [&](bool nonzero) {
        std::vector<Rational> cs(static_cast<std::size_t>(deg(rng)) + 1);
        for (auto& c : cs) c = Rational(coeff(rng));
        Poly p(std::move(cs));
        if (nonzero && p.is_zero()) return Poly::one();
        return p;
    };
    Poly d = poly(true);
    return RatFunc(poly(false), d);
}

// 1. closed forms, partial sums, tail bound, under one second
void criterion_constants() {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream detail;

    Rational a = a_closed(2, 5), b = a_closed(4, 25);
    ok = ok && a == Rational(13, 40) && b == Rational(73, 51840);

    auto [f2, g2] = closed_forms(Rational(2));
    auto [f5, g5] = closed_forms(Rational(5));
    ok = ok && a == f2 * f5 + g2 * f5 + g2 * g5 + f2 * g5;
    auto [f4, g4] = closed_forms(Rational(4));
    auto [f25, g25] = closed_forms(Rational(25));
    ok = ok && b == f4 * f25 + g4 * f25 + g4 * g25 + f4 * g25;

    Series series(validate_params(2, 5));
    const std::size_t blocks = 50;  // K = 200
    Rational sum(0);
    for (std::size_t k = 1; k <= 4 * blocks; ++k) sum += series.coefficient_a(k);
    Rational gap = a - sum;
    Rational tail_bound(0);
    // tail bound: 4 (m_i+1)(n_i+1)/key_i summed over i >= 50, evaluated in
    // closed form as 4 (a - sum of the first 50 block sums)
    Rational blocksum(0);
    for (std::size_t i = 0; i < blocks; ++i) {
        auto [m, n] = series.pair(i);
        blocksum += Rational(static_cast<long>((1 + m) * (1 + n))) / Rational(series.key(i));
    }
    tail_bound = Rational(4) * (a - blocksum);
    ok = ok && sum < a && Rational(0) < gap && gap < tail_bound;

    double dt = seconds_since(t0);
    detail << "a=13/40, b=73/51840, gap at K=200 within bound, " << dt << "s";
    report(1, "constants closed forms and partial sums", ok && dt < 1.0, detail.str());
}

// 2. parameter validation matches the classic exceptions
void criterion_validation() {
    bool ok = true;
    try {
        validate_params(2, 2);
        ok = false;
    } catch (const std::invalid_argument&) {
    }
    try {
        validate_params(2, 3);
        ok = false;
    } catch (const std::invalid_argument&) {
    }
    try {
        validate_params(3, 2);
        ok = false;
    } catch (const std::invalid_argument&) {
    }
    try {
        Params ps = validate_params(2, 5);
        ok = ok && ps.a == Rational(13, 40) && ps.b == Rational(73, 51840);
    } catch (...) {
        ok = false;
    }
    report(2, "parameter validation rejects (2,2), (2,3); accepts (2,5)", ok);
}

// 3. gradient construction invariants through stage 50
void criterion_gradients(const Chain& chain) {
    const Series& s = chain.series();
    bool ok = true;
    Rational prev(1);
    for (std::size_t k = 1; k <= 4 * 51 && ok; ++k) {
        Rational b = s.gradient_b(k);
        ok = Rational(0) < b && b < prev;
        prev = b;
    }
    for (std::size_t i = 0; i <= 50 && ok; ++i) {
        StageRecord rec = s.stage(i);
        Rational bp(mpz_class(1), rec.key);
        ok = rec.b[0] < rec.upper && rec.b[1] < rec.b[0] && rec.b[2] < rec.b[1] &&
             bp < rec.b[2] && rec.b[3] < bp && rec.lower < rec.b[3];
        Rational lhs(0), rhs(0);
        for (std::size_t j = 0; j < 4; ++j) {
            Rational a = s.coefficient_a(4 * i + 1 + j);
            lhs += rec.b[j] * a;
            rhs += bp * a;
        }
        ok = ok && lhs == rhs;
    }
    report(3, "stage inequalities and exact block sums through stage 50", ok);
}

// 4. segment lengths, north-east 1-norm agreement, e2 - e1 leaves the disc
void criterion_segment_norms(const Chain& chain) {
    bool ok = true;
    for (std::size_t k = 1; k <= 200 && ok; ++k) {
        Vec2<Rational> d = chain.vertex(k + 1) - chain.vertex(k);
        ok = plane_norm(chain, d) == chain.series().coefficient_a(k);
    }
    ok = ok && plane_norm<Rational>(chain, {Rational(1), Rational(1)}) == Rational(2);
    Rational ne = plane_norm<Rational>(chain, {Rational(-1), Rational(1)});
    ok = ok && Rational(1) < ne;
    report(4, "segment norms equal a_k (k <= 200); |(1,1)| = 2; |e2-e1| > 1", ok);
}

// 5. norm axioms on random exact vectors, both fields
void criterion_norm_axioms(const Chain& chain) {
    bool ok = true;
    std::size_t violations = 0;

    std::mt19937_64 rng(20240917);
    Vec2<Rational> prev{Rational(1), Rational(0)};
    for (int t = 0; t < 10000; ++t) {
        Vec2<Rational> v{random_rational(rng, 1000), random_rational(rng, 1000)};
        Rational n = plane_norm(chain, v);
        if (v.is_zero()) {
            if (!(n == Rational(0))) ++violations;
            continue;
        }
        if (!(Rational(0) < n)) ++violations;
        Rational c = random_rational(rng, 60);
        if (!(plane_norm(chain, c * v) == c.abs() * n)) ++violations;
        if (!(plane_norm(chain, v + prev) <= n + plane_norm(chain, prev))) ++violations;
        prev = v;
    }

    std::mt19937_64 rng2(5081);
    Vec2<RatFunc> prev2{RatFunc(1), RatFunc(0)};
    for (int t = 0; t < 1000; ++t) {
        Vec2<RatFunc> v{random_ratfunc(rng2), random_ratfunc(rng2)};
        RatFunc n = plane_norm(chain, v);
        if (v.is_zero()) {
            if (!(n == RatFunc(0))) ++violations;
            continue;
        }
        if (!(n.sign() > 0)) ++violations;
        RatFunc c = random_ratfunc(rng2);
        if (!(plane_norm(chain, c * v) == c.abs() * n)) ++violations;
        if (!(plane_norm(chain, v + prev2) <= n + plane_norm(chain, prev2))) ++violations;
        prev2 = v;
    }

    ok = violations == 0;
    report(5, "norm axioms on 10^4 rational and 10^3 infinitesimal-field vectors", ok,
           violations == 0 ? "zero violations" : std::to_string(violations) + " violations");
}

// 6. full multiplication table with certificates and oracle confirmation
void criterion_mult_table(const Chain& chain) {
    auto t0 = Clock::now();
    bool ok = true;
    std::ostringstream detail;
    RunOracle oracle(chain, 64);

    std::size_t positives = 0, negatives = 0;
    for (long x = 0; x <= 12 && ok; ++x) {
        for (long y = 0; y <= 12 && ok; ++y) {
            for (long z = 0; z <= 200 && ok; ++z) {
                MgiVerdict v = mult_graph_holds(chain, Rational(x), Rational(y), Rational(z));
                bool truth = z == x * y;
                if (v.holds != truth) {
                    ok = false;
                    detail << "verdict mismatch at " << x << "*" << y << "=" << z;
                    break;
                }
                if (v.holds) {
                    ++positives;
                    if (!v.witness.has_value()) {
                        ok = false;
                        detail << "missing witness at " << x << "*" << y;
                        break;
                    }
                    const RunWitness& w = *v.witness;
                    mpz_class key = pow_ui(mpz_class(2), static_cast<unsigned long>(x) + 2) *
                                    pow_ui(mpz_class(5), static_cast<unsigned long>(y) + 2);
                    bool wok = w.radius == Rational(key) &&
                               w.edges[0] == Rational(1) &&
                               w.edges[1] == Rational(x + 2) &&
                               w.edges[2] == Rational((x + 2) * (y + 2)) &&
                               w.edges[3] == Rational(y + 2) &&
                               w.edges[4] < Rational(1);
                    if (!wok) {
                        ok = false;
                        detail << "bad witness at " << x << "*" << y;
                        break;
                    }
                } else {
                    ++negatives;
                    if (oracle.mult_graph(Rational(x), Rational(y), Rational(z))) {
                        ok = false;
                        detail << "oracle contradicts negative at " << x << "*" << y << "=" << z;
                        break;
                    }
                }
            }
        }
    }
    double dt = seconds_since(t0);
    if (ok)
        detail << positives << " certified positives, " << negatives
               << " oracle-confirmed negatives, " << dt << "s";
    report(6, "multiplication table 0..12 with certificates (z <= 200)", ok && dt < 60.0,
           detail.str());
}

// 7. interpretation pipeline on the bounded model
void criterion_interpretation() {
    bool ok = true;
    std::ostringstream detail;
    Builtins b = builtin_sentences();

    ok = ok && ast::print(translate(b.q[5]), ast::Lang::K) ==
                   "(forall (x K) (imp (nu x) (mu x 0 0)))";

    for (int i = 0; i < 7 && ok; ++i) ok = eval_bounded(translate(b.q[i]), 25);
    if (!ok) detail << "axiom evaluation failed";
    ok = ok && eval_bounded(b.ok, 25);

    const char* mutants[] = {
        "(forall x (forall y (= (plus x (S y)) (plus x y))))",
        "(forall x (forall y (= (times x (S y)) (plus (times x y) y))))",
        "(forall x (= (plus x 0) (S x)))",
    };
    for (const char* m : mutants)
        ok = ok && !eval_bounded(translate(ast::parse(m, ast::Lang::PA)), 25);

    report(7, "Q1*..Q7* and OK hold at bound 25; three mutants are falsified", ok,
           detail.str());
}

// 8. non-archimedean east face
void criterion_non_archimedean(const Chain& chain) {
    Vec2<Rational> lim = chain.limit_vertex();
    RatFunc e = RatFunc::eps();
    Vec2<RatFunc> sliver{RatFunc(lim.x) - e, RatFunc(1)};
    Vec2<RatFunc> west{RatFunc(lim.x) - RatFunc(Rational(1, 1000)), RatFunc(1)};
    bool ok = disc_contains(chain, sliver) && !disc_contains(chain, west);
    report(8, "eps-sliver west of the limit point is inside over Q(e), 1/1000 is not", ok);
}

// 9. 1-sum of dimension 4: W extremes are equidistant and not special
void criterion_one_sum(const Chain& chain) {
    bool ok = true;
    Rational r(3);

    std::vector<VecD<Rational>> samples;
    for (std::size_t k = 0; k <= 3; ++k) {
        samples.push_back(VecD<Rational>{r * chain.vertex(k)});
        samples.push_back(VecD<Rational>{-(r * chain.vertex(k))});
    }
    samples.push_back(VecD<Rational>{Vec2<Rational>{Rational(0), r}});
    samples.push_back(VecD<Rational>{Vec2<Rational>{Rational(0), -r}});
    samples.push_back(VecD<Rational>{r * chain.limit_vertex()});
    samples.push_back(VecD<Rational>{-(r * chain.limit_vertex())});
    for (std::size_t k = 6; k <= 9; ++k) {
        samples.push_back(VecD<Rational>{r * chain.vertex(k)});
        samples.push_back(VecD<Rational>{-(r * chain.vertex(k))});
    }
    ok = ok && samples.size() == 20;

    for (std::size_t n = 1; n <= 2 && ok; ++n) {  // d = 4: W basis b_1, b_2
        for (int sign : {1, -1}) {
            VecD<Rational> wb;
            wb.set_w(n, Rational(sign) * r);
            if (extreme_classify(chain, r, wb).status != ExtremeClass::Status::Extreme)
                ok = false;
            if (is_special_extreme(chain, r, wb)) ok = false;
            for (const auto& p : samples)
                if (!(sum_norm(chain, wb - p) == Rational(2) * r)) ok = false;
        }
    }
    for (const auto& p : samples)
        if (!is_special_extreme(chain, r, p)) ok = false;

    report(9, "W basis extremes of the 4-dimensional 1-sum are equidistant, not special", ok);
}

}  // namespace

int main() {
    std::cout << "normq acceptance suite (p=2, q=5)\n";
    Chain chain(validate_params(2, 5));

    criterion_constants();
    criterion_validation();
    criterion_gradients(chain);
    criterion_segment_norms(chain);
    criterion_norm_axioms(chain);
    criterion_mult_table(chain);
    criterion_interpretation();
    criterion_non_archimedean(chain);
    criterion_one_sum(chain);

    std::cout << (failures == 0 ? "all criteria passed\n"
                                : std::to_string(failures) + " criteria failed\n");
    return failures;
}

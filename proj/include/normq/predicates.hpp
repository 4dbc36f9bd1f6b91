#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <vector>

#include "normq/geometry.hpp"

namespace normq {

/// True for the nonzero extreme points of the sphere of radius r that come
/// from the plane; the W basis extremes are excluded (they are equidistant,
/// at distance 2r, from every other extreme point of the sphere).
template <OrderedField K>
bool is_special_extreme(const Chain& chain, const K& r, const VecD<K>& v) {
    if (r.sign() <= 0) throw std::invalid_argument("is_special_extreme: need r > 0");
    ExtremeClass c = extreme_classify(chain, r, v);
    return c.is_extreme() && c.kind != ExtremeKind::WBasisVector;
}

/// Both special extreme on the sphere of radius r, distinct, and with their
/// midpoint still on the sphere, i.e. endpoints of one boundary segment.
template <OrderedField K>
bool adjacent_special(const Chain& chain, const K& r, const VecD<K>& u, const VecD<K>& w) {
    if (r.sign() <= 0) throw std::invalid_argument("adjacent_special: need r > 0");
    if (u == w) return false;
    if (!is_special_extreme(chain, r, u) || !is_special_extreme(chain, r, w)) return false;
    return sum_norm(chain, K(Rational(1, 2)) * (u + w)) == r;
}

/// Symbolic label for a node of the special-extreme-point adjacency graph.
struct RunNode {
    ExtremeKind kind = ExtremeKind::ChainVertex;
    std::size_t index = 0;  // chain vertex number
    bool neg = false;       // centrally-mirrored copy
};

inline bool operator==(const RunNode& a, const RunNode& b) {
    return a.kind == b.kind && a.index == b.index && a.neg == b.neg;
}

template <OrderedField K>
struct Run {
    std::vector<RunNode> nodes;
    std::vector<Vec2<K>> points;  // exact coordinates, scaled by the radius
    std::vector<K> edges;         // exact norms of consecutive differences
};

inline Vec2<Rational> run_node_point(const Chain& chain, const RunNode& n) {
    Vec2<Rational> p;
    switch (n.kind) {
        case ExtremeKind::ChainVertex: p = chain.vertex(n.index); break;
        case ExtremeKind::LimitVertex: p = chain.limit_vertex(); break;
        case ExtremeKind::TopVertex: p = {Rational(0), Rational(1)}; break;
        default: throw std::invalid_argument("run_node_point: not a plane node");
    }
    return n.neg ? -p : p;
}

/// All runs of `length` pairwise-distinct adjacent special extreme points
/// within the depth-limited adjacency graph of the sphere of radius r.
/// The graph is two simple paths: the limit point (archimedean scalars
/// only), the top vertex, then the full mirrored chain — and its mirror.
template <OrderedField K>
std::vector<Run<K>> enumerate_runs(const Chain& chain, const K& r,
                                   std::size_t length, std::size_t depth) {
    if (r.sign() <= 0) throw std::invalid_argument("enumerate_runs: need r > 0");
    if (length < 2) throw std::invalid_argument("enumerate_runs: need length >= 2");
    chain.ensure_vertices(depth + 1);

    std::vector<RunNode> path;  // ends in the positive chain
    if (K::archimedean) path.push_back({ExtremeKind::LimitVertex, 0, true});
    path.push_back({ExtremeKind::TopVertex, 0, true});
    for (std::size_t k = 0; k <= depth; ++k)
        path.push_back({ExtremeKind::ChainVertex, k, false});

    auto make_run = [&](const std::vector<RunNode>& nodes) {
        Run<K> run;
        run.nodes = nodes;
        for (const RunNode& n : nodes)
            run.points.push_back(r * lift<K>(run_node_point(chain, n)));
        for (std::size_t i = 0; i + 1 < run.points.size(); ++i)
            run.edges.push_back(plane_norm(chain, run.points[i + 1] - run.points[i]));
        return run;
    };

    std::vector<Run<K>> out;
    for (bool mirror : {false, true}) {
        std::vector<RunNode> p = path;
        if (mirror)
            for (RunNode& n : p) n.neg = !n.neg;
        for (bool reversed : {false, true}) {
            for (std::size_t start = 0; start + length <= p.size(); ++start) {
                std::vector<RunNode> window(p.begin() + start, p.begin() + start + length);
                if (reversed) std::reverse(window.begin(), window.end());
                out.push_back(make_run(window));
            }
        }
    }
    return out;
}

/// Exact certificate of a positive multiplication verdict: the witness run
/// r*v_{4i+1} .. r*v_{4i+6} on the sphere of radius r = p^{m_i} q^{n_i},
/// with edge lengths (1, x, z, y, u) and u < 1.
struct RunWitness {
    Rational radius;
    std::size_t stage = 0;
    std::array<std::size_t, 6> vertices{};
    std::array<Rational, 5> edges{};
};

struct MgiVerdict {
    bool holds = false;
    std::optional<RunWitness> witness;
};

inline std::optional<mpz_class> as_natural(const Rational& x) {
    if (!x.is_integer() || x.sign() < 0) return std::nullopt;
    return x.numerator();
}
inline std::optional<mpz_class> as_natural(const RatFunc& x) {
    auto r = x.as_rational();
    return r ? as_natural(*r) : std::nullopt;
}

/// Certified witness construction is capped at m + n <= kMaxWitnessExponents
/// (the memoized sequences it materializes grow quickly with the stage).
inline constexpr unsigned long kMaxWitnessExponents = 56;

/// Analytic decision alone: x, y, z naturals > 1 with z = x*y. The bounded
/// evaluator uses this path; its agreement with the certified path and the
/// run oracle is what the predicate test suites establish.
template <OrderedField K>
bool mgi_decide(const K& x, const K& y, const K& z) {
    auto xn = as_natural(x), yn = as_natural(y), zn = as_natural(z);
    if (!xn || !yn || !zn) return false;
    if (*xn < 2 || *yn < 2) return false;
    return *zn == *xn * *yn;
}

template <OrderedField K>
bool mult_graph_decide(const K& x, const K& y, const K& z) {
    K two = K(Rational(2));
    return mgi_decide(x + two, y + two, K(Rational(4)) + two * x + two * y + z);
}

/// Decides "x, y, z are naturals > 1 with z = x*y" and certifies every
/// positive verdict by building the witness run and checking its edge
/// lengths with exact norms.
template <OrderedField K>
MgiVerdict mgi_holds(const Chain& chain, const K& x, const K& y, const K& z) {
    if (!mgi_decide(x, y, z)) return {};
    auto xn = as_natural(x), yn = as_natural(y);
    if (*xn + *yn > kMaxWitnessExponents)
        throw std::range_error("mgi witness construction capped at exponent sum " +
                               std::to_string(kMaxWitnessExponents));
    unsigned m = static_cast<unsigned>(xn->get_ui());
    unsigned n = static_cast<unsigned>(yn->get_ui());
    const Series& series = chain.series();
    std::size_t i = series.stage_of(m, n);
    Rational r(series.key(i));
    RunWitness wit;
    wit.radius = r;
    wit.stage = i;
    for (std::size_t j = 0; j < 6; ++j) wit.vertices[j] = 4 * i + 1 + j;
    for (std::size_t j = 0; j < 5; ++j) {
        Vec2<Rational> d = chain.vertex(4 * i + 2 + j) - chain.vertex(4 * i + 1 + j);
        wit.edges[j] = plane_norm<Rational>(chain, {r * d.x, r * d.y});
    }
    Rational u = r / Rational(series.key(i + 1));
    std::array<Rational, 5> expected{Rational(1), Rational(static_cast<long>(m)),
                                     Rational(static_cast<long>(m) * static_cast<long>(n)),
                                     Rational(static_cast<long>(n)), u};
    bool pattern = Rational(1) < wit.edges[1] && wit.edges[1] < wit.edges[2] &&
                   wit.edges[3] < wit.edges[2] && wit.edges[4] < wit.edges[3] &&
                   wit.edges[4] < Rational(1);
    if (wit.edges != expected || !pattern)
        throw std::logic_error("mgi witness run failed verification");
    return {true, std::move(wit)};
}

/// The multiplication graph on the naturals inside the scalar field:
/// true iff x, y, z are naturals with z = x*y, decided (and certified)
/// through mgi on the shifted arguments (x+2)(y+2) = 4 + 2x + 2y + xy.
template <OrderedField K>
MgiVerdict mult_graph_holds(const Chain& chain, const K& x, const K& y, const K& z) {
    K two = K(Rational(2));
    K shifted = K(Rational(4)) + two * x + two * y + z;
    return mgi_holds(chain, x + two, y + two, shifted);
}

/// Bounded run-enumeration oracle over the rationals: enumerates every
/// 6-run over the candidate radii where some depth-limited unit-circle
/// edge scales to length 1, and records the (x, z, y) tuples realizing
/// the MGI pattern. Independent check against the analytic decision.
class RunOracle {
public:
    struct Hit {
        Rational radius;
        Run<Rational> run;
    };

    RunOracle(const Chain& chain, std::size_t depth);

    std::size_t depth() const { return depth_; }
    const std::vector<Rational>& radii() const { return radii_; }
    const std::vector<Hit>& hits() const { return hits_; }
    std::vector<const Hit*> hits_at(const Rational& radius) const;

    bool mgi(const Rational& x, const Rational& y, const Rational& z) const;
    bool mult_graph(const Rational& x, const Rational& y, const Rational& z) const;

private:
    const Chain& chain_;
    std::size_t depth_;
    std::vector<Rational> radii_;
    std::vector<Hit> hits_;
    std::set<std::array<Rational, 3>> positives_;  // (x, z, y)
};

}  // namespace normq

#include "normq/predicates.hpp"

namespace normq {

RunOracle::RunOracle(const Chain& chain, std::size_t depth)
    : chain_(chain), depth_(depth) {
    // Candidate radii: 1/len for every distinct unit-circle edge length
    // within the depth-limited graph (a 6-run whose first edge has length 1
    // must live on one of these spheres).
    std::set<Rational> lengths;
    for (const auto& edge : enumerate_runs<Rational>(chain, Rational(1), 2, depth))
        lengths.insert(edge.edges[0]);
    for (const Rational& len : lengths) radii_.push_back(Rational(1) / len);
    std::sort(radii_.begin(), radii_.end());

    for (const Rational& r : radii_) {
        for (auto& run : enumerate_runs<Rational>(chain, r, 6, depth)) {
            const auto& e = run.edges;
            if (e[0] == Rational(1) && Rational(1) < e[1] && e[1] < e[2] &&
                e[3] < e[2] && e[4] < e[3] && e[4] < Rational(1)) {
                positives_.insert({e[1], e[2], e[3]});
                hits_.push_back({r, std::move(run)});
            }
        }
    }
}

std::vector<const RunOracle::Hit*> RunOracle::hits_at(const Rational& radius) const {
    std::vector<const Hit*> out;
    for (const Hit& h : hits_)
        if (h.radius == radius) out.push_back(&h);
    return out;
}

bool RunOracle::mgi(const Rational& x, const Rational& y, const Rational& z) const {
    return positives_.count({x, z, y}) > 0;
}

bool RunOracle::mult_graph(const Rational& x, const Rational& y, const Rational& z) const {
    Rational two(2);
    return mgi(x + two, y + two, Rational(4) + two * x + two * y + z);
}

}  // namespace normq

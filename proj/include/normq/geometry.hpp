#pragma once

#include <atomic>
#include <cstddef>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "normq/field.hpp"
#include "normq/series.hpp"

namespace normq {

template <OrderedField K>
struct Vec2 {
    K x{}, y{};

    Vec2() = default;
    Vec2(K xx, K yy) : x(std::move(xx)), y(std::move(yy)) {}

    Vec2 operator-() const { return {-x, -y}; }
    friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(const K& c, const Vec2& v) { return {c * v.x, c * v.y}; }
    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }

    bool is_zero() const { return x.sign() == 0 && y.sign() == 0; }
};

template <OrderedField K>
Vec2<K> lift(const Vec2<Rational>& v) {
    return {K(v.x), K(v.y)};
}

/// Vector of the 1-sum space: a plane part plus finitely many coefficients
/// over the 1-normed complement basis (indices are 1-based).
template <OrderedField K>
struct VecD {
    Vec2<K> j;
    std::map<std::size_t, K> w;  // only nonzero coefficients are stored

    VecD() = default;
    explicit VecD(Vec2<K> plane) : j(std::move(plane)) {}

    void set_w(std::size_t i, K val) {
        if (val.sign() == 0) w.erase(i);
        else w[i] = std::move(val);
    }

    VecD operator-() const {
        VecD r{-j};
        for (const auto& [i, c] : w) r.w.emplace(i, -c);
        return r;
    }
    friend VecD operator+(const VecD& a, const VecD& b) {
        VecD r{a.j + b.j};
        r.w = a.w;
        for (const auto& [i, c] : b.w) {
            auto it = r.w.find(i);
            if (it == r.w.end()) r.w.emplace(i, c);
            else {
                it->second = it->second + c;
                if (it->second.sign() == 0) r.w.erase(it);
            }
        }
        return r;
    }
    friend VecD operator-(const VecD& a, const VecD& b) { return a + (-b); }
    friend VecD operator*(const K& c, const VecD& v) {
        VecD r{c * v.j};
        if (c.sign() != 0)
            for (const auto& [i, coeff] : v.w) r.w.emplace(i, c * coeff);
        return r;
    }
    friend bool operator==(const VecD& a, const VecD& b) { return a.j == b.j && a.w == b.w; }

    bool is_zero() const { return j.is_zero() && w.empty(); }
};

/// Supporting line alpha*x + beta*y = 1 of a unit-circle segment; the disc
/// side is alpha*x + beta*y <= 1.
struct SupportLine {
    Rational alpha, beta;
};

/// The memoized vertex chain of the unit disc: v_0 = -e1,
/// v_1 = -e1 + (1-b) e2, v_{k+1} = v_k + (1-b_k) a_k e1 + b_k a_k e2,
/// together with the ray gradients h_k = y_k / x_k and the supporting lines
/// of the segments [v_k, v_{k+1}]. All data is rational. Extension is
/// mutex-guarded; ensured prefixes may be read concurrently.
class Chain {
public:
    explicit Chain(Params params)
        : series_(std::move(params)) {
        const Params& ps = series_.params();
        v_limit_ = {ps.a - ps.b - Rational(1), Rational(1)};
        h_limit_ = Rational(1) / v_limit_.x;
    }
    Chain(const Chain&) = delete;
    Chain& operator=(const Chain&) = delete;

    const Series& series() const { return series_; }
    const Params& params() const { return series_.params(); }

    /// Limit point (a - b - 1, 1) of the vertex sequence.
    const Vec2<Rational>& limit_vertex() const { return v_limit_; }
    /// Gradient 1/(a - b - 1) of the ray through the limit point.
    const Rational& ray_gradient_limit() const { return h_limit_; }

    void ensure_vertices(std::size_t count) const {
        if (verts_done_.load(std::memory_order_acquire) >= count) return;
        std::lock_guard<std::mutex> lock(mu_);
        while (verts_.size() < count) {
            std::size_t k = verts_.size();
            if (k == 0) {
                verts_.push_back({Rational(-1), Rational(0)});
                h_.push_back(Rational(0));
            } else if (k == 1) {
                verts_.push_back({Rational(-1), Rational(1) - params().b});
                h_.push_back(verts_[1].y / verts_[1].x);
            } else {
                Rational a = series_.coefficient_a(k - 1);
                Rational b = series_.gradient_b(k - 1);
                const Vec2<Rational>& prev = verts_[k - 1];
                Vec2<Rational> v{prev.x + (Rational(1) - b) * a, prev.y + b * a};
                h_.push_back(v.y / v.x);
                verts_.push_back(std::move(v));
            }
            if (k >= 1) lines_.push_back(make_line(verts_[k - 1], verts_[k]));
            verts_done_.store(verts_.size(), std::memory_order_release);
        }
    }

    Vec2<Rational> vertex(std::size_t k) const {
        ensure_vertices(k + 1);
        return verts_[k];
    }

    /// h_k = y_k / x_k; strictly decreasing, h_0 = 0, limit 1/(a-b-1).
    Rational ray_gradient(std::size_t k) const {
        ensure_vertices(k + 1);
        return h_[k];
    }

    /// Gradient g_k = b_k/(1-b_k) of segment k, for k >= 1 (segment 0 is vertical).
    Rational segment_gradient(std::size_t k) const {
        if (k < 1) throw std::invalid_argument("segment_gradient: segment 0 is vertical");
        Rational b = series_.gradient_b(k);
        return b / (Rational(1) - b);
    }

    SupportLine segment_line(std::size_t k) const {
        ensure_vertices(k + 2);
        return lines_[k];
    }

private:
    static SupportLine make_line(const Vec2<Rational>& u, const Vec2<Rational>& v) {
        Rational det = u.x * v.y - v.x * u.y;
        return {(v.y - u.y) / det, (u.x - v.x) / det};
    }

    Series series_;
    Vec2<Rational> v_limit_;
    Rational h_limit_;

    mutable std::mutex mu_;
    mutable std::deque<Vec2<Rational>> verts_;
    mutable std::deque<Rational> h_;
    mutable std::deque<SupportLine> lines_;
    mutable std::atomic<std::size_t> verts_done_{0};
};

/// One face of the unit circle, up to central symmetry. For AxisVertex,
/// mirrored distinguishes the east vertex e1 (false) from the west vertex
/// -e1 (true); elsewhere mirrored marks the lower-half copy.
struct Facet {
    enum class Kind { ChainSegment, EastLimit, NorthEastEdge, AxisVertex };
    Kind kind;
    std::size_t index = 0;  // chain segment number
    bool mirrored = false;
};

enum class RayCase { CaseI, CaseII, CaseIII, Axis };

struct RayHit {
    Facet facet;
    RayCase ray_case;
};

/// Unique k with h_k > g >= h_{k+1}. Only called when the standard part of
/// g - h_limit is positive, which makes the search terminate: the rational
/// gaps h_k - h_limit decrease to 0.
template <OrderedField K>
std::size_t chain_bucket(const Chain& chain, const K& g) {
    std::size_t hi = 4;
    while (K(chain.ray_gradient(hi)) > g) hi *= 2;
    std::size_t lo = 0;  // h_0 = 0 > g
    while (hi - lo > 1) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (K(chain.ray_gradient(mid)) > g) lo = mid;
        else hi = mid;
    }
    return lo;
}

/// Case analysis for the ray through v != 0, reduced to the upper half by
/// central symmetry (y = 0 is the axis case):
///   case iii  g >= 0 or g = infinity: the north-east edge [e1, e2];
///   case ii   g below every h_k, i.e. st(g - h_limit) <= 0 (over Q this is
///             g <= h_limit; over Q(e) it also admits g infinitesimally
///             above the limit): the east face at height 1;
///   case i    otherwise: the chain segment [v_k, v_{k+1}] with
///             h_k > g >= h_{k+1}.
template <OrderedField K>
RayHit classify_ray(const Chain& chain, Vec2<K> v) {
    if (v.is_zero()) throw std::invalid_argument("classify_ray: zero vector");
    bool mirrored = false;
    int sy = v.y.sign();
    if (sy < 0) {
        v = -v;
        mirrored = true;
    } else if (sy == 0) {
        return {Facet{Facet::Kind::AxisVertex, 0, v.x.sign() < 0}, RayCase::Axis};
    }
    if (v.x.sign() >= 0)
        return {Facet{Facet::Kind::NorthEastEdge, 0, mirrored}, RayCase::CaseIII};
    K g = v.y / v.x;
    K diff = g - K(chain.ray_gradient_limit());
    auto st = diff.standard_part();
    if (!st.has_value() || st->sign() <= 0)
        return {Facet{Facet::Kind::EastLimit, 0, mirrored}, RayCase::CaseII};
    return {Facet{Facet::Kind::ChainSegment, chain_bucket(chain, g), mirrored},
            RayCase::CaseI};
}

/// Exact gauge of the unit disc: the unique non-negative r with v in r*D.
/// Piecewise evaluation, no approximation: |x| on the axis, the 1-norm on
/// the closed north-east quadrant, height y on the east face, and the
/// supporting-line functional on chain segments.
template <OrderedField K>
K plane_norm(const Chain& chain, const Vec2<K>& v) {
    int sy = v.y.sign();
    if (sy == 0) return v.x.abs();
    Vec2<K> u = sy < 0 ? -v : v;
    if (u.x.sign() >= 0) return u.x + u.y;
    K g = u.y / u.x;
    K diff = g - K(chain.ray_gradient_limit());
    auto st = diff.standard_part();
    if (!st.has_value() || st->sign() <= 0) return u.y;
    SupportLine line = chain.segment_line(chain_bucket(chain, g));
    return K(line.alpha) * u.x + K(line.beta) * u.y;
}

template <OrderedField K>
bool disc_contains(const Chain& chain, const Vec2<K>& v) {
    return !(K(Rational(1)) < plane_norm(chain, v));
}

/// Norm of the 1-sum: plane norm plus the 1-norm of the W part.
template <OrderedField K>
K sum_norm(const Chain& chain, const VecD<K>& v) {
    K n = plane_norm(chain, v.j);
    for (const auto& [i, c] : v.w) n = n + c.abs();
    return n;
}

enum class ExtremeKind { ChainVertex, LimitVertex, TopVertex, WBasisVector, None };

struct ExtremeClass {
    enum class Status { NotOnSphere, OnSphereNotExtreme, Extreme };
    Status status = Status::NotOnSphere;
    ExtremeKind kind = ExtremeKind::None;
    std::size_t index = 0;  // chain vertex number or W basis index
    bool mirrored = false;  // the centrally-mirrored copy

    bool is_extreme() const { return status == Status::Extreme; }
};

/// Classifies v against the extreme points of the sphere of radius r > 0:
/// the chain vertices, the top vertex e2, the limit point (archimedean
/// scalars only; over Q(e) the disc contains points infinitesimally west of
/// it, so it is interior to a face), their mirrors, and the W basis
/// vectors of the 1-sum.
template <OrderedField K>
ExtremeClass extreme_classify(const Chain& chain, const K& r, const VecD<K>& v) {
    if (r.sign() <= 0) throw std::invalid_argument("extreme_classify: need r > 0");
    using Status = ExtremeClass::Status;
    if (!(sum_norm(chain, v) == r)) return {Status::NotOnSphere};
    if (!v.w.empty()) {
        if (!v.j.is_zero() || v.w.size() != 1) return {Status::OnSphereNotExtreme};
        const auto& [idx, coeff] = *v.w.begin();
        return {Status::Extreme, ExtremeKind::WBasisVector, idx, coeff.sign() < 0};
    }
    Vec2<K> u{v.j.x / r, v.j.y / r};
    bool mirrored = false;
    if (u.y.sign() < 0 || (u.y.sign() == 0 && u.x.sign() > 0)) {
        u = -u;
        mirrored = true;
    }
    if (u.y.sign() == 0)  // u = (-1, 0) = v_0
        return {Status::Extreme, ExtremeKind::ChainVertex, 0, mirrored};
    if (u.x.sign() == 0)  // u = e2
        return {Status::Extreme, ExtremeKind::TopVertex, 0, mirrored};
    if (u.x.sign() > 0) return {Status::OnSphereNotExtreme};  // NE edge interior
    K g = u.y / u.x;
    K diff = g - K(chain.ray_gradient_limit());
    auto st = diff.standard_part();
    if (!st.has_value() || st->sign() <= 0) {
        if (K::archimedean && u == lift<K>(chain.limit_vertex()))
            return {Status::Extreme, ExtremeKind::LimitVertex, 0, mirrored};
        return {Status::OnSphereNotExtreme};
    }
    std::size_t k = chain_bucket(chain, g);
    for (std::size_t j : {k, k + 1})
        if (u == lift<K>(chain.vertex(j)))
            return {Status::Extreme, ExtremeKind::ChainVertex, j, mirrored};
    return {Status::OnSphereNotExtreme};
}

}  // namespace normq

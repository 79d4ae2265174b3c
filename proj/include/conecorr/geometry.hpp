#ifndef CONECORR_GEOMETRY_HPP
#define CONECORR_GEOMETRY_HPP

#include <algorithm>
#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "detail/hull.hpp"
#include "detail/simplex.hpp"
#include "errors.hpp"
#include "min_norm_point.hpp"
#include "rational.hpp"

namespace conecorr {

/// Metric used for point-to-set and Hausdorff distances.
enum class Metric { euclidean, l1 };

/// A nonempty convex polytope in Q^m, stored as its canonical vertex set:
/// no vertex lies in the hull of the others and vertices are sorted
/// lexicographically, so structural equality is set equality.
class Polytope {
public:
    /// Canonicalizes conv(points). Throws on an empty set or mixed dimensions.
    static Polytope from_points(std::vector<RationalVector> points)
    {
        if (points.empty()) throw std::invalid_argument("canonicalize: empty point set");
        const std::size_t dim = points.front().size();
        if (dim == 0) throw std::invalid_argument("canonicalize: zero-dimensional points");
        for (const auto& p : points)
            if (p.size() != dim) throw DimensionMismatch("canonicalize", dim, p.size());
        std::sort(points.begin(), points.end());
        points.erase(std::unique(points.begin(), points.end()), points.end());

        auto [idx, hull] = detail::extreme_points(points);
        Polytope out;
        out.dim_ = dim;
        out.vertices_.reserve(idx.size());
        for (std::size_t i : idx) out.vertices_.push_back(std::move(points[i]));
        out.hull_ = std::move(hull);
        return out;
    }

    static Polytope point(RationalVector p) { return from_points({std::move(p)}); }
    static Polytope origin(std::size_t dim) { return point(RationalVector(dim)); }

    /// Axis-parallel segment/box helpers are handy for fixtures; this one is
    /// the segment between two points.
    static Polytope segment(RationalVector a, RationalVector b) { return from_points({std::move(a), std::move(b)}); }

    std::size_t dim() const noexcept { return dim_; }
    std::size_t affine_dim() const noexcept { return hull_->affine_dim(); }
    const std::vector<RationalVector>& vertices() const noexcept { return vertices_; }
    std::size_t vertex_count() const noexcept { return vertices_.size(); }
    bool is_singleton() const noexcept { return vertices_.size() == 1; }

    /// Exact membership test.
    bool contains(const RationalVector& x) const
    {
        if (x.size() != dim_) throw DimensionMismatch("contains_point", dim_, x.size());
        if (vertices_.size() == 1) return vertices_.front() == x;
        if (!detail::frame_contains_affinely(*hull_, x)) return false;
        if (!hull_->has_facets) return detail::lp_in_hull(vertices_, x);
        for (const auto& f : hull_->facets) {
            Rational s = 0;
            for (std::size_t k = 0; k < f.normal.size(); ++k) s += f.normal[k] * x[hull_->pivots[k]];
            if (s > f.offset) return false;
        }
        return true;
    }

    /// Largest squared Euclidean norm over the vertices (exact).
    Rational max_vertex_norm_squared() const
    {
        Rational best = 0;
        for (const auto& v : vertices_) best = std::max(best, v.norm_squared());
        return best;
    }

    friend bool operator==(const Polytope& a, const Polytope& b)
    {
        return a.dim_ == b.dim_ && a.vertices_ == b.vertices_;
    }

private:
    Polytope() = default;

    std::vector<RationalVector> vertices_;
    std::size_t dim_ = 0;
    std::shared_ptr<const detail::HullData> hull_;
};

inline Polytope canonicalize(std::vector<RationalVector> points)
{
    return Polytope::from_points(std::move(points));
}

inline Polytope minkowski_sum(const Polytope& p, const Polytope& q)
{
    if (p.dim() != q.dim()) throw DimensionMismatch("minkowski_sum", p.dim(), q.dim());
    std::vector<RationalVector> sums;
    sums.reserve(p.vertex_count() * q.vertex_count());
    for (const auto& a : p.vertices())
        for (const auto& b : q.vertices()) sums.push_back(a + b);
    return Polytope::from_points(std::move(sums));
}

inline Polytope operator+(const Polytope& p, const Polytope& q)
{
    return minkowski_sum(p, q);
}

inline Polytope scale(const Polytope& p, const Rational& t)
{
    if (sgn(t) == 0) return Polytope::origin(p.dim());
    std::vector<RationalVector> pts;
    pts.reserve(p.vertex_count());
    for (const auto& v : p.vertices()) pts.push_back(t * v);
    return Polytope::from_points(std::move(pts));
}

inline Polytope translate(const Polytope& p, const RationalVector& offset)
{
    return minkowski_sum(p, Polytope::point(offset));
}

inline bool contains_point(const Polytope& p, const RationalVector& x)
{
    return p.contains(x);
}

/// First vertex of q that p misses, if any.
inline std::optional<RationalVector> containment_witness(const Polytope& p, const Polytope& q)
{
    if (p.dim() != q.dim()) throw DimensionMismatch("contains_set", p.dim(), q.dim());
    for (const auto& v : q.vertices())
        if (!p.contains(v)) return v;
    return std::nullopt;
}

/// p ⊇ q. Checking q's vertices suffices since p is convex.
inline bool contains_set(const Polytope& p, const Polytope& q)
{
    return !containment_witness(p, q).has_value();
}

inline bool set_equal(const Polytope& p, const Polytope& q)
{
    return p == q;
}

namespace detail {

inline double l1_distance(const RationalVector& x, const Polytope& p)
{
    // min sum(u+ + u-)  s.t.  sum_v a_v v + u+ - u- = x, sum_v a_v = 1, all >= 0
    const std::size_t m = x.size();
    const std::size_t k = p.vertex_count();
    const std::size_t cols = k + 2 * m;
    std::vector<Rational> a((m + 1) * cols);
    std::vector<Rational> b(m + 1);
    std::vector<Rational> cost(cols);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t v = 0; v < k; ++v) a[j * cols + v] = p.vertices()[v][j];
        a[j * cols + k + j] = 1;
        a[j * cols + k + m + j] = -1;
        b[j] = x[j];
    }
    for (std::size_t v = 0; v < k; ++v) a[m * cols + v] = 1;
    b[m] = 1;
    for (std::size_t j = k; j < cols; ++j) cost[j] = 1;
    auto res = solve_lp(m + 1, cols, std::move(a), std::move(b), std::move(cost));
    return to_double(res.objective);
}

} // namespace detail

/// Distance from x to p: exactly 0 when p contains x, otherwise Wolfe's
/// min-norm point on the translated vertex set (Euclidean) or an exact LP (l1).
inline double dist_point_to_polytope(const RationalVector& x, const Polytope& p, Metric metric = Metric::euclidean)
{
    if (x.size() != p.dim()) throw DimensionMismatch("dist_point_to_polytope", x.size(), p.dim());
    if (p.contains(x)) return 0.0;
    if (metric == Metric::l1) return detail::l1_distance(x, p);
    const auto& verts = p.vertices();
    Eigen::MatrixXd shifted(static_cast<Eigen::Index>(p.dim()), static_cast<Eigen::Index>(verts.size()));
    for (std::size_t v = 0; v < verts.size(); ++v)
        for (std::size_t j = 0; j < p.dim(); ++j)
            shifted(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(v)) = to_double(verts[v][j] - x[j]);
    return min_norm_point(shifted).norm;
}

/// One-sided excess sup_{a in p} d(a, q), attained at a vertex of p.
inline double excess(const Polytope& p, const Polytope& q, Metric metric = Metric::euclidean)
{
    if (p.dim() != q.dim()) throw DimensionMismatch("excess", p.dim(), q.dim());
    double best = 0.0;
    for (const auto& v : p.vertices()) best = std::max(best, dist_point_to_polytope(v, q, metric));
    return best;
}

inline double hausdorff(const Polytope& p, const Polytope& q, Metric metric = Metric::euclidean)
{
    if (p.dim() != q.dim()) throw DimensionMismatch("hausdorff", p.dim(), q.dim());
    if (p == q) return 0.0;
    return std::max(excess(p, q, metric), excess(q, p, metric));
}

// ---------------------------------------------------------------------------
// Text form: [[x1,y1,...],[x2,y2,...],...] with entries p/q or integers.

inline std::string to_string(const Polytope& p)
{
    std::string out = "[";
    for (std::size_t i = 0; i < p.vertex_count(); ++i) {
        if (i) out += ',';
        out += to_string(p.vertices()[i]);
    }
    return out + "]";
}

inline std::vector<RationalVector> parse_point_list(std::string_view text)
{
    std::size_t pos = 0;
    auto skip = [&] {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\n' || text[pos] == '\r'))
            ++pos;
    };
    auto expect = [&](char c) {
        skip();
        if (pos >= text.size() || text[pos] != c)
            throw ParseError(std::string("polytope text: expected '") + c + "' at offset " + std::to_string(pos));
        ++pos;
    };
    std::vector<RationalVector> points;
    expect('[');
    skip();
    if (pos < text.size() && text[pos] == ']') throw ParseError("polytope text: empty point set");
    for (;;) {
        expect('[');
        std::vector<Rational> coords;
        for (;;) {
            skip();
            std::size_t start = pos;
            while (pos < text.size() && text[pos] != ',' && text[pos] != ']') ++pos;
            coords.push_back(parse_rational(text.substr(start, pos - start)));
            skip();
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            expect(']');
            break;
        }
        points.emplace_back(std::move(coords));
        skip();
        if (pos < text.size() && text[pos] == ',') {
            ++pos;
            continue;
        }
        expect(']');
        break;
    }
    skip();
    if (pos != text.size()) throw ParseError("polytope text: trailing characters at offset " + std::to_string(pos));
    return points;
}

inline Polytope parse_polytope(std::string_view text)
{
    return Polytope::from_points(parse_point_list(text));
}

} // namespace conecorr

#endif

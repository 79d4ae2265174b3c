#ifndef CONECORR_DETAIL_HULL_HPP
#define CONECORR_DETAIL_HULL_HPP

// Exact convex-hull kernels used to canonicalize V-polytopes.
//
// Points are first mapped into their affine hull (by selecting the RREF pivot
// coordinates, which is injective there), then scaled to a common integer
// denominator. Hulls of affine dimension <= 3 run on integer predicates
// (__int128 when coordinates fit in 40 bits, mpz otherwise); higher
// dimensions fall back to exact LP redundancy elimination.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <numeric>
#include <set>
#include <utility>
#include <vector>

#include "../rational.hpp"
#include "simplex.hpp"

namespace conecorr::detail {

/// Half-space n.y <= offset in the projected coordinates of an affine frame.
struct Facet {
    std::vector<Rational> normal;
    Rational offset;
};

/// Affine hull description plus (for affine dimension <= 3) a facet list.
struct HullData {
    RationalVector origin;
    std::vector<std::size_t> pivots;
    std::vector<RationalVector> rows; // RREF basis of the direction space
    std::vector<Facet> facets;
    bool has_facets = false;

    std::size_t affine_dim() const { return pivots.size(); }
};

/// True iff x is a convex combination of points (exact phase-1 LP).
inline bool lp_in_hull(std::span<const RationalVector> points, const RationalVector& x)
{
    const std::size_t dim = x.size();
    const std::size_t k = points.size();
    if (k == 0) return false;
    std::vector<Rational> a((dim + 1) * k);
    std::vector<Rational> b(dim + 1);
    for (std::size_t col = 0; col < k; ++col) {
        for (std::size_t j = 0; j < dim; ++j) a[j * k + col] = points[col][j];
        a[dim * k + col] = 1;
    }
    for (std::size_t j = 0; j < dim; ++j) b[j] = x[j];
    b[dim] = 1;
    return solve_lp(dim + 1, k, std::move(a), std::move(b)).status == LpStatus::optimal;
}

/// Sequential redundancy elimination: keeps exactly the points not in the hull
/// of the remaining others. Input must be duplicate-free.
inline std::vector<std::size_t> lp_extreme_points(std::span<const RationalVector> points)
{
    std::vector<bool> kept(points.size(), true);
    std::vector<RationalVector> others;
    for (std::size_t i = 0; i < points.size(); ++i) {
        others.clear();
        for (std::size_t j = 0; j < points.size(); ++j)
            if (j != i && kept[j]) others.push_back(points[j]);
        if (!others.empty() && lp_in_hull(others, points[i])) kept[i] = false;
    }
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < points.size(); ++i)
        if (kept[i]) out.push_back(i);
    return out;
}

inline HullData affine_frame(std::span<const RationalVector> points)
{
    HullData frame;
    frame.origin = points.front();
    const std::size_t m = frame.origin.size();
    for (std::size_t p = 1; p < points.size() && frame.rows.size() < m; ++p) {
        RationalVector d = points[p] - frame.origin;
        for (std::size_t k = 0; k < frame.rows.size(); ++k) {
            const Rational f = d[frame.pivots[k]];
            if (sgn(f) != 0) d -= f * frame.rows[k];
        }
        auto lead = std::find_if(d.begin(), d.end(), [](const Rational& q) { return sgn(q) != 0; });
        if (lead == d.end()) continue;
        const std::size_t q = static_cast<std::size_t>(lead - d.begin());
        d *= Rational(1 / d[q]);
        for (auto& row : frame.rows) {
            const Rational f = row[q];
            if (sgn(f) != 0) row -= f * d;
        }
        // keep rows ordered by pivot column
        auto pos = std::lower_bound(frame.pivots.begin(), frame.pivots.end(), q);
        auto at = pos - frame.pivots.begin();
        frame.pivots.insert(pos, q);
        frame.rows.insert(frame.rows.begin() + at, std::move(d));
    }
    return frame;
}

inline bool frame_contains_affinely(const HullData& frame, const RationalVector& x)
{
    const std::size_t m = x.size();
    if (frame.pivots.size() == m) return true;
    RationalVector d = x - frame.origin;
    std::size_t next = 0;
    for (std::size_t j = 0; j < m; ++j) {
        if (next < frame.pivots.size() && frame.pivots[next] == j) {
            ++next;
            continue;
        }
        Rational expected = 0;
        for (std::size_t k = 0; k < frame.rows.size(); ++k) expected += d[frame.pivots[k]] * frame.rows[k][j];
        if (expected != d[j]) return false;
    }
    return true;
}

// ---------------------------------------------------------------------------
// Integer predicates

inline int sign_of(__int128 v) { return (v > 0) - (v < 0); }
inline int sign_of(const Integer& v) { return sgn(v); }

inline Integer to_integer(__int128 v)
{
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Integer hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
    Integer lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
    Integer out = (hi << 64) + lo;
    return neg ? Integer(-out) : out;
}
inline const Integer& to_integer(const Integer& v) { return v; }

template <class Int>
struct IntFacet {
    std::vector<Int> normal;
    Int offset;
};

template <class Int>
std::vector<std::size_t> hull_1d(const std::vector<Int>& pts, std::vector<IntFacet<Int>>& facets)
{
    std::size_t lo = 0, hi = 0;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i] < pts[lo]) lo = i;
        if (pts[hi] < pts[i]) hi = i;
    }
    facets.push_back({{Int(1)}, pts[hi]});
    facets.push_back({{Int(-1)}, Int(-pts[lo])});
    std::vector<std::size_t> out{lo, hi};
    std::sort(out.begin(), out.end());
    return out;
}

// Andrew's monotone chain on a full-dimensional planar set; collinear points are dropped.
template <class Int>
std::vector<std::size_t> hull_2d(const std::vector<Int>& pts, std::vector<IntFacet<Int>>& facets)
{
    const std::size_t k = pts.size() / 2;
    auto x = [&](std::size_t i) -> const Int& { return pts[2 * i]; };
    auto y = [&](std::size_t i) -> const Int& { return pts[2 * i + 1]; };
    std::vector<std::size_t> order(k);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return x(a) < x(b) || (x(a) == x(b) && y(a) < y(b));
    });
    auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
        Int v = (x(a) - x(o)) * (y(b) - y(o)) - (y(a) - y(o)) * (x(b) - x(o));
        return sign_of(v);
    };
    std::vector<std::size_t> chain(2 * k);
    std::size_t n = 0;
    for (std::size_t i = 0; i < k; ++i) {
        while (n >= 2 && cross(chain[n - 2], chain[n - 1], order[i]) <= 0) --n;
        chain[n++] = order[i];
    }
    for (std::size_t i = k - 1, lower = n + 1; i-- > 0;) {
        while (n >= lower && cross(chain[n - 2], chain[n - 1], order[i]) <= 0) --n;
        chain[n++] = order[i];
    }
    chain.resize(n - 1); // counter-clockwise, last point repeats the first
    for (std::size_t e = 0; e < chain.size(); ++e) {
        std::size_t a = chain[e], b = chain[(e + 1) % chain.size()];
        Int nx = y(b) - y(a);
        Int ny = x(a) - x(b);
        Int off = nx * x(a) + ny * y(a);
        facets.push_back({{nx, ny}, off});
    }
    std::sort(chain.begin(), chain.end());
    return chain;
}

// Incremental 3-D hull over a full-dimensional set. A point contributes only if
// it strictly sees some face; non-extreme survivors (points in the relative
// interior of a flat region or on an edge) are removed afterwards by checking
// that the normals of their incident triangles have rank 3.
template <class Int>
std::vector<std::size_t> hull_3d(const std::vector<Int>& pts, std::vector<IntFacet<Int>>& facets)
{
    const std::size_t k = pts.size() / 3;
    auto c = [&](std::size_t i, int j) -> const Int& { return pts[3 * i + static_cast<std::size_t>(j)]; };

    struct Face {
        std::array<std::size_t, 3> v;
        std::array<Int, 3> n;
        Int off;
        bool alive = true;
    };
    std::vector<Face> faces;

    auto make_face = [&](std::size_t a, std::size_t b, std::size_t d) {
        Face f;
        f.v = {a, b, d};
        Int ux = c(b, 0) - c(a, 0), uy = c(b, 1) - c(a, 1), uz = c(b, 2) - c(a, 2);
        Int wx = c(d, 0) - c(a, 0), wy = c(d, 1) - c(a, 1), wz = c(d, 2) - c(a, 2);
        f.n[0] = uy * wz - uz * wy;
        f.n[1] = uz * wx - ux * wz;
        f.n[2] = ux * wy - uy * wx;
        f.off = f.n[0] * c(a, 0) + f.n[1] * c(a, 1) + f.n[2] * c(a, 2);
        return f;
    };
    auto side = [&](const Face& f, std::size_t p) {
        Int s = f.n[0] * c(p, 0) + f.n[1] * c(p, 1) + f.n[2] * c(p, 2) - f.off;
        return sign_of(s);
    };

    // initial tetrahedron
    std::size_t i0 = 0, i1 = 1, i2 = k, i3 = k;
    for (std::size_t i = 2; i < k && i2 == k; ++i) {
        Face probe = make_face(i0, i1, i);
        if (sign_of(probe.n[0]) || sign_of(probe.n[1]) || sign_of(probe.n[2])) i2 = i;
    }
    Face base = make_face(i0, i1, i2);
    for (std::size_t i = 2; i < k && i3 == k; ++i)
        if (i != i2 && side(base, i) != 0) i3 = i;

    const std::array<std::array<std::size_t, 4>, 4> tet = {
        {{i0, i1, i2, i3}, {i0, i3, i1, i2}, {i1, i3, i2, i0}, {i0, i2, i3, i1}}};
    for (const auto& t : tet) {
        Face f = make_face(t[0], t[1], t[2]);
        if (side(f, t[3]) > 0) f = make_face(t[0], t[2], t[1]);
        faces.push_back(std::move(f));
    }

    std::vector<std::size_t> visible;
    std::set<std::pair<std::size_t, std::size_t>> edges;
    for (std::size_t p = 0; p < k; ++p) {
        if (p == i0 || p == i1 || p == i2 || p == i3) continue;
        visible.clear();
        for (std::size_t f = 0; f < faces.size(); ++f)
            if (faces[f].alive && side(faces[f], p) > 0) visible.push_back(f);
        if (visible.empty()) continue;
        edges.clear();
        for (std::size_t f : visible) {
            const auto& v = faces[f].v;
            for (int e = 0; e < 3; ++e) edges.insert({v[e], v[(e + 1) % 3]});
            faces[f].alive = false;
        }
        for (const auto& [a, b] : edges)
            if (!edges.count({b, a})) faces.push_back(make_face(a, b, p));
        if (faces.size() > 64 && faces.size() > 4 * visible.size())
            std::erase_if(faces, [](const Face& f) { return !f.alive; });
    }
    std::erase_if(faces, [](const Face& f) { return !f.alive; });

    std::vector<std::vector<std::size_t>> incident(k);
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (std::size_t v : faces[f].v) incident[v].push_back(f);

    std::vector<std::array<Integer, 3>> normals(faces.size());
    for (std::size_t f = 0; f < faces.size(); ++f)
        for (int j = 0; j < 3; ++j) normals[f][j] = to_integer(faces[f].n[j]);

    auto full_rank = [&](const std::vector<std::size_t>& fs) {
        for (std::size_t a = 0; a < fs.size(); ++a)
            for (std::size_t b = a + 1; b < fs.size(); ++b) {
                const auto& u = normals[fs[a]];
                const auto& w = normals[fs[b]];
                std::array<Integer, 3> x = {u[1] * w[2] - u[2] * w[1], u[2] * w[0] - u[0] * w[2],
                                            u[0] * w[1] - u[1] * w[0]};
                if (!sgn(x[0]) && !sgn(x[1]) && !sgn(x[2])) continue;
                for (std::size_t d = 0; d < fs.size(); ++d) {
                    const auto& z = normals[fs[d]];
                    Integer det = x[0] * z[0] + x[1] * z[1] + x[2] * z[2];
                    if (sgn(det)) return true;
                }
                return false;
            }
        return false;
    };

    std::vector<std::size_t> out;
    for (std::size_t v = 0; v < k; ++v)
        if (!incident[v].empty() && full_rank(incident[v])) out.push_back(v);
    for (auto& f : faces) facets.push_back({{f.n[0], f.n[1], f.n[2]}, f.off});
    return out;
}

template <class Int>
std::vector<std::size_t> integer_hull(std::size_t r, const std::vector<Int>& pts, std::vector<IntFacet<Int>>& facets)
{
    switch (r) {
    case 1: return hull_1d(pts, facets);
    case 2: return hull_2d(pts, facets);
    default: return hull_3d(pts, facets);
    }
}

template <class Int>
std::vector<std::size_t> run_integer_hull(std::size_t r, const std::vector<Int>& pts, const Integer& scale,
                                          HullData& frame)
{
    std::vector<IntFacet<Int>> int_facets;
    auto out = integer_hull(r, pts, int_facets);
    frame.facets.reserve(int_facets.size());
    for (const auto& f : int_facets) {
        Facet g;
        for (const auto& n : f.normal) g.normal.emplace_back(to_integer(n));
        g.offset = Rational(to_integer(f.offset), scale);
        g.offset.canonicalize();
        frame.facets.push_back(std::move(g));
    }
    frame.has_facets = true;
    return out;
}

/// Computes the affine frame and extreme-point indices of a sorted,
/// duplicate-free, nonempty point list.
inline std::pair<std::vector<std::size_t>, std::shared_ptr<HullData>> extreme_points(
    std::span<const RationalVector> points)
{
    auto frame = std::make_shared<HullData>(affine_frame(points));
    const std::size_t r = frame->affine_dim();
    if (r == 0) return {{0}, frame};
    if (r > 3) return {lp_extreme_points(points), frame};

    Integer scale = 1;
    for (const auto& p : points)
        for (std::size_t j : frame->pivots) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), p[j].get_den_mpz_t());
    std::vector<Integer> big;
    big.reserve(points.size() * r);
    std::size_t bits = 0;
    for (const auto& p : points)
        for (std::size_t j : frame->pivots) {
            Integer v = p[j].get_num() * (scale / p[j].get_den());
            bits = std::max(bits, mpz_sizeinbase(v.get_mpz_t(), 2));
            big.push_back(std::move(v));
        }
    std::vector<std::size_t> idx;
    if (bits <= 40) {
        std::vector<__int128> small;
        small.reserve(big.size());
        for (const auto& v : big) small.push_back(static_cast<__int128>(v.get_si()));
        idx = run_integer_hull(r, small, scale, *frame);
    } else {
        idx = run_integer_hull(r, big, scale, *frame);
    }
    return {idx, frame};
}

} // namespace conecorr::detail

#endif

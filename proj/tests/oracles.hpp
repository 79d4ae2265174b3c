#ifndef CONECORR_TESTS_ORACLES_HPP
#define CONECORR_TESTS_ORACLES_HPP

// Brute-force reference computations. Nothing here calls into the hull,
// simplex or min-norm-point code it is used to check.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include <conecorr/rational.hpp>

namespace oracle {

using conecorr::Rational;
using conecorr::RationalVector;

/// Unique solution of the square-or-tall system M a = b if M has full column
/// rank and the system is consistent; nullopt otherwise. Exact Gauss.
inline std::optional<std::vector<Rational>> solve_full_rank(std::vector<std::vector<Rational>> m, std::vector<Rational> b)
{
    const std::size_t rows = m.size();
    const std::size_t cols = m.empty() ? 0 : m.front().size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols; ++c) {
        std::size_t piv = r;
        while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
        if (piv == rows) return std::nullopt; // rank deficient
        std::swap(m[piv], m[r]);
        std::swap(b[piv], b[r]);
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || sgn(m[i][c]) == 0) continue;
            Rational f = m[i][c] / m[r][c];
            for (std::size_t k = c; k < cols; ++k) m[i][k] -= f * m[r][k];
            b[i] -= f * b[r];
        }
        ++r;
    }
    for (std::size_t i = cols; i < rows; ++i)
        if (sgn(b[i]) != 0) return std::nullopt;
    std::vector<Rational> x(cols);
    for (std::size_t c = 0; c < cols; ++c) x[c] = b[c] / m[c][c];
    return x;
}

/// p in conv(points), by Caratheodory: search every affinely independent
/// subset of at most dim+1 points for nonnegative barycentric coordinates.
inline bool in_hull(const std::vector<RationalVector>& points, const RationalVector& p)
{
    const std::size_t dim = p.size();
    const std::size_t k = points.size();
    std::vector<std::size_t> pick;
    std::function<bool(std::size_t)> rec = [&](std::size_t start) -> bool {
        if (!pick.empty()) {
            std::vector<std::vector<Rational>> m(dim + 1, std::vector<Rational>(pick.size()));
            std::vector<Rational> b(dim + 1);
            for (std::size_t j = 0; j < dim; ++j) {
                for (std::size_t c = 0; c < pick.size(); ++c) m[j][c] = points[pick[c]][j];
                b[j] = p[j];
            }
            for (std::size_t c = 0; c < pick.size(); ++c) m[dim][c] = 1;
            b[dim] = 1;
            auto sol = solve_full_rank(m, b);
            if (sol && std::all_of(sol->begin(), sol->end(), [](const Rational& q) { return sgn(q) >= 0; })) return true;
        }
        if (pick.size() == dim + 1) return false;
        for (std::size_t i = start; i < k; ++i) {
            pick.push_back(i);
            if (rec(i + 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    return rec(0);
}

/// Sorted extreme points of a point list (duplicates collapse).
inline std::vector<RationalVector> extreme_points(std::vector<RationalVector> points)
{
    std::sort(points.begin(), points.end());
    points.erase(std::unique(points.begin(), points.end()), points.end());
    std::vector<RationalVector> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        std::vector<RationalVector> others;
        for (std::size_t j = 0; j < points.size(); ++j)
            if (j != i) others.push_back(points[j]);
        if (others.empty() || !in_hull(others, points[i])) out.push_back(points[i]);
    }
    return out;
}

/// Euclidean distance from x to conv(vertices) by minimizing over the
/// barycentric lattice with the given pitch (1/steps). Up to 4 vertices.
inline double grid_distance(const std::vector<std::vector<double>>& vertices, const std::vector<double>& x, int steps = 200)
{
    const std::size_t k = vertices.size();
    const std::size_t dim = x.size();
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> w(k, 0);
    std::vector<double> point(dim);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
        if (i + 1 == k) {
            w[i] = left;
            double d2 = 0.0;
            for (std::size_t j = 0; j < dim; ++j) {
                double s = 0.0;
                for (std::size_t v = 0; v < k; ++v) s += w[v] * vertices[v][j];
                const double diff = s / steps - x[j];
                d2 += diff * diff;
            }
            best = std::min(best, d2);
            return;
        }
        for (int t = 0; t <= left; ++t) {
            w[i] = t;
            rec(i + 1, left - t);
        }
    };
    rec(0, steps);
    return std::sqrt(best);
}

/// Hausdorff distance between two segments in the plane (or a segment and a
/// point) by dense sampling of both sets.
inline double sampled_hausdorff(const std::vector<std::vector<double>>& a, const std::vector<std::vector<double>>& b,
                                int samples = 2000)
{
    auto sample = [&](const std::vector<std::vector<double>>& s) {
        std::vector<std::vector<double>> out;
        if (s.size() == 1) return s;
        for (int i = 0; i <= samples; ++i) {
            const double t = static_cast<double>(i) / samples;
            std::vector<double> p(s[0].size());
            for (std::size_t j = 0; j < p.size(); ++j) p[j] = (1 - t) * s[0][j] + t * s[1][j];
            out.push_back(p);
        }
        return out;
    };
    auto sa = sample(a), sb = sample(b);
    auto one_sided = [](const auto& from, const auto& to) {
        double worst = 0.0;
        for (const auto& p : from) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& q : to) {
                double d2 = 0.0;
                for (std::size_t j = 0; j < p.size(); ++j) d2 += (p[j] - q[j]) * (p[j] - q[j]);
                best = std::min(best, d2);
            }
            worst = std::max(worst, std::sqrt(best));
        }
        return worst;
    };
    return std::max(one_sided(sa, sb), one_sided(sb, sa));
}

inline std::vector<std::vector<double>> to_doubles(const std::vector<RationalVector>& pts)
{
    std::vector<std::vector<double>> out;
    for (const auto& p : pts) out.push_back(p.to_doubles());
    return out;
}

} // namespace oracle

#endif

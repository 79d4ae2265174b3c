#ifndef CONECORR_CORRESPONDENCE_HPP
#define CONECORR_CORRESPONDENCE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cone.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "random.hpp"
#include "rational.hpp"

namespace conecorr {

enum class CorrespondenceKind { linear, example1, inflated, affine, custom };

inline const char* kind_name(CorrespondenceKind kind)
{
    switch (kind) {
    case CorrespondenceKind::linear: return "linear";
    case CorrespondenceKind::example1: return "example1";
    case CorrespondenceKind::inflated: return "inflated";
    case CorrespondenceKind::affine: return "affine";
    case CorrespondenceKind::custom: return "custom";
    }
    return "?";
}

/// A polytope-valued map on a finitely generated cone.
///
/// Fixture kinds:
///  - linear:   x -> sum_i lambda_i * images[i]
///  - example1: on the standard quadrant of Q^2, {(0,0)} on the axis y = 0 and
///              the segment from (0,0) to (x,0) when y > 0
///  - inflated: linear part + min_i(lambda_i) * inflation, with 0 in inflation
///  - affine:   linear part + a constant offset; neither superadditive nor
///              homogeneous unless the offset is {0}
///  - custom:   arbitrary callback, for tests
class Correspondence {
public:
    using Rule = std::function<Polytope(const ConePoint&)>;

    static Correspondence linear(ConeBasis domain, std::vector<Polytope> images)
    {
        const std::size_t m = check_images(domain, images);
        return Correspondence(std::move(domain), m, CorrespondenceKind::linear, std::move(images), std::nullopt, {});
    }

    static Correspondence example1()
    {
        return Correspondence(ConeBasis::standard(2), 2, CorrespondenceKind::example1, {}, std::nullopt, {});
    }

    static Correspondence inflated(ConeBasis domain, std::vector<Polytope> images, Polytope inflation)
    {
        const std::size_t m = check_images(domain, images);
        if (inflation.dim() != m) throw DimensionMismatch("inflated correspondence", m, inflation.dim());
        if (!inflation.contains(RationalVector(m)))
            throw std::invalid_argument("inflated correspondence: inflation polytope must contain the origin");
        return Correspondence(std::move(domain), m, CorrespondenceKind::inflated, std::move(images),
                              std::move(inflation), {});
    }

    static Correspondence affine(ConeBasis domain, std::vector<Polytope> images, Polytope offset)
    {
        const std::size_t m = check_images(domain, images);
        if (offset.dim() != m) throw DimensionMismatch("affine correspondence", m, offset.dim());
        return Correspondence(std::move(domain), m, CorrespondenceKind::affine, std::move(images), std::move(offset),
                              {});
    }

    static Correspondence custom(ConeBasis domain, std::size_t codomain_dim, Rule rule)
    {
        return Correspondence(std::move(domain), codomain_dim, CorrespondenceKind::custom, {}, std::nullopt,
                              std::move(rule));
    }

    const ConeBasis& domain() const noexcept { return state_->domain; }
    std::size_t codomain_dim() const noexcept { return state_->m; }
    CorrespondenceKind kind() const noexcept { return state_->kind; }
    /// Basis images of the linear part (empty for example1/custom).
    const std::vector<Polytope>& images() const noexcept { return state_->images; }
    /// Inflation polytope (inflated) or constant offset (affine).
    const std::optional<Polytope>& extra() const noexcept { return state_->extra; }

    Polytope eval(const ConePoint& x) const
    {
        const auto& s = *state_;
        if (x.lambdas().size() != s.domain.size()) throw DimensionMismatch("eval", s.domain.size(), x.lambdas().size());
        switch (s.kind) {
        case CorrespondenceKind::linear: return linear_part(x);
        case CorrespondenceKind::example1: {
            const auto& l = x.lambdas();
            if (sgn(l[1]) == 0) return Polytope::origin(2);
            return Polytope::segment(RationalVector(2), RationalVector{l[0], 0});
        }
        case CorrespondenceKind::inflated: {
            const auto& l = x.lambdas();
            const Rational s_min = *std::min_element(l.begin(), l.end());
            return minkowski_sum(linear_part(x), scale(*s.extra, s_min));
        }
        case CorrespondenceKind::affine: return minkowski_sum(linear_part(x), *s.extra);
        case CorrespondenceKind::custom: {
            Polytope out = s.rule(x);
            if (out.dim() != s.m) throw DimensionMismatch("custom rule", s.m, out.dim());
            return out;
        }
        }
        throw std::logic_error("unreachable");
    }

    /// Evaluates at an ambient point; throws NotInCone outside the domain cone.
    Polytope eval(const RationalVector& x) const { return eval(state_->domain.point(x)); }

    /// The correspondence x -> alpha * phi(x).
    Correspondence scaled(const Rational& alpha) const
    {
        const auto& s = *state_;
        auto scale_all = [&](const std::vector<Polytope>& ps) {
            std::vector<Polytope> out;
            for (const auto& p : ps) out.push_back(scale(p, alpha));
            return out;
        };
        switch (s.kind) {
        case CorrespondenceKind::linear: return linear(s.domain, scale_all(s.images));
        case CorrespondenceKind::inflated:
            if (sgn(alpha) >= 0) return inflated(s.domain, scale_all(s.images), scale(*s.extra, alpha));
            break;
        case CorrespondenceKind::affine: return affine(s.domain, scale_all(s.images), scale(*s.extra, alpha));
        default: break;
        }
        Correspondence base = *this;
        return custom(s.domain, s.m, [base, alpha](const ConePoint& x) { return scale(base.eval(x), alpha); });
    }

private:
    struct State {
        ConeBasis domain;
        std::size_t m;
        CorrespondenceKind kind;
        std::vector<Polytope> images;
        std::optional<Polytope> extra;
        Rule rule;
    };

    Correspondence(ConeBasis domain, std::size_t m, CorrespondenceKind kind, std::vector<Polytope> images,
                   std::optional<Polytope> extra, Rule rule)
        : state_(std::make_shared<const State>(
              State{std::move(domain), m, kind, std::move(images), std::move(extra), std::move(rule)}))
    {
    }

    static std::size_t check_images(const ConeBasis& domain, const std::vector<Polytope>& images)
    {
        if (images.size() != domain.size())
            throw std::invalid_argument("correspondence: expected " + std::to_string(domain.size()) +
                                        " basis images, got " + std::to_string(images.size()));
        const std::size_t m = images.front().dim();
        for (const auto& p : images)
            if (p.dim() != m) throw DimensionMismatch("correspondence images", m, p.dim());
        return m;
    }

    Polytope linear_part(const ConePoint& x) const
    {
        const auto& s = *state_;
        std::optional<Polytope> acc;
        for (std::size_t i = 0; i < s.images.size(); ++i) {
            const Rational& l = x.lambdas()[i];
            if (sgn(l) == 0) continue;
            Polytope term = scale(s.images[i], l);
            acc = acc ? minkowski_sum(*acc, term) : std::move(term);
        }
        return acc ? std::move(*acc) : Polytope::origin(s.m);
    }

    std::shared_ptr<const State> state_;
};

/// Lipschitz constant of a linear correspondence w.r.t. the l1 norm of basis
/// coordinates: sum_i max_{v in images[i]} ||v||_2.
inline double linear_lipschitz_constant(const Correspondence& phi)
{
    double total = 0.0;
    for (const auto& img : phi.images()) total += std::sqrt(to_double(img.max_vertex_norm_squared()));
    return total;
}

// ---------------------------------------------------------------------------
// Sampling

struct SampleOptions {
    std::vector<Rational> grid = {Rational(0), Rational(1, 2), Rational(1), Rational(3, 2), Rational(2)};
    std::size_t random_count = 50;
    std::int64_t max_denominator = 16;
    std::uint64_t seed = 1;
};

/// Every lambda in grid^n (lexicographic), then random_count random points
/// with coordinates in [0, 2].
inline std::vector<ConePoint> sample_points(const ConeBasis& basis, const SampleOptions& opts)
{
    std::vector<ConePoint> out;
    const std::size_t n = basis.size();
    if (!opts.grid.empty()) {
        std::vector<std::size_t> idx(n, 0);
        for (;;) {
            RationalVector l(n);
            for (std::size_t i = 0; i < n; ++i) l[i] = opts.grid[idx[i]];
            out.push_back(basis.from_coords(l));
            std::size_t pos = n;
            while (pos > 0 && ++idx[pos - 1] == opts.grid.size()) idx[--pos] = 0;
            if (pos == 0) break;
        }
    }
    RationalSampler rng(opts.seed);
    for (std::size_t k = 0; k < opts.random_count; ++k) out.push_back(basis.from_coords(rng.vector(n, opts.max_denominator, 0, 2)));
    return out;
}

/// Lattice points of the standard simplex conv{e_1..e_n} with denominator `steps`,
/// in lexicographic order of the coordinate tuples.
inline std::vector<ConePoint> simplex_grid(const ConeBasis& basis, std::size_t steps)
{
    std::vector<ConePoint> out;
    const std::size_t n = basis.size();
    std::vector<std::size_t> parts(n, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t left) {
        if (i + 1 == n) {
            parts[i] = left;
            RationalVector l(n);
            for (std::size_t j = 0; j < n; ++j) {
                l[j] = Rational(static_cast<long>(parts[j]), static_cast<long>(steps));
                l[j].canonicalize();
            }
            out.push_back(basis.from_coords(l));
            return;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            parts[i] = v;
            rec(i + 1, left - v);
        }
    };
    rec(0, steps);
    return out;
}

// ---------------------------------------------------------------------------
// Property checkers

struct Verdict {
    bool holds = true;
    bool equality = false; // set equality held, where meaningful
    std::optional<RationalVector> witness;
    std::string detail;

    explicit operator bool() const noexcept { return holds; }
};

/// phi(x+y) ⊇ phi(x) + phi(y), exactly; the witness is a vertex of the sum
/// missing from phi(x+y).
inline Verdict check_superadditive(const Correspondence& phi, const ConePoint& x, const ConePoint& y)
{
    Polytope joint = phi.eval(x + y);
    Polytope sum = minkowski_sum(phi.eval(x), phi.eval(y));
    Verdict v;
    v.witness = containment_witness(joint, sum);
    v.holds = !v.witness;
    v.equality = joint == sum;
    if (!v.holds) v.detail = "phi(x+y)=" + to_string(joint) + " misses " + to_string(*v.witness);
    return v;
}

/// phi(r x) = r phi(x) for a positive rational r, exactly.
inline Verdict check_q_homogeneous(const Correspondence& phi, const ConePoint& x, const Rational& r)
{
    if (sgn(r) <= 0) throw std::invalid_argument("check_q_homogeneous: r must be positive");
    Polytope lhs = phi.eval(x.scaled(r));
    Polytope rhs = scale(phi.eval(x), r);
    Verdict v;
    v.equality = lhs == rhs;
    v.holds = v.equality;
    if (!v.holds) {
        v.witness = containment_witness(lhs, rhs);
        if (!v.witness) v.witness = containment_witness(rhs, lhs);
        v.detail = "phi(rx)=" + to_string(lhs) + " vs r*phi(x)=" + to_string(rhs);
    }
    return v;
}

/// Coordinate track phi_i(x) = [g_i(x), h_i(x)] (0-based coordinate index).
class ScalarTrack {
public:
    ScalarTrack(Correspondence phi, std::size_t index) : phi_(std::move(phi)), index_(index)
    {
        if (index_ >= phi_.codomain_dim())
            throw std::out_of_range("scalarize: coordinate " + std::to_string(index_) + " out of range");
    }

    std::size_t index() const noexcept { return index_; }
    const Correspondence& correspondence() const noexcept { return phi_; }

    std::pair<Rational, Rational> bounds(const ConePoint& x) const { return bounds_of(phi_.eval(x)); }
    Rational lower(const ConePoint& x) const { return bounds(x).first; }
    Rational upper(const ConePoint& x) const { return bounds(x).second; }

    std::pair<Rational, Rational> bounds_of(const Polytope& p) const
    {
        Rational lo = p.vertices().front()[index_];
        Rational hi = lo;
        for (const auto& v : p.vertices()) {
            if (v[index_] < lo) lo = v[index_];
            if (v[index_] > hi) hi = v[index_];
        }
        return {lo, hi};
    }

private:
    Correspondence phi_;
    std::size_t index_;
};

inline ScalarTrack scalarize(const Correspondence& phi, std::size_t index)
{
    return ScalarTrack(phi, index);
}

/// The box prod_i [g_i(x), h_i(x)] contains phi(x) (the product relation only
/// holds with equality for box-valued phi).
inline Verdict check_scalar_box(const Correspondence& phi, const ConePoint& x)
{
    Polytope value = phi.eval(x);
    Verdict v;
    for (std::size_t i = 0; i < phi.codomain_dim() && v.holds; ++i) {
        auto [lo, hi] = ScalarTrack(phi, i).bounds_of(value);
        for (const auto& vert : value.vertices())
            if (vert[i] < lo || vert[i] > hi) {
                v.holds = false;
                v.witness = vert;
                v.detail = "coordinate " + std::to_string(i) + " outside [" + to_string(lo) + "," + to_string(hi) + "]";
                break;
            }
    }
    return v;
}

/// g((x+y)/2) <= (g(x)+g(y))/2 and h((x+y)/2) >= (h(x)+h(y))/2, exactly.
inline Verdict jensen_check(const ScalarTrack& track, const ConePoint& x, const ConePoint& y)
{
    const auto [gx, hx] = track.bounds(x);
    const auto [gy, hy] = track.bounds(y);
    const auto [gm, hm] = track.bounds((x + y).scaled(Rational(1, 2)));
    const Rational g_avg = (gx + gy) / 2;
    const Rational h_avg = (hx + hy) / 2;
    Verdict v;
    const bool convex = gm <= g_avg;
    const bool concave = hm >= h_avg;
    v.holds = convex && concave;
    v.equality = gm == g_avg && hm == h_avg;
    if (!convex) v.detail = "g(mid)=" + to_string(gm) + " > " + to_string(g_avg);
    if (!concave) v.detail += (v.detail.empty() ? "" : "; ") + std::string("h(mid)=") + to_string(hm) + " < " +
                              to_string(h_avg);
    return v;
}

// ---------------------------------------------------------------------------
// Probes

struct ContinuityRow {
    std::size_t k = 0;
    RationalVector point;
    double hausdorff = 0.0;
    double lsc_deficit = 0.0; // sup_{a in phi(x)} d(a, phi(x_k))
    double usc_deficit = 0.0; // sup_{b in phi(x_k)} d(b, phi(x))
    bool lsc_exact_zero = false;
    bool usc_exact_zero = false;
};

struct ContinuityReport {
    std::vector<ContinuityRow> rows;
    bool converges = false;
    double final_gap = 0.0;
    std::string verdict;
};

/// Hausdorff-distance probe along x_k = x + v / 2^k, k = 1..k_max.
inline ContinuityReport continuity_probe(const Correspondence& phi, const RationalVector& x, const RationalVector& v,
                                         std::size_t k_max, double tol = 1e-9, Metric metric = Metric::euclidean)
{
    const auto& basis = phi.domain();
    if (v.size() != basis.ambient_dim()) throw DimensionMismatch("continuity_probe", basis.ambient_dim(), v.size());
    const ConePoint base = basis.point(x);
    const Polytope at_base = phi.eval(base);
    ContinuityReport report;
    Rational step = 1;
    for (std::size_t k = 1; k <= k_max; ++k) {
        step /= 2;
        RationalVector xk = x + step * v;
        auto pk = basis.try_point(xk);
        if (!pk) throw NotInCone("continuity_probe: sequence leaves the cone at k=" + std::to_string(k));
        Polytope val = phi.eval(*pk);
        ContinuityRow row;
        row.k = k;
        row.point = xk;
        row.lsc_exact_zero = contains_set(val, at_base);
        row.usc_exact_zero = contains_set(at_base, val);
        row.lsc_deficit = row.lsc_exact_zero ? 0.0 : excess(at_base, val, metric);
        row.usc_deficit = row.usc_exact_zero ? 0.0 : excess(val, at_base, metric);
        row.hausdorff = std::max(row.lsc_deficit, row.usc_deficit);
        report.rows.push_back(std::move(row));
    }
    // Converged if the last gap is below tol, or if it decayed geometrically:
    // on average by at least a factor sqrt(2) per halving of the step.
    report.converges = true;
    if (!report.rows.empty()) {
        const double first = report.rows.front().hausdorff;
        report.final_gap = report.rows.back().hausdorff;
        const double decayed = first * std::pow(2.0, -0.5 * static_cast<double>(report.rows.size() - 1));
        report.converges = report.final_gap < tol || (report.rows.size() > 1 && report.final_gap <= decayed);
    }
    report.verdict = report.converges ? "converges" : "stalls at \u2248" + format_double(report.final_gap);
    return report;
}

struct BoundRow {
    RationalVector point;
    Rational bound_squared; // max over members and vertices of ||v||^2
    double bound = 0.0;
    std::size_t argmax_member = 0;
};

struct BoundednessReport {
    std::vector<BoundRow> rows;
    Rational global_squared;
    double global = 0.0;
    std::size_t argmax_point = 0;
    std::string verdict;
};

/// Pointwise and global sup over the family of the largest vertex norm on K.
inline BoundednessReport uniform_boundedness_probe(const std::vector<Correspondence>& family,
                                                   const std::vector<ConePoint>& points)
{
    if (family.empty()) throw std::invalid_argument("uniform_boundedness_probe: empty family");
    if (points.empty()) throw std::invalid_argument("uniform_boundedness_probe: empty point set");
    for (const auto& phi : family) {
        if (!(phi.domain() == family.front().domain()))
            throw std::invalid_argument("uniform_boundedness_probe: family members have different domains");
        if (phi.codomain_dim() != family.front().codomain_dim())
            throw DimensionMismatch("uniform_boundedness_probe", family.front().codomain_dim(), phi.codomain_dim());
    }
    BoundednessReport report;
    for (std::size_t p = 0; p < points.size(); ++p) {
        BoundRow row;
        row.point = points[p].ambient();
        row.bound_squared = -1;
        for (std::size_t a = 0; a < family.size(); ++a) {
            Rational b = family[a].eval(points[p]).max_vertex_norm_squared();
            if (b > row.bound_squared) {
                row.bound_squared = b;
                row.argmax_member = a;
            }
        }
        row.bound = std::sqrt(to_double(row.bound_squared));
        if (p == 0 || row.bound_squared > report.global_squared) {
            report.global_squared = row.bound_squared;
            report.argmax_point = p;
        }
        report.rows.push_back(std::move(row));
    }
    report.global = std::sqrt(to_double(report.global_squared));
    report.verdict = "uniformly bounded <= " + format_double(report.global);
    return report;
}

} // namespace conecorr

#endif

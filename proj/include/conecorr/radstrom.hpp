#ifndef CONECORR_RADSTROM_HPP
#define CONECORR_RADSTROM_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "correspondence.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "random.hpp"

namespace conecorr {

/// Representative (A, B) of the class [A, B] in the pair space of convex
/// polytopes modulo (A, B) ~ (D, E) iff A + E = B + D. Classes are never
/// reduced to a canonical representative; every observable (norm,
/// equivalence) is representative-independent.
struct RadstromPair {
    Polytope first;
    Polytope second;

    RadstromPair(Polytope a, Polytope b) : first(std::move(a)), second(std::move(b))
    {
        if (first.dim() != second.dim()) throw DimensionMismatch("radstrom pair", first.dim(), second.dim());
    }

    static RadstromPair zero(std::size_t dim) { return {Polytope::origin(dim), Polytope::origin(dim)}; }

    std::size_t dim() const noexcept { return first.dim(); }
};

inline bool equivalent(const RadstromPair& p, const RadstromPair& q)
{
    if (p.dim() != q.dim()) throw DimensionMismatch("equivalent", p.dim(), q.dim());
    return minkowski_sum(p.first, q.second) == minkowski_sum(p.second, q.first);
}

inline RadstromPair pair_add(const RadstromPair& p, const RadstromPair& q)
{
    if (p.dim() != q.dim()) throw DimensionMismatch("pair_add", p.dim(), q.dim());
    return {minkowski_sum(p.first, q.first), minkowski_sum(p.second, q.second)};
}

/// lambda >= 0: (lambda A, lambda B); lambda < 0: (-lambda B, -lambda A).
inline RadstromPair pair_scale(const RadstromPair& p, const Rational& lambda)
{
    if (sgn(lambda) >= 0) return {scale(p.first, lambda), scale(p.second, lambda)};
    const Rational t = -lambda;
    return {scale(p.second, t), scale(p.first, t)};
}

inline RadstromPair pair_negate(const RadstromPair& p)
{
    return pair_scale(p, Rational(-1));
}

inline RadstromPair pair_sub(const RadstromPair& p, const RadstromPair& q)
{
    return pair_add(p, pair_negate(q));
}

inline double pair_norm(const RadstromPair& p, Metric metric = Metric::euclidean)
{
    return hausdorff(p.first, p.second, metric);
}

/// f(x) = [phi(x), {0}] for a linear correspondence.
inline RadstromPair embed(const Correspondence& phi, const ConePoint& x)
{
    if (phi.kind() != CorrespondenceKind::linear)
        throw std::invalid_argument("embed: requires a linear correspondence");
    return {phi.eval(x), Polytope::origin(phi.codomain_dim())};
}

// ---------------------------------------------------------------------------
// Randomized axiom suite for the pair space.

struct RadstromSuiteOptions {
    std::size_t dim = 2;
    std::size_t pairs = 200;      // triangle inequality and |lambda|-homogeneity
    std::size_t triples = 200;    // cancellation law
    std::size_t equivalent = 100; // (A,B) vs (A+K,B+K)
    std::size_t max_vertices = 6;
    std::int64_t max_denominator = 16;
    double tol = 1e-9;
    std::uint64_t seed = 1;
    std::vector<Rational> scalars = {Rational(-2), Rational(-1, 2), Rational(1, 3), Rational(3)};
};

struct RadstromRow {
    std::string pair_id;
    double norm = 0.0;
    std::string equivalent_to;
    std::string verdict; // "ok" or the failed axioms
};

struct AxiomTally {
    std::string name;
    std::size_t checks = 0;
    std::size_t violations = 0;
    double max_violation = 0.0; // float excess over the tolerance-free bound, or 1 per exact failure
};

struct RadstromSuiteReport {
    std::vector<RadstromRow> rows;
    std::vector<AxiomTally> axioms;

    bool passed() const
    {
        return std::all_of(axioms.begin(), axioms.end(), [](const AxiomTally& a) { return a.violations == 0; });
    }
};

inline RadstromSuiteReport radstrom_axiom_suite(const RadstromSuiteOptions& opts)
{
    RationalSampler rng(opts.seed);
    auto poly = [&] { return rng.polytope(opts.dim, opts.max_vertices, opts.max_denominator, -2, 2); };

    RadstromSuiteReport report;
    report.axioms = {{"triangle"}, {"homogeneity"}, {"cancellation"}, {"well_defined"},
                     {"equivalence"}, {"congruence"}, {"zero_class"}};
    auto& triangle = report.axioms[0];
    auto& homogeneity = report.axioms[1];
    auto& cancellation = report.axioms[2];
    auto& well_defined = report.axioms[3];
    auto& equivalence = report.axioms[4];
    auto& congruence = report.axioms[5];
    auto& zero_class = report.axioms[6];

    auto tally_float = [&](AxiomTally& a, double excess_amount, std::string& verdict) {
        ++a.checks;
        a.max_violation = std::max(a.max_violation, excess_amount);
        if (excess_amount > opts.tol) {
            ++a.violations;
            verdict += (verdict.empty() ? "" : ";") + a.name;
        }
    };
    auto tally_exact = [&](AxiomTally& a, bool ok, std::string& verdict) {
        ++a.checks;
        if (!ok) {
            ++a.violations;
            a.max_violation = 1.0;
            verdict += (verdict.empty() ? "" : ";") + a.name;
        }
    };
    auto finish = [](std::string& v) { return v.empty() ? std::string("ok") : v; };

    for (std::size_t t = 0; t < opts.pairs; ++t) {
        RadstromPair p(poly(), poly());
        RadstromPair q(poly(), poly());
        std::string verdict;
        const double np = pair_norm(p);
        const double nq = pair_norm(q);
        tally_float(triangle, pair_norm(pair_add(p, q)) - (np + nq), verdict);
        for (const auto& lambda : opts.scalars) {
            const double scaled = pair_norm(pair_scale(p, lambda));
            tally_float(homogeneity, std::abs(scaled - std::abs(to_double(lambda)) * np), verdict);
        }
        tally_exact(zero_class, pair_norm(RadstromPair(p.first, p.first)) == 0.0 &&
                                    equivalent(RadstromPair(p.first, p.first), RadstromPair::zero(opts.dim)),
                    verdict);
        // additive inverse: p + (-1)p ~ 0
        tally_exact(equivalence, equivalent(pair_add(p, pair_negate(p)), RadstromPair::zero(opts.dim)), verdict);
        report.rows.push_back({"p" + std::to_string(t), np, "", finish(verdict)});
    }

    for (std::size_t t = 0; t < opts.triples; ++t) {
        Polytope a = poly(), b = poly(), k = poly();
        std::string verdict;
        const double base = hausdorff(a, b);
        const double shifted = hausdorff(minkowski_sum(a, k), minkowski_sum(b, k));
        tally_float(cancellation, std::abs(shifted - base), verdict);
        report.rows.push_back({"c" + std::to_string(t), base, "", finish(verdict)});
    }

    for (std::size_t t = 0; t < opts.equivalent; ++t) {
        RadstromPair p(poly(), poly());
        Polytope k = poly();
        RadstromPair shifted(minkowski_sum(p.first, k), minkowski_sum(p.second, k));
        RadstromPair other(poly(), poly());
        std::string verdict, shifted_verdict;
        tally_exact(equivalence, equivalent(p, shifted) && equivalent(shifted, p) && equivalent(p, p), verdict);
        const double np = pair_norm(p);
        const double ns = pair_norm(shifted);
        tally_float(well_defined, std::abs(np - ns), verdict);
        const Rational lambda = opts.scalars[t % opts.scalars.size()];
        tally_exact(congruence,
                    equivalent(pair_add(p, other), pair_add(shifted, other)) &&
                        equivalent(pair_scale(p, lambda), pair_scale(shifted, lambda)),
                    verdict);
        // transitivity through a second shift
        RadstromPair twice(minkowski_sum(shifted.first, other.first), minkowski_sum(shifted.second, other.first));
        tally_exact(equivalence, equivalent(p, twice), shifted_verdict);
        const std::string id = "e" + std::to_string(t);
        report.rows.push_back({id, np, id + "'", finish(verdict)});
        report.rows.push_back({id + "'", ns, id, finish(shifted_verdict)});
    }
    return report;
}

} // namespace conecorr

#endif

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include <conecorr/correspondence.hpp>

#include "generators.hpp"

using namespace conecorr;

namespace {

RationalVector v(std::initializer_list<Rational> xs) { return RationalVector(xs); }
Rational q(long p, long d = 1)
{
    Rational r(p, d);
    r.canonicalize();
    return r;
}

Polytope seg(RationalVector a, RationalVector b) { return Polytope::segment(std::move(a), std::move(b)); }

const ConeBasis quadrant = ConeBasis::standard(2);

ConePoint at(const Correspondence& phi, RationalVector x) { return phi.domain().point(x); }

Correspondence random_linear(gen::Gen& g, long lo = -2)
{
    const std::size_t n = 1 + g.integer(0, 2);
    const std::size_t m = 1 + g.integer(0, 2);
    std::vector<RationalVector> gens;
    for (std::size_t i = 0; i < n; ++i) gens.push_back(RationalVector::unit(std::max(n, m), i));
    ConeBasis basis(gens);
    std::vector<Polytope> images;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<RationalVector> pts;
        const long k = g.integer(1, 6);
        for (long j = 0; j < k; ++j) pts.push_back(g.vector(m, 16, lo, 2));
        images.push_back(Polytope::from_points(pts));
    }
    return Correspondence::linear(basis, images);
}

ConePoint random_point(gen::Gen& g, const ConeBasis& b)
{
    return b.from_coords(g.vector(b.size(), 16, 0, 3));
}

} // namespace

// --- evaluation ---------------------------------------------------------------

TEST(Eval, Example1)
{
    const auto phi = Correspondence::example1();
    EXPECT_EQ(phi.eval(v({1, 0})), Polytope::origin(2));
    EXPECT_EQ(phi.eval(v({1, 1})), seg(v({0, 0}), v({1, 0})));
    EXPECT_THROW(phi.eval(v({-1, 1})), NotInCone);
}

TEST(Eval, LinearFromBasisImages)
{
    const auto phi = Correspondence::linear(quadrant, {seg(v({0, 0}), v({1, 0})), Polytope::origin(2)});
    EXPECT_EQ(phi.eval(v({2, 3})), seg(v({0, 0}), v({2, 0})));
    EXPECT_EQ(phi.eval(v({0, 0})), Polytope::origin(2));
}

TEST(Eval, InflatedAddsMinCoordinateMultiple)
{
    const Polytope ball = Polytope::from_points({v({-1, 0}), v({1, 0}), v({0, -1}), v({0, 1})});
    const auto phi = Correspondence::inflated(quadrant, {Polytope::point(v({1, 0})), Polytope::point(v({0, 1}))}, ball);
    EXPECT_EQ(phi.eval(v({3, 0})), Polytope::point(v({3, 0})));
    EXPECT_EQ(phi.eval(v({3, 2})), translate(scale(ball, 2), v({3, 2})));
    EXPECT_THROW(Correspondence::inflated(quadrant, {Polytope::point(v({1, 0})), Polytope::point(v({0, 1}))},
                                          Polytope::point(v({1, 1}))),
                 std::invalid_argument);
}

TEST(Eval, RejectsMismatchedImages)
{
    EXPECT_THROW(Correspondence::linear(quadrant, {Polytope::origin(2)}), std::invalid_argument);
    EXPECT_THROW(Correspondence::linear(quadrant, {Polytope::origin(2), Polytope::origin(3)}), DimensionMismatch);
}

// --- superadditivity and homogeneity ---------------------------------------------

TEST(Superadditive, Example1AtBoundaryAndInterior)
{
    const auto phi = Correspondence::example1();
    Verdict r = check_superadditive(phi, at(phi, v({1, 1})), at(phi, v({1, 0})));
    EXPECT_TRUE(r.holds);
    EXPECT_FALSE(r.equality); // [0,2] strictly contains [0,1] + {0}
}

TEST(Superadditive, LinearHoldsWithEquality)
{
    gen::Gen g(5);
    for (int trial = 0; trial < 60; ++trial) {
        const auto phi = random_linear(g);
        for (int k = 0; k < 5; ++k) {
            Verdict r = check_superadditive(phi, random_point(g, phi.domain()), random_point(g, phi.domain()));
            EXPECT_TRUE(r.holds && r.equality) << r.detail;
        }
    }
}

TEST(Superadditive, SubadditiveRuleFailsWithWitness)
{
    // psi(l) = [0, min(l, 1)] on R+^1: psi(2) = [0,1] misses 2 from [0,1] + [0,1].
    const ConeBasis line = ConeBasis::standard(1);
    const auto psi = Correspondence::custom(line, 1, [](const ConePoint& x) {
        return Polytope::segment(v({0}), v({std::min(x.lambdas()[0], Rational(1))}));
    });
    Verdict r = check_superadditive(psi, line.point(v({1})), line.point(v({1})));
    EXPECT_FALSE(r.holds);
    ASSERT_TRUE(r.witness);
    EXPECT_EQ(*r.witness, v({2}));
    // Below the cap the rule is linear.
    EXPECT_TRUE(check_superadditive(psi, line.point(v({q(1, 4)})), line.point(v({q(1, 4)}))).holds);
}

TEST(QHomogeneous, Examples)
{
    const auto phi = Correspondence::example1();
    Verdict r = check_q_homogeneous(phi, at(phi, v({1, 1})), 3);
    EXPECT_TRUE(r.holds);
    EXPECT_EQ(phi.eval(v({3, 3})), seg(v({0, 0}), v({3, 0})));
    EXPECT_TRUE(check_q_homogeneous(phi, at(phi, v({7, 0})), 1).holds);
    EXPECT_THROW(check_q_homogeneous(phi, at(phi, v({1, 1})), 0), std::invalid_argument);

    // [0, l + 1] at l = 1, r = 2: [0,3] against [0,4].
    const ConeBasis line = ConeBasis::standard(1);
    const auto affine = Correspondence::affine(line, {Polytope::segment(v({0}), v({1}))}, Polytope::segment(v({0}), v({1})));
    Verdict bad = check_q_homogeneous(affine, line.point(v({1})), 2);
    EXPECT_FALSE(bad.holds);
    EXPECT_EQ(affine.eval(v({2})), Polytope::segment(v({0}), v({3})));
    ASSERT_TRUE(bad.witness);
    EXPECT_EQ(*bad.witness, v({4}));
}

TEST(QHomogeneous, LinearAndInflatedHoldExactly)
{
    gen::Gen g(6);
    const std::vector<Rational> scalars = {q(1, 3), q(1, 2), 2, q(7, 5), q(16, 3)};
    for (int trial = 0; trial < 40; ++trial) {
        const auto phi = random_linear(g);
        const Polytope inflation = Polytope::from_points({RationalVector(phi.codomain_dim()), g.vector(phi.codomain_dim()),
                                                         g.vector(phi.codomain_dim())});
        const auto inflated = Correspondence::inflated(phi.domain(), phi.images(), inflation);
        const ConePoint x = random_point(g, phi.domain());
        const ConePoint y = random_point(g, phi.domain());
        for (const auto& r : scalars) {
            EXPECT_TRUE(check_q_homogeneous(phi, x, r).holds);
            EXPECT_TRUE(check_q_homogeneous(inflated, x, r).holds);
        }
        EXPECT_TRUE(check_superadditive(inflated, x, y).holds);
    }
}

TEST(Example1, PassesChecksOnEverySample)
{
    const auto phi = Correspondence::example1();
    const auto pts = sample_points(quadrant, SampleOptions{});
    for (std::size_t i = 0; i < pts.size(); i += 3)
        for (std::size_t j = i; j < pts.size(); j += 5) {
            EXPECT_TRUE(check_superadditive(phi, pts[i], pts[j]).holds);
            EXPECT_TRUE(jensen_check(ScalarTrack(phi, 0), pts[i], pts[j]).holds);
        }
    for (const auto& x : pts)
        for (const auto& r : {q(1, 3), q(1, 2), Rational(2), q(7, 5)}) EXPECT_TRUE(check_q_homogeneous(phi, x, r).holds);
}

// --- scalarization ----------------------------------------------------------------

TEST(Scalarize, Examples)
{
    const auto phi = Correspondence::example1();
    const ScalarTrack first = scalarize(phi, 0);
    const ScalarTrack second = scalarize(phi, 1);
    EXPECT_EQ(first.lower(at(phi, v({1, 1}))), 0);
    EXPECT_EQ(first.upper(at(phi, v({1, 1}))), 1);
    for (const auto& x : {v({1, 1}), v({5, 0}), v({q(2, 3), 4})}) {
        EXPECT_EQ(second.lower(at(phi, x)), 0);
        EXPECT_EQ(second.upper(at(phi, x)), 0);
    }
    const auto single = Correspondence::linear(quadrant, {Polytope::point(v({1, 2})), Polytope::point(v({-1, 3}))});
    for (std::size_t i = 0; i < 2; ++i) {
        auto [lo, hi] = scalarize(single, i).bounds(at(single, v({q(3, 2), 5})));
        EXPECT_EQ(lo, hi);
    }
}

TEST(Scalarize, BoxContainsValue)
{
    gen::Gen g(7);
    for (int trial = 0; trial < 60; ++trial) {
        const auto phi = random_linear(g);
        const ConePoint x = random_point(g, phi.domain());
        EXPECT_TRUE(check_scalar_box(phi, x).holds);
        for (std::size_t i = 0; i < phi.codomain_dim(); ++i) {
            auto [lo, hi] = ScalarTrack(phi, i).bounds(x);
            EXPECT_LE(lo, hi);
        }
    }
}

TEST(Jensen, Examples)
{
    const auto phi = Correspondence::example1();
    Verdict r = jensen_check(ScalarTrack(phi, 0), at(phi, v({1, 1})), at(phi, v({3, 1})));
    EXPECT_TRUE(r.holds);
    EXPECT_TRUE(r.equality);
    EXPECT_EQ(ScalarTrack(phi, 0).upper(at(phi, v({2, 1}))), 2);
    Verdict same = jensen_check(ScalarTrack(phi, 0), at(phi, v({q(1, 2), 3})), at(phi, v({q(1, 2), 3})));
    EXPECT_TRUE(same.holds && same.equality);
}

TEST(Jensen, LinearIsAlwaysEqualityAndSuperadditiveNeverFails)
{
    gen::Gen g(8);
    for (int trial = 0; trial < 60; ++trial) {
        const auto phi = random_linear(g);
        const auto inflated = Correspondence::inflated(
            phi.domain(), phi.images(), Polytope::from_points({RationalVector(phi.codomain_dim()), g.vector(phi.codomain_dim())}));
        const ConePoint x = random_point(g, phi.domain());
        const ConePoint y = random_point(g, phi.domain());
        for (std::size_t i = 0; i < phi.codomain_dim(); ++i) {
            Verdict r = jensen_check(ScalarTrack(phi, i), x, y);
            EXPECT_TRUE(r.holds && r.equality);
            EXPECT_TRUE(jensen_check(ScalarTrack(inflated, i), x, y).holds);
        }
    }
}

// --- probes ---------------------------------------------------------------------

TEST(ContinuityProbe, Example1GapOnTheBoundary)
{
    const auto phi = Correspondence::example1();
    for (long a : {1, 3}) {
        ContinuityReport r = continuity_probe(phi, v({a, 0}), v({0, 1}), 20);
        ASSERT_EQ(r.rows.size(), 20u);
        for (const auto& row : r.rows) {
            EXPECT_TRUE(row.lsc_exact_zero);
            EXPECT_EQ(row.lsc_deficit, 0.0);
            EXPECT_DOUBLE_EQ(row.usc_deficit, static_cast<double>(a));
        }
        EXPECT_FALSE(r.converges);
        EXPECT_EQ(r.verdict, "stalls at ≈" + format_double(static_cast<double>(a)));
    }
}

TEST(ContinuityProbe, Example1ConvergesInside)
{
    const auto phi = Correspondence::example1();
    ContinuityReport r = continuity_probe(phi, v({1, 1}), v({0, 1}), 20);
    for (const auto& row : r.rows) EXPECT_EQ(row.hausdorff, 0.0);
    EXPECT_TRUE(r.converges);
    ContinuityReport diag = continuity_probe(phi, v({1, 1}), v({1, 1}), 20);
    for (const auto& row : diag.rows) EXPECT_NEAR(row.hausdorff, std::ldexp(1.0, -static_cast<int>(row.k)), 1e-15);
    EXPECT_TRUE(diag.converges);
    EXPECT_EQ(diag.verdict, "converges");
}

TEST(ContinuityProbe, LinearDecaysWithinLipschitzBound)
{
    gen::Gen g(9);
    for (int trial = 0; trial < 30; ++trial) {
        const auto phi = random_linear(g);
        const auto& b = phi.domain();
        const ConePoint x = b.from_coords(g.vector(b.size(), 16, 1, 3));
        const RationalVector dir = b.combine(g.vector(b.size(), 8, -1, 1));
        const double lip = linear_lipschitz_constant(phi);
        const double step_norm = to_double(b.coords(dir)->norm_l1());
        ContinuityReport r = continuity_probe(phi, x.ambient(), dir, 12);
        for (const auto& row : r.rows)
            EXPECT_LE(row.hausdorff, lip * step_norm * std::ldexp(1.0, -static_cast<int>(row.k)) + 1e-9);
        EXPECT_TRUE(r.converges);
    }
}

TEST(ContinuityProbe, LeavingTheConeNamesTheStep)
{
    const auto phi = Correspondence::example1();
    try {
        continuity_probe(phi, v({0, 0}), v({-1, 1}), 5);
        FAIL();
    } catch (const NotInCone& e) {
        EXPECT_NE(std::string(e.what()).find("k=1"), std::string::npos);
    }
}

TEST(UniformBoundedness, Examples)
{
    const auto phi = Correspondence::linear(quadrant, {seg(v({0, 0}), v({3, 4})), Polytope::point(v({0, 2}))});
    std::vector<Correspondence> family;
    for (long a = 1; a <= 10; ++a) family.push_back(phi.scaled(q(1, a)));
    const auto grid = simplex_grid(quadrant, 4);
    BoundednessReport r = uniform_boundedness_probe(family, grid);
    // Direct maximum over grid points t e1 + (1-t) e2 of the alpha = 1 values.
    Rational best = 0;
    for (long i = 0; i <= 4; ++i) {
        const Rational t = q(i, 4);
        const RationalVector top = t * v({3, 4}) + (1 - t) * v({0, 2});
        const RationalVector low = (1 - t) * v({0, 2});
        best = std::max({best, top.norm_squared(), low.norm_squared()});
    }
    EXPECT_EQ(r.global_squared, best);
    EXPECT_EQ(r.global_squared, 25);

    BoundednessReport one = uniform_boundedness_probe({phi}, grid);
    Rational pointwise = 0;
    for (const auto& row : one.rows) pointwise = std::max(pointwise, row.bound_squared);
    EXPECT_EQ(one.global_squared, pointwise);

    const auto zero = Correspondence::linear(quadrant, {Polytope::origin(2), Polytope::origin(2)});
    EXPECT_EQ(uniform_boundedness_probe({zero, zero.scaled(2)}, grid).global, 0.0);
}

TEST(Sampling, GridAndRandomPointsAreDeterministic)
{
    const auto a = sample_points(quadrant, SampleOptions{});
    const auto b = sample_points(quadrant, SampleOptions{});
    ASSERT_EQ(a.size(), 25u + 50u);
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a[i].ambient(), b[i].ambient());
    EXPECT_EQ(simplex_grid(quadrant, 120).size(), 121u);
    EXPECT_EQ(simplex_grid(ConeBasis::standard(3), 4).size(), 15u);
}

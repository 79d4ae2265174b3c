#ifndef CONECORR_MIN_NORM_POINT_HPP
#define CONECORR_MIN_NORM_POINT_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "errors.hpp"

namespace conecorr {

struct MinNormResult {
    Eigen::VectorXd point;   // the minimizer in conv(points)
    Eigen::VectorXd weights; // convex weights over the input columns
    double norm = 0.0;
    double gap = 0.0;        // ||x||^2 - min_j <x, p_j> at termination
    std::size_t iterations = 0;
};

/// Wolfe's active-set method for the minimum-norm point of conv(columns of P).
///
/// Terminates when the duality gap ||x||^2 - min_j <x,p_j> drops below
/// tol * max(1, max_j ||p_j||^2). Ties in the entering vertex go to the lowest
/// column index, so callers that pass lexicographically sorted vertices get
/// lexicographic tie-breaking. Throws ConvergenceError after 10*k^2 steps.
inline MinNormResult min_norm_point(const Eigen::MatrixXd& points, double tol = 1e-12)
{
    const auto k = static_cast<Eigen::Index>(points.cols());
    if (k == 0) throw std::invalid_argument("min_norm_point: empty point set");
    const std::size_t cap = 10 * static_cast<std::size_t>(k) * static_cast<std::size_t>(k);
    const double scale = std::max(1.0, points.colwise().squaredNorm().maxCoeff());
    constexpr double zero_weight = 1e-15;

    std::vector<Eigen::Index> active;
    Eigen::VectorXd w;
    Eigen::VectorXd x;
    {
        Eigen::Index best = 0;
        points.colwise().squaredNorm().minCoeff(&best);
        active.push_back(best);
        w = Eigen::VectorXd::Ones(1);
        x = points.col(best);
    }

    auto affine_minimizer = [&](Eigen::VectorXd& alpha) {
        const auto s = static_cast<Eigen::Index>(active.size());
        Eigen::MatrixXd sub(points.rows(), s);
        for (Eigen::Index i = 0; i < s; ++i) sub.col(i) = points.col(active[static_cast<std::size_t>(i)]);
        Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(s + 1, s + 1);
        kkt.topLeftCorner(s, s) = sub.transpose() * sub;
        kkt.topRightCorner(s, 1).setOnes();
        kkt.bottomLeftCorner(1, s).setOnes();
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
        rhs(s) = 1.0;
        alpha = kkt.fullPivLu().solve(rhs).head(s);
        return sub;
    };

    MinNormResult out;
    std::size_t steps = 0;
    for (;;) {
        Eigen::VectorXd inner = points.transpose() * x;
        Eigen::Index enter = 0;
        double lowest = inner.minCoeff(&enter);
        const double xx = x.squaredNorm();
        out.gap = xx - lowest;
        if (out.gap <= tol * scale) break;
        if (std::find(active.begin(), active.end(), enter) != active.end()) break;
        active.push_back(enter);
        w.conservativeResize(w.size() + 1);
        w(w.size() - 1) = 0.0;

        for (;;) {
            if (++steps > cap) {
                const double n = std::sqrt(xx);
                const double lower = n > 0 ? std::max(0.0, lowest / n) : 0.0;
                throw ConvergenceError("min_norm_point: iteration cap reached", n - lower);
            }
            Eigen::VectorXd alpha;
            Eigen::MatrixXd sub = affine_minimizer(alpha);
            if ((alpha.array() > zero_weight).all()) {
                w = alpha;
                x = sub * w;
                break;
            }
            double theta = std::numeric_limits<double>::infinity();
            Eigen::Index blocking = 0;
            for (Eigen::Index i = 0; i < alpha.size(); ++i)
                if (alpha(i) <= zero_weight) {
                    const double denom = w(i) - alpha(i);
                    const double t = denom > 0 ? w(i) / denom : 0.0;
                    if (t < theta) {
                        theta = t;
                        blocking = i;
                    }
                }
            w = w + theta * (alpha - w);
            w(blocking) = 0.0;
            std::vector<Eigen::Index> kept;
            std::vector<double> kept_w;
            for (Eigen::Index i = 0; i < w.size(); ++i)
                if (w(i) > zero_weight) {
                    kept.push_back(active[static_cast<std::size_t>(i)]);
                    kept_w.push_back(w(i));
                }
            active = std::move(kept);
            w = Eigen::Map<Eigen::VectorXd>(kept_w.data(), static_cast<Eigen::Index>(kept_w.size()));
            w /= w.sum();
            x = Eigen::VectorXd::Zero(points.rows());
            for (std::size_t i = 0; i < active.size(); ++i) x += w(static_cast<Eigen::Index>(i)) * points.col(active[i]);
        }
        ++steps;
    }
    out.point = x;
    out.norm = x.norm();
    out.weights = Eigen::VectorXd::Zero(k);
    for (std::size_t i = 0; i < active.size(); ++i) out.weights(active[i]) = w(static_cast<Eigen::Index>(i));
    out.iterations = steps;
    return out;
}

} // namespace conecorr

#endif

#ifndef CONECORR_CONE_HPP
#define CONECORR_CONE_HPP

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace conecorr {

class ConeBasis;

/// A point of a finitely generated cone together with its coordinates
/// under the basis isomorphism: ambient = sum_i lambdas[i] * e_i, lambdas >= 0.
class ConePoint {
public:
    const RationalVector& ambient() const noexcept { return ambient_; }
    const RationalVector& lambdas() const noexcept { return lambdas_; }

    /// True iff every coordinate is strictly positive (relative interior).
    bool interior() const
    {
        return std::all_of(lambdas_.begin(), lambdas_.end(), [](const Rational& q) { return sgn(q) > 0; });
    }

    friend ConePoint operator+(const ConePoint& a, const ConePoint& b)
    {
        return ConePoint(a.ambient_ + b.ambient_, a.lambdas_ + b.lambdas_);
    }

    /// t * x for rational t >= 0.
    ConePoint scaled(const Rational& t) const
    {
        if (sgn(t) < 0) throw NotInCone("negative multiple of a cone point: " + to_string(t));
        return ConePoint(t * ambient_, t * lambdas_);
    }

    friend bool operator==(const ConePoint& a, const ConePoint& b) { return a.ambient_ == b.ambient_; }
    friend auto operator<=>(const ConePoint& a, const ConePoint& b) { return a.lambdas_ <=> b.lambdas_; }

private:
    friend class ConeBasis;
    ConePoint(RationalVector ambient, RationalVector lambdas)
        : ambient_(std::move(ambient)), lambdas_(std::move(lambdas))
    {
    }

    RationalVector ambient_;
    RationalVector lambdas_;
};

/// Linearly independent generators e_1..e_n of a cone in Q^d.
class ConeBasis {
public:
    explicit ConeBasis(std::vector<RationalVector> generators) : generators_(std::move(generators))
    {
        if (generators_.empty()) throw std::invalid_argument("cone basis: no generators");
        dim_ = generators_.front().size();
        if (dim_ == 0) throw std::invalid_argument("cone basis: zero-dimensional generators");
        for (const auto& g : generators_)
            if (g.size() != dim_) throw DimensionMismatch("cone basis", dim_, g.size());
        if (generators_.size() > dim_)
            throw std::invalid_argument("cone basis: " + std::to_string(generators_.size()) +
                                        " generators cannot be independent in dimension " + std::to_string(dim_));
        build_solver();
    }

    static ConeBasis standard(std::size_t dim)
    {
        std::vector<RationalVector> gens;
        for (std::size_t i = 0; i < dim; ++i) gens.push_back(RationalVector::unit(dim, i));
        return ConeBasis(std::move(gens));
    }

    std::size_t ambient_dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return generators_.size(); }
    const std::vector<RationalVector>& generators() const noexcept { return generators_; }
    const RationalVector& generator(std::size_t i) const { return generators_.at(i); }

    /// Coordinates of x under l, or nullopt when x is outside span(E).
    std::optional<RationalVector> coords(const RationalVector& x) const
    {
        if (x.size() != dim_) throw DimensionMismatch("coords", dim_, x.size());
        // transform_ * x has lambdas in the first n rows and must vanish below.
        std::vector<Rational> y(dim_);
        for (std::size_t r = 0; r < dim_; ++r) {
            Rational s = 0;
            for (std::size_t c = 0; c < dim_; ++c)
                if (sgn(transform_[r][c]) != 0) s += transform_[r][c] * x[c];
            y[r] = std::move(s);
        }
        const std::size_t n = size();
        for (std::size_t r = n; r < dim_; ++r)
            if (sgn(y[r]) != 0) return std::nullopt;
        y.resize(n);
        return RationalVector(std::move(y));
    }

    /// sum_i lambdas[i] * e_i (the inverse of l on Q^n).
    RationalVector combine(const RationalVector& lambdas) const
    {
        if (lambdas.size() != size()) throw DimensionMismatch("combine", size(), lambdas.size());
        RationalVector out(dim_);
        for (std::size_t i = 0; i < size(); ++i)
            if (sgn(lambdas[i]) != 0) out += lambdas[i] * generators_[i];
        return out;
    }

    bool in_cone(const RationalVector& x) const
    {
        if (x.size() != dim_) return false;
        auto l = coords(x);
        return l && std::all_of(l->begin(), l->end(), [](const Rational& q) { return sgn(q) >= 0; });
    }

    bool in_relative_interior(const RationalVector& x) const
    {
        if (x.size() != dim_) return false;
        auto l = coords(x);
        return l && std::all_of(l->begin(), l->end(), [](const Rational& q) { return sgn(q) > 0; });
    }

    std::optional<ConePoint> try_point(const RationalVector& x) const
    {
        auto l = coords(x);
        if (!l || std::any_of(l->begin(), l->end(), [](const Rational& q) { return sgn(q) < 0; }))
            return std::nullopt;
        return ConePoint(x, std::move(*l));
    }

    /// The cone point with ambient coordinates x; throws NotInCone otherwise.
    ConePoint point(const RationalVector& x) const
    {
        if (x.size() != dim_) throw DimensionMismatch("cone point", dim_, x.size());
        auto p = try_point(x);
        if (!p) throw NotInCone("point not in cone: " + to_string(x));
        return std::move(*p);
    }

    /// The cone point sum_i lambdas[i] e_i; lambdas must be nonnegative.
    ConePoint from_coords(const RationalVector& lambdas) const
    {
        if (std::any_of(lambdas.begin(), lambdas.end(), [](const Rational& q) { return sgn(q) < 0; }))
            throw NotInCone("point not in cone: negative coordinate in " + to_string(lambdas));
        return ConePoint(combine(lambdas), lambdas);
    }

    ConePoint apex() const { return ConePoint(RationalVector(dim_), RationalVector(size())); }

    friend bool operator==(const ConeBasis& a, const ConeBasis& b) { return a.generators_ == b.generators_; }

private:
    // Gauss-Jordan on [E | I] where E has the generators as columns; a missing
    // pivot means the generators are dependent.
    void build_solver()
    {
        const std::size_t n = size();
        std::vector<std::vector<Rational>> aug(dim_, std::vector<Rational>(n + dim_));
        for (std::size_t r = 0; r < dim_; ++r) {
            for (std::size_t c = 0; c < n; ++c) aug[r][c] = generators_[c][r];
            aug[r][n + r] = 1;
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t piv = c;
            while (piv < dim_ && sgn(aug[piv][c]) == 0) ++piv;
            if (piv == dim_) throw std::invalid_argument("cone basis: generators are linearly dependent");
            std::swap(aug[piv], aug[c]);
            Rational inv = 1 / aug[c][c];
            for (auto& v : aug[c]) v *= inv;
            for (std::size_t r = 0; r < dim_; ++r) {
                if (r == c || sgn(aug[r][c]) == 0) continue;
                Rational f = aug[r][c];
                for (std::size_t k = 0; k < n + dim_; ++k) aug[r][k] -= f * aug[c][k];
            }
        }
        transform_.assign(dim_, std::vector<Rational>(dim_));
        for (std::size_t r = 0; r < dim_; ++r)
            for (std::size_t c = 0; c < dim_; ++c) transform_[r][c] = aug[r][n + c];
    }

    std::vector<RationalVector> generators_;
    std::size_t dim_ = 0;
    std::vector<std::vector<Rational>> transform_;
};

inline std::optional<RationalVector> coords(const ConeBasis& basis, const RationalVector& x)
{
    return basis.coords(x);
}

inline bool in_cone(const ConeBasis& basis, const RationalVector& x)
{
    return basis.in_cone(x);
}

inline bool in_relative_interior(const ConeBasis& basis, const RationalVector& x)
{
    return basis.in_relative_interior(x);
}

} // namespace conecorr

#endif

#ifndef CONECORR_RANDOM_HPP
#define CONECORR_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "geometry.hpp"
#include "rational.hpp"

namespace conecorr {

/// Seeded generator of small rationals, vectors and polytopes. Draws use
/// plain modular reduction of mt19937_64 output so a seed reproduces the
/// same stream on every standard library.
class RationalSampler {
public:
    explicit RationalSampler(std::uint64_t seed) : engine_(seed) {}

    /// Uniform integer in [lo, hi].
    std::int64_t integer(std::int64_t lo, std::int64_t hi)
    {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(engine_() % span);
    }

    /// p/q with q in [1, max_den] and p/q in [lo, hi].
    Rational rational(std::int64_t max_den, std::int64_t lo, std::int64_t hi)
    {
        const std::int64_t den = integer(1, max_den);
        Rational out(integer(lo * den, hi * den), den);
        out.canonicalize();
        return out;
    }

    RationalVector vector(std::size_t dim, std::int64_t max_den, std::int64_t lo, std::int64_t hi)
    {
        RationalVector v(dim);
        for (std::size_t i = 0; i < dim; ++i) v[i] = rational(max_den, lo, hi);
        return v;
    }

    /// Hull of between 1 and max_points random points.
    Polytope polytope(std::size_t dim, std::size_t max_points, std::int64_t max_den, std::int64_t lo, std::int64_t hi)
    {
        const auto count = static_cast<std::size_t>(integer(1, static_cast<std::int64_t>(max_points)));
        std::vector<RationalVector> pts;
        for (std::size_t i = 0; i < count; ++i) pts.push_back(vector(dim, max_den, lo, hi));
        return Polytope::from_points(std::move(pts));
    }

    std::mt19937_64& engine() noexcept { return engine_; }

private:
    std::mt19937_64 engine_;
};

} // namespace conecorr

#endif

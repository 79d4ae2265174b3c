#ifndef CONECORR_DETAIL_SIMPLEX_HPP
#define CONECORR_DETAIL_SIMPLEX_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "../rational.hpp"

namespace conecorr::detail {

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<Rational> x;
    Rational objective;
};

// Dense two-phase tableau simplex over Q with Bland's rule:
//   minimize c.x  subject to  A x = b,  x >= 0.
// A is row-major (rows x cols). An empty cost vector means "feasibility only".
class ExactSimplex {
public:
    ExactSimplex(std::size_t rows, std::size_t cols, std::vector<Rational> a, std::vector<Rational> b,
                 std::vector<Rational> cost = {})
        : rows_(rows), cols_(cols), width_(cols + rows + 1), tab_((rows + 1) * width_), basis_(rows),
          live_(rows, true), cost_(std::move(cost))
    {
        for (std::size_t i = 0; i < rows_; ++i) {
            bool flip = sgn(b[i]) < 0;
            for (std::size_t j = 0; j < cols_; ++j) at(i, j) = flip ? Rational(-a[i * cols_ + j]) : a[i * cols_ + j];
            at(i, cols_ + i) = 1;
            rhs(i) = flip ? Rational(-b[i]) : b[i];
            basis_[i] = cols_ + i;
        }
    }

    LpResult solve()
    {
        LpResult result;
        // Phase 1: minimize the sum of artificials.
        for (std::size_t j = 0; j < cols_; ++j) {
            Rational s = 0;
            for (std::size_t i = 0; i < rows_; ++i) s -= at(i, j);
            zrow(j) = s;
        }
        Rational s = 0;
        for (std::size_t i = 0; i < rows_; ++i) s -= rhs(i);
        zrhs() = s;
        iterate(cols_ + rows_);
        if (sgn(zrhs()) != 0) return result;

        for (std::size_t i = 0; i < rows_; ++i) {
            if (basis_[i] < cols_) continue;
            std::optional<std::size_t> col;
            for (std::size_t j = 0; j < cols_ && !col; ++j)
                if (sgn(at(i, j)) != 0) col = j;
            if (col)
                pivot(i, *col);
            else
                live_[i] = false;
        }

        if (!cost_.empty()) {
            for (std::size_t j = 0; j < width_ - 1; ++j) zrow(j) = j < cols_ ? cost_[j] : Rational(0);
            zrhs() = 0;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (!live_[i]) continue;
                const Rational& cb = cost_[basis_[i]];
                if (sgn(cb) == 0) continue;
                for (std::size_t j = 0; j < width_; ++j) tab_[rows_ * width_ + j] -= cb * at(i, j);
            }
            if (!iterate(cols_)) {
                result.status = LpStatus::unbounded;
                return result;
            }
        }

        result.status = LpStatus::optimal;
        result.x.assign(cols_, Rational(0));
        for (std::size_t i = 0; i < rows_; ++i)
            if (live_[i] && basis_[i] < cols_) result.x[basis_[i]] = rhs(i);
        result.objective = cost_.empty() ? Rational(0) : Rational(-zrhs());
        return result;
    }

private:
    Rational& at(std::size_t i, std::size_t j) { return tab_[i * width_ + j]; }
    Rational& rhs(std::size_t i) { return tab_[i * width_ + width_ - 1]; }
    Rational& zrow(std::size_t j) { return tab_[rows_ * width_ + j]; }
    Rational& zrhs() { return tab_[rows_ * width_ + width_ - 1]; }

    // Returns false if unbounded. Columns >= limit never enter.
    bool iterate(std::size_t limit)
    {
        for (;;) {
            std::optional<std::size_t> enter;
            for (std::size_t j = 0; j < limit; ++j)
                if (sgn(zrow(j)) < 0) {
                    enter = j;
                    break;
                }
            if (!enter) return true;
            std::optional<std::size_t> leave;
            Rational best;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (!live_[i] || sgn(at(i, *enter)) <= 0) continue;
                Rational ratio = rhs(i) / at(i, *enter);
                if (!leave || ratio < best || (ratio == best && basis_[i] < basis_[*leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (!leave) return false;
            pivot(*leave, *enter);
        }
    }

    void pivot(std::size_t r, std::size_t c)
    {
        Rational inv = 1 / at(r, c);
        for (std::size_t j = 0; j < width_; ++j)
            if (sgn(at(r, j)) != 0) at(r, j) *= inv;
        for (std::size_t i = 0; i <= rows_; ++i) {
            if (i == r || (i < rows_ && !live_[i])) continue;
            Rational f = tab_[i * width_ + c];
            if (sgn(f) == 0) continue;
            for (std::size_t j = 0; j < width_; ++j)
                if (sgn(at(r, j)) != 0) tab_[i * width_ + j] -= f * at(r, j);
        }
        basis_[r] = c;
    }

    std::size_t rows_;
    std::size_t cols_;
    std::size_t width_;
    std::vector<Rational> tab_;
    std::vector<std::size_t> basis_;
    std::vector<bool> live_;
    std::vector<Rational> cost_;
};

inline LpResult solve_lp(std::size_t rows, std::size_t cols, std::vector<Rational> a, std::vector<Rational> b,
                         std::vector<Rational> cost = {})
{
    return ExactSimplex(rows, cols, std::move(a), std::move(b), std::move(cost)).solve();
}

} // namespace conecorr::detail

#endif

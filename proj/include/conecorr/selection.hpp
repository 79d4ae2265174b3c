#ifndef CONECORR_SELECTION_HPP
#define CONECORR_SELECTION_HPP

// Continuous linear selections of a correspondence between finitely generated
// cones. Column i of a selection matrix is a point of M_i, the image of
// phi(e_i) in target-basis coordinates; each matrix A induces
// x -> l'^{-1}(A l(x)).

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "cone.hpp"
#include "correspondence.hpp"
#include "errors.hpp"
#include "geometry.hpp"
#include "random.hpp"

namespace conecorr {

/// The product M_1 x ... x M_n; column i ranges over the polytope M_i.
struct Multimatrix {
    std::vector<Polytope> columns;

    std::size_t rows() const { return columns.empty() ? 0 : columns.front().dim(); }
    std::size_t cols() const { return columns.size(); }

    /// Number of extreme matrices, saturating at SIZE_MAX.
    std::size_t extreme_count() const
    {
        std::size_t total = 1;
        for (const auto& c : columns) {
            if (total > SIZE_MAX / c.vertex_count()) return SIZE_MAX;
            total *= c.vertex_count();
        }
        return total;
    }
};

/// rows x cols rational matrix, stored column-major (one RationalVector per column).
class SelectionMatrix {
public:
    explicit SelectionMatrix(std::vector<RationalVector> columns) : columns_(std::move(columns))
    {
        if (columns_.empty()) throw std::invalid_argument("selection matrix: no columns");
        for (const auto& c : columns_)
            if (c.size() != columns_.front().size()) throw DimensionMismatch("selection matrix", columns_.front().size(), c.size());
    }

    std::size_t rows() const noexcept { return columns_.front().size(); }
    std::size_t cols() const noexcept { return columns_.size(); }
    const RationalVector& column(std::size_t i) const { return columns_.at(i); }
    const Rational& operator()(std::size_t r, std::size_t c) const { return columns_[c][r]; }

    RationalVector apply(const RationalVector& lambdas) const
    {
        if (lambdas.size() != cols()) throw DimensionMismatch("selection matrix apply", cols(), lambdas.size());
        RationalVector out(rows());
        for (std::size_t c = 0; c < cols(); ++c)
            if (sgn(lambdas[c]) != 0) out += lambdas[c] * columns_[c];
        return out;
    }

    bool is_zero() const
    {
        for (const auto& c : columns_)
            if (!c.is_zero()) return false;
        return true;
    }

    /// Row-major text form [[a11,...,a1n],...,[am1,...,amn]].
    std::string to_text() const
    {
        std::string out = "[";
        for (std::size_t r = 0; r < rows(); ++r) {
            if (r) out += ',';
            out += '[';
            for (std::size_t c = 0; c < cols(); ++c) {
                if (c) out += ',';
                out += to_string((*this)(r, c));
            }
            out += ']';
        }
        return out + "]";
    }

    friend bool operator==(const SelectionMatrix&, const SelectionMatrix&) = default;

private:
    std::vector<RationalVector> columns_;
};

/// x -> sum_j (A l(x))_j e'_j.
class LinearSelection {
public:
    LinearSelection(SelectionMatrix matrix, ConeBasis source, ConeBasis target)
        : matrix_(std::move(matrix)), source_(std::move(source)), target_(std::move(target))
    {
        if (matrix_.cols() != source_.size()) throw DimensionMismatch("linear selection (source)", source_.size(), matrix_.cols());
        if (matrix_.rows() != target_.size()) throw DimensionMismatch("linear selection (target)", target_.size(), matrix_.rows());
    }

    const SelectionMatrix& matrix() const noexcept { return matrix_; }
    const ConeBasis& source() const noexcept { return source_; }
    const ConeBasis& target() const noexcept { return target_; }

    RationalVector operator()(const ConePoint& x) const { return target_.combine(matrix_.apply(x.lambdas())); }

    /// Sum over columns of the Euclidean norm of l'^{-1}(column): a bound on
    /// ||s(x) - s(y)|| / ||l(x) - l(y)||_1.
    double lipschitz_bound() const
    {
        double total = 0.0;
        for (std::size_t c = 0; c < matrix_.cols(); ++c) total += target_.combine(matrix_.column(c)).norm();
        return total;
    }

private:
    SelectionMatrix matrix_;
    ConeBasis source_;
    ConeBasis target_;
};

inline RationalVector apply_selection(const LinearSelection& s, const ConePoint& x)
{
    return s(x);
}

/// M_i = l'(phi(e_i)); every vertex of phi(e_i) must lie in the target cone.
inline Multimatrix basis_images(const Correspondence& phi, const ConeBasis& target)
{
    if (target.ambient_dim() != phi.codomain_dim())
        throw DimensionMismatch("basis_images (target basis)", phi.codomain_dim(), target.ambient_dim());
    const auto& domain = phi.domain();
    Multimatrix out;
    for (std::size_t i = 0; i < domain.size(); ++i) {
        Polytope value = phi.eval(domain.from_coords(RationalVector::unit(domain.size(), i)));
        std::vector<RationalVector> coords;
        for (const auto& v : value.vertices()) {
            auto p = target.try_point(v);
            if (!p)
                throw NotInCone("basis_images: vertex " + to_string(v) + " of phi(e_" + std::to_string(i + 1) +
                                ") is outside the target cone");
            coords.push_back(p->lambdas());
        }
        out.columns.push_back(Polytope::from_points(std::move(coords)));
    }
    return out;
}

/// All matrices whose column i is a vertex of M_i, in lexicographic order of
/// the vertex-index tuple (column 1 most significant).
inline std::vector<SelectionMatrix> extreme_matrices(const Multimatrix& m, std::size_t cap = 1'000'000)
{
    const std::size_t count = m.extreme_count();
    if (count > cap)
        throw ResourceCap("multimatrix too large: " + (count == SIZE_MAX ? std::string("overflow") : std::to_string(count)) +
                          " extreme matrices exceed the cap of " + std::to_string(cap));
    std::vector<SelectionMatrix> out;
    out.reserve(count);
    const std::size_t n = m.cols();
    std::vector<std::size_t> idx(n, 0);
    for (;;) {
        std::vector<RationalVector> cols;
        for (std::size_t i = 0; i < n; ++i) cols.push_back(m.columns[i].vertices()[idx[i]]);
        out.emplace_back(std::move(cols));
        std::size_t pos = n;
        while (pos > 0 && ++idx[pos - 1] == m.columns[pos - 1].vertex_count()) idx[--pos] = 0;
        if (pos == 0) break;
    }
    return out;
}

/// Random matrices of the multimatrix: column i is a random rational convex
/// combination of M_i's vertices.
inline std::vector<SelectionMatrix> sample_interior_matrices(const Multimatrix& m, std::size_t count, std::uint64_t seed)
{
    RationalSampler rng(seed);
    std::vector<SelectionMatrix> out;
    for (std::size_t s = 0; s < count; ++s) {
        std::vector<RationalVector> cols;
        for (const auto& col : m.columns) {
            std::vector<Rational> w;
            Rational total = 0;
            for (std::size_t v = 0; v < col.vertex_count(); ++v) {
                w.emplace_back(rng.integer(1, 16));
                total += w.back();
            }
            RationalVector point(col.dim());
            for (std::size_t v = 0; v < col.vertex_count(); ++v) point += Rational(w[v] / total) * col.vertices()[v];
            cols.push_back(std::move(point));
        }
        out.emplace_back(std::move(cols));
    }
    return out;
}

struct Certification {
    bool certified = true;
    std::optional<std::size_t> failing_index;
    std::optional<RationalVector> failing_sample;
};

/// s(x) ∈ values[k] for every sample x = samples[k], where values[k] = phi(x).
inline Certification certify_selection(const LinearSelection& s, const std::vector<ConePoint>& samples,
                                       const std::vector<Polytope>& values)
{
    if (values.size() != samples.size()) throw std::invalid_argument("certify_selection: one value per sample expected");
    Certification out;
    for (std::size_t k = 0; k < samples.size(); ++k)
        if (!values[k].contains(s(samples[k]))) {
            out.certified = false;
            out.failing_index = k;
            out.failing_sample = samples[k].ambient();
            break;
        }
    return out;
}

/// s(x) ∈ phi(x) for every sample, checked exactly.
inline Certification certify_selection(const LinearSelection& s, const Correspondence& phi,
                                       const std::vector<ConePoint>& samples)
{
    std::vector<Polytope> values;
    values.reserve(samples.size());
    for (const auto& x : samples) values.push_back(phi.eval(x));
    return certify_selection(s, samples, values);
}

struct SelectionRow {
    std::size_t index = 0;
    SelectionMatrix matrix;
    bool certified = false;
    std::optional<RationalVector> failing_sample;
    double lipschitz_bound = 0.0;
    bool interior = false; // drawn by sample_interior_matrices
};

struct SelectionFamilyReport {
    std::vector<SelectionRow> rows;
    std::size_t certified_count = 0;
};

struct SelectionOptions {
    std::size_t cap = 1'000'000;
    std::size_t interior_samples = 0;
    std::uint64_t seed = 1;
};

inline SelectionFamilyReport selection_family(const Correspondence& phi, const ConeBasis& target,
                                              const std::vector<ConePoint>& samples, const SelectionOptions& opts = {})
{
    Multimatrix m = basis_images(phi, target);
    std::vector<SelectionMatrix> matrices = extreme_matrices(m, opts.cap);
    const std::size_t extreme = matrices.size();
    if (opts.interior_samples) {
        auto extra = sample_interior_matrices(m, opts.interior_samples, opts.seed);
        matrices.insert(matrices.end(), std::make_move_iterator(extra.begin()), std::make_move_iterator(extra.end()));
    }
    std::vector<Polytope> values;
    values.reserve(samples.size());
    for (const auto& x : samples) values.push_back(phi.eval(x));
    SelectionFamilyReport report;
    for (std::size_t i = 0; i < matrices.size(); ++i) {
        LinearSelection s(matrices[i], phi.domain(), target);
        Certification c = certify_selection(s, samples, values);
        report.rows.push_back(SelectionRow{i, matrices[i], c.certified, c.failing_sample, s.lipschitz_bound(), i >= extreme});
        if (c.certified) ++report.certified_count;
    }
    return report;
}

} // namespace conecorr

#endif

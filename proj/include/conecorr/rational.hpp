#ifndef CONECORR_RATIONAL_HPP
#define CONECORR_RATIONAL_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "errors.hpp"

namespace conecorr {

using Rational = mpq_class;
using Integer = mpz_class;

namespace detail {

inline bool is_digits(std::string_view s)
{
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
    return s;
}

} // namespace detail

/// Parses "p", "p/q" or a terminating decimal "1.25" into an exact rational.
inline Rational parse_rational(std::string_view text)
{
    std::string_view s = detail::trim(text);
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    Rational out;
    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        auto num = s.substr(0, slash);
        auto den = s.substr(slash + 1);
        if (!detail::is_digits(num) || !detail::is_digits(den))
            throw ParseError("malformed rational '" + std::string(text) + "'");
        Integer d{std::string(den)};
        if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
        out = Rational(Integer(std::string(num)), d);
    } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
        auto whole = s.substr(0, dot);
        auto frac = s.substr(dot + 1);
        if ((whole.empty() && frac.empty()) || (!whole.empty() && !detail::is_digits(whole)) ||
            (!frac.empty() && !detail::is_digits(frac)))
            throw ParseError("malformed decimal '" + std::string(text) + "'");
        Integer scale;
        mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
        Integer digits(std::string(whole.empty() ? "0" : whole) + std::string(frac));
        out = Rational(digits, scale);
    } else {
        if (!detail::is_digits(s)) throw ParseError("malformed rational '" + std::string(text) + "'");
        out = Rational(Integer(std::string(s)));
    }
    out.canonicalize();
    return negative ? Rational(-out) : out;
}

inline std::string to_string(const Rational& q)
{
    return q.get_str();
}

inline double to_double(const Rational& q)
{
    return q.get_d();
}

/// Shortest round-trip decimal form, used in every report so output is byte-stable.
inline std::string format_double(double value)
{
    if (value == 0.0) return "0";
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, end);
}

/// A point of Q^m with exact coordinates.
class RationalVector {
public:
    RationalVector() = default;
    explicit RationalVector(std::size_t dim) : coords_(dim) {}
    RationalVector(std::initializer_list<Rational> values) : coords_(values) {}
    explicit RationalVector(std::vector<Rational> values) : coords_(std::move(values)) {}

    static RationalVector unit(std::size_t dim, std::size_t index)
    {
        RationalVector v(dim);
        v.coords_[index] = 1;
        return v;
    }

    std::size_t size() const noexcept { return coords_.size(); }
    bool empty() const noexcept { return coords_.empty(); }
    const Rational& operator[](std::size_t i) const { return coords_[i]; }
    Rational& operator[](std::size_t i) { return coords_[i]; }
    auto begin() const noexcept { return coords_.begin(); }
    auto end() const noexcept { return coords_.end(); }
    std::span<const Rational> coords() const noexcept { return coords_; }

    bool is_zero() const
    {
        return std::all_of(coords_.begin(), coords_.end(), [](const Rational& q) { return sgn(q) == 0; });
    }

    RationalVector& operator+=(const RationalVector& rhs)
    {
        require_same(rhs, "vector +");
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] += rhs.coords_[i];
        return *this;
    }
    RationalVector& operator-=(const RationalVector& rhs)
    {
        require_same(rhs, "vector -");
        for (std::size_t i = 0; i < coords_.size(); ++i) coords_[i] -= rhs.coords_[i];
        return *this;
    }
    RationalVector& operator*=(const Rational& t)
    {
        for (auto& c : coords_) c *= t;
        return *this;
    }

    friend RationalVector operator+(RationalVector lhs, const RationalVector& rhs) { return lhs += rhs; }
    friend RationalVector operator-(RationalVector lhs, const RationalVector& rhs) { return lhs -= rhs; }
    friend RationalVector operator*(const Rational& t, RationalVector v) { return v *= t; }
    friend RationalVector operator-(RationalVector v)
    {
        for (auto& c : v.coords_) c = -c;
        return v;
    }

    friend bool operator==(const RationalVector& a, const RationalVector& b)
    {
        return a.coords_.size() == b.coords_.size() && std::equal(a.begin(), a.end(), b.begin());
    }
    /// Lexicographic order; shorter vectors sort first.
    friend std::strong_ordering operator<=>(const RationalVector& a, const RationalVector& b)
    {
        if (a.size() != b.size()) return a.size() <=> b.size();
        for (std::size_t i = 0; i < a.size(); ++i) {
            int c = cmp(a.coords_[i], b.coords_[i]);
            if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
        }
        return std::strong_ordering::equal;
    }

    Rational dot(const RationalVector& rhs) const
    {
        require_same(rhs, "dot");
        Rational s = 0;
        for (std::size_t i = 0; i < coords_.size(); ++i) s += coords_[i] * rhs.coords_[i];
        return s;
    }

    Rational norm_squared() const { return dot(*this); }
    double norm() const { return std::sqrt(to_double(norm_squared())); }

    Rational norm_l1() const
    {
        Rational s = 0;
        for (const auto& c : coords_) s += abs(c);
        return s;
    }

    std::vector<double> to_doubles() const
    {
        std::vector<double> out;
        out.reserve(coords_.size());
        for (const auto& c : coords_) out.push_back(to_double(c));
        return out;
    }

private:
    void require_same(const RationalVector& rhs, const char* where) const
    {
        if (rhs.size() != size()) throw DimensionMismatch(where, size(), rhs.size());
    }

    std::vector<Rational> coords_;
};

/// "[a,b,c]" with entries in canonical p/q form.
inline std::string to_string(const RationalVector& v)
{
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += to_string(v[i]);
    }
    return out + "]";
}

} // namespace conecorr

#endif

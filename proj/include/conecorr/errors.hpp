#ifndef CONECORR_ERRORS_HPP
#define CONECORR_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace conecorr {

/// Operands live in different ambient dimensions.
class DimensionMismatch : public std::invalid_argument {
public:
    DimensionMismatch(const std::string& where, std::size_t lhs, std::size_t rhs)
        : std::invalid_argument(where + ": dimension mismatch (" + std::to_string(lhs) +
                                " vs " + std::to_string(rhs) + ")")
    {
    }
};

class NotInCone : public std::domain_error {
public:
    explicit NotInCone(const std::string& what) : std::domain_error(what) {}
};

/// Raised by the min-norm-point solver when the iteration cap is hit.
class ConvergenceError : public std::runtime_error {
public:
    ConvergenceError(const std::string& what, double residual)
        : std::runtime_error(what + " (residual bound " + std::to_string(residual) + ")"),
          residual_(residual)
    {
    }
    double residual() const noexcept { return residual_; }

private:
    double residual_;
};

/// A configured size limit (e.g. multimatrix product count) was exceeded.
class ResourceCap : public std::runtime_error {
public:
    explicit ResourceCap(const std::string& what) : std::runtime_error(what) {}
};

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0)
        : std::runtime_error(line ? what + " at line " + std::to_string(line) + ", column " +
                                        std::to_string(column)
                                  : what),
          line_(line), column_(column)
    {
    }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace conecorr

#endif

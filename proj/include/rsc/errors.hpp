#pragma once

#include <stdexcept>
#include <string>

namespace rsc {

// Thrown for invalid dimensions, parameters out of range, unknown options.
// The CLI maps this family to exit code 1.
class parameter_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Thrown when a variable (row) has zero centered norm: the sample
// correlation is undefined and the row cannot be silently dropped
// without changing p and every downstream asymptotic.
// The CLI maps this to exit code 2.
class degenerate_variable_error : public std::runtime_error {
public:
    degenerate_variable_error(std::size_t row, const std::string& what)
        : std::runtime_error(what), row_(row) {}
    std::size_t row() const noexcept { return row_; }

private:
    std::size_t row_;
};

// Quadrature non-convergence, eigensolver failure, non-vanishing
// imaginary residue of a real contour integral. CLI exit code 2.
class numeric_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed input file; carries 1-based row/column of the offending token.
class parse_error : public std::runtime_error {
public:
    parse_error(std::size_t row, std::size_t col, const std::string& what)
        : std::runtime_error(what), row_(row), col_(col) {}
    std::size_t row() const noexcept { return row_; }
    std::size_t col() const noexcept { return col_; }

private:
    std::size_t row_;
    std::size_t col_;
};

}  // namespace rsc

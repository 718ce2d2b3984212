#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "rsc/errors.hpp"

namespace rsc {

// Dense row-major matrix of doubles. Deliberately minimal: the kernels in
// kernels.hpp operate on contiguous rows, which is all this project needs.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> data)
        : rows_(rows), cols_(cols), data_(std::move(data)) {
        if (data_.size() != rows_ * cols_)
            throw parameter_error("Matrix: data size does not match dimensions");
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    double* row(std::size_t i) noexcept { return data_.data() + i * cols_; }
    const double* row(std::size_t i) const noexcept { return data_.data() + i * cols_; }

    double* data() noexcept { return data_.data(); }
    const double* data() const noexcept { return data_.data(); }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

// p x n observation matrix: rows are variables, columns are samples.
struct DataMatrix {
    Matrix values;  // p x n

    std::size_t p() const noexcept { return values.rows(); }
    std::size_t n() const noexcept { return values.cols(); }

    static DataMatrix from(Matrix m) {
        if (m.rows() < 2 || m.cols() < 3)
            throw parameter_error("DataMatrix requires p >= 2 and n >= 3");
        return DataMatrix{std::move(m)};
    }
};

// Eigenvalues of B_n sorted descending, with the dimension context carried
// along (c_n = p/n and c_N = p/N are distinct and both needed downstream).
struct SpectrumResult {
    std::vector<double> eigenvalues;  // length n, descending
    std::size_t n = 0;
    std::size_t p = 0;

    double c_n() const noexcept { return static_cast<double>(p) / static_cast<double>(n); }
    double c_N() const noexcept { return static_cast<double>(p) / static_cast<double>(n - 1); }
};

}  // namespace rsc

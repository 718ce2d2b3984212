#include "rsc/kernels.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace rsc::kernels {

namespace {

inline double dot(const double* a, const double* b, std::size_t k) {
    double s = 0.0;
    for (std::size_t i = 0; i < k; ++i) s += a[i] * b[i];
    return s;
}

inline void center_normalize_one(const double* src, double* dst, std::size_t n,
                                 std::size_t row_index) {
    double mean = 0.0;
    for (std::size_t j = 0; j < n; ++j) mean += src[j];
    mean /= static_cast<double>(n);
    double norm2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double v = src[j] - mean;
        dst[j] = v;
        norm2 += v * v;
    }
    if (norm2 <= 0.0)
        throw degenerate_variable_error(
            row_index, "variable " + std::to_string(row_index) +
                           " has zero variance after centering");
    const double inv = 1.0 / std::sqrt(norm2);
    for (std::size_t j = 0; j < n; ++j) dst[j] *= inv;
}

}  // namespace

void center_normalize_rows(const Matrix& src, Matrix& dst, Exec mode) {
    const std::size_t p = src.rows(), n = src.cols();
    dst = Matrix(p, n);
    if (mode == Exec::serial) {
        for (std::size_t i = 0; i < p; ++i)
            center_normalize_one(src.row(i), dst.row(i), n, i);
        return;
    }
    // Exceptions cannot cross the parallel region; record the first bad row.
    std::int64_t bad = -1;
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(p); ++i) {
        try {
            center_normalize_one(src.row(i), dst.row(i), n, i);
        } catch (const degenerate_variable_error&) {
#pragma omp critical
            if (bad < 0 || i < bad) bad = i;
        }
    }
    if (bad >= 0)
        throw degenerate_variable_error(
            static_cast<std::size_t>(bad),
            "variable " + std::to_string(bad) + " has zero variance after centering");
}

void transpose(const Matrix& src, Matrix& dst, Exec mode) {
    const std::size_t r = src.rows(), c = src.cols();
    dst = Matrix(c, r);
#pragma omp parallel for schedule(static) if (mode == Exec::parallel)
    for (std::int64_t j = 0; j < static_cast<std::int64_t>(c); ++j) {
        double* out = dst.row(j);
        for (std::size_t i = 0; i < r; ++i) out[i] = src(i, j);
    }
}

void gram(const Matrix& y, Matrix& g, Exec mode) {
    const std::size_t m = y.rows(), k = y.cols();
    g = Matrix(m, m);
#pragma omp parallel for schedule(dynamic, 8) if (mode == Exec::parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(m); ++i) {
        const double* ri = y.row(i);
        for (std::size_t j = i; j < m; ++j) {
            const double v = dot(ri, y.row(j), k);
            g(i, j) = v;
            g(j, i) = v;
        }
    }
}

void matmul(const Matrix& a, const Matrix& b, Matrix& c, Exec mode) {
    const std::size_t n = a.rows();
    c = Matrix(n, n);
#pragma omp parallel for schedule(static) if (mode == Exec::parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(n); ++i) {
        double* ci = c.row(i);
        const double* ai = a.row(i);
        for (std::size_t k = 0; k < n; ++k) {
            const double aik = ai[k];
            const double* bk = b.row(k);
            for (std::size_t j = 0; j < n; ++j) ci[j] += aik * bk[j];
        }
    }
}

double frobenius_inner(const Matrix& a, const Matrix& b, Exec mode) {
    // Per-row partials summed in row order in both modes, so the result is
    // bitwise identical for serial and for any thread count.
    const std::size_t rows = a.rows(), cols = a.cols();
    const double* pa = a.data();
    const double* pb = b.data();
    std::vector<double> partial(rows, 0.0);
#pragma omp parallel for schedule(static) if (mode == Exec::parallel)
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(rows); ++i)
        partial[i] = dot(pa + i * cols, pb + i * cols, cols);
    double s = 0.0;
    for (double v : partial) s += v;
    return s;
}

// Both transforms below recurse down the rows, so the parallel split is over
// contiguous column blocks; inside a block the sweep stays row-major.

void ar1_rows_inplace(Matrix& x, double theta, Exec mode) {
    const std::size_t p = x.rows(), n = x.cols();
    const double scale = std::sqrt(1.0 - theta * theta);
    if (p < 2 || theta == 0.0) return;
    auto sweep = [&](std::size_t j0, std::size_t j1) {
        for (std::size_t i = 1; i < p; ++i) {
            const double* prev = x.row(i - 1);
            double* cur = x.row(i);
            for (std::size_t j = j0; j < j1; ++j)
                cur[j] = theta * prev[j] + scale * cur[j];
        }
    };
    if (mode == Exec::serial) {
        sweep(0, n);
        return;
    }
#pragma omp parallel
    {
#ifdef _OPENMP
        const std::size_t nt = omp_get_num_threads();
        const std::size_t t = omp_get_thread_num();
#else
        const std::size_t nt = 1, t = 0;
#endif
        const std::size_t j0 = n * t / nt, j1 = n * (t + 1) / nt;
        sweep(j0, j1);
    }
}

void equicorr_rows_inplace(Matrix& x, double a, double b, Exec mode) {
    const std::size_t p = x.rows(), n = x.cols();
    const double bp = b / static_cast<double>(p);
    auto sweep = [&](std::size_t j0, std::size_t j1) {
        std::vector<double> colsum(j1 - j0, 0.0);
        for (std::size_t i = 0; i < p; ++i) {
            const double* r = x.row(i);
            for (std::size_t j = j0; j < j1; ++j) colsum[j - j0] += r[j];
        }
        for (std::size_t i = 0; i < p; ++i) {
            double* r = x.row(i);
            for (std::size_t j = j0; j < j1; ++j)
                r[j] = a * r[j] + bp * colsum[j - j0];
        }
    };
    if (mode == Exec::serial) {
        sweep(0, n);
        return;
    }
#pragma omp parallel
    {
#ifdef _OPENMP
        const std::size_t nt = omp_get_num_threads();
        const std::size_t t = omp_get_thread_num();
#else
        const std::size_t nt = 1, t = 0;
#endif
        const std::size_t j0 = n * t / nt, j1 = n * (t + 1) / nt;
        sweep(j0, j1);
    }
}

}  // namespace rsc::kernels

#include "rsc/matrix_core.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace rsc {

using kernels::Exec;

Matrix centering_projection(std::size_t n) {
    if (n < 2) throw parameter_error("centering_projection requires n >= 2");
    Matrix phi(n, n);
    const double off = -1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double* r = phi.row(i);
        for (std::size_t j = 0; j < n; ++j) r[j] = off;
        r[i] += 1.0;
    }
    return phi;
}

Matrix normalized_columns(const DataMatrix& y, Exec mode) {
    if (y.p() < 2 || y.n() < 3)
        throw parameter_error("normalized_columns requires p >= 2 and n >= 3");
    Matrix rows_normalized;  // p x n, row k = Phi y_k / ||Phi y_k||
    kernels::center_normalize_rows(y.values, rows_normalized, mode);
    Matrix yt;  // n x p
    kernels::transpose(rows_normalized, yt, mode);
    return yt;
}

Matrix build_renormalized(const DataMatrix& y, Exec mode) {
    const std::size_t n = y.n(), p = y.p();
    const double N = static_cast<double>(n - 1);
    const double scale = std::sqrt(static_cast<double>(p) / N);

    const Matrix yt = normalized_columns(y, mode);  // n x p
    Matrix g;
    kernels::gram(yt, g, mode);  // n x n, G = Ytilde Ytilde^T

    // B = scale * ((N/p) G - Phi); G already lives in the Phi-subspace.
    const double a = scale * N / static_cast<double>(p);
    const double inv_n = 1.0 / static_cast<double>(n);
    Matrix b(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const double* gi = g.row(i);
        double* bi = b.row(i);
        for (std::size_t j = 0; j < n; ++j) bi[j] = a * gi[j] + scale * inv_n;
        bi[i] -= scale;
    }
    // one-ulp symmetry cleanup after the Gram product
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const double v = 0.5 * (b(i, j) + b(j, i));
            b(i, j) = v;
            b(j, i) = v;
        }
    return b;
}

Matrix build_companion(const DataMatrix& y, Exec mode) {
    const std::size_t n = y.n(), p = y.p();
    const double scale = std::sqrt(static_cast<double>(p) / static_cast<double>(n - 1));
    Matrix a = build_renormalized(y, mode);
    const double shift = scale / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        double* r = a.row(i);
        for (std::size_t j = 0; j < n; ++j) r[j] -= shift;
    }
    return a;
}

Matrix sample_correlation(const DataMatrix& y, Exec mode) {
    Matrix rows_normalized;
    kernels::center_normalize_rows(y.values, rows_normalized, mode);
    Matrix r;
    kernels::gram(rows_normalized, r, mode);  // p x p, unit diagonal
    for (std::size_t i = 0; i < r.rows(); ++i) r(i, i) = 1.0;
    return r;
}

std::vector<double> symmetric_eigenvalues(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n != m.cols()) throw parameter_error("symmetric_eigenvalues: matrix not square");
    double scale = 0.0, asym = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            scale = std::max(scale, std::abs(m(i, j)));
            asym = std::max(asym, std::abs(m(i, j) - m(j, i)));
        }
    if (asym > 1e-10 * std::max(1.0, scale))
        throw parameter_error("symmetric_eigenvalues: input is not symmetric");

    Eigen::MatrixXd a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            a(i, j) = 0.5 * (m(i, j) + m(j, i));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw numeric_error("symmetric eigensolver failed to converge");

    std::vector<double> ev(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
    std::sort(ev.begin(), ev.end(), std::greater<>());
    return ev;
}

SpectrumResult spectrum_of(const DataMatrix& y, Exec mode) {
    SpectrumResult out;
    out.n = y.n();
    out.p = y.p();
    out.eigenvalues = symmetric_eigenvalues(build_renormalized(y, mode));
    return out;
}

std::vector<double> trace_powers(const Matrix& b, int kmax, Exec mode) {
    if (kmax < 1 || kmax > 8)
        throw parameter_error("trace_powers: kmax must be in 1..8");
    const std::size_t n = b.rows();
    std::vector<double> out(kmax);

    double tr = 0.0;
    for (std::size_t i = 0; i < n; ++i) tr += b(i, i);
    out[0] = tr;
    if (kmax >= 2) out[1] = kernels::frobenius_inner(b, b, mode);  // tr B^2 = ||B||_F^2

    Matrix b2, b3, b4;
    if (kmax >= 3) {
        kernels::matmul(b, b, b2, mode);
        out[2] = kernels::frobenius_inner(b2, b, mode);
    }
    if (kmax >= 4) out[3] = kernels::frobenius_inner(b2, b2, mode);
    if (kmax >= 5) {
        kernels::matmul(b2, b, b3, mode);
        out[4] = kernels::frobenius_inner(b3, b2, mode);
    }
    if (kmax >= 6) out[5] = kernels::frobenius_inner(b3, b3, mode);
    if (kmax >= 7) {
        kernels::matmul(b2, b2, b4, mode);
        out[6] = kernels::frobenius_inner(b4, b3, mode);
    }
    if (kmax >= 8) out[7] = kernels::frobenius_inner(b4, b4, mode);
    return out;
}

double eigen_map(double lambda_r, std::size_t p, std::size_t n) {
    if (p < 1 || n < 2) throw parameter_error("eigen_map requires p >= 1, n >= 2");
    const double ratio = static_cast<double>(p) / static_cast<double>(n - 1);
    return lambda_r / std::sqrt(ratio) - std::sqrt(ratio);
}

}  // namespace rsc

#pragma once

#include <vector>

#include "rsc/kernels.hpp"
#include "rsc/matrix.hpp"

// Construction of the renormalized sample correlation matrix
//
//   B_n = sqrt(p/N) * ((1/p) Phi Y^T D_n Y Phi - Phi),   N = n - 1,
//
// its companion A_n, the plain sample correlation R_n, and spectral
// utilities. B_n is built through the normalized-column form
// B_n = sqrt(p/N) ((N/p) Ytilde Ytilde^T - Phi), which never materializes
// any p x p object.

namespace rsc {

// Phi = I_n - (1/n) 1 1^T. Idempotent, rank n-1.
Matrix centering_projection(std::size_t n);

// n x p matrix whose k-th column is Phi y_k / ||Phi y_k|| for the k-th
// variable (row) of Y. Every column has unit norm and is orthogonal to 1.
Matrix normalized_columns(const DataMatrix& y,
                          kernels::Exec mode = kernels::Exec::parallel);

// B_n from data; n x n symmetric, B_n 1 = 0, tr B_n = 0.
Matrix build_renormalized(const DataMatrix& y,
                          kernels::Exec mode = kernels::Exec::parallel);

// A_n = B_n - sqrt(p/N) (1/n) 1 1^T; tr A_n = -sqrt(p/N).
Matrix build_companion(const DataMatrix& y,
                       kernels::Exec mode = kernels::Exec::parallel);

// p x p sample correlation matrix (unit diagonal). Intended for small p;
// the renormalized route above is the production path.
Matrix sample_correlation(const DataMatrix& y,
                          kernels::Exec mode = kernels::Exec::parallel);

// Eigenvalues of a symmetric matrix, sorted descending. Rejects inputs with
// relative asymmetry above 1e-10 and symmetrizes (M + M^T)/2 before solving.
std::vector<double> symmetric_eigenvalues(const Matrix& m);

// Spectrum of B_n(Y) together with dimension context.
SpectrumResult spectrum_of(const DataMatrix& y,
                           kernels::Exec mode = kernels::Exec::parallel);

// [tr B, tr B^2, ..., tr B^kmax] without eigendecomposition; kmax in 1..8.
std::vector<double> trace_powers(const Matrix& b, int kmax,
                                 kernels::Exec mode = kernels::Exec::parallel);

// lambda^B = sqrt(N/p) lambda^R - sqrt(p/N).
double eigen_map(double lambda_r, std::size_t p, std::size_t n);

}  // namespace rsc

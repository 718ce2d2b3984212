#pragma once

#include <cstddef>

#include "rsc/matrix.hpp"

// Data-parallel building blocks. Every kernel comes in a serial reference
// version and an OpenMP version; the dispatching wrapper picks one from the
// execution mode. Parallel variants assign whole output elements (or rows)
// to a single thread and keep the inner summation order identical to the
// serial code, so results are bitwise equal for any thread count.

namespace rsc::kernels {

enum class Exec { serial, parallel };

// Center each row of src to mean zero, scale it to unit Euclidean norm, and
// write it into dst (same shape). Throws degenerate_variable_error (with the
// row index) if a centered row has zero norm.
void center_normalize_rows(const Matrix& src, Matrix& dst, Exec mode);

// Out-of-place transpose.
void transpose(const Matrix& src, Matrix& dst, Exec mode);

// G = Y * Y^T for row-major Y (m x k): G(i,j) = dot(row i, row j).
// Fills the full symmetric m x m result.
void gram(const Matrix& y, Matrix& g, Exec mode);

// C = A * B for symmetric A, B (n x n). Plain triple loop with row
// accumulation; rows of the output are independent.
void matmul(const Matrix& a, const Matrix& b, Matrix& c, Exec mode);

// sum of elementwise products <A, B> = sum_ij A_ij * B_ij.
double frobenius_inner(const Matrix& a, const Matrix& b, Exec mode);

// Row convolution z_i = theta * z_{i-1} + sqrt(1-theta^2) * x_i applied
// down the rows of X (column-wise recursion, each column independent).
void ar1_rows_inplace(Matrix& x, double theta, Exec mode);

// x -> a*x + (b/p) * J x  (J = all-ones), via column sums; each column
// independent.
void equicorr_rows_inplace(Matrix& x, double a, double b, Exec mode);

}  // namespace rsc::kernels

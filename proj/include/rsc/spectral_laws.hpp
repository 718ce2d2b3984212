#pragma once

#include <complex>
#include <optional>

#include "rsc/errors.hpp"

// Limiting spectral laws of B_n on one aspect-ratio axis c in (0, inf]:
//
//   density   f^c(x) = sqrt(4 - (x - c^{-1/2})^2) / (2 pi (1 + x c^{-1/2}))
//             on [c^{-1/2} - 2, c^{-1/2} + 2], plus a point mass 1 - c at
//             -sqrt(c) when 0 < c <= 1;
//   c = inf   reduces to the semicircle law on [-2, 2].
//
// c = inf is a distinguished state (not a large float), so the semicircle
// formulas are evaluated exactly with no cancellation in c^{-1/2} terms.

namespace rsc {

using cplx = std::complex<double>;

class SpectralModel {
public:
    static SpectralModel finite(double c);
    static SpectralModel infinite();

    bool is_infinite() const noexcept { return infinite_; }
    double c() const;                   // throws for the infinite model
    double inv_sqrt_c() const noexcept { return m_; }  // 0 for c = inf
    double support_left() const noexcept { return m_ - 2.0; }
    double support_right() const noexcept { return m_ + 2.0; }

    bool has_atom() const noexcept { return !infinite_ && c_ <= 1.0; }
    double atom_location() const noexcept { return -std::sqrt(c_); }
    double atom_weight() const noexcept { return has_atom() ? 1.0 - c_ : 0.0; }

private:
    bool infinite_ = false;
    double c_ = 0.0;
    double m_ = 0.0;  // c^{-1/2}, 0 at infinity
};

// Density of the absolutely continuous part (the atom is not included).
double lsd_density(double x, const SpectralModel& model);

// F^c(x) = atom mass (if -sqrt(c) <= x) + integral of the density up to x.
double lsd_cdf(double x, const SpectralModel& model);

// k-th moment of F^c including the atom, via the exact binomial expansion
// sum_s (-1)^s C(k,s) c^{-k/2+s+1} beta_{k-s} + (1-c)(-sqrt c)^k with
// beta_j = sum_r C(j,r) C(j-1,r) c^r / (r+1); Catalan numbers at c = inf.
double lsd_moment(int k, const SpectralModel& model);

// Stieltjes transform s_c(z), upper half-plane or off-support real z.
// Branch: product of principal square roots of (z - support_right) and
// (z - support_left), which is continuous off [L, R] and satisfies
// s ~ -1/z at infinity and Im s > 0 on the upper half-plane.
cplx stieltjes(cplx z, const SpectralModel& model);

// Analytic derivative of s_c, from the defining quadratic
// (1 + z/sqrt c) s^2 + (z + 1/sqrt c) s + 1 = 0.
cplx stieltjes_derivative(cplx z, const SpectralModel& model);

// Marcenko-Pastur reference law with ratio c (finite), edges (1 -+ sqrt c)^2.
double mp_density(double x, double c);
cplx mp_stieltjes(cplx z, double c);

}  // namespace rsc

#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "rsc/matrix.hpp"
#include "rsc/spectral_laws.hpp"

// CLT machinery for linear spectral statistics of B_n:
//
//   G_n(f) = sum_i f(lambda_i) - n * int f dF^{c_N}
//            + (1/2 pi i) oint f(z) Theta_n(z) dz,
//
// with the limiting variance given by a double contour integral of the
// covariance kernel Cov(M(z1), M(z2)).
//
// Theta_n is implemented as
//
//   Theta_n(z) = (s^3 + s - s' s)/(s^2 - 1) + 3 (s' - s^2)/sqrt(c_N) - 1/z,
//
// s = s_{c_N}(z). The mean-correction contour must enclose, besides the
// closed support of F^{c_N}, the two off-support real points where
// s_{c_N} = +-1 (z = -(2w+1)/(w+1) and, for c_N < 1, z = (2w-1)/(w-1) with
// w = sqrt(c_N)); with those enclosed the z^k corrections for k = 0..4 come
// out exactly 0, 0, 2, 4/sqrt(c_N), 5 + 7/c_N at every aspect ratio, they
// match the closed forms implied by the trace corollary, and the whole
// function converges to the ultrahigh limit
// (s^3 + s - s' s)/(s^2 - 1) - 1/z of the semicircle regime.

namespace rsc {

struct CltContext {
    std::int64_t n = 0;
    std::int64_t p = 0;

    std::int64_t N() const noexcept { return n - 1; }
    double c_n() const noexcept { return double(p) / double(n); }
    double c_N() const noexcept { return double(p) / double(N()); }

    static CltContext make(std::int64_t n, std::int64_t p) {
        if (n < 3 || p < 1) throw parameter_error("CltContext requires n >= 3, p >= 1");
        return CltContext{n, p};
    }
    SpectralModel model() const { return SpectralModel::finite(c_N()); }
};

// Rectangular positively-oriented contour around [enclosed_left - margin,
// enclosed_right + margin] x [-v0, v0].
struct ContourSpec {
    double enclosed_left = 0.0;
    double enclosed_right = 0.0;
    double margin = 0.5;
    double v0 = 1.0;
    int nodes_per_edge = 64;

    double left() const noexcept { return enclosed_left - margin; }
    double right() const noexcept { return enclosed_right + margin; }
};

// Default single-contour spec for a model: encloses the support, the atom
// (c <= 1) and the off-support s = +-1 points of the mean function.
ContourSpec default_contour(const SpectralModel& model, double margin = 0.5,
                            double v0 = 1.0, int nodes_per_edge = 64);
// Second contour for double integrals; strictly outside the first.
ContourSpec outer_contour(const SpectralModel& model, double margin = 0.8,
                          double v0 = 1.5, int nodes_per_edge = 64);

struct ContourNode {
    cplx z;
    cplx dz;  // quadrature weight times edge direction
};
// Gauss-Legendre nodes on the four edges, positive orientation.
// Throws parameter_error if the contour does not enclose the support.
std::vector<ContourNode> contour_nodes(const ContourSpec& spec,
                                       const SpectralModel& model);
std::vector<ContourNode> contour_nodes(const ContourSpec& spec);

struct ThetaComponents {
    cplx h, g, d, l;
};
// The auxiliary functions h, g, d, l as printed in the source CLT, with
// l^{-1} read as the reciprocal 1/l. Satisfies l = sqrt(c_N)/s identically.
ThetaComponents theta_components(cplx z, const CltContext& ctx);

// Finite-sample mean-correction integrand (see file comment).
cplx theta_correction(cplx z, const CltContext& ctx);

// Ultrahigh-regime mean function EM(z) = (s^3 + s - s' s)/(s^2 - 1),
// semicircle s.
cplx mean_function_ultra(cplx z);

// Limiting covariance kernel Cov(M(z1), M(z2)).
cplx cov_kernel(cplx z1, cplx z2, const SpectralModel& model);

// Test function for LSS functionals: callable on the contour, plus an
// optional monomial degree that routes centering through exact moments.
struct AnalyticFn {
    std::function<cplx(cplx)> eval;
    std::optional<int> monomial_degree;

    static AnalyticFn monomial(int k);
    static AnalyticFn general(std::function<cplx(cplx)> f);
    double operator()(double x) const { return eval(cplx(x, 0.0)).real(); }
};

// (1/2 pi i) oint f(z) Theta_n(z) dz, real part; adaptive node doubling,
// throws numeric_error if the imaginary residue exceeds 1e-6 * (1 + |I|).
double mean_correction(const AnalyticFn& f, const CltContext& ctx,
                       const ContourSpec& spec);
double mean_correction(const AnalyticFn& f, const CltContext& ctx);

// Cov(X_f, X_g) = -(1/4 pi^2) oint oint f(z1) g(z2) Cov(M(z1), M(z2)).
// The two contours must not intersect.
double lss_variance(const AnalyticFn& f, const AnalyticFn& g,
                    const SpectralModel& model, const ContourSpec& spec1,
                    const ContourSpec& spec2);
double lss_variance(const AnalyticFn& f, const AnalyticFn& g,
                    const SpectralModel& model);

// n * int f dF^{c_N}; exact moments for monomials, quadrature plus atom
// term otherwise.
double lss_center(const AnalyticFn& f, const CltContext& ctx);

struct LssResult {
    double raw_sum = 0.0;
    double centering = 0.0;
    double correction = 0.0;
    double G_n = 0.0;
    double variance = 0.0;
    double standardized = 0.0;
};

// Assemble the full functional from a spectrum. The variance kernel uses
// the finite model at c_N when p/n <= 1e4 and the semicircle kernel beyond.
LssResult compute_Gn(const AnalyticFn& f, const SpectrumResult& spectrum);

// Same, but with the raw sum supplied directly (trace-power path).
LssResult compute_Gn_from_raw(const AnalyticFn& f, double raw_sum,
                              const CltContext& ctx);

}  // namespace rsc

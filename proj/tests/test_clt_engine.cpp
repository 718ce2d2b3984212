#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "rsc/clt_engine.hpp"
#include "rsc/data_gen.hpp"
#include "rsc/matrix_core.hpp"
#include "test_util.hpp"

using namespace rsc;
using testutil::rel_close;

namespace {

constexpr double kPi = 3.14159265358979323846;

// direct contour integral of z^k * theta over the default contour
cplx theta_moment(int k, const CltContext& ctx, int nodes = 256) {
    const auto cont = contour_nodes(default_contour(ctx.model(), 0.5, 1.0, nodes),
                                    ctx.model());
    cplx acc = 0.0;
    for (const auto& nd : cont)
        acc += std::pow(nd.z, k) * theta_correction(nd.z, ctx) * nd.dz;
    return acc / cplx(0.0, 2.0 * kPi);
}

}  // namespace

TEST_CASE("contour nodes: residue, closed contour, entire function") {
    const SpectralModel m = SpectralModel::finite(2.0);
    const auto nodes = contour_nodes(default_contour(m), m);

    cplx wsum = 0.0, residue = 0.0, entire = 0.0;
    const cplx pole(1.0 / std::sqrt(2.0), 0.0);  // c_N^{-1/2}, inside
    for (const auto& nd : nodes) {
        wsum += nd.dz;
        residue += nd.dz / (nd.z - pole);
        entire += std::pow(nd.z, 5) * nd.dz;
    }
    CHECK(std::abs(wsum) < 1e-12);
    CHECK(std::abs(residue - cplx(0.0, 2.0 * kPi)) < 1e-10);
    CHECK(std::abs(entire) < 1e-9);

    CHECK_THROWS_AS(contour_nodes(ContourSpec{0.0, 0.1, 0.2, 1.0, 64}, m),
                    parameter_error);
    ContourSpec bad = default_contour(m);
    bad.nodes_per_edge = 8;
    CHECK_THROWS_AS(contour_nodes(bad), parameter_error);
}

TEST_CASE("theta components: finite on contours, conjugate symmetric, l = sqrt(c_N)/s") {
    for (auto [n, p] : {std::pair<std::int64_t, std::int64_t>{500, 1000},
                        {500, 250},
                        {200, 20000000}}) {
        const CltContext ctx = CltContext::make(n, p);
        const auto nodes =
            contour_nodes(default_contour(ctx.model(), 0.5, 1.0, 256), ctx.model());
        REQUIRE(nodes.size() == 1024);
        const double w = std::sqrt(ctx.c_N());
        for (const auto& nd : nodes) {
            const auto tc = theta_components(nd.z, ctx);
            CHECK(std::isfinite(std::abs(tc.h)));
            CHECK(std::isfinite(std::abs(tc.g)));
            CHECK(std::isfinite(std::abs(tc.d)));
            CHECK(std::isfinite(std::abs(tc.l)));
            // exact algebraic identity of the printed display
            const cplx s = stieltjes(nd.z, ctx.model());
            CHECK(std::abs(tc.l - w / s) <= 1e-10 * std::abs(tc.l));
        }
        const cplx z(0.9, 1.1);
        const auto a = theta_components(z, ctx);
        const auto b = theta_components(std::conj(z), ctx);
        CHECK(std::abs(b.h - std::conj(a.h)) < 1e-12 * std::abs(a.h));
        CHECK(std::abs(b.g - std::conj(a.g)) < 1e-12 * std::abs(a.g));
        CHECK(std::abs(b.d - std::conj(a.d)) < 1e-12 * std::abs(a.d));
        CHECK(std::abs(b.l - std::conj(a.l)) < 1e-12 * std::abs(a.l));
    }
}

TEST_CASE("theta correction: conjugate symmetry") {
    const CltContext ctx = CltContext::make(500, 1000);
    const cplx z(1.3, 0.8);
    const cplx a = theta_correction(z, ctx);
    const cplx b = theta_correction(std::conj(z), ctx);
    CHECK(std::abs(b - std::conj(a)) < 1e-12 * std::max(1.0, std::abs(a)));
}

TEST_CASE("theta correction: ultrahigh consistency on a 100-node contour") {
    // p = 1e8 * n; theta must approach EM(z) - 1/z within 1e-3 pointwise
    const CltContext ctx = CltContext::make(1000000, 100000000000000LL);
    const auto nodes =
        contour_nodes(default_contour(ctx.model(), 0.6, 1.0, 25), ctx.model());
    REQUIRE(nodes.size() == 100);
    double worst = 0.0;
    for (const auto& nd : nodes) {
        const cplx target = mean_function_ultra(nd.z) - 1.0 / nd.z;
        worst = std::max(worst, std::abs(theta_correction(nd.z, ctx) - target));
    }
    CHECK(worst <= 1e-3);
}

TEST_CASE("theta moments match the corollary corrections exactly") {
    for (auto [n, p] : {std::pair<std::int64_t, std::int64_t>{500, 1000},
                        {500, 250},
                        {200, 800},
                        {1000, 300}}) {
        const CltContext ctx = CltContext::make(n, p);
        const double w = std::sqrt(ctx.c_N());
        const double targets[5] = {0.0, 0.0, 2.0, 4.0 / w, 5.0 + 7.0 / ctx.c_N()};
        for (int k = 0; k <= 4; ++k) {
            const cplx got = theta_moment(k, ctx);
            CHECK(std::abs(got.real() - targets[k]) < 1e-6);
            CHECK(std::abs(got.imag()) < 1e-8);
        }
    }
}

TEST_CASE("ultrahigh mean function: frozen oracle values") {
    // EM(3) with s(3) = (-3 + sqrt 5)/2, s'(3) = -1/2 + 3/(2 sqrt 5);
    // frozen by a 25-digit evaluation of the closed form
    const cplx em3 = mean_function_ultra(cplx(3.0, 0.0));
    CHECK(std::abs(em3 - cplx(0.4360679774997897, 0.0)) < 1e-13);

    const cplx big = mean_function_ultra(cplx(0.0, 1e6));
    CHECK(std::abs(big) < 1e-4);

    const cplx z(0.5, 1.2);
    CHECK(std::abs(mean_function_ultra(std::conj(z)) -
                   std::conj(mean_function_ultra(z))) < 1e-12);
}

TEST_CASE("covariance kernel: frozen value, symmetry, infinite-c limit") {
    const SpectralModel inf = SpectralModel::infinite();
    // frozen by a 25-digit evaluation with exact s(2i), s(3i)
    const cplx k23 = cov_kernel(cplx(0.0, 2.0), cplx(0.0, 3.0), inf);
    CHECK(std::abs(k23 - cplx(-0.0051763406360006038, 0.0)) < 1e-15);

    const cplx z1(1.0, 1.0), z2(-1.0, 2.0);
    const SpectralModel big = SpectralModel::finite(1e8);
    CHECK(std::abs(cov_kernel(z1, z2, big) - cov_kernel(z1, z2, inf)) < 1e-3);

    const SpectralModel m2 = SpectralModel::finite(2.0);
    CHECK(std::abs(cov_kernel(z1, z2, m2) - cov_kernel(z2, z1, m2)) < 1e-12);

    CHECK_THROWS_AS(cov_kernel(z1, z1, m2), parameter_error);
}

TEST_CASE("mean correction reproduces the corollary closed forms") {
    const CltContext ctx = CltContext::make(500, 1000);
    const double w = std::sqrt(ctx.c_N());
    CHECK(std::abs(mean_correction(AnalyticFn::monomial(2), ctx) - 2.0) < 1e-6);
    CHECK(std::abs(mean_correction(AnalyticFn::monomial(3), ctx) - 4.0 / w) < 1e-6);
    CHECK(std::abs(mean_correction(AnalyticFn::monomial(4), ctx) -
                   (5.0 + 7.0 / ctx.c_N())) < 1e-6);
}

TEST_CASE("contour invariance of the mean correction") {
    const CltContext ctx = CltContext::make(500, 1000);
    for (int k : {2, 3, 4}) {
        const AnalyticFn f = AnalyticFn::monomial(k);
        const double base =
            mean_correction(f, ctx, default_contour(ctx.model(), 0.5, 1.0));
        const double wide =
            mean_correction(f, ctx, default_contour(ctx.model(), 0.75, 1.5));
        CHECK(rel_close(base, wide, 1e-6));
    }
}

TEST_CASE("lss variance: corollary closed forms at four ratios") {
    struct Case {
        SpectralModel model;
        double c;  // for the formulas; ignored sign for infinity
    };
    const Case cases[] = {{SpectralModel::finite(0.5), 0.5},
                          {SpectralModel::finite(2.0), 2.0},
                          {SpectralModel::finite(50.0), 50.0},
                          {SpectralModel::infinite(), 0.0}};
    for (const auto& cs : cases) {
        const bool fin = !cs.model.is_infinite();
        const double v2 = lss_variance(AnalyticFn::monomial(2), AnalyticFn::monomial(2),
                                       cs.model);
        const double v3 = lss_variance(AnalyticFn::monomial(3), AnalyticFn::monomial(3),
                                       cs.model);
        const double v4 = lss_variance(AnalyticFn::monomial(4), AnalyticFn::monomial(4),
                                       cs.model);
        const double t2 = 4.0;
        const double t3 = fin ? 6.0 + 36.0 / cs.c : 6.0;
        const double t4 = fin ? 72.0 + 288.0 / cs.c + 144.0 / (cs.c * cs.c) : 72.0;
        CHECK(rel_close(v2, t2, 1e-4));
        CHECK(rel_close(v3, t3, 1e-4));
        CHECK(rel_close(v4, t4, 1e-4));
    }
}

TEST_CASE("lss variance: symmetry, bilinearity, geometry guard") {
    const SpectralModel m = SpectralModel::finite(2.0);
    const AnalyticFn f2 = AnalyticFn::monomial(2);
    const AnalyticFn f3 = AnalyticFn::monomial(3);
    const AnalyticFn f4 = AnalyticFn::monomial(4);

    const double a = lss_variance(f2, f3, m);
    const double b = lss_variance(f3, f2, m);
    CHECK(std::abs(a - b) < 1e-10 * std::max(1.0, std::abs(a)));

    // bilinearity: with h = x^2 and alpha f + beta g for f = x^3, g = x^4
    const double alpha = 0.7, beta = -1.3;
    const AnalyticFn combo = AnalyticFn::general([=](cplx z) {
        return alpha * std::pow(z, 3) + beta * std::pow(z, 4);
    });
    const double lhs = lss_variance(combo, f2, m);
    const double rhs = alpha * lss_variance(f3, f2, m) + beta * lss_variance(f4, f2, m);
    CHECK(rel_close(lhs, rhs, 1e-8));

    // contour invariance under margin/v0 scaling by 1.5
    const double base = lss_variance(f3, f3, m, default_contour(m, 0.4, 0.8),
                                     outer_contour(m, 0.8, 1.4));
    const double wide = lss_variance(f3, f3, m, default_contour(m, 0.6, 1.2),
                                     outer_contour(m, 1.2, 2.1));
    CHECK(rel_close(base, wide, 1e-6));

    // intersecting contours are rejected
    CHECK_THROWS_AS(lss_variance(f2, f2, m, default_contour(m, 0.5, 1.0),
                                 default_contour(m, 0.5, 1.0)),
                    parameter_error);
}

TEST_CASE("lss center") {
    const CltContext ctx = CltContext::make(200, 800);
    CHECK(std::abs(lss_center(AnalyticFn::monomial(0), ctx) - 200.0) < 1e-10);
    CHECK(std::abs(lss_center(AnalyticFn::monomial(2), ctx) - 200.0) < 1e-10);
    const double expect3 = 200.0 * std::sqrt(199.0 / 800.0);
    CHECK(std::abs(lss_center(AnalyticFn::monomial(3), ctx) - expect3) < 1e-9);

    // general-function route agrees with the exact-moment route
    const AnalyticFn gen = AnalyticFn::general([](cplx z) { return z * z; });
    CHECK(rel_close(lss_center(gen, ctx), 200.0, 1e-9));
}

TEST_CASE("compute_Gn: corollary identity and dual-path agreement") {
    const DataMatrix y = DataMatrix::from(
        sample_iid(Distribution::standard_normal, 400, 200, 20240615).values);
    const SpectrumResult spec = spectrum_of(y);
    const CltContext ctx = CltContext::make(200, 400);

    const LssResult via_eigen = compute_Gn(AnalyticFn::monomial(2), spec);
    const auto tp = trace_powers(build_renormalized(y), 2);
    const LssResult via_trace =
        compute_Gn_from_raw(AnalyticFn::monomial(2), tp[1], ctx);

    // eigenvalue-sum path and trace-power path agree
    CHECK(std::abs(via_eigen.standardized - via_trace.standardized) < 1e-6);

    // G_n(x^2) = tr B^2 - n + 2 (closed form vs contour path)
    const double closed = tp[1] - 200.0 + 2.0;
    CHECK(std::abs(via_trace.G_n - closed) < 1e-6);
    CHECK(std::abs(via_trace.standardized - closed / 2.0) < 1e-6);
    CHECK(via_trace.variance == doctest::Approx(4.0).epsilon(1e-4));

    // constant f: raw - centering = 0
    const LssResult c0 = compute_Gn(AnalyticFn::monomial(0), spec);
    CHECK(std::abs(c0.raw_sum - c0.centering) < 1e-9);
}

TEST_CASE("context bookkeeping keeps c_n and c_N distinct") {
    const CltContext ctx = CltContext::make(50, 2500);
    CHECK(ctx.c_n() == doctest::Approx(50.0));
    CHECK(ctx.c_N() == doctest::Approx(2500.0 / 49.0));
    CHECK(ctx.c_N() > ctx.c_n());
    CHECK_THROWS_AS(CltContext::make(2, 10), parameter_error);
}

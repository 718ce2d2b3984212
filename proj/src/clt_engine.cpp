#include "rsc/clt_engine.hpp"

#include <cmath>
#include <string>

#include "rsc/quadrature.hpp"

namespace rsc {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_div(const cplx& den, const char* what) {
    if (std::abs(den) < 1e-14)
        throw numeric_error(std::string("theta component: vanishing denominator in ") + what);
}

// Leftmost point that a mean-correction contour has to enclose: support
// edge, atom, and the real points with s_{c_N} = +-1.
double left_anchor(const SpectralModel& model) {
    double lo = model.support_left();
    if (model.is_infinite()) return lo;
    const double w = std::sqrt(model.c());
    lo = std::min(lo, -(2.0 * w + 1.0) / (w + 1.0));  // s = +1
    if (model.c() <= 1.0) {
        lo = std::min(lo, -w);  // atom
        if (w != 1.0) lo = std::min(lo, (2.0 * w - 1.0) / (w - 1.0));  // s = -1
    }
    return lo;
}

}  // namespace

ContourSpec default_contour(const SpectralModel& model, double margin, double v0,
                            int nodes_per_edge) {
    return ContourSpec{left_anchor(model), model.support_right(), margin, v0,
                       nodes_per_edge};
}

ContourSpec outer_contour(const SpectralModel& model, double margin, double v0,
                          int nodes_per_edge) {
    ContourSpec s = default_contour(model, margin, v0, nodes_per_edge);
    return s;
}

std::vector<ContourNode> contour_nodes(const ContourSpec& spec,
                                       const SpectralModel& model) {
    if (spec.left() >= left_anchor(model) || spec.right() <= model.support_right())
        throw parameter_error("contour does not enclose the support of F^c");
    return contour_nodes(spec);
}

std::vector<ContourNode> contour_nodes(const ContourSpec& spec) {
    if (spec.nodes_per_edge < 16)
        throw parameter_error("contour_nodes: need at least 16 nodes per edge");
    if (!(spec.margin > 0.0) || !(spec.v0 > 0.0))
        throw parameter_error("contour_nodes: margin and v0 must be positive");
    const auto& gl = quad::gauss_legendre(spec.nodes_per_edge);
    const cplx corners[4] = {cplx(spec.left(), -spec.v0), cplx(spec.right(), -spec.v0),
                             cplx(spec.right(), spec.v0), cplx(spec.left(), spec.v0)};
    std::vector<ContourNode> nodes;
    nodes.reserve(4 * spec.nodes_per_edge);
    for (int e = 0; e < 4; ++e) {
        const cplx a = corners[e], b = corners[(e + 1) % 4];
        const cplx half = 0.5 * (b - a), mid = 0.5 * (a + b);
        for (int i = 0; i < spec.nodes_per_edge; ++i)
            nodes.push_back({mid + half * gl.x[i], half * gl.w[i]});
    }
    return nodes;
}

ThetaComponents theta_components(cplx z, const CltContext& ctx) {
    const SpectralModel model = ctx.model();
    const double cn = ctx.c_n(), cN = ctx.c_N();
    const double w = std::sqrt(cN);
    const cplx s = stieltjes(z, model);
    const cplx q = cN + w * z;

    check_div(q, "c_N + sqrt(c_N) z");
    const cplx hden = 1.0 + s / w + (1.0 - cn) / q;
    check_div(hden, "h");
    ThetaComponents out;
    out.h = 1.0 / hden;
    out.g = -(q / cn) * (s / w + (1.0 - cn) / q);
    check_div(s, "l (s factor)");
    out.l = (out.h / cn) *
            (1.0 + (w / s) * (cn + cn * (1.0 - cn) / q + (cn - 1.0) * s / w));
    check_div(out.l, "d (l reciprocal)");
    const cplx dden = w - (s / out.l) * q;
    check_div(dden, "d");
    out.d = -cn * (1.0 / out.h) * s / dden;
    return out;
}

cplx theta_correction(cplx z, const CltContext& ctx) {
    const SpectralModel model = ctx.model();
    const double w = std::sqrt(ctx.c_N());
    const cplx s = stieltjes(z, model);
    const cplx sp = stieltjes_derivative(z, model);
    const cplx s2m1 = s * s - 1.0;
    check_div(s2m1, "s^2 - 1");
    check_div(z, "1/z");
    return (s * s * s + s - sp * s) / s2m1 + (3.0 / w) * (sp - s * s) - 1.0 / z;
}

cplx mean_function_ultra(cplx z) {
    const SpectralModel inf = SpectralModel::infinite();
    const cplx s = stieltjes(z, inf);
    const cplx sp = stieltjes_derivative(z, inf);
    const cplx s2m1 = s * s - 1.0;
    check_div(s2m1, "s^2 - 1");
    return (s * s * s + s - sp * s) / s2m1;
}

cplx cov_kernel(cplx z1, cplx z2, const SpectralModel& model) {
    if (std::abs(z1 - z2) < 1e-12)
        throw parameter_error("cov_kernel: z1 and z2 coincide; use disjoint contours");
    const cplx s1 = stieltjes(z1, model), s2 = stieltjes(z2, model);
    const cplx d1 = stieltjes_derivative(z1, model), d2 = stieltjes_derivative(z2, model);
    const cplx ds = s1 - s2;
    check_div(ds, "s(z1) - s(z2)");
    cplx out = 2.0 * (d1 * d2 / (ds * ds) - 1.0 / ((z1 - z2) * (z1 - z2)));
    if (model.is_infinite()) return out - 2.0 * d1 * d2;
    const double w = std::sqrt(model.c());
    const cplx f1 = 1.0 + s1 / w, f2 = 1.0 + s2 / w;
    check_div(f1 * f2, "(1 + s/sqrt c)");
    return out - 2.0 * d1 * d2 / (f1 * f1 * f2 * f2);
}

AnalyticFn AnalyticFn::monomial(int k) {
    if (k < 0) throw parameter_error("AnalyticFn::monomial: negative degree");
    AnalyticFn f;
    f.monomial_degree = k;
    f.eval = [k](cplx z) { return std::pow(z, k); };
    return f;
}

AnalyticFn AnalyticFn::general(std::function<cplx(cplx)> fn) {
    AnalyticFn f;
    f.eval = std::move(fn);
    return f;
}

namespace {

// one pass of the correction integral at a fixed node count
cplx correction_once(const AnalyticFn& f, const CltContext& ctx, ContourSpec spec) {
    const auto nodes = contour_nodes(spec, ctx.model());
    cplx acc = 0.0;
    for (const auto& nd : nodes) acc += f.eval(nd.z) * theta_correction(nd.z, ctx) * nd.dz;
    return acc / cplx(0.0, 2.0 * kPi);
}

}  // namespace

double mean_correction(const AnalyticFn& f, const CltContext& ctx,
                       const ContourSpec& spec) {
    ContourSpec s = spec;
    cplx prev = 0.0;
    bool have = false;
    for (int pass = 0; pass <= 6; ++pass, s.nodes_per_edge *= 2) {
        if (s.nodes_per_edge > 2048) break;
        const cplx val = correction_once(f, ctx, s);
        if (have && std::abs(val - prev) <= 1e-8 * (1.0 + std::abs(val))) {
            if (std::abs(val.imag()) > 1e-6 * (1.0 + std::abs(val)))
                throw numeric_error("mean_correction: non-vanishing imaginary part");
            return val.real();
        }
        prev = val;
        have = true;
    }
    throw numeric_error("mean_correction: contour quadrature did not converge");
}

double mean_correction(const AnalyticFn& f, const CltContext& ctx) {
    return mean_correction(f, ctx, default_contour(ctx.model()));
}

double lss_variance(const AnalyticFn& f, const AnalyticFn& g,
                    const SpectralModel& model, const ContourSpec& spec1,
                    const ContourSpec& spec2) {
    const bool inner_in_outer = spec1.left() > spec2.left() &&
                                spec1.right() < spec2.right() &&
                                spec1.v0 < spec2.v0;
    const bool outer_in_inner = spec2.left() > spec1.left() &&
                                spec2.right() < spec1.right() &&
                                spec2.v0 < spec1.v0;
    if (!inner_in_outer && !outer_in_inner)
        throw parameter_error("lss_variance: contours must be strictly nested");

    ContourSpec s1 = spec1, s2 = spec2;
    cplx prev = 0.0;
    bool have = false;
    for (int pass = 0; pass <= 5; ++pass, s1.nodes_per_edge *= 2, s2.nodes_per_edge *= 2) {
        if (s1.nodes_per_edge > 1024) break;
        const auto n1 = contour_nodes(s1, model);
        const auto n2 = contour_nodes(s2, model);
        cplx acc = 0.0;
        for (const auto& a : n1) {
            const cplx fa = f.eval(a.z);
            cplx inner = 0.0;
            for (const auto& b : n2) inner += g.eval(b.z) * cov_kernel(a.z, b.z, model) * b.dz;
            acc += fa * inner * a.dz;
        }
        const cplx val = acc / (cplx(0.0, 2.0 * kPi) * cplx(0.0, 2.0 * kPi));
        if (have && std::abs(val - prev) <= 1e-8 * (1.0 + std::abs(val))) {
            if (std::abs(val.imag()) > 1e-6 * (1.0 + std::abs(val)))
                throw numeric_error("lss_variance: non-vanishing imaginary part");
            return val.real();
        }
        prev = val;
        have = true;
    }
    throw numeric_error("lss_variance: double contour quadrature did not converge");
}

double lss_variance(const AnalyticFn& f, const AnalyticFn& g,
                    const SpectralModel& model) {
    return lss_variance(f, g, model, default_contour(model), outer_contour(model));
}

double lss_center(const AnalyticFn& f, const CltContext& ctx) {
    const double n = static_cast<double>(ctx.n);
    const SpectralModel model = ctx.model();
    if (f.monomial_degree) return n * lsd_moment(*f.monomial_degree, model);

    const double L = model.support_left(), R = model.support_right();
    const double mid = 0.5 * (L + R);
    auto fd = [&](double x) { return f(x) * lsd_density(x, model); };
    double integral =
        quad::integrate([&](double t) { return 2.0 * t * fd(L + t * t); }, 0.0,
                        std::sqrt(mid - L)) +
        quad::integrate([&](double t) { return 2.0 * t * fd(R - t * t); }, 0.0,
                        std::sqrt(R - mid));
    if (model.has_atom()) integral += model.atom_weight() * f(model.atom_location());
    return n * integral;
}

LssResult compute_Gn_from_raw(const AnalyticFn& f, double raw_sum,
                              const CltContext& ctx) {
    LssResult out;
    out.raw_sum = raw_sum;
    out.centering = lss_center(f, ctx);
    out.correction = mean_correction(f, ctx);
    out.G_n = out.raw_sum - out.centering + out.correction;
    // Beyond p/n = 1e4 the finite-c kernel only adds cancellation noise; the
    // two kernels differ by O(1/c) there.
    const SpectralModel vmodel = (ctx.c_n() <= 1e4)
                                     ? SpectralModel::finite(ctx.c_N())
                                     : SpectralModel::infinite();
    out.variance = lss_variance(f, f, vmodel);
    if (!(out.variance > 0.0))
        throw numeric_error("compute_Gn: nonpositive variance");
    out.standardized = out.G_n / std::sqrt(out.variance);
    return out;
}

LssResult compute_Gn(const AnalyticFn& f, const SpectrumResult& spectrum) {
    const CltContext ctx = CltContext::make(static_cast<std::int64_t>(spectrum.n),
                                            static_cast<std::int64_t>(spectrum.p));
    double raw = 0.0;
    for (double lam : spectrum.eigenvalues) raw += f(lam);
    return compute_Gn_from_raw(f, raw, ctx);
}

}  // namespace rsc

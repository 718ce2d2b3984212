// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Runs the full desk-scale reproduction (a few minutes on
// two cores; replicate loops parallelize).

#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <string>
#include <vector>

#include <json.hpp>

#include "rsc/clt_engine.hpp"
#include "rsc/data_gen.hpp"
#include "rsc/indep_test.hpp"
#include "rsc/matrix_core.hpp"
#include "rsc/quadrature.hpp"
#include "rsc/sim_harness.hpp"
#include "rsc/spectral_laws.hpp"

using namespace rsc;
using nlohmann::json;

namespace {

int g_failures = 0;

void report(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %d: %s  (%s)\n", pass ? "PASS" : "FAIL", idx,
                name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

bool rel_ok(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

// ---------- criterion 1: closed-form variances ----------
void criterion1() {
    struct Row {
        SpectralModel m;
        double c;
        bool fin;
    };
    const Row rows[] = {{SpectralModel::finite(0.5), 0.5, true},
                        {SpectralModel::finite(2.0), 2.0, true},
                        {SpectralModel::finite(50.0), 50.0, true},
                        {SpectralModel::infinite(), 0.0, false}};
    bool pass = true;
    double worst = 0.0;
    for (const auto& r : rows) {
        const double t2 = 4.0;
        const double t3 = r.fin ? 6.0 + 36.0 / r.c : 6.0;
        const double t4 = r.fin ? 72.0 + 288.0 / r.c + 144.0 / (r.c * r.c) : 72.0;
        const double v2 = lss_variance(AnalyticFn::monomial(2), AnalyticFn::monomial(2), r.m);
        const double v3 = lss_variance(AnalyticFn::monomial(3), AnalyticFn::monomial(3), r.m);
        const double v4 = lss_variance(AnalyticFn::monomial(4), AnalyticFn::monomial(4), r.m);
        for (auto [got, want] : {std::pair<double, double>{v2, t2}, {v3, t3}, {v4, t4}}) {
            const double rel = std::abs(got - want) / std::abs(want);
            worst = std::max(worst, rel);
            pass = pass && rel <= 1e-4;
        }
    }
    report(1, "variance closed forms (4, 6+36/c, 72+288/c+144/c^2)", pass,
           "worst rel err " + std::to_string(worst));
}

// ---------- criterion 2: mean-correction identities ----------
void criterion2() {
    const CltContext ctx = CltContext::make(500, 1000);
    const double w = std::sqrt(ctx.c_N());
    const double c2 = mean_correction(AnalyticFn::monomial(2), ctx);
    const double c3 = mean_correction(AnalyticFn::monomial(3), ctx);
    const double c4 = mean_correction(AnalyticFn::monomial(4), ctx);
    const bool pass = std::abs(c2 - 2.0) <= 0.05 &&
                      std::abs(c3 - 4.0 / w) <= 0.05 &&
                      std::abs(c4 - (5.0 + 7.0 / ctx.c_N())) <= 0.2;
    char buf[160];
    std::snprintf(buf, sizeof buf, "f2: %.6f vs 2, f3: %.6f vs %.6f, f4: %.6f vs %.6f",
                  c2, c3, 4.0 / w, c4, 5.0 + 7.0 / ctx.c_N());
    report(2, "mean corrections at (n,p)=(500,1000)", pass, buf);
}

// ---------- criterion 3: ultrahigh consistency ----------
void criterion3() {
    const CltContext ctx = CltContext::make(1000000, 100000000000000LL);  // p = 1e8 n
    const auto nodes =
        contour_nodes(default_contour(ctx.model(), 0.6, 1.0, 25), ctx.model());
    double worst = 0.0;
    for (const auto& nd : nodes) {
        const cplx target = mean_function_ultra(nd.z) - 1.0 / nd.z;
        worst = std::max(worst, std::abs(theta_correction(nd.z, ctx) - target));
    }
    report(3, "ultrahigh Theta_n limit on a 100-node contour", worst <= 1e-3,
           "max |Theta - (EM - 1/z)| = " + std::to_string(worst));
}

// ---------- criterion 4: Table 2 cells ----------
double rejection_rate(Distribution dist, const SigmaModel& sigma, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::size_power;
    cfg.p = 2500;
    cfg.n = 50;
    cfg.dist = dist;
    cfg.sigma = sigma;
    cfg.replicates = 5000;
    cfg.master_seed = seed;
    cfg.alpha = 0.05;
    const auto rec = run_size_power(cfg);
    return json::parse(rec.summary_json)["rejection_rate"].get<double>();
}

void criterion4() {
    struct Cell {
        const char* name;
        Distribution dist;
        SigmaModel sigma;
        double target, tol;
    };
    const Cell cells[] = {
        {"gaussian size", Distribution::standard_normal, SigmaModel::identity(), 0.044, 0.015},
        {"theta=0.20", Distribution::standard_normal, SigmaModel::ar(0.20), 0.608, 0.05},
        {"theta=0.25", Distribution::standard_normal, SigmaModel::ar(0.25), 0.902, 0.05},
        {"eta=0.007", Distribution::standard_normal, SigmaModel::equicorrelation(0.007), 0.769, 0.05},
        {"eta=0.011", Distribution::standard_normal, SigmaModel::equicorrelation(0.011), 0.988, 0.03},
        {"chi2 size", Distribution::chi_square_2_std, SigmaModel::identity(), 0.06, 0.02},
    };
    bool pass = true;
    std::string detail;
    std::uint64_t seed = 94611;
    for (const auto& cell : cells) {
        const double rate = rejection_rate(cell.dist, cell.sigma, seed++);
        const bool ok = std::abs(rate - cell.target) <= cell.tol;
        pass = pass && ok;
        detail += std::string(cell.name) + "=" + std::to_string(rate) +
                  (ok ? " " : "(!) ");
    }
    report(4, "Table 2 cells at (p,n)=(2500,50), 5000 replicates", pass, detail);
}

// ---------- criterion 5: Table 1 at desk scale ----------
void criterion5() {
    bool pass = true;
    std::string detail;
    for (Distribution dist : {Distribution::standard_normal, Distribution::chi_square_2}) {
        ExperimentConfig cfg;
        cfg.experiment = ExperimentKind::clt_lss;
        cfg.p = 400;
        cfg.n = 200;
        cfg.dist = dist;
        cfg.replicates = 2000;
        cfg.master_seed = 555001;
        cfg.monomials = {2, 3, 4};
        const auto rec = run_clt_experiment(cfg);
        const json s = json::parse(rec.summary_json);
        for (const auto& m : s["monomials"]) {
            const double mean = m["empirical_mean"].get<double>();
            const double var = m["empirical_variance"].get<double>();
            const bool ok = std::abs(mean) <= 0.15 && var >= 0.8 && var <= 1.2;
            pass = pass && ok;
            char buf[96];
            std::snprintf(buf, sizeof buf, "%s x%d: m=%.3f v=%.3f%s ",
                          distribution_name(dist).c_str(),
                          m["monomial"].get<int>(), mean, var, ok ? "" : "(!)");
            detail += buf;
        }
    }
    report(5, "standardized LSS moments at (p,n)=(400,200), 2000 reps", pass, detail);
}

// ---------- criterion 6: LSD Kolmogorov-Smirnov ----------
double ks_run(std::size_t p, std::size_t n, Distribution dist, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::lsd_histogram;
    cfg.p = p;
    cfg.n = n;
    cfg.dist = dist;
    cfg.replicates = 1;
    cfg.master_seed = seed;
    const auto rec = run_lsd_experiment(cfg);
    return json::parse(rec.summary_json)["ks_distance"].get<double>();
}

void criterion6() {
    bool pass = true;
    std::string detail;
    struct Row {
        std::size_t p, n;
        Distribution d;
        double tol;
        const char* name;
    };
    const Row rows[] = {
        {2000, 1000, Distribution::standard_normal, 0.06, "(2000,1000) gauss"},
        {2000, 1000, Distribution::poisson_mean1, 0.06, "(2000,1000) poisson"},
        {40000, 200, Distribution::standard_normal, 0.08, "(40000,200) gauss"},
        {40000, 200, Distribution::poisson_mean1, 0.08, "(40000,200) poisson"},
    };
    std::uint64_t seed = 606001;
    for (const auto& r : rows) {
        const double ks = ks_run(r.p, r.n, r.d, seed++);
        const bool ok = ks <= r.tol;
        pass = pass && ok;
        detail += std::string(r.name) + " ks=" + std::to_string(ks) + (ok ? " " : "(!) ");
    }
    report(6, "KS(ESD, F^{c_N}) at the Figure-1 style dimensions", pass, detail);
}

// ---------- criterion 7: largest eigenvalue ----------
double lambda1_dev(std::size_t p, std::size_t n, std::uint64_t seed) {
    ExperimentConfig cfg;
    cfg.experiment = ExperimentKind::largest_eigenvalue;
    cfg.p = p;
    cfg.n = n;
    cfg.replicates = 10;
    cfg.master_seed = seed;
    const auto rec = run_largest_eigenvalue(cfg);
    return json::parse(rec.summary_json)["mean_abs_deviation"].get<double>();
}

void criterion7() {
    const double d1 = lambda1_dev(40000, 200, 707001);
    const double d2 = lambda1_dev(800, 400, 707002);
    const bool pass = d1 <= 0.1 && d2 <= 0.15;
    report(7, "largest eigenvalue convergence to 2 + 1/sqrt(c_N)", pass,
           "(40000,200): " + std::to_string(d1) + ", (800,400): " + std::to_string(d2));
}

// ---------- criterion 8: property suites ----------
double moment_by_quadrature(int k, const SpectralModel& model) {
    const double L = model.support_left(), R = model.support_right();
    const double mid = 0.5 * (L + R);
    auto g = [&](double x) { return std::pow(x, k) * lsd_density(x, model); };
    double s = quad::integrate([&](double t) { return 2.0 * t * g(L + t * t); }, 0.0,
                               std::sqrt(mid - L)) +
               quad::integrate([&](double t) { return 2.0 * t * g(R - t * t); }, 0.0,
                               std::sqrt(R - mid));
    if (model.has_atom()) s += model.atom_weight() * std::pow(model.atom_location(), k);
    return s;
}

void criterion8() {
    bool pass = true;
    std::string detail;

    // moments vs quadrature, k <= 8
    {
        bool ok = true;
        const double cs[] = {0.25, 0.5, 1.0, 2.0, 100.0};
        for (double c : cs) {
            const SpectralModel m = SpectralModel::finite(c);
            for (int k = 0; k <= 8; ++k)
                ok = ok && std::abs(lsd_moment(k, m) - moment_by_quadrature(k, m)) <=
                               1e-9 * std::max(1.0, std::abs(lsd_moment(k, m)));
        }
        const SpectralModel inf = SpectralModel::infinite();
        for (int k = 0; k <= 8; ++k)
            ok = ok && std::abs(lsd_moment(k, inf) - moment_by_quadrature(k, inf)) <= 1e-9;
        pass = pass && ok;
        detail += std::string("moments") + (ok ? " " : "(!) ");
    }

    // Stieltjes self-consistency: transform equals the quadrature integral
    {
        const SpectralModel m2 = SpectralModel::finite(2.0);
        const cplx z(1.0, 1.0);
        const double L = m2.support_left(), R = m2.support_right(), mid = 0.5 * (L + R);
        auto component = [&](bool imag_part) {
            auto f = [&](double x) {
                const cplx v = lsd_density(x, m2) / (x - z);
                return imag_part ? v.imag() : v.real();
            };
            return quad::integrate([&](double t) { return 2.0 * t * f(L + t * t); },
                                   0.0, std::sqrt(mid - L)) +
                   quad::integrate([&](double t) { return 2.0 * t * f(R - t * t); },
                                   0.0, std::sqrt(R - mid));
        };
        const cplx expect(component(false), component(true));
        const bool ok = std::abs(stieltjes(z, m2) - expect) <= 1e-8;
        pass = pass && ok;
        detail += std::string("stieltjes") + (ok ? " " : "(!) ");
    }

    // Stieltjes inversion at epsilon = 1e-6
    {
        bool ok = true;
        for (double c : {0.5, 2.0}) {
            const SpectralModel m = SpectralModel::finite(c);
            for (double frac : {0.25, 0.5, 0.75}) {
                const double x =
                    m.support_left() + frac * (m.support_right() - m.support_left());
                const double inv =
                    stieltjes(cplx(x, 1e-6), m).imag() / 3.14159265358979323846;
                ok = ok && std::abs(inv - lsd_density(x, m)) <= 1e-4;
            }
        }
        pass = pass && ok;
        detail += std::string("inversion") + (ok ? " " : "(!) ");
    }

    // MP transport identity
    {
        bool ok = true;
        for (double c : {0.5, 1.0, 2.0, 10.0}) {
            const SpectralModel m = SpectralModel::finite(c);
            for (double frac : {0.1, 0.5, 0.9}) {
                const double x =
                    m.support_left() + frac * (m.support_right() - m.support_left());
                ok = ok && std::abs(lsd_density(x, m) -
                                    std::pow(c, 1.5) *
                                        mp_density(c + std::sqrt(c) * x, c)) <= 1e-10;
            }
        }
        pass = pass && ok;
        detail += std::string("mp-transport") + (ok ? " " : "(!) ");
    }

    // spectrum correspondence brute force, p,n <= 12
    {
        bool ok = true;
        for (std::size_t p = 2; p <= 12 && ok; ++p)
            for (std::size_t n = 3; n <= 12 && ok; ++n) {
                const DataMatrix y = DataMatrix::from(
                    sample_iid(Distribution::standard_normal, p, n, 800000 + 13 * p + n)
                        .values);
                const std::size_t N = n - 1;
                const auto sb = symmetric_eigenvalues(build_renormalized(y));
                const auto sr = symmetric_eigenvalues(sample_correlation(y));
                std::vector<double> expect{0.0};
                if (p >= N)
                    for (std::size_t i = 0; i < N; ++i)
                        expect.push_back(eigen_map(sr[i], p, n));
                else {
                    for (double lr : sr) expect.push_back(eigen_map(lr, p, n));
                    for (std::size_t i = 0; i < N - p; ++i)
                        expect.push_back(-std::sqrt(double(p) / double(N)));
                }
                std::sort(expect.begin(), expect.end(), std::greater<>());
                for (std::size_t i = 0; i < sb.size(); ++i)
                    ok = ok && std::abs(sb[i] - expect[i]) <= 1e-8;
            }
        pass = pass && ok;
        detail += std::string("spectrum-map") + (ok ? " " : "(!) ");
    }

    // tr(R - I)^2 identity
    {
        bool ok = true;
        for (std::size_t p : {7, 29, 50}) {
            const DataMatrix y = DataMatrix::from(
                sample_iid(Distribution::standard_normal, p, 18, 900 + p).values);
            const Matrix r = sample_correlation(y);
            double lhs = 0.0;
            for (std::size_t i = 0; i < p; ++i)
                for (std::size_t j = 0; j < p; ++j) {
                    const double v = r(i, j) - (i == j ? 1.0 : 0.0);
                    lhs += v * v;
                }
            const double trb2 = trace_powers(build_renormalized(y), 2)[1];
            const double rhs = double(p) / 17.0 * (trb2 + double(p)) - double(p);
            ok = ok && std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, std::abs(rhs));
        }
        pass = pass && ok;
        detail += std::string("trace-identity") + (ok ? " " : "(!) ");
    }

    // contour invariance of correction and variance
    {
        const CltContext ctx = CltContext::make(500, 1000);
        const SpectralModel m = ctx.model();
        bool ok = true;
        for (int k : {2, 3}) {
            const AnalyticFn f = AnalyticFn::monomial(k);
            const double a = mean_correction(f, ctx, default_contour(m, 0.5, 1.0));
            const double b = mean_correction(f, ctx, default_contour(m, 0.75, 1.5));
            ok = ok && std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(a));
        }
        const double v1 = lss_variance(AnalyticFn::monomial(3), AnalyticFn::monomial(3),
                                       m, default_contour(m, 0.4, 0.8),
                                       outer_contour(m, 0.8, 1.4));
        const double v2 = lss_variance(AnalyticFn::monomial(3), AnalyticFn::monomial(3),
                                       m, default_contour(m, 0.6, 1.2),
                                       outer_contour(m, 1.2, 2.1));
        ok = ok && std::abs(v1 - v2) <= 1e-6 * std::max(1.0, std::abs(v1));
        pass = pass && ok;
        detail += std::string("contour-invariance") + (ok ? " " : "(!) ");
    }

    // analytic derivative vs finite differences
    {
        bool ok = true;
        for (double c : {0.5, 2.0, 100.0}) {
            const SpectralModel m = SpectralModel::finite(c);
            const cplx z(1.0, 1.0);
            const cplx fd = (stieltjes(z + 1e-6, m) - stieltjes(z - 1e-6, m)) / 2e-6;
            const cplx an = stieltjes_derivative(z, m);
            ok = ok && std::abs(an - fd) <= 1e-6 * std::max(1.0, std::abs(an));
        }
        pass = pass && ok;
        detail += std::string("derivative") + (ok ? " " : "(!) ");
    }

    // bitwise determinism under thread-count changes
    {
        ExperimentConfig cfg;
        cfg.experiment = ExperimentKind::size_power;
        cfg.p = 300;
        cfg.n = 20;
        cfg.replicates = 16;
        cfg.master_seed = 445;
        cfg.threads = 1;
        const auto r1 = run_size_power(cfg);
        cfg.threads = 4;
        const auto r4 = run_size_power(cfg);
        const bool ok = r1.rows == r4.rows;
        pass = pass && ok;
        detail += std::string("determinism") + (ok ? " " : "(!) ");
    }

    report(8, "property suites", pass, detail);
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    const auto dt = std::chrono::duration_cast<std::chrono::seconds>(
                        std::chrono::steady_clock::now() - t0)
                        .count();
    std::printf("%d criterion(s) failed; total %llds\n", g_failures,
                static_cast<long long>(dt));
    return g_failures == 0 ? 0 : 1;
}

#include "rsc/sim_harness.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <sstream>

#include <json.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rsc/clt_engine.hpp"
#include "rsc/indep_test.hpp"
#include "rsc/matrix_core.hpp"
#include "rsc/spectral_laws.hpp"

namespace rsc {

using nlohmann::json;
using kernels::Exec;

std::size_t ExperimentConfig::effective_p() const {
    if (p > 0) return p;
    if (t_exponent > 0.0)
        return static_cast<std::size_t>(
            std::llround(std::pow(static_cast<double>(n), t_exponent)));
    throw parameter_error("config: either p or t must be given");
}

namespace {

ExperimentKind kind_from_name(const std::string& s) {
    if (s == "lsd_histogram") return ExperimentKind::lsd_histogram;
    if (s == "clt_lss") return ExperimentKind::clt_lss;
    if (s == "size_power") return ExperimentKind::size_power;
    if (s == "largest_eigenvalue") return ExperimentKind::largest_eigenvalue;
    throw parameter_error("config: unknown experiment '" + s + "' at /experiment");
}

std::string kind_name(ExperimentKind k) {
    switch (k) {
        case ExperimentKind::lsd_histogram: return "lsd_histogram";
        case ExperimentKind::clt_lss: return "clt_lss";
        case ExperimentKind::size_power: return "size_power";
        case ExperimentKind::largest_eigenvalue: return "largest_eigenvalue";
    }
    return "?";
}

template <typename T>
T require(const json& j, const char* field) {
    if (!j.contains(field))
        throw parameter_error(std::string("config: missing field /") + field);
    try {
        return j.at(field).get<T>();
    } catch (const json::exception&) {
        throw parameter_error(std::string("config: bad value at /") + field);
    }
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw parameter_error(std::string("config: invalid JSON: ") + e.what());
    }
    ExperimentConfig cfg;
    cfg.experiment = kind_from_name(require<std::string>(j, "experiment"));
    cfg.n = require<std::size_t>(j, "n");
    if (j.contains("p")) cfg.p = j.at("p").get<std::size_t>();
    if (j.contains("t")) cfg.t_exponent = j.at("t").get<double>();
    if (cfg.p == 0 && cfg.t_exponent <= 0.0)
        throw parameter_error("config: missing field /p (or /t)");
    if (j.contains("dist"))
        cfg.dist = distribution_from_name(j.at("dist").get<std::string>());
    if (j.contains("sigma")) {
        const auto& s = j.at("sigma");
        const auto kind = require<std::string>(s, "kind");
        if (kind == "identity") {
            cfg.sigma = SigmaModel::identity();
        } else if (kind == "ar") {
            cfg.sigma = SigmaModel::ar(require<double>(s, "theta"));
        } else if (kind == "equicorrelation") {
            cfg.sigma = SigmaModel::equicorrelation(require<double>(s, "eta"));
        } else {
            throw parameter_error("config: unknown sigma kind at /sigma/kind");
        }
    }
    cfg.replicates = j.value("replicates", std::size_t{1});
    if (cfg.replicates < 1) throw parameter_error("config: /replicates must be >= 1");
    cfg.master_seed = j.value("master_seed", std::uint64_t{0});
    cfg.alpha = j.value("alpha", 0.05);
    if (!(cfg.alpha > 0.0 && cfg.alpha < 1.0))
        throw parameter_error("config: /alpha must be in (0, 1)");
    if (j.contains("monomials")) {
        cfg.monomials = j.at("monomials").get<std::vector<int>>();
        for (int m : cfg.monomials)
            if (m < 2 || m > 4)
                throw parameter_error("config: /monomials entries must be 2, 3 or 4");
    }
    cfg.bins = j.value("bins", std::size_t{0});
    if (cfg.experiment == ExperimentKind::lsd_histogram && cfg.bins != 0 && cfg.bins < 10)
        throw parameter_error("config: /bins must be >= 10 for histogram runs");
    cfg.output_path = j.value("output_path", std::string{});
    cfg.threads = j.value("threads", 0);
    return cfg;
}

std::string ExperimentConfig::to_json_text() const {
    json j;
    j["experiment"] = kind_name(experiment);
    j["n"] = n;
    j["p"] = effective_p();
    j["dist"] = distribution_name(dist);
    switch (sigma.kind) {
        case SigmaModel::Kind::identity: j["sigma"] = {{"kind", "identity"}}; break;
        case SigmaModel::Kind::ar:
            j["sigma"] = {{"kind", "ar"}, {"theta", sigma.parameter}};
            break;
        case SigmaModel::Kind::equicorrelation:
            j["sigma"] = {{"kind", "equicorrelation"}, {"eta", sigma.parameter}};
            break;
    }
    j["replicates"] = replicates;
    j["master_seed"] = master_seed;
    j["alpha"] = alpha;
    j["monomials"] = monomials;
    if (bins) j["bins"] = bins;
    j["output_path"] = output_path;
    j["threads"] = threads;
    return j.dump(2);
}

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("RSC_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return v;
    }
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

namespace {

DataMatrix generate(const ExperimentConfig& cfg, std::size_t replicate, Exec mode) {
    DataMatrix x = sample_iid(cfg.dist, cfg.effective_p(), cfg.n,
                              derive_seed(cfg.master_seed, replicate));
    apply_sigma(x, cfg.sigma, mode);
    return x;
}

// Replicate-parallel map with deterministic gather by index. When there are
// too few replicates to occupy the pool, the kernels parallelize internally
// instead of the replicate loop.
void parallel_replicates(std::size_t count, int threads,
                         const std::function<void(std::size_t, Exec)>& body) {
    const bool outer = count >= 2 * static_cast<std::size_t>(threads) && threads > 1;
    if (!outer) {
        for (std::size_t r = 0; r < count; ++r) body(r, Exec::parallel);
        return;
    }
    std::exception_ptr err;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads)
#endif
    for (std::int64_t r = 0; r < static_cast<std::int64_t>(count); ++r) {
        try {
            body(static_cast<std::size_t>(r), Exec::serial);
        } catch (...) {
#ifdef _OPENMP
#pragma omp critical
#endif
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

double mean_of(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double variance_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / static_cast<double>(v.size() - 1);
}

}  // namespace

SummaryRecord run_lsd_experiment(const ExperimentConfig& cfg) {
    const std::size_t p = cfg.effective_p(), n = cfg.n;
    const int threads = resolve_threads(cfg.threads);
    std::vector<std::vector<double>> spectra(cfg.replicates);
    parallel_replicates(cfg.replicates, threads, [&](std::size_t r, Exec mode) {
        const DataMatrix y = generate(cfg, r, mode);
        spectra[r] = symmetric_eigenvalues(build_renormalized(y, mode));
    });

    SummaryRecord out;
    out.column_names = {"replicate", "lambda_index", "eigenvalue"};
    std::vector<double> pooled;
    pooled.reserve(cfg.replicates * n);
    for (std::size_t r = 0; r < cfg.replicates; ++r)
        for (std::size_t i = 0; i < spectra[r].size(); ++i) {
            out.rows.push_back({static_cast<double>(r), static_cast<double>(i),
                                spectra[r][i]});
            pooled.push_back(spectra[r][i]);
        }
    std::sort(pooled.begin(), pooled.end());

    const double cN = static_cast<double>(p) / static_cast<double>(n - 1);
    const SpectralModel model = SpectralModel::finite(cN);

    // KS distance between the pooled ESD and F^{c_N}
    const double m = static_cast<double>(pooled.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < pooled.size(); ++i) {
        const double F = lsd_cdf(pooled[i], model);
        ks = std::max(ks, std::abs((i + 1) / m - F));
        ks = std::max(ks, std::abs(i / m - F));
    }

    // atom bucket (exact deterministic eigenvalues at -sqrt(c_N) when p < N)
    const double atom_loc = -std::sqrt(cN);
    std::size_t atom_count = 0;
    std::vector<double> continuous;
    continuous.reserve(pooled.size());
    for (double mu : pooled) {
        if (model.has_atom() && std::abs(mu - atom_loc) < 1e-8)
            ++atom_count;
        else
            continuous.push_back(mu);
    }

    // Freedman-Diaconis default bin count over the continuous part
    std::size_t bins = cfg.bins;
    if (bins == 0 && !continuous.empty()) {
        const double q1 = continuous[continuous.size() / 4];
        const double q3 = continuous[(3 * continuous.size()) / 4];
        const double width =
            2.0 * (q3 - q1) / std::cbrt(static_cast<double>(continuous.size()));
        const double span = continuous.back() - continuous.front();
        bins = width > 0.0 ? std::max<std::size_t>(10, std::llround(span / width)) : 40;
    }

    json hist = json::array();
    if (!continuous.empty()) {
        const double lo = continuous.front(), hi = continuous.back();
        const double w = (hi - lo) / static_cast<double>(bins);
        std::vector<std::size_t> counts(bins, 0);
        for (double mu : continuous) {
            auto b = static_cast<std::size_t>((mu - lo) / w);
            if (b >= bins) b = bins - 1;
            ++counts[b];
        }
        for (std::size_t b = 0; b < bins; ++b)
            hist.push_back({{"lo", lo + b * w},
                            {"hi", lo + (b + 1) * w},
                            {"count", counts[b]},
                            {"density", counts[b] / (m * w)}});
    }

    json summary;
    summary["experiment"] = "lsd_histogram";
    summary["n"] = n;
    summary["p"] = p;
    summary["c_N"] = cN;
    summary["replicates"] = cfg.replicates;
    summary["ks_distance"] = ks;
    summary["bins"] = bins;
    summary["histogram"] = hist;
    if (model.has_atom()) {
        summary["atom"] = {{"location", atom_loc},
                           {"theoretical_mass", model.atom_weight()},
                           {"empirical_mass", atom_count / m}};
    }
    out.summary_json = summary.dump(2);
    return out;
}

SummaryRecord run_clt_experiment(const ExperimentConfig& cfg) {
    const std::size_t p = cfg.effective_p(), n = cfg.n;
    const int threads = resolve_threads(cfg.threads);
    const CltContext ctx = CltContext::make(n, p);

    // centering, correction and variance depend only on (n, p, r): hoist
    struct MonomialPlan {
        int degree;
        double centering, correction, variance;
    };
    std::vector<MonomialPlan> plans;
    for (int r : cfg.monomials) {
        const AnalyticFn f = AnalyticFn::monomial(r);
        MonomialPlan pl;
        pl.degree = r;
        pl.centering = lss_center(f, ctx);
        pl.correction = mean_correction(f, ctx);
        const SpectralModel vmodel = (ctx.c_n() <= 1e4)
                                         ? SpectralModel::finite(ctx.c_N())
                                         : SpectralModel::infinite();
        pl.variance = lss_variance(f, f, vmodel);
        plans.push_back(pl);
    }

    const int kmax = *std::max_element(cfg.monomials.begin(), cfg.monomials.end());
    std::vector<std::vector<double>> rows(cfg.replicates);
    parallel_replicates(cfg.replicates, threads, [&](std::size_t r, Exec mode) {
        const DataMatrix y = generate(cfg, r, mode);
        const Matrix b = build_renormalized(y, mode);
        const auto tr = trace_powers(b, kmax, mode);
        std::vector<double> row{static_cast<double>(r)};
        for (const auto& pl : plans) {
            const double raw = tr[pl.degree - 1];
            const double G = raw - pl.centering + pl.correction;
            row.push_back(raw);
            row.push_back(G);
            row.push_back(G / std::sqrt(pl.variance));
        }
        rows[r] = std::move(row);
    });

    SummaryRecord out;
    out.column_names = {"replicate"};
    for (const auto& pl : plans) {
        const std::string suffix = "_x" + std::to_string(pl.degree);
        out.column_names.push_back("raw" + suffix);
        out.column_names.push_back("G" + suffix);
        out.column_names.push_back("standardized" + suffix);
    }
    out.rows = std::move(rows);

    json summary;
    summary["experiment"] = "clt_lss";
    summary["n"] = n;
    summary["p"] = p;
    summary["c_N"] = ctx.c_N();
    summary["dist"] = distribution_name(cfg.dist);
    summary["replicates"] = cfg.replicates;
    json per = json::array();
    for (std::size_t k = 0; k < plans.size(); ++k) {
        std::vector<double> std_vals(cfg.replicates);
        for (std::size_t r = 0; r < cfg.replicates; ++r)
            std_vals[r] = out.rows[r][1 + 3 * k + 2];
        const double mean = mean_of(std_vals);
        const double var = variance_of(std_vals);
        per.push_back({{"monomial", plans[k].degree},
                       {"centering", plans[k].centering},
                       {"correction", plans[k].correction},
                       {"variance", plans[k].variance},
                       {"empirical_mean", mean},
                       {"empirical_variance", var},
                       {"mean_se", std::sqrt(var / static_cast<double>(cfg.replicates))}});
    }
    summary["monomials"] = per;
    out.summary_json = summary.dump(2);
    return out;
}

SummaryRecord run_size_power(const ExperimentConfig& cfg) {
    const std::size_t p = cfg.effective_p(), n = cfg.n;
    const int threads = resolve_threads(cfg.threads);
    const double z_alpha = normal_quantile(1.0 - cfg.alpha);

    std::vector<std::vector<double>> rows(cfg.replicates);
    parallel_replicates(cfg.replicates, threads, [&](std::size_t r, Exec mode) {
        const DataMatrix y = generate(cfg, r, mode);
        const Matrix yt = normalized_columns(y, mode);
        Matrix g;
        kernels::gram(yt, g, mode);
        const double T = statistic_T_from_gram(g, p, mode);
        const double score = 0.5 * (T - static_cast<double>(n) + 2.0);
        rows[r] = {static_cast<double>(r), T, score,
                   score > z_alpha ? 1.0 : 0.0};
    });

    SummaryRecord out;
    out.column_names = {"replicate", "T", "score", "reject"};
    out.rows = std::move(rows);

    std::size_t rejections = 0;
    for (const auto& row : out.rows) rejections += row[3] > 0.5 ? 1 : 0;
    const double rate = static_cast<double>(rejections) / cfg.replicates;
    const double se = std::sqrt(rate * (1.0 - rate) / cfg.replicates);

    json summary;
    summary["experiment"] = "size_power";
    summary["n"] = n;
    summary["p"] = p;
    summary["dist"] = distribution_name(cfg.dist);
    summary["alpha"] = cfg.alpha;
    summary["replicates"] = cfg.replicates;
    summary["rejections"] = rejections;
    summary["rejection_rate"] = rate;
    summary["rate_se"] = se;
    out.summary_json = summary.dump(2);
    return out;
}

SummaryRecord run_largest_eigenvalue(const ExperimentConfig& cfg) {
    const std::size_t p = cfg.effective_p(), n = cfg.n;
    const int threads = resolve_threads(cfg.threads);
    const double cN = static_cast<double>(p) / static_cast<double>(n - 1);
    const double limit = 2.0 + 1.0 / std::sqrt(cN);

    std::vector<std::vector<double>> rows(cfg.replicates);
    parallel_replicates(cfg.replicates, threads, [&](std::size_t r, Exec mode) {
        const DataMatrix y = generate(cfg, r, mode);
        const auto ev = symmetric_eigenvalues(build_renormalized(y, mode));
        rows[r] = {static_cast<double>(r), ev.front(), ev.front() - limit};
    });

    SummaryRecord out;
    out.column_names = {"replicate", "lambda1", "deviation"};
    out.rows = std::move(rows);

    std::vector<double> devs(cfg.replicates);
    for (std::size_t r = 0; r < cfg.replicates; ++r) devs[r] = std::abs(out.rows[r][2]);
    json summary;
    summary["experiment"] = "largest_eigenvalue";
    summary["n"] = n;
    summary["p"] = p;
    summary["c_N"] = cN;
    summary["limit"] = limit;
    summary["replicates"] = cfg.replicates;
    summary["mean_abs_deviation"] = mean_of(devs);
    out.summary_json = summary.dump(2);
    return out;
}

namespace {

void write_rows_csv(const std::string& path, const SummaryRecord& rec) {
    std::ofstream f(path);
    if (!f) throw parameter_error("cannot open output file: " + path);
    f.precision(17);
    for (std::size_t i = 0; i < rec.column_names.size(); ++i) {
        if (i) f << ',';
        f << rec.column_names[i];
    }
    f << '\n';
    for (const auto& row : rec.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) f << ',';
            f << row[i];
        }
        f << '\n';
    }
}

}  // namespace

std::string run_experiment(const ExperimentConfig& cfg) {
    SummaryRecord rec;
    switch (cfg.experiment) {
        case ExperimentKind::lsd_histogram: rec = run_lsd_experiment(cfg); break;
        case ExperimentKind::clt_lss: rec = run_clt_experiment(cfg); break;
        case ExperimentKind::size_power: rec = run_size_power(cfg); break;
        case ExperimentKind::largest_eigenvalue: rec = run_largest_eigenvalue(cfg); break;
    }
    if (!cfg.output_path.empty()) {
        write_rows_csv(cfg.output_path + "_replicates.csv", rec);
        std::ofstream f(cfg.output_path + "_summary.json");
        if (!f) throw parameter_error("cannot open output file: " + cfg.output_path +
                                      "_summary.json");
        f << rec.summary_json << '\n';

        if (cfg.experiment == ExperimentKind::lsd_histogram) {
            // theoretical density/cdf curve over the support, uniform grid
            const double cN =
                static_cast<double>(cfg.effective_p()) / static_cast<double>(cfg.n - 1);
            const SpectralModel model = SpectralModel::finite(cN);
            std::ofstream d(cfg.output_path + "_density.csv");
            d.precision(12);
            d << "x,density,cdf\n";
            const int grid = 401;
            const double L = model.support_left(), R = model.support_right();
            for (int i = 0; i < grid; ++i) {
                const double x = L + (R - L) * i / (grid - 1);
                d << x << ',' << lsd_density(x, model) << ',' << lsd_cdf(x, model)
                  << '\n';
            }
        }
    }
    return rec.summary_json;
}

}  // namespace rsc

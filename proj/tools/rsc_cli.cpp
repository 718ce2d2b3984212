// Command-line front end: law evaluation, eigen analysis, the independence
// test, CLT checks, and the simulation harness.
//
// Exit codes: 0 success, 1 usage/validation error, 2 numeric or data error.
// The decision of the hypothesis test is payload (JSON), never the exit
// status.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "rsc/clt_engine.hpp"
#include "rsc/csv.hpp"
#include "rsc/data_gen.hpp"
#include "rsc/indep_test.hpp"
#include "rsc/matrix_core.hpp"
#include "rsc/sim_harness.hpp"
#include "rsc/spectral_laws.hpp"

using nlohmann::json;

namespace {

rsc::SpectralModel parse_model(const std::string& c_text) {
    if (c_text == "inf" || c_text == "infinity") return rsc::SpectralModel::infinite();
    try {
        const double c = std::stod(c_text);
        return rsc::SpectralModel::finite(c);
    } catch (const std::exception&) {
        throw rsc::parameter_error("--c expects a positive real or 'inf'");
    }
}

int cmd_lsd(const std::string& c_text, int grid, const std::string& out_path) {
    const rsc::SpectralModel model = parse_model(c_text);
    std::ostringstream os;
    os.precision(12);
    os << "x,density,cdf\n";
    const double L = model.support_left(), R = model.support_right();
    const double lo = L - 0.1 * (R - L), hi = R + 0.1 * (R - L);
    for (int i = 0; i < grid; ++i) {
        const double x = grid == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (grid - 1);
        os << x << ',' << rsc::lsd_density(x, model) << ',' << rsc::lsd_cdf(x, model)
           << '\n';
    }
    if (model.has_atom())
        os << "atom," << model.atom_location() << ',' << model.atom_weight() << '\n';
    if (out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out_path);
        if (!f) throw rsc::parameter_error("cannot open output file: " + out_path);
        f << os.str();
    }
    return 0;
}

int cmd_eigen(const std::string& in_path, const std::string& out_path,
              bool skip_header) {
    const rsc::DataMatrix y =
        rsc::DataMatrix::from(rsc::read_csv_matrix_file(in_path, skip_header));
    const rsc::SpectrumResult spec = rsc::spectrum_of(y);
    std::ostringstream os;
    os.precision(17);
    os << "# n=" << spec.n << " p=" << spec.p << " c_n=" << spec.c_n()
       << " c_N=" << spec.c_N() << '\n';
    os << "eigenvalue\n";
    for (double v : spec.eigenvalues) os << v << '\n';
    if (out_path.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(out_path);
        if (!f) throw rsc::parameter_error("cannot open output file: " + out_path);
        f << os.str();
    }
    return 0;
}

int cmd_test(const std::string& in_path, double alpha, bool skip_header) {
    const rsc::DataMatrix y =
        rsc::DataMatrix::from(rsc::read_csv_matrix_file(in_path, skip_header));
    const rsc::TestReport r = rsc::test_independence(y, alpha);
    json j;
    j["T"] = r.T;
    j["score"] = r.score;
    j["p_value"] = r.p_value;
    j["alpha"] = r.alpha;
    j["reject"] = r.reject;
    j["n"] = r.n;
    j["p"] = r.p;
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_clt_check(std::size_t n, std::size_t p, const std::string& fname) {
    int degree = 0;
    if (fname == "x2") degree = 2;
    else if (fname == "x3") degree = 3;
    else if (fname == "x4") degree = 4;
    else throw rsc::parameter_error("--f expects one of x2, x3, x4");

    const rsc::CltContext ctx = rsc::CltContext::make(n, p);
    const rsc::AnalyticFn f = rsc::AnalyticFn::monomial(degree);
    const rsc::SpectralModel vmodel = (ctx.c_n() <= 1e4)
                                          ? rsc::SpectralModel::finite(ctx.c_N())
                                          : rsc::SpectralModel::infinite();
    json j;
    j["n"] = n;
    j["p"] = p;
    j["c_N"] = ctx.c_N();
    j["f"] = fname;
    j["centering"] = rsc::lss_center(f, ctx);
    j["correction"] = rsc::mean_correction(f, ctx);
    j["variance"] = rsc::lss_variance(f, f, vmodel);
    std::cout << j.dump(2) << '\n';
    return 0;
}

int cmd_simulate(const std::string& config_path, int threads) {
    std::ifstream f(config_path);
    if (!f) throw rsc::parameter_error("cannot open config file: " + config_path);
    std::stringstream ss;
    ss << f.rdbuf();
    rsc::ExperimentConfig cfg = rsc::ExperimentConfig::from_json_text(ss.str());
    if (threads > 0) cfg.threads = threads;
    std::cout << rsc::run_experiment(cfg) << '\n';
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"renormalized sample correlation matrix toolkit"};
    app.require_subcommand(1);

    auto* lsd = app.add_subcommand("lsd", "evaluate the limiting spectral law");
    std::string lsd_c = "inf";
    int lsd_grid = 201;
    std::string lsd_out;
    lsd->add_option("--c", lsd_c, "aspect ratio c (positive real or 'inf')");
    lsd->add_option("--grid", lsd_grid, "number of grid points")->check(CLI::PositiveNumber);
    lsd->add_option("--out", lsd_out, "output CSV path (default stdout)");

    auto* eig = app.add_subcommand("eigen", "spectrum of B_n from a CSV data matrix");
    std::string eig_in, eig_out;
    bool eig_header = false;
    eig->add_option("--input", eig_in, "input CSV, p rows x n columns")->required();
    eig->add_option("--out", eig_out, "output CSV path (default stdout)");
    eig->add_flag("--skip-header", eig_header, "skip one header row");

    auto* tst = app.add_subcommand("test", "independence test on a CSV data matrix");
    std::string tst_in;
    double tst_alpha = 0.05;
    bool tst_header = false;
    tst->add_option("--input", tst_in, "input CSV, p rows x n columns")->required();
    tst->add_option("--alpha", tst_alpha, "nominal level in (0, 1)");
    tst->add_flag("--skip-header", tst_header, "skip one header row");

    auto* clt = app.add_subcommand("clt-check", "CLT centering/correction/variance");
    std::size_t clt_n = 0, clt_p = 0;
    std::string clt_f = "x2";
    clt->add_option("--n", clt_n, "sample count")->required();
    clt->add_option("--p", clt_p, "variable count")->required();
    clt->add_option("--f", clt_f, "monomial: x2, x3 or x4");

    auto* sim = app.add_subcommand("simulate", "run a Monte Carlo experiment config");
    std::string sim_cfg;
    int sim_threads = 0;
    sim->add_option("--config", sim_cfg, "experiment config JSON")->required();
    sim->add_option("--threads", sim_threads, "worker thread count");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (lsd->parsed()) return cmd_lsd(lsd_c, lsd_grid, lsd_out);
        if (eig->parsed()) return cmd_eigen(eig_in, eig_out, eig_header);
        if (tst->parsed()) {
            if (!(tst_alpha > 0.0 && tst_alpha < 1.0))
                throw rsc::parameter_error("--alpha must be in (0, 1)");
            return cmd_test(tst_in, tst_alpha, tst_header);
        }
        if (clt->parsed()) return cmd_clt_check(clt_n, clt_p, clt_f);
        if (sim->parsed()) return cmd_simulate(sim_cfg, sim_threads);
    } catch (const rsc::parameter_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const rsc::parse_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const rsc::degenerate_variable_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const rsc::numeric_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 1;
}

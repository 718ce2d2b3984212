#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rsc/data_gen.hpp"
#include "rsc/matrix.hpp"

// Config-driven Monte Carlo experiments: eigenvalue histograms against the
// limiting density, standardized LSS moments, size/power of the
// independence test, and largest-eigenvalue convergence. Replicates are
// parallelized over a thread pool; every replicate derives its own seed
// from (master_seed, index), so per-replicate output is bitwise identical
// for any thread count.

namespace rsc {

enum class ExperimentKind { lsd_histogram, clt_lss, size_power, largest_eigenvalue };

struct ExperimentConfig {
    ExperimentKind experiment = ExperimentKind::size_power;
    std::size_t p = 0;  // 0 when t_exponent drives p = round(n^t)
    std::size_t n = 0;
    double t_exponent = 0.0;  // 0 = unused
    Distribution dist = Distribution::standard_normal;
    SigmaModel sigma = SigmaModel::identity();
    std::size_t replicates = 1;
    std::uint64_t master_seed = 0;
    double alpha = 0.05;
    std::vector<int> monomials = {2, 3, 4};
    std::size_t bins = 0;  // 0 = Freedman-Diaconis
    std::string output_path;
    int threads = 0;  // 0 = library default

    std::size_t effective_p() const;
    static ExperimentConfig from_json_text(const std::string& text);
    std::string to_json_text() const;
};

// Aggregates are always recomputed from the emitted per-replicate rows.
struct SummaryRecord {
    std::vector<std::string> column_names;       // per-replicate columns
    std::vector<std::vector<double>> rows;       // replicates x columns
    std::string summary_json;                    // aggregate record
};

SummaryRecord run_lsd_experiment(const ExperimentConfig& cfg);
SummaryRecord run_clt_experiment(const ExperimentConfig& cfg);
SummaryRecord run_size_power(const ExperimentConfig& cfg);
SummaryRecord run_largest_eigenvalue(const ExperimentConfig& cfg);

// Dispatch on cfg.experiment and write output files (per-replicate CSV,
// summary JSON, histogram/density CSVs for the LSD experiment). Returns the
// summary JSON text.
std::string run_experiment(const ExperimentConfig& cfg);

// Thread-count resolution: explicit value, else RSC_THREADS, else hardware.
int resolve_threads(int requested);

}  // namespace rsc

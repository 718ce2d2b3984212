// Timing comparison of the serial reference kernels against the OpenMP
// versions, plus one end-to-end replicate pipeline at simulation scale.
//
//   ./bench_kernels [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rsc/data_gen.hpp"
#include "rsc/indep_test.hpp"
#include "rsc/kernels.hpp"
#include "rsc/matrix_core.hpp"

using namespace rsc;
using kernels::Exec;
using clock_type = std::chrono::steady_clock;

namespace {

double time_ms(const std::function<void()>& fn, int repeats) {
    // one warmup, then best-of-repeats
    fn();
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto t0 = clock_type::now();
        fn();
        const auto t1 = clock_type::now();
        best = std::min(best,
                        std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return best;
}

void row(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-28s %10.2f ms %10.2f ms %8.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
    const int repeats = argc > 1 ? std::atoi(argv[1]) : 3;
#ifdef _OPENMP
    std::printf("threads: %d\n", omp_get_max_threads());
#endif
    std::printf("%-28s %13s %13s %9s\n", "kernel", "serial", "openmp", "speedup");

    const DataMatrix y = sample_iid(Distribution::standard_normal, 4000, 500, 42);

    Matrix norm_s, norm_p;
    row("center_normalize 4000x500",
        time_ms([&] { kernels::center_normalize_rows(y.values, norm_s, Exec::serial); },
                repeats),
        time_ms([&] { kernels::center_normalize_rows(y.values, norm_p, Exec::parallel); },
                repeats));

    Matrix yt;
    kernels::transpose(norm_s, yt, Exec::serial);
    Matrix gram_s, gram_p;
    row("gram 500x4000",
        time_ms([&] { kernels::gram(yt, gram_s, Exec::serial); }, repeats),
        time_ms([&] { kernels::gram(yt, gram_p, Exec::parallel); }, repeats));

    Matrix mm_s, mm_p;
    row("matmul 500x500",
        time_ms([&] { kernels::matmul(gram_s, gram_s, mm_s, Exec::serial); }, repeats),
        time_ms([&] { kernels::matmul(gram_s, gram_s, mm_p, Exec::parallel); }, repeats));

    DataMatrix ar_s = y, ar_p = y;
    row("ar1 transform 4000x500",
        time_ms([&] { kernels::ar1_rows_inplace(ar_s.values, 0.25, Exec::serial); },
                repeats),
        time_ms([&] { kernels::ar1_rows_inplace(ar_p.values, 0.25, Exec::parallel); },
                repeats));

    DataMatrix eq_s = y, eq_p = y;
    row("equicorr transform 4000x500",
        time_ms([&] { kernels::equicorr_rows_inplace(eq_s.values, 0.9, 0.3, Exec::serial); },
                repeats),
        time_ms([&] { kernels::equicorr_rows_inplace(eq_p.values, 0.9, 0.3, Exec::parallel); },
                repeats));

    const Matrix b = build_renormalized(y);
    row("trace_powers kmax=4 (n=500)",
        time_ms([&] { trace_powers(b, 4, Exec::serial); }, repeats),
        time_ms([&] { trace_powers(b, 4, Exec::parallel); }, repeats));

    // one full test-statistic replicate at the Table 2 dimensions
    auto replicate = [&](Exec mode) {
        DataMatrix x = sample_iid(Distribution::standard_normal, 2500, 50, 7);
        apply_sigma_ar(x, 0.20, mode);
        const Matrix ytn = normalized_columns(x, mode);
        Matrix g;
        kernels::gram(ytn, g, mode);
        volatile double t = statistic_T_from_gram(g, 2500, mode);
        (void)t;
    };
    row("replicate (p,n)=(2500,50)",
        time_ms([&] { replicate(Exec::serial); }, repeats),
        time_ms([&] { replicate(Exec::parallel); }, repeats));

    return 0;
}

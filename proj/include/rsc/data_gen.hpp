#pragma once

#include <cstdint>
#include <string>

#include "rsc/kernels.hpp"
#include "rsc/matrix.hpp"

// Seeded generation of Y = Sigma^{1/2} X for the simulation designs:
// i.i.d. entries from one of five distributions, then an optional AR(1)
// (theta^{|i-j|}) or equicorrelation covariance applied across variables.
// Everything is built on a splitmix64 stream so replicates are exactly
// reproducible from (master seed, replicate index) on any platform with
// IEEE doubles.

namespace rsc {

enum class Distribution {
    standard_normal,
    exponential_rate2,
    poisson_mean1,
    chi_square_2,       // raw chi^2(2): mean 2, variance 4
    chi_square_2_std,   // (chi^2(2) - 2)/2: mean 0, variance 1
};

Distribution distribution_from_name(const std::string& name);
std::string distribution_name(Distribution d);
// (mean, variance) of the distribution, for generator sanity checks.
std::pair<double, double> distribution_moments(Distribution d);

struct SigmaModel {
    enum class Kind { identity, ar, equicorrelation } kind = Kind::identity;
    double parameter = 0.0;  // theta for ar (|theta| < 1), eta for equi (0 < eta < 1)

    static SigmaModel identity() { return {}; }
    static SigmaModel ar(double theta);
    static SigmaModel equicorrelation(double eta);
};

// splitmix64: state walks by the golden-ratio increment, output is the
// variant-13 finalizer. Small, fast, and bit-stable across platforms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double next_unit();     // (0, 1), 53-bit
    double next_normal();   // polar method, exact rejection
    double next_exponential(double rate);
    std::uint64_t next_poisson_mean1();
    double draw(Distribution d);

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Deterministic per-replicate seed: a bijective mix of the master seed and
// the index, so distinct indices can never collide for a fixed master.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate_index);

// p x n matrix of i.i.d. draws. Row-major fill order, single stream.
DataMatrix sample_iid(Distribution d, std::size_t p, std::size_t n,
                      std::uint64_t seed);

// Causal square root of the AR(1) correlation: z_1 = x_1,
// z_i = theta z_{i-1} + sqrt(1 - theta^2) x_i down the variable index.
void apply_sigma_ar(DataMatrix& x, double theta,
                    kernels::Exec mode = kernels::Exec::parallel);

// Exact square root a I + (b/p) J of the equicorrelation matrix,
// a = sqrt(1 - eta), b = sqrt(1 - eta + p eta) - a.
void apply_sigma_equi(DataMatrix& x, double eta,
                      kernels::Exec mode = kernels::Exec::parallel);

void apply_sigma(DataMatrix& x, const SigmaModel& sigma,
                 kernels::Exec mode = kernels::Exec::parallel);

}  // namespace rsc

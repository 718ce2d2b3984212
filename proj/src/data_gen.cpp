#include "rsc/data_gen.hpp"

#include <cmath>

namespace rsc {

namespace {

inline std::uint64_t mix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

}  // namespace

Distribution distribution_from_name(const std::string& name) {
    if (name == "standard_normal") return Distribution::standard_normal;
    if (name == "exponential") return Distribution::exponential_rate2;
    if (name == "poisson") return Distribution::poisson_mean1;
    if (name == "chi_square_2") return Distribution::chi_square_2;
    if (name == "chi_square_2_std") return Distribution::chi_square_2_std;
    throw parameter_error("unknown distribution: " + name);
}

std::string distribution_name(Distribution d) {
    switch (d) {
        case Distribution::standard_normal: return "standard_normal";
        case Distribution::exponential_rate2: return "exponential";
        case Distribution::poisson_mean1: return "poisson";
        case Distribution::chi_square_2: return "chi_square_2";
        case Distribution::chi_square_2_std: return "chi_square_2_std";
    }
    throw parameter_error("unknown distribution enum");
}

std::pair<double, double> distribution_moments(Distribution d) {
    switch (d) {
        case Distribution::standard_normal: return {0.0, 1.0};
        case Distribution::exponential_rate2: return {0.5, 0.25};
        case Distribution::poisson_mean1: return {1.0, 1.0};
        case Distribution::chi_square_2: return {2.0, 4.0};
        case Distribution::chi_square_2_std: return {0.0, 1.0};
    }
    throw parameter_error("unknown distribution enum");
}

SigmaModel SigmaModel::ar(double theta) {
    if (!(std::abs(theta) < 1.0))
        throw parameter_error("SigmaModel::ar requires |theta| < 1");
    return {Kind::ar, theta};
}

SigmaModel SigmaModel::equicorrelation(double eta) {
    if (!(eta > 0.0 && eta < 1.0))
        throw parameter_error("SigmaModel::equicorrelation requires 0 < eta < 1");
    return {Kind::equicorrelation, eta};
}

std::uint64_t Rng::next_u64() {
    state_ += kGolden;
    return mix64(state_);
}

double Rng::next_unit() {
    // 53-bit mantissa in (0, 1); zero is remapped to keep log() safe
    const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    return u > 0.0 ? u : 0x1.0p-53;
}

double Rng::next_normal() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u, v, s;
    do {
        u = 2.0 * next_unit() - 1.0;
        v = 2.0 * next_unit() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double m = std::sqrt(-2.0 * std::log(s) / s);
    spare_ = v * m;
    have_spare_ = true;
    return u * m;
}

double Rng::next_exponential(double rate) { return -std::log(next_unit()) / rate; }

std::uint64_t Rng::next_poisson_mean1() {
    // inversion; mean 1 so the walk terminates after a handful of steps
    static const double e_inv = std::exp(-1.0);
    const double u = next_unit();
    double cum = e_inv, pk = e_inv;
    std::uint64_t k = 0;
    while (u > cum && k < 64) {
        ++k;
        pk /= static_cast<double>(k);
        cum += pk;
    }
    return k;
}

double Rng::draw(Distribution d) {
    switch (d) {
        case Distribution::standard_normal: return next_normal();
        case Distribution::exponential_rate2: return next_exponential(2.0);
        case Distribution::poisson_mean1:
            return static_cast<double>(next_poisson_mean1());
        case Distribution::chi_square_2: return 2.0 * next_exponential(1.0);
        case Distribution::chi_square_2_std: return next_exponential(1.0) - 1.0;
    }
    throw parameter_error("unknown distribution enum");
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t replicate_index) {
    return mix64(master ^ ((replicate_index + 0x632BE59BD9B4E019ULL) * kGolden));
}

DataMatrix sample_iid(Distribution d, std::size_t p, std::size_t n,
                      std::uint64_t seed) {
    Matrix m(p, n);
    Rng rng(seed);
    double* out = m.data();
    const std::size_t total = p * n;
    for (std::size_t i = 0; i < total; ++i) out[i] = rng.draw(d);
    return DataMatrix::from(std::move(m));
}

void apply_sigma_ar(DataMatrix& x, double theta, kernels::Exec mode) {
    if (!(std::abs(theta) < 1.0))
        throw parameter_error("apply_sigma_ar requires |theta| < 1");
    kernels::ar1_rows_inplace(x.values, theta, mode);
}

void apply_sigma_equi(DataMatrix& x, double eta, kernels::Exec mode) {
    if (!(eta > 0.0 && eta < 1.0))
        throw parameter_error("apply_sigma_equi requires 0 < eta < 1");
    const double p = static_cast<double>(x.p());
    const double a = std::sqrt(1.0 - eta);
    const double b = std::sqrt(1.0 - eta + p * eta) - a;
    kernels::equicorr_rows_inplace(x.values, a, b, mode);
}

void apply_sigma(DataMatrix& x, const SigmaModel& sigma, kernels::Exec mode) {
    switch (sigma.kind) {
        case SigmaModel::Kind::identity: return;
        case SigmaModel::Kind::ar: apply_sigma_ar(x, sigma.parameter, mode); return;
        case SigmaModel::Kind::equicorrelation:
            apply_sigma_equi(x, sigma.parameter, mode);
            return;
    }
}

}  // namespace rsc

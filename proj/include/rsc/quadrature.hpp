#pragma once

#include <functional>
#include <vector>

namespace rsc::quad {

// Gauss-Legendre nodes/weights on [-1, 1]; cached per order.
struct GaussLegendre {
    std::vector<double> x;
    std::vector<double> w;
};
const GaussLegendre& gauss_legendre(int order);

// Integrate f on [a, b] with Gauss-Legendre node doubling (64 -> 2048 per
// panel) until two successive refinements differ by less than
// rel_tol * (1 + |I|). Throws numeric_error on non-convergence.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rel_tol = 1e-11);

}  // namespace rsc::quad

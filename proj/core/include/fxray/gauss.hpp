#pragma once

#include <cstddef>
#include <vector>

namespace fxray {

/// Gauss-Legendre rule on [-1, 1]. Nodes/weights are computed once per
/// order by Newton iteration on the Legendre polynomial and cached.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

const GaussRule& gauss_legendre(std::size_t n);

/// Integrate fn over [a, b] with an n-point Gauss-Legendre rule.
template <typename Fn>
double gauss_integrate(const Fn& fn, double a, double b, std::size_t n) {
    const GaussRule& rule = gauss_legendre(n);
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        sum += rule.weights[i] * fn(mid + half * rule.nodes[i]);
    return half * sum;
}

} // namespace fxray

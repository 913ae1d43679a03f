#pragma once

#include <cstddef>
#include <vector>

namespace fxray {

/// C2 cubic spline through (x_i, y_i). Natural end conditions by default;
/// the periodic variant identifies y[0] with the sample at x[n-1]+dx and
/// requires strictly increasing x covering one period.
class CubicSpline {
public:
    CubicSpline() = default;
    static CubicSpline natural(std::vector<double> x, std::vector<double> y);
    static CubicSpline periodic(std::vector<double> x, std::vector<double> y, double period);

    double value(double x) const;
    double deriv(double x) const;
    double deriv2(double x) const;

    bool empty() const { return x_.empty(); }
    const std::vector<double>& knots() const { return x_; }
    const std::vector<double>& values() const { return y_; }
    const std::vector<double>& second_derivs() const { return m_; }

private:
    std::vector<double> x_, y_, m_; // m_ = second derivatives at knots
    bool periodic_ = false;
    double period_ = 0.0;

    std::size_t segment(double& x) const;
};

/// Local 4-point Lagrange interpolation on a uniform grid y_j = f(a + j*h).
/// Cheap and accurate enough (O(h^4)) for dense kernel-row tables.
double cubic_uniform(const std::vector<double>& y, double a, double h, double x);

/// Weights of the cubic Lagrange stencil used to interpolate at x on the
/// (possibly non-uniform) node list. The stencil is the 4 nodes around x,
/// clipped one-sidedly at the ends; writes node indices and weights.
void cubic_stencil(const std::vector<double>& nodes, double x,
                   std::size_t idx[4], double w[4]);

} // namespace fxray

#pragma once

#include <functional>
#include <vector>

#include "fxray/geodesic.hpp"
#include "fxray/herglotz.hpp"

namespace fxray {

/// One row of the geodesic Abel kernel: K(r0, r) = sqrt(r - r0) / rdot and
/// the angular advance omega(r0, r), tabulated on the uniform-in-u grid
/// u = sqrt(r - r0) delivered by the trace resampling. K is smooth in u up
/// to the diagonal, where K(r0, r0) = 1/sqrt(2 a(r0)).
struct AbelKernelRow {
    double r0 = 0.0;
    double a = 0.0;
    double u_max = 0.0;
    std::vector<double> u;
    std::vector<double> K;
    std::vector<double> omega;

    double K_at_u(double uq) const;
    double omega_at_u(double uq) const;
    double K_at(double r) const;
    double omega_at(double r) const;
};

AbelKernelRow kernel_from_trace(const GeodesicRecord& rec, const TurningAcceleration& acc);

/// Generalized singular transform I_K^alpha h(x) = int_x^b (y-x)^(-alpha)
/// K(x,y) h(y) dy, evaluated after the regularizing substitution
/// u = (y-x)^(1-alpha) by Gauss-Legendre with doubled-order acceptance.
double forward_general(const std::function<double(double, double)>& kernel, double alpha,
                       const std::function<double(double)>& h, double x, double b = 1.0,
                       double tol = 1e-9);

/// Product-integration discretization of the mode-k Abel transform
/// A_k h(x) = int_x^1 (y-x)^(-1/2) K(x,y) cos(k w(x,y)) h(y) dy on a fixed
/// radial grid. Rows exist for interior grid points; in descending-x
/// ordering the matrix is lower triangular (entries for y < x vanish).
struct AbelOperator {
    int k = 0;
    double alpha = 0.5;
    std::vector<double> grid;              // ascending, grid.front() = R, grid.back() = 1
    std::vector<std::size_t> row_points;   // indices into grid with data rows
    std::vector<double> matrix;            // row-major, row_points.size() x grid.size()

    std::size_t rows() const { return row_points.size(); }
    std::size_t cols() const { return grid.size(); }
    double entry(std::size_t i, std::size_t j) const { return matrix[i * cols() + j]; }
};

struct QuadOptions {
    std::size_t gauss_points = 16;
    double tol = 1e-9; // acceptance for the doubled-order row check
};

/// Builds A_k for every k in 0..k_max in one pass over the shared kernel
/// geometry (K, omega and the interpolation stencils are k-independent).
std::vector<AbelOperator> build_operators(const std::vector<AbelKernelRow>& rows,
                                          const std::vector<double>& grid, int k_max,
                                          const QuadOptions& opts = {});

AbelOperator discretize(const std::vector<AbelKernelRow>& rows,
                        const std::vector<double>& grid, int k,
                        const QuadOptions& opts = {});

std::vector<double> apply_operator(const AbelOperator& op, const std::vector<double>& h);

/// Tikhonov-regularized solve of M a = data with a second-difference
/// smoothing seminorm: min |M a - d|^2 + lambda |D a|^2.
std::vector<double> invert(const AbelOperator& op, const std::vector<double>& data,
                           double lambda);

/// Picks lambda by the discrepancy principle: the largest lambda whose
/// residual norm does not exceed noise_norm (bisection on log lambda).
std::vector<double> invert_discrepancy(const AbelOperator& op, const std::vector<double>& data,
                                       double noise_norm, double* lambda_out = nullptr);

/// Spectral-norm estimate of the operator matrix (power iteration);
/// the default regularization scale is 1e-8 * norm^2.
double operator_norm(const AbelOperator& op);
double default_lambda(const AbelOperator& op);

} // namespace fxray

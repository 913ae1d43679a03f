#include "fxray/abel.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

#include "fxray/error.hpp"
#include "fxray/gauss.hpp"
#include "fxray/interp.hpp"
#include "fxray/parallel.hpp"

namespace fxray {

double AbelKernelRow::K_at_u(double uq) const {
    return cubic_uniform(K, 0.0, u[1] - u[0], std::clamp(uq, 0.0, u_max));
}

double AbelKernelRow::omega_at_u(double uq) const {
    return cubic_uniform(omega, 0.0, u[1] - u[0], std::clamp(uq, 0.0, u_max));
}

double AbelKernelRow::K_at(double r) const { return K_at_u(std::sqrt(std::max(0.0, r - r0))); }

double AbelKernelRow::omega_at(double r) const {
    return omega_at_u(std::sqrt(std::max(0.0, r - r0)));
}

AbelKernelRow kernel_from_trace(const GeodesicRecord& rec, const TurningAcceleration& acc) {
    AbelKernelRow row;
    row.r0 = rec.r0;
    row.a = acc.a;
    row.u_max = std::sqrt(1.0 - rec.r0);
    const std::size_t n = rec.samples.size();
    row.u.resize(n);
    row.K.resize(n);
    row.omega.resize(n);
    const double diag = 1.0 / std::sqrt(2.0 * acc.a);
    for (std::size_t j = 0; j < n; ++j) {
        const BranchSample& s = rec.samples[j];
        double dr = s.r - rec.r0;
        row.u[j] = std::sqrt(std::max(0.0, dr));
        row.omega[j] = s.omega;
        if (dr < 1e-6) {
            // The ODE samples cannot resolve the square-root branch point;
            // use rdot = sqrt(2 a (r - r0)) there, i.e. K = 1/sqrt(2a).
            row.K[j] = diag;
        } else {
            if (!(s.rdot > 0.0))
                raise(Errc::DegenerateTrace, "rdot vanishes off the diagonal at r=" +
                                                 std::to_string(s.r));
            row.K[j] = row.u[j] / s.rdot;
        }
    }
    return row;
}

double forward_general(const std::function<double(double, double)>& kernel, double alpha,
                       const std::function<double(double)>& h, double x, double b, double tol) {
    if (!(alpha >= 0.0 && alpha < 1.0))
        raise(Errc::OutOfDomain, "alpha must lie in [0,1)");
    if (x >= b) return 0.0;
    const double p = 1.0 / (1.0 - alpha);
    const double u_hi = std::pow(b - x, 1.0 - alpha);
    auto integrand = [&](double u) {
        double y = x + std::pow(u, p);
        return p * kernel(x, y) * h(y);
    };
    double prev = gauss_integrate(integrand, 0.0, u_hi, 16);
    for (std::size_t n = 32; n <= 4096; n *= 2) {
        double cur = gauss_integrate(integrand, 0.0, u_hi, n);
        if (std::abs(cur - prev) <= tol * std::max(std::abs(cur), 1e-12)) return cur;
        prev = cur;
    }
    raise(Errc::QuadratureNoConverge, "singular quadrature failed to settle at x=" +
                                          std::to_string(x));
}

namespace {

struct RowGeometry {
    std::size_t grid_index = 0;
    // Per Gauss node: weight (including the substitution factor and K),
    // omega value, and the 4-point interpolation stencil for h.
    std::vector<double> weight_K;
    std::vector<double> omega;
    std::vector<std::array<std::size_t, 4>> stencil_idx;
    std::vector<std::array<double, 4>> stencil_w;
};

RowGeometry assemble_row(const AbelKernelRow& row, const std::vector<double>& grid,
                         std::size_t gi, std::size_t gauss_points) {
    RowGeometry geom;
    geom.grid_index = gi;
    const std::size_t n = grid.size();
    const double x = grid[gi];
    const GaussRule& rule = gauss_legendre(gauss_points);

    std::vector<double> sub(grid.begin() + static_cast<std::ptrdiff_t>(gi), grid.end());
    for (std::size_t c = gi; c + 1 < n; ++c) {
        double ua = std::sqrt(grid[c] - x);
        double ub = std::sqrt(grid[c + 1] - x);
        double mid = 0.5 * (ua + ub), half = 0.5 * (ub - ua);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            double u = mid + half * rule.nodes[q];
            double y = x + u * u;
            double w = 2.0 * half * rule.weights[q] * row.K_at_u(u);
            std::size_t idx[4];
            double lw[4];
            cubic_stencil(sub, y, idx, lw);
            geom.weight_K.push_back(w);
            geom.omega.push_back(row.omega_at_u(u));
            geom.stencil_idx.push_back({idx[0] + gi, idx[1] + gi, idx[2] + gi, idx[3] + gi});
            geom.stencil_w.push_back({lw[0], lw[1], lw[2], lw[3]});
        }
    }
    return geom;
}

void accumulate_row(const RowGeometry& geom, int k, double* out_row) {
    for (std::size_t q = 0; q < geom.weight_K.size(); ++q) {
        double w = geom.weight_K[q] * std::cos(static_cast<double>(k) * geom.omega[q]);
        for (int s = 0; s < 4; ++s)
            out_row[geom.stencil_idx[q][s]] += w * geom.stencil_w[q][s];
    }
}

} // namespace

std::vector<AbelOperator> build_operators(const std::vector<AbelKernelRow>& rows,
                                          const std::vector<double>& grid, int k_max,
                                          const QuadOptions& opts) {
    const std::size_t n = grid.size();
    if (n < 8) raise(Errc::GridMismatch, "radial grid too small");
    for (const AbelKernelRow& row : rows) {
        auto it = std::lower_bound(grid.begin(), grid.end(), row.r0 - 1e-10);
        if (it == grid.end() || std::abs(*it - row.r0) > 1e-10)
            raise(Errc::GridMismatch, "kernel row at r0=" + std::to_string(row.r0) +
                                          " is not a grid node");
    }

    std::vector<std::size_t> grid_index(rows.size());
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
        auto it = std::lower_bound(grid.begin(), grid.end(), rows[ri].r0 - 1e-10);
        grid_index[ri] = static_cast<std::size_t>(it - grid.begin());
    }

    std::vector<AbelOperator> ops(static_cast<std::size_t>(k_max) + 1);
    for (int k = 0; k <= k_max; ++k) {
        ops[static_cast<std::size_t>(k)].k = k;
        ops[static_cast<std::size_t>(k)].grid = grid;
        ops[static_cast<std::size_t>(k)].row_points = grid_index;
        ops[static_cast<std::size_t>(k)].matrix.assign(rows.size() * n, 0.0);
    }

    // Rows are independent and land in disjoint matrix slices.
    parallel_for(rows.size(), [&](std::size_t ri) {
        const AbelKernelRow& row = rows[ri];
        std::size_t gi = grid_index[ri];

        // Oscillation guard: the per-cell phase advance of cos(k w) must
        // stay resolvable by the cell rule.
        std::size_t gauss_points = opts.gauss_points;
        if (k_max > 0) {
            double max_cell_domega = 0.0;
            for (std::size_t c = gi; c + 1 < n; ++c)
                max_cell_domega = std::max(
                    max_cell_domega, std::abs(row.omega_at(grid[c + 1]) - row.omega_at(grid[c])));
            if (static_cast<double>(k_max) * max_cell_domega > M_PI / 4.0)
                gauss_points = std::max<std::size_t>(gauss_points, 32);
        }

        RowGeometry coarse = assemble_row(row, grid, gi, gauss_points / 2);
        RowGeometry fine = assemble_row(row, grid, gi, gauss_points);

        // Doubled-order acceptance on the k = 0 row action.
        std::vector<double> wc(n, 0.0), wf(n, 0.0);
        accumulate_row(coarse, 0, wc.data());
        accumulate_row(fine, 0, wf.data());
        double diff = 0.0, scale = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            diff = std::max(diff, std::abs(wc[j] - wf[j]));
            scale = std::max(scale, std::abs(wf[j]));
        }
        if (diff > opts.tol * std::max(scale, 1e-12)) {
            fine = assemble_row(row, grid, gi, 2 * gauss_points);
            std::fill(wf.begin(), wf.end(), 0.0);
            accumulate_row(fine, 0, wf.data());
        }

        for (int k = 0; k <= k_max; ++k) {
            AbelOperator& op = ops[static_cast<std::size_t>(k)];
            if (k == 0) {
                std::copy(wf.begin(), wf.end(),
                          op.matrix.begin() + static_cast<std::ptrdiff_t>(ri * n));
            } else {
                accumulate_row(fine, k, op.matrix.data() + ri * n);
            }
        }
    });
    return ops;
}

AbelOperator discretize(const std::vector<AbelKernelRow>& rows, const std::vector<double>& grid,
                        int k, const QuadOptions& opts) {
    std::vector<AbelOperator> ops = build_operators(rows, grid, std::abs(k), opts);
    AbelOperator op = std::move(ops[static_cast<std::size_t>(std::abs(k))]);
    op.k = k; // cos(k w) is even in k
    return op;
}

std::vector<double> apply_operator(const AbelOperator& op, const std::vector<double>& h) {
    if (h.size() != op.cols()) raise(Errc::GridMismatch, "apply: length mismatch");
    std::vector<double> out(op.rows(), 0.0);
    for (std::size_t i = 0; i < op.rows(); ++i) {
        double acc = 0.0;
        const double* row = op.matrix.data() + i * op.cols();
        for (std::size_t j = 0; j < op.cols(); ++j) acc += row[j] * h[j];
        out[i] = acc;
    }
    return out;
}

namespace {

Eigen::MatrixXd second_difference(std::size_t n) {
    Eigen::MatrixXd D = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n - 2),
                                              static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i + 2 < n; ++i) {
        D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
        D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 1)) = -2.0;
        D(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i + 2)) = 1.0;
    }
    return D;
}

std::vector<double> solve_tikhonov(const AbelOperator& op, const std::vector<double>& data,
                                   double lambda, double* residual_out) {
    const std::size_t m = op.rows(), n = op.cols();
    if (data.size() != m) raise(Errc::GridMismatch, "invert: data length mismatch");
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> M(
        op.matrix.data(), static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    Eigen::Map<const Eigen::VectorXd> d(data.data(), static_cast<Eigen::Index>(m));

    Eigen::MatrixXd D = second_difference(n);
    Eigen::MatrixXd A = M.transpose() * M + lambda * D.transpose() * D;
    Eigen::VectorXd rhs = M.transpose() * d;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(A);
    if (ldlt.info() != Eigen::Success)
        raise(Errc::SolveFailure, "normal equations not factorizable");
    Eigen::VectorXd a = ldlt.solve(rhs);
    if (!a.allFinite()) raise(Errc::SolveFailure, "regularized solve produced non-finite values");
    if (residual_out) *residual_out = (M * a - d).norm();
    return std::vector<double>(a.data(), a.data() + n);
}

} // namespace

std::vector<double> invert(const AbelOperator& op, const std::vector<double>& data,
                           double lambda) {
    return solve_tikhonov(op, data, lambda, nullptr);
}

std::vector<double> invert_discrepancy(const AbelOperator& op, const std::vector<double>& data,
                                       double noise_norm, double* lambda_out) {
    double lo = -16.0, hi = 4.0; // log10 lambda
    double resid = 0.0;
    std::vector<double> sol = solve_tikhonov(op, data, std::pow(10.0, lo), &resid);
    if (resid >= noise_norm) {
        if (lambda_out) *lambda_out = std::pow(10.0, lo);
        return sol;
    }
    for (int iter = 0; iter < 60; ++iter) {
        double mid = 0.5 * (lo + hi);
        sol = solve_tikhonov(op, data, std::pow(10.0, mid), &resid);
        if (resid < noise_norm)
            lo = mid;
        else
            hi = mid;
    }
    double lambda = std::pow(10.0, lo);
    if (lambda_out) *lambda_out = lambda;
    return solve_tikhonov(op, data, lambda, nullptr);
}

double operator_norm(const AbelOperator& op) {
    const std::size_t m = op.rows(), n = op.cols();
    Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>> M(
        op.matrix.data(), static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    Eigen::VectorXd v = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
    v.normalize();
    double norm2 = 0.0;
    for (int iter = 0; iter < 50; ++iter) {
        Eigen::VectorXd w = M.transpose() * (M * v);
        norm2 = w.norm();
        if (norm2 == 0.0) return 0.0;
        v = w / norm2;
    }
    return std::sqrt(norm2);
}

double default_lambda(const AbelOperator& op) {
    double nrm = operator_norm(op);
    return 1e-8 * nrm * nrm;
}

} // namespace fxray

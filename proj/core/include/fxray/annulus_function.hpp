#pragma once

#include <complex>
#include <vector>

#include "fxray/interp.hpp"

namespace fxray {

/// Scalar field on the annulus stored as angular Fourier coefficients
/// a_k(r) on a radial grid, f(r, theta) = sum_k a_k(r) e^{i k theta}.
/// For real fields a_{-k} = conj(a_k) is enforced structurally: only
/// k >= 0 is stored and negative modes are mirrored on access.
class AnnulusFunction {
public:
    AnnulusFunction() = default;
    AnnulusFunction(int k_max, std::vector<double> r_grid, bool real_valued);

    int k_max() const { return k_max_; }
    bool real_valued() const { return real_; }
    const std::vector<double>& grid() const { return grid_; }

    /// Sets a_k on the grid; for real fields k must be >= 0 (the mirror
    /// mode follows by conjugate symmetry).
    void set_mode(int k, std::vector<std::complex<double>> values);
    std::vector<std::complex<double>> mode(int k) const;

    /// Spline-interpolated coefficient a_k(r).
    std::complex<double> coeff(int k, double r) const;

    std::complex<double> synthesize(double r, double theta) const;
    double synthesize_real(double r, double theta) const;

    /// Weighted L2(M) norm: sqrt(2 pi sum_k int |a_k|^2 r dr), trapezoidal
    /// in r on the grid.
    double l2_norm() const;

private:
    int k_max_ = 0;
    bool real_ = true;
    std::vector<double> grid_;
    // index 0..k_max for real fields; k_max_ + 1 + (k + k_max) layout for
    // complex fields with k in [-k_max, k_max]
    std::vector<std::vector<std::complex<double>>> modes_;
    std::vector<CubicSpline> spline_re_, spline_im_;
    std::size_t slot(int k) const;
    void rebuild_spline(std::size_t s);
};

/// Discrete angular Fourier analysis of samples f(r_i, theta_j) on a
/// uniform theta grid (theta_j = 2 pi j / n_theta), per radius.
/// alias_warning is set when the top mode |k| = k_max carries more than
/// 1% of the total energy.
AnnulusFunction decompose(const std::vector<double>& samples, const std::vector<double>& r_grid,
                          std::size_t n_theta, int k_max, bool real_valued,
                          bool* alias_warning = nullptr);

} // namespace fxray

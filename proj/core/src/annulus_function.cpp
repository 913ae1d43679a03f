#include "fxray/annulus_function.hpp"

#include <cmath>

#include "fxray/error.hpp"

namespace fxray {

AnnulusFunction::AnnulusFunction(int k_max, std::vector<double> r_grid, bool real_valued)
    : k_max_(k_max), real_(real_valued), grid_(std::move(r_grid)) {
    if (k_max_ < 0) raise(Errc::ConfigError, "k_max must be >= 0");
    std::size_t n_slots = real_ ? static_cast<std::size_t>(k_max_) + 1
                                : 2 * static_cast<std::size_t>(k_max_) + 1;
    modes_.assign(n_slots, std::vector<std::complex<double>>(grid_.size(), 0.0));
    spline_re_.resize(n_slots);
    spline_im_.resize(n_slots);
    for (std::size_t s = 0; s < n_slots; ++s) rebuild_spline(s);
}

std::size_t AnnulusFunction::slot(int k) const {
    if (real_) return static_cast<std::size_t>(k);
    return static_cast<std::size_t>(k + k_max_);
}

void AnnulusFunction::rebuild_spline(std::size_t s) {
    std::vector<double> re(grid_.size()), im(grid_.size());
    for (std::size_t i = 0; i < grid_.size(); ++i) {
        re[i] = modes_[s][i].real();
        im[i] = modes_[s][i].imag();
    }
    spline_re_[s] = CubicSpline::natural(grid_, re);
    spline_im_[s] = CubicSpline::natural(grid_, im);
}

void AnnulusFunction::set_mode(int k, std::vector<std::complex<double>> values) {
    if (std::abs(k) > k_max_) raise(Errc::GridMismatch, "mode index beyond k_max");
    if (real_ && k < 0)
        raise(Errc::GridMismatch, "negative modes of a real field are conjugate-implied");
    if (values.size() != grid_.size()) raise(Errc::GridMismatch, "mode length mismatch");
    std::size_t s = slot(k);
    modes_[s] = std::move(values);
    rebuild_spline(s);
}

std::vector<std::complex<double>> AnnulusFunction::mode(int k) const {
    if (std::abs(k) > k_max_) raise(Errc::GridMismatch, "mode index beyond k_max");
    if (real_ && k < 0) {
        std::vector<std::complex<double>> out = modes_[slot(-k)];
        for (auto& v : out) v = std::conj(v);
        return out;
    }
    return modes_[slot(k)];
}

std::complex<double> AnnulusFunction::coeff(int k, double r) const {
    if (std::abs(k) > k_max_) return 0.0;
    if (real_ && k < 0) return std::conj(coeff(-k, r));
    std::size_t s = slot(k);
    return {spline_re_[s].value(r), spline_im_[s].value(r)};
}

std::complex<double> AnnulusFunction::synthesize(double r, double theta) const {
    std::complex<double> rot = std::exp(std::complex<double>(0.0, theta));
    std::complex<double> acc = coeff(0, r);
    std::complex<double> ek(1.0, 0.0);
    for (int k = 1; k <= k_max_; ++k) {
        ek *= rot;
        std::complex<double> ak = coeff(k, r);
        if (real_) {
            acc += 2.0 * (ak * ek).real();
        } else {
            acc += ak * ek + coeff(-k, r) * std::conj(ek);
        }
    }
    return acc;
}

double AnnulusFunction::synthesize_real(double r, double theta) const {
    return synthesize(r, theta).real();
}

double AnnulusFunction::l2_norm() const {
    double acc = 0.0;
    auto add_mode = [&](int k) {
        double mode_acc = 0.0;
        for (std::size_t i = 0; i + 1 < grid_.size(); ++i) {
            double w0 = std::norm(coeff(k, grid_[i])) * grid_[i];
            double w1 = std::norm(coeff(k, grid_[i + 1])) * grid_[i + 1];
            mode_acc += 0.5 * (w0 + w1) * (grid_[i + 1] - grid_[i]);
        }
        acc += mode_acc;
    };
    for (int k = -k_max_; k <= k_max_; ++k) add_mode(k);
    return std::sqrt(2.0 * M_PI * acc);
}

AnnulusFunction decompose(const std::vector<double>& samples, const std::vector<double>& r_grid,
                          std::size_t n_theta, int k_max, bool real_valued,
                          bool* alias_warning) {
    if (n_theta < 2 * static_cast<std::size_t>(k_max) + 2)
        raise(Errc::GridMismatch, "theta grid must have at least 2 k_max + 2 points");
    if (samples.size() != r_grid.size() * n_theta)
        raise(Errc::GridMismatch, "sample layout must be n_r x n_theta row-major");

    AnnulusFunction f(k_max, r_grid, real_valued);
    double total_energy = 0.0, top_energy = 0.0;

    int k_lo = real_valued ? 0 : -k_max;
    for (int k = k_lo; k <= k_max; ++k) {
        std::vector<std::complex<double>> a(r_grid.size());
        for (std::size_t i = 0; i < r_grid.size(); ++i) {
            std::complex<double> acc = 0.0;
            for (std::size_t j = 0; j < n_theta; ++j) {
                double theta = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n_theta);
                acc += samples[i * n_theta + j] *
                       std::exp(std::complex<double>(0.0, -k * theta));
            }
            a[i] = acc / static_cast<double>(n_theta);
            double e = std::norm(a[i]) * (real_valued && k > 0 ? 2.0 : 1.0);
            total_energy += e;
            if (std::abs(k) == k_max && k_max > 0) top_energy += e;
        }
        f.set_mode(k, std::move(a));
    }
    if (alias_warning)
        *alias_warning = k_max > 0 && top_energy > 0.01 * std::max(total_energy, 1e-300);
    return f;
}

} // namespace fxray

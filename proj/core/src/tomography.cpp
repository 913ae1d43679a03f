#include "fxray/tomography.hpp"

#include <cmath>

#include "fxray/error.hpp"
#include "fxray/parallel.hpp"

namespace fxray {

double forward_direct(const NormSpec& spec, const AnnulusFunction& f, double r0, double theta0,
                      const TraceOptions& opts) {
    GeodesicRecord rec = trace_tangential(spec, r0, 0.0, opts);
    auto g = [&](double, const OdeState& s) {
        return f.synthesize_real(s.r, theta0 + s.theta) +
               f.synthesize_real(s.r, theta0 - s.theta);
    };
    return integrate_along(rec, g);
}

double forward_abel_ray(const NormSpec& spec, const AnnulusFunction& f, double r0, double theta0,
                        const TraceOptions& opts, double quad_tol) {
    GeodesicRecord rec = trace_tangential(spec, r0, 0.0, opts);
    AbelKernelRow row = kernel_from_trace(rec, turning_acceleration(spec, r0));

    double total = 0.0;
    for (int k = 0; k <= f.k_max(); ++k) {
        auto kernel = [&](double, double y) {
            return row.K_at(y) * std::cos(static_cast<double>(k) * row.omega_at(y));
        };
        double d_re = 2.0 * forward_general(
                                kernel, 0.5, [&](double y) { return f.coeff(k, y).real(); },
                                r0, 1.0, quad_tol);
        double d_im = 2.0 * forward_general(
                                kernel, 0.5, [&](double y) { return f.coeff(k, y).imag(); },
                                r0, 1.0, quad_tol);
        std::complex<double> d(d_re, d_im);
        std::complex<double> ph = std::exp(std::complex<double>(0.0, k * theta0));
        if (k == 0)
            total += (d * ph).real();
        else if (f.real_valued())
            total += 2.0 * (d * ph).real();
        else {
            std::complex<double> dm_re(2.0 * forward_general(
                                           kernel, 0.5,
                                           [&](double y) { return f.coeff(-k, y).real(); }, r0,
                                           1.0, quad_tol),
                                       2.0 * forward_general(
                                           kernel, 0.5,
                                           [&](double y) { return f.coeff(-k, y).imag(); }, r0,
                                           1.0, quad_tol));
            total += (d * ph + dm_re * std::conj(ph)).real();
        }
    }
    return total;
}

TomographyPipeline::TomographyPipeline(NormSpec spec, PipelineOptions opts)
    : spec_(std::move(spec)), opts_(opts) {
    const double R = spec_.inner_radius();
    if (opts_.n_r < 8) raise(Errc::ConfigError, "pipeline needs n_r >= 8");
    if (opts_.n_theta < 2 * static_cast<std::size_t>(opts_.k_max) + 2)
        raise(Errc::ConfigError, "pipeline needs n_theta >= 2 k_max + 2");

    grid_.resize(opts_.n_r);
    for (std::size_t i = 0; i < opts_.n_r; ++i)
        grid_[i] = R + (1.0 - R) * static_cast<double>(i) / static_cast<double>(opts_.n_r - 1);
    grid_.back() = 1.0;
    r0_grid_.assign(grid_.begin() + 1, grid_.end() - 1);

    theta0_grid_.resize(opts_.n_theta);
    for (std::size_t j = 0; j < opts_.n_theta; ++j)
        theta0_grid_[j] = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(opts_.n_theta);

    records_.resize(r0_grid_.size());
    rows_.resize(r0_grid_.size());
    parallel_for(r0_grid_.size(), [&](std::size_t i) {
        records_[i] = trace_tangential(spec_, r0_grid_[i], 0.0, opts_.trace);
        rows_[i] = kernel_from_trace(records_[i], turning_acceleration(spec_, r0_grid_[i]));
    });

    ops_ = build_operators(rows_, grid_, opts_.k_max, opts_.quad);
}

const AbelOperator& TomographyPipeline::op(int k) const {
    std::size_t kk = static_cast<std::size_t>(std::abs(k));
    if (kk >= ops_.size()) raise(Errc::GridMismatch, "operator mode beyond k_max");
    return ops_[kk];
}

Sinogram TomographyPipeline::forward_direct_grid(const AnnulusFunction& f) const {
    Sinogram sino;
    sino.r0 = r0_grid_;
    sino.theta0 = theta0_grid_;
    sino.values.assign(sino.r0.size() * sino.theta0.size(), 0.0);

    parallel_for(r0_grid_.size(), [&](std::size_t i) {
        const GeodesicRecord& rec = records_[i];
        std::vector<std::complex<double>> d(static_cast<std::size_t>(f.k_max()) + 1);
        for (int k = 0; k <= f.k_max(); ++k) {
            double re = integrate_along(rec, [&](double, const OdeState& s) {
                return f.coeff(k, s.r).real() * std::cos(k * s.theta);
            });
            double im = integrate_along(rec, [&](double, const OdeState& s) {
                return f.coeff(k, s.r).imag() * std::cos(k * s.theta);
            });
            d[static_cast<std::size_t>(k)] = 2.0 * std::complex<double>(re, im);
        }
        for (std::size_t j = 0; j < theta0_grid_.size(); ++j) {
            std::complex<double> rot = std::exp(std::complex<double>(0.0, theta0_grid_[j]));
            std::complex<double> ek(1.0, 0.0);
            double acc = d[0].real();
            for (int k = 1; k <= f.k_max(); ++k) {
                ek *= rot;
                acc += 2.0 * (d[static_cast<std::size_t>(k)] * ek).real();
            }
            sino.at(i, j) = acc;
        }
    });
    return sino;
}

Sinogram TomographyPipeline::forward_abel(const AnnulusFunction& f) const {
    if (f.grid().size() != grid_.size())
        raise(Errc::GridMismatch, "field grid does not match the operator grid");
    for (std::size_t i = 0; i < grid_.size(); ++i)
        if (std::abs(f.grid()[i] - grid_[i]) > 1e-10)
            raise(Errc::GridMismatch, "field grid does not match the operator grid");

    Sinogram sino;
    sino.r0 = r0_grid_;
    sino.theta0 = theta0_grid_;
    sino.values.assign(sino.r0.size() * sino.theta0.size(), 0.0);

    int k_hi = std::min(f.k_max(), opts_.k_max);
    std::vector<std::vector<std::complex<double>>> d(static_cast<std::size_t>(k_hi) + 1);
    for (int k = 0; k <= k_hi; ++k) {
        std::vector<double> re(grid_.size()), im(grid_.size());
        for (std::size_t j = 0; j < grid_.size(); ++j) {
            std::complex<double> a = f.coeff(k, grid_[j]);
            re[j] = a.real();
            im[j] = a.imag();
        }
        std::vector<double> dre = apply_operator(op(k), re);
        std::vector<double> dim = apply_operator(op(k), im);
        d[static_cast<std::size_t>(k)].resize(r0_grid_.size());
        for (std::size_t i = 0; i < r0_grid_.size(); ++i)
            d[static_cast<std::size_t>(k)][i] = 2.0 * std::complex<double>(dre[i], dim[i]);
    }

    for (std::size_t i = 0; i < r0_grid_.size(); ++i) {
        for (std::size_t j = 0; j < theta0_grid_.size(); ++j) {
            std::complex<double> rot = std::exp(std::complex<double>(0.0, theta0_grid_[j]));
            std::complex<double> ek(1.0, 0.0);
            double acc = d[0][i].real();
            for (int k = 1; k <= k_hi; ++k) {
                ek *= rot;
                acc += 2.0 * (d[static_cast<std::size_t>(k)][i] * ek).real();
            }
            sino.at(i, j) = acc;
        }
    }
    return sino;
}

AnnulusFunction TomographyPipeline::reconstruct(const Sinogram& data, double lambda) const {
    if (data.r0.size() != r0_grid_.size())
        raise(Errc::GridMismatch, "sinogram r0 grid does not match the pipeline");
    for (std::size_t i = 0; i < r0_grid_.size(); ++i)
        if (std::abs(data.r0[i] - r0_grid_[i]) > 1e-10)
            raise(Errc::GridMismatch, "sinogram r0 grid does not match the pipeline");
    const std::size_t n_theta = data.theta0.size();
    if (n_theta < 2 * static_cast<std::size_t>(opts_.k_max) + 2)
        raise(Errc::GridMismatch, "sinogram theta0 grid too coarse for k_max");

    AnnulusFunction out(opts_.k_max, grid_, true);
    std::vector<int> ks(static_cast<std::size_t>(opts_.k_max) + 1);
    for (int k = 0; k <= opts_.k_max; ++k) ks[static_cast<std::size_t>(k)] = k;

    std::vector<std::vector<std::complex<double>>> modes(ks.size());
    parallel_for(ks.size(), [&](std::size_t ki) {
        int k = ks[ki];
        std::vector<double> dre(r0_grid_.size()), dim(r0_grid_.size());
        for (std::size_t i = 0; i < r0_grid_.size(); ++i) {
            std::complex<double> acc = 0.0;
            for (std::size_t j = 0; j < n_theta; ++j)
                acc += data.at(i, j) * std::exp(std::complex<double>(0.0, -k * data.theta0[j]));
            acc /= static_cast<double>(n_theta);
            dre[i] = 0.5 * acc.real(); // A_k a_k = d_k / 2
            dim[i] = 0.5 * acc.imag();
        }
        std::vector<double> are = invert(op(k), dre, lambda);
        std::vector<double> aim = invert(op(k), dim, lambda);
        std::vector<std::complex<double>> a(grid_.size());
        for (std::size_t j = 0; j < grid_.size(); ++j) a[j] = {are[j], aim[j]};
        modes[ki] = std::move(a);
    });
    for (std::size_t ki = 0; ki < ks.size(); ++ki) out.set_mode(ks[ki], std::move(modes[ki]));
    return out;
}

std::vector<std::vector<std::complex<double>>> sinogram_modes(const Sinogram& sino, int k_max) {
    const std::size_t n_theta = sino.theta0.size();
    if (n_theta < 2 * static_cast<std::size_t>(k_max) + 2)
        raise(Errc::GridMismatch, "theta0 grid too coarse for the requested modes");
    std::vector<std::vector<std::complex<double>>> out(2 * static_cast<std::size_t>(k_max) + 1);
    for (int k = -k_max; k <= k_max; ++k) {
        std::vector<std::complex<double>>& d = out[static_cast<std::size_t>(k + k_max)];
        d.resize(sino.r0.size());
        for (std::size_t i = 0; i < sino.r0.size(); ++i) {
            std::complex<double> acc = 0.0;
            for (std::size_t j = 0; j < n_theta; ++j)
                acc += sino.at(i, j) * std::exp(std::complex<double>(0.0, -k * sino.theta0[j]));
            d[i] = acc / static_cast<double>(n_theta);
        }
    }
    return out;
}

double relative_l2_error(const AnnulusFunction& approx, const AnnulusFunction& truth) {
    const std::vector<double>& g = truth.grid();
    int k_hi = std::max(approx.k_max(), truth.k_max());
    double num = 0.0, den = 0.0;
    for (int k = -k_hi; k <= k_hi; ++k) {
        for (std::size_t i = 0; i + 1 < g.size(); ++i) {
            auto term = [&](double r) {
                double d = std::abs(approx.coeff(k, r) - truth.coeff(k, r));
                double t = std::abs(truth.coeff(k, r));
                return std::pair<double, double>(d * d * r, t * t * r);
            };
            auto [d0, t0] = term(g[i]);
            auto [d1, t1] = term(g[i + 1]);
            num += 0.5 * (d0 + d1) * (g[i + 1] - g[i]);
            den += 0.5 * (t0 + t1) * (g[i + 1] - g[i]);
        }
    }
    return std::sqrt(num / std::max(den, 1e-300));
}

} // namespace fxray

#pragma once

#include <memory>
#include <vector>

#include "fxray/abel.hpp"
#include "fxray/annulus_function.hpp"
#include "fxray/geodesic.hpp"
#include "fxray/norm_spec.hpp"

namespace fxray {

/// Ray-transform data indexed by the geodesic's lowest point (r0, theta0).
struct Sinogram {
    std::vector<double> r0;
    std::vector<double> theta0;
    std::vector<double> values; // row-major r0 x theta0

    double at(std::size_t i, std::size_t j) const { return values[i * theta0.size() + j]; }
    double& at(std::size_t i, std::size_t j) { return values[i * theta0.size() + j]; }
};

struct PipelineOptions {
    std::size_t n_r = 256;
    std::size_t n_theta = 64;
    int k_max = 16;
    TraceOptions trace;
    QuadOptions quad;
};

/// Line integral of f over the tangential geodesic with lowest point
/// (r0, theta0), computed along a fresh trace with the trace's own
/// adaptive time quadrature.
double forward_direct(const NormSpec& spec, const AnnulusFunction& f, double r0, double theta0,
                      const TraceOptions& opts = {});

/// The same ray integral evaluated through the angular-Fourier reduction:
/// If = sum_k 2 (A_k a_k)(r0) e^{i k theta0}, with each A_k a_k computed by
/// the singular quadrature against this ray's kernel row. Independent of
/// the product-integration matrices.
double forward_abel_ray(const NormSpec& spec, const AnnulusFunction& f, double r0, double theta0,
                        const TraceOptions& opts = {}, double quad_tol = 1e-9);

/// Builds and owns the per-spec tomography machinery: tangential traces
/// and kernel rows on the interior radial grid, and the discretized Abel
/// operators for modes 0..k_max (cos(k w) is even in k, so negative modes
/// share them).
class TomographyPipeline {
public:
    TomographyPipeline(NormSpec spec, PipelineOptions opts);

    const NormSpec& spec() const { return spec_; }
    const PipelineOptions& options() const { return opts_; }
    const std::vector<double>& grid() const { return grid_; }
    const std::vector<double>& r0_grid() const { return r0_grid_; }
    const std::vector<double>& theta0_grid() const { return theta0_grid_; }
    const AbelOperator& op(int k) const;
    const GeodesicRecord& record(std::size_t i) const { return records_[i]; }
    const AbelKernelRow& kernel_row(std::size_t i) const { return rows_[i]; }

    /// Sinogram on the tensor grid by direct per-mode time quadrature
    /// along the stored traces (no Abel reduction involved).
    Sinogram forward_direct_grid(const AnnulusFunction& f) const;

    /// Sinogram through the discretized operators: d_k = 2 A_k a_k.
    Sinogram forward_abel(const AnnulusFunction& f) const;

    /// theta0-Fourier analysis, per-mode regularized Abel inversion of
    /// d_k / 2, and resynthesis.
    AnnulusFunction reconstruct(const Sinogram& data, double lambda) const;

private:
    NormSpec spec_;
    PipelineOptions opts_;
    std::vector<double> grid_, r0_grid_, theta0_grid_;
    std::vector<GeodesicRecord> records_;
    std::vector<AbelKernelRow> rows_;
    std::vector<AbelOperator> ops_;
};

/// Relative weighted-L2 distance between two fields on the annulus.
double relative_l2_error(const AnnulusFunction& approx, const AnnulusFunction& truth);

/// theta0-Fourier analysis of the sinogram: d_k(r0_i) for k in
/// [-k_max, k_max], indexed [k + k_max][i]. Real data satisfies
/// d_{-k} = conj(d_k).
std::vector<std::vector<std::complex<double>>> sinogram_modes(const Sinogram& sino, int k_max);

} // namespace fxray

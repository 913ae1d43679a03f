#pragma once

#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "fxray/fiber.hpp"
#include "fxray/jet.hpp"
#include "fxray/radial_profile.hpp"

namespace fxray {

namespace detail {
class NormModel;
}

/// A spherically symmetric Finsler norm F(r, rho, phi) on the annulus
/// r in [R, 1]. Value semantics; the underlying family model is immutable
/// and shared, so copies are cheap and evaluation is thread-safe.
///
/// Families:
///  - radial_riemannian:  F = sqrt(rho^2 + r^2 phi^2) / c(r)
///  - anisotropic_speed:  F = sqrt(rho^2 + r^2 phi^2) / c(r, rho, phi) with
///        c = sum_k e_k(r) * v^k,   v = phi^2 / (rho^2 + r^2 phi^2),
///    which is reversible and fiber-homogeneous of degree zero.
///  - tabulated_fiber:    F stored on the unit fiber circle and extended by
///        homogeneity, bicubic-spline interpolated in (r, fiber angle).
///  - conformal_scaled:   F_s = (1 + s w(r)) * F_base.
///  - elastic_derived:    Legendre transform of the qP co-norm of a radial
///        stiffness profile (built by build_slice_norm in elastic.hpp).
class NormSpec {
public:
    NormSpec() = default;

    static NormSpec radial_riemannian(double R, RadialProfile c);
    static NormSpec euclidean(double R) { return radial_riemannian(R, RadialProfile::constant(1.0)); }
    static NormSpec anisotropic_speed(double R, std::vector<RadialProfile> terms);
    /// values are row-major (n_r rows of n_psi samples) of F on the unit
    /// Euclidean fiber circle, psi_j = 2 pi j / n_psi.
    static NormSpec tabulated_fiber(double R, std::vector<double> r_grid,
                                    std::size_t n_psi, std::vector<double> values);
    static NormSpec conformal_scaled(NormSpec base, RadialProfile w, double s);
    /// Escape hatch for tests and experiments: F^2 given as a callable.
    /// Not serializable.
    static NormSpec from_function(double R, std::function<double(double, double, double)> f2,
                                  std::string label, bool reversible);
    /// Internal factory used by the elastic module.
    static NormSpec from_model(double R, std::shared_ptr<const detail::NormModel> model);

    /// Sample this norm on the unit fiber circle and return a
    /// tabulated_fiber spec (useful to trace geodesics of families that
    /// only evaluate through an optimization).
    NormSpec tabulate(std::size_t n_r, std::size_t n_psi) const;

    double inner_radius() const { return R_; }
    std::string family() const;
    bool reversible() const;

    /// F(r, rho, phi). Raises OutOfDomain for r outside [R, 1] and
    /// NonPositiveSpeed if the family's speed profile is <= 0 at the query.
    double norm(double r, double rho, double phi) const;
    double norm(const FiberPoint& p) const { return norm(p.r, p.rho, p.phi); }
    double norm_squared(double r, double rho, double phi) const;

    /// Unchecked evaluation used by integrator internals; tolerates small
    /// domain overshoot during stepping.
    double norm_squared_unchecked(double r, double rho, double phi) const;

    /// True when the family carries closed-form first/second derivatives
    /// of F^2 in (r, rho, phi).
    bool has_analytic_derivatives() const;
    Jet3 norm_squared_jet(double r, double rho, double phi) const;

    std::string to_json_string(int indent = -1) const;
    static NormSpec from_json_string(std::string_view text);

    bool valid() const { return static_cast<bool>(model_); }

private:
    double R_ = 0.0;
    std::shared_ptr<const detail::NormModel> model_;
};

} // namespace fxray

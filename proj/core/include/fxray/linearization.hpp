#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fxray/geodesic.hpp"
#include "fxray/norm_spec.hpp"
#include "fxray/radial_profile.hpp"

namespace fxray {

/// Function on the sphere bundle, evaluated at unit-speed fibers.
struct SphereBundleFunction {
    enum class Kind { General, Quadratic2Tensor, GeneratedPotential };
    Kind kind = Kind::General;
    std::function<double(double r, double theta, double rho, double phi)> eval;

    static SphereBundleFunction scalar(std::function<double(double, double)> f);
    /// h(x, y) = h_ij(x) y^i y^j with symmetric coefficients (h11, h12, h22)
    /// in the polar coordinate basis.
    static SphereBundleFunction quadratic(
        std::function<std::array<double, 3>(double, double)> h_ij);
    static SphereBundleFunction general(
        std::function<double(double, double, double, double)> fn);
};

/// Length 2T of the tangential geodesic whose boundary endpoints are
/// separated by delta_theta. This is a critical value of the length
/// functional, not a certified global minimum (conjugate points are
/// allowed in this geometry).
double boundary_distance(const NormSpec& spec, double delta_theta,
                         const TraceOptions& opts = {});

/// Integral of h over the full (mirrored) tangential geodesic in the
/// sphere bundle.
double sphere_bundle_transform(const NormSpec& spec, const SphereBundleFunction& h,
                               const GeodesicRecord& record);

/// For u vanishing on the boundary sphere bundle, I_SM(Xu) telescopes to
/// zero along every geodesic; returns the worst sampled |I_SM(Xu)|.
/// X u is computed by central differencing of u along the geodesic flow.
/// Raises BoundaryNonVanishing when u fails its boundary precondition.
double check_potential_vanishing(const NormSpec& spec,
                                 const std::function<double(double, double, double, double)>& u,
                                 const std::vector<double>& r0_samples,
                                 const TraceOptions& opts = {},
                                 double boundary_tol = 1e-9);

struct LinearizationRow {
    double delta_theta = 0.0;
    double s_step = 0.0;
    double lhs = 0.0; // central difference of the boundary distance in s
    double rhs = 0.0; // geodesic ray transform of f along the base geodesic
    double rel_err = 0.0;
};

struct LinearizationReport {
    std::vector<LinearizationRow> rows;
    double max_rel_err = 0.0;
    std::string to_json_string(int indent = -1) const;
};

/// First variation of boundary distances under the conformal family
/// F_s = (1 + s f(r)) F0, compared against the scalar ray transform of f
/// along the unperturbed geodesic. The endpoint separation delta_theta is
/// held fixed and the turning radius is re-shot for every s.
LinearizationReport verify_conformal_linearization(const NormSpec& F0, const RadialProfile& f,
                                                   const std::vector<double>& s_steps,
                                                   const std::vector<double>& delta_thetas,
                                                   const TraceOptions& opts = {});

} // namespace fxray

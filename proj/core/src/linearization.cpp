#include "fxray/linearization.hpp"

#include <cmath>

#include "fxray/error.hpp"
#include "fxray/finsler.hpp"
#include "fxray/herglotz.hpp"
#include "json_util.hpp"

namespace fxray {

SphereBundleFunction SphereBundleFunction::scalar(std::function<double(double, double)> f) {
    SphereBundleFunction h;
    h.kind = Kind::General;
    h.eval = [f = std::move(f)](double r, double theta, double, double) { return f(r, theta); };
    return h;
}

SphereBundleFunction SphereBundleFunction::quadratic(
    std::function<std::array<double, 3>(double, double)> h_ij) {
    SphereBundleFunction h;
    h.kind = Kind::Quadratic2Tensor;
    h.eval = [h_ij = std::move(h_ij)](double r, double theta, double rho, double phi) {
        std::array<double, 3> c = h_ij(r, theta);
        return c[0] * rho * rho + 2.0 * c[1] * rho * phi + c[2] * phi * phi;
    };
    return h;
}

SphereBundleFunction SphereBundleFunction::general(
    std::function<double(double, double, double, double)> fn) {
    SphereBundleFunction h;
    h.kind = Kind::General;
    h.eval = std::move(fn);
    return h;
}

double boundary_distance(const NormSpec& spec, double delta_theta, const TraceOptions& opts) {
    return shoot_boundary_geodesic(spec, delta_theta, opts).length;
}

double sphere_bundle_transform(const NormSpec& spec, const SphereBundleFunction& h,
                               const GeodesicRecord& record) {
    (void)spec;
    double theta0 = record.theta0;
    auto g = [&](double, const OdeState& s) {
        // Mirror image of the rising branch: (r, theta0 - w, -rdot, thetadot).
        return h.eval(s.r, theta0 + s.theta, s.rdot, s.thetadot) +
               h.eval(s.r, theta0 - s.theta, -s.rdot, s.thetadot);
    };
    return integrate_along(record, g);
}

namespace {

// Derivative of u along the geodesic flow by a symmetric two-sided RK4
// microstep of the flow itself.
double flow_derivative(const NormSpec& spec,
                       const std::function<double(double, double, double, double)>& u,
                       const OdeState& s, double theta_shift, double delta) {
    auto rhs = [&](const OdeState& y) {
        SprayCoefficients G = spray_coefficients(spec, {y.r, y.rdot, y.thetadot});
        return OdeState{y.rdot, y.thetadot, -2.0 * G.G1, -2.0 * G.G2};
    };
    auto rk4 = [&](OdeState y, double h) {
        OdeState k1 = rhs(y);
        OdeState y2{y.r + 0.5 * h * k1.r, y.theta + 0.5 * h * k1.theta,
                    y.rdot + 0.5 * h * k1.rdot, y.thetadot + 0.5 * h * k1.thetadot};
        OdeState k2 = rhs(y2);
        OdeState y3{y.r + 0.5 * h * k2.r, y.theta + 0.5 * h * k2.theta,
                    y.rdot + 0.5 * h * k2.rdot, y.thetadot + 0.5 * h * k2.thetadot};
        OdeState k3 = rhs(y3);
        OdeState y4{y.r + h * k3.r, y.theta + h * k3.theta, y.rdot + h * k3.rdot,
                    y.thetadot + h * k3.thetadot};
        OdeState k4 = rhs(y4);
        return OdeState{y.r + h / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r),
                        y.theta + h / 6.0 * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta),
                        y.rdot + h / 6.0 * (k1.rdot + 2.0 * k2.rdot + 2.0 * k3.rdot + k4.rdot),
                        y.thetadot +
                            h / 6.0 * (k1.thetadot + 2.0 * k2.thetadot + 2.0 * k3.thetadot +
                                       k4.thetadot)};
    };
    OdeState fwd = rk4(s, delta);
    OdeState bwd = rk4(s, -delta);
    double up = u(fwd.r, theta_shift + fwd.theta, fwd.rdot, fwd.thetadot);
    double um = u(bwd.r, theta_shift + bwd.theta, bwd.rdot, bwd.thetadot);
    return (up - um) / (2.0 * delta);
}

} // namespace

double check_potential_vanishing(const NormSpec& spec,
                                 const std::function<double(double, double, double, double)>& u,
                                 const std::vector<double>& r0_samples, const TraceOptions& opts,
                                 double boundary_tol) {
    // Boundary precondition: u = 0 on fibers over r = 1.
    double worst_boundary = 0.0;
    for (int j = 0; j < 32; ++j) {
        double psi = 2.0 * M_PI * j / 32.0;
        double rho = std::cos(psi), phi = std::sin(psi);
        double F = spec.norm(1.0, rho, phi);
        for (double theta : {0.0, 1.3, 2.9})
            worst_boundary = std::max(worst_boundary, std::abs(u(1.0, theta, rho / F, phi / F)));
    }
    if (worst_boundary > boundary_tol)
        raise(Errc::BoundaryNonVanishing,
              "u is " + std::to_string(worst_boundary) + " on the boundary sphere bundle");

    const double delta = 1e-5;
    double worst = 0.0;
    for (double r0 : r0_samples) {
        GeodesicRecord rec = trace_tangential(spec, r0, 0.0, opts);
        SphereBundleFunction xu = SphereBundleFunction::general(
            [&](double r, double theta, double rho, double phi) {
                return flow_derivative(spec, u, {r, theta, rho, phi}, 0.0, delta);
            });
        worst = std::max(worst, std::abs(sphere_bundle_transform(spec, xu, rec)));
    }
    return worst;
}

LinearizationReport verify_conformal_linearization(const NormSpec& F0, const RadialProfile& f,
                                                   const std::vector<double>& s_steps,
                                                   const std::vector<double>& delta_thetas,
                                                   const TraceOptions& opts) {
    LinearizationReport rep;
    for (double dth : delta_thetas) {
        ShootResult base = shoot_boundary_geodesic(F0, dth, opts);
        double If = integrate_along(base.record,
                                    [&](double, const OdeState& s) { return 2.0 * f.value(s.r); });
        for (double s : s_steps) {
            auto distance_at = [&](double sv) {
                NormSpec Fs = NormSpec::conformal_scaled(F0, f, sv);
                HerglotzReport h = check_herglotz(Fs, 64);
                if (!h.pass)
                    raise(Errc::HerglotzViolated,
                          "conformal factor at s=" + std::to_string(sv) +
                              " breaks the Herglotz condition (margin " +
                              std::to_string(h.min_margin) + ")");
                return boundary_distance(Fs, dth, opts);
            };
            LinearizationRow row;
            row.delta_theta = dth;
            row.s_step = s;
            row.lhs = (distance_at(s) - distance_at(-s)) / (2.0 * s);
            row.rhs = If;
            row.rel_err = std::abs(row.lhs - row.rhs) / std::max(std::abs(row.rhs), 1e-300);
            rep.max_rel_err = std::max(rep.max_rel_err, row.rel_err);
            rep.rows.push_back(row);
        }
    }
    return rep;
}

std::string LinearizationReport::to_json_string(int indent) const {
    detail::json arr = detail::json::array();
    for (const LinearizationRow& row : rows)
        arr.push_back({{"delta_theta", row.delta_theta},
                       {"s_step", row.s_step},
                       {"lhs", row.lhs},
                       {"rhs", row.rhs},
                       {"rel_err", row.rel_err}});
    detail::json j;
    j["rows"] = std::move(arr);
    j["max_rel_err"] = max_rel_err;
    return j.dump(indent);
}

} // namespace fxray

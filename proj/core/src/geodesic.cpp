#include "fxray/geodesic.hpp"

#include <algorithm>
#include <cmath>

#include "fxray/error.hpp"
#include "fxray/finsler.hpp"
#include "fxray/gauss.hpp"

namespace fxray {

namespace {

OdeState rhs(const NormSpec& spec, const OdeState& y) {
    SprayCoefficients G = spray_coefficients(spec, {y.r, y.rdot, y.thetadot});
    return {y.rdot, y.thetadot, -2.0 * G.G1, -2.0 * G.G2};
}

OdeState axpy(const OdeState& y, double h, const OdeState& k) {
    return {y.r + h * k.r, y.theta + h * k.theta, y.rdot + h * k.rdot,
            y.thetadot + h * k.thetadot};
}

double comp(const OdeState& s, int i) {
    switch (i) {
        case 0: return s.r;
        case 1: return s.theta;
        case 2: return s.rdot;
        default: return s.thetadot;
    }
}

// Cubic Hermite dense output between two accepted nodes.
OdeState hermite_state(const PathNode& A, const PathNode& B, double t) {
    double h = B.t - A.t;
    double tau = (t - A.t) / h;
    double h00 = (1.0 + 2.0 * tau) * (1.0 - tau) * (1.0 - tau);
    double h10 = tau * (1.0 - tau) * (1.0 - tau);
    double h01 = tau * tau * (3.0 - 2.0 * tau);
    double h11 = tau * tau * (tau - 1.0);
    OdeState s;
    s.r = h00 * A.y.r + h10 * h * A.dy.r + h01 * B.y.r + h11 * h * B.dy.r;
    s.theta = h00 * A.y.theta + h10 * h * A.dy.theta + h01 * B.y.theta + h11 * h * B.dy.theta;
    s.rdot = h00 * A.y.rdot + h10 * h * A.dy.rdot + h01 * B.y.rdot + h11 * h * B.dy.rdot;
    s.thetadot =
        h00 * A.y.thetadot + h10 * h * A.dy.thetadot + h01 * B.y.thetadot + h11 * h * B.dy.thetadot;
    return s;
}

// Localize r(t) = level inside (A, B] by bisection on the Hermite dense
// output; the window is shrunk to 1e-12 in t.
double locate_radius_crossing(const PathNode& A, const PathNode& B, double level) {
    double lo = A.t, hi = B.t;
    double flo = A.y.r - level;
    for (int iter = 0; iter < 100 && hi - lo > 1e-12; ++iter) {
        double mid = 0.5 * (lo + hi);
        double fm = hermite_state(A, B, mid).r - level;
        if ((flo <= 0.0) == (fm <= 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Dormand-Prince 5(4) Butcher tableau.
constexpr double A21 = 1.0 / 5;
constexpr double A31 = 3.0 / 40, A32 = 9.0 / 40;
constexpr double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
constexpr double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
                 A54 = -212.0 / 729;
constexpr double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
                 A65 = -5103.0 / 18656;
constexpr double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
                 B6 = 11.0 / 84;
constexpr double E1 = 71.0 / 57600, E3 = -71.0 / 16695, E4 = 71.0 / 1920,
                 E5 = -17253.0 / 339200, E6 = 22.0 / 525, E7 = -1.0 / 40;

} // namespace

Trajectory integrate_geodesic(const NormSpec& spec, const OdeState& initial, double t0,
                              const OdeOptions& opts) {
    Trajectory traj;
    const double R = spec.inner_radius();

    double t = t0;
    OdeState y = initial;
    OdeState k1 = rhs(spec, y);
    traj.nodes.push_back({t, y, k1});

    double h = std::min(opts.h_init, opts.h_max);
    std::size_t steps = 0;

    while (t - t0 < opts.t_max) {
        if (++steps > opts.max_steps)
            raise(Errc::DifferentiationFailure, "integrator exceeded the step budget");
        h = std::min(h, opts.h_max);
        if (opts.h_cap_time_fraction > 0.0)
            h = std::min(h, std::max(opts.h_init, opts.h_cap_time_fraction * std::abs(t)));

        OdeState k2 = rhs(spec, axpy(y, h * A21, k1));
        OdeState y3 = axpy(axpy(y, h * A31, k1), h * A32, k2);
        OdeState k3 = rhs(spec, y3);
        OdeState y4 = axpy(axpy(axpy(y, h * A41, k1), h * A42, k2), h * A43, k3);
        OdeState k4 = rhs(spec, y4);
        OdeState y5 =
            axpy(axpy(axpy(axpy(y, h * A51, k1), h * A52, k2), h * A53, k3), h * A54, k4);
        OdeState k5 = rhs(spec, y5);
        OdeState y6 = axpy(
            axpy(axpy(axpy(axpy(y, h * A61, k1), h * A62, k2), h * A63, k3), h * A64, k4),
            h * A65, k5);
        OdeState k6 = rhs(spec, y6);
        OdeState ynew =
            axpy(axpy(axpy(axpy(axpy(y, h * B1, k1), h * B3, k3), h * B4, k4), h * B5, k5),
                 h * B6, k6);
        OdeState k7 = rhs(spec, ynew); // FSAL

        double err = 0.0;
        for (int i = 0; i < 4; ++i) {
            double e = h * (E1 * comp(k1, i) + E3 * comp(k3, i) + E4 * comp(k4, i) +
                            E5 * comp(k5, i) + E6 * comp(k6, i) + E7 * comp(k7, i));
            double sc = opts.abs_tol +
                        opts.rel_tol * std::max(std::abs(comp(y, i)), std::abs(comp(ynew, i)));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / 4.0);

        if (err <= 1.0) {
            PathNode prev = traj.nodes.back();
            PathNode node{t + h, ynew, k7};

            if (ynew.r >= 1.0) {
                double tc = locate_radius_crossing(prev, node, 1.0);
                OdeState yc = hermite_state(prev, node, tc);
                yc.r = 1.0;
                traj.nodes.push_back({tc, yc, rhs(spec, yc)});
                traj.status = TraceStatus::BoundaryExit;
                traj.exit_time = tc;
                traj.exit_state = yc;
                return traj;
            }
            if (ynew.r < R) {
                double tc = locate_radius_crossing(prev, node, R);
                OdeState yc = hermite_state(prev, node, tc);
                yc.r = R;
                traj.nodes.push_back({tc, yc, rhs(spec, yc)});
                traj.status = TraceStatus::BelowDomain;
                traj.exit_time = tc;
                traj.exit_state = yc;
                return traj;
            }

            traj.nodes.push_back(node);
            t += h;
            y = ynew;
            k1 = k7;
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
        } else {
            h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            if (h < 1e-14)
                raise(Errc::DifferentiationFailure, "integrator step size underflow");
        }
    }

    traj.status = TraceStatus::TimeLimit;
    traj.exit_time = t;
    traj.exit_state = y;
    return traj;
}

namespace {

// Unit-speed angular velocity at (r, rdot): solves F(r, rdot, x) = 1 for
// x near the guess by Newton on F^2.
double solve_unit_thetadot(const NormSpec& spec, double r, double rdot, double guess) {
    double x = guess;
    for (int iter = 0; iter < 60; ++iter) {
        double g = spec.norm_squared_unchecked(r, rdot, x) - 1.0;
        if (std::abs(g) < 1e-15) return x;
        double dg;
        if (spec.has_analytic_derivatives()) {
            dg = spec.norm_squared_jet(r, rdot, x).g[2];
        } else {
            double hx = 1e-6 * std::max(1.0, std::abs(x));
            dg = (spec.norm_squared_unchecked(r, rdot, x + hx) -
                  spec.norm_squared_unchecked(r, rdot, x - hx)) /
                 (2.0 * hx);
        }
        x -= g / dg;
    }
    raise(Errc::OptimizationNoConverge, "unit-speed launch solve did not converge");
}

} // namespace

GeodesicRecord trace_tangential(const NormSpec& spec, double r0, double theta0,
                                const TraceOptions& opts) {
    const double R = spec.inner_radius();
    if (!(r0 > R && r0 < 1.0 - 3e-6))
        raise(Errc::OutOfDomain, "turning radius r0=" + std::to_string(r0) + " outside (R,1)");

    GeodesicRecord rec;
    rec.r0 = r0;
    rec.theta0 = theta0;
    rec.a = turning_acceleration(spec, r0).a; // raises HerglotzViolated when a <= 0
    rec.phi1 = 1.0 / spec.norm(r0, 0.0, 1.0);

    // Second-order Taylor predictor off the degenerate start; the angular
    // acceleration vanishes at the turning point by weak reversibility.
    rec.t_esc = std::min(std::sqrt(2e-6 / rec.a), 1e-3);
    double r_esc = r0 + 0.5 * rec.a * rec.t_esc * rec.t_esc;
    double rdot_esc = rec.a * rec.t_esc;
    double thetadot_esc = solve_unit_thetadot(spec, r_esc, rdot_esc, rec.phi1);
    // The trace itself is computed at theta0 = 0; rotation equivariance is
    // exact by construction and theta0 only shifts the reported angles.
    OdeState start{r_esc, rec.phi1 * rec.t_esc, rdot_esc, thetadot_esc};

    OdeOptions ode = opts.ode;
    if (ode.h_cap_time_fraction == 0.0) ode.h_cap_time_fraction = 0.5;
    rec.path = integrate_geodesic(spec, start, rec.t_esc, ode);
    if (rec.path.status == TraceStatus::TimeLimit)
        raise(Errc::Trapped, "tangential geodesic from r0=" + std::to_string(r0) +
                                 " did not exit within t_max");
    if (rec.path.status == TraceStatus::BelowDomain)
        raise(Errc::SteppedBelowDomain,
              "tangential geodesic from r0=" + std::to_string(r0) + " fell below r=R");
    for (const PathNode& n : rec.path.nodes)
        if (n.y.rdot <= -1e-12)
            raise(Errc::HerglotzViolated, "radial speed failed to grow on the rising branch");

    rec.T = rec.path.exit_time;

    // Resample (t, omega, rdot) onto r_j = r0 + u_j^2, u uniform.
    const std::size_t m = std::max<std::size_t>(opts.n_samples, 2);
    const double u_max = std::sqrt(1.0 - r0);
    rec.samples.resize(m + 1);
    std::size_t node_lo = 0;
    for (std::size_t j = 0; j <= m; ++j) {
        double u = u_max * static_cast<double>(j) / static_cast<double>(m);
        double r = r0 + u * u;
        BranchSample s;
        s.r = r;
        if (j == m) {
            s.t = rec.T;
            s.omega = rec.path.exit_state.theta;
            s.rdot = rec.path.exit_state.rdot;
        } else if (r <= r_esc) {
            double t = std::sqrt(2.0 * (r - r0) / rec.a);
            s.t = t;
            s.omega = rec.phi1 * t;
            s.rdot = rec.a * t;
        } else {
            while (node_lo + 1 < rec.path.nodes.size() &&
                   rec.path.nodes[node_lo + 1].y.r < r)
                ++node_lo;
            const PathNode& A = rec.path.nodes[node_lo];
            const PathNode& B = rec.path.nodes[node_lo + 1];
            double t = locate_radius_crossing(A, B, r);
            OdeState y = hermite_state(A, B, t);
            s.t = t;
            s.omega = y.theta;
            s.rdot = y.rdot;
        }
        rec.samples[j] = s;
    }

    double w = rec.samples.back().omega;
    rec.exit_points = {{{1.0, theta0 + w}, {1.0, theta0 - w}}};
    return rec;
}

double integrate_along(const GeodesicRecord& rec,
                       const std::function<double(double, const OdeState&)>& g,
                       std::size_t gauss_points) {
    const GaussRule& rule = gauss_legendre(gauss_points);
    double total = 0.0;

    // Taylor head [0, t_esc].
    {
        double a = 0.0, b = rec.t_esc;
        double mid = 0.5 * (a + b), half = 0.5 * (b - a);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            double t = mid + half * rule.nodes[q];
            OdeState s{rec.r0 + 0.5 * rec.a * t * t, rec.phi1 * t, rec.a * t, rec.phi1};
            total += half * rule.weights[q] * g(t, s);
        }
    }
    for (std::size_t i = 0; i + 1 < rec.path.nodes.size(); ++i) {
        const PathNode& A = rec.path.nodes[i];
        const PathNode& B = rec.path.nodes[i + 1];
        double mid = 0.5 * (A.t + B.t), half = 0.5 * (B.t - A.t);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            double t = mid + half * rule.nodes[q];
            total += half * rule.weights[q] * g(t, hermite_state(A, B, t));
        }
    }
    return total;
}

ShootResult shoot_boundary_geodesic(const NormSpec& spec, double delta_theta,
                                    const TraceOptions& opts) {
    const double R = spec.inner_radius();
    if (!(delta_theta > 0.0))
        raise(Errc::NoBracket, "boundary angle separation must be positive");

    TraceOptions scan_opts = opts;
    scan_opts.n_samples = 4;
    auto spread = [&](double r0) {
        return 2.0 * trace_tangential(spec, r0, 0.0, scan_opts).omega_max();
    };

    // Coarse scan, denser toward the outer boundary where the spread
    // collapses to zero.
    std::vector<double> grid;
    const double lo_r = R + 1e-4 * (1.0 - R);
    for (int i = 0; i < 40; ++i)
        grid.push_back(lo_r + (1.0 - 1e-2 - lo_r) * static_cast<double>(i) / 39.0);
    for (double d : {6e-3, 3e-3, 1e-3, 3e-4, 1e-4, 3e-5, 1e-5})
        grid.push_back(1.0 - d * (1.0 - R));

    std::vector<double> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = spread(grid[i]) - delta_theta;

    std::vector<std::pair<double, double>> brackets;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        if (vals[i] == 0.0) brackets.emplace_back(grid[i], grid[i]);
        if ((vals[i] > 0.0) != (vals[i + 1] > 0.0)) brackets.emplace_back(grid[i], grid[i + 1]);
    }
    if (brackets.empty())
        raise(Errc::NoBracket, "no tangential geodesic spans delta_theta=" +
                                   std::to_string(delta_theta));
    ShootResult out;
    out.monotone_warning = brackets.size() > 1;

    auto [blo, bhi] = brackets.front(); // smallest r0 first (ascending grid)
    double flo = spread(blo) - delta_theta;
    for (int iter = 0; iter < 80 && bhi - blo > 1e-13; ++iter) {
        double mid = 0.5 * (blo + bhi);
        double fm = spread(mid) - delta_theta;
        if ((flo > 0.0) == (fm > 0.0)) {
            blo = mid;
            flo = fm;
        } else {
            bhi = mid;
        }
    }
    out.r0 = 0.5 * (blo + bhi);
    out.record = trace_tangential(spec, out.r0, 0.0, opts);
    out.length = 2.0 * out.record.T;
    return out;
}

} // namespace fxray

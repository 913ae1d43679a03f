#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <vector>

#include "fxray/herglotz.hpp"
#include "fxray/norm_spec.hpp"

namespace fxray {

/// Phase-space state of the geodesic flow in polar coordinates.
struct OdeState {
    double r = 0.0;
    double theta = 0.0;
    double rdot = 0.0;
    double thetadot = 0.0;
};

enum class TraceStatus { BoundaryExit, TimeLimit, BelowDomain };

struct PathNode {
    double t = 0.0;
    OdeState y;
    OdeState dy; // time derivative at the node, for Hermite interpolation
};

struct Trajectory {
    std::vector<PathNode> nodes;
    TraceStatus status = TraceStatus::TimeLimit;
    double exit_time = 0.0;
    OdeState exit_state;
};

struct OdeOptions {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    double h_max = 0.01;
    double h_init = 1e-4;
    double t_max = 200.0; // ~100 x the annulus diameter scale
    std::size_t max_steps = 2'000'000;
    /// When > 0, additionally cap h by this fraction of |t|. Tangential
    /// traces use it to keep the dense output accurate where the t -> r
    /// change of variables amplifies interpolation error by 1/rdot.
    double h_cap_time_fraction = 0.0;
};

struct TraceOptions {
    OdeOptions ode;
    std::size_t n_samples = 256; // resampled branch table resolution
};

/// Integrates the geodesic ODE from an arbitrary state until the outer
/// boundary (root-resolved to 1e-12 in t), the radius drops below R, or
/// t reaches t0 + t_max.
Trajectory integrate_geodesic(const NormSpec& spec, const OdeState& initial,
                              double t0 = 0.0, const OdeOptions& opts = {});

/// One tangential geodesic, stored on its rising branch. The descending
/// branch is the mirror image through (r0, theta0); samples are resampled
/// onto a radial grid r_j = r0 + u_j^2 with u uniform (square-root
/// clustering toward the turning point).
struct BranchSample {
    double r = 0.0;
    double t = 0.0;
    double omega = 0.0; // theta(t) - theta0
    double rdot = 0.0;
};

struct GeodesicRecord {
    double r0 = 0.0;
    double theta0 = 0.0;
    double a = 0.0;     // turning acceleration r''(0)
    double phi1 = 0.0;  // launch thetadot (unit speed)
    double T = 0.0;     // rising-branch exit time; full length is 2T
    double t_esc = 0.0; // Taylor-model handoff time near the turning point
    std::vector<BranchSample> samples;
    std::array<std::array<double, 2>, 2> exit_points{}; // (r, theta) of both ends
    Trajectory path; // natural integrator steps of the rising branch

    double omega_max() const { return samples.empty() ? 0.0 : samples.back().omega; }
};

GeodesicRecord trace_tangential(const NormSpec& spec, double r0, double theta0 = 0.0,
                                const TraceOptions& opts = {});

/// Quadrature of g(t, state) along the rising branch (turning point to
/// exit), Taylor head included: per-segment Gauss rule on the Hermite
/// dense output.
double integrate_along(const GeodesicRecord& rec,
                       const std::function<double(double, const OdeState&)>& g,
                       std::size_t gauss_points = 6);

struct ShootResult {
    GeodesicRecord record;
    double r0 = 0.0;
    double length = 0.0;       // 2T of the connecting geodesic
    bool monotone_warning = false; // angular spread was not monotone in r0
};

/// Finds the tangential geodesic whose endpoints on the outer boundary are
/// separated by delta_theta, by a 1D root solve on the turning radius.
/// When several turning radii produce the same spread, returns the
/// smallest one and sets monotone_warning.
ShootResult shoot_boundary_geodesic(const NormSpec& spec, double delta_theta,
                                    const TraceOptions& opts = {});

} // namespace fxray

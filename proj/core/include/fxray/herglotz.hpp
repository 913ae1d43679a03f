#pragma once

#include <string>
#include <vector>

#include "fxray/norm_spec.hpp"

namespace fxray {

/// Result of sampling d(F^2)/dr (r, 0, phi) over a radial grid clustered
/// toward the inner boundary. The condition is fiber-homogeneous of
/// degree two, so testing the representative directions phi = +-1 covers
/// every nonzero tangential fiber.
struct HerglotzReport {
    double min_margin = 0.0;
    double argmin_r = 0.0;
    double argmin_phi = 0.0;
    bool pass = false;
    std::size_t n_r = 0;
    std::size_t n_phi = 0;
    std::string to_json_string(int indent = -1) const;
};

HerglotzReport check_herglotz(const NormSpec& spec, std::size_t n_r = 200, std::size_t n_phi = 2);

/// Outward acceleration a(r0) of the radius along the tangential geodesic
/// through r0, evaluated from the metric tensor and the radial derivative
/// of F^2 at the turning point. asymmetry records |a(+) - a(-)|, which
/// vanishes for reversible norms.
struct TurningAcceleration {
    double r0 = 0.0;
    double a = 0.0;
    double asymmetry = 0.0;
};

TurningAcceleration turning_acceleration(const NormSpec& spec, double r0);

/// Strict-convexity margins d^2/dt^2 psi(gamma(t))|_0 with psi = 1 - |x|^2
/// for tangential launches over a radial grid. Negative margins everywhere
/// mean the circles foliate the annulus strictly convexly.
struct FoliationReport {
    bool pass = false;
    double max_margin = 0.0; // most positive value; must stay < 0
    double argmax_r = 0.0;
    std::vector<double> grid_r;
    std::vector<double> margins;
    std::string to_json_string(int indent = -1) const;
};

FoliationReport check_foliation(const NormSpec& spec, std::size_t n_r = 64);

} // namespace fxray

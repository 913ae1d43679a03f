#pragma once

namespace fxray {

/// Point of the tangent bundle over the annulus in polar coordinates:
/// base radius r, radial velocity component rho = dr(y), angular velocity
/// component phi = dtheta(y). The base angle theta is suppressed because
/// every norm here is spherically symmetric.
struct FiberPoint {
    double r = 0.0;
    double rho = 0.0;
    double phi = 0.0;
};

/// Symmetric 2x2 fiber metric tensor g_ij = 1/2 d^2(F^2)/dy^i dy^j.
struct MetricTensor2 {
    double g11 = 0.0;
    double g12 = 0.0;
    double g22 = 0.0;
    double det = 0.0;
};

/// Spray coefficients G^1, G^2 of the geodesic equation
/// gamma''^i + 2 G^i(gamma, gamma') = 0.
struct SprayCoefficients {
    double G1 = 0.0;
    double G2 = 0.0;
};

} // namespace fxray

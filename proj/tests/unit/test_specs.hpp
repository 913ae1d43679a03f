#pragma once

#include "fxray/norm_spec.hpp"

// Shared fixture norms used across the suites.
namespace testspecs {

inline fxray::NormSpec euclid(double R = 0.3) { return fxray::NormSpec::euclidean(R); }

// Radial sound speed c(r) = 2 - r: increasing slowness outward, passes the
// usual Herglotz condition d/dr (r / c) > 0.
inline fxray::NormSpec radial_slow(double R = 0.3) {
    return fxray::NormSpec::radial_riemannian(R, fxray::RadialProfile::polynomial({2.0, -1.0}));
}

// c(r) = r^2 violates d/dr (r / c) > 0 everywhere.
inline fxray::NormSpec herglotz_violator(double R = 0.3) {
    return fxray::NormSpec::radial_riemannian(R,
                                              fxray::RadialProfile::polynomial({0.0, 0.0, 1.0}));
}

// Anisotropic speed c(r, rho, phi) = 1 + 0.3 r phi^2 / (rho^2 + r^2 phi^2):
// reversible, passes Herglotz for every R, and keeps a convex fiber ball
// for r bounded away from 0.6, hence the inner radius 0.7.
inline fxray::NormSpec aniso(double R = 0.7) {
    return fxray::NormSpec::anisotropic_speed(
        R, {fxray::RadialProfile::constant(1.0), fxray::RadialProfile::polynomial({0.0, 0.3})});
}

} // namespace testspecs

#pragma once

#include <functional>

namespace fxray {

/// Maximize a smooth 2*pi-periodic function: 64-point coarse scan to
/// bracket the global maximum, then golden-section refinement of the
/// bracket down to `tol` in the angle. Raises OptimizationNoConverge if
/// the bracket fails to shrink within the iteration cap.
struct PeriodicMaxResult {
    double arg;
    double value;
};

PeriodicMaxResult periodic_maximize(const std::function<double(double)>& fn,
                                    double tol = 1e-10, std::size_t coarse = 64);

} // namespace fxray

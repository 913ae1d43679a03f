#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "fxray/fiber.hpp"
#include "fxray/norm_spec.hpp"

namespace fxray {

/// Fiberwise co-norm evaluator: (r, p_r, p_theta) -> F*(r, p).
using ConormFn = std::function<double(double, double, double)>;

double eval_norm(const NormSpec& spec, const FiberPoint& p);

/// Finslerian metric tensor g_ij = 1/2 Hess_y F^2 at a fiber point.
/// Uses the family's closed-form derivatives when present, otherwise
/// Richardson-extrapolated central differences on F^2.
MetricTensor2 metric_tensor(const NormSpec& spec, const FiberPoint& p);

SprayCoefficients spray_coefficients(const NormSpec& spec, const FiberPoint& p);

/// Co-Finsler norm F*(x, omega) = sup_{F(x,y)=1} omega(y).
double co_norm(const NormSpec& spec, double r, double p_r, double p_theta);

/// Norm from a fiberwise convex co-norm: F(x,y) = sup_{w != 0} w(y)/F*(x,w).
double legendre_norm_from_conorm(const ConormFn& conorm, const FiberPoint& p);

/// d(F^2)/dr at fixed fiber, with the stencil shifted one-sided near the
/// domain ends. Closed-form when the family provides it.
double radial_f2_derivative(const NormSpec& spec, const FiberPoint& p);

/// Same, but always finite differences (diagnostic path).
double radial_f2_derivative_fd(const NormSpec& spec, const FiberPoint& p);

/// Metric tensor via finite differences regardless of analytic support.
MetricTensor2 metric_tensor_fd(const NormSpec& spec, const FiberPoint& p);

struct AxiomCheck {
    bool pass = false;
    double margin = 0.0; // worst-case; interpretation depends on the axiom
    FiberPoint where;
};

struct AxiomReport {
    AxiomCheck positivity;      // margin: min F over samples (> 0 required)
    AxiomCheck homogeneity;     // margin: max |F(l y)-l F(y)|/(l F) (<= tol)
    AxiomCheck reversibility;   // margin: max |F(-y)-F(y)|/F (<= tol)
    AxiomCheck convexity;       // margin: min normalized eigenvalue of g (> 0)
    std::size_t sample_count = 0;
    std::uint64_t seed = 0;
    bool pass() const {
        return positivity.pass && homogeneity.pass && reversibility.pass && convexity.pass;
    }
    std::string to_json_string(int indent = -1) const;
};

AxiomReport check_axioms(const NormSpec& spec, std::size_t sample_count, std::uint64_t seed = 1);

} // namespace fxray

#pragma once

#include <string>
#include <vector>

#include "fxray/interp.hpp"

namespace fxray {

/// Scalar profile of the radius, given either as polynomial coefficients
/// (ascending powers of r) or as tabulated (r, value) pairs interpolated
/// by a natural cubic spline. Value and the first two derivatives are
/// evaluated analytically in both representations.
class RadialProfile {
public:
    RadialProfile() : kind_(Kind::Polynomial), coeffs_{0.0} {}

    static RadialProfile polynomial(std::vector<double> coeffs);
    static RadialProfile constant(double value) { return polynomial({value}); }
    static RadialProfile tabulated(std::vector<double> r, std::vector<double> values);

    double value(double r) const;
    double deriv(double r) const;
    double deriv2(double r) const;

    bool is_polynomial() const { return kind_ == Kind::Polynomial; }
    const std::vector<double>& coefficients() const { return coeffs_; }
    const CubicSpline& spline() const { return spline_; }

private:
    enum class Kind { Polynomial, Tabulated };
    Kind kind_;
    std::vector<double> coeffs_;
    CubicSpline spline_;
};

} // namespace fxray

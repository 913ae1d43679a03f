#include "fxray/radial_profile.hpp"

#include <stdexcept>

namespace fxray {

RadialProfile RadialProfile::polynomial(std::vector<double> coeffs) {
    if (coeffs.empty()) throw std::invalid_argument("RadialProfile: empty coefficient list");
    RadialProfile p;
    p.kind_ = Kind::Polynomial;
    p.coeffs_ = std::move(coeffs);
    return p;
}

RadialProfile RadialProfile::tabulated(std::vector<double> r, std::vector<double> values) {
    RadialProfile p;
    p.kind_ = Kind::Tabulated;
    p.spline_ = CubicSpline::natural(std::move(r), std::move(values));
    return p;
}

double RadialProfile::value(double r) const {
    if (kind_ == Kind::Tabulated) return spline_.value(r);
    double acc = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 0;) acc = acc * r + coeffs_[i];
    return acc;
}

double RadialProfile::deriv(double r) const {
    if (kind_ == Kind::Tabulated) return spline_.deriv(r);
    double acc = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 1;)
        acc = acc * r + coeffs_[i] * static_cast<double>(i);
    return acc;
}

double RadialProfile::deriv2(double r) const {
    if (kind_ == Kind::Tabulated) return spline_.deriv2(r);
    double acc = 0.0;
    for (std::size_t i = coeffs_.size(); i-- > 2;)
        acc = acc * r + coeffs_[i] * static_cast<double>(i) * static_cast<double>(i - 1);
    return acc;
}

} // namespace fxray

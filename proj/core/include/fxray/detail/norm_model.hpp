#pragma once

#include <string>

#include "fxray/jet.hpp"

namespace fxray::detail {

/// Polymorphic implementation behind NormSpec. Implementations must be
/// immutable after construction and safe for concurrent evaluation.
class NormModel {
public:
    virtual ~NormModel() = default;

    /// F^2(r, rho, phi) for (rho, phi) != 0.
    virtual double f2(double r, double rho, double phi) const = 0;

    virtual bool has_jets() const { return false; }
    virtual Jet3 f2_jet(double r, double rho, double phi) const;

    virtual const char* family() const = 0;
    virtual bool reversible() const { return true; }

    /// Family-specific JSON payload (merged with "family" and "R" keys);
    /// empty string means not serializable.
    virtual std::string json_payload() const { return {}; }
};

} // namespace fxray::detail

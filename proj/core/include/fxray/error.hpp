#pragma once

#include <stdexcept>
#include <string>

namespace fxray {

enum class Errc {
    NonPositiveSpeed,
    OutOfDomain,
    NotPositiveDefinite,
    DifferentiationFailure,
    OptimizationNoConverge,
    HerglotzViolated,
    Trapped,
    SteppedBelowDomain,
    DegenerateTrace,
    QuadratureNoConverge,
    GridMismatch,
    SolveFailure,
    NoBracket,
    DegenerateEigen,
    NotReversible,
    BoundaryNonVanishing,
    ConfigError,
};

inline const char* errc_name(Errc c) {
    switch (c) {
        case Errc::NonPositiveSpeed: return "NonPositiveSpeed";
        case Errc::OutOfDomain: return "OutOfDomain";
        case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
        case Errc::DifferentiationFailure: return "DifferentiationFailure";
        case Errc::OptimizationNoConverge: return "OptimizationNoConverge";
        case Errc::HerglotzViolated: return "HerglotzViolated";
        case Errc::Trapped: return "Trapped";
        case Errc::SteppedBelowDomain: return "SteppedBelowDomain";
        case Errc::DegenerateTrace: return "DegenerateTrace";
        case Errc::QuadratureNoConverge: return "QuadratureNoConverge";
        case Errc::GridMismatch: return "GridMismatch";
        case Errc::SolveFailure: return "SolveFailure";
        case Errc::NoBracket: return "NoBracket";
        case Errc::DegenerateEigen: return "DegenerateEigen";
        case Errc::NotReversible: return "NotReversible";
        case Errc::BoundaryNonVanishing: return "BoundaryNonVanishing";
        case Errc::ConfigError: return "ConfigError";
    }
    return "Unknown";
}

/// Domain error carrying a stable code so callers (and the CLI exit-code
/// mapping) can dispatch without string matching.
class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what)
        : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string& what) { throw Error(code, what); }

} // namespace fxray

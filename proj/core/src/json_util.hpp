#pragma once

#include <json.hpp>

#include "fxray/error.hpp"
#include "fxray/radial_profile.hpp"

namespace fxray::detail {

using nlohmann::json;

inline json profile_to_json(const RadialProfile& p) {
    json j;
    if (p.is_polynomial()) {
        j["poly"] = p.coefficients();
    } else {
        j["r"] = p.spline().knots();
        j["values"] = p.spline().values();
    }
    return j;
}

inline RadialProfile profile_from_json(const json& j) {
    if (j.is_number()) return RadialProfile::constant(j.get<double>());
    if (j.contains("poly")) return RadialProfile::polynomial(j["poly"].get<std::vector<double>>());
    if (j.contains("r") && j.contains("values"))
        return RadialProfile::tabulated(j["r"].get<std::vector<double>>(),
                                        j["values"].get<std::vector<double>>());
    raise(Errc::ConfigError, "profile must be a number, {poly:[...]} or {r:[...],values:[...]}");
}

inline json parse_json(std::string_view text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) raise(Errc::ConfigError, std::string("malformed JSON in ") + what);
    return j;
}

} // namespace fxray::detail

namespace fxray {
class NormSpec;
/// Implemented in elastic.cpp; reconstructs an elastic_derived spec.
NormSpec elastic_spec_from_json(const detail::json& j);
} // namespace fxray

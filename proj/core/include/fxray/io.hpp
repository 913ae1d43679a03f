#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fxray/abel.hpp"
#include "fxray/annulus_function.hpp"
#include "fxray/geodesic.hpp"
#include "fxray/tomography.hpp"

namespace fxray {
namespace io {

/// 17 significant digits: round-trips doubles and keeps CSV/JSON output
/// byte-stable across runs.
std::string format_double(double x);

std::string record_to_csv(const GeodesicRecord& rec); // columns r,t,omega,rdot
std::string record_header_json(const GeodesicRecord& rec, int indent = -1);

std::string sinogram_to_csv(const Sinogram& sino); // long format r0,theta0,value
Sinogram sinogram_from_csv(std::string_view text);
std::string sinogram_manifest_json(const Sinogram& sino, int indent = -1);

/// Polar samples of the synthesized field: long format r,theta,value.
std::string field_to_csv(const AnnulusFunction& f, std::size_t n_theta);

std::string operator_to_csv(const AbelOperator& op);
std::string operator_sidecar_json(const AbelOperator& op, int indent = -1);

/// Field description: {"modes":[{"k":int,"re":profile,"im":profile?}...]},
/// profiles evaluated onto the given radial grid.
AnnulusFunction field_from_json(std::string_view text, const std::vector<double>& grid);

/// Radial profile from its JSON form: a bare number, {"poly":[...]} or
/// {"r":[...],"values":[...]}.
RadialProfile profile_from_json_string(std::string_view text);

void write_file(const std::string& path, std::string_view content);
std::string read_file(const std::string& path);

} // namespace io
} // namespace fxray

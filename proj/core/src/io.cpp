#include "fxray/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fxray/error.hpp"
#include "json_util.hpp"

namespace fxray {
namespace io {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string record_to_csv(const GeodesicRecord& rec) {
    std::string out = "r,t,omega,rdot\n";
    for (const BranchSample& s : rec.samples) {
        out += format_double(s.r) + ',' + format_double(s.t) + ',' + format_double(s.omega) +
               ',' + format_double(s.rdot) + '\n';
    }
    return out;
}

std::string record_header_json(const GeodesicRecord& rec, int indent) {
    detail::json j;
    j["r0"] = rec.r0;
    j["theta0"] = rec.theta0;
    j["T"] = rec.T;
    return j.dump(indent);
}

std::string sinogram_to_csv(const Sinogram& sino) {
    std::string out = "r0,theta0,value\n";
    for (std::size_t i = 0; i < sino.r0.size(); ++i)
        for (std::size_t j = 0; j < sino.theta0.size(); ++j)
            out += format_double(sino.r0[i]) + ',' + format_double(sino.theta0[j]) + ',' +
                   format_double(sino.at(i, j)) + '\n';
    return out;
}

Sinogram sinogram_from_csv(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string line;
    if (!std::getline(in, line)) raise(Errc::ConfigError, "empty sinogram CSV");
    std::vector<double> r0s, th0s, vals;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        double a, b, c;
        if (std::sscanf(line.c_str(), "%lf,%lf,%lf", &a, &b, &c) != 3)
            raise(Errc::ConfigError, "bad sinogram CSV line: " + line);
        r0s.push_back(a);
        th0s.push_back(b);
        vals.push_back(c);
    }
    Sinogram sino;
    for (double r : r0s)
        if (sino.r0.empty() || r > sino.r0.back() + 1e-14) sino.r0.push_back(r);
    std::size_t n_theta = vals.size() / std::max<std::size_t>(sino.r0.size(), 1);
    if (sino.r0.empty() || n_theta * sino.r0.size() != vals.size())
        raise(Errc::ConfigError, "sinogram CSV is not a tensor grid");
    sino.theta0.assign(th0s.begin(), th0s.begin() + static_cast<std::ptrdiff_t>(n_theta));
    sino.values = std::move(vals);
    return sino;
}

std::string sinogram_manifest_json(const Sinogram& sino, int indent) {
    detail::json j;
    j["n_r0"] = sino.r0.size();
    j["n_theta0"] = sino.theta0.size();
    j["r0_min"] = sino.r0.empty() ? 0.0 : sino.r0.front();
    j["r0_max"] = sino.r0.empty() ? 0.0 : sino.r0.back();
    return j.dump(indent);
}

std::string field_to_csv(const AnnulusFunction& f, std::size_t n_theta) {
    std::string out = "r,theta,value\n";
    for (double r : f.grid())
        for (std::size_t j = 0; j < n_theta; ++j) {
            double theta = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n_theta);
            out += format_double(r) + ',' + format_double(theta) + ',' +
                   format_double(f.synthesize_real(r, theta)) + '\n';
        }
    return out;
}

std::string operator_to_csv(const AbelOperator& op) {
    std::string out;
    for (std::size_t i = 0; i < op.rows(); ++i) {
        for (std::size_t j = 0; j < op.cols(); ++j) {
            if (j) out += ',';
            out += format_double(op.entry(i, j));
        }
        out += '\n';
    }
    return out;
}

std::string operator_sidecar_json(const AbelOperator& op, int indent) {
    detail::json j;
    j["k"] = op.k;
    j["alpha"] = op.alpha;
    j["grid"] = op.grid;
    return j.dump(indent);
}

AnnulusFunction field_from_json(std::string_view text, const std::vector<double>& grid) {
    detail::json j = detail::parse_json(text, "field spec");
    if (!j.contains("modes")) raise(Errc::ConfigError, "field spec needs \"modes\"");
    int k_max = 0;
    for (const auto& m : j["modes"]) k_max = std::max(k_max, std::abs(m.at("k").get<int>()));
    AnnulusFunction f(k_max, grid, true);
    for (const auto& m : j["modes"]) {
        int k = m.at("k").get<int>();
        if (k < 0)
            raise(Errc::ConfigError, "field modes are given for k >= 0 (real fields)");
        RadialProfile re = detail::profile_from_json(m.at("re"));
        std::vector<std::complex<double>> vals(grid.size());
        if (m.contains("im")) {
            RadialProfile im = detail::profile_from_json(m.at("im"));
            for (std::size_t i = 0; i < grid.size(); ++i)
                vals[i] = {re.value(grid[i]), im.value(grid[i])};
        } else {
            for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = re.value(grid[i]);
        }
        f.set_mode(k, std::move(vals));
    }
    return f;
}

RadialProfile profile_from_json_string(std::string_view text) {
    return detail::profile_from_json(detail::parse_json(text, "profile"));
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(Errc::ConfigError, "cannot open for writing: " + path);
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(Errc::ConfigError, "cannot open: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace io
} // namespace fxray

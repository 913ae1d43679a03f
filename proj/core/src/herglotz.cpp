#include "fxray/herglotz.hpp"

#include <cmath>
#include <limits>

#include "fxray/error.hpp"
#include "fxray/finsler.hpp"
#include "json_util.hpp"

namespace fxray {

namespace {

// Radial grid on (R, 1], geometrically clustered toward R where margins
// degrade first. The innermost point sits at R + 1e-4 (1-R).
std::vector<double> herglotz_grid(double R, std::size_t n_r) {
    std::vector<double> grid(n_r);
    const double delta = 1e-4;
    for (std::size_t i = 0; i < n_r; ++i) {
        double s = static_cast<double>(i) / static_cast<double>(n_r - 1);
        grid[i] = R + (1.0 - R) * std::pow(delta, 1.0 - s);
    }
    grid.back() = 1.0;
    return grid;
}

} // namespace

HerglotzReport check_herglotz(const NormSpec& spec, std::size_t n_r, std::size_t n_phi) {
    if (n_r < 2 || n_phi < 2) raise(Errc::ConfigError, "check_herglotz: need n_r, n_phi >= 2");
    HerglotzReport rep;
    rep.n_r = n_r;
    rep.n_phi = 2; // +-1 cover all tangential rays by homogeneity
    rep.min_margin = std::numeric_limits<double>::infinity();

    const std::vector<double> grid = herglotz_grid(spec.inner_radius(), n_r);
    const double phis[] = {1.0, -1.0};
    for (double r : grid) {
        for (double phi : phis) {
            double margin = radial_f2_derivative_fd(spec, {r, 0.0, phi});
            if (margin < rep.min_margin) {
                rep.min_margin = margin;
                rep.argmin_r = r;
                rep.argmin_phi = phi;
            }
        }
    }
    rep.pass = rep.min_margin > 0.0;
    return rep;
}

TurningAcceleration turning_acceleration(const NormSpec& spec, double r0) {
    const double R = spec.inner_radius();
    if (!(r0 > R && r0 <= 1.0))
        raise(Errc::OutOfDomain, "turning radius r0=" + std::to_string(r0) + " outside (R,1]");

    auto accel = [&](double sign) {
        double phi1 = sign / spec.norm(r0, 0.0, sign);
        FiberPoint p{r0, 0.0, phi1};
        MetricTensor2 g = metric_tensor(spec, p);
        double g11_inv = g.g22 / g.det;
        return 0.5 * g11_inv * radial_f2_derivative(spec, p);
    };

    TurningAcceleration out;
    out.r0 = r0;
    double ap = accel(1.0);
    double am = accel(-1.0);
    out.a = ap;
    out.asymmetry = std::abs(ap - am);
    if (!(out.a > 0.0))
        raise(Errc::HerglotzViolated,
              "turning acceleration a(r0) = " + std::to_string(out.a) + " <= 0 at r0=" + std::to_string(r0));
    return out;
}

FoliationReport check_foliation(const NormSpec& spec, std::size_t n_r) {
    FoliationReport rep;
    rep.grid_r = herglotz_grid(spec.inner_radius(), n_r);
    if (rep.grid_r.back() == 1.0) rep.grid_r.back() = 1.0 - 1e-9; // launch strictly inside
    rep.max_margin = -std::numeric_limits<double>::infinity();
    rep.margins.reserve(rep.grid_r.size());

    for (double r0 : rep.grid_r) {
        // Tangential launch; gamma''(0) in Cartesian coordinates at theta=0
        // is (rddot - r0 phi1^2, r0 thetaddot), and the centripetal part
        // cancels against |gamma'(0)|^2, leaving -2 r0 rddot(0).
        double phi1 = 1.0 / spec.norm(r0, 0.0, 1.0);
        SprayCoefficients G = spray_coefficients(spec, {r0, 0.0, phi1});
        double rddot = -2.0 * G.G1;
        double speed2 = r0 * r0 * phi1 * phi1;                 // |gamma'(0)|^2, Euclidean
        double gdotgddot = r0 * (rddot - r0 * phi1 * phi1);    // gamma(0) . gamma''(0)
        double margin = -2.0 * (speed2 + gdotgddot);
        rep.margins.push_back(margin);
        if (margin > rep.max_margin) {
            rep.max_margin = margin;
            rep.argmax_r = r0;
        }
    }
    rep.pass = rep.max_margin < 0.0;
    return rep;
}

std::string HerglotzReport::to_json_string(int indent) const {
    detail::json j;
    j["pass"] = pass;
    j["min_margin"] = min_margin;
    j["argmin"] = {{"r", argmin_r}, {"phi", argmin_phi}};
    j["grid"] = {{"n_r", n_r}, {"n_phi", n_phi}};
    return j.dump(indent);
}

std::string FoliationReport::to_json_string(int indent) const {
    detail::json j;
    j["pass"] = pass;
    j["max_margin"] = max_margin;
    j["argmax_r"] = argmax_r;
    j["n_r"] = grid_r.size();
    return j.dump(indent);
}

} // namespace fxray

#include "fxray/finsler.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "fxray/error.hpp"
#include "fxray/optim.hpp"
#include "json_util.hpp"

namespace fxray {

namespace {

constexpr double kEps = 2.220446049250313e-16;
// Balanced step for second differences of F^2; eps^(1/3) would leave the
// Hessian roundoff above the module's 1e-6 agreement budget.
const double kHessStep = std::pow(kEps, 0.25);
const double kGradStep = std::pow(kEps, 1.0 / 3.0);

void require_fiber(const NormSpec& spec, const FiberPoint& p) {
    double norm_y = std::hypot(p.rho, p.phi);
    if (norm_y < 1e-8 * std::max(1.0, p.r))
        raise(Errc::OutOfDomain, "fiber point too close to the zero section");
    (void)spec;
}

MetricTensor2 finish_metric(double h_rho_rho, double h_rho_phi, double h_phi_phi,
                            const FiberPoint& p) {
    MetricTensor2 g;
    g.g11 = 0.5 * h_rho_rho;
    g.g12 = 0.5 * h_rho_phi;
    g.g22 = 0.5 * h_phi_phi;
    g.det = g.g11 * g.g22 - g.g12 * g.g12;
    double scale = std::max(1.0, std::abs(g.g11) + std::abs(g.g22));
    if (g.g11 <= 1e-7 * scale || g.det <= 1e-7 * scale * scale)
        raise(Errc::NotPositiveDefinite,
              "fiber Hessian not positive definite at r=" + std::to_string(p.r) +
                  " rho=" + std::to_string(p.rho) + " phi=" + std::to_string(p.phi));
    return g;
}

// Second fiber derivatives of F^2 by central differences with one
// Richardson level (steps h and 2h).
void fd_fiber_hessian(const NormSpec& spec, const FiberPoint& p,
                      double& h11, double& h12, double& h22) {
    const double h = kHessStep * std::max(1.0, std::hypot(p.rho, p.phi));
    auto f = [&](double drho, double dphi) {
        return spec.norm_squared_unchecked(p.r, p.rho + drho, p.phi + dphi);
    };
    auto diag = [&](bool rho_dir, double step) {
        double fp = rho_dir ? f(step, 0.0) : f(0.0, step);
        double fm = rho_dir ? f(-step, 0.0) : f(0.0, -step);
        return (fp - 2.0 * f(0.0, 0.0) + fm) / (step * step);
    };
    auto cross = [&](double step) {
        return (f(step, step) - f(step, -step) - f(-step, step) + f(-step, -step)) /
               (4.0 * step * step);
    };
    auto rich = [](double d_h, double d_2h) { return (4.0 * d_h - d_2h) / 3.0; };
    h11 = rich(diag(true, h), diag(true, 2.0 * h));
    h22 = rich(diag(false, h), diag(false, 2.0 * h));
    h12 = rich(cross(h), cross(2.0 * h));
}

// d/dr of a quantity g(r) with the stencil kept inside [R, 1].
double fd_radial(const std::function<double(double)>& g, double r, double R, double h) {
    if (1.0 - R < 4.0 * h)
        raise(Errc::DifferentiationFailure, "annulus too thin for the radial stencil");
    if (r + h <= 1.0 && r - h >= R) return (g(r + h) - g(r - h)) / (2.0 * h);
    if (r + h > 1.0) return (3.0 * g(r) - 4.0 * g(r - h) + g(r - 2.0 * h)) / (2.0 * h);
    return (-3.0 * g(r) + 4.0 * g(r + h) - g(r + 2.0 * h)) / (2.0 * h);
}

} // namespace

double eval_norm(const NormSpec& spec, const FiberPoint& p) { return spec.norm(p); }

MetricTensor2 metric_tensor(const NormSpec& spec, const FiberPoint& p) {
    require_fiber(spec, p);
    if (spec.has_analytic_derivatives()) {
        Jet3 j = spec.norm_squared_jet(p.r, p.rho, p.phi);
        return finish_metric(j.h[3], j.h[4], j.h[5], p);
    }
    return metric_tensor_fd(spec, p);
}

MetricTensor2 metric_tensor_fd(const NormSpec& spec, const FiberPoint& p) {
    require_fiber(spec, p);
    double h11, h12, h22;
    fd_fiber_hessian(spec, p, h11, h12, h22);
    return finish_metric(h11, h12, h22, p);
}

double radial_f2_derivative(const NormSpec& spec, const FiberPoint& p) {
    if (spec.has_analytic_derivatives())
        return spec.norm_squared_jet(p.r, p.rho, p.phi).g[0];
    return radial_f2_derivative_fd(spec, p);
}

double radial_f2_derivative_fd(const NormSpec& spec, const FiberPoint& p) {
    const double h = kGradStep * std::max(1.0, p.r);
    return fd_radial([&](double r) { return spec.norm_squared_unchecked(r, p.rho, p.phi); },
                     p.r, spec.inner_radius(), h);
}

SprayCoefficients spray_coefficients(const NormSpec& spec, const FiberPoint& p) {
    require_fiber(spec, p);
    double h11, h12, h22;   // fiber Hessian of F^2
    double f2_r;            // d F^2 / dr
    double mixed_rho, mixed_phi; // d^2 F^2 / dr drho, dr dphi

    if (spec.has_analytic_derivatives()) {
        Jet3 j = spec.norm_squared_jet(p.r, p.rho, p.phi);
        h11 = j.h[3];
        h12 = j.h[4];
        h22 = j.h[5];
        f2_r = j.g[0];
        mixed_rho = j.h[1];
        mixed_phi = j.h[2];
    } else {
        fd_fiber_hessian(spec, p, h11, h12, h22);
        f2_r = radial_f2_derivative_fd(spec, p);
        const double scale = std::max(1.0, std::hypot(p.rho, p.phi));
        const double hf = kHessStep * scale;
        const double hr = kHessStep * std::max(1.0, p.r);
        const double R = spec.inner_radius();
        // Mixed partials from the symmetric cross stencil when it fits,
        // otherwise one-sided in r on the fiber gradient.
        auto f = [&](double r, double rho, double phi) {
            return spec.norm_squared_unchecked(r, rho, phi);
        };
        if (p.r - hr >= R && p.r + hr <= 1.0) {
            mixed_rho = (f(p.r + hr, p.rho + hf, p.phi) - f(p.r + hr, p.rho - hf, p.phi) -
                         f(p.r - hr, p.rho + hf, p.phi) + f(p.r - hr, p.rho - hf, p.phi)) /
                        (4.0 * hr * hf);
            mixed_phi = (f(p.r + hr, p.rho, p.phi + hf) - f(p.r + hr, p.rho, p.phi - hf) -
                         f(p.r - hr, p.rho, p.phi + hf) + f(p.r - hr, p.rho, p.phi - hf)) /
                        (4.0 * hr * hf);
        } else {
            auto grad_rho = [&](double r) {
                return (f(r, p.rho + hf, p.phi) - f(r, p.rho - hf, p.phi)) / (2.0 * hf);
            };
            auto grad_phi = [&](double r) {
                return (f(r, p.rho, p.phi + hf) - f(r, p.rho, p.phi - hf)) / (2.0 * hf);
            };
            const double hr1 = 5e-4 * std::max(1.0, p.r);
            mixed_rho = fd_radial(grad_rho, p.r, R, hr1);
            mixed_phi = fd_radial(grad_phi, p.r, R, hr1);
        }
    }

    MetricTensor2 g = finish_metric(h11, h12, h22, p);
    double b1 = p.rho * mixed_rho - f2_r;
    double b2 = p.rho * mixed_phi;
    double inv_det = 1.0 / g.det;
    SprayCoefficients s;
    s.G1 = 0.25 * inv_det * (g.g22 * b1 - g.g12 * b2);
    s.G2 = 0.25 * inv_det * (-g.g12 * b1 + g.g11 * b2);
    return s;
}

double co_norm(const NormSpec& spec, double r, double p_r, double p_theta) {
    if (p_r == 0.0 && p_theta == 0.0)
        raise(Errc::OutOfDomain, "co_norm of the zero covector");
    auto pairing = [&](double psi) {
        double y1 = std::cos(psi), y2 = std::sin(psi);
        double F = spec.norm(r, y1, y2);
        return (p_r * y1 + p_theta * y2) / F;
    };
    return periodic_maximize(pairing).value;
}

double legendre_norm_from_conorm(const ConormFn& conorm, const FiberPoint& p) {
    if (p.rho == 0.0 && p.phi == 0.0) return 0.0;
    auto pairing = [&](double chi) {
        double w1 = std::cos(chi), w2 = std::sin(chi);
        double Fstar = conorm(p.r, w1, w2);
        if (!(Fstar > 0.0)) raise(Errc::OptimizationNoConverge, "co-norm not positive");
        return (p.rho * w1 + p.phi * w2) / Fstar;
    };
    return periodic_maximize(pairing).value;
}

PeriodicMaxResult periodic_maximize(const std::function<double(double)>& fn,
                                    double tol, std::size_t coarse) {
    const double two_pi = 2.0 * M_PI;
    double best = -std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    std::vector<double> vals(coarse);
    for (std::size_t i = 0; i < coarse; ++i) {
        double psi = two_pi * static_cast<double>(i) / static_cast<double>(coarse);
        vals[i] = fn(psi);
        if (vals[i] > best) {
            best = vals[i];
            best_i = i;
        }
    }
    double step = two_pi / static_cast<double>(coarse);
    double lo = step * (static_cast<double>(best_i) - 1.0);
    double hi = step * (static_cast<double>(best_i) + 1.0);

    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = hi - inv_phi * (hi - lo);
    double x2 = lo + inv_phi * (hi - lo);
    double f1 = fn(x1), f2 = fn(x2);
    std::size_t iter = 0;
    const std::size_t cap = 200;
    while (hi - lo > tol) {
        if (++iter > cap) raise(Errc::OptimizationNoConverge, "golden-section bracket stalled");
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + inv_phi * (hi - lo);
            f2 = fn(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - inv_phi * (hi - lo);
            f1 = fn(x1);
        }
    }
    PeriodicMaxResult res;
    res.arg = 0.5 * (lo + hi);
    res.value = std::max(f1, f2);
    return res;
}

AxiomReport check_axioms(const NormSpec& spec, std::size_t sample_count, std::uint64_t seed) {
    AxiomReport rep;
    rep.sample_count = sample_count;
    rep.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const double R = spec.inner_radius();

    rep.positivity = {true, std::numeric_limits<double>::infinity(), {}};
    rep.homogeneity = {true, 0.0, {}};
    rep.reversibility = {true, 0.0, {}};
    rep.convexity = {true, std::numeric_limits<double>::infinity(), {}};
    const double lambdas[] = {0.5, 2.0, 10.0};

    for (std::size_t i = 0; i < sample_count; ++i) {
        FiberPoint p;
        p.r = R + (1.0 - R) * u01(rng);
        double psi = 2.0 * M_PI * u01(rng);
        double mag = std::pow(10.0, -1.0 + 2.0 * u01(rng)); // log-uniform in [0.1, 10]
        p.rho = mag * std::cos(psi);
        p.phi = mag * std::sin(psi);

        double F;
        try {
            F = spec.norm(p.r, p.rho, p.phi);
        } catch (const Error&) {
            rep.positivity.pass = false;
            rep.positivity.margin = -1.0;
            rep.positivity.where = p;
            continue;
        }
        if (F < rep.positivity.margin) {
            rep.positivity.margin = F;
            rep.positivity.where = p;
        }
        if (!(F > 0.0)) rep.positivity.pass = false;

        for (double l : lambdas) {
            double Fl = spec.norm(p.r, l * p.rho, l * p.phi);
            double viol = std::abs(Fl - l * F) / (l * F);
            if (viol > rep.homogeneity.margin) {
                rep.homogeneity.margin = viol;
                rep.homogeneity.where = p;
            }
        }

        double Fm = spec.norm(p.r, -p.rho, -p.phi);
        double rev = std::abs(Fm - F) / F;
        if (rev > rep.reversibility.margin) {
            rep.reversibility.margin = rev;
            rep.reversibility.where = p;
        }

        try {
            MetricTensor2 g = metric_tensor(spec, p);
            // Smallest eigenvalue of the 2x2, normalized by the trace.
            double tr = g.g11 + g.g22;
            double disc = std::sqrt(std::max(0.0, 0.25 * tr * tr - g.det));
            double eig_min = 0.5 * tr - disc;
            double margin = eig_min / std::max(1.0, tr);
            if (margin < rep.convexity.margin) {
                rep.convexity.margin = margin;
                rep.convexity.where = p;
            }
        } catch (const Error&) {
            rep.convexity.pass = false;
            rep.convexity.margin = -1.0;
            rep.convexity.where = p;
        }
    }

    if (!(rep.positivity.margin > 0.0)) rep.positivity.pass = false;
    rep.homogeneity.pass = rep.homogeneity.margin <= 1e-9;
    rep.reversibility.pass = rep.reversibility.margin <= 1e-9;
    if (!(rep.convexity.margin > 0.0)) rep.convexity.pass = false;
    return rep;
}

std::string AxiomReport::to_json_string(int indent) const {
    using detail::json;
    auto check = [](const AxiomCheck& c) {
        json j;
        j["pass"] = c.pass;
        j["margin"] = c.margin;
        j["where"] = {{"r", c.where.r}, {"rho", c.where.rho}, {"phi", c.where.phi}};
        return j;
    };
    json j;
    j["pass"] = pass();
    j["positivity"] = check(positivity);
    j["homogeneity"] = check(homogeneity);
    j["reversibility"] = check(reversibility);
    j["convexity"] = check(convexity);
    j["sample_count"] = sample_count;
    j["seed"] = seed;
    return j.dump(indent);
}

} // namespace fxray

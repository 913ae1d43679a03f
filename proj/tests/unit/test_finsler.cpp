#include <doctest.h>

#include <cmath>
#include <random>

#include "fxray/error.hpp"
#include "fxray/finsler.hpp"
#include "fxray/norm_spec.hpp"
#include "test_specs.hpp"

using namespace fxray;

TEST_SUITE_BEGIN("finsler");

TEST_CASE("eval_norm closed forms") {
    CHECK(eval_norm(testspecs::euclid(), {0.8, 0.0, 1.0}) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(eval_norm(testspecs::euclid(), {0.8, 0.0, 0.0}) == 0.0);
    CHECK(eval_norm(testspecs::aniso(0.3), {0.8, 0.0, 0.0}) == 0.0);

    // constant anisotropic speed c = 2
    NormSpec c2 = NormSpec::anisotropic_speed(0.3, {RadialProfile::constant(2.0)});
    CHECK(eval_norm(c2, {0.5, 3.0, 8.0}) == doctest::Approx(2.5).epsilon(1e-14));

    CHECK_THROWS_AS((void)eval_norm(testspecs::euclid(), {0.1, 1.0, 0.0}), Error);
    NormSpec bad = NormSpec::radial_riemannian(0.3, RadialProfile::polynomial({0.5, -1.0}));
    CHECK_THROWS_AS((void)eval_norm(bad, {0.9, 1.0, 0.0}), Error); // c(0.9) < 0
}

TEST_CASE("metric tensor closed forms") {
    for (double rho : {0.0, 1.0, -0.3})
        for (double phi : {1.0, 0.2}) {
            MetricTensor2 g = metric_tensor(testspecs::euclid(), {0.8, rho, phi});
            CHECK(g.g11 == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(g.g12 == doctest::Approx(0.0).epsilon(1e-12));
            CHECK(g.g22 == doctest::Approx(0.64).epsilon(1e-12));
        }
    // g = e / c^2 with c = 2 - r at r = 0.5: diag(1, 0.25) / 2.25
    MetricTensor2 g = metric_tensor(testspecs::radial_slow(), {0.5, 0.7, -0.2});
    CHECK(g.g11 == doctest::Approx(1.0 / 2.25).epsilon(1e-12));
    CHECK(g.g22 == doctest::Approx(0.25 / 2.25).epsilon(1e-12));
    CHECK(g.g12 == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("analytic vs finite-difference derivatives agree") {
    NormSpec spec = testspecs::aniso();
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int i = 0; i < 50; ++i) {
        FiberPoint p{0.7 + 0.3 * u(rng), std::cos(6.28 * u(rng)), std::sin(6.28 * u(rng))};
        MetricTensor2 ga = metric_tensor(spec, p);
        MetricTensor2 gf = metric_tensor_fd(spec, p);
        CHECK(std::abs(ga.g11 - gf.g11) <= 1e-6);
        CHECK(std::abs(ga.g12 - gf.g12) <= 1e-6);
        CHECK(std::abs(ga.g22 - gf.g22) <= 1e-6);
        CHECK(std::abs(radial_f2_derivative(spec, p) - radial_f2_derivative_fd(spec, p)) <= 1e-6);
    }
}

TEST_CASE("metric tensor rejects near-zero fibers and non-convex norms") {
    CHECK_THROWS_AS((void)metric_tensor(testspecs::euclid(), {0.5, 1e-12, 0.0}), Error);
    // A deliberately concave fiber norm: F = (|rho|^0.5 + |phi|^0.5)^2 is
    // homogeneous but its unit ball is not convex.
    NormSpec concave = NormSpec::from_function(
        0.3,
        [](double, double rho, double phi) {
            double s = std::sqrt(std::abs(rho)) + std::sqrt(std::abs(phi));
            return s * s * s * s;
        },
        "concave", true);
    CHECK_THROWS_AS((void)metric_tensor(concave, {0.5, 1.0, 1.0}), Error);
}

TEST_CASE("spray coefficients: Euclidean polar") {
    for (double r : {0.4, 0.8})
        for (double rho : {0.0, 0.5})
            for (double phi : {1.0, -0.7}) {
                SprayCoefficients G = spray_coefficients(testspecs::euclid(), {r, rho, phi});
                CHECK(G.G1 == doctest::Approx(-0.5 * r * phi * phi).epsilon(1e-10));
                CHECK(G.G2 == doctest::Approx(rho * phi / r).epsilon(1e-10));
            }
}

TEST_CASE("spray coefficients: radial Riemannian Christoffel oracle") {
    // g = diag(A, B), A = 1/c^2, B = r^2/c^2 with c = 2 - r. The nonzero
    // Christoffel symbols of a theta-independent diagonal metric give
    // G^1 = (A' rho^2 - B' phi^2) / (4A), G^2 = B' rho phi / (2B).
    auto oracle = [](double r, double rho, double phi) {
        double c = 2.0 - r, dc = -1.0;
        double A = 1.0 / (c * c), dA = -2.0 * dc / (c * c * c);
        double B = r * r / (c * c), dB = 2.0 * r / (c * c) - 2.0 * r * r * dc / (c * c * c);
        return SprayCoefficients{(dA * rho * rho - dB * phi * phi) / (4.0 * A),
                                 dB * rho * phi / (2.0 * B)};
    };
    NormSpec spec = testspecs::radial_slow();
    for (double r : {0.35, 0.6, 0.95})
        for (double rho : {0.0, 0.4, -1.1})
            for (double phi : {1.0, -0.6}) {
                SprayCoefficients G = spray_coefficients(spec, {r, rho, phi});
                SprayCoefficients O = oracle(r, rho, phi);
                CHECK(std::abs(G.G1 - O.G1) <= 1e-6);
                CHECK(std::abs(G.G2 - O.G2) <= 1e-6);
            }
}

TEST_CASE("spray degree-2 homogeneity") {
    for (const NormSpec& spec : {testspecs::euclid(), testspecs::aniso()}) {
        std::mt19937_64 rng(11);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double R = spec.inner_radius();
        for (int i = 0; i < 40; ++i) {
            FiberPoint p{R + (1.0 - R) * u(rng), 2.0 * u(rng) - 1.0, 2.0 * u(rng) - 1.0};
            if (std::hypot(p.rho, p.phi) < 0.1) continue;
            SprayCoefficients G = spray_coefficients(spec, p);
            SprayCoefficients G2 = spray_coefficients(spec, {p.r, 2.0 * p.rho, 2.0 * p.phi});
            double scale = std::max({std::abs(G.G1), std::abs(G.G2), 1e-3});
            CHECK(std::abs(G2.G1 - 4.0 * G.G1) <= 1e-7 * 4.0 * scale);
            CHECK(std::abs(G2.G2 - 4.0 * G.G2) <= 1e-7 * 4.0 * scale);
        }
    }
}

TEST_CASE("Euler relation g_ij y^i y^j = F^2") {
    for (const NormSpec& spec :
         {testspecs::euclid(), testspecs::radial_slow(), testspecs::aniso()}) {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double R = spec.inner_radius();
        for (int i = 0; i < 100; ++i) {
            FiberPoint p{R + (1.0 - R) * u(rng), std::cos(6.28 * u(rng)),
                         std::sin(6.28 * u(rng))};
            MetricTensor2 g = metric_tensor(spec, p);
            double quad = g.g11 * p.rho * p.rho + 2.0 * g.g12 * p.rho * p.phi +
                          g.g22 * p.phi * p.phi;
            double f2 = spec.norm_squared(p.r, p.rho, p.phi);
            CHECK(std::abs(quad - f2) <= 1e-6 * std::max(1.0, f2));
        }
    }
}

TEST_CASE("co-norm closed forms and homogeneity") {
    NormSpec spec = testspecs::euclid();
    CHECK(co_norm(spec, 0.5, 1.0, 0.0) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(co_norm(spec, 0.5, 0.0, 1.0) == doctest::Approx(2.0).epsilon(1e-9));
    double base = co_norm(spec, 0.5, 0.3, -0.8);
    CHECK(co_norm(spec, 0.5, 3.0 * 0.3, 3.0 * -0.8) == doctest::Approx(3.0 * base).epsilon(1e-10));
    CHECK_THROWS_AS((void)co_norm(spec, 0.5, 0.0, 0.0), Error);
}

TEST_CASE("legendre transform recovers the norm (double dual)") {
    NormSpec spec = testspecs::euclid();
    ConormFn conorm = [&](double r, double pr, double pt) { return co_norm(spec, r, pr, pt); };
    CHECK(legendre_norm_from_conorm(conorm, {0.5, 0.0, 1.0}) ==
          doctest::Approx(0.5).epsilon(1e-8));

    for (const NormSpec& s : {testspecs::radial_slow(), testspecs::aniso()}) {
        ConormFn cn = [&](double r, double pr, double pt) { return co_norm(s, r, pr, pt); };
        std::mt19937_64 rng(17);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        double R = s.inner_radius();
        double worst = 0.0;
        for (int i = 0; i < 100; ++i) {
            FiberPoint p{R + (1.0 - R) * u(rng), std::cos(6.28 * u(rng)),
                         std::sin(6.28 * u(rng))};
            double F = s.norm(p.r, p.rho, p.phi);
            double Fdd = legendre_norm_from_conorm(cn, p);
            worst = std::max(worst, std::abs(Fdd - F) / F);
        }
        CHECK(worst <= 1e-5);
    }
    // homogeneity of the Legendre transform
    ConormFn cn = [&](double r, double pr, double pt) { return co_norm(spec, r, pr, pt); };
    double F1 = legendre_norm_from_conorm(cn, {0.6, 0.4, 0.9});
    double F3 = legendre_norm_from_conorm(cn, {0.6, 1.2, 2.7});
    CHECK(F3 == doctest::Approx(3.0 * F1).epsilon(1e-10));
}

TEST_CASE("check_axioms verdicts") {
    AxiomReport ok = check_axioms(testspecs::euclid(), 1000, 42);
    CHECK(ok.pass());
    CHECK(ok.positivity.margin > 0.0);
    CHECK(ok.convexity.margin > 0.0);

    // non-reversible counterexample: c = 1 + 0.5 sign(phi)
    NormSpec nonrev = NormSpec::from_function(
        0.3,
        [](double r, double rho, double phi) {
            double c = 1.0 + 0.5 * (phi > 0.0 ? 1.0 : (phi < 0.0 ? -1.0 : 0.0));
            return (rho * rho + r * r * phi * phi) / (c * c);
        },
        "sign_speed", false);
    AxiomReport bad = check_axioms(nonrev, 300, 42);
    CHECK_FALSE(bad.reversibility.pass);

    AxiomReport an = check_axioms(testspecs::aniso(), 1000, 42);
    CHECK(an.pass());
}

TEST_CASE("tabulated fiber family matches its source within 1e-4") {
    NormSpec src = testspecs::aniso();
    NormSpec tab = src.tabulate(48, 96);
    CHECK(tab.family() == "tabulated_fiber");
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int i = 0; i < 200; ++i) {
        double r = 0.7 + 0.3 * u(rng);
        double psi = 6.28 * u(rng);
        double mag = 0.5 + 2.0 * u(rng);
        double F0 = src.norm(r, mag * std::cos(psi), mag * std::sin(psi));
        double F1 = tab.norm(r, mag * std::cos(psi), mag * std::sin(psi));
        worst = std::max(worst, std::abs(F1 - F0) / F0);
    }
    CHECK(worst <= 1e-4);
    AxiomReport rep = check_axioms(tab, 300, 5);
    CHECK(rep.pass());
}

TEST_SUITE_END();

#include <doctest.h>

#include <cmath>

#include "fxray/error.hpp"
#include "fxray/herglotz.hpp"
#include "test_specs.hpp"

using namespace fxray;

TEST_SUITE_BEGIN("herglotz");

TEST_CASE("Euclidean margin is 2R up to the grid offset") {
    HerglotzReport rep = check_herglotz(testspecs::euclid(0.3), 200, 2);
    CHECK(rep.pass);
    // d(F^2)/dr (r,0,phi) = 2 r phi^2; the grid's innermost point sits a
    // hair above R.
    CHECK(rep.min_margin == doctest::Approx(0.6).epsilon(2e-3));
    CHECK(rep.argmin_r == doctest::Approx(0.3).epsilon(1e-3));
}

TEST_CASE("radial speeds reduce to the classical condition") {
    CHECK(check_herglotz(testspecs::radial_slow()).pass);

    HerglotzReport bad = check_herglotz(testspecs::herglotz_violator());
    CHECK_FALSE(bad.pass);
    CHECK(bad.min_margin < 0.0);

    // sign(min margin) matches sign(min d/dr (r/c)) computed in closed form
    auto closed_form_sign = [](auto c, auto dc, double R) {
        double worst = 1e300;
        for (int i = 0; i <= 400; ++i) {
            double r = R + 1e-6 + (1.0 - R - 1e-6) * i / 400.0;
            worst = std::min(worst, (c(r) - r * dc(r)) / (c(r) * c(r)));
        }
        return worst > 0.0 ? 1 : -1;
    };
    int slow_sign = closed_form_sign([](double r) { return 2.0 - r; },
                                     [](double) { return -1.0; }, 0.3);
    int viol_sign = closed_form_sign([](double r) { return r * r; },
                                     [](double r) { return 2.0 * r; }, 0.3);
    CHECK(slow_sign == 1);
    CHECK(viol_sign == -1);
    CHECK((check_herglotz(testspecs::radial_slow()).min_margin > 0.0) == (slow_sign > 0));
    CHECK((bad.min_margin > 0.0) == (viol_sign > 0));
}

TEST_CASE("anisotropic example passes") {
    HerglotzReport rep = check_herglotz(testspecs::aniso(), 200, 2);
    CHECK(rep.pass);
}

TEST_CASE("turning acceleration closed forms") {
    TurningAcceleration acc = turning_acceleration(testspecs::euclid(), 0.5);
    CHECK(acc.a == doctest::Approx(2.0).epsilon(1e-10)); // straight chord: a = 1/r0
    CHECK(acc.asymmetry <= 1e-9 * acc.a);

    TurningAcceleration acc2 = turning_acceleration(testspecs::aniso(), 0.85);
    CHECK(acc2.a > 0.0);
    CHECK(acc2.asymmetry <= 1e-9 * acc2.a);

    CHECK_THROWS_AS((void)turning_acceleration(testspecs::herglotz_violator(), 0.5), Error);
    CHECK_THROWS_AS((void)turning_acceleration(testspecs::euclid(), 0.2), Error);
}

TEST_CASE("turning acceleration bounded over the annulus") {
    for (const NormSpec& spec : {testspecs::euclid(), testspecs::radial_slow(),
                                 testspecs::aniso()}) {
        double lo = 1e300, hi = 0.0;
        double R = spec.inner_radius();
        for (int i = 0; i <= 30; ++i) {
            double r0 = R + 0.02 + (0.997 - R - 0.02) * i / 30.0;
            double a = turning_acceleration(spec, r0).a;
            lo = std::min(lo, a);
            hi = std::max(hi, a);
        }
        CHECK(lo > 0.0);
        CHECK(hi < 1e3);
    }
}

TEST_CASE("foliation margins") {
    FoliationReport eu = check_foliation(testspecs::euclid(), 32);
    CHECK(eu.pass);
    // Straight chords give d^2/dt^2 (1 - |x|^2) = -2 identically.
    for (double m : eu.margins) CHECK(m == doctest::Approx(-2.0).epsilon(1e-8));

    FoliationReport bad = check_foliation(testspecs::herglotz_violator(), 32);
    CHECK_FALSE(bad.pass);
    CHECK(bad.max_margin > 0.0);

    // Lemma restated pointwise: Herglotz-passing specs have strictly
    // negative convexity margins at every tested radius.
    for (const NormSpec& spec : {testspecs::radial_slow(), testspecs::aniso()}) {
        FoliationReport rep = check_foliation(spec, 48);
        CHECK(rep.pass);
        CHECK(rep.max_margin < 0.0);
    }
}

TEST_CASE("reports serialize") {
    std::string h = check_herglotz(testspecs::euclid(), 16, 2).to_json_string();
    CHECK(h.find("\"pass\":true") != std::string::npos);
    CHECK(h.find("min_margin") != std::string::npos);
    CHECK(h.find("\"grid\"") != std::string::npos);
}

TEST_SUITE_END();

#include <doctest.h>

#include <cmath>

#include "fxray/elastic.hpp"
#include "fxray/error.hpp"
#include "fxray/io.hpp"
#include "fxray/norm_spec.hpp"
#include "test_specs.hpp"

using namespace fxray;

TEST_SUITE_BEGIN("io");

TEST_CASE("norm spec JSON round trips") {
    auto roundtrip_matches = [](const NormSpec& spec) {
        NormSpec back = NormSpec::from_json_string(spec.to_json_string());
        CHECK(back.family() == spec.family());
        CHECK(back.inner_radius() == spec.inner_radius());
        double R = spec.inner_radius();
        for (double r : {R + 0.01, 0.5 * (R + 1.0), 0.99})
            for (double psi : {0.3, 2.2, 4.0}) {
                double a = spec.norm(r, std::cos(psi), std::sin(psi));
                double b = back.norm(r, std::cos(psi), std::sin(psi));
                CHECK(a == doctest::Approx(b).epsilon(1e-14));
            }
    };
    roundtrip_matches(testspecs::euclid());
    roundtrip_matches(testspecs::radial_slow());
    roundtrip_matches(testspecs::aniso());
    roundtrip_matches(testspecs::aniso().tabulate(16, 32));
    roundtrip_matches(NormSpec::conformal_scaled(testspecs::euclid(),
                                                 RadialProfile::polynomial({1.0, -1.0}), 0.1));
    // tabulated-profile radial speed
    roundtrip_matches(NormSpec::radial_riemannian(
        0.4, RadialProfile::tabulated({0.4, 0.6, 0.8, 1.0}, {1.0, 1.1, 1.3, 1.4})));
}

TEST_CASE("elastic spec JSON round trips") {
    std::vector<double> r = {0.5, 0.75, 1.0};
    std::vector<StiffnessTensor> s(3, StiffnessTensor::isotropic(2.0, 1.0, 1.0));
    NormSpec spec = build_slice_norm(StiffnessProfile(r, s), 0.5);
    NormSpec back = NormSpec::from_json_string(spec.to_json_string());
    CHECK(back.family() == "elastic_derived");
    CHECK(back.norm(0.8, 0.3, 0.7) == doctest::Approx(spec.norm(0.8, 0.3, 0.7)).epsilon(1e-12));
}

TEST_CASE("malformed inputs raise ConfigError") {
    CHECK_THROWS_AS((void)NormSpec::from_json_string("{not json"), Error);
    CHECK_THROWS_AS((void)NormSpec::from_json_string("{\"family\":\"nope\",\"R\":0.5}"), Error);
    CHECK_THROWS_AS((void)NormSpec::from_json_string("{\"R\":0.5}"), Error);
    try {
        (void)NormSpec::from_json_string("{]");
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == Errc::ConfigError);
    }
}

TEST_CASE("field spec from JSON") {
    std::vector<double> grid = {0.3, 0.5, 0.7, 0.9, 1.0};
    AnnulusFunction f = io::field_from_json(
        R"({"modes":[{"k":0,"re":{"poly":[1.0]}},{"k":2,"re":{"poly":[0.0,1.0]},"im":{"poly":[0.5]}}]})",
        grid);
    CHECK(f.k_max() == 2);
    CHECK(f.mode(0)[0] == std::complex<double>(1.0, 0.0));
    CHECK(f.mode(2)[1] == std::complex<double>(0.5, 0.5));
    CHECK(f.mode(-2)[1] == std::complex<double>(0.5, -0.5));
}

TEST_CASE("sinogram CSV round trip") {
    Sinogram sino;
    sino.r0 = {0.4, 0.5, 0.6};
    sino.theta0 = {0.0, 1.5707963267948966, 3.141592653589793};
    sino.values = {1.0, 2.0, 3.0, 4.5e-17, 5.0, -6.25, 7.0, 8.0, 9.000000001};
    Sinogram back = io::sinogram_from_csv(io::sinogram_to_csv(sino));
    REQUIRE(back.r0.size() == 3);
    REQUIRE(back.theta0.size() == 3);
    for (std::size_t i = 0; i < sino.values.size(); ++i)
        CHECK(back.values[i] == sino.values[i]); // format_double round-trips exactly
}

TEST_CASE("geodesic record CSV shape") {
    GeodesicRecord rec = trace_tangential(testspecs::euclid(), 0.5, 0.25);
    std::string csv = io::record_to_csv(rec);
    CHECK(csv.rfind("r,t,omega,rdot\n", 0) == 0);
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == rec.samples.size() + 1);
    std::string hdr = io::record_header_json(rec);
    CHECK(hdr.find("\"r0\":0.5") != std::string::npos);
    CHECK(hdr.find("\"theta0\":0.25") != std::string::npos);
}

TEST_CASE("format_double is stable and lossless") {
    for (double x : {1.0 / 3.0, 2.6339157938496336, 1e-300, -0.0, 123456789.123456789}) {
        std::string s = io::format_double(x);
        CHECK(std::stod(s) == x);
        CHECK(io::format_double(x) == s);
    }
}

TEST_CASE("operator export carries grid metadata") {
    NormSpec spec = testspecs::euclid();
    std::vector<double> grid(16);
    for (std::size_t i = 0; i < 16; ++i) grid[i] = 0.3 + 0.7 * i / 15.0;
    grid.back() = 1.0;
    std::vector<AbelKernelRow> rows;
    for (std::size_t i = 1; i + 1 < grid.size(); ++i)
        rows.push_back(kernel_from_trace(trace_tangential(spec, grid[i]),
                                         turning_acceleration(spec, grid[i])));
    AbelOperator op = discretize(rows, grid, 2);
    std::string side = io::operator_sidecar_json(op);
    CHECK(side.find("\"k\":2") != std::string::npos);
    CHECK(side.find("\"alpha\":0.5") != std::string::npos);
    std::string csv = io::operator_to_csv(op);
    std::size_t lines = 0;
    for (char ch : csv)
        if (ch == '\n') ++lines;
    CHECK(lines == op.rows());
}

TEST_SUITE_END();

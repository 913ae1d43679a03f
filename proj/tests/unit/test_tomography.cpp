#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "fxray/error.hpp"
#include "fxray/tomography.hpp"
#include "test_specs.hpp"

using namespace fxray;

namespace {

std::vector<double> uniform_grid(double R, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i)
        g[i] = R + (1.0 - R) * static_cast<double>(i) / static_cast<double>(n - 1);
    g.back() = 1.0;
    return g;
}

// smooth radial bump vanishing at both ends of [R, 1]
double bump(double r, double R) {
    double x = (r - R) / (1.0 - R);
    return x * x * (1.0 - x) * (1.0 - x) * 16.0;
}

AnnulusFunction test_field(double R, const std::vector<double>& grid) {
    AnnulusFunction f(3, grid, true);
    std::vector<std::complex<double>> a0(grid.size()), a1(grid.size()), a3(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        double b = bump(grid[i], R);
        a0[i] = b;
        a1[i] = {0.4 * b, 0.1 * b};
        a3[i] = {-0.25 * b, 0.2 * b};
    }
    f.set_mode(0, a0);
    f.set_mode(1, a1);
    f.set_mode(3, a3);
    return f;
}

} // namespace

TEST_SUITE_BEGIN("tomography");

TEST_CASE("decompose: single modes and round trip") {
    std::vector<double> grid = uniform_grid(0.3, 33);
    const std::size_t n_theta = 16;
    std::vector<double> samples(grid.size() * n_theta);
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < n_theta; ++j) {
            double th = 2.0 * M_PI * j / static_cast<double>(n_theta);
            samples[i * n_theta + j] = (1.0 - grid[i]) * std::cos(3.0 * th);
        }
    bool alias = true;
    AnnulusFunction f = decompose(samples, grid, n_theta, 5, true, &alias);
    CHECK_FALSE(alias);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(std::abs(f.mode(3)[i] - std::complex<double>(0.5 * (1.0 - grid[i]), 0.0)) <= 1e-12);
        CHECK(std::abs(f.mode(0)[i]) <= 1e-12);
        CHECK(std::abs(f.mode(2)[i]) <= 1e-12);
    }
    // conjugate symmetry of the implied negative mode
    CHECK(std::abs(f.mode(-3)[5] - std::conj(f.mode(3)[5])) == 0.0);

    // resynthesis reproduces the samples
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < n_theta; ++j) {
            double th = 2.0 * M_PI * j / static_cast<double>(n_theta);
            worst = std::max(worst,
                             std::abs(f.synthesize_real(grid[i], th) - samples[i * n_theta + j]));
        }
    CHECK(worst <= 1e-12);

    // constant field: only a_0
    std::vector<double> ones(grid.size() * n_theta, 1.0);
    AnnulusFunction g = decompose(ones, grid, n_theta, 5, true, &alias);
    CHECK(std::abs(g.mode(0)[3] - 1.0) <= 1e-13);
    CHECK(std::abs(g.mode(1)[3]) <= 1e-13);

    // energy at the top mode raises the alias warning
    std::vector<double> aliased(grid.size() * n_theta);
    for (std::size_t i = 0; i < grid.size(); ++i)
        for (std::size_t j = 0; j < n_theta; ++j)
            aliased[i * n_theta + j] = std::cos(5.0 * 2.0 * M_PI * j / n_theta);
    (void)decompose(aliased, grid, n_theta, 5, true, &alias);
    CHECK(alias);
}

TEST_CASE("forward_direct closed forms on chords") {
    NormSpec spec = testspecs::euclid();
    std::vector<double> grid = uniform_grid(0.3, 65);

    AnnulusFunction one(0, grid, true);
    one.set_mode(0, std::vector<std::complex<double>>(grid.size(), 1.0));
    CHECK(forward_direct(spec, one, 0.5, 0.7) ==
          doctest::Approx(std::sqrt(3.0)).epsilon(1e-7));

    AnnulusFunction zero(0, grid, true);
    CHECK(forward_direct(spec, zero, 0.5, 0.0) == doctest::Approx(0.0).epsilon(1e-14));

    // f = 1/r: If = 2 ln((1 + sqrt(1 - r0^2)) / r0)
    AnnulusFunction inv_r(0, grid, true);
    std::vector<std::complex<double>> vals(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) vals[i] = 1.0 / grid[i];
    inv_r.set_mode(0, vals);
    double expected = 2.0 * std::log((1.0 + std::sqrt(0.75)) / 0.5);
    CHECK(expected == doctest::Approx(2.6339158).epsilon(1e-7)); // frozen closed form
    CHECK(forward_direct(spec, inv_r, 0.5, 0.0) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("Abel-reduced ray values match direct integration") {
    for (const NormSpec& spec : {testspecs::euclid(), testspecs::aniso()}) {
        double R = spec.inner_radius();
        std::vector<double> grid = uniform_grid(R, 129);
        AnnulusFunction f = test_field(R, grid);
        std::mt19937_64 rng(31);
        std::uniform_real_distribution<double> u(0.0, 1.0);
        for (int i = 0; i < 10; ++i) {
            double r0 = R + (0.97 - R) * u(rng) + 0.01;
            double th0 = 2.0 * M_PI * u(rng);
            double direct = forward_direct(spec, f, r0, th0);
            double reduced = forward_abel_ray(spec, f, r0, th0);
            CHECK(std::abs(reduced - direct) <= 1e-4 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("pipeline: operator route agrees with per-mode time quadrature") {
    NormSpec spec = testspecs::euclid();
    PipelineOptions opts;
    opts.n_r = 128;
    opts.n_theta = 16;
    opts.k_max = 4;
    TomographyPipeline pipe(spec, opts);
    AnnulusFunction f = test_field(0.3, pipe.grid());

    Sinogram direct = pipe.forward_direct_grid(f);
    Sinogram abel = pipe.forward_abel(f);
    double worst = 0.0, scale = 0.0;
    for (double v : direct.values) scale = std::max(scale, std::abs(v));
    for (std::size_t i = 0; i < direct.values.size(); ++i)
        worst = std::max(worst, std::abs(direct.values[i] - abel.values[i]));
    CHECK(worst <= 1e-4 * scale);
}

TEST_CASE("single-mode data stays single-mode") {
    NormSpec spec = testspecs::euclid();
    PipelineOptions opts;
    opts.n_r = 96;
    opts.n_theta = 16;
    opts.k_max = 5;
    TomographyPipeline pipe(spec, opts);

    AnnulusFunction f(3, pipe.grid(), true);
    std::vector<std::complex<double>> a3(pipe.grid().size());
    for (std::size_t i = 0; i < pipe.grid().size(); ++i) a3[i] = bump(pipe.grid()[i], 0.3);
    f.set_mode(3, a3);

    Sinogram sino = pipe.forward_direct_grid(f);
    // theta0-DFT of each row must live in modes +-3 only
    const std::size_t n = sino.theta0.size();
    double leak = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < sino.r0.size(); ++i) {
        for (int m = 0; m <= static_cast<int>(n) / 2; ++m) {
            std::complex<double> acc = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                acc += sino.at(i, j) * std::exp(std::complex<double>(0.0, -m * sino.theta0[j]));
            double mag = std::abs(acc) / static_cast<double>(n);
            if (m == 3)
                scale = std::max(scale, mag);
            else
                leak = std::max(leak, mag);
        }
    }
    CHECK(leak <= 1e-9 * std::max(scale, 1e-12));
}

TEST_CASE("reconstruction round trip, zero data and linearity") {
    NormSpec spec = testspecs::euclid();
    PipelineOptions opts;
    opts.n_r = 128;
    opts.n_theta = 16;
    opts.k_max = 4;
    TomographyPipeline pipe(spec, opts);
    AnnulusFunction f = test_field(0.3, pipe.grid());

    Sinogram sino = pipe.forward_direct_grid(f);
    AnnulusFunction rec = pipe.reconstruct(sino, 1e-10);
    CHECK(relative_l2_error(rec, f) <= 0.03);

    // zero data -> exactly zero output
    Sinogram zero = sino;
    std::fill(zero.values.begin(), zero.values.end(), 0.0);
    AnnulusFunction zf = pipe.reconstruct(zero, 1e-10);
    CHECK(zf.l2_norm() <= 1e-8);

    // linearity of the whole chain
    AnnulusFunction g(1, pipe.grid(), true);
    std::vector<std::complex<double>> a1(pipe.grid().size());
    for (std::size_t i = 0; i < pipe.grid().size(); ++i)
        a1[i] = 0.3 * bump(pipe.grid()[i], 0.3) * pipe.grid()[i];
    g.set_mode(1, a1);
    Sinogram sg = pipe.forward_direct_grid(g);

    Sinogram combo = sino;
    for (std::size_t i = 0; i < combo.values.size(); ++i)
        combo.values[i] = 2.0 * sino.values[i] - 0.5 * sg.values[i];
    AnnulusFunction rec_combo = pipe.reconstruct(combo, 1e-10);
    AnnulusFunction rec_g = pipe.reconstruct(sg, 1e-10);

    double worst = 0.0;
    for (double r : {0.4, 0.6, 0.9})
        for (double th : {0.0, 1.0, 2.5, 5.0}) {
            double lhs = rec_combo.synthesize_real(r, th);
            double rhs = 2.0 * rec.synthesize_real(r, th) - 0.5 * rec_g.synthesize_real(r, th);
            worst = std::max(worst, std::abs(lhs - rhs));
        }
    CHECK(worst <= 1e-9);
}

TEST_CASE("rotation equivariance of the pipeline") {
    NormSpec spec = testspecs::euclid();
    PipelineOptions opts;
    opts.n_r = 96;
    opts.n_theta = 16;
    opts.k_max = 3;
    TomographyPipeline pipe(spec, opts);
    AnnulusFunction f = test_field(0.3, pipe.grid());
    Sinogram sino = pipe.forward_direct_grid(f);

    // rotating f by one theta0 grid step cyclically shifts the sinogram
    Sinogram shifted = sino;
    const std::size_t n = sino.theta0.size();
    for (std::size_t i = 0; i < sino.r0.size(); ++i)
        for (std::size_t j = 0; j < n; ++j) shifted.at(i, j) = sino.at(i, (j + n - 1) % n);
    double dth = sino.theta0[1] - sino.theta0[0];

    AnnulusFunction rec = pipe.reconstruct(sino, 1e-10);
    AnnulusFunction rec_shift = pipe.reconstruct(shifted, 1e-10);
    double worst = 0.0;
    for (double r : {0.45, 0.7, 0.95})
        for (double th : {0.3, 1.7, 4.1})
            worst = std::max(worst, std::abs(rec_shift.synthesize_real(r, th) -
                                             rec.synthesize_real(r, th - dth)));
    CHECK(worst <= 1e-8);
}

TEST_CASE("randomized radial speeds: reduction and round trip hold familywide") {
    // Draw random quadratic sound speeds, keep the Herglotz-passing ones,
    // and check the reduction identity plus the reconstruction round trip
    // on each.
    std::mt19937_64 rng(2718);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    const double R = 0.3;
    int accepted = 0, attempts = 0;
    while (accepted < 3 && attempts < 40) {
        ++attempts;
        double a = -0.3 + 1.5 * u(rng);
        double b = -0.5 + 1.0 * u(rng);
        // c(r) = 1 + a (r - R) + b (r - R)^2
        RadialProfile c = RadialProfile::polynomial(
            {1.0 - a * R + b * R * R, a - 2.0 * b * R, b});
        bool positive = true;
        for (int i = 0; i <= 20; ++i)
            positive = positive && c.value(R + (1.0 - R) * i / 20.0) > 0.2;
        if (!positive) continue;
        NormSpec spec = NormSpec::radial_riemannian(R, c);
        if (!check_herglotz(spec, 64).pass) continue;
        ++accepted;

        PipelineOptions opts;
        opts.n_r = 96;
        opts.n_theta = 8;
        opts.k_max = 2;
        TomographyPipeline pipe(spec, opts);
        AnnulusFunction f(2, pipe.grid(), true);
        std::vector<std::complex<double>> a0(pipe.grid().size()), a2(pipe.grid().size());
        for (std::size_t i = 0; i < pipe.grid().size(); ++i) {
            double bmp = bump(pipe.grid()[i], R);
            a0[i] = bmp;
            a2[i] = std::complex<double>(0.4, -0.3) * bmp;
        }
        f.set_mode(0, a0);
        f.set_mode(2, a2);

        for (int ray = 0; ray < 5; ++ray) {
            double r0 = R + 0.02 + (0.96 - R) * u(rng);
            double th0 = 2.0 * M_PI * u(rng);
            double direct = forward_direct(spec, f, r0, th0);
            double reduced = forward_abel_ray(spec, f, r0, th0);
            CHECK(std::abs(direct - reduced) <= 1e-4 * std::max(1.0, std::abs(direct)));
        }
        AnnulusFunction rec = pipe.reconstruct(pipe.forward_direct_grid(f), 1e-10);
        CHECK(relative_l2_error(rec, f) <= 0.05);
    }
    CHECK(accepted == 3);
}

TEST_CASE("sinogram mode analysis: conjugate symmetry of real data") {
    NormSpec spec = testspecs::euclid();
    PipelineOptions opts;
    opts.n_r = 64;
    opts.n_theta = 16;
    opts.k_max = 3;
    TomographyPipeline pipe(spec, opts);
    Sinogram sino = pipe.forward_direct_grid(test_field(0.3, pipe.grid()));
    auto modes = sinogram_modes(sino, 3);
    for (int k = 1; k <= 3; ++k)
        for (std::size_t i = 0; i < sino.r0.size(); i += 9) {
            std::complex<double> dp = modes[static_cast<std::size_t>(3 + k)][i];
            std::complex<double> dm = modes[static_cast<std::size_t>(3 - k)][i];
            CHECK(std::abs(dm - std::conj(dp)) <= 1e-12 * std::max(1.0, std::abs(dp)));
        }
}

TEST_CASE("grid mismatch raises") {
    NormSpec spec = testspecs::euclid();
    PipelineOptions opts;
    opts.n_r = 32;
    opts.n_theta = 8;
    opts.k_max = 2;
    TomographyPipeline pipe(spec, opts);
    Sinogram bad;
    bad.r0 = {0.4, 0.5};
    bad.theta0 = {0.0, 1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 6.2};
    bad.values.assign(16, 0.0);
    CHECK_THROWS_AS((void)pipe.reconstruct(bad, 1e-10), Error);
}

TEST_SUITE_END();

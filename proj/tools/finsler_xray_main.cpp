// finsler-xray: geodesic ray transforms, Abel reduction and reconstruction
// on spherically symmetric Finsler annuli, driven by JSON configs.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "fxray/elastic.hpp"
#include "fxray/error.hpp"
#include "fxray/finsler.hpp"
#include "fxray/herglotz.hpp"
#include "fxray/io.hpp"
#include "fxray/linearization.hpp"
#include "fxray/parallel.hpp"
#include "fxray/tomography.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace fxray;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

struct RunConfig {
    NormSpec spec;
    PipelineOptions pipeline;
    double lambda = 1e-10;
    std::uint64_t seed = 1;
    fs::path out = "out";
    json raw;
};

json load_json_file(const std::string& path) {
    json j = json::parse(io::read_file(path), nullptr, false);
    if (j.is_discarded()) raise(Errc::ConfigError, "malformed JSON in " + path);
    return j;
}

RunConfig parse_config(const std::string& path, const std::string& out_override) {
    RunConfig cfg;
    cfg.raw = load_json_file(path);
    const json& j = cfg.raw;

    if (j.contains("spec_file"))
        cfg.spec = NormSpec::from_json_string(io::read_file(j["spec_file"].get<std::string>()));
    else if (j.contains("spec"))
        cfg.spec = NormSpec::from_json_string(j["spec"].dump());

    if (j.contains("grids")) {
        const json& g = j["grids"];
        if (g.contains("n_r")) cfg.pipeline.n_r = g["n_r"].get<std::size_t>();
        if (g.contains("n_theta")) cfg.pipeline.n_theta = g["n_theta"].get<std::size_t>();
        if (g.contains("k_max")) cfg.pipeline.k_max = g["k_max"].get<int>();
    }
    if (j.contains("tolerances")) {
        const json& t = j["tolerances"];
        if (t.contains("ode")) {
            double tol = t["ode"].get<double>();
            if (!(tol > 0.0)) raise(Errc::ConfigError, "ode tolerance must be positive");
            cfg.pipeline.trace.ode.abs_tol = tol;
            cfg.pipeline.trace.ode.rel_tol = tol;
        }
        if (t.contains("quadrature")) {
            double tol = t["quadrature"].get<double>();
            if (!(tol > 0.0)) raise(Errc::ConfigError, "quadrature tolerance must be positive");
            cfg.pipeline.quad.tol = tol;
        }
        if (t.contains("lambda")) {
            cfg.lambda = t["lambda"].get<double>();
            if (!(cfg.lambda > 0.0)) raise(Errc::ConfigError, "lambda must be positive");
        }
    }
    if (cfg.pipeline.k_max < 0) raise(Errc::ConfigError, "k_max must be >= 0");
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("out")) cfg.out = j["out"].get<std::string>();
    if (!out_override.empty()) cfg.out = out_override;
    return cfg;
}

void require_spec(const RunConfig& cfg) {
    if (!cfg.spec.valid()) raise(Errc::ConfigError, "config needs \"spec\" or \"spec_file\"");
}

void ensure_out(const RunConfig& cfg) { fs::create_directories(cfg.out); }

int exit_code_for(const Error& e) {
    // grid mismatches are wiring mistakes, not domain failures
    return e.code() == Errc::ConfigError || e.code() == Errc::GridMismatch ? kExitUsage
                                                                           : kExitCheckFailed;
}

void require_checks(const RunConfig& cfg, bool force) {
    if (force) return;
    AxiomReport ax = check_axioms(cfg.spec, 200, cfg.seed);
    if (!ax.pass())
        raise(Errc::NotPositiveDefinite,
              "spec fails the norm axiom checks; rerun with --force to proceed anyway");
    HerglotzReport h = check_herglotz(cfg.spec, 64);
    if (!h.pass)
        raise(Errc::HerglotzViolated,
              "spec fails the Herglotz check (margin " + std::to_string(h.min_margin) +
                  "); rerun with --force to proceed anyway");
}

AnnulusFunction field_from_config(const RunConfig& cfg, const std::vector<double>& grid) {
    if (!cfg.raw.contains("field")) raise(Errc::ConfigError, "config needs \"field\"");
    return io::field_from_json(cfg.raw["field"].dump(), grid);
}

int cmd_check(const RunConfig& cfg) {
    require_spec(cfg);
    AxiomReport axioms = check_axioms(cfg.spec, 1000, cfg.seed);
    HerglotzReport herglotz = check_herglotz(cfg.spec);
    FoliationReport foliation = check_foliation(cfg.spec);
    json rep;
    rep["axioms"] = json::parse(axioms.to_json_string());
    rep["herglotz"] = json::parse(herglotz.to_json_string());
    rep["foliation"] = json::parse(foliation.to_json_string());
    rep["pass"] = axioms.pass() && herglotz.pass && foliation.pass;
    ensure_out(cfg);
    io::write_file((cfg.out / "check_report.json").string(), rep.dump(2) + "\n");
    std::cout << rep.dump(2) << "\n";
    return rep["pass"].get<bool>() ? kExitOk : kExitCheckFailed;
}

int cmd_trace(const RunConfig& cfg) {
    require_spec(cfg);
    if (!cfg.raw.contains("r0")) raise(Errc::ConfigError, "config needs \"r0\" (list of radii)");
    std::vector<double> radii = cfg.raw["r0"].get<std::vector<double>>();
    double R = cfg.spec.inner_radius();
    for (double r0 : radii)
        if (!(r0 > R && r0 < 1.0))
            raise(Errc::ConfigError, "r0 = " + std::to_string(r0) + " outside (R, 1)");
    ensure_out(cfg);
    for (std::size_t i = 0; i < radii.size(); ++i) {
        GeodesicRecord rec = trace_tangential(cfg.spec, radii[i], 0.0, cfg.pipeline.trace);
        std::string stem = "trace_" + std::to_string(i);
        io::write_file((cfg.out / (stem + ".csv")).string(), io::record_to_csv(rec));
        io::write_file((cfg.out / (stem + ".json")).string(),
                       io::record_header_json(rec, 2) + "\n");
    }
    std::cout << "traced " << radii.size() << " geodesics into " << cfg.out.string() << "\n";
    return kExitOk;
}

int cmd_forward(const RunConfig& cfg, bool force) {
    require_spec(cfg);
    require_checks(cfg, force);
    TomographyPipeline pipe(cfg.spec, cfg.pipeline);
    AnnulusFunction f = field_from_config(cfg, pipe.grid());
    Sinogram sino = pipe.forward_direct_grid(f);
    ensure_out(cfg);
    io::write_file((cfg.out / "sinogram.csv").string(), io::sinogram_to_csv(sino));
    io::write_file((cfg.out / "sinogram.json").string(),
                   io::sinogram_manifest_json(sino, 2) + "\n");
    std::cout << "sinogram: " << sino.r0.size() << " x " << sino.theta0.size() << " rays -> "
              << (cfg.out / "sinogram.csv").string() << "\n";
    return kExitOk;
}

int cmd_invert(const RunConfig& cfg, bool force) {
    require_spec(cfg);
    require_checks(cfg, force);
    if (!cfg.raw.contains("sinogram"))
        raise(Errc::ConfigError, "config needs \"sinogram\" (CSV path)");
    Sinogram sino = io::sinogram_from_csv(io::read_file(cfg.raw["sinogram"].get<std::string>()));
    TomographyPipeline pipe(cfg.spec, cfg.pipeline);
    AnnulusFunction rec = pipe.reconstruct(sino, cfg.lambda);
    ensure_out(cfg);
    io::write_file((cfg.out / "reconstruction.csv").string(),
                   io::field_to_csv(rec, cfg.pipeline.n_theta));
    json metrics;
    metrics["lambda"] = cfg.lambda;
    metrics["l2_norm"] = rec.l2_norm();
    if (cfg.raw.contains("truth_field")) {
        AnnulusFunction truth = io::field_from_json(cfg.raw["truth_field"].dump(), pipe.grid());
        metrics["rel_l2_error"] = relative_l2_error(rec, truth);
    }
    io::write_file((cfg.out / "metrics.json").string(), metrics.dump(2) + "\n");
    std::cout << metrics.dump(2) << "\n";
    return kExitOk;
}

int cmd_roundtrip(const RunConfig& cfg, bool force) {
    require_spec(cfg);
    require_checks(cfg, force);
    TomographyPipeline pipe(cfg.spec, cfg.pipeline);
    AnnulusFunction f = field_from_config(cfg, pipe.grid());
    Sinogram sino = pipe.forward_direct_grid(f);
    AnnulusFunction rec = pipe.reconstruct(sino, cfg.lambda);
    double err = relative_l2_error(rec, f);
    ensure_out(cfg);
    io::write_file((cfg.out / "sinogram.csv").string(), io::sinogram_to_csv(sino));
    io::write_file((cfg.out / "reconstruction.csv").string(),
                   io::field_to_csv(rec, cfg.pipeline.n_theta));
    json metrics;
    metrics["rel_l2_error"] = err;
    metrics["lambda"] = cfg.lambda;
    metrics["n_r"] = cfg.pipeline.n_r;
    metrics["k_max"] = cfg.pipeline.k_max;
    io::write_file((cfg.out / "metrics.json").string(), metrics.dump(2) + "\n");
    std::cout << "rel_l2_error = " << io::format_double(err) << "\n";
    return kExitOk;
}

StiffnessProfile profile_from_json(const json& arr) {
    std::vector<double> r;
    std::vector<StiffnessTensor> samples;
    for (const auto& s : arr) {
        r.push_back(s.at("r").get<double>());
        std::vector<double> v = s.at("voigt").get<std::vector<double>>();
        if (v.size() != 36) raise(Errc::ConfigError, "voigt must list 36 entries row-major");
        Voigt6 m{};
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) m[a][b] = v[static_cast<std::size_t>(6 * a + b)];
        samples.emplace_back(m, s.at("rho").get<double>());
    }
    return StiffnessProfile(std::move(r), std::move(samples));
}

int cmd_elastic(const RunConfig& cfg) {
    if (!cfg.raw.contains("elastic_profile"))
        raise(Errc::ConfigError, "config needs \"elastic_profile\"");
    double R = cfg.spec.valid() ? cfg.spec.inner_radius() : cfg.raw.value("R", 0.5);
    StiffnessProfile profile = profile_from_json(cfg.raw["elastic_profile"]);
    NormSpec spec = build_slice_norm(profile, R);

    json rep;
    rep["family"] = spec.family();
    rep["axioms"] = json::parse(check_axioms(spec, 300, cfg.seed).to_json_string());
    rep["herglotz"] = json::parse(check_herglotz(spec, 96).to_json_string());

    // isotropy diagnosis against the radial Riemannian norm with the
    // interpolated qP speed
    double worst_iso = 0.0;
    for (double r : {R + 0.01, 0.5 * (R + 1.0), 0.99}) {
        double vp = std::sqrt(profile.at(r).a(0, 0, 0, 0));
        for (double psi : {0.4, 1.1, 2.7}) {
            double rho = std::cos(psi), phi = std::sin(psi);
            double iso = std::sqrt(rho * rho + r * r * phi * phi) / vp;
            worst_iso = std::max(worst_iso, std::abs(spec.norm(r, rho, phi) - iso) / iso);
        }
    }
    rep["isotropic_deviation"] = worst_iso;
    if (worst_iso < 1e-8) {
        json vp_samples = json::array();
        for (double r : profile.knots())
            vp_samples.push_back({{"r", r}, {"v_p", std::sqrt(profile.at(r).a(0, 0, 0, 0))}});
        rep["radial_riemannian_equivalent"] = {{"v_p", vp_samples}};
    }

    if (cfg.raw.contains("conformal")) {
        const json& c = cfg.raw["conformal"];
        RadialProfile w = c.contains("w") ? io::profile_from_json_string(c["w"].dump())
                                          : RadialProfile::constant(1.0);
        double s = c.value("s", 0.1);
        StiffnessProfile scaled = conformal_family(profile, w, s);
        NormSpec spec_s = build_slice_norm(scaled, R);
        HerglotzReport hs = check_herglotz(spec_s, 96);
        if (!hs.pass)
            raise(Errc::HerglotzViolated,
                  "conformal factor at s=" + std::to_string(s) +
                      " breaks the Herglotz condition (margin " +
                      std::to_string(hs.min_margin) + ")");
        double worst = 0.0;
        for (double r : {R + 0.02, 0.6 * R + 0.4, 0.98})
            for (double psi : {0.2, 1.9, 3.6, 5.1}) {
                double fs = 1.0 + s * w.value(r);
                double ratio = spec_s.norm(r, std::cos(psi), std::sin(psi)) * std::sqrt(fs) /
                               spec.norm(r, std::cos(psi), std::sin(psi));
                worst = std::max(worst, std::abs(ratio - 1.0));
            }
        rep["conformal"] = {{"s", s},
                            {"max_scaling_deviation", worst},
                            {"identity", "F_s * sqrt(f_s) = F"}};
    }

    ensure_out(cfg);
    io::write_file((cfg.out / "elastic_report.json").string(), rep.dump(2) + "\n");
    std::cout << rep.dump(2) << "\n";
    bool pass = rep["axioms"]["pass"].get<bool>() && rep["herglotz"]["pass"].get<bool>();
    return pass ? kExitOk : kExitCheckFailed;
}

int cmd_linearize(const RunConfig& cfg) {
    require_spec(cfg);
    if (!cfg.raw.contains("linearize")) raise(Errc::ConfigError, "config needs \"linearize\"");
    const json& lin = cfg.raw["linearize"];
    RadialProfile f = io::profile_from_json_string(lin.at("f").dump());
    std::vector<double> dths = lin.at("delta_theta").get<std::vector<double>>();
    std::vector<double> steps = lin.contains("s_step")
                                    ? lin["s_step"].get<std::vector<double>>()
                                    : std::vector<double>{1e-4};
    LinearizationReport rep =
        verify_conformal_linearization(cfg.spec, f, steps, dths, cfg.pipeline.trace);
    ensure_out(cfg);
    io::write_file((cfg.out / "linearize_report.json").string(), rep.to_json_string(2) + "\n");
    std::cout << rep.to_json_string(2) << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    if (const char* threads = std::getenv("FINSLER_XRAY_THREADS"))
        set_thread_cap(static_cast<unsigned>(std::strtoul(threads, nullptr, 10)));

    CLI::App app{"Geodesic ray transforms on spherically symmetric Finsler annuli"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    std::uint64_t seed_override = 0;
    bool force = false;

    CLI::App* c_check = app.add_subcommand("check", "axiom, Herglotz and foliation diagnostics");
    CLI::App* c_trace = app.add_subcommand("trace", "tangential geodesic traces to CSV");
    CLI::App* c_forward = app.add_subcommand("forward", "forward ray-transform sinogram");
    CLI::App* c_invert = app.add_subcommand("invert", "reconstruct a field from a sinogram");
    CLI::App* c_round = app.add_subcommand("roundtrip", "forward then reconstruct, with metrics");
    CLI::App* c_elastic = app.add_subcommand("elastic", "qP slice norm from a stiffness profile");
    CLI::App* c_linear = app.add_subcommand("linearize", "boundary-distance linearization check");

    std::vector<CLI::Option*> seed_opts;
    for (CLI::App* sub : {c_check, c_trace, c_forward, c_invert, c_round, c_elastic, c_linear}) {
        sub->add_option("--config", config_path, "JSON run configuration")->required();
        sub->add_option("--out", out_dir, "output directory (overrides config)");
        seed_opts.push_back(
            sub->add_option("--seed", seed_override, "seed override for randomized checks"));
        sub->add_flag("--force", force, "skip the Herglotz admission check");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        RunConfig cfg = parse_config(config_path, out_dir);
        for (CLI::Option* opt : seed_opts)
            if (opt->count() > 0) cfg.seed = seed_override;
        if (c_check->parsed()) return cmd_check(cfg);
        if (c_trace->parsed()) return cmd_trace(cfg);
        if (c_forward->parsed()) return cmd_forward(cfg, force);
        if (c_invert->parsed()) return cmd_invert(cfg, force);
        if (c_round->parsed()) return cmd_roundtrip(cfg, force);
        if (c_elastic->parsed()) return cmd_elastic(cfg);
        if (c_linear->parsed()) return cmd_linearize(cfg);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitCheckFailed;
    }
    return kExitUsage;
}

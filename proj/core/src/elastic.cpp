#include "fxray/elastic.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "fxray/detail/norm_model.hpp"
#include "fxray/error.hpp"
#include "fxray/finsler.hpp"
#include "json_util.hpp"

namespace fxray {

namespace {
constexpr int kVoigtIndex[3][3] = {{0, 5, 4}, {5, 1, 3}, {4, 3, 2}};
} // namespace

StiffnessTensor::StiffnessTensor(const Voigt6& voigt, double rho) : rho_(rho) {
    if (!(rho > 0.0)) raise(Errc::ConfigError, "density must be positive");
    double asym = 0.0;
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) {
            voigt_[a][b] = 0.5 * (voigt[a][b] + voigt[b][a]);
            asym = std::max(asym, std::abs(voigt[a][b] - voigt[b][a]));
        }
    asymmetry_ = asym;
}

StiffnessTensor StiffnessTensor::isotropic(double lambda, double mu, double rho) {
    Voigt6 v{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) v[i][j] = lambda;
    for (int i = 0; i < 3; ++i) v[i][i] = lambda + 2.0 * mu;
    for (int i = 3; i < 6; ++i) v[i][i] = mu;
    return StiffnessTensor(v, rho);
}

double StiffnessTensor::c(int i, int j, int k, int l) const {
    return voigt_[kVoigtIndex[i][j]][kVoigtIndex[k][l]];
}

double StiffnessTensor::a(int i, int j, int k, int l) const { return c(i, j, k, l) / rho_; }

std::array<std::array<double, 3>, 3> christoffel(const StiffnessTensor& stiffness,
                                                 const std::array<double, 3>& p) {
    std::array<std::array<double, 3>, 3> G{};
    for (int i = 0; i < 3; ++i)
        for (int l = 0; l < 3; ++l) {
            double acc = 0.0;
            for (int j = 0; j < 3; ++j)
                for (int k = 0; k < 3; ++k) acc += stiffness.a(i, j, k, l) * p[j] * p[k];
            G[i][l] = acc;
        }
    return G;
}

double qp_conorm(const StiffnessTensor& stiffness, const std::array<double, 3>& p,
                 double* gap, double gap_tol) {
    auto G = christoffel(stiffness, p);
    Eigen::Matrix3d M;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) M(i, j) = G[i][j];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> eig(M);
    if (eig.info() != Eigen::Success) raise(Errc::SolveFailure, "Christoffel eigen-solve failed");
    double l1 = eig.eigenvalues()(2);
    double l2 = eig.eigenvalues()(1);
    double g = l1 - l2;
    if (gap) *gap = g;
    double trace = M.trace();
    if (g < gap_tol * std::max(trace, 1e-300))
        raise(Errc::DegenerateEigen, "qP/qS eigenvalue gap " + std::to_string(g) +
                                         " below tolerance");
    if (!(eig.eigenvalues()(0) > 0.0))
        raise(Errc::NotPositiveDefinite, "Christoffel matrix not positive definite");
    return std::sqrt(l1);
}

StiffnessProfile::StiffnessProfile(std::vector<double> r, std::vector<StiffnessTensor> samples)
    : r_(std::move(r)), samples_(std::move(samples)) {
    if (r_.size() != samples_.size() || r_.empty())
        raise(Errc::ConfigError, "stiffness profile needs matching r/sample lists");
    if (r_.size() == 1) return; // constant profile, no splines needed
    component_splines_.reserve(22);
    for (int a = 0; a < 6; ++a)
        for (int b = a; b < 6; ++b) {
            std::vector<double> vals(r_.size());
            for (std::size_t i = 0; i < r_.size(); ++i) vals[i] = samples_[i].voigt()[a][b];
            component_splines_.push_back(CubicSpline::natural(r_, vals));
        }
    std::vector<double> rho(r_.size());
    for (std::size_t i = 0; i < r_.size(); ++i) rho[i] = samples_[i].rho();
    component_splines_.push_back(CubicSpline::natural(r_, rho));
}

double StiffnessProfile::multiplier(double r) const {
    if (!conformal_) return 1.0;
    double m = 1.0 + s_ * w_.value(r);
    if (!(m > 0.0)) raise(Errc::NonPositiveSpeed, "conformal stiffness factor <= 0");
    return m;
}

StiffnessTensor StiffnessProfile::at(double r) const {
    double m = multiplier(r);
    if (samples_.size() == 1) {
        if (m == 1.0) return samples_[0];
        Voigt6 v = samples_[0].voigt();
        for (auto& row : v)
            for (double& x : row) x *= m;
        return StiffnessTensor(v, samples_[0].rho());
    }
    Voigt6 v{};
    std::size_t s = 0;
    for (int a = 0; a < 6; ++a)
        for (int b = a; b < 6; ++b) {
            double val = m * component_splines_[s++].value(r);
            v[a][b] = val;
            v[b][a] = val;
        }
    double rho = component_splines_[s].value(r);
    if (!(rho > 0.0)) raise(Errc::ConfigError, "interpolated density <= 0 at r=" + std::to_string(r));
    return StiffnessTensor(v, rho);
}

StiffnessProfile conformal_family(const StiffnessProfile& base, const RadialProfile& w, double s) {
    if (base.conformal_) raise(Errc::ConfigError, "profile already carries a conformal factor");
    StiffnessProfile out = base;
    out.conformal_ = true;
    out.w_ = w;
    out.s_ = s;
    return out;
}

double slice_conorm(const StiffnessProfile& profile, double r, double p_r, double p_theta) {
    // (p_r, p_theta) are components in the coordinate coframe (dr, dtheta);
    // in the local orthonormal polar-aligned frame the tangential component
    // carries the 1/r weight.
    return qp_conorm(profile.at(r), {p_r, p_theta / r, 0.0});
}

namespace detail {

class ElasticDerivedModel final : public NormModel {
public:
    explicit ElasticDerivedModel(StiffnessProfile profile) : profile_(std::move(profile)) {}

    double f2(double r, double rho, double phi) const override {
        auto conorm = [this](double rr, double pr, double pt) {
            return slice_conorm(profile_, rr, pr, pt);
        };
        double F = legendre_norm_from_conorm(conorm, {r, rho, phi});
        return F * F;
    }

    const char* family() const override { return "elastic_derived"; }

    std::string json_payload() const override {
        if (profile_.has_conformal()) return {}; // scaled views are not round-tripped
        json samples = json::array();
        for (std::size_t i = 0; i < profile_.knots().size(); ++i) {
            const StiffnessTensor& t = profile_.samples()[i];
            std::vector<double> v;
            v.reserve(36);
            for (int a = 0; a < 6; ++a)
                for (int b = 0; b < 6; ++b) v.push_back(t.voigt()[a][b]);
            samples.push_back({{"r", profile_.knots()[i]}, {"rho", t.rho()}, {"voigt", v}});
        }
        json j;
        j["profile"] = std::move(samples);
        return j.dump();
    }

    const StiffnessProfile& profile() const { return profile_; }

private:
    StiffnessProfile profile_;
};

} // namespace detail

NormSpec build_slice_norm(const StiffnessProfile& profile, double R) {
    // Gap and reflection-symmetry validation over the cotangent circle.
    const std::size_t n_r = 24, n_chi = 64;
    double worst_reflection = 0.0;
    double worst_r = R, worst_chi = 0.0;
    for (std::size_t i = 0; i <= n_r; ++i) {
        double r = R + (1.0 - R) * static_cast<double>(i) / static_cast<double>(n_r);
        for (std::size_t j = 0; j < n_chi; ++j) {
            double chi = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(n_chi);
            double pr = std::cos(chi), pt = std::sin(chi);
            double plus = slice_conorm(profile, r, pr, pt); // raises DegenerateEigen on gap loss
            double minus = slice_conorm(profile, r, pr, -pt);
            double dev = std::abs(plus - minus) / std::max(plus, 1e-300);
            if (dev > worst_reflection) {
                worst_reflection = dev;
                worst_r = r;
                worst_chi = chi;
            }
        }
    }
    if (worst_reflection > 1e-9)
        raise(Errc::NotReversible,
              "slice co-norm breaks tangential reflection symmetry by " +
                  std::to_string(worst_reflection) + " at r=" + std::to_string(worst_r) +
                  ", chi=" + std::to_string(worst_chi));
    return NormSpec::from_model(R, std::make_shared<detail::ElasticDerivedModel>(profile));
}

NormSpec elastic_spec_from_json(const detail::json& j) {
    double R = j.at("R").get<double>();
    std::vector<double> r;
    std::vector<StiffnessTensor> samples;
    for (const auto& s : j.at("profile")) {
        r.push_back(s.at("r").get<double>());
        std::vector<double> v = s.at("voigt").get<std::vector<double>>();
        if (v.size() != 36) raise(Errc::ConfigError, "voigt must be a 6x6 row-major list");
        Voigt6 m{};
        for (int a = 0; a < 6; ++a)
            for (int b = 0; b < 6; ++b) m[a][b] = v[static_cast<std::size_t>(6 * a + b)];
        samples.emplace_back(m, s.at("rho").get<double>());
    }
    return build_slice_norm(StiffnessProfile(std::move(r), std::move(samples)), R);
}

} // namespace fxray

#pragma once

#include <array>
#include <string>
#include <vector>

#include "fxray/norm_spec.hpp"
#include "fxray/radial_profile.hpp"

namespace fxray {

using Voigt6 = std::array<std::array<double, 6>, 6>;

/// Density-normalized elastic stiffness. Construction symmetrizes the
/// Voigt matrix (major symmetry) and records the asymmetry that was
/// removed; the minor symmetries hold by the Voigt expansion itself.
class StiffnessTensor {
public:
    StiffnessTensor() = default;
    StiffnessTensor(const Voigt6& voigt, double rho);
    static StiffnessTensor isotropic(double lambda, double mu, double rho);

    double c(int i, int j, int k, int l) const;
    /// density-normalized modulus a_ijkl = c_ijkl / rho
    double a(int i, int j, int k, int l) const;
    double rho() const { return rho_; }
    double asymmetry() const { return asymmetry_; }
    const Voigt6& voigt() const { return voigt_; }

private:
    Voigt6 voigt_{};
    double rho_ = 1.0;
    double asymmetry_ = 0.0;
};

/// Christoffel matrix Gamma_il(p) = sum_jk a_ijkl p_j p_k (symmetric,
/// degree-2 homogeneous in the momentum covector).
std::array<std::array<double, 3>, 3> christoffel(const StiffnessTensor& stiffness,
                                                 const std::array<double, 3>& p);

/// qP co-norm sqrt(lambda_1) with lambda_1 the largest Christoffel
/// eigenvalue. Raises DegenerateEigen when the qP/qS gap closes below
/// gap_tol * trace (default 1e-8 * trace).
double qp_conorm(const StiffnessTensor& stiffness, const std::array<double, 3>& p,
                 double* gap = nullptr, double gap_tol = 1e-8);

/// Radial stiffness model in the polar-aligned frame (axis 1 radial,
/// axis 2 tangential in the slice plane, axis 3 out of plane), cubically
/// interpolated in r, with an optional exactly-applied conformal factor
/// f_s(r) = 1 + s w(r).
class StiffnessProfile {
public:
    StiffnessProfile() = default;
    StiffnessProfile(std::vector<double> r, std::vector<StiffnessTensor> samples);

    StiffnessTensor at(double r) const;
    double multiplier(double r) const;
    const std::vector<double>& knots() const { return r_; }
    const std::vector<StiffnessTensor>& samples() const { return samples_; }
    bool has_conformal() const { return conformal_; }
    const RadialProfile& conformal_w() const { return w_; }
    double conformal_s() const { return s_; }

    friend StiffnessProfile conformal_family(const StiffnessProfile& base,
                                             const RadialProfile& w, double s);

private:
    std::vector<double> r_;
    std::vector<StiffnessTensor> samples_;
    std::vector<CubicSpline> component_splines_; // 21 Voigt components + rho
    bool conformal_ = false;
    RadialProfile w_;
    double s_ = 0.0;
};

/// Conformal variation c^s = (1 + s w(r)) c, applied to the interpolated
/// tensor pointwise so the induced scaling identities are exact rather
/// than re-interpolated: the qP co-norm scales by sqrt(f_s) and the
/// travel-time norm it dualizes to scales by 1/sqrt(f_s) (stiffer medium,
/// faster waves, shorter times).
StiffnessProfile conformal_family(const StiffnessProfile& base, const RadialProfile& w, double s);

/// qP co-norm of the profile restricted to the 2D slice:
/// F*(r, p_r, p_theta) = sqrt(lambda_1)(a(r), (p_r, p_theta / r, 0)).
double slice_conorm(const StiffnessProfile& profile, double r, double p_r, double p_theta);

/// Builds the slice Finsler norm by fiberwise Legendre transform of the
/// qP co-norm. Validates the eigenvalue gap over the cotangent circle and
/// the tangential-reflection symmetry the transform reduction relies on.
NormSpec build_slice_norm(const StiffnessProfile& profile, double R);

} // namespace fxray

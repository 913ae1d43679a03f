#pragma once

#include <array>
#include <cmath>

namespace fxray {

/// Second-order truncated Taylor value in the three coordinates
/// (r, rho, phi): carries f, grad f and the symmetric Hessian of f.
/// Arithmetic propagates both derivative levels exactly, which gives
/// machine-precision metric tensors and spray inputs for closed-form
/// norm families without finite differencing.
struct Jet3 {
    double v = 0.0;
    std::array<double, 3> g{{0.0, 0.0, 0.0}};
    // Packed upper triangle: rr, r-rho, r-phi, rho-rho, rho-phi, phi-phi.
    std::array<double, 6> h{{0.0, 0.0, 0.0, 0.0, 0.0, 0.0}};

    static Jet3 constant(double c) {
        Jet3 j;
        j.v = c;
        return j;
    }
    static Jet3 variable(double value, int index) {
        Jet3 j;
        j.v = value;
        j.g[static_cast<std::size_t>(index)] = 1.0;
        return j;
    }
};

namespace jet_detail {
inline constexpr int pack(int i, int j) {
    // (0,0)->0 (0,1)->1 (0,2)->2 (1,1)->3 (1,2)->4 (2,2)->5, i<=j
    return i == 0 ? j : (i == 1 ? 2 + j : 3 + j);
}
} // namespace jet_detail

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
    Jet3 r;
    r.v = a.v + b.v;
    for (int i = 0; i < 3; ++i) r.g[i] = a.g[i] + b.g[i];
    for (int i = 0; i < 6; ++i) r.h[i] = a.h[i] + b.h[i];
    return r;
}

inline Jet3 operator-(const Jet3& a, const Jet3& b) {
    Jet3 r;
    r.v = a.v - b.v;
    for (int i = 0; i < 3; ++i) r.g[i] = a.g[i] - b.g[i];
    for (int i = 0; i < 6; ++i) r.h[i] = a.h[i] - b.h[i];
    return r;
}

inline Jet3 operator-(const Jet3& a) {
    Jet3 r;
    r.v = -a.v;
    for (int i = 0; i < 3; ++i) r.g[i] = -a.g[i];
    for (int i = 0; i < 6; ++i) r.h[i] = -a.h[i];
    return r;
}

inline Jet3 operator*(const Jet3& a, const Jet3& b) {
    Jet3 r;
    r.v = a.v * b.v;
    for (int i = 0; i < 3; ++i) r.g[i] = a.g[i] * b.v + a.v * b.g[i];
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            int k = jet_detail::pack(i, j);
            r.h[k] = a.h[k] * b.v + a.g[i] * b.g[j] + a.g[j] * b.g[i] + a.v * b.h[k];
        }
    return r;
}

inline Jet3 operator*(double c, const Jet3& a) { return Jet3::constant(c) * a; }
inline Jet3 operator*(const Jet3& a, double c) { return Jet3::constant(c) * a; }
inline Jet3 operator+(const Jet3& a, double c) { return a + Jet3::constant(c); }
inline Jet3 operator+(double c, const Jet3& a) { return a + Jet3::constant(c); }
inline Jet3 operator-(const Jet3& a, double c) { return a - Jet3::constant(c); }
inline Jet3 operator-(double c, const Jet3& a) { return Jet3::constant(c) - a; }

/// Chain rule for a scalar map u(f) with derivatives u', u''.
inline Jet3 jet_compose(const Jet3& f, double u, double du, double d2u) {
    Jet3 r;
    r.v = u;
    for (int i = 0; i < 3; ++i) r.g[i] = du * f.g[i];
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            int k = jet_detail::pack(i, j);
            r.h[k] = du * f.h[k] + d2u * f.g[i] * f.g[j];
        }
    return r;
}

inline Jet3 jet_inv(const Jet3& a) {
    double iv = 1.0 / a.v;
    return jet_compose(a, iv, -iv * iv, 2.0 * iv * iv * iv);
}

inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * jet_inv(b); }
inline Jet3 operator/(const Jet3& a, double c) { return a * (1.0 / c); }
inline Jet3 operator/(double c, const Jet3& a) { return c * jet_inv(a); }

inline Jet3 jet_sqrt(const Jet3& a) {
    double s = std::sqrt(a.v);
    return jet_compose(a, s, 0.5 / s, -0.25 / (s * a.v));
}

inline Jet3 jet_pow(const Jet3& a, int n) {
    if (n == 0) return Jet3::constant(1.0);
    Jet3 r = a;
    for (int i = 1; i < n; ++i) r = r * a;
    return r;
}

/// Chain rule for a scalar map u(f1, f2) given value, gradient and Hessian
/// of u in its two arguments (Hessian packed as u11, u12, u22).
inline Jet3 jet_compose2(const Jet3& f1, const Jet3& f2, double u,
                         double u1, double u2, double u11, double u12, double u22) {
    Jet3 r;
    r.v = u;
    for (int i = 0; i < 3; ++i) r.g[i] = u1 * f1.g[i] + u2 * f2.g[i];
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j) {
            int k = jet_detail::pack(i, j);
            r.h[k] = u1 * f1.h[k] + u2 * f2.h[k] +
                     u11 * f1.g[i] * f1.g[j] +
                     u12 * (f1.g[i] * f2.g[j] + f1.g[j] * f2.g[i]) +
                     u22 * f2.g[i] * f2.g[j];
        }
    return r;
}

/// atan2(y, x) lifted to jets; undefined at the origin.
inline Jet3 jet_atan2(const Jet3& y, const Jet3& x) {
    double s = x.v * x.v + y.v * y.v;
    double u = std::atan2(y.v, x.v);
    double ux = -y.v / s;
    double uy = x.v / s;
    double s2 = s * s;
    double uxx = 2.0 * x.v * y.v / s2;
    double uxy = (y.v * y.v - x.v * x.v) / s2;
    double uyy = -2.0 * x.v * y.v / s2;
    return jet_compose2(x, y, u, ux, uy, uxx, uxy, uyy);
}

} // namespace fxray

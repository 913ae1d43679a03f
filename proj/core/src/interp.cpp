#include "fxray/interp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fxray {

namespace {

// Thomas algorithm for a tridiagonal system; overwrites the inputs.
void solve_tridiagonal(std::vector<double>& a, std::vector<double>& b,
                       std::vector<double>& c, std::vector<double>& d) {
    const std::size_t n = b.size();
    for (std::size_t i = 1; i < n; ++i) {
        double w = a[i] / b[i - 1];
        b[i] -= w * c[i - 1];
        d[i] -= w * d[i - 1];
    }
    d[n - 1] /= b[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) d[i] = (d[i] - c[i] * d[i + 1]) / b[i];
}

} // namespace

CubicSpline CubicSpline::natural(std::vector<double> x, std::vector<double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("CubicSpline: need >= 2 matching samples");
    CubicSpline s;
    s.x_ = std::move(x);
    s.y_ = std::move(y);
    const std::size_t n = s.x_.size();
    s.m_.assign(n, 0.0);
    if (n == 2) return s;

    std::vector<double> a(n - 2), b(n - 2), c(n - 2), d(n - 2);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        double h0 = s.x_[i] - s.x_[i - 1];
        double h1 = s.x_[i + 1] - s.x_[i];
        a[i - 1] = h0;
        b[i - 1] = 2.0 * (h0 + h1);
        c[i - 1] = h1;
        d[i - 1] = 6.0 * ((s.y_[i + 1] - s.y_[i]) / h1 - (s.y_[i] - s.y_[i - 1]) / h0);
    }
    solve_tridiagonal(a, b, c, d);
    for (std::size_t i = 1; i + 1 < n; ++i) s.m_[i] = d[i - 1];
    return s;
}

CubicSpline CubicSpline::periodic(std::vector<double> x, std::vector<double> y, double period) {
    if (x.size() != y.size() || x.size() < 3)
        throw std::invalid_argument("CubicSpline: need >= 3 samples for periodic fit");
    CubicSpline s;
    s.x_ = std::move(x);
    s.y_ = std::move(y);
    s.periodic_ = true;
    s.period_ = period;

    // Solve the cyclic tridiagonal system for knot second derivatives with
    // the Sherman-Morrison correction.
    const std::size_t n = s.x_.size(); // unknowns m_0 .. m_{n-1}
    std::vector<double> h(n);
    for (std::size_t i = 0; i + 1 < n; ++i) h[i] = s.x_[i + 1] - s.x_[i];
    h[n - 1] = s.x_[0] + period - s.x_[n - 1];

    auto slope = [&](std::size_t i) {
        std::size_t j = (i + 1) % n;
        double dy = s.y_[j] - s.y_[i];
        return dy / h[i];
    };

    std::vector<double> diag(n), rhs(n);
    std::vector<double> lower(n), upper(n);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t im = (i + n - 1) % n;
        lower[i] = h[im];
        upper[i] = h[i];
        diag[i] = 2.0 * (h[im] + h[i]);
        rhs[i] = 6.0 * (slope(i) - slope(im));
    }

    // Cyclic tridiagonal solve via Sherman-Morrison with gamma = -diag[0].
    // Corner entries: row 0 couples m_{n-1} with weight lower[0] (beta),
    // row n-1 couples m_0 with weight upper[n-1] (alpha).
    double gamma = -diag[0];
    double alpha = upper[n - 1], beta = lower[0];
    std::vector<double> b = diag, d = rhs, u(n, 0.0);
    b[0] -= gamma;
    b[n - 1] -= alpha * beta / gamma;
    u[0] = gamma;
    u[n - 1] = alpha;

    std::vector<double> a1(n), c1(n);
    for (std::size_t i = 0; i < n; ++i) {
        a1[i] = (i == 0) ? 0.0 : lower[i];
        c1[i] = (i + 1 == n) ? 0.0 : upper[i];
    }
    std::vector<double> bb = b, dd = d;
    solve_tridiagonal(a1, bb, c1, dd); // dd = y solution
    std::vector<double> a2(n), c2(n);
    for (std::size_t i = 0; i < n; ++i) {
        a2[i] = (i == 0) ? 0.0 : lower[i];
        c2[i] = (i + 1 == n) ? 0.0 : upper[i];
    }
    std::vector<double> b2 = b, zz = u;
    solve_tridiagonal(a2, b2, c2, zz); // zz = z solution
    double fact = (dd[0] + beta * dd[n - 1] / gamma) /
                  (1.0 + zz[0] + beta * zz[n - 1] / gamma);
    s.m_.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.m_[i] = dd[i] - fact * zz[i];
    return s;
}

std::size_t CubicSpline::segment(double& x) const {
    const std::size_t n = x_.size();
    if (periodic_) {
        double x0 = x_[0];
        x = x0 + std::fmod(x - x0, period_);
        if (x < x0) x += period_;
    }
    // Outside the knot range the end segment's cubic is extended, which
    // keeps the evaluation C2 for small overshoots.
    auto it = std::upper_bound(x_.begin(), x_.end(), x);
    std::size_t i = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, (it - x_.begin()) - 1));
    if (!periodic_ && i > n - 2) i = n - 2;
    if (periodic_ && i > n - 1) i = n - 1;
    return i;
}

double CubicSpline::value(double xq) const {
    double x = xq;
    std::size_t i = segment(x);
    const std::size_t n = x_.size();
    std::size_t j = (i + 1) % n;
    double h = periodic_ && j == 0 ? (x_[0] + period_ - x_[i]) : (x_[j] - x_[i]);
    double yj = y_[j], mj = m_[j];
    double A = (x_[i] + h - x) / h;
    double B = (x - x_[i]) / h;
    return A * y_[i] + B * yj +
           ((A * A * A - A) * m_[i] + (B * B * B - B) * mj) * h * h / 6.0;
}

double CubicSpline::deriv(double xq) const {
    double x = xq;
    std::size_t i = segment(x);
    const std::size_t n = x_.size();
    std::size_t j = (i + 1) % n;
    double h = periodic_ && j == 0 ? (x_[0] + period_ - x_[i]) : (x_[j] - x_[i]);
    double A = (x_[i] + h - x) / h;
    double B = (x - x_[i]) / h;
    return (y_[j] - y_[i]) / h +
           ((3.0 * B * B - 1.0) * m_[j] - (3.0 * A * A - 1.0) * m_[i]) * h / 6.0;
}

double CubicSpline::deriv2(double xq) const {
    double x = xq;
    std::size_t i = segment(x);
    const std::size_t n = x_.size();
    std::size_t j = (i + 1) % n;
    double h = periodic_ && j == 0 ? (x_[0] + period_ - x_[i]) : (x_[j] - x_[i]);
    double A = (x_[i] + h - x) / h;
    double B = (x - x_[i]) / h;
    return A * m_[i] + B * m_[j];
}

double cubic_uniform(const std::vector<double>& y, double a, double h, double x) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(y.size());
    double s = (x - a) / h;
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(std::floor(s)) - 1;
    j = std::clamp<std::ptrdiff_t>(j, 0, n - 4);
    double t = s - static_cast<double>(j); // in [1,2] for interior points
    // Lagrange basis at offsets 0,1,2,3.
    double w0 = -(t - 1.0) * (t - 2.0) * (t - 3.0) / 6.0;
    double w1 = t * (t - 2.0) * (t - 3.0) / 2.0;
    double w2 = -t * (t - 1.0) * (t - 3.0) / 2.0;
    double w3 = t * (t - 1.0) * (t - 2.0) / 6.0;
    return w0 * y[j] + w1 * y[j + 1] + w2 * y[j + 2] + w3 * y[j + 3];
}

void cubic_stencil(const std::vector<double>& nodes, double x,
                   std::size_t idx[4], double w[4]) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(nodes.size());
    // Fewer than 4 nodes left: drop to the Lagrange rule that fits.
    const int m = static_cast<int>(std::min<std::ptrdiff_t>(4, n));
    auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    std::ptrdiff_t i = (it - nodes.begin()) - 1;
    std::ptrdiff_t j = std::clamp<std::ptrdiff_t>(i - 1, 0, n - m);
    for (int k = 0; k < 4; ++k) {
        idx[k] = static_cast<std::size_t>(k < m ? j + k : j);
        w[k] = 0.0;
    }
    for (int k = 0; k < m; ++k) {
        double num = 1.0, den = 1.0;
        for (int l = 0; l < m; ++l) {
            if (l == k) continue;
            num *= x - nodes[idx[l]];
            den *= nodes[idx[k]] - nodes[idx[l]];
        }
        w[k] = num / den;
    }
}

} // namespace fxray

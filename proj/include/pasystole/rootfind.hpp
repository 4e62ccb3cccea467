#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <complex>
#include <optional>
#include <vector>

#include "pasystole/intpoly.hpp"

namespace pasystole {

using Complex = std::complex<double>;

namespace detail {

inline Complex horner(const std::vector<double>& asc, Complex x) {
    Complex acc = 0;
    for (auto it = asc.rbegin(); it != asc.rend(); ++it) acc = acc * x + *it;
    return acc;
}

inline std::vector<double> ascending_doubles(const IntPoly& p) {
    std::vector<double> a(p.degree() + 1);
    for (int i = 0; i <= p.degree(); ++i) a[i] = to_double(p[i]);
    return a;
}

// one Aberth-Ehrlich sweep; returns max relative step
inline double aberth_sweep(const std::vector<double>& f, const std::vector<double>& fp,
                           std::vector<Complex>& z) {
    double worst = 0;
    for (size_t i = 0; i < z.size(); ++i) {
        Complex v = horner(f, z[i]);
        Complex d = horner(fp, z[i]);
        if (std::abs(d) == 0) continue;
        Complex newton = v / d;
        Complex rep = 0;
        for (size_t j = 0; j < z.size(); ++j)
            if (j != i) rep += 1.0 / (z[i] - z[j]);
        Complex denom = 1.0 - newton * rep;
        if (std::abs(denom) < 1e-30) continue;
        Complex step = newton / denom;
        z[i] -= step;
        worst = std::max(worst, std::abs(step) / std::max(1.0, std::abs(z[i])));
    }
    return worst;
}

}  // namespace detail

// All complex roots of a monic integer polynomial: companion-matrix
// eigenvalues refined by Aberth-Ehrlich iteration.
inline std::vector<Complex> complex_roots(const IntPoly& p) {
    const int n = p.degree();
    if (n <= 0) return {};
    std::vector<double> asc = detail::ascending_doubles(p);
    const double lead = asc[n];
    for (auto& v : asc) v /= lead;
    if (n == 1) return {Complex(-asc[0], 0)};

    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
    for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) comp(i, n - 1) = -asc[i];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, /*computeEigenvectors=*/false);
    std::vector<Complex> z(n);
    for (int i = 0; i < n; ++i) z[i] = es.eigenvalues()[i];

    std::vector<double> der(n);
    for (int i = 1; i <= n; ++i) der[i - 1] = i * asc[i];
    for (int sweep = 0; sweep < 12; ++sweep)
        if (detail::aberth_sweep(asc, der, z) < 1e-14) break;
    return z;
}

// Damped Newton iteration for the largest real root, started above it.
// Converges monotonically when the dominant root is real, positive and all
// root moduli are below the start (the graph is strictly convex there).
// Returns nullopt when the iteration leaves (low, start] or stalls.
inline std::optional<double> newton_largest_root(const IntPoly& p, double start,
                                                 int iter_cap = 80, double low = 1.0) {
    std::vector<double> asc = detail::ascending_doubles(p);
    const int n = p.degree();
    std::vector<double> der(n);
    for (int i = 1; i <= n; ++i) der[i - 1] = i * asc[i];
    auto ev = [](const std::vector<double>& c, double x) {
        double acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    double x = start;
    for (int it = 0; it < iter_cap; ++it) {
        double f = ev(asc, x);
        double fp = ev(der, x);
        if (fp <= 0) return std::nullopt;
        double step = f / fp;
        double xn = x - step;
        if (xn > x + 1e-12 * std::abs(x)) return std::nullopt;  // moving up: root above start
        if (xn < low - 1e-9) return std::nullopt;
        if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x))) return xn;
        x = xn;
    }
    return std::nullopt;
}

}  // namespace pasystole

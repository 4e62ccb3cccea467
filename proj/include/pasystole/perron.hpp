#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include "pasystole/factor.hpp"
#include "pasystole/reciprocal.hpp"
#include "pasystole/rootfind.hpp"

namespace pasystole {

struct AmbiguousDominance : std::runtime_error {
    explicit AmbiguousDominance(const std::string& what) : std::runtime_error(what) {}
};
struct NoConvergence : std::runtime_error {
    explicit NoConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct RootProfile {
    double dominant_value = 0;   // signed when real, else the modulus
    bool dominant_is_real = false;
    bool strictly_dominant = false;
    bool simple = false;
    double modulus_gap = 0;      // |rho| minus the next-largest modulus
    bool outside_unit_circle = false;
    int sign = 0;                // sign of the dominant root when real

    bool allowable() const {
        return dominant_is_real && strictly_dominant && simple && outside_unit_circle;
    }
};

// Root analysis robust at the unit circle.  Cyclotomic factors are stripped
// exactly first; by Kronecker a non-constant cyclotomic-free core has its
// dominant modulus well off the circle, so the numeric classification of the
// core is reliable.  Near-ties escalate to exact squarefree / X->-X checks
// before AmbiguousDominance is raised.
inline RootProfile perron_analysis(const IntPoly& p, double tol = 1e-9) {
    RootProfile out;
    if (p.degree() <= 0) throw std::invalid_argument("perron_analysis needs positive degree");

    CyclotomicSplit split = strip_cyclotomic(p);
    const bool has_unit_roots = !split.cyclo.empty();
    if (split.core.degree() == 0) {
        out.dominant_value = 1.0;
        out.modulus_gap = 0;
        return out;  // every root on the unit circle
    }

    std::vector<Complex> roots = complex_roots(split.core);
    size_t dom = 0;
    for (size_t i = 1; i < roots.size(); ++i)
        if (std::abs(roots[i]) > std::abs(roots[dom])) dom = i;
    const Complex rho = roots[dom];
    const double mod = std::abs(rho);

    double next = has_unit_roots ? 1.0 : 0.0;
    double min_dist = 1e300;
    for (size_t i = 0; i < roots.size(); ++i) {
        if (i == dom) continue;
        next = std::max(next, std::abs(roots[i]));
        min_dist = std::min(min_dist, std::abs(roots[i] - rho));
    }
    out.modulus_gap = mod - next;
    out.dominant_is_real = std::abs(rho.imag()) <= 1e-8 * std::max(1.0, mod);
    out.dominant_value = out.dominant_is_real ? rho.real() : mod;
    out.sign = out.dominant_is_real ? (rho.real() > 0 ? 1 : -1) : 0;
    out.outside_unit_circle = mod > 1.0 + tol;
    out.strictly_dominant = out.modulus_gap > 1e-7;
    out.simple = min_dist > 1e-7;

    if (!out.dominant_is_real) {
        // the conjugate shares the modulus; a definite rejection, not a tie
        out.strictly_dominant = false;
        return out;
    }
    if (!out.strictly_dominant || !out.simple) {
        // exact review: multiple dominant root?
        IntPoly sq = int_gcd(split.core, split.core.derivative());
        if (sq.degree() >= 1 && std::abs(sq.eval(Complex(rho))) < 1e-5) {
            out.simple = false;
            out.strictly_dominant = false;
            return out;
        }
        // +-pair (polynomial sharing roots with its X -> -X image)?
        IntPoly pm = int_gcd(split.core, split.core.negate_variable());
        if (pm.degree() >= 1 && std::abs(pm.eval(Complex(rho))) < 1e-5) {
            out.strictly_dominant = false;
            return out;
        }
        // core in X^k: the dominant root's k-th-root-of-unity orbit ties it
        if (is_poly_in_power(split.core)) {
            out.strictly_dominant = false;
            return out;
        }
        throw AmbiguousDominance("root moduli within tolerance of the maximum: " + p.str());
    }

    if (out.dominant_is_real && out.simple) {
        // polish with plain Newton on the full polynomial
        double x = out.dominant_value;
        for (int it = 0; it < 4; ++it) {
            double f = p.eval_double(x);
            double fp = p.derivative().eval_double(x);
            if (fp == 0) break;
            x -= f / fp;
        }
        out.dominant_value = x;
    }
    return out;
}

inline RootProfile perron_analysis(const ReciprocalPolynomial& p, double tol = 1e-9) {
    return perron_analysis(p.poly(), tol);
}

// Product of |root| over roots outside the unit circle (monic case).  The
// cyclotomic part contributes nothing; core roots on the circle (Salem
// conjugates) are simple and resolve numerically well below the threshold.
inline double mahler_measure(const IntPoly& p) {
    CyclotomicSplit split = strip_cyclotomic(p);
    if (split.core.degree() <= 0) return 1.0;
    double m = 1.0;
    for (const Complex& r : complex_roots(split.core)) {
        double a = std::abs(r);
        if (a > 1.0 + 1e-9) m *= a;
    }
    return m;
}

inline double mahler_measure(const ReciprocalPolynomial& p) { return mahler_measure(p.poly()); }

// Dominant positive real root of a defining polynomial (used for search
// bounds); requires a real, simple, strictly dominant root > 1.
inline double dominant_root_value(const IntPoly& p) {
    RootProfile prof = perron_analysis(p);
    if (!prof.dominant_is_real || !prof.strictly_dominant)
        throw std::invalid_argument("polynomial has no strictly dominant real root: " + p.str());
    return std::abs(prof.dominant_value);
}

}  // namespace pasystole

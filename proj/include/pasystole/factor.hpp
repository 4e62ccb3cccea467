#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "pasystole/intpoly.hpp"
#include "pasystole/reciprocal.hpp"
#include "pasystole/ratpoly.hpp"
#include "pasystole/rootfind.hpp"

namespace pasystole {

struct CyclotomicSplit {
    IntPoly core;                           // cyclotomic-free part
    std::vector<std::pair<int, int>> cyclo; // (k, multiplicity)
};

// Peel off every cyclotomic factor by exact division.  Kronecker's theorem
// makes this decide "all roots on the unit circle": that happens iff core is
// constant.
inline CyclotomicSplit strip_cyclotomic(const IntPoly& p) {
    CyclotomicSplit out;
    out.core = p;
    if (p.degree() <= 0) return out;
    for (int k : cyclotomic_indices_up_to_degree(p.degree())) {
        const IntPoly& phi = cyclotomic(k);
        int mult = 0;
        while (out.core.degree() >= phi.degree()) {
            auto q = out.core.divide_exact(phi);
            if (!q) break;
            out.core = *q;
            ++mult;
        }
        if (mult) out.cyclo.emplace_back(k, mult);
    }
    return out;
}

inline bool has_root_of_unity(const IntPoly& p) {
    return !strip_cyclotomic(p).cyclo.empty();
}

inline bool has_root_of_unity(const ReciprocalPolynomial& p) {
    return has_root_of_unity(p.poly());
}

// true iff P(X) = Q(X^k) for some k > 1
inline bool is_poly_in_power(const IntPoly& p) {
    int g = 0;
    for (int i = 1; i <= p.degree(); ++i)
        if (p[i] != 0) g = std::gcd(g, i);
    return g > 1;
}

namespace detail {

// Conjugation-closed clusters of numeric roots: real roots alone, complex
// pairs as a unit.
struct RootCluster {
    std::vector<Complex> roots;
};

inline std::vector<RootCluster> cluster_roots(const std::vector<Complex>& roots) {
    std::vector<RootCluster> out;
    std::vector<bool> used(roots.size(), false);
    for (size_t i = 0; i < roots.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        if (std::abs(roots[i].imag()) < 1e-7) {
            out.push_back({{Complex(roots[i].real(), 0)}});
            continue;
        }
        size_t best = i;
        double bestd = 1e100;
        for (size_t j = 0; j < roots.size(); ++j) {
            if (used[j]) continue;
            double d = std::abs(roots[j] - std::conj(roots[i]));
            if (d < bestd) { bestd = d; best = j; }
        }
        used[best] = true;
        out.push_back({{roots[i], roots[best]}});
    }
    return out;
}

inline std::optional<IntPoly> round_to_int_poly(const std::vector<Complex>& roots) {
    std::vector<Complex> c = {1.0};
    for (const Complex& r : roots) {
        std::vector<Complex> next(c.size() + 1, Complex(0));
        for (size_t i = 0; i < c.size(); ++i) {
            next[i + 1] += c[i];
            next[i] -= c[i] * r;
        }
        c = std::move(next);
    }
    std::vector<Int> out(c.size());
    for (size_t i = 0; i < c.size(); ++i) {
        double re = c[i].real();
        if (std::abs(c[i].imag()) > 1e-4) return std::nullopt;
        double r = std::round(re);
        if (std::abs(re - r) > 1e-4) return std::nullopt;
        if (std::abs(r) > 9e15) return std::nullopt;
        out[i] = Int(static_cast<long long>(r));
    }
    return IntPoly(std::move(out));  // c was built ascending
}

}  // namespace detail

// Factor a monic integer polynomial into irreducible monic factors with
// multiplicities.  Candidate divisors come from conjugation-closed subsets of
// the numeric roots; exact division confirms each one, so the result is a
// true factorization.  Practical for degree <= ~20 with moderate coefficients.
inline std::vector<std::pair<IntPoly, int>> factor_integer_poly(IntPoly p) {
    std::vector<std::pair<IntPoly, int>> factors;
    if (p.degree() <= 0) return factors;
    auto record = [&](const IntPoly& f) {
        for (auto& [g, m] : factors)
            if (g == f) { ++m; return; }
        factors.emplace_back(f, 1);
    };
    while (p.degree() > 0) {
        auto clusters = detail::cluster_roots(complex_roots(p));
        const size_t m = clusters.size();
        IntPoly found;
        bool have = false;
        // smallest subsets first => factors found are irreducible
        for (int size = 1; size <= static_cast<int>(m) && !have; ++size) {
            std::vector<int> idx(size);
            std::function<void(int, int)> rec = [&](int pos, int start) {
                if (have) return;
                if (pos == size) {
                    std::vector<Complex> roots;
                    int deg = 0;
                    for (int i : idx) deg += static_cast<int>(clusters[i].roots.size());
                    if (deg >= p.degree()) return;
                    for (int i : idx)
                        for (const Complex& r : clusters[i].roots) roots.push_back(r);
                    auto cand = detail::round_to_int_poly(roots);
                    if (!cand || !cand->is_monic()) return;
                    if (p.divide_exact(*cand)) { found = *cand; have = true; }
                    return;
                }
                for (int i = start; i < static_cast<int>(m); ++i) {
                    idx[pos] = i;
                    rec(pos + 1, i + 1);
                }
            };
            rec(0, 0);
        }
        if (!have) {  // p itself irreducible
            record(p);
            break;
        }
        record(found);
        p = *p.divide_exact(found);
    }
    return factors;
}

// "Not the product of two nontrivial reciprocal polynomials."  Factors of a
// reciprocal polynomial group into reciprocal blocks: a palindromic
// irreducible factor is one block per power; a non-palindromic factor pairs
// with its coefficient reversal.  Reducible iff there are >= 2 blocks.
inline bool symplectically_irreducible(const IntPoly& p) {
    if (p.degree() <= 0) return false;
    auto factors = factor_integer_poly(p);
    int blocks = 0;
    std::vector<bool> consumed(factors.size(), false);
    for (size_t i = 0; i < factors.size(); ++i) {
        if (consumed[i]) continue;
        const auto& [f, mult] = factors[i];
        if (f.is_palindromic()) {
            blocks += mult;
            consumed[i] = true;
            continue;
        }
        IntPoly rev = f.reverse();
        if (rev.leading() < 0) rev = -rev;
        if (rev == f) {  // anti-palindromic, i.e. X-1: (X-1)^2 is the reciprocal unit
            blocks += mult / 2;
            consumed[i] = true;
            continue;
        }
        bool paired = false;
        for (size_t j = i + 1; j < factors.size(); ++j) {
            if (!consumed[j] && factors[j].first == rev) {
                // pair off min multiplicity as blocks; a reciprocal input has equal mults
                blocks += std::min(mult, factors[j].second);
                consumed[i] = consumed[j] = true;
                paired = true;
                break;
            }
        }
        if (!paired) consumed[i] = true;  // not reciprocal-paired: cannot be split off reciprocally
    }
    return blocks <= 1;
}

inline bool symplectically_irreducible(const ReciprocalPolynomial& p) {
    return symplectically_irreducible(p.poly());
}

}  // namespace pasystole

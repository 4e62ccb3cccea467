#pragma once

#include <cassert>
#include <utility>
#include <vector>

#include "pasystole/intpoly.hpp"

namespace pasystole {

// Minimal polynomial arithmetic over Q, ascending coefficients.
struct RatPoly {
    std::vector<Rat> c;

    RatPoly() = default;
    explicit RatPoly(std::vector<Rat> asc) : c(std::move(asc)) { trim(); }
    static RatPoly from_int(const IntPoly& p) {
        std::vector<Rat> a(p.degree() + 1);
        for (int i = 0; i <= p.degree(); ++i) a[i] = Rat(p[i]);
        return RatPoly(std::move(a));
    }
    static RatPoly constant(Rat v) {
        RatPoly p;
        if (v != 0) p.c = {std::move(v)};
        return p;
    }

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool is_zero() const { return c.empty(); }
    const Rat& leading() const { return c.back(); }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    friend RatPoly operator+(const RatPoly& a, const RatPoly& b) {
        std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return RatPoly(std::move(r));
    }
    friend RatPoly operator-(const RatPoly& a, const RatPoly& b) {
        std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return RatPoly(std::move(r));
    }
    friend RatPoly operator*(const RatPoly& a, const RatPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == 0) continue;
            for (size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        }
        return RatPoly(std::move(r));
    }
    RatPoly scaled(const Rat& f) const {
        std::vector<Rat> r(c);
        for (auto& v : r) v *= f;
        return RatPoly(std::move(r));
    }
    RatPoly monic() const {
        assert(!is_zero());
        return scaled(Rat(1) / leading());
    }
    RatPoly derivative() const {
        if (degree() < 1) return {};
        std::vector<Rat> r(c.size() - 1);
        for (size_t i = 1; i < c.size(); ++i) r[i - 1] = Rat(Int(i)) * c[i];
        return RatPoly(std::move(r));
    }
    Rat eval(const Rat& x) const {
        Rat acc = 0;
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }
};

inline std::pair<RatPoly, RatPoly> divmod(const RatPoly& num, const RatPoly& den) {
    assert(!den.is_zero());
    RatPoly r = num;
    if (num.degree() < den.degree()) return {RatPoly{}, r};
    std::vector<Rat> q(num.degree() - den.degree() + 1, Rat(0));
    for (int k = num.degree() - den.degree(); k >= 0; --k) {
        if (r.degree() < den.degree() + k) continue;
        Rat f = r.c[den.degree() + k] / den.leading();
        q[k] = f;
        for (int i = 0; i <= den.degree(); ++i) r.c[k + i] -= f * den.c[i];
        r.trim();
    }
    return {RatPoly(std::move(q)), r};
}

inline RatPoly gcd(RatPoly a, RatPoly b) {
    while (!b.is_zero()) {
        auto [q, r] = divmod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

// integer gcd of monic-content polynomials via the rational route
inline IntPoly int_gcd(const IntPoly& a, const IntPoly& b) {
    RatPoly g = gcd(RatPoly::from_int(a), RatPoly::from_int(b));
    if (g.is_zero()) return {};
    // clear denominators, divide by content
    Int den = 1;
    for (const auto& v : g.c) den = boost::multiprecision::lcm(den, boost::multiprecision::denominator(v));
    std::vector<Int> c(g.c.size());
    for (size_t i = 0; i < g.c.size(); ++i)
        c[i] = boost::multiprecision::numerator(g.c[i] * Rat(den));
    Int content = 0;
    for (const auto& v : c) content = boost::multiprecision::gcd(content, v);
    if (content > 1)
        for (auto& v : c) v /= content;
    return IntPoly(std::move(c));
}

// Sturm chain; counts distinct real roots of f in (lo, hi]
inline int sturm_count(const RatPoly& f, const Rat& lo, const Rat& hi) {
    std::vector<RatPoly> chain;
    chain.push_back(f);
    chain.push_back(f.derivative());
    while (!chain.back().is_zero() && chain.back().degree() >= 0) {
        const RatPoly& a = chain[chain.size() - 2];
        const RatPoly& b = chain.back();
        if (b.is_zero()) break;
        auto [q, r] = divmod(a, b);
        if (r.is_zero()) break;
        std::vector<Rat> neg(r.c);
        for (auto& v : neg) v = -v;
        chain.push_back(RatPoly(std::move(neg)));
    }
    auto variations = [&](const Rat& x) {
        int count = 0, prev = 0;
        for (const auto& p : chain) {
            if (p.is_zero()) continue;
            int s = sign_of(p.eval(x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++count;
            prev = s;
        }
        return count;
    };
    return variations(lo) - variations(hi);
}

inline int sturm_count(const IntPoly& f, const Rat& lo, const Rat& hi) {
    return sturm_count(RatPoly::from_int(f), lo, hi);
}

}  // namespace pasystole

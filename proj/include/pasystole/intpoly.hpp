#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "pasystole/numeric.hpp"

namespace pasystole {

// Dense polynomial over Z, coefficients stored ascending (c[k] is the X^k term).
class IntPoly {
public:
    IntPoly() = default;
    explicit IntPoly(std::vector<Int> ascending) : c_(std::move(ascending)) { trim(); }

    static IntPoly zero() { return IntPoly{}; }
    static IntPoly one() { return constant(1); }
    static IntPoly constant(Int v) {
        IntPoly p;
        if (v != 0) p.c_ = {std::move(v)};
        return p;
    }
    static IntPoly monomial(int deg, Int coeff = Int(1)) {
        IntPoly p;
        if (coeff != 0) {
            p.c_.assign(deg + 1, Int(0));
            p.c_[deg] = std::move(coeff);
        }
        return p;
    }
    // descending input, e.g. {1,0,-1,-1,-1,0,1} for x^6-x^4-x^3-x^2+1
    static IntPoly from_descending(const std::vector<long long>& d) {
        std::vector<Int> a(d.rbegin(), d.rend());
        return IntPoly(std::move(a));
    }
    static IntPoly from_descending_int(const std::vector<Int>& d) {
        std::vector<Int> a(d.rbegin(), d.rend());
        return IntPoly(std::move(a));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    const Int& operator[](int k) const {
        static const Int kZero{0};
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : kZero;
    }
    const std::vector<Int>& coeffs() const { return c_; }
    std::vector<Int> descending() const { return {c_.rbegin(), c_.rend()}; }
    const Int& leading() const { return c_.back(); }
    bool is_monic() const { return !c_.empty() && c_.back() == 1; }

    friend bool operator==(const IntPoly& a, const IntPoly& b) { return a.c_ == b.c_; }
    friend bool operator!=(const IntPoly& a, const IntPoly& b) { return !(a == b); }
    friend bool operator<(const IntPoly& a, const IntPoly& b) { return a.c_ < b.c_; }

    friend IntPoly operator+(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator-(const IntPoly& a, const IntPoly& b) {
        std::vector<Int> r(std::max(a.c_.size(), b.c_.size()), Int(0));
        for (size_t i = 0; i < a.c_.size(); ++i) r[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return IntPoly(std::move(r));
    }
    friend IntPoly operator*(const IntPoly& a, const IntPoly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Int> r(a.c_.size() + b.c_.size() - 1, Int(0));
        for (size_t i = 0; i < a.c_.size(); ++i) {
            if (a.c_[i] == 0) continue;
            for (size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
        }
        return IntPoly(std::move(r));
    }
    IntPoly operator-() const {
        std::vector<Int> r(c_);
        for (auto& v : r) v = -v;
        return IntPoly(std::move(r));
    }

    // exact division by a monic divisor; nullopt if it does not divide
    std::optional<IntPoly> divide_exact(const IntPoly& d) const {
        assert(d.is_monic());
        if (is_zero()) return IntPoly{};
        if (degree() < d.degree()) return std::nullopt;
        std::vector<Int> rem = c_;
        std::vector<Int> q(degree() - d.degree() + 1, Int(0));
        for (int k = degree() - d.degree(); k >= 0; --k) {
            Int f = rem[k + d.degree()];
            q[k] = f;
            if (f == 0) continue;
            for (int i = 0; i <= d.degree(); ++i) rem[k + i] -= f * d.c_[i];
        }
        for (const auto& v : rem)
            if (v != 0) return std::nullopt;
        return IntPoly(std::move(q));
    }

    IntPoly derivative() const {
        if (degree() < 1) return {};
        std::vector<Int> r(c_.size() - 1);
        for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = Int(i) * c_[i];
        return IntPoly(std::move(r));
    }

    // P(-X)
    IntPoly negate_variable() const {
        std::vector<Int> r(c_);
        for (size_t i = 1; i < r.size(); i += 2) r[i] = -r[i];
        return IntPoly(std::move(r));
    }

    // X^deg * P(1/X)
    IntPoly reverse() const {
        std::vector<Int> r(c_.rbegin(), c_.rend());
        return IntPoly(std::move(r));
    }

    bool is_palindromic() const {
        for (size_t i = 0, j = c_.size(); i < j; ++i)
            if (c_[i] != c_[c_.size() - 1 - i]) return false;
        return true;
    }

    // P(X^k)
    IntPoly compose_power(int k) const {
        if (is_zero()) return {};
        std::vector<Int> r(static_cast<size_t>(degree()) * k + 1, Int(0));
        for (size_t i = 0; i < c_.size(); ++i) r[i * k] = c_[i];
        return IntPoly(std::move(r));
    }

    template <typename T>
    T eval(const T& x) const {
        T acc{};
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + T(it->convert_to<double>());
        return acc;
    }
    double eval_double(double x) const {
        double acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + to_double(*it);
        return acc;
    }
    Rat eval_rat(const Rat& x) const {
        Rat acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + Rat(*it);
        return acc;
    }
    Int eval_int(const Int& x) const {
        Int acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::string out;
        for (int k = degree(); k >= 0; --k) {
            const Int& v = c_[k];
            if (v == 0) continue;
            if (!out.empty()) out += (v > 0) ? " + " : " - ";
            else if (v < 0) out += "-";
            Int av = abs(v);
            if (av != 1 || k == 0) out += av.str();
            if (k > 0) {
                out += var;
                if (k > 1) out += "^" + std::to_string(k);
            }
        }
        return out;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    std::vector<Int> c_;
};

inline int euler_totient(int n) {
    int result = n;
    for (int p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        while (n % p == 0) n /= p;
        result -= result / p;
    }
    if (n > 1) result -= result / n;
    return result;
}

// k-th cyclotomic polynomial, via (X^k - 1) / prod_{d|k, d<k} Phi_d
inline const IntPoly& cyclotomic(int k) {
    static std::map<int, IntPoly> cache;
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    IntPoly num = IntPoly::monomial(k) - IntPoly::one();
    for (int d = 1; d < k; ++d) {
        if (k % d) continue;
        auto q = num.divide_exact(cyclotomic(d));
        assert(q);
        num = *q;
    }
    return cache.emplace(k, std::move(num)).first->second;
}

// all k with totient(k) <= n (finite: totient(k) >= sqrt(k/2))
inline std::vector<int> cyclotomic_indices_up_to_degree(int n) {
    std::vector<int> ks;
    for (int k = 1; k <= 2 * n * n + 2; ++k)
        if (euler_totient(k) <= n) ks.push_back(k);
    return ks;
}

}  // namespace pasystole

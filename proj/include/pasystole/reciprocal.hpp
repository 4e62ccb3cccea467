#pragma once

#include <cmath>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pasystole/intpoly.hpp"

namespace pasystole {

// Monic integer reciprocal polynomial of even degree 2g.  Only the first half
// of the coefficients is stored: half[k-1] is the X^{2g-k} coefficient for
// k = 1..g; the rest follows from a_{2g-k} = a_k and a_0 = a_{2g} = 1.
class ReciprocalPolynomial {
public:
    ReciprocalPolynomial() = default;
    ReciprocalPolynomial(int degree, std::vector<long long> half)
        : degree_(degree), half_(std::move(half)) {
        if (degree_ < 2 || degree_ % 2 != 0)
            throw std::invalid_argument("reciprocal polynomial needs even degree >= 2");
        if (static_cast<int>(half_.size()) != degree_ / 2)
            throw std::invalid_argument("expected g stored coefficients for degree 2g");
    }

    static std::optional<ReciprocalPolynomial> from_poly(const IntPoly& p) {
        int n = p.degree();
        if (n < 2 || n % 2 != 0 || !p.is_monic() || !p.is_palindromic()) return std::nullopt;
        std::vector<long long> half(n / 2);
        for (int k = 1; k <= n / 2; ++k) half[k - 1] = to_i64(p[n - k]);
        return ReciprocalPolynomial(n, std::move(half));
    }

    int degree() const { return degree_; }
    int genus() const { return degree_ / 2; }
    const std::vector<long long>& half_coeffs() const { return half_; }

    // full descending coefficient vector [1, a_1, ..., a_g, ..., a_1, 1]
    std::vector<long long> descending() const {
        std::vector<long long> d;
        d.reserve(degree_ + 1);
        d.push_back(1);
        for (long long v : half_) d.push_back(v);
        for (int k = degree_ / 2 - 1; k >= 1; --k) d.push_back(half_[k - 1]);
        d.push_back(1);
        return d;
    }

    IntPoly poly() const { return IntPoly::from_descending(descending()); }

    ReciprocalPolynomial negate_variable() const {
        std::vector<long long> h(half_);
        for (size_t i = 0; i < h.size(); i += 2) h[i] = -h[i];  // a_k with k odd
        return ReciprocalPolynomial(degree_, std::move(h));
    }

    friend bool operator==(const ReciprocalPolynomial& a, const ReciprocalPolynomial& b) {
        return a.degree_ == b.degree_ && a.half_ == b.half_;
    }
    friend bool operator!=(const ReciprocalPolynomial& a, const ReciprocalPolynomial& b) {
        return !(a == b);
    }
    friend bool operator<(const ReciprocalPolynomial& a, const ReciprocalPolynomial& b) {
        if (a.degree_ != b.degree_) return a.degree_ < b.degree_;
        return a.half_ < b.half_;
    }

    std::string str() const { return poly().str(); }

private:
    int degree_ = 0;
    std::vector<long long> half_;
};

struct TraceVector {
    std::vector<long long> traces;  // p_1..p_g
};

// Newton's recurrence inverted: p_k = -k a_k - sum_{m<k} a_m p_{k-m}.
// Returns nullopt (NonInteger) when some a_k is fractional.
inline std::optional<ReciprocalPolynomial> coeffs_from_traces(const TraceVector& tv, int degree) {
    const auto& p = tv.traces;
    const int g = static_cast<int>(p.size());
    if (degree != 2 * g) throw std::invalid_argument("degree must be twice the trace count");
    std::vector<long long> a(g);
    for (int k = 1; k <= g; ++k) {
        long long s = p[k - 1];
        for (int m = 1; m < k; ++m) s += a[m - 1] * p[k - m - 1];
        if (s % k != 0) return std::nullopt;
        a[k - 1] = -s / k;
    }
    return ReciprocalPolynomial(degree, std::move(a));
}

// Power sums p_1..p_count of any monic integer polynomial; for k > degree the
// linear recurrence with all coefficients applies.
inline std::vector<Int> power_sums(const IntPoly& poly, int count) {
    const int n = poly.degree();
    std::vector<Int> a(n + 1);  // a[k] = coeff of X^{n-k}, a[0] = 1
    for (int k = 0; k <= n; ++k) a[k] = poly[n - k];
    std::vector<Int> p(count);
    for (int k = 1; k <= count; ++k) {
        Int s = 0;
        if (k <= n) {
            s = -Int(k) * a[k];
            for (int m = 1; m < k; ++m) s -= a[m] * p[k - m - 1];
        } else {
            for (int m = 1; m <= n; ++m) s -= a[m] * p[k - m - 1];
        }
        p[k - 1] = s;
    }
    return p;
}

inline std::vector<Int> traces_from_coeffs(const ReciprocalPolynomial& rp, int count) {
    return power_sums(rp.poly(), count);
}

// floor((n/2) (r^k + r^-k)), the reciprocal even-degree trace bound
inline long long trace_bound(int degree, double r, int k) {
    if (!(r > 1.0)) throw std::invalid_argument("trace bound needs r > 1");
    const double v = (degree / 2) * (std::pow(r, k) + std::pow(r, -k));
    return static_cast<long long>(std::floor(v));
}

}  // namespace pasystole

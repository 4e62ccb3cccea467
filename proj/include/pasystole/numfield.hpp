#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pasystole/intpoly.hpp"
#include "pasystole/ratpoly.hpp"
#include "pasystole/rootfind.hpp"

namespace pasystole {

struct DivisionByZero : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotAnEigenvalue : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Q[X]/(minpoly) with one real embedding selected by an isolating rational
// interval.  The interval is certified: the endpoints change sign and the
// Sturm count of minpoly over it is exactly one.
class NumberField {
public:
    NumberField(IntPoly minpoly, Rat lo, Rat hi)
        : minpoly_(std::move(minpoly)), lo_(std::move(lo)), hi_(std::move(hi)) {
        if (!minpoly_.is_monic() || minpoly_.degree() < 1)
            throw std::invalid_argument("minimal polynomial must be monic of positive degree");
        const Rat flo = minpoly_.eval_rat(lo_);
        const Rat fhi = minpoly_.eval_rat(hi_);
        if (sign_of(flo) * sign_of(fhi) >= 0)
            throw std::invalid_argument("embedding interval endpoints must straddle a root");
        if (sturm_count(minpoly_, lo_, hi_) != 1)
            throw std::invalid_argument("embedding interval must isolate exactly one real root");
        build_reduction_table();
    }

    // isolate the real root of p nearest to the numeric value
    static NumberField with_root_near(const IntPoly& p, double x) {
        double radius = 1e-4 * std::max(1.0, std::abs(x));
        for (int attempt = 0; attempt < 60; ++attempt, radius /= 2) {
            Rat lo = rat_from_double(x - radius);
            Rat hi = rat_from_double(x + radius);
            const Rat flo = p.eval_rat(lo);
            const Rat fhi = p.eval_rat(hi);
            if (sign_of(flo) * sign_of(fhi) < 0 && sturm_count(p, lo, hi) == 1)
                return NumberField(p, lo, hi);
        }
        throw std::invalid_argument("could not isolate a real root near " + std::to_string(x));
    }

    const IntPoly& minpoly() const { return minpoly_; }
    int degree() const { return minpoly_.degree(); }
    std::pair<Rat, Rat> embedding() const { return {lo_, hi_}; }
    double approx_root() const {
        refine_to(Rat(1, Int(1) << 60));
        return to_double((lo_ + hi_) / 2);
    }

    // multiplication reduction: table_[i] = X^(deg+i) mod minpoly
    const std::vector<std::vector<Rat>>& reduction_table() const { return table_; }

    // shrink the isolating interval below the given width
    void refine_to(const Rat& width) const {
        while (hi_ - lo_ > width) {
            Rat mid = (lo_ + hi_) / 2;
            const Rat fm = minpoly_.eval_rat(mid);
            if (fm == 0) {  // rational root: pinch the interval around it
                Rat eps = (hi_ - lo_) / 1024;
                lo_ = mid - eps;
                hi_ = mid + eps;
                if (hi_ - lo_ <= width) break;
                eps = width / 4;
                lo_ = mid - eps;
                hi_ = mid + eps;
                break;
            }
            if (sign_of(minpoly_.eval_rat(lo_)) * sign_of(fm) < 0) hi_ = mid;
            else lo_ = mid;
        }
    }

private:
    static Rat rat_from_double(double x) {
        // exact binary expansion of the double
        long long scaled = static_cast<long long>(x * 9007199254740992.0);  // 2^53
        return Rat(Int(scaled), Int(9007199254740992LL));
    }
    void build_reduction_table() {
        const int d = degree();
        table_.clear();
        std::vector<Rat> cur(d);  // X^d mod minpoly = -lower part
        for (int i = 0; i < d; ++i) cur[i] = -Rat(minpoly_[i]);
        table_.push_back(cur);
        for (int k = 1; k < d - 1; ++k) {
            std::vector<Rat> next(d, Rat(0));
            // multiply cur by X, reduce
            Rat top = cur[d - 1];
            for (int i = d - 1; i >= 1; --i) next[i] = cur[i - 1];
            next[0] = 0;
            if (top != 0)
                for (int i = 0; i < d; ++i) next[i] += top * table_[0][i];
            table_.push_back(next);
            cur = std::move(next);
        }
    }

    IntPoly minpoly_;
    mutable Rat lo_, hi_;
    std::vector<std::vector<Rat>> table_;
};

// Element of the field in the power basis: coords[i] is the alpha^i coefficient.
class FieldElement {
public:
    FieldElement() = default;
    FieldElement(std::shared_ptr<const NumberField> field, std::vector<Rat> coords)
        : field_(std::move(field)), c_(std::move(coords)) {
        c_.resize(field_->degree(), Rat(0));
    }

    static FieldElement zero(std::shared_ptr<const NumberField> f) {
        return FieldElement(std::move(f), {});
    }
    static FieldElement one(std::shared_ptr<const NumberField> f) {
        return FieldElement(std::move(f), {Rat(1)});
    }
    static FieldElement generator(std::shared_ptr<const NumberField> f) {
        return FieldElement(std::move(f), {Rat(0), Rat(1)});
    }
    static FieldElement rational(std::shared_ptr<const NumberField> f, Rat v) {
        return FieldElement(std::move(f), {std::move(v)});
    }

    const std::vector<Rat>& coords() const { return c_; }
    const std::shared_ptr<const NumberField>& field() const { return field_; }
    bool is_zero() const {
        for (const auto& v : c_)
            if (v != 0) return false;
        return true;
    }

    friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
        std::vector<Rat> r(a.c_);
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] += b.c_[i];
        return FieldElement(a.field_, std::move(r));
    }
    friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
        std::vector<Rat> r(a.c_);
        for (size_t i = 0; i < b.c_.size(); ++i) r[i] -= b.c_[i];
        return FieldElement(a.field_, std::move(r));
    }
    FieldElement operator-() const {
        std::vector<Rat> r(c_);
        for (auto& v : r) v = -v;
        return FieldElement(field_, std::move(r));
    }
    friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
        const int d = a.field_->degree();
        std::vector<Rat> prod(2 * d - 1, Rat(0));
        for (int i = 0; i < d; ++i) {
            if (a.c_[i] == 0) continue;
            for (int j = 0; j < d; ++j) {
                if (b.c_[j] == 0) continue;
                prod[i + j] += a.c_[i] * b.c_[j];
            }
        }
        const auto& table = a.field_->reduction_table();
        std::vector<Rat> r(prod.begin(), prod.begin() + d);
        for (int k = d; k < 2 * d - 1; ++k) {
            if (prod[k] == 0) continue;
            for (int i = 0; i < d; ++i) r[i] += prod[k] * table[k - d][i];
        }
        return FieldElement(a.field_, std::move(r));
    }
    FieldElement scaled(const Rat& f) const {
        std::vector<Rat> r(c_);
        for (auto& v : r) v *= f;
        return FieldElement(field_, std::move(r));
    }

    FieldElement inverse() const {
        if (is_zero()) throw DivisionByZero("field inverse of zero");
        // extended euclid: s * this + t * minpoly = gcd
        RatPoly r0 = RatPoly::from_int(field_->minpoly());
        RatPoly r1{std::vector<Rat>(c_)};
        r1.trim();
        RatPoly s0 = RatPoly::constant(Rat(0));
        RatPoly s1 = RatPoly::constant(Rat(1));
        while (r1.degree() > 0) {
            auto [q, rem] = divmod(r0, r1);
            RatPoly s2 = s0 - q * s1;
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        if (r1.is_zero())
            throw DivisionByZero("zero divisor: minimal polynomial is reducible");
        const Rat inv_c = Rat(1) / r1.c[0];
        std::vector<Rat> out(field_->degree(), Rat(0));
        for (size_t i = 0; i < s1.c.size() && i < out.size(); ++i) out[i] = s1.c[i] * inv_c;
        return FieldElement(field_, std::move(out));
    }

    friend bool operator==(const FieldElement& a, const FieldElement& b) {
        return (a - b).is_zero();
    }
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    double to_double_approx() const {
        double alpha = field_->approx_root();
        double acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * alpha + to_double(*it);
        return acc;
    }

    // Exact sign under the embedding: zero test first (gcd with minpoly has a
    // root in the isolating interval), then interval refinement until the
    // interval evaluation excludes zero.
    int sign() const {
        if (is_zero()) return 0;
        RatPoly f{std::vector<Rat>(c_)};
        f.trim();
        if (f.degree() >= 1) {
            RatPoly g = gcd(f, RatPoly::from_int(field_->minpoly()));
            if (g.degree() >= 1) {
                auto [lo, hi] = field_->embedding();
                if (sturm_count(g, lo, hi) >= 1) return 0;
            }
        }
        for (int iter = 0; iter < 4096; ++iter) {
            auto [lo, hi] = field_->embedding();
            auto [mn, mx] = interval_eval(lo, hi);
            if (mn > 0) return 1;
            if (mx < 0) return -1;
            field_->refine_to((hi - lo) / 2);
        }
        throw std::runtime_error("sign refinement failed to converge");
    }

private:
    std::pair<Rat, Rat> interval_eval(const Rat& lo, const Rat& hi) const {
        Rat mn = 0, mx = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
            // [mn,mx] * [lo,hi] + coeff
            Rat a = mn * lo, b = mn * hi, c2 = mx * lo, d = mx * hi;
            Rat nmn = std::min(std::min(a, b), std::min(c2, d));
            Rat nmx = std::max(std::max(a, b), std::max(c2, d));
            mn = nmn + *it;
            mx = nmx + *it;
        }
        return {mn, mx};
    }

    std::shared_ptr<const NumberField> field_;
    std::vector<Rat> c_;
};

using FieldVector = std::vector<FieldElement>;
using FieldMatrix = std::vector<std::vector<FieldElement>>;

// characteristic polynomial of an integer matrix (Faddeev-LeVerrier over Q)
inline IntPoly charpoly_int(const std::vector<std::vector<long long>>& m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<Rat>> M(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) M[i][j] = Rat(m[i][j]);
    std::vector<std::vector<Rat>> A = M;
    std::vector<Rat> coeff(n + 1, Rat(0));
    coeff[n] = 1;
    for (int k = 1; k <= n; ++k) {
        Rat tr = 0;
        for (int i = 0; i < n; ++i) tr += A[i][i];
        Rat ck = -tr / Rat(k);
        coeff[n - k] = ck;
        if (k == n) break;
        for (int i = 0; i < n; ++i) A[i][i] += ck;
        // A = M * A
        std::vector<std::vector<Rat>> B(n, std::vector<Rat>(n, Rat(0)));
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < n; ++l) {
                if (M[i][l] == 0) continue;
                for (int j = 0; j < n; ++j) B[i][j] += M[i][l] * A[l][j];
            }
        A = std::move(B);
    }
    std::vector<Int> out(n + 1);
    for (int i = 0; i <= n; ++i) {
        if (boost::multiprecision::denominator(coeff[i]) != 1)
            throw std::logic_error("characteristic polynomial came out non-integral");
        out[i] = boost::multiprecision::numerator(coeff[i]);
    }
    return IntPoly(std::move(out));
}

// Exact kernel vector of (M - eigenvalue I), normalized so the designated
// coordinate is one.  The eigenvalue is verified against the characteristic
// polynomial first.
inline FieldVector solve_eigenvector(const std::vector<std::vector<long long>>& m,
                                     const FieldElement& eigenvalue,
                                     int normalize_index = -1) {
    const int n = static_cast<int>(m.size());
    auto field = eigenvalue.field();
    {
        IntPoly chi = charpoly_int(m);
        FieldElement acc = FieldElement::zero(field);
        for (int i = chi.degree(); i >= 0; --i) {
            acc = acc * eigenvalue + FieldElement::rational(field, Rat(chi[i]));
        }
        if (!acc.is_zero())
            throw NotAnEigenvalue("value is not a root of the characteristic polynomial");
    }
    FieldMatrix A(n, FieldVector(n, FieldElement::zero(field)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            A[i][j] = FieldElement::rational(field, Rat(m[i][j]));
            if (i == j) A[i][j] = A[i][j] - eigenvalue;
        }
    std::vector<int> pivot_col;
    int row = 0;
    for (int col = 0; col < n && row < n; ++col) {
        int p = -1;
        for (int r = row; r < n; ++r)
            if (!A[r][col].is_zero()) { p = r; break; }
        if (p < 0) continue;
        std::swap(A[row], A[p]);
        FieldElement inv = A[row][col].inverse();
        for (int j = 0; j < n; ++j) A[row][j] = A[row][j] * inv;
        for (int r = 0; r < n; ++r) {
            if (r == row || A[r][col].is_zero()) continue;
            FieldElement f = A[r][col];
            for (int j = 0; j < n; ++j) A[r][j] = A[r][j] - f * A[row][j];
        }
        pivot_col.push_back(col);
        ++row;
    }
    std::vector<bool> is_pivot(n, false);
    for (int c : pivot_col) is_pivot[c] = true;
    int free_col = -1;
    for (int c = n - 1; c >= 0; --c)
        if (!is_pivot[c]) { free_col = c; break; }
    if (free_col < 0) throw NotAnEigenvalue("eigenspace is trivial");
    FieldVector v(n, FieldElement::zero(field));
    v[free_col] = FieldElement::one(field);
    for (size_t r = 0; r < pivot_col.size(); ++r)
        v[pivot_col[r]] = -A[r][free_col];
    if (normalize_index < 0) normalize_index = n - 1;
    if (v[normalize_index].is_zero())
        throw std::runtime_error("normalization coordinate of the eigenvector vanishes");
    FieldElement scale = v[normalize_index].inverse();
    for (auto& x : v) x = x * scale;
    return v;
}

}  // namespace pasystole

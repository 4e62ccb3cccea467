#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "pasystole/perron.hpp"
#include "pasystole/reciprocal.hpp"

namespace pasystole {

// Multiset of singularity degrees; orientable strata have even entries >= 2
// summing to 4g-4.
struct Stratum {
    std::vector<int> degrees;  // ascending
    int genus = 0;

    static Stratum of(std::vector<int> degs) {
        std::sort(degs.begin(), degs.end());
        int sum = std::accumulate(degs.begin(), degs.end(), 0);
        if (sum % 4 != 0) throw std::invalid_argument("degree sum must be 4g-4");
        Stratum s;
        s.degrees = std::move(degs);
        s.genus = (sum + 4) / 4;
        return s;
    }
    std::string str() const {
        std::string out = "(";
        for (size_t i = 0; i < degrees.size(); ++i) {
            if (i) out += ",";
            out += std::to_string(degrees[i]);
        }
        return out + ")";
    }
    friend bool operator==(const Stratum& a, const Stratum& b) { return a.degrees == b.degrees; }
    friend bool operator!=(const Stratum& a, const Stratum& b) { return !(a == b); }
    friend bool operator<(const Stratum& a, const Stratum& b) { return a.degrees < b.degrees; }
};

// all partitions of 4g-4 into even parts >= 2, each ascending
inline std::vector<Stratum> enumerate_strata(int genus) {
    if (genus < 2) throw std::invalid_argument("strata need genus >= 2");
    std::vector<Stratum> out;
    std::vector<int> cur;
    std::function<void(int, int)> rec = [&](int rest, int minpart) {
        if (rest == 0) {
            out.push_back(Stratum::of(cur));
            return;
        }
        for (int p = minpart; p <= rest; p += 2) {
            cur.push_back(p);
            rec(rest - p, p);
            cur.pop_back();
        }
    };
    rec(4 * genus - 4, 2);
    std::sort(out.begin(), out.end());
    return out;
}

// Double cover branched over the odd-degree singular points: odd k lifts to
// one singularity of degree 2k+2, even k to two of degree k; zeros dropped.
inline Stratum orienting_double_cover(const std::vector<int>& data) {
    std::vector<int> degs;
    for (int k : data) {
        if (k < -1) throw std::invalid_argument("singularity degree must be >= -1");
        if (k % 2 != 0) {
            int lifted = 2 * k + 2;
            if (lifted != 0) degs.push_back(lifted);
        } else if (k != 0) {
            degs.push_back(k);
            degs.push_back(k);
        }
    }
    return Stratum::of(std::move(degs));
}

struct LefschetzProfile {
    ReciprocalPolynomial charpoly;
    int sign = 0;                     // sign of the dominant root of charpoly
    std::vector<long long> numbers;   // L(phi^n) = 2 - Tr(phi_*^n), n = 1..N
};

inline LefschetzProfile lefschetz_sequence(const ReciprocalPolynomial& charpoly, int horizon) {
    RootProfile prof = perron_analysis(charpoly);
    if (!prof.allowable())
        throw std::invalid_argument("characteristic polynomial is not allowable: " + charpoly.str());
    LefschetzProfile out;
    out.charpoly = charpoly;
    out.sign = prof.sign;
    auto p = traces_from_coeffs(charpoly, horizon);
    out.numbers.resize(horizon);
    for (int n = 1; n <= horizon; ++n) out.numbers[n - 1] = to_i64(Int(2) - p[n - 1]);
    return out;
}

// One cycle of `length` singularities of the given degree, whose first-return
// map rotates the degree+2 separatrices by `rotation` (order `order` in
// Z_{degree+2}).
struct OrbitCycle {
    int degree = 0;
    int length = 1;
    int rotation = 0;
    int order = 1;

    friend bool operator<(const OrbitCycle& a, const OrbitCycle& b) {
        return std::tie(a.degree, a.length, a.order, a.rotation) <
               std::tie(b.degree, b.length, b.order, b.rotation);
    }
    friend bool operator==(const OrbitCycle& a, const OrbitCycle& b) {
        return a.degree == b.degree && a.length == b.length && a.order == b.order;
    }
};

struct OrbitStructure {
    std::vector<OrbitCycle> cycles;

    Stratum stratum() const {
        std::vector<int> degs;
        for (const auto& c : cycles)
            for (int i = 0; i < c.length; ++i) degs.push_back(c.degree);
        return Stratum::of(std::move(degs));
    }
};

// Index bookkeeping for one cycle at iterate n.  The singularities are fixed
// iff length | n; then each contributes 1 - (degree+2) when the iterate
// preserves foliation orientation (sign^n = +1) and all separatrices are
// fixed (order | n/length), and +1 otherwise.
inline long long cycle_contribution(const OrbitCycle& c, int sign, int n) {
    if (n % c.length) return 0;
    const int m = n / c.length;
    const bool positive = (sign == 1) || (n % 2 == 0);
    if (positive && m % c.order == 0) return static_cast<long long>(c.length) * (1 - (c.degree + 2));
    return c.length;
}

inline long long singularity_contribution(const OrbitStructure& s, int sign, int n) {
    long long total = 0;
    for (const auto& c : s.cycles) total += cycle_contribution(c, sign, n);
    return total;
}

// Rotations allowed for a cycle: the return map exchanges ingoing/outgoing
// separatrices exactly when sign^length = -1, i.e. the rotation is odd iff
// sign = -1 and the cycle length is odd.  Distinct orders give distinct
// contribution sequences; one representative per order.
inline std::vector<OrbitCycle> allowed_cycles(int degree, int length, int sign) {
    const int M = degree + 2;
    const bool odd_required = (sign == -1) && (length % 2 == 1);
    std::map<int, int> order_rep;  // order -> smallest rotation
    for (int t = 0; t < M; ++t) {
        if ((t % 2 == 1) != odd_required) continue;
        const int o = t == 0 ? 1 : M / std::gcd(t, M);
        if (!order_rep.count(o)) order_rep[o] = t;
    }
    std::vector<OrbitCycle> out;
    for (auto [o, t] : order_rep) out.push_back({degree, length, t, o});
    return out;
}

// All orbit structures on a stratum for a given sign: per degree class, every
// partition of the multiplicity into cycles, each decorated with a rotation
// class; canonical (sorted) within classes to avoid duplicates.
inline std::vector<OrbitStructure> enumerate_orbit_structures(const Stratum& st, int sign) {
    std::map<int, int> classes;
    for (int d : st.degrees) ++classes[d];

    std::vector<std::vector<std::vector<OrbitCycle>>> per_class;
    for (auto [deg, mult] : classes) {
        std::vector<std::vector<OrbitCycle>> options;
        std::vector<int> part;
        std::function<void(int, int)> parts = [&](int rest, int minp) {
            if (rest == 0) {
                // decorate the fixed partition
                std::vector<OrbitCycle> cur;
                std::function<void(size_t)> dec = [&](size_t i) {
                    if (i == part.size()) {
                        options.push_back(cur);
                        return;
                    }
                    for (const OrbitCycle& c : allowed_cycles(deg, part[i], sign)) {
                        if (i > 0 && part[i - 1] == part[i] && c < cur.back()) continue;
                        cur.push_back(c);
                        dec(i + 1);
                        cur.pop_back();
                    }
                };
                dec(0);
                return;
            }
            for (int p = minp; p <= rest; ++p) {
                part.push_back(p);
                parts(rest - p, p);
                part.pop_back();
            }
        };
        parts(mult, 1);
        per_class.push_back(std::move(options));
    }

    std::vector<OrbitStructure> out;
    std::vector<size_t> pick(per_class.size(), 0);
    for (;;) {
        OrbitStructure s;
        for (size_t i = 0; i < per_class.size(); ++i)
            for (const auto& c : per_class[i][pick[i]])
                s.cycles.push_back(c);
        std::sort(s.cycles.begin(), s.cycles.end());
        out.push_back(std::move(s));
        size_t i = 0;
        for (; i < pick.size(); ++i) {
            if (++pick[i] < per_class[i].size()) break;
            pick[i] = 0;
        }
        if (i == pick.size()) break;
    }
    return out;
}

struct FeasibilityWitness {
    OrbitStructure structure;
    std::map<int, long long> regular_orbit_counts;  // period -> count (zeros omitted)
    int horizon = 0;
};

enum class InfeasibleReason { Sign, Negativity, Integrality };

struct Infeasible {
    int iterate = 0;
    InfeasibleReason reason = InfeasibleReason::Sign;
};

inline const char* reason_str(InfeasibleReason r) {
    switch (r) {
        case InfeasibleReason::Sign: return "sign";
        case InfeasibleReason::Negativity: return "negativity";
        case InfeasibleReason::Integrality: return "integrality";
    }
    return "?";
}

// Regular fixed points of phi^n have index -1 when sign^n = +1 and +1 when
// sign^n = -1; the deficit D(n) = L(n) - S(n) must equal s(n) * sum_{p|n} p c_p
// with every c_p a nonnegative integer.
inline std::optional<Infeasible> solve_regular_orbits(const LefschetzProfile& profile,
                                                      const OrbitStructure& structure,
                                                      FeasibilityWitness* witness = nullptr) {
    const int N = static_cast<int>(profile.numbers.size());
    std::vector<long long> c(N + 1, 0);
    for (int n = 1; n <= N; ++n) {
        const long long S = singularity_contribution(structure, profile.sign, n);
        const long long D = profile.numbers[n - 1] - S;
        const int s = (profile.sign == -1 && n % 2 == 1) ? 1 : -1;
        const long long R = D * s;
        if (R < 0) return Infeasible{n, InfeasibleReason::Sign};
        long long acc = 0;
        for (int p = 1; p < n; ++p)
            if (n % p == 0) acc += static_cast<long long>(p) * c[p];
        const long long rem = R - acc;
        if (rem < 0) return Infeasible{n, InfeasibleReason::Negativity};
        if (rem % n) return Infeasible{n, InfeasibleReason::Integrality};
        c[n] = rem / n;
    }
    if (witness) {
        witness->structure = structure;
        witness->horizon = N;
        witness->regular_orbit_counts.clear();
        for (int n = 1; n <= N; ++n)
            if (c[n]) witness->regular_orbit_counts[n] = c[n];
    }
    return std::nullopt;
}

// Every witness surviving the compensation check up to the profile horizon;
// empty means the stratum is eliminated for this characteristic polynomial.
inline std::vector<FeasibilityWitness> stratum_feasible(const ReciprocalPolynomial& charpoly,
                                                        const Stratum& stratum, int horizon) {
    if (stratum.genus != charpoly.genus())
        throw std::invalid_argument("stratum genus does not match polynomial degree");
    LefschetzProfile profile = lefschetz_sequence(charpoly, horizon);
    std::vector<FeasibilityWitness> out;
    for (const OrbitStructure& s : enumerate_orbit_structures(stratum, profile.sign)) {
        FeasibilityWitness w;
        if (!solve_regular_orbits(profile, s, &w)) out.push_back(std::move(w));
    }
    return out;
}

// recomputes L(n) from the witness parts; true when it reproduces the profile
inline bool verify_witness(const LefschetzProfile& profile, const FeasibilityWitness& w) {
    const int N = static_cast<int>(profile.numbers.size());
    for (int n = 1; n <= N; ++n) {
        long long S = singularity_contribution(w.structure, profile.sign, n);
        long long ro = 0;
        for (auto [p, cp] : w.regular_orbit_counts)
            if (n % p == 0) ro += static_cast<long long>(p) * cp;
        const int s = (profile.sign == -1 && n % 2 == 1) ? 1 : -1;
        if (profile.numbers[n - 1] != S + s * ro) return false;
    }
    return true;
}

}  // namespace pasystole

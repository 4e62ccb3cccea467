#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "pasystole/perron.hpp"
#include "pasystole/reciprocal.hpp"

namespace pasystole {

struct BoundTooLow : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct OracleScaleExceeded : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct RootBound {
    std::optional<IntPoly> defining_poly;
    double value = 0;
    bool strict = true;

    static RootBound from_value(double v) {
        RootBound b;
        b.value = v;
        return b;
    }
    static RootBound from_poly(IntPoly p) {
        RootBound b;
        b.value = dominant_root_value(p);
        b.defining_poly = std::move(p);
        return b;
    }
};

struct Candidate {
    ReciprocalPolynomial poly;  // Perron-normalized: dominant root positive
    double root = 0;

    friend bool operator<(const Candidate& a, const Candidate& b) {
        if (std::abs(a.root - b.root) > 1e-12) return a.root < b.root;
        return a.poly.descending() < b.poly.descending();
    }
    friend bool operator==(const Candidate& a, const Candidate& b) {
        return a.poly == b.poly;
    }
};

struct SearchStats {
    Int total_cases = 0;
    Int fractional = 0;          // rejected at the integrality step
    std::uint64_t surviving = 0; // trace vectors reaching root analysis
    std::uint64_t root_rejections = 0;
    std::uint64_t boundary_hits = 0;  // root equal to the bound within 1e-9 (excluded, logged)
    std::uint64_t ambiguous = 0;      // emitted to review, never silently dropped
    std::vector<ReciprocalPolynomial> review;

    void absorb(const SearchStats& o) {
        total_cases += o.total_cases;
        fractional += o.fractional;
        surviving += o.surviving;
        root_rejections += o.root_rejections;
        boundary_hits += o.boundary_hits;
        ambiguous += o.ambiguous;
        review.insert(review.end(), o.review.begin(), o.review.end());
    }
};

struct CandidateSet {
    int genus = 0;
    RootBound bound;
    std::vector<Candidate> candidates;
    SearchStats stats;
};

// Serializable unit of work: one p1 value and a p2 range.
struct ShardDesc {
    int genus = 0;
    double bound_value = 0;
    long long p1 = 0;
    long long p2_lo = 0, p2_hi = 0;  // inclusive; ignored when genus == 1
};

namespace detail {

inline std::vector<long long> trace_box(int genus, double r) {
    std::vector<long long> tb(genus);
    for (int k = 1; k <= genus; ++k) tb[k - 1] = trace_bound(2 * genus, r, k);
    return tb;
}

// coefficient bounds: |a_k| <= [X^{2g-k}] (X^2 + tX + 1)^g with t = r + 1/r
inline std::vector<double> coefficient_bounds(int genus, double r) {
    const double t = r + 1.0 / r;
    std::vector<double> c = {1.0};
    for (int rep = 0; rep < genus; ++rep) {
        std::vector<double> n(c.size() + 2, 0.0);
        for (size_t i = 0; i < c.size(); ++i) {
            n[i] += c[i];
            n[i + 1] += c[i] * t;
            n[i + 2] += c[i];
        }
        c = std::move(n);
    }
    std::vector<double> out(genus);
    for (int k = 1; k <= genus; ++k) out[k - 1] = c[2 * genus - k];
    return out;
}

struct LeafFilter {
    int genus;
    double bound;
    SearchStats* stats;
    std::vector<Candidate>* found;
    mutable std::vector<double> dd;  // descending coefficients, reused between leaves

    // Newton from `start` on the descending coefficients (optionally of
    // P(-X)); converges monotonically onto the largest real root when it is
    // dominant and below `start`.
    std::optional<double> newton_desc(bool flip, double start) const {
        const int n = static_cast<int>(dd.size()) - 1;
        double x = start;
        for (int it = 0; it < 80; ++it) {
            double f = 0, fp = 0;
            for (int i = 0; i <= n; ++i) {
                double cv = dd[i];
                if (flip && ((n - i) % 2)) cv = -cv;
                fp = fp * x + f;
                f = f * x + cv;
            }
            if (fp <= 0) return std::nullopt;
            const double step = f / fp;
            const double xn = x - step;
            if (xn > x + 1e-12 * std::abs(x)) return std::nullopt;
            if (xn < 1.0 - 1e-9) return std::nullopt;
            if (std::abs(step) < 1e-14 * std::max(1.0, std::abs(x))) return xn;
            x = xn;
        }
        return std::nullopt;
    }

    void operator()(const std::vector<long long>& half) const {
        ++stats->surviving;
        const int n = 2 * genus;
        dd.resize(n + 1);
        dd[0] = 1;
        for (int k = 1; k <= genus; ++k) dd[k] = static_cast<double>(half[k - 1]);
        for (int k = genus + 1; k <= n; ++k) dd[k] = dd[n - k];

        // quick certificates on P and P(-X): a negative value at the bound
        // means a real root beyond it, hence dominant modulus >= bound
        auto horner = [&](bool flip) {
            double acc = 0, scale = 0;
            for (int i = 0; i <= n; ++i) {
                double cv = dd[i];
                if (flip && ((n - i) % 2)) cv = -cv;
                acc = acc * bound + cv;
                scale = scale * bound + std::abs(cv);
            }
            return std::make_pair(acc, scale);
        };
        bool hit = false;
        for (int flip = 0; flip < 2 && !hit; ++flip) {
            auto [fb, scale] = horner(flip);
            const double eps = 1e-12 * std::max(1.0, scale);
            if (fb < -eps) { ++stats->root_rejections; return; }
            if (fb <= eps) { hit = true; break; }  // boundary region: certify exactly
            auto x = newton_desc(flip, bound);
            if (x && *x > 1.01 && *x < bound + 1e-9) hit = true;
        }
        if (!hit) { ++stats->root_rejections; return; }

        ReciprocalPolynomial rp(n, half);
        RootProfile prof;
        try {
            prof = perron_analysis(rp);
        } catch (const AmbiguousDominance&) {
            ++stats->ambiguous;
            stats->review.push_back(rp);
            return;
        }
        if (!prof.allowable()) { ++stats->root_rejections; return; }
        const double rho = std::abs(prof.dominant_value);
        if (std::abs(rho - bound) <= 1e-9) { ++stats->boundary_hits; return; }
        if (rho <= 1.0 + 1e-9 || rho > bound) { ++stats->root_rejections; return; }
        Candidate c;
        c.poly = (prof.sign < 0) ? rp.negate_variable() : rp;
        c.root = rho;
        found->push_back(std::move(c));
    }
};

// Depth-first walk over trace vectors with p_k stepped by k (the Newton
// recurrence fixes p_k mod k once the outer levels are chosen) and the
// coefficient box as a sound prune.
inline void walk_traces(int genus, const std::vector<long long>& tb,
                        const std::vector<double>& cb, const ShardDesc& shard,
                        const LeafFilter& leaf) {
    std::vector<long long> p(genus), a(genus);
    std::function<void(int)> rec = [&](int k) {
        // a_k = -(p_k + S)/k with S from outer levels
        long long S = 0;
        for (int m = 1; m < k; ++m) S += a[m - 1] * p[k - m - 1];
        long long lo = (k == 1) ? 0 : -tb[k - 1];
        long long hi = tb[k - 1];
        if (k == 1) { lo = hi = shard.p1; }
        if (k == 2 && genus >= 2) {
            lo = std::max(lo, shard.p2_lo);
            hi = std::min(hi, shard.p2_hi);
        }
        long long rem = ((-S) % k + k) % k;
        long long start = lo + (((rem - lo) % k + k) % k);
        for (long long pk = start; pk <= hi; pk += k) {
            long long ak = -(pk + S) / k;
            if (std::abs(static_cast<double>(ak)) > cb[k - 1] + 1e-9) continue;
            p[k - 1] = pk;
            a[k - 1] = ak;
            if (k == genus) leaf(a);
            else rec(k + 1);
        }
    };
    rec(1);
}

}  // namespace detail

inline std::vector<ShardDesc> make_shards(int genus, const RootBound& bound, int shard_count) {
    auto tb = detail::trace_box(genus, bound.value);
    std::vector<ShardDesc> shards;
    const long long t2 = (genus >= 2) ? tb[1] : 0;
    // p1 is the primary key; p2 ranges split further when asked for more shards
    int p2_chunks = 1;
    if (genus >= 7 && shard_count > static_cast<int>(tb[0] + 1))
        p2_chunks = std::max<int>(1, shard_count / static_cast<int>(tb[0] + 1));
    const long long span = 2 * t2 + 1;
    const long long chunk = std::max<long long>(1, (span + p2_chunks - 1) / p2_chunks);
    for (long long p1 = 0; p1 <= tb[0]; ++p1) {
        for (long long lo = -t2; lo <= t2; lo += chunk) {
            ShardDesc s;
            s.genus = genus;
            s.bound_value = bound.value;
            s.p1 = p1;
            s.p2_lo = lo;
            s.p2_hi = std::min(t2, lo + chunk - 1);
            shards.push_back(s);
            if (genus < 2) break;
        }
    }
    return shards;
}

inline std::pair<std::vector<Candidate>, SearchStats> enumerate_shard(const ShardDesc& shard) {
    std::vector<Candidate> found;
    SearchStats stats;
    auto tb = detail::trace_box(shard.genus, shard.bound_value);
    auto cb = detail::coefficient_bounds(shard.genus, shard.bound_value);
    detail::LeafFilter leaf{shard.genus, shard.bound_value, &stats, &found};
    detail::walk_traces(shard.genus, tb, cb, shard, leaf);
    return {std::move(found), std::move(stats)};
}

inline void sort_dedupe(std::vector<Candidate>& cands) {
    std::sort(cands.begin(), cands.end());
    cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
}

// Full enumeration: every allowable reciprocal polynomial of degree 2*genus
// with dominant modulus in (1, bound), Perron-normalized, sorted, deduped.
inline CandidateSet enumerate_candidates(int genus, const RootBound& bound, int threads = 1) {
    if (genus < 1 || genus > 10) throw std::invalid_argument("genus must be within 1..10");
    if (!(bound.value > 1.0)) throw BoundTooLow("bound must exceed 1");
    CandidateSet out;
    out.genus = genus;
    out.bound = bound;

    auto shards = make_shards(genus, bound, threads);
    std::vector<std::pair<std::vector<Candidate>, SearchStats>> results(shards.size());
    if (threads <= 1) {
        for (size_t i = 0; i < shards.size(); ++i) results[i] = enumerate_shard(shards[i]);
    } else {
        std::atomic<size_t> next{0};
        auto work = [&] {
            for (;;) {
                size_t i = next.fetch_add(1);
                if (i >= shards.size()) return;
                results[i] = enumerate_shard(shards[i]);
            }
        };
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(work);
        for (auto& t : pool) t.join();
    }
    for (auto& [cands, stats] : results) {
        out.candidates.insert(out.candidates.end(), cands.begin(), cands.end());
        out.stats.absorb(stats);
    }
    sort_dedupe(out.candidates);

    auto tb = detail::trace_box(genus, bound.value);
    Int total = tb[0] + 1;
    for (int k = 2; k <= genus; ++k) total *= Int(2 * tb[k - 1] + 1);
    out.stats.total_cases = total;
    out.stats.fractional = total - Int(out.stats.surviving);
    return out;
}

struct TraceCaseCounts {
    Int total = 0;
    Int fractional = 0;
    Int surviving = 0;
};

// Counts only; integrality survivors are counted without the coefficient or
// root pruning so the numbers are intrinsic to the trace box.
inline TraceCaseCounts count_trace_cases(int genus, const RootBound& bound) {
    if (!(bound.value > 1.0)) throw BoundTooLow("bound must exceed 1");
    auto tb = detail::trace_box(genus, bound.value);
    TraceCaseCounts out;
    out.total = tb[0] + 1;
    for (int k = 2; k <= genus; ++k) out.total *= Int(2 * tb[k - 1] + 1);

    std::uint64_t surv = 0;
    std::vector<long long> p(genus), a(genus);
    std::function<void(int)> rec = [&](int k) {
        long long S = 0;
        for (int m = 1; m < k; ++m) S += a[m - 1] * p[k - m - 1];
        long long lo = (k == 1) ? 0 : -tb[k - 1];
        long long hi = tb[k - 1];
        long long rem = ((-S) % k + k) % k;
        long long start = lo + (((rem - lo) % k + k) % k);
        for (long long pk = start; pk <= hi; pk += k) {
            p[k - 1] = pk;
            a[k - 1] = -(pk + S) / k;
            if (k == genus) ++surv;
            else rec(k + 1);
        }
    };
    rec(1);
    out.surviving = surv;
    out.fractional = out.total - out.surviving;
    return out;
}

// Direct coefficient-box oracle (genus <= 4).  Case counting follows the sign
// normalization: a1 > 0, or a1 = 0 and the first subsequent nonzero
// odd-index coefficient > 0, or all odd-index coefficients 0.
inline std::pair<CandidateSet, Int> coefficient_enumerate(int genus, const RootBound& bound) {
    if (genus > 4) throw OracleScaleExceeded("coefficient oracle supports genus <= 4");
    if (!(bound.value > 1.0)) throw BoundTooLow("bound must exceed 1");
    auto cbd = detail::coefficient_bounds(genus, bound.value);
    std::vector<long long> cb(genus);
    for (int k = 0; k < genus; ++k) cb[k] = static_cast<long long>(std::floor(cbd[k]));

    CandidateSet out;
    out.genus = genus;
    out.bound = bound;
    Int cases = 0;
    std::vector<long long> half(genus);
    detail::LeafFilter leaf{genus, bound.value, &out.stats, &out.candidates};

    std::function<void(int, int)> rec = [&](int k, int sign_state) {
        // sign_state: 0 = all odd coeffs so far zero, 1 = first nonzero odd was positive
        if (k > genus) {
            ++cases;
            ++out.stats.total_cases;
            leaf(half);
            return;
        }
        const bool odd = (k % 2 == 1);
        long long lo = -cb[k - 1], hi = cb[k - 1];
        for (long long v = lo; v <= hi; ++v) {
            if (odd && sign_state == 0 && v < 0) continue;  // canonical under X -> -X
            half[k - 1] = v;
            rec(k + 1, (odd && sign_state == 0 && v > 0) ? 1 : sign_state);
        }
    };
    rec(1, 0);
    sort_dedupe(out.candidates);
    out.stats.fractional = 0;
    return {std::move(out), cases};
}

}  // namespace pasystole

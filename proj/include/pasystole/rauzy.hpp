#pragma once

#include <algorithm>
#include <cassert>
#include <map>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "pasystole/factor.hpp"
#include "pasystole/lefschetz.hpp"
#include "pasystole/numfield.hpp"
#include "pasystole/perron.hpp"

namespace pasystole {

// A permutation is stored as its bottom-row sequence: sigma[i] is the label
// of the (i+1)-th interval after the exchange; the top row is 1..d in order.
using Perm = std::vector<int>;
using IntMatrix = std::vector<std::vector<long long>>;

struct DegenerateStep : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotClosed : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NotPrimitive : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SuspensionFails : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct MalformedTable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline IntMatrix identity_matrix(int n) {
    IntMatrix m(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    return m;
}

inline IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
    const int n = static_cast<int>(a.size());
    IntMatrix c(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            if (!a[i][k]) continue;
            for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        }
    return c;
}

// no k < d with sigma({1..k}) = {1..k}
inline bool is_irreducible(const Perm& sigma) {
    const int d = static_cast<int>(sigma.size());
    int mx = 0;
    for (int k = 0; k < d - 1; ++k) {
        mx = std::max(mx, sigma[k]);
        if (mx == k + 1) return false;
    }
    return true;
}

// One combinatorial Rauzy move.  Type 0 shortens the last top interval
// (label d): the bottom-last label b is reinserted right after the entry d.
// Type 1 removes the last top interval: labels above b shift up and the new
// label b+1 takes the image slot of the old label d.
// The transition matrix V satisfies old_lengths = V * new_lengths.
inline std::pair<Perm, IntMatrix> rauzy_move(const Perm& sigma, int type) {
    const int d = static_cast<int>(sigma.size());
    const int b = sigma[d - 1];
    IntMatrix V(d, std::vector<long long>(d, 0));
    Perm next;
    if (type == 0) {
        if (b == d) throw std::invalid_argument("degenerate permutation move");
        next.assign(sigma.begin(), sigma.end() - 1);
        auto it = std::find(next.begin(), next.end(), d);
        next.insert(it + 1, b);
        for (int i = 0; i < d; ++i) V[i][i] = 1;
        V[d - 1][b - 1] += 1;
    } else {
        auto ren = [&](int j) {
            if (j < b) return j;
            if (j < d) return j + 1;
            return b + 1;  // j == d
        };
        next.reserve(d);
        for (int i = 0; i + 1 < d; ++i) next.push_back(ren(sigma[i]));
        next.push_back(b);
        for (int j = 1; j <= d; ++j) {
            if (j < b) V[j - 1][j - 1] = 1;
            else if (j == b) { V[j - 1][b - 1] = 1; V[j - 1][b] = 1; }
            else if (j < d) V[j - 1][j] = 1;
            else V[j - 1][b] = 1;
        }
    }
    return {std::move(next), std::move(V)};
}

// Interval exchange (pi, lambda); lengths indexed by label, Scalar is double
// or FieldElement.
template <typename Scalar>
struct IntervalExchange {
    Perm bottom;
    std::vector<Scalar> lengths;
};

namespace detail {
inline int compare_scalar(double a, double b) {
    if (a > b) return 1;
    if (a < b) return -1;
    return 0;
}
inline int compare_scalar(const FieldElement& a, const FieldElement& b) {
    return (a - b).sign();
}
inline double scalar_sub(double a, double b) { return a - b; }
inline FieldElement scalar_sub(const FieldElement& a, const FieldElement& b) { return a - b; }
}  // namespace detail

template <typename Scalar>
struct RauzyStep {
    IntervalExchange<Scalar> next;
    int type = 0;
    IntMatrix transition;  // old_lengths = transition * new_lengths
};

// First-return renormalization.  Type 0 iff the last top interval is longer
// than the last bottom one; equality is a saddle connection.
template <typename Scalar>
RauzyStep<Scalar> rauzy_step(const IntervalExchange<Scalar>& iet) {
    const int d = static_cast<int>(iet.bottom.size());
    const int b = iet.bottom[d - 1];
    const int cmp = detail::compare_scalar(iet.lengths[d - 1], iet.lengths[b - 1]);
    if (cmp == 0) throw DegenerateStep("equal compared lengths (saddle connection)");
    const int type = cmp > 0 ? 0 : 1;
    auto [next_perm, V] = rauzy_move(iet.bottom, type);
    RauzyStep<Scalar> out;
    out.type = type;
    out.transition = V;
    out.next.bottom = std::move(next_perm);
    auto& L = out.next.lengths;
    if (type == 0) {
        L = iet.lengths;
        L[d - 1] = detail::scalar_sub(iet.lengths[d - 1], iet.lengths[b - 1]);
    } else {
        L.clear();
        L.reserve(d);
        for (int j = 1; j <= d; ++j) {
            if (j < b) L.push_back(iet.lengths[j - 1]);
            else if (j == b) L.push_back(detail::scalar_sub(iet.lengths[b - 1], iet.lengths[d - 1]));
            else if (j == b + 1) L.push_back(iet.lengths[d - 1]);
            else L.push_back(iet.lengths[j - 2]);
        }
    }
    return out;
}

struct RauzyClass {
    std::vector<Perm> nodes;
    std::map<Perm, int> index;
    std::vector<std::array<int, 2>> edges;  // edges[n] = {type0 target, type1 target}
};

inline RauzyClass build_rauzy_class(const Perm& base) {
    if (!is_irreducible(base)) throw std::invalid_argument("permutation is reducible");
    RauzyClass rc;
    std::queue<Perm> todo;
    rc.index[base] = 0;
    rc.nodes.push_back(base);
    todo.push(base);
    while (!todo.empty()) {
        Perm cur = todo.front();
        todo.pop();
        std::array<int, 2> out{};
        for (int type = 0; type < 2; ++type) {
            Perm next = rauzy_move(cur, type).first;
            auto [it, fresh] = rc.index.try_emplace(next, static_cast<int>(rc.nodes.size()));
            if (fresh) {
                rc.nodes.push_back(next);
                todo.push(next);
            }
            out[type] = it->second;
        }
        rc.edges.push_back(out);
    }
    // edges were appended in BFS order which matches node order
    return rc;
}

struct RauzyLoop {
    Perm base;
    std::vector<int> path;  // edge types
};

// Ordered product of the transition matrices along the path (first step
// leftmost); re-verifies closure.
inline IntMatrix loop_matrix(const RauzyLoop& loop) {
    Perm cur = loop.base;
    IntMatrix R = identity_matrix(static_cast<int>(loop.base.size()));
    for (int type : loop.path) {
        auto [next, V] = rauzy_move(cur, type);
        R = matmul(R, V);
        cur = std::move(next);
    }
    if (cur != loop.base) throw NotClosed("path does not return to the base permutation");
    return R;
}

inline bool is_primitive(const IntMatrix& m) {
    const int n = static_cast<int>(m.size());
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) reach[i][j] = m[i][j] != 0;
    auto boolmul = [n](const std::vector<std::vector<bool>>& a,
                       const std::vector<std::vector<bool>>& b) {
        std::vector<std::vector<bool>> c(n, std::vector<bool>(n, false));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (a[i][k])
                    for (int j = 0; j < n; ++j)
                        if (b[k][j]) c[i][j] = true;
        return c;
    };
    auto cur = reach;
    for (int step = 1; step <= (n - 1) * (n - 1) + 1; ++step) {
        bool all = true;
        for (int i = 0; i < n && all; ++i)
            for (int j = 0; j < n && all; ++j)
                if (!cur[i][j]) all = false;
        if (all) return true;
        cur = boolmul(cur, reach);
    }
    return false;
}

// Vertex classes of the suspension polygon; determined by the permutation
// alone.  Returns the stratum (marked points dropped) and the number of
// vertex classes including marked points.
struct PermStratum {
    Stratum stratum;
    int marked_points = 0;
    int classes = 0;
};

inline PermStratum stratum_of_perm(const Perm& sigma) {
    const int d = static_cast<int>(sigma.size());
    // vertices: P_0..P_d = 0..d ; Q_i = d+1+i for i = 0..d; P0~Q0, Pd~Qd
    std::vector<int> parent(2 * d + 2);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
    unite(0, d + 1);
    unite(d, 2 * d + 1);
    std::vector<int> pos(d + 1);
    for (int i = 0; i < d; ++i) pos[sigma[i]] = i + 1;
    for (int l = 1; l <= d; ++l) {
        unite(l - 1, d + 1 + pos[l] - 1);
        unite(l, d + 1 + pos[l]);
    }
    std::map<int, int> top_interior;  // class -> count of P_1..P_{d-1}
    for (int i = 1; i < d; ++i) ++top_interior[find(i)];
    std::set<int> all;
    for (int v = 0; v < 2 * d + 2; ++v) all.insert(find(v));
    PermStratum out;
    out.classes = static_cast<int>(all.size());
    std::vector<int> degs;
    for (int c : all) {
        auto it = top_interior.find(c);
        const int m = (it == top_interior.end()) ? 0 : it->second;
        const int degree = 2 * (m - 1);
        if (m == 0) throw std::logic_error("vertex class without a top corner");
        if (degree == 0) ++out.marked_points;
        else degs.push_back(degree);
    }
    out.stratum = Stratum::of(std::move(degs));
    return out;
}

using FieldPoint = std::pair<FieldElement, FieldElement>;

struct Polygon {
    Perm sigma;
    std::vector<FieldPoint> vertices;  // 2d of them; vertices[0] is the origin
    PermStratum strata;
};

// Vertices of the suspension polygon: the top broken line left to right,
// then the bottom one walked backwards from the shared right endpoint.
inline Polygon build_polygon(const Perm& sigma, const std::vector<FieldPoint>& zeta) {
    const int d = static_cast<int>(sigma.size());
    if (static_cast<int>(zeta.size()) != d)
        throw std::invalid_argument("need one suspension vector per interval");
    auto field = zeta[0].first.field();
    for (const auto& [re, im] : zeta)
        if (re.sign() <= 0) throw SuspensionFails("interval lengths must be positive");
    FieldElement sum_im = FieldElement::zero(field);
    for (int k = 0; k < d - 1; ++k) {
        sum_im = sum_im + zeta[k].second;
        if (sum_im.sign() <= 0) throw SuspensionFails("top partial sums must stay above the axis");
    }
    sum_im = FieldElement::zero(field);
    for (int k = 0; k < d - 1; ++k) {
        sum_im = sum_im + zeta[sigma[k] - 1].second;
        if (sum_im.sign() >= 0)
            throw SuspensionFails("bottom partial sums must stay below the axis");
    }

    Polygon poly;
    poly.sigma = sigma;
    poly.vertices.reserve(2 * d);
    FieldPoint acc{FieldElement::zero(field), FieldElement::zero(field)};
    poly.vertices.push_back(acc);
    for (int i = 0; i < d; ++i) {
        acc = {acc.first + zeta[i].first, acc.second + zeta[i].second};
        poly.vertices.push_back(acc);
    }
    for (int k = 1; k < d; ++k) {
        const auto& z = zeta[sigma[d - k] - 1];
        acc = {acc.first - z.first, acc.second - z.second};
        poly.vertices.push_back(acc);
    }
    poly.strata = stratum_of_perm(sigma);
    return poly;
}

// Each row pairs vertex indices (1-based) on the source polygon with vertex
// indices on the image; true iff within every row all displacements
// q -> p agree exactly.
inline bool verify_translation_pieces(const std::vector<FieldPoint>& p,
                                      const std::vector<FieldPoint>& q,
                                      const std::vector<std::vector<std::pair<int, int>>>& table) {
    for (const auto& row : table) {
        if (row.empty()) throw MalformedTable("empty piece row");
        for (const auto& [pi, qi] : row)
            if (pi < 1 || qi < 1 || pi > static_cast<int>(p.size()) ||
                qi > static_cast<int>(q.size()))
                throw MalformedTable("vertex index out of range");
        const auto& [p0, q0] = row[0];
        FieldElement dx = p[p0 - 1].first - q[q0 - 1].first;
        FieldElement dy = p[p0 - 1].second - q[q0 - 1].second;
        for (size_t i = 1; i < row.size(); ++i) {
            const auto& [pi, qi] = row[i];
            if (p[pi - 1].first - q[qi - 1].first != dx) return false;
            if (p[pi - 1].second - q[qi - 1].second != dy) return false;
        }
    }
    return true;
}

struct PseudoAnosovCertificate {
    RauzyLoop loop;
    IntMatrix matrix;
    std::shared_ptr<const NumberField> field;  // Q[alpha], alpha the dilatation
    FieldElement dilatation;
    FieldVector lambda;  // R lambda = alpha lambda, exact
    FieldVector tau;     // R tau = alpha^{-1} tau, exact
    Stratum stratum;
    int marked_points = 0;
    Polygon polygon;
};

// Veech's construction on a closed loop: the Perron eigenvalue's minimal
// polynomial defines the field, both eigenvectors are solved exactly, and
// (lambda, tau) must be a suspension datum.
inline PseudoAnosovCertificate veech_certificate(const RauzyLoop& loop) {
    PseudoAnosovCertificate cert;
    cert.loop = loop;
    cert.matrix = loop_matrix(loop);
    const int d = static_cast<int>(cert.matrix.size());
    if (!is_primitive(cert.matrix)) throw NotPrimitive("loop matrix is not primitive");

    IntPoly chi = charpoly_int(cert.matrix);
    RootProfile prof = perron_analysis(chi);
    if (!prof.dominant_is_real || prof.sign <= 0 || !prof.strictly_dominant)
        throw NotPrimitive("loop matrix has no Perron eigenvalue");
    const double rho = prof.dominant_value;

    IntPoly minpoly;
    for (const auto& [f, mult] : factor_integer_poly(chi)) {
        if (std::abs(f.eval(Complex(rho, 0))) < 1e-6 * std::max(1.0, std::abs(to_double(f[0])))) {
            minpoly = f;
            break;
        }
    }
    if (minpoly.degree() == 0) throw std::logic_error("could not isolate the Perron factor");

    auto field = std::make_shared<const NumberField>(NumberField::with_root_near(minpoly, rho));
    cert.field = field;
    cert.dilatation = FieldElement::generator(field);

    cert.lambda = solve_eigenvector(cert.matrix, cert.dilatation);
    for (const auto& l : cert.lambda)
        if (l.sign() <= 0) throw SuspensionFails("Perron eigenvector is not positive");
    cert.tau = solve_eigenvector(cert.matrix, cert.dilatation.inverse());
    if (cert.tau[0].sign() < 0)
        for (auto& t : cert.tau) t = -t;

    std::vector<FieldPoint> zeta(d);
    for (int i = 0; i < d; ++i) zeta[i] = {cert.lambda[i], cert.tau[i]};
    cert.polygon = build_polygon(loop.base, zeta);  // throws SuspensionFails when violated
    cert.stratum = cert.polygon.strata.stratum;
    cert.marked_points = cert.polygon.strata.marked_points;
    return cert;
}

// Loops whose matrix realizes the target dilatation (possibly as a k-th
// root): charpoly(R)(X^k) divisible by target(X) or target(-X), k = 1..4.
inline bool loop_matches_target(const IntMatrix& R, const IntPoly& target) {
    IntPoly chi = charpoly_int(R);
    IntPoly tneg = target.negate_variable();
    IntPoly tm = target;
    if (!tm.is_monic()) tm = -tm;
    if (!tneg.is_monic()) tneg = -tneg;
    for (int k = 1; k <= 4; ++k) {
        IntPoly comp = chi.compose_power(k);
        if (comp.divide_exact(tm) || comp.divide_exact(tneg)) return true;
    }
    return false;
}

inline std::vector<RauzyLoop> search_loops(const Perm& base, const IntPoly& target,
                                           int max_len, double prune_slack = 2.0) {
    if (max_len < 0 || max_len > 24)
        throw std::invalid_argument("loop search capped at length 24");
    const double rho_t = dominant_root_value(target);
    const double cap = std::pow(rho_t, 4) * prune_slack;
    std::vector<RauzyLoop> out;
    Perm cur = base;
    std::vector<int> path;
    IntMatrix R = identity_matrix(static_cast<int>(base.size()));
    std::function<void()> rec = [&]() {
        if (!path.empty() && cur == base && loop_matches_target(R, target)) {
            out.push_back({base, path});
        }
        if (static_cast<int>(path.size()) >= max_len) return;
        long long min_row = 0;
        for (const auto& row : R) {
            long long s = std::accumulate(row.begin(), row.end(), 0LL);
            if (min_row == 0 || s < min_row) min_row = s;
        }
        if (static_cast<double>(min_row) > cap) return;
        for (int type = 0; type < 2; ++type) {
            auto [next, V] = rauzy_move(cur, type);
            IntMatrix saveR = R;
            Perm saveP = cur;
            R = matmul(R, V);
            cur = std::move(next);
            path.push_back(type);
            rec();
            path.pop_back();
            R = std::move(saveR);
            cur = std::move(saveP);
        }
    };
    rec();
    return out;
}

}  // namespace pasystole

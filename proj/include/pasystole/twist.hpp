#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pasystole/factor.hpp"
#include "pasystole/numfield.hpp"
#include "pasystole/reciprocal.hpp"

namespace pasystole {

enum class GeneratorKind { A, B, C };

struct TwistLetter {
    GeneratorKind kind = GeneratorKind::A;
    int index = 1;   // a, b in 1..g ; c in 1..g-1
    int power = 1;   // negative for inverse twists

    friend bool operator==(const TwistLetter& x, const TwistLetter& y) {
        return x.kind == y.kind && x.index == y.index && x.power == y.power;
    }
};

struct TwistWord {
    int genus = 0;
    std::vector<TwistLetter> letters;  // leftmost letter applied first
};

inline void validate(const TwistWord& w) {
    for (const auto& l : w.letters) {
        const int cap = (l.kind == GeneratorKind::C) ? w.genus - 1 : w.genus;
        if (l.index < 1 || l.index > cap)
            throw std::invalid_argument("twist generator index out of range");
        if (l.power == 0) throw std::invalid_argument("twist power must be nonzero");
    }
}

using TwistMatrix = std::vector<std::vector<long long>>;

namespace detail {

// basis (a1, b1, ..., ag, bg); J has <a_i, b_i> = 1
inline std::vector<long long> generator_class(const TwistLetter& l, int genus) {
    std::vector<long long> v(2 * genus, 0);
    switch (l.kind) {
        case GeneratorKind::A: v[2 * (l.index - 1)] = 1; break;
        case GeneratorKind::B: v[2 * (l.index - 1) + 1] = 1; break;
        case GeneratorKind::C:  // chain class pairing b_i and b_{i+1}
            v[2 * (l.index - 1)] = 1;
            v[2 * l.index] = -1;
            break;
    }
    return v;
}

inline long long pairing(const std::vector<long long>& x, const std::vector<long long>& y) {
    long long s = 0;
    for (size_t i = 0; i + 1 < x.size(); i += 2)
        s += x[i] * y[i + 1] - x[i + 1] * y[i];
    return s;
}

}  // namespace detail

// Transvection x -> x + power * <x, gamma> gamma, composed with the leftmost
// letter applied first.
inline TwistMatrix word_action(const TwistWord& w) {
    validate(w);
    const int n = 2 * w.genus;
    TwistMatrix m(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) m[i][i] = 1;
    for (const auto& l : w.letters) {
        auto gamma = detail::generator_class(l, w.genus);
        // apply the twist to every column of m
        for (int col = 0; col < n; ++col) {
            std::vector<long long> x(n);
            for (int row = 0; row < n; ++row) x[row] = m[row][col];
            const long long c = static_cast<long long>(l.power) * detail::pairing(x, gamma);
            if (c)
                for (int row = 0; row < n; ++row) m[row][col] += c * gamma[row];
        }
    }
    return m;
}

inline bool preserves_symplectic_form(const TwistMatrix& m) {
    const int n = static_cast<int>(m.size());
    // check <M e_i, M e_j> = <e_i, e_j>
    for (int i = 0; i < n; ++i) {
        std::vector<long long> mi(n);
        for (int r = 0; r < n; ++r) mi[r] = m[r][i];
        for (int j = i + 1; j < n; ++j) {
            std::vector<long long> mj(n);
            for (int r = 0; r < n; ++r) mj[r] = m[r][j];
            long long expect = 0;
            if (j == i + 1 && i % 2 == 0) expect = 1;
            if (detail::pairing(mi, mj) != expect) return false;
        }
    }
    return true;
}

inline IntPoly word_charpoly(const TwistWord& w) { return charpoly_int(word_action(w)); }

enum class CassonBleilerVerdict { PaCandidate, Inconclusive };

struct CassonBleilerResult {
    CassonBleilerVerdict verdict = CassonBleilerVerdict::Inconclusive;
    std::string failed_clause;  // empty for a candidate
};

// Symplectically irreducible, no roots of unity, and not a polynomial in X^k:
// the homology-level pseudo-Anosov candidacy test.
inline CassonBleilerResult casson_bleiler(const IntPoly& p) {
    CassonBleilerResult out;
    if (!symplectically_irreducible(p)) {
        out.failed_clause = "splits into reciprocal factors";
        return out;
    }
    if (has_root_of_unity(p)) {
        out.failed_clause = "has a root of unity";
        return out;
    }
    if (is_poly_in_power(p)) {
        out.failed_clause = "is a polynomial in X^k";
        return out;
    }
    out.verdict = CassonBleilerVerdict::PaCandidate;
    return out;
}

// ---- word text syntax: "a1.a1.b1.c1.A3.B3" (capital = negative twist),
// optional ^k powers ----

inline std::string letter_str(const TwistLetter& l) {
    char c = l.kind == GeneratorKind::A ? 'a' : (l.kind == GeneratorKind::B ? 'b' : 'c');
    if (l.power < 0) c = static_cast<char>(c - 'a' + 'A');
    std::string out(1, c);
    out += std::to_string(l.index);
    const int ap = std::abs(l.power);
    if (ap != 1) out += "^" + std::to_string(ap);
    return out;
}

inline std::string word_str(const TwistWord& w) {
    std::string out;
    for (size_t i = 0; i < w.letters.size(); ++i) {
        if (i) out += ".";
        out += letter_str(w.letters[i]);
    }
    return out;
}

// Words with charpoly equal to target or target(-X), enumerated over the
// generator alphabet up to max_len, one representative per cyclic rotation
// class (conjugate words share the characteristic polynomial).
inline std::vector<TwistWord> search_words(int genus, const IntPoly& target, int max_len,
                                           std::uint64_t budget = 400000000ULL) {
    if (max_len < 0 || max_len > 12)
        throw std::invalid_argument("word search capped at length 12");
    std::vector<TwistLetter> alphabet;
    for (int i = 1; i <= genus; ++i) {
        alphabet.push_back({GeneratorKind::A, i, 1});
        alphabet.push_back({GeneratorKind::A, i, -1});
        alphabet.push_back({GeneratorKind::B, i, 1});
        alphabet.push_back({GeneratorKind::B, i, -1});
    }
    for (int i = 1; i + 1 <= genus; ++i) {
        alphabet.push_back({GeneratorKind::C, i, 1});
        alphabet.push_back({GeneratorKind::C, i, -1});
    }
    const int A = static_cast<int>(alphabet.size());
    const int n = 2 * genus;
    IntPoly tneg = target.negate_variable();
    if (!tneg.is_monic()) tneg = -tneg;
    const long long want_tr_pos = -to_i64(target[target.degree() - 1]);
    const long long want_tr_neg = -to_i64(tneg[tneg.degree() - 1]);

    std::vector<TwistMatrix> gen_mats(A);
    for (int i = 0; i < A; ++i) {
        TwistWord one;
        one.genus = genus;
        one.letters = {alphabet[i]};
        gen_mats[i] = word_action(one);
    }

    std::vector<TwistWord> out;
    std::vector<int> word;
    std::vector<TwistMatrix> stack = {word_action({genus, {}})};
    std::uint64_t visited = 0;

    auto is_canonical_rotation = [&](const std::vector<int>& wrd) {
        const size_t L = wrd.size();
        for (size_t r = 1; r < L; ++r) {
            for (size_t i = 0; i < L; ++i) {
                int a = wrd[(r + i) % L], b = wrd[i];
                if (a < b) return false;
                if (a > b) break;
            }
        }
        return true;
    };
    auto inverse_of = [&](int idx) { return idx ^ 1; };  // alphabet pairs +/-

    std::function<void(int)> rec = [&](int len) {
        if (++visited > budget)
            throw std::runtime_error("word search budget exceeded; lower max_len");
        if (len > 0) {
            const TwistMatrix& m = stack.back();
            long long tr = 0;
            for (int i = 0; i < n; ++i) tr += m[i][i];
            if (tr == want_tr_pos || tr == want_tr_neg) {
                bool reduced = true;  // cyclically reduced, no adjacent inverse pair
                for (size_t i = 0; i + 1 < word.size(); ++i)
                    if (word[i + 1] == inverse_of(word[i])) reduced = false;
                if (word.size() > 1 && word.back() == inverse_of(word.front())) reduced = false;
                if (reduced && is_canonical_rotation(word)) {
                    IntPoly chi = charpoly_int(m);
                    if (chi == target || chi == tneg) {
                        TwistWord w;
                        w.genus = genus;
                        for (int idx : word) w.letters.push_back(alphabet[idx]);
                        out.push_back(w);
                    }
                }
            }
        }
        if (len == max_len) return;
        for (int i = 0; i < A; ++i) {
            // left-to-right application: new matrix = gen * current
            const TwistMatrix& g = gen_mats[i];
            const TwistMatrix& m = stack.back();
            TwistMatrix next(n, std::vector<long long>(n, 0));
            for (int r = 0; r < n; ++r)
                for (int k = 0; k < n; ++k) {
                    if (!g[r][k]) continue;
                    for (int c = 0; c < n; ++c) next[r][c] += g[r][k] * m[k][c];
                }
            word.push_back(i);
            stack.push_back(std::move(next));
            rec(len + 1);
            stack.pop_back();
            word.pop_back();
        }
    };
    rec(0);
    return out;
}

}  // namespace pasystole

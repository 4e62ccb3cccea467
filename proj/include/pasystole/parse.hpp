#pragma once

#include <cctype>
#include <stdexcept>
#include <string>
#include <vector>

#include "pasystole/intpoly.hpp"
#include "pasystole/lefschetz.hpp"
#include "pasystole/rauzy.hpp"
#include "pasystole/reciprocal.hpp"
#include "pasystole/twist.hpp"

namespace pasystole {

struct ParseError : std::runtime_error {
    size_t position;
    ParseError(size_t pos, const std::string& expected, const std::string& text)
        : std::runtime_error("parse error at position " + std::to_string(pos) + ": expected " +
                             expected + " in \"" + text + "\""),
          position(pos) {}
};

namespace detail {

inline void skip_ws(const std::string& s, size_t& i) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
}

inline long long parse_ll(const std::string& s, size_t& i, const std::string& what) {
    skip_ws(s, i);
    size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) throw ParseError(start, what, s);
    return std::stoll(s.substr(start, i - start));
}

}  // namespace detail

// "x^6 - x^4 - x^3 - x^2 + 1" or a descending coefficient list
// "[1,0,-1,-1,-1,0,1]"
inline IntPoly parse_polynomial(const std::string& text) {
    size_t i = 0;
    detail::skip_ws(text, i);
    if (i < text.size() && text[i] == '[') {
        ++i;
        std::vector<long long> coeffs;
        for (;;) {
            coeffs.push_back(detail::parse_ll(text, i, "integer coefficient"));
            detail::skip_ws(text, i);
            if (i < text.size() && text[i] == ',') { ++i; continue; }
            if (i < text.size() && text[i] == ']') { ++i; break; }
            throw ParseError(i, "',' or ']'", text);
        }
        detail::skip_ws(text, i);
        if (i != text.size()) throw ParseError(i, "end of input", text);
        return IntPoly::from_descending(coeffs);
    }

    std::map<int, long long> terms;
    bool first = true;
    while (true) {
        detail::skip_ws(text, i);
        if (i >= text.size()) {
            if (first) throw ParseError(i, "a polynomial term", text);
            break;
        }
        long long sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
        } else if (!first) {
            throw ParseError(i, "'+' or '-'", text);
        }
        detail::skip_ws(text, i);
        long long coeff = 1;
        bool have_coeff = false;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            coeff = detail::parse_ll(text, i, "coefficient");
            have_coeff = true;
        }
        detail::skip_ws(text, i);
        int exponent = 0;
        if (i < text.size() && (text[i] == 'x' || text[i] == 'X')) {
            ++i;
            exponent = 1;
            detail::skip_ws(text, i);
            if (i < text.size() && text[i] == '*') { ++i; detail::skip_ws(text, i); }
            if (i < text.size() && text[i] == '^') {
                ++i;
                exponent = static_cast<int>(detail::parse_ll(text, i, "exponent"));
                if (exponent < 0) throw ParseError(i, "nonnegative exponent", text);
            }
        } else if (!have_coeff) {
            throw ParseError(i, "coefficient or variable", text);
        }
        terms[exponent] += sign * coeff;
        first = false;
    }
    std::vector<Int> asc(terms.empty() ? 0 : terms.rbegin()->first + 1, Int(0));
    for (auto [e, c] : terms) asc[e] = c;
    return IntPoly(std::move(asc));
}

// monic reciprocal with constant term 1, even degree
inline ReciprocalPolynomial parse_reciprocal(const std::string& text) {
    IntPoly p = parse_polynomial(text);
    auto rp = ReciprocalPolynomial::from_poly(p);
    if (!rp) throw ParseError(0, "a monic reciprocal polynomial with constant term 1", text);
    return *rp;
}

inline std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    size_t i = 0;
    for (;;) {
        out.push_back(static_cast<int>(detail::parse_ll(text, i, "integer")));
        detail::skip_ws(text, i);
        if (i >= text.size()) break;
        if (text[i] != ',') throw ParseError(i, "','", text);
        ++i;
    }
    return out;
}

inline Stratum parse_stratum(const std::string& text) {
    auto degs = parse_int_list(text);
    for (int d : degs)
        if (d <= 0 || d % 2) throw ParseError(0, "even positive singularity degrees", text);
    return Stratum::of(std::move(degs));
}

inline Perm parse_permutation(const std::string& text) {
    Perm p = parse_int_list(text);
    std::vector<bool> seen(p.size() + 1, false);
    for (int v : p) {
        if (v < 1 || v > static_cast<int>(p.size()) || seen[v])
            throw ParseError(0, "a permutation of 1..d", text);
        seen[v] = true;
    }
    return p;
}

inline std::vector<int> parse_path(const std::string& text) {
    auto path = parse_int_list(text);
    for (int t : path)
        if (t != 0 && t != 1) throw ParseError(0, "edge types 0 or 1", text);
    return path;
}

// "a1.a1.b1.c1.a2.b2.c2.c2.A3.B3"; capital = negative twist; optional ^k
inline TwistWord parse_word(int genus, const std::string& text) {
    TwistWord w;
    w.genus = genus;
    size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        GeneratorKind kind;
        switch (std::tolower(static_cast<unsigned char>(c))) {
            case 'a': kind = GeneratorKind::A; break;
            case 'b': kind = GeneratorKind::B; break;
            case 'c': kind = GeneratorKind::C; break;
            default: throw ParseError(i, "generator letter a/b/c", text);
        }
        const bool inverse = std::isupper(static_cast<unsigned char>(c));
        ++i;
        long long idx = detail::parse_ll(text, i, "generator index");
        long long power = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            power = detail::parse_ll(text, i, "twist power");
            if (power <= 0) throw ParseError(i, "positive power (use capitals for inverses)", text);
        }
        TwistLetter l{kind, static_cast<int>(idx), static_cast<int>(inverse ? -power : power)};
        w.letters.push_back(l);
        if (i < text.size()) {
            if (text[i] != '.') throw ParseError(i, "'.' separator", text);
            ++i;
        }
    }
    validate(w);
    return w;
}

}  // namespace pasystole

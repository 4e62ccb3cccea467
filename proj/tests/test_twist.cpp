#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "pasystole/perron.hpp"
#include "pasystole/twist.hpp"

using namespace pasystole;

namespace {

TwistWord parse_word_list(int genus, const std::vector<std::pair<char, int>>& letters) {
    TwistWord w;
    w.genus = genus;
    for (auto [c, idx] : letters) {
        TwistLetter l;
        const char lower = static_cast<char>(std::tolower(c));
        l.kind = lower == 'a' ? GeneratorKind::A
                              : (lower == 'b' ? GeneratorKind::B : GeneratorKind::C);
        l.index = idx;
        l.power = std::isupper(c) ? -1 : 1;
        w.letters.push_back(l);
    }
    return w;
}

const TwistWord kWord1 =
    parse_word_list(2, {{'a', 1}, {'a', 1}, {'c', 1}, {'b', 2}, {'A', 2}, {'b', 1}});
const TwistWord kWord2 =
    parse_word_list(2, {{'a', 1}, {'a', 1}, {'B', 2}, {'C', 1}, {'A', 2}, {'b', 1}});
const TwistWord kWord3 = parse_word_list(3, {{'a', 1}, {'a', 1}, {'b', 1}, {'c', 1},
                                             {'a', 2}, {'b', 2}, {'c', 2}, {'c', 2},
                                             {'A', 3}, {'B', 3}});
const TwistWord kWord4 = parse_word_list(4, {{'a', 1}, {'b', 1}, {'c', 1}, {'a', 2},
                                             {'b', 2}, {'c', 2}, {'b', 3}, {'c', 3},
                                             {'b', 4}});

}  // namespace

TEST_CASE("the two genus-2 words reproduce the printed matrices") {
    TwistMatrix m1 = word_action(kWord1);
    TwistMatrix expect1 = {{1, -3, 0, 1}, {1, -2, 0, 1}, {0, 2, 2, -1}, {0, 1, 1, 0}};
    CHECK(m1 == expect1);

    TwistMatrix m2 = word_action(kWord2);
    TwistMatrix expect2 = {{1, -1, 1, -1}, {1, 0, 1, -1}, {0, -1, -1, 2}, {0, 0, -1, 1}};
    CHECK(m2 == expect2);

    CHECK(word_charpoly(kWord1) == IntPoly::from_descending({1, -1, -1, -1, 1}));
    CHECK(word_charpoly(kWord2) == IntPoly::from_descending({1, -1, 3, -1, 1}));
}

TEST_CASE("empty word acts as the identity") {
    TwistWord e{3, {}};
    TwistMatrix m = word_action(e);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) CHECK(m[i][j] == (i == j ? 1 : 0));
}

TEST_CASE("the genus-3 and genus-4 words hit the minima") {
    CHECK(word_charpoly(kWord3) == IntPoly::from_descending({1, 0, -1, 1, -1, 0, 1}));
    CHECK(word_charpoly(kWord4) == IntPoly::from_descending({1, 0, 0, 1, -1, 1, 0, 0, 1}));
}

TEST_CASE("every word action is symplectic; inverses cancel") {
    std::mt19937 rng(17);
    std::uniform_int_distribution<int> genus_d(2, 8);
    for (int trial = 0; trial < 1000; ++trial) {
        const int g = genus_d(rng);
        std::uniform_int_distribution<int> kind_d(0, 2), pow_d(0, 1);
        TwistWord w;
        w.genus = g;
        std::uniform_int_distribution<int> len_d(1, 8);
        const int len = len_d(rng);
        for (int i = 0; i < len; ++i) {
            TwistLetter l;
            l.kind = static_cast<GeneratorKind>(kind_d(rng));
            const int cap = l.kind == GeneratorKind::C ? g - 1 : g;
            std::uniform_int_distribution<int> idx_d(1, cap);
            l.index = idx_d(rng);
            l.power = pow_d(rng) ? 1 : -1;
            w.letters.push_back(l);
        }
        CHECK(preserves_symplectic_form(word_action(w)));
        CHECK(word_charpoly(w).is_palindromic());

        // w followed by its formal inverse acts trivially
        TwistWord ww = w;
        for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it) {
            TwistLetter inv = *it;
            inv.power = -inv.power;
            ww.letters.push_back(inv);
        }
        TwistMatrix m = word_action(ww);
        bool ident = true;
        for (size_t i = 0; i < m.size(); ++i)
            for (size_t j = 0; j < m.size(); ++j)
                if (m[i][j] != static_cast<long long>(i == j)) ident = false;
        CHECK(ident);
    }
}

TEST_CASE("spectral radii of the four constructions match the minima") {
    auto radius = [](const TwistWord& w) {
        return std::abs(perron_analysis(word_charpoly(w)).dominant_value);
    };
    CHECK(radius(kWord1) == doctest::Approx(1.72208).epsilon(1e-5));
    CHECK(radius(kWord3) == doctest::Approx(1.40127).epsilon(1e-5));
    CHECK(radius(kWord4) == doctest::Approx(1.28064).epsilon(1e-5));
}

TEST_CASE("casson-bleiler candidacy") {
    auto r1 = casson_bleiler(IntPoly::from_descending({1, -1, -1, -1, 1}));
    CHECK(r1.verdict == CassonBleilerVerdict::PaCandidate);

    auto r2 = casson_bleiler(IntPoly::from_descending({1, 0, 0, 0, 0, 0, 1}));  // x^6+1
    CHECK(r2.verdict == CassonBleilerVerdict::Inconclusive);
    CHECK(!r2.failed_clause.empty());

    IntPoly p1g3 = IntPoly::from_descending({1, 1, -1, -3, -1, 1, 1});
    auto r3 = casson_bleiler(p1g3 * cyclotomic(1) * cyclotomic(1));
    CHECK(r3.verdict == CassonBleilerVerdict::Inconclusive);
    CHECK(r3.failed_clause == "splits into reciprocal factors");

    for (const TwistWord* w : {&kWord1, &kWord2, &kWord3, &kWord4}) {
        auto r = casson_bleiler(word_charpoly(*w));
        CHECK(r.verdict == CassonBleilerVerdict::PaCandidate);
    }
}

TEST_CASE("word search finds the first genus-2 construction") {
    IntPoly target = IntPoly::from_descending({1, -1, -1, -1, 1});
    auto words = search_words(2, target, 6);
    CHECK(!words.empty());
    // the printed word (up to cyclic rotation): check some rotation of it shows up
    auto rotations_equal = [](const TwistWord& a, const TwistWord& b) {
        if (a.letters.size() != b.letters.size()) return false;
        const size_t L = a.letters.size();
        for (size_t r = 0; r < L; ++r) {
            bool equal = true;
            for (size_t i = 0; i < L; ++i)
                if (!(a.letters[(r + i) % L] == b.letters[i])) equal = false;
            if (equal) return true;
        }
        return false;
    };
    bool found = false;
    for (const auto& w : words)
        if (rotations_equal(w, kWord1)) found = true;
    CHECK(found);

    CHECK(search_words(2, target, 0).empty());
}

TEST_CASE("word text form") {
    CHECK(word_str(kWord3) == "a1.a1.b1.c1.a2.b2.c2.c2.A3.B3");
    TwistWord powered{2, {{GeneratorKind::A, 1, 2}, {GeneratorKind::B, 2, -1}}};
    CHECK(word_str(powered) == "a1^2.B2");
}

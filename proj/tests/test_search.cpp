#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pasystole/search.hpp"

using namespace pasystole;

namespace {

std::vector<std::vector<long long>> polys_of(const CandidateSet& s) {
    std::vector<std::vector<long long>> out;
    for (const auto& c : s.candidates) out.push_back(c.poly.descending());
    return out;
}

const RootBound kBoundG3 = RootBound::from_poly(IntPoly::from_descending({1, -1, 0, -1}));
const RootBound kBoundG2 = RootBound::from_poly(IntPoly::from_descending({1, -1, -1, -1, 1}));
const RootBound kBoundG4 =
    RootBound::from_poly(IntPoly::from_descending({1, -1, 1, -1, -1, -1, 1, -1, 1}));

}  // namespace

TEST_CASE("genus 3 under the degree-3 seed: exactly two candidates") {
    CHECK(kBoundG3.value == doctest::Approx(1.46557).epsilon(1e-5));
    auto set = enumerate_candidates(3, kBoundG3);
    REQUIRE(set.candidates.size() == 2);
    CHECK(set.candidates[0].poly.descending() ==
          std::vector<long long>{1, 1, -1, -3, -1, 1, 1});
    CHECK(set.candidates[0].root == doctest::Approx(1.32472).epsilon(1e-5));
    CHECK(set.candidates[1].poly.descending() ==
          std::vector<long long>{1, 0, -1, -1, -1, 0, 1});
    CHECK(set.candidates[1].root == doctest::Approx(1.40127).epsilon(1e-5));
    CHECK(set.stats.ambiguous == 0);
}

TEST_CASE("degree 6 under 1.72208: the nine polynomials of the genus-2 analysis") {
    auto set = enumerate_candidates(3, kBoundG2);
    std::vector<std::vector<long long>> expect = {
        {1, 1, -1, -3, -1, 1, 1},      // 1.32472
        {1, 0, -1, -1, -1, 0, 1},      // 1.40127
        {1, -1, 1, -3, 1, -1, 1},      // 1.46557
        {1, -1, 0, -1, 0, -1, 1},      // 1.50614
        {1, -1, -1, 1, -1, -1, 1},     // 1.55603
        {1, -2, 3, -5, 3, -2, 1},      // 1.56769
        {1, 0, -1, -2, -1, 0, 1},      // 1.58235
        {1, -2, 2, -3, 2, -2, 1},      // 1.63557
        {1, -1, 1, -4, 1, -1, 1},      // 1.67114
    };
    CHECK(polys_of(set) == expect);
    std::vector<double> roots = {1.32472, 1.40127, 1.46557, 1.50614, 1.55603,
                                 1.56769, 1.58235, 1.63557, 1.67114};
    REQUIRE(set.candidates.size() == roots.size());
    for (size_t i = 0; i < roots.size(); ++i)
        CHECK(set.candidates[i].root == doctest::Approx(roots[i]).epsilon(1e-4));
}

TEST_CASE("genus 4 under the degree-8 seed: six candidates") {
    CHECK(kBoundG4.value == doctest::Approx(1.34372).epsilon(1e-5));
    auto set = enumerate_candidates(4, kBoundG4);
    std::vector<std::vector<long long>> expect = {
        {1, 0, 0, -1, -1, -1, 0, 0, 1},        // P1 @ 1.28064
        {1, -1, -2, 0, 4, 0, -2, -1, 1},       // (x-1)^2 factor
        {1, 0, -1, -1, 1, -1, -1, 0, 1},       // (x^2-x+1)
        {1, 1, 0, -2, -2, -2, 0, 1, 1},        // (x^2+1)
        {1, 2, 1, -3, -5, -3, 1, 2, 1},        // (x^2+x+1)
        {1, 3, 2, -4, -8, -4, 2, 3, 1},        // (x+1)^2
    };
    CHECK(polys_of(set) == expect);
    CHECK(set.candidates[0].root == doctest::Approx(1.28064).epsilon(1e-5));
    for (size_t i = 1; i < 6; ++i)
        CHECK(set.candidates[i].root == doctest::Approx(1.32472).epsilon(1e-5));
}

TEST_CASE("boundary candidates are excluded but logged") {
    // the degree-4 box at the 1.72208 bound contains the seed itself
    auto set = enumerate_candidates(2, kBoundG2);
    CHECK(set.stats.boundary_hits >= 1);
    for (const auto& c : set.candidates) CHECK(c.root < kBoundG2.value - 1e-9);
}

TEST_CASE("trace case counting matches the closed form and brute force") {
    auto counts = count_trace_cases(1, RootBound::from_value(1.01));
    CHECK(counts.total == 3);  // p1 in {0,1,2}
    CHECK(counts.fractional == 0);
    CHECK(counts.surviving == 3);

    auto g3 = count_trace_cases(3, kBoundG3);
    auto tb1 = trace_bound(6, kBoundG3.value, 1);
    auto tb2 = trace_bound(6, kBoundG3.value, 2);
    auto tb3 = trace_bound(6, kBoundG3.value, 3);
    CHECK(g3.total == Int(tb1 + 1) * Int(2 * tb2 + 1) * Int(2 * tb3 + 1));
    CHECK(g3.total == g3.fractional + g3.surviving);

    long long brute = 0;
    for (long long p1 = 0; p1 <= tb1; ++p1)
        for (long long p2 = -tb2; p2 <= tb2; ++p2)
            for (long long p3 = -tb3; p3 <= tb3; ++p3)
                if (coeffs_from_traces({{p1, p2, p3}}, 6)) ++brute;
    CHECK(g3.surviving == brute);
}

TEST_CASE("genus 5 trace-case counts at the recorded seed window") {
    // r with r + 1/r = 2.06 sits inside the window forced by the box
    // factorization 11*23*25*31*37
    const double t = 2.06;
    const double r = (t + std::sqrt(t * t - 4)) / 2;
    auto counts = count_trace_cases(5, RootBound::from_value(r));
    CHECK(counts.total == 7254775);
    CHECK(counts.fractional == 7194541);
    CHECK(counts.surviving == 60234);
}

TEST_CASE("coefficient oracle counts") {
    auto [set3, cases3] = coefficient_enumerate(3, kBoundG2);
    CHECK(cases3 == 12765);
    auto trace3 = enumerate_candidates(3, kBoundG2);
    CHECK(polys_of(set3) == polys_of(trace3));

    CHECK_THROWS_AS(coefficient_enumerate(5, kBoundG2), OracleScaleExceeded);
}

TEST_CASE("oracle equivalence at genus 2") {
    auto bound = RootBound::from_value(1.8);
    auto [oracle_set, cases] = coefficient_enumerate(2, bound);
    auto trace_set = enumerate_candidates(2, bound);
    CHECK(polys_of(oracle_set) == polys_of(trace_set));
    CHECK(cases > 0);
}

TEST_CASE("sharded runs are deterministic") {
    auto one = enumerate_candidates(3, kBoundG2, 1);
    auto four = enumerate_candidates(3, kBoundG2, 4);
    auto many = enumerate_candidates(3, kBoundG2, 64);
    CHECK(polys_of(one) == polys_of(four));
    CHECK(polys_of(one) == polys_of(many));
    CHECK(one.stats.surviving == four.stats.surviving);
    CHECK(one.stats.surviving == many.stats.surviving);

    auto shards = make_shards(3, kBoundG2, 1);
    std::vector<Candidate> merged;
    for (const auto& s : shards) {
        auto [cands, stats] = enumerate_shard(s);
        merged.insert(merged.end(), cands.begin(), cands.end());
    }
    sort_dedupe(merged);
    REQUIRE(merged.size() == one.candidates.size());
    for (size_t i = 0; i < merged.size(); ++i)
        CHECK(merged[i].poly == one.candidates[i].poly);
}

TEST_CASE("monotonicity: enlarging the bound keeps candidates") {
    auto small = enumerate_candidates(3, kBoundG3);
    auto large = enumerate_candidates(3, kBoundG2);
    for (const auto& c : small.candidates) {
        bool found = false;
        for (const auto& d : large.candidates)
            if (d.poly == c.poly) found = true;
        CHECK(found);
    }
}

TEST_CASE("candidates re-verify and satisfy the Mahler inequality") {
    auto set = enumerate_candidates(4, kBoundG4);
    for (const auto& c : set.candidates) {
        auto prof = perron_analysis(c.poly);
        CHECK(prof.allowable());
        CHECK(prof.sign == 1);
        CHECK(std::abs(prof.dominant_value - c.root) < 1e-8);
        CHECK(mahler_measure(c.poly) <= std::pow(kBoundG4.value, 4) + 1e-9);
        for (const auto& d : set.candidates)
            CHECK(d.poly != c.poly.negate_variable());
    }
}

TEST_CASE("bound validation") {
    CHECK_THROWS_AS(enumerate_candidates(3, RootBound::from_value(0.9)), BoundTooLow);
}

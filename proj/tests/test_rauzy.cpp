#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "pasystole/rauzy.hpp"

using namespace pasystole;

namespace {

const Perm kPerm4 = {5, 3, 9, 8, 6, 2, 7, 1, 4};
const std::vector<int> kPath4 = {0, 1, 0, 0, 1, 1, 1, 0, 1, 0, 0, 1, 0, 0};
const Perm kPerm3 = {6, 3, 8, 2, 7, 4, 10, 9, 5, 1};
const std::vector<int> kPath3 = {1, 1, 1, 0, 0, 1, 0, 1, 0, 0};

const IntMatrix kR4 = {
    {1, 1, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 1, 1, 1, 1, 1, 1, 0},
    {0, 0, 0, 0, 0, 1, 0, 1, 1},
    {1, 0, 0, 1, 0, 0, 1, 0, 0},
    {0, 0, 1, 0, 1, 0, 0, 0, 0},
    {0, 0, 0, 1, 1, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 1, 1, 0, 0},
    {1, 0, 0, 0, 0, 1, 1, 1, 0},
    {1, 1, 0, 1, 0, 0, 1, 0, 0}};

const IntMatrix kR3 = {
    {1, 1, 1, 1, 1, 1, 0, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 1, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 1, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 1, 0},
    {0, 0, 0, 0, 1, 0, 0, 0, 1, 1},
    {0, 0, 1, 0, 0, 1, 0, 0, 0, 0},
    {1, 0, 0, 1, 1, 0, 0, 0, 1, 1},
    {0, 1, 0, 0, 0, 0, 0, 0, 0, 0},
    {0, 0, 1, 1, 0, 0, 0, 0, 0, 0},
    {0, 0, 0, 0, 1, 1, 0, 0, 0, 0}};

using LL = std::vector<long long>;

const std::vector<std::pair<LL, LL>> kLambdaTau = {
    {{0, 1, -2, 1, -1, 0, 1, -1}, {-1, 0, 0, 0, 0, -1, 0, 0}},
    {{0, -1, 1, 0, 1, 0, -1, 0}, {0, 0, -1, 1, 0, 1, 0, -1}},
    {{-1, 0, -1, 0, 0, -1, 0, 0}, {0, 0, -1, 0, -1, 0, 0, -1}},
    {{-1, 2, -1, 1, 0, -1, 1, 0}, {0, 1, 0, 0, 0, 0, 1, 0}},
    {{1, -1, 1, 0, 0, 1, 0, 0}, {0, 0, 0, 1, 0, 0, 0, 0}},
    {{-1, 1, -1, 1, -1, -1, 0, -1}, {0, 0, -1, 0, 0, 0, 1, 0}},
    {{1, -2, 2, -2, 1, 1, -1, 1}, {0, 0, 0, 0, 0, 0, -1, 0}},
    {{0, 0, 1, -1, 1, 0, 0, 1}, {0, 1, 0, 0, 0, 0, 0, 0}},
    {{1, 0, 0, 0, 0, 0, 0, 0}, {-1, 0, 0, 0, 0, 0, 0, 0}}};

const std::vector<std::pair<LL, LL>> kVertices = {
    {{0, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 0}},
    {{0, 1, -2, 1, -1, 0, 1, -1}, {-1, 0, 0, 0, 0, -1, 0, 0}},
    {{0, 0, -1, 1, 0, 0, 0, -1}, {-1, 0, -1, 1, 0, 0, 0, -1}},
    {{-1, 0, -2, 1, 0, -1, 0, -1}, {-1, 0, -2, 1, -1, 0, 0, -2}},
    {{-2, 2, -3, 2, 0, -2, 1, -1}, {-1, 1, -2, 1, -1, 0, 1, -2}},
    {{-1, 1, -2, 2, 0, -1, 1, -1}, {-1, 1, -2, 2, -1, 0, 1, -2}},
    {{-2, 2, -3, 3, -1, -2, 1, -2}, {-1, 1, -3, 2, -1, 0, 2, -2}},
    {{-1, 0, -1, 1, 0, -1, 0, -1}, {-1, 1, -3, 2, -1, 0, 1, -2}},
    {{-1, 0, 0, 0, 1, -1, 0, 0}, {-1, 2, -3, 2, -1, 0, 1, -2}},
    {{0, 0, 0, 0, 1, -1, 0, 0}, {-2, 2, -3, 2, -1, 0, 1, -2}},
    {{1, -2, 1, -1, 1, 0, -1, 0}, {-2, 1, -3, 2, -1, 0, 0, -2}},
    {{1, -3, 3, -2, 2, 0, -2, 1}, {-1, 1, -3, 2, -1, 1, 0, -2}},
    {{0, -1, 1, 0, 1, -1, -1, 0}, {-1, 1, -3, 2, -1, 1, 1, -2}},
    {{0, 0, 0, 0, 0, -1, 0, 0}, {-1, 1, -2, 1, -1, 0, 1, -1}},
    {{1, -1, 1, -1, 1, 0, 0, 1}, {-1, 1, -1, 1, -1, 0, 0, -1}},
    {{1, -1, 0, 0, 0, 0, 0, 0}, {-1, 0, -1, 1, -1, 0, 0, -1}},
    {{0, -1, 0, 0, 0, 0, 0, 0}, {0, 0, -1, 1, -1, 0, 0, -1}},
    {{1, -1, 1, 0, 0, 1, 0, 0}, {0, 0, 0, 1, 0, 0, 0, 0}}};

const std::vector<std::pair<LL, LL>> kImages = {
    {{0, 0, 0, 0, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 0, 0, 0}},
    {{1, -2, 1, -1, 0, 1, -1, 0}, {0, -1, 0, 0, 0, 0, -1, 0}},
    {{0, -1, 1, 0, 0, 0, -1, 0}, {1, -1, 0, 0, 0, 1, 0, 0}},
    {{0, -2, 2, -1, 0, 0, -1, 1}, {2, -1, 0, 0, -1, 1, 0, 0}},
    {{2, -3, 4, -2, 0, 1, -1, 2}, {2, -1, 1, 0, -1, 1, 0, 1}},
    {{1, -2, 3, -1, 0, 1, -1, 1}, {2, -1, 1, 0, 0, 1, 0, 1}},
    {{2, -3, 5, -3, 0, 1, -2, 2}, {2, -1, 1, -1, 0, 1, 0, 2}},
    {{0, -1, 2, -1, 0, 0, -1, 1}, {2, -1, 1, -1, 0, 1, 0, 1}},
    {{0, 0, 1, 0, 0, 0, 0, 1}, {2, -1, 2, -1, 0, 1, 0, 1}},
    {{0, 0, 0, 1, -1, 0, 0, 0}, {2, -2, 2, -1, 0, 1, 0, 1}},
    {{-2, 1, -2, 2, -1, -1, 0, -1}, {2, -2, 1, -1, 0, 1, 0, 0}},
    {{-3, 3, -3, 3, -1, -2, 1, -1}, {2, -1, 1, -1, 0, 1, 1, 0}},
    {{-1, 1, 0, 1, -1, -1, 0, 0}, {2, -1, 1, -1, 0, 1, 1, 1}},
    {{0, 0, 0, 0, -1, 0, 0, 0}, {1, -1, 1, -1, 0, 0, 0, 1}},
    {{-1, 1, -2, 2, -1, 0, 1, -1}, {1, -1, 1, 0, 0, 0, 0, 0}},
    {{-1, 0, -1, 1, -1, 0, 0, -1}, {1, -1, 0, 0, 0, 0, 0, 0}},
    {{-1, 0, 0, 0, 0, 0, 0, 0}, {1, 0, 0, 0, 0, 0, 0, 0}},
    {{-1, 1, -1, 1, 0, 0, 0, -1}, {0, 0, 0, 0, 1, 0, 0, 0}}};

// displacement-verified pairing of the eight pieces
const std::vector<std::vector<std::pair<int, int>>> kPieces = {
    {{1, 8}, {2, 14}, {3, 3}, {17, 4}, {18, 6}},
    {{3, 18}, {16, 1}, {17, 17}},
    {{3, 6}, {4, 4}, {16, 5}},
    {{4, 11}, {5, 12}, {14, 13}, {15, 9}, {16, 10}},
    {{5, 8}, {6, 6}, {14, 7}},
    {{6, 15}, {8, 16}, {9, 17}, {10, 1}, {11, 2}, {13, 3}, {14, 14}},
    {{6, 9}, {7, 13}, {8, 8}},
    {{11, 14}, {12, 8}, {13, 13}}};

FieldElement el(const std::shared_ptr<const NumberField>& f, const LL& coords) {
    std::vector<Rat> c;
    for (long long v : coords) c.emplace_back(v);
    return FieldElement(f, c);
}

}  // namespace

TEST_CASE("irreducibility of permutations") {
    CHECK(is_irreducible(kPerm4));
    CHECK(is_irreducible(kPerm3));
    CHECK(is_irreducible({2, 1}));
    CHECK_FALSE(is_irreducible({1, 2}));
    CHECK_FALSE(is_irreducible({2, 1, 3}));
}

TEST_CASE("torus moves") {
    IntervalExchange<double> iet{{2, 1}, {2.0, 1.0}};
    auto step = rauzy_step(iet);
    CHECK(step.type == 1);  // top-last is 1 < 2
    CHECK(step.next.bottom == Perm{2, 1});
    CHECK(step.next.lengths == std::vector<double>{1.0, 1.0});
    CHECK_THROWS_AS(rauzy_step(step.next), DegenerateStep);

    IntervalExchange<double> iet0{{2, 1}, {1.0, 2.0}};
    auto s0 = rauzy_step(iet0);
    CHECK(s0.type == 0);
    CHECK(s0.next.bottom == Perm{2, 1});
    CHECK(s0.next.lengths == std::vector<double>{1.0, 1.0});
}

TEST_CASE("total length drops by the cut piece") {
    IntervalExchange<double> iet{{3, 1, 2}, {0.9, 1.4, 0.55}};
    auto step = rauzy_step(iet);
    double before = 0.9 + 1.4 + 0.55;
    double after = 0;
    for (double v : step.next.lengths) after += v;
    CHECK(after == doctest::Approx(before - std::min(0.55, 0.9)));
}

TEST_CASE("rauzy classes") {
    auto torus = build_rauzy_class({2, 1});
    CHECK(torus.nodes.size() == 1);
    CHECK(torus.edges[0][0] == 0);
    CHECK(torus.edges[0][1] == 0);

    auto g2 = build_rauzy_class({4, 3, 2, 1});
    CHECK(g2.nodes.size() == 7);

    auto g4 = build_rauzy_class(kPerm4);
    CHECK(g4.index.count(kPerm4) == 1);
    // the loop path stays inside the class and closes
    Perm cur = kPerm4;
    for (int t : kPath4) cur = rauzy_move(cur, t).first;
    CHECK(cur == kPerm4);
}

TEST_CASE("the genus-4 loop reproduces the printed matrix") {
    RauzyLoop loop{kPerm4, kPath4};
    CHECK(loop_matrix(loop) == kR4);
    // first edge type 0 is a valid first factor
    auto [p1, v1] = rauzy_move(kPerm4, 0);
    CHECK(v1[8][3] == 1);  // type 0 adds E_{d,b} with b = 4
    IntMatrix prod = v1;
    Perm cur = p1;
    for (size_t i = 1; i < kPath4.size(); ++i) {
        auto [p, v] = rauzy_move(cur, kPath4[i]);
        prod = matmul(prod, v);
        cur = std::move(p);
    }
    CHECK(prod == kR4);
}

TEST_CASE("the genus-3 loop reproduces the printed matrix") {
    RauzyLoop loop{kPerm3, kPath3};
    CHECK(loop_matrix(loop) == kR3);
}

TEST_CASE("empty path gives the identity") {
    RauzyLoop loop{kPerm4, {}};
    CHECK(loop_matrix(loop) == identity_matrix(9));
    RauzyLoop open{kPerm4, {0}};
    CHECK_THROWS_AS(loop_matrix(open), NotClosed);
}

TEST_CASE("genus-4 certificate: field, eigenvectors, polygon, pieces") {
    RauzyLoop loop{kPerm4, kPath4};
    auto cert = veech_certificate(loop);

    // dilatation is alpha^4 with alpha = -1.28064...
    const double rho = cert.dilatation.to_double_approx();
    CHECK(rho == doctest::Approx(std::pow(1.2806381563, 4)).epsilon(1e-6));
    CHECK(cert.field->minpoly().degree() == 8);

    // exact eigen-equations
    auto f = cert.field;
    for (int i = 0; i < 9; ++i) {
        FieldElement ll = FieldElement::zero(f), lt = FieldElement::zero(f);
        for (int j = 0; j < 9; ++j) {
            ll = ll + FieldElement::rational(f, Rat(cert.matrix[i][j])) * cert.lambda[j];
            lt = lt + FieldElement::rational(f, Rat(cert.matrix[i][j])) * cert.tau[j];
        }
        CHECK(ll == cert.dilatation * cert.lambda[i]);
        CHECK(lt == cert.dilatation.inverse() * cert.tau[i]);
    }
    CHECK(cert.stratum.degrees == std::vector<int>{2, 10});
    CHECK(cert.stratum.genus == 4);

    // the printed lambda/tau tables are in powers of alpha = -|alpha|; our
    // field generator is alpha^4, so compare through the alpha-field
    auto alpha_field = std::make_shared<const NumberField>(NumberField::with_root_near(
        IntPoly::from_descending({1, 0, 0, 1, -1, 1, 0, 0, 1}), -1.2806381563));
    auto a = FieldElement::generator(alpha_field);
    auto a4 = a * a * a * a;
    // embed: certificate coordinates are polynomials in alpha^4
    auto embed = [&](const FieldElement& x) {
        FieldElement acc = FieldElement::zero(alpha_field);
        const auto& c = x.coords();
        for (auto it = c.rbegin(); it != c.rend(); ++it)
            acc = acc * a4 + FieldElement::rational(alpha_field, *it);
        return acc;
    };
    for (int i = 0; i < 9; ++i) {
        CHECK(embed(cert.lambda[i]) == el(alpha_field, kLambdaTau[i].first));
        CHECK(embed(cert.tau[i]) == el(alpha_field, kLambdaTau[i].second));
    }
}

TEST_CASE("genus-4 polygon vertices and their images match the tables") {
    auto alpha_field = std::make_shared<const NumberField>(NumberField::with_root_near(
        IntPoly::from_descending({1, 0, 0, 1, -1, 1, 0, 0, 1}), -1.2806381563));
    std::vector<FieldPoint> zeta(9);
    for (int i = 0; i < 9; ++i)
        zeta[i] = {el(alpha_field, kLambdaTau[i].first), el(alpha_field, kLambdaTau[i].second)};
    auto poly = build_polygon(kPerm4, zeta);
    REQUIRE(poly.vertices.size() == 18);
    CHECK(poly.vertices[0].first.is_zero());
    CHECK(poly.vertices[0].second.is_zero());
    for (int i = 0; i < 18; ++i) {
        CHECK(poly.vertices[i].first == el(alpha_field, kVertices[i].first));
        CHECK(poly.vertices[i].second == el(alpha_field, kVertices[i].second));
    }
    CHECK(poly.strata.stratum.degrees == std::vector<int>{2, 10});

    // image vertices under diag(alpha^{-1}, alpha)
    auto a = FieldElement::generator(alpha_field);
    auto ainv = a.inverse();
    std::vector<FieldPoint> q(18);
    for (int i = 0; i < 18; ++i)
        q[i] = {ainv * poly.vertices[i].first, a * poly.vertices[i].second};
    for (int i = 0; i < 18; ++i) {
        CHECK(q[i].first == el(alpha_field, kImages[i].first));
        CHECK(q[i].second == el(alpha_field, kImages[i].second));
    }

    CHECK(verify_translation_pieces(poly.vertices, q, kPieces));

    // perturbing one index breaks a piece
    auto broken = kPieces;
    std::swap(broken[2][0].first, broken[2][1].first);
    CHECK_FALSE(verify_translation_pieces(poly.vertices, q, broken));

    // single piece, identity map, trivial table
    CHECK(verify_translation_pieces(poly.vertices, poly.vertices, {{{1, 1}, {2, 2}}}));
    CHECK_THROWS_AS(verify_translation_pieces(poly.vertices, q, {{}}), MalformedTable);
}

TEST_CASE("genus-3 certificate exists and ties to the degree-6 minimum") {
    RauzyLoop loop{kPerm3, kPath3};
    auto cert = veech_certificate(loop);
    // the loop realizes the square of the degree-6 minimum: chi(X^2) is
    // divisible by the target evaluated at -X
    const double rho = cert.dilatation.to_double_approx();
    CHECK(rho == doctest::Approx(std::pow(1.40127, 2)).epsilon(1e-4));
    IntPoly chi = charpoly_int(cert.matrix);
    IntPoly target_neg = IntPoly::from_descending({1, 0, -1, 1, -1, 0, 1});
    CHECK(chi.compose_power(2).divide_exact(target_neg).has_value());
    CHECK(cert.stratum.degrees == std::vector<int>{2, 2, 2, 2});
    CHECK(cert.stratum.genus == 3);
    CHECK(cert.marked_points == 1);
    // lambda positive
    for (const auto& l : cert.lambda) CHECK(l.sign() == 1);
}

TEST_CASE("degenerate loops yield no certificate") {
    RauzyLoop once{{2, 1}, {0}};
    CHECK_THROWS(veech_certificate(once));
}

TEST_CASE("loop search finds the constructions") {
    IntPoly target4 = IntPoly::from_descending({1, 0, 0, 1, -1, 1, 0, 0, 1});
    auto loops = search_loops(kPerm4, target4, 14);
    bool found = false;
    for (const auto& l : loops)
        if (l.path == kPath4) found = true;
    CHECK(found);

    CHECK(search_loops(kPerm4, target4, 0).empty());

    IntPoly target3 = IntPoly::from_descending({1, 0, -1, 1, -1, 0, 1});
    auto loops3 = search_loops(kPerm3, target3, 10);
    bool found3 = false;
    for (const auto& l : loops3)
        if (l.path == kPath3) found3 = true;
    CHECK(found3);
}

TEST_CASE("primitivity check") {
    CHECK(is_primitive(kR4));
    CHECK(is_primitive(kR3));
    CHECK_FALSE(is_primitive(identity_matrix(3)));
}

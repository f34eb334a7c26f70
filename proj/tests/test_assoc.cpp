#include <gtest/gtest.h>

#include <random>

#include "assoclab/assoc.hpp"
#include "test_util.hpp"

using namespace assoclab;

namespace {

Series<Rat> bracket_x0x1(int trunc) {
    return lyndon_bracketing<Rat>(xy_alphabet(), trunc, Word::parse(*xy_alphabet(), "X0 X1"));
}

}  // namespace

TEST(Pentagon, UnitSatisfiesIt) {
    EXPECT_TRUE(pentagon_residual(Series<Rat>::unit(xy_alphabet(), 4)).zero);
}

TEST(Pentagon, RequiresConstantTermOne) {
    Series<Rat> s(xy_alphabet(), 3);
    s.add_coeff(Word(), Rat(2));
    EXPECT_THROW(pentagon_residual(s), InputError);
}

TEST(Pentagon, BracketExponentialDegreeFourObstruction) {
    // The degree-2 pentagon cancels identically (disjoint-pair relations), so
    // exp([X0,X1]) passes through degree 3; the first obstruction is at 4.
    Series<Rat> e3 = exp_series(bracket_x0x1(3));
    EXPECT_TRUE(pentagon_residual(e3).zero);
    Series<Rat> e4 = exp_series(bracket_x0x1(4));
    EXPECT_FALSE(pentagon_residual(e4).zero);
    // and it is still not a GRT element at N=3: quadratic terms are nonzero
    Grt1Report g = is_grt1(e3);
    EXPECT_FALSE(g.verdict);
    EXPECT_FALSE(g.quadratic_zero);
}

TEST(Hexagon, ZeroMuUnitPhi) {
    auto [h1, h2] = hexagon_residuals(Rat(0), Series<Rat>::unit(xy_alphabet(), 4));
    EXPECT_TRUE(h1.zero);
    EXPECT_TRUE(h2.zero);
}

TEST(Hexagon, DegreeTwoExpansionForcesMuSquaredOver24) {
    // Symbolic derivation of the mu-recovery formula: for phi = 1 +
    // c2 [X0,X1] (+ group-like completion), the degree-2 coefficients of
    // hexagon-1 are all rational multiples of mu^2 - 24 c2.
    Poly mu = Poly::var("mu"), c2 = Poly::var("c2");
    Series<Poly> phi(xy_alphabet(), 2);
    phi.set_coeff(Word(), Poly(Rat(1)));
    phi.set_coeff(Word::parse(*xy_alphabet(), "X0 X1"), c2);
    phi.set_coeff(Word::parse(*xy_alphabet(), "X1 X0"), -c2);
    auto sides = hexagon_sides(mu, phi);
    BraidSeries<Poly> diff = sides[0] - sides[1];
    Poly target = mu * mu - Poly::var("c2", Rat(24));
    int nonzero = 0;
    for (const auto& [w, c] : diff.terms()) {
        if (c.is_zero()) continue;
        ++nonzero;
        EXPECT_EQ(c.monic(), target.monic())
            << "unexpected degree-2 hexagon constraint at " << diff.display_word(w);
    }
    EXPECT_GT(nonzero, 0);
}

TEST(RecoverMu, UnitGivesZero) {
    MuValue mu = recover_mu(Series<Rat>::unit(xy_alphabet(), 4));
    EXPECT_EQ(mu.kind, MuValue::Kind::Zero);
}

TEST(RecoverMu, RefusesNonPentagonInput) {
    Series<Rat> e4 = exp_series(bracket_x0x1(4));
    EXPECT_THROW(recover_mu(e4), InputError);
}

TEST(RecoverMu, RationalAndSymbolicRoots) {
    auto t6 = solve_pentagon_tower(4, {{2, {Rat(6)}}});
    MuValue m = recover_mu(t6.phi);
    ASSERT_EQ(m.kind, MuValue::Kind::Exact);
    EXPECT_EQ(m.exact, Rat(12));  // mu^2 = 24*6 = 144
    auto t1 = solve_pentagon_tower(4, {{2, {Rat(1)}}});
    MuValue s = recover_mu(t1.phi);
    ASSERT_EQ(s.kind, MuValue::Kind::Sqrt);
    EXPECT_EQ(s.radicand, Rat(24));
    EXPECT_EQ(s.to_string(), "+-sqrt(24)");
}

TEST(Grt1, UnitIsMember) {
    Grt1Report g = is_grt1(Series<Rat>::unit(xy_alphabet(), 4));
    EXPECT_TRUE(g.verdict);
    EXPECT_TRUE(g.linear_zero);
}

TEST(Grt1, SolverOutputIsMemberAtDegreeFour) {
    // exp(lambda sigma3) truncated: pentagon to degree 4, no quadratic terms
    auto tower = solve_pentagon_tower(4, {{3, {Rat(5, 3)}}}, true);
    Grt1Report g = is_grt1(tower.phi);
    EXPECT_TRUE(g.verdict);
    EXPECT_TRUE(g.hexagon1.zero);
    EXPECT_TRUE(g.hexagon2.zero);
    // linear-term vanishing came for free (pentagon at degree 1)
    EXPECT_TRUE(g.linear_zero);
    EXPECT_TRUE(g.note.empty());
}

TEST(GrtMul, UnitIsIdentity) {
    std::mt19937 rng(8);
    Series<Rat> phi = tu::random_group_like(rng, 4);
    Series<Rat> one = Series<Rat>::unit(xy_alphabet(), 4);
    EXPECT_EQ(grt_mul(one, phi), phi);
    EXPECT_EQ(grt_mul(phi, one), phi);
}

TEST(GrtMul, TwoFormsOfEq7Agree) {
    std::mt19937 rng(9);
    for (int trial = 0; trial < 10; ++trial) {
        Series<Rat> a = tu::random_group_like(rng, 5);
        Series<Rat> b = tu::random_group_like(rng, 5);
        EXPECT_EQ(grt_mul(a, b), grt_mul_second_form(a, b));
    }
}

TEST(GrtMul, ClosureOnPentagonSolutions) {
    auto s3 = solve_pentagon_tower(5, {{3, {Rat(1)}}}, true);
    auto s5 = solve_pentagon_tower(5, {{3, {Rat(-2)}}, {5, {Rat(1)}}}, true);
    Series<Rat> prod = grt_mul(s3.phi, s5.phi);
    EXPECT_TRUE(pentagon_residual(prod).zero);
    EXPECT_TRUE(group_like_residual(prod).zero);
    EXPECT_TRUE(is_grt1(prod).verdict);
}

TEST(GrtMul, AssociativityOnSolverOutputs) {
    auto a = solve_pentagon_tower(4, {{3, {Rat(1)}}}, true).phi;
    auto b = solve_pentagon_tower(4, {{3, {Rat(-1, 2)}}}, true).phi;
    auto c = solve_pentagon_tower(4, {{3, {Rat(7, 5)}}}, true).phi;
    EXPECT_EQ(grt_mul(grt_mul(a, b), c), grt_mul(a, grt_mul(b, c)));
    // and on arbitrary random group-like triples
    std::mt19937 rng(23);
    for (int trial = 0; trial < 5; ++trial) {
        Series<Rat> x = tu::random_group_like(rng, 4);
        Series<Rat> y = tu::random_group_like(rng, 4);
        Series<Rat> z = tu::random_group_like(rng, 4);
        EXPECT_EQ(grt_mul(grt_mul(x, y), z), grt_mul(x, grt_mul(y, z)));
    }
}

TEST(GrtMul, InverseExistsDegreewise) {
    auto phi = solve_pentagon_tower(5, {{3, {Rat(2)}}, {5, {Rat(-1)}}}, true).phi;
    Series<Rat> inv = grt_inverse(phi);
    Series<Rat> one = Series<Rat>::unit(xy_alphabet(), 5);
    EXPECT_EQ(grt_mul(phi, inv), one);
    EXPECT_EQ(grt_mul(inv, phi), one);
    std::mt19937 rng(17);
    Series<Rat> g = tu::random_group_like(rng, 4);
    Series<Rat> gi = grt_inverse(g);
    EXPECT_EQ(grt_mul(g, gi), Series<Rat>::unit(xy_alphabet(), 4));
    EXPECT_EQ(grt_mul(gi, g), Series<Rat>::unit(xy_alphabet(), 4));
}

TEST(PentagonExtend, LowDegreeSolutionSpaces) {
    Series<Rat> one = Series<Rat>::unit(xy_alphabet(), 6);
    PentagonExtension e1 = pentagon_extend(one, 1);
    EXPECT_TRUE(e1.consistent);
    EXPECT_EQ(e1.dimension(), 0u);  // linear terms are forced to zero
    for (const Rat& c : e1.particular) EXPECT_EQ(c, Rat(0));

    // Degree 2: the raw pentagon kernel is one-dimensional, spanned by
    // [X0,X1] (the mu^2/24 direction); the GRT normalization kills it.
    PentagonExtension e2 = pentagon_extend(one, 2);
    EXPECT_TRUE(e2.consistent);
    ASSERT_EQ(e2.dimension(), 1u);
    ASSERT_EQ(e2.lyndon.size(), 1u);
    EXPECT_EQ(e2.lyndon[0], Word::parse(*xy_alphabet(), "X0 X1"));
    EXPECT_EQ(e2.kernel[0][0], Rat(1));
    PentagonExtension e2g = pentagon_extend(one, 2, true);
    EXPECT_TRUE(e2g.consistent);
    EXPECT_EQ(e2g.dimension(), 0u);

    PentagonExtension e3 = pentagon_extend(one, 3);
    EXPECT_EQ(e3.dimension(), 1u);  // the degree-3 grt generator
    PentagonExtension e4 = pentagon_extend(one, 4);
    EXPECT_EQ(e4.dimension(), 0u);
}

TEST(PentagonExtend, DegreeFourAboveTheDegreeThreeLine) {
    auto tower = solve_pentagon_tower(3, {{3, {Rat(1)}}});
    PentagonExtension e4 = pentagon_extend(tower.phi, 4);
    EXPECT_TRUE(e4.consistent);
    EXPECT_EQ(e4.dimension(), 0u);
}

TEST(PentagonExtend, RejectsBadPartialSolutions) {
    Series<Rat> e4 = exp_series(bracket_x0x1(4));
    EXPECT_THROW(pentagon_extend(e4, 5), InputError);  // pentagon fails at 4
    Series<Rat> notgl = Series<Rat>::unit(xy_alphabet(), 3);
    notgl.add_coeff(Word::parse(*xy_alphabet(), "X0 X1"), Rat(1));
    EXPECT_THROW(pentagon_extend(notgl, 3), InputError);  // not group-like
}

TEST(Theorem13, PentagonForcesHexagonsExactly) {
    // mu = 12 (c2 = 6): exact rational hexagons at the recovered mu
    auto t = solve_pentagon_tower(5, {{2, {Rat(6)}}, {3, {Rat(1)}}});
    MuValue m = recover_mu(t.phi);
    ASSERT_EQ(m.kind, MuValue::Kind::Exact);
    auto [h1, h2] = hexagon_residuals(m.exact, t.phi);
    EXPECT_TRUE(h1.zero);
    EXPECT_TRUE(h2.zero);
    auto [g1, g2] = hexagon_residuals(-m.exact, t.phi);  // signature ambiguity
    EXPECT_TRUE(g1.zero);
    EXPECT_TRUE(g2.zero);
}

TEST(Theorem13, SymbolicSquareRootBranch) {
    // c2 = 1 gives mu = sqrt(24): exact hexagons in Q(sqrt(24))
    auto t = solve_pentagon_tower(4, {{2, {Rat(1)}}, {3, {Rat(-1)}}});
    MuValue m = recover_mu(t.phi);
    ASSERT_EQ(m.kind, MuValue::Kind::Sqrt);
    Series<QuadExt> lift =
        convert_series<QuadExt>(t.phi, [](const Rat& q) { return QuadExt(q); });
    auto [h1, h2] = hexagon_residuals(QuadExt::root(m.radicand), lift);
    EXPECT_TRUE(h1.zero);
    EXPECT_TRUE(h2.zero);
}

TEST(Relations, DegreeTwoStructure) {
    // group-likeness is structural: c_{X1X0} = c_{X0} c_{X1} - c_{X0X1}
    Series<Poly> phi = symbolic_group_like(2);
    const Alphabet& a = *xy_alphabet();
    Poly expect = Poly::var("c_X0") * Poly::var("c_X1") - Poly::var("c_X0X1");
    EXPECT_EQ(phi.coeff(Word::parse(a, "X1 X0")), expect);
    EXPECT_EQ(phi.coeff(Word::parse(a, "X0 X1")), Poly::var("c_X0X1"));
    EXPECT_EQ(phi.coeff(Word::parse(a, "X0 X0")),
              Poly::var("c_X0") * Poly::var("c_X0", Rat(1, 2)));

    RelationSet rs = extract_relations(2);
    // pentagon at degree <= 2 forces exactly the linear coefficients to die
    bool saw_c0 = false, saw_c1 = false;
    for (const Poly& r : rs.relations) {
        saw_c0 |= (r == Poly::var("c_X0").monic());
        saw_c1 |= (r == Poly::var("c_X1").monic());
    }
    EXPECT_TRUE(saw_c0);
    EXPECT_TRUE(saw_c1);
    // and no relation constrains c_{X0X1} alone (the mu^2/24 freedom)
    for (const Poly& r : rs.relations)
        EXPECT_NE(r.monic(), Poly::var("c_X0X1").monic());
}

TEST(Relations, ExactSolutionsSatisfyAllRelations) {
    RelationSet rs = extract_relations(3);
    EXPECT_FALSE(rs.relations.empty());
    auto t = solve_pentagon_tower(3, {{2, {Rat(6)}}, {3, {Rat(2)}}});
    for (const Poly& r : rs.relations) {
        Rat v = evaluate_relation(r, t.phi);
        EXPECT_EQ(v, Rat(0)) << r.to_string();
    }
}

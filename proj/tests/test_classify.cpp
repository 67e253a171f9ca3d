#include "cylcert/classify.hpp"

#include <gtest/gtest.h>

using namespace cylcert;

namespace {

using U = UniPoly<Rational>;

U poly(std::vector<Rational> cs) { return U(std::move(cs)); }

}  // namespace

TEST(Scaling, KnownEquivalentPair) {
    auto w = scaling_equivalent(poly({Rational(1), Rational(1)}),
                                poly({Rational(2), Rational(6)}), 3);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->mu, Rational(2));
    EXPECT_EQ(w->lambda, Rational(3));
}

TEST(Scaling, ReflexiveOnAnyP) {
    U p = poly({Rational(3), Rational(0), Rational(-1, 2)});
    auto w = scaling_equivalent(p, p, 4);
    ASSERT_TRUE(w.has_value());
    EXPECT_TRUE(witness_holds(p, p, ScalingWitness{Rational(1), Rational(1)}));
}

TEST(Scaling, InequivalentPair) {
    EXPECT_FALSE(scaling_equivalent(poly({Rational(1), Rational(1)}),
                                    poly({Rational(1), Rational(1), Rational(1)}), 4)
                     .has_value());
}

TEST(Scaling, NegativeRootBranchForEvenLowestIndex) {
    // p2 = p1(-2u) needs the negative root of the index-2 ratio
    U p1 = poly({Rational(1), Rational(0), Rational(1), Rational(1)});
    U p2 = poly({Rational(1), Rational(0), Rational(4), Rational(-8)});
    auto w = scaling_equivalent(p1, p2, 5);
    ASSERT_TRUE(w.has_value());
    EXPECT_EQ(w->mu, Rational(1));
    EXPECT_EQ(w->lambda, Rational(-2));
}

TEST(Scaling, IrrationalRatioHasNoWitness) {
    // would need lambda^2 = 2
    U p1 = poly({Rational(1), Rational(0), Rational(1)});
    U p2 = poly({Rational(1), Rational(0), Rational(2)});
    EXPECT_FALSE(scaling_equivalent(p1, p2, 4).has_value());
}

TEST(Scaling, DegreeBoundAndZeroConstantAreRejected) {
    U ok = poly({Rational(1)});
    EXPECT_THROW((void)scaling_equivalent(poly({Rational(1), Rational(1)}), ok, 2), DomainError);
    EXPECT_THROW((void)scaling_equivalent(poly({Rational(0), Rational(1)}), ok, 3), DomainError);
    EXPECT_THROW((void)scaling_equivalent(ok, ok, 1), DomainError);
}

TEST(Scaling, WitnessesComposeAndInvert) {
    U p1 = poly({Rational(1), Rational(2), Rational(-1)});
    ScalingWitness w12{Rational(3), Rational(1, 2)};
    U p2 = p1.arg_scaled(w12.lambda).scaled(w12.mu);
    ScalingWitness w23{Rational(-2), Rational(5)};
    U p3 = p2.arg_scaled(w23.lambda).scaled(w23.mu);
    ASSERT_TRUE(witness_holds(p1, p2, w12));
    ASSERT_TRUE(witness_holds(p2, p3, w23));
    // symmetry: invert entries
    EXPECT_TRUE(witness_holds(p2, p1, ScalingWitness{1 / w12.mu, 1 / w12.lambda}));
    // transitivity: multiply entries
    EXPECT_TRUE(witness_holds(p1, p3, ScalingWitness{w12.mu * w23.mu, w12.lambda * w23.lambda}));
}

TEST(Eta, MovesDefiningPolynomialExactly) {
    VarietySpec s1{1, {3, 2}, 2, 3, poly({Rational(1), Rational(1)})};
    VarietySpec s2 = s1;
    s2.p = poly({Rational(2), Rational(6)});
    auto w = scaling_equivalent(s1.p, s2.p, s1.n[0]);
    ASSERT_TRUE(w.has_value());
    RingMap eta = build_eta(s1, *w);
    EXPECT_EQ(eta.images.at("x0").to_text(), "2*x0");
    EXPECT_EQ(eta.images.at("x1").to_text(), "3/2*x1");
    EXPECT_EQ(eta.images.at("y").to_text(), "1/18*y");
    EXPECT_EQ(eta.images.at("z").to_text(), "z");
    auto rep = verify_ring_map(s1, s2, eta);
    EXPECT_TRUE(rep.pass) << rep.failing;
    EXPECT_EQ(rep.unit, Rational(1));
}

TEST(Eta, TamperedWitnessFailsVerification) {
    VarietySpec s1{1, {3, 2}, 2, 3, poly({Rational(1), Rational(1)})};
    VarietySpec s2 = s1;
    s2.p = poly({Rational(2), Rational(6)});
    RingMap bad = build_eta(s1, ScalingWitness{Rational(2), Rational(1)});
    auto rep = verify_ring_map(s1, s2, bad);
    EXPECT_FALSE(rep.pass);
    EXPECT_EQ(rep.failing, "defining-compatibility");
}

TEST(Eta, RejectsMZeroAndZeroWitness) {
    VarietySpec s0{0, {3}, 2, 3, poly({Rational(1)})};
    EXPECT_THROW((void)build_eta(s0, ScalingWitness{Rational(1), Rational(1)}), DomainError);
    VarietySpec s1{1, {3, 2}, 2, 3, poly({Rational(1)})};
    EXPECT_THROW((void)build_eta(s1, ScalingWitness{Rational(0), Rational(1)}), DomainError);
}

TEST(Alpha, IdentityPermutation) {
    VarietySpec s{1, {3, 2}, 2, 3, poly({Rational(1)})};
    RingMap a = build_alpha(s, {1}, {Rational(1)});
    for (auto& [v, img] : a.images) EXPECT_EQ(img.to_text(), v);
}

TEST(Alpha, SwapWithMatchingExponentsFixesXProduct) {
    VarietySpec s{2, {2, 3, 3}, 2, 3, poly({Rational(1)})};
    RingMap a = build_alpha(s, {2, 1}, {Rational(2), Rational(3)});
    EXPECT_EQ(a.images.at("x0").to_text(), "1/6*x0");
    EXPECT_EQ(a.images.at("x1").to_text(), "2*x2");
    EXPECT_EQ(a.images.at("x2").to_text(), "3*x1");
    auto vars = a.vars;
    Monomial ones(vars.size(), 0);
    ones[0] = ones[1] = ones[2] = 1;
    QPoly xbar = QPoly::monomial(vars, ones, Rational(1));
    EXPECT_EQ(a.apply(xbar), xbar);
}

TEST(Alpha, RejectsExponentMismatchAndBadPermutation) {
    VarietySpec s{2, {2, 3, 4}, 2, 3, poly({Rational(1)})};
    EXPECT_THROW((void)build_alpha(s, {2, 1}, {Rational(1), Rational(1)}), DomainError);
    VarietySpec ok{2, {2, 3, 3}, 2, 3, poly({Rational(1)})};
    EXPECT_THROW((void)build_alpha(ok, {1, 1}, {Rational(1), Rational(1)}), DomainError);
    EXPECT_THROW((void)build_alpha(ok, {1, 2}, {Rational(0), Rational(1)}), DomainError);
}

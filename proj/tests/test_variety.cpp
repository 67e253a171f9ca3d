#include "cylcert/variety.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace cylcert;

namespace {

using U = UniPoly<Rational>;

VarietySpec base_spec() { return VarietySpec{0, {2}, 2, 3, U::from_constant(Rational(1))}; }

}  // namespace

TEST(Variety, DefiningPolynomialMatchesHandExpansion) {
    // m=0, n=(2), q=2, r=3, p=1: x0^2 y + z^2 + t^3 + x0
    EXPECT_EQ(build_defining(base_spec()).to_text(), "t^3 + x0^2*y + z^2 + x0");

    // m=1, n=(3,2), p = 1 + u evaluated at u = x0 x1
    VarietySpec m1{1, {3, 2}, 2, 3, U({Rational(1), Rational(1)})};
    EXPECT_EQ(build_defining(m1).to_text(), "x0^3*x1^2*y + t^3 + x0^2*x1 + z^2 + x0");
}

TEST(Variety, ValidationClauses) {
    auto expect_clause = [](VarietySpec s, const std::string& clause) {
        auto got = invalid_clause(s);
        ASSERT_TRUE(got.has_value()) << clause;
        EXPECT_EQ(*got, clause);
        EXPECT_THROW(validate(s), ValidationError);
    };
    VarietySpec s = base_spec();
    s.m = -1;
    expect_clause(s, "m >= 0");
    s = base_spec();
    s.n = {2, 2};
    expect_clause(s, "n has m+1 entries");
    s = base_spec();
    s.n = {1};
    expect_clause(s, "each n_i > 1");
    s = base_spec();
    s.q = 1;
    expect_clause(s, "q, r >= 2");
    s = base_spec();
    s.r = 4;
    expect_clause(s, "gcd(q, r) = 1");
    s = base_spec();
    s.p = U({Rational(0), Rational(1)});
    expect_clause(s, "p(0) != 0");
    EXPECT_FALSE(invalid_clause(base_spec()).has_value());
}

TEST(Variety, JacobianGeneratorsOrderAndContent) {
    VarietySpec s = base_spec();
    auto gens = jacobian_generators(s);
    // F, dF/dx0, dF/dy, dF/dz, dF/dt for the m=0 spec
    ASSERT_EQ(gens.size(), 5u);
    QPoly f = build_defining(s);
    EXPECT_EQ(gens[0], f);
    EXPECT_EQ(gens[1], f.derivative("x0"));
    EXPECT_EQ(gens[2], f.derivative("y"));
    EXPECT_EQ(gens[3], f.derivative("z"));
    EXPECT_EQ(gens[4], f.derivative("t"));
}

TEST(Variety, SmoothForUnitConstantTerm) {
    auto rep = check_smooth(base_spec());
    EXPECT_EQ(rep.verdict, SmoothnessReport::Verdict::smooth);
}

TEST(Variety, SingularAtOriginWhenPVanishesAtZero) {
    VarietySpec s = base_spec();
    s.p = U({Rational(0), Rational(1)});  // p = u
    auto rep = check_smooth(s);
    EXPECT_EQ(rep.verdict, SmoothnessReport::Verdict::singular);
    ASSERT_TRUE(rep.point.has_value());
    for (auto& c : *rep.point) EXPECT_EQ(c, Rational(0));
    // the witness point really kills every generator
    for (auto& g : jacobian_generators(s)) EXPECT_EQ(g.evaluate(*rep.point), Rational(0));
}

TEST(Variety, SmoothnessRandomizedCorpus) {
    std::mt19937 rng(67);
    std::uniform_int_distribution<int> md(0, 1), nd(2, 3), cd(-3, 3), pick(0, 1);
    std::vector<std::pair<int, int>> qr{{2, 3}, {3, 4}};
    for (int i = 0; i < 8; ++i) {
        VarietySpec s;
        s.m = md(rng);
        for (int j = 0; j <= s.m; ++j) s.n.push_back(nd(rng));
        auto [q, r] = qr[static_cast<std::size_t>(pick(rng))];
        s.q = q;
        s.r = r;
        std::vector<Rational> coeffs{Rational(0)};
        while (coeffs[0] == 0) coeffs[0] = Rational(cd(rng));
        coeffs.push_back(Rational(cd(rng)));
        s.p = U(coeffs);
        EXPECT_EQ(check_smooth(s).verdict, SmoothnessReport::Verdict::smooth)
            << build_defining(s).to_text();
        VarietySpec shifted = s;
        shifted.p = s.p.shifted(1);  // u * p kills p(0)
        EXPECT_EQ(check_smooth(shifted).verdict, SmoothnessReport::Verdict::singular);
    }
}

TEST(Variety, CapacityGivesUndecided) {
    GroebnerOptions opts;
    opts.pair_cap = 0;
    auto rep = check_smooth(base_spec(), opts);
    EXPECT_EQ(rep.verdict, SmoothnessReport::Verdict::undecided);
}

TEST(Localization, MatchesHandComputedShape) {
    // m=1, n=(2,2), p=1: F = x0^2 x1^2 y + z^2 + t^3 + x0; set Y = x1^2 y
    VarietySpec s{1, {2, 2}, 2, 3, U::from_constant(Rational(1))};
    auto rep = localization_decomposition(s);
    EXPECT_TRUE(rep.shape_ok);
    EXPECT_TRUE(rep.roundtrip_ok);
    EXPECT_TRUE(rep.pass());
    EXPECT_EQ(rep.denominator_power, 2);
    EXPECT_EQ(rep.transformed.to_text(), "t^3 + x0^2*Y + z^2 + x0");
}

TEST(Localization, KeepsFullPolynomialP) {
    VarietySpec s{1, {2, 2}, 2, 3, U({Rational(1), Rational(1)})};
    auto rep = localization_decomposition(s);
    EXPECT_TRUE(rep.pass());
    // p is still evaluated at x0*x1 after the substitution
    EXPECT_EQ(rep.transformed.to_text(), "t^3 + x0^2*Y + x0^2*x1 + z^2 + x0");
}

TEST(Localization, RejectsMZero) {
    EXPECT_THROW((void)localization_decomposition(base_spec()), DomainError);
}

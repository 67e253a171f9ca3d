#include "cylcert/groebner.hpp"

#include <gtest/gtest.h>

using namespace cylcert;

namespace {

const std::vector<std::string> kVars{"x0", "z", "t"};

QPoly var(const std::string& name) { return QPoly::variable(kVars, name); }

QPoly one() { return QPoly::constant(kVars, Rational(1)); }

}  // namespace

TEST(Groebner, UnitIdealFromConstant) {
    auto basis = buchberger({one() + var("x0") - var("x0")});
    EXPECT_TRUE(basis.is_unit_ideal());
}

TEST(Groebner, UnitIdealFromCoprimeGenerators) {
    // (x0, x0 + 1) contains 1
    auto basis = buchberger({var("x0"), var("x0") + one()});
    EXPECT_TRUE(basis.is_unit_ideal());
}

TEST(Groebner, ProperIdealIsNotUnit) {
    auto basis = buchberger({var("x0") * var("z"), var("x0") * var("t")});
    EXPECT_FALSE(basis.is_unit_ideal());
}

TEST(Groebner, NormalFormIsZeroExactlyOnMembers) {
    // I = (z - x0^2, t - x0^3): the twisted cubic relations
    QPoly g1 = var("z") - var("x0") * var("x0");
    QPoly g2 = var("t") - var("x0") * var("x0") * var("x0");
    auto basis = buchberger({g1, g2});
    // z*t - x0^5 is in the ideal
    QPoly member = var("z") * var("t") -
                   var("x0") * var("x0") * var("x0") * var("x0") * var("x0");
    EXPECT_TRUE(basis.normal_form(member).is_zero());
    // x0 is not
    EXPECT_FALSE(basis.normal_form(var("x0")).is_zero());
}

TEST(Groebner, ReductionIdempotent) {
    QPoly g1 = var("z") - var("x0") * var("x0");
    QPoly g2 = var("t") * var("t") - var("z");
    auto basis = buchberger({g1, g2});
    QPoly f = var("z") * var("z") * var("t") + var("x0");
    QPoly nf = basis.normal_form(f);
    EXPECT_EQ(basis.normal_form(nf), nf);
    // f - nf is in the ideal
    EXPECT_TRUE(basis.normal_form(f - nf).is_zero());
}

TEST(Groebner, DeterministicBasis) {
    QPoly g1 = var("x0") * var("z") - one();
    QPoly g2 = var("z") * var("z") - var("t");
    auto b1 = buchberger({g1, g2});
    auto b2 = buchberger({g2, g1});  // generator order must not matter
    ASSERT_EQ(b1.elements().size(), b2.elements().size());
    for (std::size_t i = 0; i < b1.elements().size(); ++i)
        EXPECT_EQ(b1.elements()[i], b2.elements()[i]);
}

TEST(Groebner, PairCapGivesCapacityError) {
    GroebnerOptions opts;
    opts.pair_cap = 0;
    QPoly g1 = var("x0") * var("z") - one();
    QPoly g2 = var("z") * var("z") - var("t");
    EXPECT_THROW((void)buchberger({g1, g2}, opts), CapacityError);
}

TEST(Groebner, RejectsEmptyAndMixedRings) {
    EXPECT_THROW((void)buchberger({}), DomainError);
    std::vector<std::string> other{"x0", "z"};
    EXPECT_THROW((void)buchberger({var("x0"), QPoly::variable(other, "z")}), StructuralError);
}

TEST(Groebner, AllZeroGeneratorsGiveEmptyBasis) {
    auto basis = buchberger({QPoly::zero(kVars), QPoly::zero(kVars)});
    EXPECT_TRUE(basis.elements().empty());
    EXPECT_FALSE(basis.is_unit_ideal());
}

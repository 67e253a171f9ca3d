#include "cylcert/lnd.hpp"

#include <gtest/gtest.h>

using namespace cylcert;

namespace {

VarietySpec spec_m0() {
    return VarietySpec{0, {2}, 2, 3, UniPoly<Rational>::from_constant(Rational(1))};
}

VarietySpec spec_m1() {
    return VarietySpec{1, {3, 2}, 2, 3, UniPoly<Rational>({Rational(1), Rational(1)})};
}

// Build a derivation from the stated images, zero on everything else.
Derivation make_derivation(const VarietySpec& spec, bool extend_w,
                           const std::map<std::string, std::string>& images) {
    auto vars = derivation_vars(spec, extend_w);
    Derivation d;
    d.extend_w = extend_w;
    for (auto& v : vars) d.images.emplace(v, QPoly::zero(vars));
    for (auto& [name, text] : images) d.images.at(name) = parse_ground(vars, text);
    return d;
}

}  // namespace

TEST(Lnd, StandardDerivationsAnnihilateDefiningPolynomial) {
    for (const auto& spec : {spec_m0(), spec_m1()}) {
        for (const auto& d : standard_lnds(spec)) {
            auto rep = check_well_defined(spec, d);
            EXPECT_TRUE(rep.pass) << rep.detail;
            EXPECT_TRUE(rep.cofactor.is_zero());
            EXPECT_EQ(rep.detail, "delta(F) = 0");
        }
    }
}

TEST(Lnd, NilpotencyDegreesOfStandardDerivations) {
    VarietySpec s = spec_m0();
    auto lnds = standard_lnds(s);
    auto out_z = check_locally_nilpotent(s, lnds[0]);
    ASSERT_EQ(out_z.kind, NilpotencyOutcome::Kind::evidence);
    EXPECT_EQ(out_z.degrees.at("x0"), 0);
    EXPECT_EQ(out_z.degrees.at("t"), 0);
    EXPECT_EQ(out_z.degrees.at("z"), 1);
    EXPECT_EQ(out_z.degrees.at("y"), s.q);
    auto out_t = check_locally_nilpotent(s, lnds[1]);
    ASSERT_EQ(out_t.kind, NilpotencyOutcome::Kind::evidence);
    EXPECT_EQ(out_t.degrees.at("t"), 1);
    EXPECT_EQ(out_t.degrees.at("y"), s.r);
}

TEST(Lnd, EulerLikeDerivationHasUnitCofactor) {
    VarietySpec s = spec_m0();
    Derivation d = make_derivation(s, false,
                                   {{"x0", "x0"}, {"y", "-y"}, {"z", "1/2*z"}, {"t", "1/3*t"}});
    auto rep = check_well_defined(s, d);
    ASSERT_TRUE(rep.pass) << rep.detail;
    EXPECT_EQ(rep.cofactor.to_text(), "1");
    EXPECT_EQ(rep.detail, "delta(F) = cofactor * F");
}

TEST(Lnd, EigenvectorDerivationIsRejectedOnBothCounts) {
    VarietySpec s = spec_m0();
    Derivation d = make_derivation(s, false, {{"z", "z"}});
    auto rep = check_well_defined(s, d);
    EXPECT_FALSE(rep.pass);
    auto out = check_locally_nilpotent(s, d);
    ASSERT_EQ(out.kind, NilpotencyOutcome::Kind::refuted);
    EXPECT_EQ(out.refuted_generator, "z");
    EXPECT_EQ(out.cycle_element.to_text(), "z");
}

TEST(Lnd, SwapCycleIsRefuted) {
    VarietySpec s = spec_m0();
    Derivation d = make_derivation(s, false, {{"z", "t"}, {"t", "z"}});
    auto out = check_locally_nilpotent(s, d);
    ASSERT_EQ(out.kind, NilpotencyOutcome::Kind::refuted);
    EXPECT_EQ(out.refuted_generator, "z");
}

TEST(Lnd, WExtensionKeepsWellDefinednessAndNilpotency) {
    VarietySpec s = spec_m1();
    Derivation base = standard_lnds(s)[0];
    Derivation ext = extend_with_w(s, base);
    EXPECT_TRUE(ext.extend_w);
    auto rep = check_well_defined(s, ext);
    EXPECT_TRUE(rep.pass) << rep.detail;
    auto out = check_locally_nilpotent(s, ext);
    ASSERT_EQ(out.kind, NilpotencyOutcome::Kind::evidence);
    EXPECT_EQ(out.degrees.at("w"), 0);
    EXPECT_EQ(out.degrees.at("y"), s.q);
    EXPECT_THROW((void)extend_with_w(s, ext), StructuralError);
}

TEST(Lnd, KernelMembership) {
    VarietySpec s = spec_m0();
    Derivation dz = standard_lnds(s)[0];
    auto vars = s.ambient_vars();
    EXPECT_TRUE(kernel_membership(s, dz, QPoly::variable(vars, "x0")));
    EXPECT_TRUE(kernel_membership(s, dz, QPoly::variable(vars, "t")));
    EXPECT_FALSE(kernel_membership(s, dz, QPoly::variable(vars, "z")));
    EXPECT_FALSE(kernel_membership(s, dz, QPoly::variable(vars, "y")));
    // the defining polynomial itself reduces to zero
    EXPECT_TRUE(reduce_mod_defining(s, build_defining(s)).is_zero());
    // delta_z(z^2) = 2 z x0^2 = delta_z applied twice kills it
    QPoly z2 = QPoly::variable(vars, "z") * QPoly::variable(vars, "z");
    EXPECT_FALSE(kernel_membership(s, dz, z2));
}

TEST(Lnd, CapZeroIsInconclusive) {
    VarietySpec s = spec_m0();
    auto out = check_locally_nilpotent(s, standard_lnds(s)[0], 0);
    EXPECT_EQ(out.kind, NilpotencyOutcome::Kind::inconclusive);
    EXPECT_EQ(out.cap, 0);
    EXPECT_NE(out.detail.find("cap of 0"), std::string::npos);
}

TEST(Lnd, MissingImageIsStructural) {
    VarietySpec s = spec_m0();
    Derivation d;  // no images at all
    EXPECT_THROW((void)check_well_defined(s, d), StructuralError);
}

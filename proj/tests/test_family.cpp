#include "cylcert/family.hpp"

#include <gtest/gtest.h>

using namespace cylcert;

namespace {

FamilyCertificate build_n4() { return build_family_certificate(4, 0, 2, 3); }

APoly apoly(const std::vector<std::string>& params, const std::string& text) {
    return parse_ground(params, text);
}

}  // namespace

TEST(Family, KnownWitnessesForNFour) {
    FamilyCertificate fc = build_n4();
    ASSERT_EQ(fc.params, std::vector<std::string>{"a2"});
    std::vector<std::string> g1{"1", "1/2", "1/2*a2 - 1/8", "-1/4*a2 + 1/16", "1"};
    std::vector<std::string> g2{"1", "1/3", "1/3*a2 - 1/9", "-2/9*a2 + 5/81", "1"};
    ASSERT_EQ(fc.G1.coeffs().size(), g1.size());
    ASSERT_EQ(fc.G2.coeffs().size(), g2.size());
    for (std::size_t i = 0; i < g1.size(); ++i) {
        EXPECT_EQ(fc.G1.coeffs()[i], apoly(fc.params, g1[i])) << "G1 coeff " << i;
        EXPECT_EQ(fc.G2.coeffs()[i], apoly(fc.params, g2[i])) << "G2 coeff " << i;
    }
    EXPECT_TRUE(verify_family_certificate(fc).pass);
}

TEST(Family, KnownResultantValues) {
    FamilyCertificate fc = build_n4();
    auto at = [&](const std::string& a) { return resultant_at(fc, {parse_rational(a)}); };
    EXPECT_EQ(at("0"), parse_rational("2188070371/2821109907456"));
    EXPECT_EQ(at("1"), parse_rational("4964388319/2821109907456"));
    EXPECT_EQ(at("1/2"), parse_rational("2348455321/2821109907456"));
    EXPECT_EQ(at("-2"), parse_rational("34052193451/2821109907456"));
    EXPECT_EQ(at("-3/7"), parse_rational("38773430825953/47414394214612992"));
}

TEST(Family, ResultantCommutesWithSpecialization) {
    FamilyCertificate fc = build_n4();
    for (const char* a : {"1/3", "2", "-5", "7/11"}) {
        Rational v = parse_rational(a);
        auto g1 = detail::specialize(fc.G1, {v});
        auto g2 = detail::specialize(fc.G2, {v});
        EXPECT_EQ(resultant(g1, g2), resultant_at(fc, {v})) << a;
    }
}

TEST(Family, BezoutIdentityHoldsAfterSpecialization) {
    FamilyCertificate fc = build_n4();
    for (const char* a : {"0", "1", "-1/6"}) {
        Rational v = parse_rational(a);
        auto lhs = detail::specialize(fc.bez_s, {v}) * detail::specialize(fc.G1, {v}) +
                   detail::specialize(fc.bez_t, {v}) * detail::specialize(fc.G2, {v});
        EXPECT_EQ(lhs, UniPoly<Rational>::from_constant(resultant_at(fc, {v}))) << a;
    }
}

TEST(Family, SpecializationAndFreshBuildBothVerify) {
    FamilyCertificate fc = build_n4();
    VarietySpec spec{0, {4}, 2, 3, detail::specialize(fc.P, {Rational(0)})};

    CylinderCertificate from_family = specialize_family(fc, {Rational(0)});
    EXPECT_TRUE(verify_cylinder_certificate(spec, from_family).pass);

    CylinderCertificate fresh = build_cylinder_certificate(spec);
    EXPECT_TRUE(verify_cylinder_certificate(spec, fresh).pass);

    // two different but equally valid witnesses: the family route inherits the
    // monic degree-n lift, the direct route uses the minimal truncation
    EXPECT_EQ(from_family.matrix.g1.degree(), 4);
    EXPECT_EQ(fresh.matrix.g1.degree(), 3);
}

TEST(Family, VanishingLocusIsRefused) {
    FamilyCertificate fc = build_n4();
    fc.resultant = apoly(fc.params, "a2");  // synthetic locus with a rational point
    try {
        (void)specialize_family(fc, {Rational(0)});
        FAIL() << "expected DomainError";
    } catch (const DomainError& e) {
        EXPECT_NE(std::string(e.what()).find("resultant vanishes"), std::string::npos);
        EXPECT_NE(std::string(e.what()).find("a2 = 0"), std::string::npos);
    }
}

TEST(Family, VerifierCatchesMutations) {
    FamilyCertificate good = build_n4();
    auto expect_fail = [&](FamilyCertificate bad, const std::string& check) {
        auto rep = verify_family_certificate(bad);
        EXPECT_FALSE(rep.pass);
        EXPECT_EQ(rep.first_failing, check);
    };
    {
        FamilyCertificate bad = good;
        bad.precision = 3;
        expect_fail(std::move(bad), "shape");
    }
    {
        FamilyCertificate bad = good;
        std::vector<APoly> bump(2, APoly::zero(bad.params));
        bump[1] = APoly::constant(bad.params, Rational(1));
        bad.G1 = bad.G1 + UniPoly<APoly>(std::move(bump));
        expect_fail(std::move(bad), "g-congruence-q");
    }
    {
        FamilyCertificate bad = good;
        bad.resultant += APoly::constant(bad.params, Rational(1));
        expect_fail(std::move(bad), "resultant-value");
    }
    {
        FamilyCertificate bad = good;
        bad.bez_s = bad.bez_s.scaled(Rational(2));
        expect_fail(std::move(bad), "bezout-identity");
    }
    {
        FamilyCertificate bad = good;
        bad.h1.power = 2;
        expect_fail(std::move(bad), "denominator-powers");
    }
    {
        FamilyCertificate bad = good;
        bad.det.num += AXPoly::constant(bad.det.num.vars(), APoly::constant(bad.params, Rational(1)));
        expect_fail(std::move(bad), "determinant");
    }
    {
        FamilyCertificate bad = good;
        bad.h3.num *= AXPoly::constant(bad.h3.num.vars(), APoly::constant(bad.params, Rational(2)));
        expect_fail(std::move(bad), "determinant");
    }
}

TEST(Family, RejectsUnsupportedShapes) {
    EXPECT_THROW((void)build_family_certificate(3, 0, 2, 3), ValidationError);
    EXPECT_THROW((void)build_family_certificate(4, 0, 2, 4), ValidationError);
    FamilyCertificate fc = build_n4();
    EXPECT_THROW((void)resultant_at(fc, {}), StructuralError);
    EXPECT_THROW((void)resultant_at(fc, {Rational(0), Rational(1)}), StructuralError);
}

TEST(Family, HigherDegreeFamilyBuilds) {
    FamilyCertificate fc = build_family_certificate(5, 0, 2, 3);
    EXPECT_EQ(fc.params, (std::vector<std::string>{"a2", "a3"}));
    EXPECT_TRUE(verify_family_certificate(fc).pass);
    // spot-check one honest specialization end to end
    CylinderCertificate cert = specialize_family(fc, {Rational(1), Rational(-1)});
    VarietySpec spec{0, {5}, 2, 3, detail::specialize(fc.P, {Rational(1), Rational(-1)})};
    EXPECT_TRUE(verify_cylinder_certificate(spec, cert).pass);
}

#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "cylinder.hpp"

namespace cylcert {

using APoly = MultiPoly<Rational>;  // parameter ring ℚ[a2..a_{n-2}]
using AXPoly = MultiPoly<APoly>;    // x-polynomials with coefficients in the parameter ring

// An element of the parameter ring localized at the resultant: num / resultant^power.
struct LocElem {
    AXPoly num;
    int power = 0;
};

// Cylinder-matrix data for the whole family at once.  The single variety
// matrix needs two extended-GCD steps; over the parameter ring the first one
// is replaced by the Sylvester-adjugate identity bez_s·G1 + bez_t·G2 =
// resultant, so every denominator that appears is a power of the resultant.
struct FamilyCertificate {
    int n = 0, m = 0, q = 0, r = 0;
    std::vector<std::string> params;  // a2 .. a_{n-2}
    UniPoly<APoly> P;                 // 1 + u + sum a_j u^j
    UniPoly<APoly> G1, G2;            // monic degree-n congruence witnesses
    UniPoly<APoly> bez_s, bez_t;      // bez_s·G1 + bez_t·G2 = resultant in A[u]
    APoly resultant;
    LocElem h1, h2, h3;   // third matrix row, entries over x0..xm localized at resultant
    LocElem det;          // determinant with denominators cleared
    int precision = 0;    // = n
};

namespace detail {

inline std::vector<std::string> family_params(int n) {
    std::vector<std::string> params;
    for (int j = 2; j <= n - 2; ++j) params.push_back("a" + std::to_string(j));
    return params;
}

inline UniPoly<APoly> generic_p(int n, const std::vector<std::string>& params) {
    APoly one = APoly::constant(params, Rational(1));
    std::vector<APoly> coeffs(static_cast<std::size_t>(n) - 1, APoly::zero(params));
    coeffs[0] = one;
    coeffs[1] = one;
    for (int j = 2; j <= n - 2; ++j)
        coeffs[static_cast<std::size_t>(j)] = APoly::variable(params, params[j - 2]);
    return UniPoly<APoly>(std::move(coeffs));
}

inline FamilySpec family_spec(const FamilyCertificate& fc) {
    return FamilySpec{fc.m, std::vector<int>(static_cast<std::size_t>(fc.m) + 1, fc.n),
                      fc.q, fc.r, fc.P};
}

inline QPoly specialize(const AXPoly& f, const std::vector<std::string>& xvars,
                        const std::vector<Rational>& avals) {
    QPoly out = QPoly::zero(xvars);
    for (auto& [mono, c] : f.terms()) out.add_term(mono, c.evaluate(avals));
    return out;
}

inline UniPoly<Rational> specialize(const UniPoly<APoly>& f, const std::vector<Rational>& avals) {
    std::vector<Rational> coeffs;
    coeffs.reserve(f.coeffs().size());
    for (auto& c : f.coeffs()) coeffs.push_back(c.evaluate(avals));
    return UniPoly<Rational>(std::move(coeffs));
}

}  // namespace detail

// Determinant of the family matrix with denominators cleared by one factor of
// the resultant: g1g2·(Res·h3num) - x̲^n̲·g1·h2num - x̲^n̲·g2·h1num, which must
// equal Res itself (so the actual determinant is 1 in A_Res).
inline AXPoly family_determinant_cleared(const FamilyCertificate& fc) {
    FamilySpec spec = detail::family_spec(fc);
    auto xvars = spec.x_vars();
    AXPoly G1 = substitute_at_monomial(fc.G1, xvars, spec.x_exponents(xvars, true));
    AXPoly G2 = substitute_at_monomial(fc.G2, xvars, spec.x_exponents(xvars, true));
    AXPoly Xn = AXPoly::monomial(xvars, spec.x_exponents(xvars),
                                 APoly::constant(fc.params, Rational(1)));
    AXPoly res_x = AXPoly::constant(xvars, fc.resultant);
    return G1 * G2 * (res_x * fc.h3.num) - Xn * G1 * fc.h2.num - Xn * G2 * fc.h1.num;
}

struct FamilyReport {
    bool pass = false;
    std::string first_failing;
    std::vector<CheckResult> checks;
};

inline FamilyReport verify_family_certificate(const FamilyCertificate& fc) {
    FamilyReport rep;
    auto run = [&](const std::string& name, auto&& body) {
        if (!rep.first_failing.empty()) return;
        bool ok = false;
        try {
            ok = body();
        } catch (const Error&) {
            ok = false;
        }
        rep.checks.push_back({name, ok});
        if (!ok) rep.first_failing = name;
    };

    run("shape", [&] {
        return fc.n >= 4 && fc.m >= 0 && fc.q >= 2 && fc.r >= 2 &&
               std::gcd(fc.q, fc.r) == 1 && fc.precision == fc.n &&
               fc.params == detail::family_params(fc.n) &&
               fc.P == detail::generic_p(fc.n, fc.params);
    });
    run("monic-lifts", [&] {
        return fc.G1.degree() == fc.n && fc.G2.degree() == fc.n && fc.G1.is_monic() &&
               fc.G2.is_monic();
    });
    auto n = static_cast<std::size_t>(fc.n);
    run("g-congruence-q", [&] { return upow(fc.G1, fc.q).truncated(n) == fc.P.truncated(n); });
    run("g-congruence-r", [&] { return upow(fc.G2, fc.r).truncated(n) == fc.P.truncated(n); });
    run("resultant-nonzero", [&] { return !fc.resultant.is_zero(); });
    run("resultant-value", [&] { return resultant(fc.G1, fc.G2) == fc.resultant; });
    run("bezout-identity", [&] {
        UniPoly<APoly> lhs = fc.bez_s * fc.G1 + fc.bez_t * fc.G2;
        return lhs == UniPoly<APoly>::from_constant(fc.resultant);
    });
    run("denominator-powers", [&] {
        return fc.h1.power == 1 && fc.h2.power == 1 && fc.h3.power == 0 && fc.det.power == 1;
    });
    run("determinant", [&] {
        AXPoly cleared = family_determinant_cleared(fc);
        auto xvars = detail::family_spec(fc).x_vars();
        return cleared == fc.det.num && cleared == AXPoly::constant(xvars, fc.resultant);
    });
    rep.pass = rep.first_failing.empty();
    return rep;
}

inline FamilyCertificate build_family_certificate(int n, int m, int q, int r) {
    if (n < 4) throw ValidationError("n >= 4");
    FamilyCertificate fc;
    fc.n = n;
    fc.m = m;
    fc.q = q;
    fc.r = r;
    fc.precision = n;
    fc.params = detail::family_params(n);
    fc.P = detail::generic_p(n, fc.params);
    FamilySpec spec = detail::family_spec(fc);
    validate(spec);

    // G_i = exp(uF/i) mod u^n, lifted monic by adding u^n.
    UniPoly<APoly> uf = compute_f(fc.P, n).shifted(1);
    auto make_g = [&](int root) {
        auto g = TruncSeries<APoly>::from_poly(uf.scaled(Rational(1, root)),
                                               static_cast<std::size_t>(n),
                                               APoly::zero(fc.params))
                     .exp()
                     .to_poly();
        std::vector<APoly> lift(static_cast<std::size_t>(n) + 1, APoly::zero(fc.params));
        lift.back() = APoly::constant(fc.params, Rational(1));
        return g + UniPoly<APoly>(std::move(lift));
    };
    fc.G1 = make_g(q);
    fc.G2 = make_g(r);

    auto bez = bezout_resultant(fc.G1, fc.G2);
    fc.resultant = bez.res;
    if (fc.resultant.is_zero()) throw ConstructionError("family resultant vanishes");
    fc.bez_s = bez.s;
    fc.bez_t = bez.t;

    // V·(G1G2) = 1 + u^n·rho; then h3 = V(x̲), h1 = (rho·bez_t)(x̲)/Res,
    // h2 = (rho·bez_s)(x̲)/Res, mirroring the one-variety assembly with
    // a = V, b = -rho, (s, t) = (bez_s, bez_t)/Res.
    UniPoly<APoly> G12 = fc.G1 * fc.G2;
    UniPoly<APoly> V = TruncSeries<APoly>::from_poly(G12, static_cast<std::size_t>(n),
                                                    APoly::zero(fc.params))
                           .inverse()
                           .to_poly();
    UniPoly<APoly> prod = V * G12;
    if (prod.truncated(static_cast<std::size_t>(n)) !=
        UniPoly<APoly>::from_constant(APoly::constant(fc.params, Rational(1))))
        throw ConstructionError("family series inverse failed");
    std::vector<APoly> rho_coeffs(prod.coeffs().begin() + n, prod.coeffs().end());
    UniPoly<APoly> rho(std::move(rho_coeffs));

    auto xvars = spec.x_vars();
    auto ones = spec.x_exponents(xvars, true);
    fc.h3 = {substitute_at_monomial(V, xvars, ones), 0};
    fc.h1 = {substitute_at_monomial(rho * fc.bez_t, xvars, ones), 1};
    fc.h2 = {substitute_at_monomial(rho * fc.bez_s, xvars, ones), 1};
    fc.det = {family_determinant_cleared(fc), 1};

    FamilyReport rep = verify_family_certificate(fc);
    if (!rep.pass)
        throw ConstructionError("freshly built family certificate fails verification at: " +
                                rep.first_failing);
    return fc;
}

inline Rational resultant_at(const FamilyCertificate& fc, const std::vector<Rational>& avals) {
    if (avals.size() != fc.params.size())
        throw StructuralError("expected one value per family parameter");
    return fc.resultant.evaluate(avals);
}

// Substitute parameter values into every entry, clearing resultant-power
// denominators by exact rational division, then complete the specialized
// matrix to a full per-variety certificate.
inline CylinderCertificate specialize_family(const FamilyCertificate& fc,
                                             const std::vector<Rational>& avals) {
    Rational res_val = resultant_at(fc, avals);
    if (res_val == 0) {
        std::string locus = "resultant vanishes at specialization point (";
        for (std::size_t i = 0; i < avals.size(); ++i)
            locus += (i ? ", " : "") + fc.params[i] + " = " + to_string(avals[i]);
        throw DomainError(locus + ")");
    }

    VarietySpec spec{fc.m, std::vector<int>(static_cast<std::size_t>(fc.m) + 1, fc.n),
                     fc.q, fc.r, detail::specialize(fc.P, avals)};
    auto xvars = spec.x_vars();
    auto loc = [&](const LocElem& e) {
        return detail::specialize(e.num, xvars, avals)
            .scaled(1 / pow_rational(res_val, e.power));
    };

    GL3Certificate gl3;
    gl3.precision = fc.precision;
    gl3.g1 = detail::specialize(fc.G1, avals);
    gl3.g2 = detail::specialize(fc.G2, avals);
    gl3.h1 = loc(fc.h1);
    gl3.h2 = loc(fc.h2);
    gl3.h3 = loc(fc.h3);
    QPoly det = gl3_determinant(spec, gl3);
    if (!det.is_constant() || det.is_zero())
        throw ConstructionError("specialized determinant is not a nonzero constant");
    gl3.det = det.constant_value();

    auto [normalized, resc] = rescale_spec(spec);
    CylinderCertificate cert = assemble_certificate(spec, normalized, resc, std::move(gl3));
    CertReport rep = verify_cylinder_certificate(spec, cert);
    if (!rep.pass)
        throw ConstructionError("specialized certificate fails verification at: " +
                                rep.first_failing);
    return cert;
}

}  // namespace cylcert

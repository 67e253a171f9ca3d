#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "classify.hpp"
#include "resultant.hpp"
#include "series.hpp"
#include "variety.hpp"

namespace cylcert {

// Normalization layer: every spec with p(0) = c ≠ 0 is isomorphic to one with
// constant term 1 via p̃(u) = p(lambda0·u)/mu0.  For m ≥ 1 the two-variable
// rescaling works with lambda0 = 1; for m = 0 the only diagonal rescalings
// available force lambda0 = c^{qr-1}, which makes the needed z and t scalings
// (c^r and c^q) exact rationals.
struct Rescaling {
    Rational mu0{1};
    Rational lambda0{1};
};

inline Rational canonical_lambda0(const VarietySpec& spec, const Rational& mu0) {
    if (spec.m >= 1) return Rational(1);
    return pow_rational(mu0, static_cast<long>(spec.q) * spec.r - 1);
}

inline std::pair<VarietySpec, Rescaling> rescale_spec(const VarietySpec& spec) {
    validate(spec);
    Rescaling resc;
    resc.mu0 = spec.p.coeffs()[0];
    resc.lambda0 = canonical_lambda0(spec, resc.mu0);
    VarietySpec normalized = spec;
    normalized.p = spec.p.arg_scaled(resc.lambda0).scaled(1 / resc.mu0);
    return {normalized, resc};
}

// The explicit isomorphism layer carrying F_p onto unit·F_p̃.
inline RingMap build_rescaling_map(const VarietySpec& spec, const Rescaling& resc) {
    if (spec.m >= 1) return build_eta(spec, ScalingWitness{1 / resc.mu0, resc.lambda0});
    auto vars = spec.ambient_vars();
    RingMap theta = identity_map(vars);
    long qr = static_cast<long>(spec.q) * spec.r;
    theta.images["x0"] = QPoly::variable(vars, "x0").scaled(resc.lambda0);
    theta.images["z"] = QPoly::variable(vars, "z").scaled(pow_rational(resc.mu0, spec.r));
    theta.images["t"] = QPoly::variable(vars, "t").scaled(pow_rational(resc.mu0, spec.q));
    theta.images["y"] = QPoly::variable(vars, "y")
                            .scaled(pow_rational(resc.mu0, qr - spec.n[0] * (qr - 1)));
    return theta;
}

inline Rational rescaling_unit(const VarietySpec& spec, const Rescaling& resc) {
    return spec.m >= 1 ? Rational(1) : resc.lambda0 * resc.mu0;
}

// f with u·f(u) = log p in k[u]/(u^N); the congruence exp(x̲ f(x̲)) ≡ p(x̲)
// mod x̲^n̲ follows after substitution.
template <class C>
UniPoly<C> compute_f(const UniPoly<C>& p, int precision) {
    if (p.is_zero() || !coeff_is_one(p.coeffs()[0]))
        throw DomainError("compute_f requires p(0) = 1");
    auto lg = TruncSeries<C>::from_poly(p, static_cast<std::size_t>(precision),
                                        coeff_zero_like(p.coeffs()[0]))
                  .log();
    std::vector<C> shifted(lg.coeffs().begin() + 1, lg.coeffs().end());
    return UniPoly<C>(std::move(shifted));
}

template <class C>
UniPoly<C> upow(UniPoly<C> base, int e) {
    UniPoly<C> acc = UniPoly<C>::from_constant(coeff_one_like(base.leading()));
    while (e) {
        if (e & 1) acc = acc * base;
        e >>= 1;
        if (e) base = base * base;
    }
    return acc;
}

// g1 ≡ exp(uf/q), g2 ≡ exp(uf/r) mod u^N, with g2 nudged by multiples of u^N
// (which leaves every congruence untouched) until gcd(g1, g2) = 1 over ℚ.
inline std::pair<UniPoly<Rational>, UniPoly<Rational>> compute_g_pair(
    const UniPoly<Rational>& p, int q, int r, int precision) {
    if (std::gcd(q, r) != 1) throw DomainError("compute_g_pair requires gcd(q, r) = 1");
    auto n = static_cast<std::size_t>(precision);
    UniPoly<Rational> uf = compute_f(p, precision).shifted(1);
    auto make_g = [&](int root) {
        return TruncSeries<Rational>::from_poly(uf.scaled(Rational(1, root)), n).exp().to_poly();
    };
    UniPoly<Rational> g1 = make_g(q), g2 = make_g(r);
    UniPoly<Rational> bump(std::vector<Rational>(n, Rational(0)));
    for (int attempt = 0; attempt <= 16; ++attempt) {
        UniPoly<Rational> candidate = g2;
        if (attempt > 0) {
            Rational c(attempt % 2 == 1 ? (attempt + 1) / 2 : -(attempt / 2));
            std::vector<Rational> mono(n + 1, Rational(0));
            mono[n] = c;
            candidate = g2 + UniPoly<Rational>(std::move(mono));
        }
        if (gcd(g1, candidate).degree() == 0) return {g1, candidate};
    }
    throw ConstructionError("coprimality repair exhausted after 16 attempts");
}

// The 3×3 matrix data of the cylinder isomorphism.
struct GL3Certificate {
    UniPoly<Rational> g1, g2;
    QPoly h1, h2, h3;  // over x0..xm
    Rational det{};
    int precision = 0;
};

namespace detail {

inline QPoly at_xbar(const UniPoly<Rational>& f, const VarietySpec& spec,
                     const std::vector<std::string>& vars) {
    return substitute_at_monomial(f, vars, spec.x_exponents(vars, true));
}

inline QPoly xbar_n_poly(const VarietySpec& spec, const std::vector<std::string>& vars) {
    return QPoly::monomial(vars, spec.x_exponents(vars), Rational(1));
}

// E = ∏ xᵢ^{N-nᵢ}, the factor with E·x̲^n̲ = x̲^N.
inline QPoly excess_monomial(const VarietySpec& spec, const std::vector<std::string>& vars) {
    Monomial e(vars.size(), 0);
    QPoly context = QPoly::zero(vars);
    int n = spec.precision();
    for (int i = 0; i <= spec.m; ++i)
        e[context.var_index(spec.x_vars()[static_cast<std::size_t>(i)])] =
            n - spec.n[static_cast<std::size_t>(i)];
    return QPoly::monomial(vars, e, Rational(1));
}

}  // namespace detail

// det of [[g1(x̲), 0, x̲^n̲], [0, g2(x̲), x̲^n̲], [h1, h2, h3]].
inline QPoly gl3_determinant(const VarietySpec& spec, const GL3Certificate& cert) {
    auto vars = spec.x_vars();
    QPoly G1 = detail::at_xbar(cert.g1, spec, vars);
    QPoly G2 = detail::at_xbar(cert.g2, spec, vars);
    QPoly Xn = detail::xbar_n_poly(spec, vars);
    return G1 * G2 * cert.h3 - Xn * G1 * cert.h2 - Xn * G2 * cert.h1;
}

// Assemble g1, g2, h1, h2, h3 with unit determinant via two extended-GCD
// steps: s·g1 + t·g2 = 1 and a·(g1g2) + b·u^N = 1 give
//   h1 = -E·(b·t)(x̲),  h2 = -E·(b·s)(x̲),  h3 = a(x̲),
// whence det = (a·g1g2 + u^N·b·(s·g1 + t·g2))(x̲) = 1.
inline GL3Certificate build_gl3(const VarietySpec& spec) {
    validate(spec);
    if (!coeff_is_one(spec.p.coeffs()[0]))
        throw DomainError("build_gl3 expects a normalized spec with p(0) = 1");
    GL3Certificate cert;
    cert.precision = spec.precision();
    std::tie(cert.g1, cert.g2) = compute_g_pair(spec.p, spec.q, spec.r, cert.precision);
    auto bez = ext_gcd(cert.g1, cert.g2);
    if (bez.g.degree() != 0) throw ConstructionError("g1, g2 are not coprime");
    std::vector<Rational> un(static_cast<std::size_t>(cert.precision) + 1, Rational(0));
    un.back() = 1;
    auto bez2 = ext_gcd(cert.g1 * cert.g2, UniPoly<Rational>(std::move(un)));
    if (bez2.g.degree() != 0)
        throw ConstructionError("g1·g2 shares a factor with u^N");  // impossible: g(0) = 1

    auto vars = spec.x_vars();
    QPoly E = detail::excess_monomial(spec, vars);
    cert.h3 = detail::at_xbar(bez2.s, spec, vars);
    cert.h1 = -(E * detail::at_xbar(bez2.t * bez.t, spec, vars));
    cert.h2 = -(E * detail::at_xbar(bez2.t * bez.s, spec, vars));

    QPoly det = gl3_determinant(spec, cert);
    if (!det.is_constant() || det.is_zero())
        throw ConstructionError("assembled determinant is not a nonzero constant");
    cert.det = det.constant_value();
    return cert;
}

// The substitution z -> g1(x̲)z + x̲^n̲w, t -> g2(x̲)t + x̲^n̲w, w -> h1z + h2t + h3w
// acting on D[w] = k[x0..xm, z, t, w].
inline std::map<std::string, QPoly> psi_images(const VarietySpec& spec,
                                               const GL3Certificate& cert) {
    auto cvars = spec.cylinder_vars();
    QPoly z = QPoly::variable(cvars, "z"), t = QPoly::variable(cvars, "t"),
          w = QPoly::variable(cvars, "w");
    QPoly Xnw = detail::xbar_n_poly(spec, cvars) * w;
    std::map<std::string, QPoly> images;
    for (auto& v : spec.x_vars()) images.emplace(v, QPoly::variable(cvars, v));
    images["z"] = detail::at_xbar(cert.g1, spec, cvars) * z + Xnw;
    images["t"] = detail::at_xbar(cert.g2, spec, cvars) * t + Xnw;
    images["w"] = cert.h1.lift_to(cvars) * z + cert.h2.lift_to(cvars) * t +
                  cert.h3.lift_to(cvars) * w;
    return images;
}

inline QPoly apply_psi(const VarietySpec& spec, const GL3Certificate& cert, const QPoly& f) {
    if (f.vars() != spec.cylinder_vars())
        throw StructuralError("apply_psi expects a polynomial over x.., z, t, w");
    return f.substitute(psi_images(spec, cert));
}

// Generators of the ideal J(p) = (x̲^n̲, z^q + t^r + x0·p(x̲)) in D[w].
inline std::pair<QPoly, QPoly> ideal_generators(const VarietySpec& spec) {
    auto cvars = spec.cylinder_vars();
    QPoly gen1 = detail::xbar_n_poly(spec, cvars);
    Monomial ze(cvars.size(), 0), te(cvars.size(), 0), x0e(cvars.size(), 0);
    ze[gen1.var_index("z")] = spec.q;
    te[gen1.var_index("t")] = spec.r;
    x0e[gen1.var_index("x0")] = 1;
    QPoly gen2 = QPoly::monomial(cvars, ze, Rational(1));
    gen2.add_term(te, Rational(1));
    gen2 += QPoly::monomial(cvars, x0e, Rational(1)) * p_at_xbar(spec, cvars);
    return {gen1, gen2};
}

struct CylinderCertificate {
    VarietySpec spec;  // original spec; the matrix is built for the rescaled p̃
    Rescaling rescaling;
    GL3Certificate matrix;
    std::array<std::array<QPoly, 3>, 3> inverse{};            // over x0..xm
    QPoly remainder;                                          // F, over D[w]
    std::array<std::array<QPoly, 2>, 2> forward{}, backward{};  // cofactors over D[w]
};

struct CheckResult {
    std::string name;
    bool pass = false;
};

struct CertReport {
    bool pass = false;
    std::string first_failing;
    std::vector<CheckResult> checks;
};

namespace detail {

inline std::array<std::array<QPoly, 3>, 3> gl3_entries(const VarietySpec& spec,
                                                       const GL3Certificate& cert) {
    auto vars = spec.x_vars();
    QPoly zero = QPoly::zero(vars);
    return {{{at_xbar(cert.g1, spec, vars), zero, xbar_n_poly(spec, vars)},
             {zero, at_xbar(cert.g2, spec, vars), xbar_n_poly(spec, vars)},
             {cert.h1, cert.h2, cert.h3}}};
}

inline std::array<std::array<QPoly, 3>, 3> adjugate3(
    const std::array<std::array<QPoly, 3>, 3>& m) {
    auto minor = [&](std::size_t i, std::size_t j) {
        std::size_t r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
        if (r0 > r1) std::swap(r0, r1);
        if (c0 > c1) std::swap(c0, c1);
        return m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    };
    std::array<std::array<QPoly, 3>, 3> adj;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            QPoly cof = minor(i, j);
            if ((i + j) % 2 == 1) cof = -cof;
            adj[j][i] = cof;  // transpose of the cofactor matrix
        }
    return adj;
}

}  // namespace detail

inline CylinderCertificate assemble_certificate(const VarietySpec& original,
                                                const VarietySpec& normalized,
                                                const Rescaling& resc,
                                                GL3Certificate gl3) {
    CylinderCertificate cert;
    cert.spec = original;
    cert.rescaling = resc;
    cert.matrix = std::move(gl3);
    int n = cert.matrix.precision;

    auto entries = detail::gl3_entries(normalized, cert.matrix);
    auto adj = detail::adjugate3(entries);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            cert.inverse[i][j] = adj[i][j].scaled(1 / cert.matrix.det);

    auto cvars = normalized.cylinder_vars();
    auto [gen1, gen2] = ideal_generators(normalized);
    QPoly psi_gen2 = apply_psi(normalized, cert.matrix, gen2);
    QPoly p_xbar = p_at_xbar(normalized, cvars);
    QPoly unit_gen2 = [&] {  // z^q + t^r + x0
        Monomial ze(cvars.size(), 0), te(cvars.size(), 0), x0e(cvars.size(), 0);
        ze[gen1.var_index("z")] = normalized.q;
        te[gen1.var_index("t")] = normalized.r;
        x0e[gen1.var_index("x0")] = 1;
        QPoly g = QPoly::monomial(cvars, ze, Rational(1));
        g.add_term(te, Rational(1));
        g.add_term(x0e, Rational(1));
        return g;
    }();
    auto division =
        (psi_gen2 - p_xbar * unit_gen2).divide_by_monomial(normalized.x_exponents(cvars));
    if (!division.divisible)
        throw ConstructionError("remainder identity fails: psi(gen2) - p(x̲)·(z^q+t^r+x0) "
                                "is not divisible by x̲^n̲");
    cert.remainder = division.quotient;

    // Forward cofactors: with v·p̃ = 1 + u^N·ρ, one gets
    //   z^q + t^r + x0 = v(x̲)·ψ(gen2) - x̲^n̲·[E·ρ(x̲)·(z^q+t^r+x0) + v(x̲)·F].
    UniPoly<Rational> v =
        TruncSeries<Rational>::from_poly(normalized.p, static_cast<std::size_t>(n))
            .inverse()
            .to_poly();
    UniPoly<Rational> prod = v * normalized.p;
    std::vector<Rational> rho_coeffs;
    for (std::size_t i = static_cast<std::size_t>(n); i < prod.coeffs().size(); ++i)
        rho_coeffs.push_back(prod.coeffs()[i]);
    if (prod.truncated(static_cast<std::size_t>(n)) !=
        UniPoly<Rational>::from_constant(Rational(1)))
        throw ConstructionError("series inverse failed");
    UniPoly<Rational> rho(std::move(rho_coeffs));

    QPoly v_x = detail::at_xbar(v, normalized, cvars);
    QPoly rho_x = detail::at_xbar(rho, normalized, cvars);
    QPoly E = detail::excess_monomial(normalized, cvars);
    QPoly one = QPoly::constant(cvars, Rational(1));
    QPoly zero = QPoly::zero(cvars);
    cert.forward[0][0] = one;
    cert.forward[0][1] = zero;
    cert.forward[1][0] = -(E * rho_x * unit_gen2 + v_x * cert.remainder);
    cert.forward[1][1] = v_x;
    cert.backward[0][0] = one;
    cert.backward[0][1] = zero;
    cert.backward[1][0] = cert.remainder;
    cert.backward[1][1] = p_xbar;
    return cert;
}

inline CertReport verify_cylinder_certificate(const VarietySpec& spec,
                                              const CylinderCertificate& cert);

inline CylinderCertificate build_cylinder_certificate(const VarietySpec& spec) {
    validate(spec);
    auto [normalized, resc] = rescale_spec(spec);
    CylinderCertificate cert =
        assemble_certificate(spec, normalized, resc, build_gl3(normalized));
    CertReport report = verify_cylinder_certificate(spec, cert);
    if (!report.pass)
        throw ConstructionError("freshly built certificate fails verification at: " +
                                report.first_failing);
    return cert;
}

// Exact re-verification of every stored invariant; polynomial arithmetic only.
inline CertReport verify_cylinder_certificate(const VarietySpec& spec,
                                              const CylinderCertificate& cert) {
    CertReport rep;
    auto run = [&](const std::string& name, auto&& body) {
        if (!rep.first_failing.empty()) return;  // stop after first failure
        bool ok = false;
        try {
            ok = body();
        } catch (const Error&) {
            ok = false;
        }
        rep.checks.push_back({name, ok});
        if (!ok) rep.first_failing = name;
    };

    VarietySpec normalized;
    run("spec-validation", [&] { return !invalid_clause(spec).has_value(); });
    run("spec-match", [&] {
        return cert.spec.m == spec.m && cert.spec.n == spec.n && cert.spec.q == spec.q &&
               cert.spec.r == spec.r && cert.spec.p == spec.p;
    });
    run("rescaling-values", [&] {
        return cert.rescaling.mu0 == spec.p.coeffs()[0] &&
               cert.rescaling.lambda0 == canonical_lambda0(spec, cert.rescaling.mu0);
    });
    run("rescaling-identity", [&] {
        normalized = spec;
        normalized.p =
            spec.p.arg_scaled(cert.rescaling.lambda0).scaled(1 / cert.rescaling.mu0);
        if (normalized.p.is_zero() || normalized.p.coeffs()[0] != 1) return false;
        RingMap layer = build_rescaling_map(spec, cert.rescaling);
        QPoly lhs = layer.apply(build_defining(spec));
        QPoly rhs = build_defining(normalized).scaled(rescaling_unit(spec, cert.rescaling));
        return lhs == rhs;
    });
    run("precision", [&] { return cert.matrix.precision == spec.precision(); });
    auto n = static_cast<std::size_t>(cert.matrix.precision);
    run("g-congruence-q", [&] {
        return upow(cert.matrix.g1, spec.q).truncated(n) == normalized.p.truncated(n);
    });
    run("g-congruence-r", [&] {
        return upow(cert.matrix.g2, spec.r).truncated(n) == normalized.p.truncated(n);
    });
    run("determinant", [&] {
        QPoly det = gl3_determinant(normalized, cert.matrix);
        return det.is_constant() && !det.is_zero() && det.constant_value() == cert.matrix.det &&
               cert.matrix.det != 0;
    });
    run("matrix-inverse", [&] {
        auto entries = detail::gl3_entries(normalized, cert.matrix);
        auto xvars = normalized.x_vars();
        QPoly zero = QPoly::zero(xvars), one = QPoly::constant(xvars, Rational(1));
        for (std::size_t i = 0; i < 3; ++i)
            for (std::size_t j = 0; j < 3; ++j) {
                QPoly mi = zero, im = zero;
                for (std::size_t k = 0; k < 3; ++k) {
                    mi += entries[i][k] * cert.inverse[k][j];
                    im += cert.inverse[i][k] * entries[k][j];
                }
                const QPoly& want = i == j ? one : zero;
                if (mi != want || im != want) return false;
            }
        return true;
    });
    auto cvars = spec.cylinder_vars();
    QPoly unit_gen2 = QPoly::zero(cvars);
    run("remainder-identity", [&] {
        auto [gen1, gen2] = ideal_generators(normalized);
        Monomial ze(cvars.size(), 0), te(cvars.size(), 0), x0e(cvars.size(), 0);
        ze[gen1.var_index("z")] = spec.q;
        te[gen1.var_index("t")] = spec.r;
        x0e[gen1.var_index("x0")] = 1;
        unit_gen2 = QPoly::monomial(cvars, ze, Rational(1));
        unit_gen2.add_term(te, Rational(1));
        unit_gen2.add_term(x0e, Rational(1));
        QPoly lhs = apply_psi(normalized, cert.matrix, gen2);
        QPoly rhs = p_at_xbar(normalized, cvars) * unit_gen2 +
                    detail::xbar_n_poly(normalized, cvars) * cert.remainder;
        return lhs == rhs;
    });
    run("forward-cofactors", [&] {
        auto [gen1, gen2] = ideal_generators(normalized);
        QPoly psi1 = apply_psi(normalized, cert.matrix, gen1);
        QPoly psi2 = apply_psi(normalized, cert.matrix, gen2);
        return cert.forward[0][0] * psi1 + cert.forward[0][1] * psi2 == gen1 &&
               cert.forward[1][0] * psi1 + cert.forward[1][1] * psi2 == unit_gen2;
    });
    run("backward-cofactors", [&] {
        auto [gen1, gen2] = ideal_generators(normalized);
        QPoly psi1 = apply_psi(normalized, cert.matrix, gen1);
        QPoly psi2 = apply_psi(normalized, cert.matrix, gen2);
        return cert.backward[0][0] * gen1 + cert.backward[0][1] * unit_gen2 == psi1 &&
               cert.backward[1][0] * gen1 + cert.backward[1][1] * unit_gen2 == psi2;
    });
    rep.pass = rep.first_failing.empty();
    return rep;
}

}  // namespace cylcert

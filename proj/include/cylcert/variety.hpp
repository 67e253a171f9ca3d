#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "groebner.hpp"
#include "unipoly.hpp"

namespace cylcert {

// The data (m, n̲, q, r, p) defining one variety of the family: the zero set
// of  x̲^n̲·y + z^q + t^r + x₀·p(x̲)  where x̲ = x₀⋯x_m and x̲^n̲ = ∏ xᵢ^{nᵢ}.
// C is ℚ for a single variety, or a polynomial ring for a parametric family.
template <class C>
struct BasicVarietySpec {
    int m = 0;
    std::vector<int> n;
    int q = 2;
    int r = 3;
    UniPoly<C> p;

    std::vector<std::string> x_vars() const {
        std::vector<std::string> v;
        v.reserve(static_cast<std::size_t>(m) + 1);
        for (int i = 0; i <= m; ++i) v.push_back("x" + std::to_string(i));
        return v;
    }

    // Ambient coordinate ring of the variety, least variable first.
    std::vector<std::string> ambient_vars() const {
        auto v = x_vars();
        v.insert(v.end(), {"z", "t", "y"});
        return v;
    }

    // Ring D[w] in which the cylinder isomorphism acts.
    std::vector<std::string> cylinder_vars() const {
        auto v = x_vars();
        v.insert(v.end(), {"z", "t", "w"});
        return v;
    }

    // Series precision: the least u-power divisible by x̲^n̲ at u = x̲.
    int precision() const { return *std::max_element(n.begin(), n.end()); }

    // Exponent vector of x̲^n̲ (or of x̲ with all_ones) inside `vars`.
    Monomial x_exponents(const std::vector<std::string>& vars, bool all_ones = false) const {
        Monomial e(vars.size(), 0);
        for (int i = 0; i <= m; ++i) {
            auto it = std::find(vars.begin(), vars.end(), "x" + std::to_string(i));
            if (it == vars.end()) throw StructuralError("variable list lacks x-block");
            e[static_cast<std::size_t>(it - vars.begin())] = all_ones ? 1 : n[static_cast<std::size_t>(i)];
        }
        return e;
    }

    C p_constant_term() const {
        if (p.is_zero()) {
            if constexpr (std::is_constructible_v<C, int>)
                return C(0);
            else
                throw StructuralError("constant term of zero p over tower ring");
        }
        return p.coeffs()[0];
    }
};

using VarietySpec = BasicVarietySpec<Rational>;
using FamilySpec = BasicVarietySpec<MultiPoly<Rational>>;

// First violated invariant, if any.  Structural clauses concern (m, n̲, q, r);
// the p(0) ≠ 0 clause is separate because the smoothness checker deliberately
// accepts specs violating it (they are exactly the singular ones).
template <class C>
std::optional<std::string> invalid_clause(const BasicVarietySpec<C>& spec,
                                          bool require_nonzero_p0 = true) {
    if (spec.m < 0) return "m >= 0";
    if (spec.n.size() != static_cast<std::size_t>(spec.m) + 1)
        return "n has m+1 entries";
    for (int ni : spec.n)
        if (ni <= 1) return "each n_i > 1";
    if (spec.q < 2 || spec.r < 2) return "q, r >= 2";
    if (std::gcd(spec.q, spec.r) != 1) return "gcd(q, r) = 1";
    if (require_nonzero_p0 && (spec.p.is_zero() || coeff_is_zero(spec.p.coeffs()[0])))
        return "p(0) != 0";
    return std::nullopt;
}

template <class C>
void validate(const BasicVarietySpec<C>& spec, bool require_nonzero_p0 = true) {
    if (auto clause = invalid_clause(spec, require_nonzero_p0))
        throw ValidationError(*clause);
}

// p evaluated at u = x̲ inside `vars`.
template <class C>
MultiPoly<C> p_at_xbar(const BasicVarietySpec<C>& spec, const std::vector<std::string>& vars) {
    return substitute_at_monomial(spec.p, vars, spec.x_exponents(vars, true));
}

namespace detail {

template <class C>
C spec_one(const BasicVarietySpec<C>& spec) {
    if (!spec.p.is_zero()) return coeff_one_like(spec.p.coeffs()[0]);
    if constexpr (std::is_constructible_v<C, int>)
        return C(1);
    else
        throw StructuralError("cannot synthesize ring unit from zero p");
}

}  // namespace detail

namespace detail {

template <class C>
MultiPoly<C> defining_core(const BasicVarietySpec<C>& spec) {
    auto vars = spec.ambient_vars();
    C one = spec_one(spec);
    Monomial lead = spec.x_exponents(vars);
    lead[vars.size() - 1] = 1;  // y is the last variable
    MultiPoly<C> f = MultiPoly<C>::monomial(vars, lead, one);
    Monomial ze(vars.size(), 0), te(vars.size(), 0);
    ze[vars.size() - 3] = spec.q;
    te[vars.size() - 2] = spec.r;
    f.add_term(ze, one);
    f.add_term(te, one);
    if (!spec.p.is_zero()) {
        Monomial x0(vars.size(), 0);
        x0[0] = 1;
        f += MultiPoly<C>::monomial(vars, x0, one) * p_at_xbar(spec, vars);
    }
    return f;
}

}  // namespace detail

// The defining polynomial  x̲^n̲·y + z^q + t^r + x₀·p(x̲)  over the ambient ring.
template <class C>
MultiPoly<C> build_defining(const BasicVarietySpec<C>& spec) {
    validate(spec);
    return detail::defining_core(spec);
}

// As build_defining but without the p(0) ≠ 0 requirement; used internally by
// the smoothness checker, which must be able to look at the singular members.
template <class C>
MultiPoly<C> build_defining_unchecked(const BasicVarietySpec<C>& spec) {
    validate(spec, false);
    return detail::defining_core(spec);
}

// (F, ∂F/∂x₀, …, ∂F/∂x_m, ∂F/∂y, ∂F/∂z, ∂F/∂t)
inline std::vector<QPoly> jacobian_generators(const VarietySpec& spec) {
    QPoly f = build_defining_unchecked(spec);
    std::vector<QPoly> gens{f};
    for (int i = 0; i <= spec.m; ++i) gens.push_back(f.derivative("x" + std::to_string(i)));
    gens.push_back(f.derivative("y"));
    gens.push_back(f.derivative("z"));
    gens.push_back(f.derivative("t"));
    return gens;
}

struct SmoothnessReport {
    enum class Verdict { smooth, singular, undecided };
    Verdict verdict = Verdict::undecided;
    std::vector<QPoly> basis;                       // smooth witness / non-unit evidence
    std::optional<std::vector<Rational>> point;     // singular point (ambient order)
    std::string detail;
};

// Jacobian criterion: the variety is smooth iff (F, all partials) is the unit
// ideal.  The origin is probed first: it is singular exactly when p(0) = 0,
// which explains that hypothesis concretely and skips a Gröbner run.
inline SmoothnessReport check_smooth(const VarietySpec& spec, const GroebnerOptions& opts = {}) {
    auto gens = jacobian_generators(spec);
    SmoothnessReport rep;
    std::vector<Rational> origin(spec.ambient_vars().size(), Rational(0));
    bool all_vanish = true;
    for (const auto& g : gens)
        if (g.evaluate(origin) != 0) {
            all_vanish = false;
            break;
        }
    if (all_vanish) {
        rep.verdict = SmoothnessReport::Verdict::singular;
        rep.point = origin;
        rep.detail = "all Jacobian generators vanish at the origin";
        return rep;
    }
    try {
        GroebnerBasis basis = buchberger(gens, opts);
        rep.basis = basis.elements();
        rep.verdict = basis.is_unit_ideal() ? SmoothnessReport::Verdict::smooth
                                            : SmoothnessReport::Verdict::singular;
        rep.detail = rep.verdict == SmoothnessReport::Verdict::smooth
                         ? "Jacobian ideal is the unit ideal"
                         : "Jacobian ideal has a non-unit Groebner basis";
    } catch (const CapacityError& e) {
        rep.verdict = SmoothnessReport::Verdict::undecided;
        rep.detail = e.what();
    }
    return rep;
}

struct LocalizationReport {
    QPoly transformed;       // over x₀,…,x_m, z, t, Y
    int denominator_power;   // the inverse substitution is y = Y / x_m^power
    bool shape_ok = false;
    bool roundtrip_ok = false;
    bool pass() const { return shape_ok && roundtrip_ok; }
};

// Inverting x_m realizes the variety as (previous family member) × (torus):
// under Y = x_m^{n_m}·y the defining polynomial becomes the m−1 shape with
// x_m surviving only inside p(x̲).  Exact in the Laurent ring k[x][x_m^{-1}].
inline LocalizationReport localization_decomposition(const VarietySpec& spec) {
    validate(spec);
    if (spec.m < 1) throw DomainError("localization needs m >= 1");
    auto avars = spec.ambient_vars();
    auto tvars = spec.x_vars();
    tvars.insert(tvars.end(), {"z", "t", "Y"});
    QPoly f = build_defining(spec);

    // Split F = A·y + B and divide A by x_m^{n_m} exactly.
    std::size_t yi = avars.size() - 1;
    QPoly ay = QPoly::zero(avars), b = QPoly::zero(avars);
    for (const auto& [mono, c] : f.terms()) {
        if (mono[yi] == 1) {
            Monomial e = mono;
            e[yi] = 0;
            ay.add_term(e, c);
        } else if (mono[yi] == 0) {
            b.add_term(mono, c);
        } else {
            throw StructuralError("defining polynomial not linear in y");
        }
    }
    int nm = spec.n.back();
    Monomial xm_pow(avars.size(), 0);
    xm_pow[static_cast<std::size_t>(spec.m)] = nm;
    auto div = ay.divide_by_monomial(xm_pow);
    if (!div.divisible)
        throw StructuralError("y-coefficient not divisible by x_m^{n_m}");

    LocalizationReport rep;
    rep.denominator_power = nm;
    // Recompose (A / x_m^{n_m})·y + B in the ambient ring, then rename y to Y.
    {
        Monomial ye(avars.size(), 0);
        ye[yi] = 1;
        QPoly recomposed = div.quotient * QPoly::monomial(avars, ye, Rational(1)) + b;
        std::map<std::string, QPoly> rename;
        for (auto& v : avars)
            rename.emplace(v, QPoly::variable(tvars, v == "y" ? "Y" : v));
        rep.transformed = recomposed.substitute(rename);
    }

    // Shape: x₀^{n₀}·(∏_{0<i<m} xᵢ^{nᵢ})·Y + z^q + t^r + x₀·p(x̲), p still read
    // at the full product x̲ = x₀⋯x_m.
    {
        Monomial e(tvars.size(), 0);
        for (int i = 0; i < spec.m; ++i)
            e[static_cast<std::size_t>(i)] = spec.n[static_cast<std::size_t>(i)];
        e[tvars.size() - 1] = 1;  // Y
        QPoly expected = QPoly::monomial(tvars, e, Rational(1));
        Monomial ze(tvars.size(), 0), te(tvars.size(), 0);
        ze[tvars.size() - 3] = spec.q;  // tvars = (x..., z, t, Y)
        te[tvars.size() - 2] = spec.r;
        expected.add_term(ze, Rational(1));
        expected.add_term(te, Rational(1));
        Monomial x0(tvars.size(), 0);
        x0[0] = 1;
        expected += QPoly::monomial(tvars, x0, Rational(1)) *
                    substitute_at_monomial(spec.p, tvars, spec.x_exponents(tvars, true));
        rep.shape_ok = rep.transformed == expected;
    }

    // Round trip: substituting Y = x_m^{n_m}·y back must restore F exactly.
    {
        std::map<std::string, QPoly> back;
        for (auto& v : tvars) {
            if (v == "Y") {
                Monomial e(avars.size(), 0);
                e[static_cast<std::size_t>(spec.m)] = nm;
                e[yi] = 1;
                back.emplace(v, QPoly::monomial(avars, e, Rational(1)));
            } else {
                back.emplace(v, QPoly::variable(avars, v));
            }
        }
        rep.roundtrip_ok = rep.transformed.substitute(back) == f;
    }
    return rep;
}

}  // namespace cylcert

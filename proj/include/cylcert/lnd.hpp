#pragma once

#include <map>
#include <string>
#include <vector>

#include "variety.hpp"

namespace cylcert {

// A k-derivation of the coordinate ring (or its w-extension), defined by its
// images on the ambient generators and extended by the Leibniz rule.
struct Derivation {
    std::map<std::string, QPoly> images;
    bool extend_w = false;
};

inline std::vector<std::string> derivation_vars(const VarietySpec& spec, bool extend_w) {
    auto vars = spec.ambient_vars();
    if (extend_w) vars.push_back("w");
    return vars;
}

// Normal form modulo the defining polynomial, using the rewriting rule
//   x̲^n̲ · y  ->  -(z^q + t^r + x0*p(x̲)),
// confluent because F is linear in y.  Works in the ambient ring and in its
// w-extension alike.
inline QPoly reduce_mod_defining(const VarietySpec& spec, const QPoly& f) {
    const auto& vars = f.vars();
    Monomial rule = spec.x_exponents(vars);
    rule[f.var_index("y")] = 1;
    QPoly rhs = QPoly::zero(vars);
    {
        Monomial ze(vars.size(), 0), te(vars.size(), 0);
        ze[f.var_index("z")] = spec.q;
        te[f.var_index("t")] = spec.r;
        rhs.add_term(ze, Rational(-1));
        rhs.add_term(te, Rational(-1));
        Monomial x0(vars.size(), 0);
        x0[f.var_index("x0")] = 1;
        rhs -= QPoly::monomial(vars, x0, Rational(1)) * p_at_xbar(spec, vars);
    }
    QPoly h = f;
    for (;;) {
        bool rewrote = false;
        for (auto it = h.terms().rbegin(); it != h.terms().rend(); ++it) {
            if (!mono_divides(rule, it->first)) continue;
            Monomial rest = mono_sub(it->first, rule);
            QPoly term = QPoly::monomial(vars, it->first, it->second);
            h -= term;
            h += QPoly::monomial(vars, rest, it->second) * rhs;
            rewrote = true;
            break;  // the term map changed; restart the scan
        }
        if (!rewrote) return h;
    }
}

// Leibniz extension of the generator images to an arbitrary polynomial.
inline QPoly apply_derivation(const Derivation& d, const QPoly& f) {
    QPoly out = QPoly::zero(f.vars());
    for (std::size_t i = 0; i < f.vars().size(); ++i) {
        auto it = d.images.find(f.vars()[i]);
        if (it == d.images.end())
            throw StructuralError("derivation lacks an image for '" + f.vars()[i] + "'");
        out += f.derivative(i) * it->second;
    }
    return out;
}

struct WellDefinedReport {
    bool pass = false;
    QPoly cofactor;  // delta(F) = cofactor * F when pass
    std::string detail;
};

// The derivation descends to the quotient ring iff delta(F) is a multiple of F.
inline WellDefinedReport check_well_defined(const VarietySpec& spec, const Derivation& d) {
    validate(spec);
    auto vars = derivation_vars(spec, d.extend_w);
    QPoly f = build_defining(spec).lift_to(vars);
    for (auto& v : vars)
        if (!d.images.count(v))
            throw StructuralError("derivation lacks an image for '" + v + "'");
    for (auto& [name, img] : d.images)
        if (img.vars() != vars)
            throw StructuralError("derivation image for '" + name + "' is in the wrong ring");
    QPoly df = apply_derivation(d, f);
    WellDefinedReport rep;
    if (df.is_zero()) {
        rep.pass = true;
        rep.cofactor = QPoly::zero(vars);
        rep.detail = "delta(F) = 0";
        return rep;
    }
    auto quot = divide_exact(df, f);
    if (quot) {
        rep.pass = true;
        rep.cofactor = *quot;
        rep.detail = "delta(F) = cofactor * F";
    } else {
        rep.detail = "delta(F) is not a multiple of F";
    }
    return rep;
}

struct NilpotencyOutcome {
    enum class Kind { evidence, refuted, inconclusive };
    Kind kind = Kind::inconclusive;
    std::map<std::string, int> degrees;  // generator -> largest d with delta^d(g) != 0
    int cap = 0;
    std::string refuted_generator;
    QPoly cycle_element;  // the value that reappeared
    std::string detail;
};

// Iterate delta on each generator, reducing modulo F after every step.  A
// generator reaching 0 after d+1 applications has nilpotency degree d; a
// repeated nonzero value refutes local nilpotency outright; hitting the cap
// is reported as inconclusive, never as a verdict.
inline NilpotencyOutcome check_locally_nilpotent(const VarietySpec& spec, const Derivation& d,
                                                 int cap = 64) {
    NilpotencyOutcome out;
    out.cap = cap;
    auto vars = derivation_vars(spec, d.extend_w);
    bool inconclusive = false;
    for (auto& g : vars) {
        QPoly cur = reduce_mod_defining(spec, QPoly::variable(vars, g));
        std::vector<QPoly> seen{cur};
        int applications = 0;
        for (;;) {
            if (cur.is_zero()) {
                out.degrees[g] = applications == 0 ? 0 : applications - 1;
                break;
            }
            if (applications >= cap) {
                inconclusive = true;
                out.detail = "cap of " + std::to_string(cap) + " applications reached on '" +
                             g + "'";
                break;
            }
            cur = reduce_mod_defining(spec, apply_derivation(d, cur));
            ++applications;
            if (!cur.is_zero()) {
                for (const QPoly& old : seen)
                    if (old == cur) {
                        out.kind = NilpotencyOutcome::Kind::refuted;
                        out.refuted_generator = g;
                        out.cycle_element = cur;
                        out.detail = "delta-orbit of '" + g + "' revisits an earlier value";
                        return out;
                    }
                seen.push_back(cur);
            }
        }
    }
    out.kind = inconclusive ? NilpotencyOutcome::Kind::inconclusive
                            : NilpotencyOutcome::Kind::evidence;
    if (!inconclusive) out.detail = "every generator is annihilated within the cap";
    return out;
}

// The two triangular derivations with kernel containing k[x0..xm] and t (resp. z):
//   delta_z: z -> x̲^n̲, y -> -q z^{q-1};   delta_t: t -> x̲^n̲, y -> -r t^{r-1}.
inline std::vector<Derivation> standard_lnds(const VarietySpec& spec) {
    validate(spec);
    auto vars = spec.ambient_vars();
    QPoly zero = QPoly::zero(vars);
    QPoly xbar_n = QPoly::monomial(vars, spec.x_exponents(vars), Rational(1));
    Derivation dz, dt;
    for (auto& v : vars) {
        dz.images.emplace(v, zero);
        dt.images.emplace(v, zero);
    }
    dz.images["z"] = xbar_n;
    {
        Monomial e(vars.size(), 0);
        e[xbar_n.var_index("z")] = spec.q - 1;
        dz.images["y"] = QPoly::monomial(vars, e, Rational(-spec.q));
    }
    dt.images["t"] = xbar_n;
    {
        Monomial e(vars.size(), 0);
        e[xbar_n.var_index("t")] = spec.r - 1;
        dt.images["y"] = QPoly::monomial(vars, e, Rational(-spec.r));
    }
    return {dz, dt};
}

// Lift a derivation of R to R[w], sending w to the given image (0 by default).
inline Derivation extend_with_w(const VarietySpec& spec, const Derivation& d,
                                std::optional<QPoly> w_image = std::nullopt) {
    if (d.extend_w) throw StructuralError("derivation already extends to R[w]");
    auto vars = derivation_vars(spec, true);
    Derivation out;
    out.extend_w = true;
    for (auto& [name, img] : d.images) out.images.emplace(name, img.lift_to(vars));
    out.images["w"] = w_image ? *w_image : QPoly::zero(vars);
    return out;
}

inline bool kernel_membership(const VarietySpec& spec, const Derivation& d, const QPoly& f) {
    return reduce_mod_defining(spec, apply_derivation(d, f)).is_zero();
}

}  // namespace cylcert

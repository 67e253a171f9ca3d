#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "variety.hpp"

namespace cylcert {

// Witness of the polynomial scaling relation p2(u) = mu * p1(lambda * u).
struct ScalingWitness {
    Rational mu;
    Rational lambda;
};

inline bool witness_holds(const UniPoly<Rational>& p1, const UniPoly<Rational>& p2,
                          const ScalingWitness& w) {
    return w.mu != 0 && w.lambda != 0 && p2 == p1.arg_scaled(w.lambda).scaled(w.mu);
}

// Decide existence of (mu, lambda) over Q.  mu is forced by the constant
// terms; lambda is pinned (up to sign, for even index) by the lowest nonzero
// non-constant coefficient; the full identity is then checked exactly.
inline std::optional<ScalingWitness> scaling_equivalent(const UniPoly<Rational>& p1,
                                                        const UniPoly<Rational>& p2, int n0) {
    if (n0 < 2) throw DomainError("n0 must be at least 2");
    if (p1.degree() > n0 - 2 || p2.degree() > n0 - 2)
        throw DomainError("degree bound deg p <= n0 - 2 violated");
    if (p1.is_zero() || p1.coeffs()[0] == 0 || p2.is_zero() || p2.coeffs()[0] == 0)
        throw DomainError("constant terms must be nonzero");
    Rational mu = p2.coeffs()[0] / p1.coeffs()[0];
    if (p1.degree() == 0) {
        ScalingWitness w{mu, Rational(1)};  // lambda = 1 by convention
        if (witness_holds(p1, p2, w)) return w;
        return std::nullopt;
    }
    std::size_t i = 1;
    while (i < p1.coeffs().size() && p1.coeffs()[i] == 0) ++i;
    Rational target = p2.coeff(i) / (mu * p1.coeffs()[i]);
    auto root = kth_root(target, static_cast<unsigned>(i));
    if (!root || *root == 0) return std::nullopt;
    for (Rational lambda : i % 2 == 0 ? std::vector<Rational>{*root, -*root}
                                      : std::vector<Rational>{*root}) {
        ScalingWitness w{mu, lambda};
        if (witness_holds(p1, p2, w)) return w;
    }
    return std::nullopt;
}

// A ring map given by generator images inside the same variable list.
struct RingMap {
    std::vector<std::string> vars;
    std::map<std::string, QPoly> images;

    QPoly apply(const QPoly& f) const { return f.substitute(images); }
};

inline RingMap identity_map(const std::vector<std::string>& vars) {
    RingMap m{vars, {}};
    for (auto& v : vars) m.images.emplace(v, QPoly::variable(vars, v));
    return m;
}

// The explicit isomorphism attached to a scaling witness:
//   x0 -> mu*x0,  x1 -> mu^{-1}*lambda*x1,  y -> mu^{n1-n0}*lambda^{-n1}*y,
// all other generators fixed.  It moves the defining polynomial of p1 onto
// that of p2 = mu*p1(lambda*u) exactly.  Needs m >= 1 (x1 must exist).
inline RingMap build_eta(const VarietySpec& spec1, const ScalingWitness& w) {
    validate(spec1);
    if (spec1.m < 1) throw DomainError("eta rescales x1 and needs m >= 1");
    if (w.mu == 0 || w.lambda == 0) throw DomainError("witness entries must be nonzero");
    auto vars = spec1.ambient_vars();
    RingMap eta = identity_map(vars);
    long n0 = spec1.n[0], n1 = spec1.n[1];
    eta.images["x0"] = QPoly::variable(vars, "x0").scaled(w.mu);
    eta.images["x1"] = QPoly::variable(vars, "x1").scaled(w.lambda / w.mu);
    eta.images["y"] = QPoly::variable(vars, "y")
                          .scaled(pow_rational(w.mu, n1 - n0) * pow_rational(w.lambda, -n1));
    return eta;
}

// The x-permuting automorphism of D = k[x0..xm, z, t]:
//   x0 -> nu0*x0,  xi -> lambda_i * x_{j(i)}  (i = 1..m),  nu0 = 1/prod(lambda_i),
// which fixes the product x̲.  `perm[i-1]` is j(i); permitted only when the
// exponents match: n_{j(i)} = n_i.
inline RingMap build_alpha(const VarietySpec& spec, const std::vector<int>& perm,
                           const std::vector<Rational>& scalings) {
    validate(spec);
    std::size_t m = static_cast<std::size_t>(spec.m);
    if (perm.size() != m || scalings.size() != m)
        throw StructuralError("need one permutation image and one scaling per i in 1..m");
    std::vector<bool> hit(m + 1, false);
    for (std::size_t i = 0; i < m; ++i) {
        int j = perm[i];
        if (j < 1 || static_cast<std::size_t>(j) > m || hit[static_cast<std::size_t>(j)])
            throw DomainError("perm is not a permutation of {1..m}");
        hit[static_cast<std::size_t>(j)] = true;
        if (spec.n[static_cast<std::size_t>(j)] != spec.n[i + 1])
            throw DomainError("permutation must preserve exponents: n_{j(i)} = n_i");
        if (scalings[i] == 0) throw DomainError("scalings must be nonzero");
    }
    auto vars = spec.x_vars();
    vars.insert(vars.end(), {"z", "t"});
    RingMap alpha = identity_map(vars);
    Rational prod(1);
    for (auto& s : scalings) prod *= s;
    alpha.images["x0"] = QPoly::variable(vars, "x0").scaled(1 / prod);
    for (std::size_t i = 0; i < m; ++i)
        alpha.images["x" + std::to_string(i + 1)] =
            QPoly::variable(vars, "x" + std::to_string(perm[i])).scaled(scalings[i]);
    // alpha fixes the product x̲ by construction; verify anyway.
    Monomial ones(vars.size(), 0);
    for (std::size_t i = 0; i <= m; ++i) ones[i] = 1;
    QPoly xbar = QPoly::monomial(vars, ones, Rational(1));
    if (alpha.apply(xbar) != xbar)
        throw StructuralError("alpha does not fix the product of the x-variables");
    return alpha;
}

struct RingMapReport {
    bool pass = false;
    std::string failing;  // first failing check, when !pass
    Rational unit;        // map(F1) = unit * F2
};

// Check the structural shape (each x-variable maps to a scalar multiple of an
// x-variable) and the exact compatibility map(F1) = unit * F2, unit in Q*.
inline RingMapReport verify_ring_map(const VarietySpec& spec1, const VarietySpec& spec2,
                                     const RingMap& map) {
    RingMapReport rep;
    if (invalid_clause(spec1) || invalid_clause(spec2)) {
        rep.failing = "spec-validation";
        return rep;
    }
    auto vars = spec1.ambient_vars();
    if (spec2.ambient_vars() != vars || map.vars != vars) {
        rep.failing = "ring-mismatch";
        return rep;
    }
    for (auto& v : vars) {
        if (!map.images.count(v)) {
            rep.failing = "missing-image:" + v;
            return rep;
        }
    }
    for (int i = 0; i <= spec1.m; ++i) {
        const QPoly& img = map.images.at("x" + std::to_string(i));
        bool ok = img.term_count() == 1;
        if (ok) {
            const Monomial& e = img.leading_monomial();
            ok = mono_degree(e) == 1;
            if (ok) {
                std::size_t pos = 0;
                while (e[pos] == 0) ++pos;
                ok = pos <= static_cast<std::size_t>(spec1.m);  // lands in the x-block
            }
        }
        if (!ok) {
            rep.failing = "x-image-shape:x" + std::to_string(i);
            return rep;
        }
    }
    QPoly f1 = build_defining(spec1);
    QPoly f2 = build_defining(spec2);
    auto quot = divide_exact(map.apply(f1), f2);
    if (!quot || !quot->is_constant() || quot->is_zero()) {
        rep.failing = "defining-compatibility";
        return rep;
    }
    rep.unit = quot->constant_value();
    rep.pass = true;
    return rep;
}

}  // namespace cylcert

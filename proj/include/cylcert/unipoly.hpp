#pragma once

#include <utility>
#include <vector>

#include "multipoly.hpp"

namespace cylcert {

// Dense univariate polynomial, coefficients stored low-to-high with trailing
// zeros stripped.  The zero polynomial has no coefficients and degree -1.
template <class C>
class UniPoly {
public:
    UniPoly() = default;
    explicit UniPoly(std::vector<C> coeffs) : c_(std::move(coeffs)) { normalize(); }

    static UniPoly from_constant(C v) { return UniPoly(std::vector<C>{std::move(v)}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<C>& coeffs() const { return c_; }

    // Coefficient of u^i; for out-of-range i a zero is synthesized from any
    // stored coefficient, so this requires a nonzero polynomial or ground C.
    C coeff(std::size_t i) const {
        if (i < c_.size()) return c_[i];
        if (!c_.empty()) return coeff_zero_like(c_[0]);
        if constexpr (std::is_constructible_v<C, int>)
            return C(0);
        else
            throw StructuralError("coeff of zero polynomial over tower ring");
    }

    const C& leading() const {
        if (c_.empty()) throw DomainError("leading coefficient of zero polynomial");
        return c_.back();
    }

    bool is_monic() const { return !c_.empty() && coeff_is_one(c_.back()); }

    friend UniPoly operator+(const UniPoly& a, const UniPoly& b) {
        std::vector<C> r;
        std::size_t n = std::max(a.c_.size(), b.c_.size());
        r.reserve(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (i >= a.c_.size())
                r.push_back(b.c_[i]);
            else if (i >= b.c_.size())
                r.push_back(a.c_[i]);
            else
                r.push_back(a.c_[i] + b.c_[i]);
        }
        return UniPoly(std::move(r));
    }

    friend UniPoly operator-(const UniPoly& a, const UniPoly& b) { return a + (-b); }

    UniPoly operator-() const {
        UniPoly r = *this;
        for (auto& x : r.c_) x = coeff_scale(x, Rational(-1));
        return r;
    }

    friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
        if (a.is_zero() || b.is_zero()) return UniPoly();
        std::vector<C> r(a.c_.size() + b.c_.size() - 1, coeff_zero_like(a.c_[0]));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return UniPoly(std::move(r));
    }

    UniPoly scaled(const Rational& s) const {
        if (s == 0) return UniPoly();
        UniPoly r = *this;
        for (auto& x : r.c_) x = coeff_scale(x, s);
        r.normalize();
        return r;
    }

    UniPoly coeff_multiplied(const C& k) const {
        UniPoly r = *this;
        for (auto& x : r.c_) x = x * k;
        r.normalize();
        return r;
    }

    // Multiply by u^k.
    UniPoly shifted(int k) const {
        if (is_zero() || k == 0) return *this;
        if (k < 0) throw DomainError("negative shift");
        std::vector<C> r(c_.size() + static_cast<std::size_t>(k), coeff_zero_like(c_[0]));
        for (std::size_t i = 0; i < c_.size(); ++i) r[i + static_cast<std::size_t>(k)] = c_[i];
        return UniPoly(std::move(r));
    }

    // Reduce mod u^n.
    UniPoly truncated(std::size_t n) const {
        if (c_.size() <= n) return *this;
        return UniPoly(std::vector<C>(c_.begin(), c_.begin() + static_cast<std::ptrdiff_t>(n)));
    }

    UniPoly derivative() const {
        if (c_.size() <= 1) return UniPoly();
        std::vector<C> r;
        r.reserve(c_.size() - 1);
        for (std::size_t i = 1; i < c_.size(); ++i)
            r.push_back(coeff_scale(c_[i], Rational(static_cast<long>(i))));
        return UniPoly(std::move(r));
    }

    C eval(const C& x) const {
        if (c_.empty()) {
            if constexpr (std::is_constructible_v<C, int>)
                return C(0);
            else
                return coeff_zero_like(x);
        }
        C acc = c_.back();
        for (std::size_t i = c_.size() - 1; i-- > 0;) acc = acc * x + c_[i];
        return acc;
    }

    // p(s*u): coefficient i picks up s^i.
    UniPoly arg_scaled(const Rational& s) const {
        UniPoly r = *this;
        Rational f(1);
        for (std::size_t i = 0; i < r.c_.size(); ++i) {
            if (i) f *= s;
            r.c_[i] = coeff_scale(r.c_[i], f);
        }
        r.normalize();
        return r;
    }

    friend bool operator==(const UniPoly& a, const UniPoly& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }
    friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

private:
    void normalize() {
        while (!c_.empty() && coeff_is_zero(c_.back())) c_.pop_back();
    }

    std::vector<C> c_;
};

// Quotient and remainder; the divisor's leading coefficient must be a unit.
template <class C>
std::pair<UniPoly<C>, UniPoly<C>> divmod(const UniPoly<C>& f, const UniPoly<C>& g) {
    if (g.is_zero()) throw DomainError("division by zero polynomial");
    auto lead_inv = coeff_invert_unit(g.leading());
    if (!lead_inv) throw DomainError("divmod: leading coefficient of divisor is not a unit");
    UniPoly<C> r = f;
    std::vector<C> q;
    if (f.degree() >= g.degree())
        q.assign(static_cast<std::size_t>(f.degree() - g.degree()) + 1,
                 coeff_zero_like(g.leading()));
    while (!r.is_zero() && r.degree() >= g.degree()) {
        C factor = r.leading() * *lead_inv;
        int shift = r.degree() - g.degree();
        q[static_cast<std::size_t>(shift)] = factor;
        r = r - g.coeff_multiplied(factor).shifted(shift);
    }
    return {UniPoly<C>(std::move(q)), r};
}

template <class C>
struct ExtGcd {
    UniPoly<C> g;  // monic gcd
    UniPoly<C> s;  // s*f1 + t*f2 == g
    UniPoly<C> t;
};

// Extended Euclid over a field of coefficients.  The Bezout pair is the
// minimal-degree one: deg s < deg f2 - deg g, deg t < deg f1 - deg g
// (when both inputs are nonzero and neither divides the other trivially).
inline ExtGcd<Rational> ext_gcd(const UniPoly<Rational>& f1, const UniPoly<Rational>& f2) {
    if (f1.is_zero() && f2.is_zero()) throw DomainError("gcd(0, 0) is undefined");
    UniPoly<Rational> r0 = f1, r1 = f2;
    UniPoly<Rational> s0 = UniPoly<Rational>::from_constant(Rational(1)), s1;
    UniPoly<Rational> t0, t1 = UniPoly<Rational>::from_constant(Rational(1));
    while (!r1.is_zero()) {
        auto [q, r] = divmod(r0, r1);
        r0 = std::exchange(r1, r);
        s0 = std::exchange(s1, s0 - q * s1);
        t0 = std::exchange(t1, t0 - q * t1);
    }
    Rational lead = r0.leading();
    return {r0.scaled(1 / lead), s0.scaled(1 / lead), t0.scaled(1 / lead)};
}

inline UniPoly<Rational> gcd(const UniPoly<Rational>& a, const UniPoly<Rational>& b) {
    if (a.is_zero() && b.is_zero()) return a;
    return ext_gcd(a, b).g;
}

// Substitute the monomial x^e for the variable: sum_i f_i * (x^e)^i.
template <class C>
MultiPoly<C> substitute_at_monomial(const UniPoly<C>& f, const std::vector<std::string>& vars,
                                    const Monomial& e) {
    MultiPoly<C> out = MultiPoly<C>::zero(vars);
    Monomial acc(e.size(), 0);
    for (std::size_t i = 0; i < f.coeffs().size(); ++i) {
        if (i) acc = mono_add(acc, e);
        out.add_term(acc, f.coeffs()[i]);
    }
    return out;
}

template <class C>
std::string to_text(const UniPoly<C>& f, const std::string& var = "u") {
    MultiPoly<C> m = substitute_at_monomial(f, {var}, Monomial{1});
    return m.to_text();
}

}  // namespace cylcert

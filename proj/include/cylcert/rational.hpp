#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

#include "errors.hpp"

namespace cylcert {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator(const Rational& r) { return boost::multiprecision::denominator(r); }

// Canonical text form: "num" when the denominator is 1, else "num/den",
// with den > 0 and gcd(num, den) = 1 (cpp_rational keeps that invariant).
inline std::string to_string(const Rational& r) {
    std::string s = numerator(r).str();
    if (denominator(r) != 1) s += "/" + denominator(r).str();
    return s;
}

// Strict parser for the canonical form.  Accepts an optional leading '-',
// then digits, then optionally '/' and a positive digit string.
inline Rational parse_rational(const std::string& text) {
    auto fail = [&] { throw StructuralError("bad rational literal: '" + text + "'"); };
    std::size_t i = 0;
    bool neg = false;
    if (i < text.size() && text[i] == '-') { neg = true; ++i; }
    std::size_t num_begin = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (i == num_begin) fail();
    Integer num(text.substr(num_begin, i - num_begin));
    Integer den = 1;
    if (i < text.size()) {
        if (text[i] != '/') fail();
        ++i;
        std::size_t den_begin = i;
        while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
        if (i == den_begin || i != text.size()) fail();
        den = Integer(text.substr(den_begin));
        if (den == 0) throw DomainError("zero denominator in '" + text + "'");
    }
    Rational r(num, den);
    return neg ? Rational(-r) : r;
}

inline Rational pow_rational(const Rational& base, long exp) {
    if (exp == 0) return Rational(1);
    if (base == 0) {
        if (exp < 0) throw DomainError("0 raised to a negative power");
        return Rational(0);
    }
    Rational b = exp < 0 ? Rational(1) / base : base;
    unsigned long e = exp < 0 ? static_cast<unsigned long>(-(exp + 1)) + 1ul
                              : static_cast<unsigned long>(exp);
    Rational acc(1);
    while (e) {
        if (e & 1ul) acc *= b;
        b *= b;
        e >>= 1;
    }
    return acc;
}

namespace detail {

// Floor k-th root of a nonnegative integer by bisection on bit length.
inline Integer integer_kth_root_floor(const Integer& a, unsigned k) {
    if (a < 0) throw DomainError("kth root of negative integer");
    if (k == 0) throw DomainError("0th root");
    if (a == 0 || a == 1 || k == 1) return a;
    Integer lo = 1;
    Integer hi = Integer(1) << static_cast<unsigned>(boost::multiprecision::msb(a) / k + 2);
    while (lo < hi) {
        Integer mid = (lo + hi + 1) / 2;
        if (boost::multiprecision::pow(mid, k) <= a)
            lo = mid;
        else
            hi = mid - 1;
    }
    return lo;
}

}  // namespace detail

// Exact k-th root in Q, if one exists.  For even k only the nonnegative
// root is reported; callers that want -root try both signs themselves.
inline std::optional<Rational> kth_root(const Rational& r, unsigned k) {
    if (k == 0) throw DomainError("0th root");
    if (r == 0) return Rational(0);
    bool neg = r < 0;
    if (neg && k % 2 == 0) return std::nullopt;
    Rational a = neg ? Rational(-r) : r;
    Integer nr = detail::integer_kth_root_floor(numerator(a), k);
    if (boost::multiprecision::pow(nr, k) != numerator(a)) return std::nullopt;
    Integer dr = detail::integer_kth_root_floor(denominator(a), k);
    if (boost::multiprecision::pow(dr, k) != denominator(a)) return std::nullopt;
    Rational root(nr, dr);
    return neg ? Rational(-root) : root;
}

// --- coefficient-ring hooks -------------------------------------------------
//
// Generic code over an unknown coefficient ring C calls these free functions;
// MultiPoly supplies matching overloads so rings can be stacked.

inline bool coeff_is_zero(const Rational& c) { return c == 0; }
inline bool coeff_is_one(const Rational& c) { return c == 1; }
inline Rational coeff_zero_like(const Rational&) { return Rational(0); }
inline Rational coeff_one_like(const Rational&) { return Rational(1); }
inline Rational coeff_scale(const Rational& c, const Rational& s) { return c * s; }

inline std::optional<Rational> coeff_divide_exact(const Rational& a, const Rational& b) {
    if (b == 0) return std::nullopt;
    return a / b;
}

inline std::optional<Rational> coeff_invert_unit(const Rational& c) {
    if (c == 0) return std::nullopt;
    return Rational(1) / c;
}

inline std::string coeff_to_text(const Rational& c) { return to_string(c); }

}  // namespace cylcert

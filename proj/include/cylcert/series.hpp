#pragma once

#include <vector>

#include "unipoly.hpp"

namespace cylcert {

// Truncated power series in one variable: an element of C[[u]]/(u^N).
// Exactly N coefficients are stored, including zeros, so the ring context
// survives even for the zero series.
template <class C>
class TruncSeries {
public:
    TruncSeries(std::size_t precision, std::vector<C> coeffs) : c_(std::move(coeffs)) {
        if (precision == 0) throw DomainError("series precision must be positive");
        if (c_.size() != precision)
            throw StructuralError("series coefficient count does not match precision");
    }

    static TruncSeries from_poly(const UniPoly<C>& p, std::size_t precision, const C& zero) {
        std::vector<C> c(precision, zero);
        for (std::size_t i = 0; i < c.size() && i < p.coeffs().size(); ++i) c[i] = p.coeffs()[i];
        return TruncSeries(precision, std::move(c));
    }

    static TruncSeries from_poly(const UniPoly<C>& p, std::size_t precision)
        requires std::is_constructible_v<C, int>
    {
        return from_poly(p, precision, C(0));
    }

    std::size_t precision() const { return c_.size(); }
    const std::vector<C>& coeffs() const { return c_; }
    const C& operator[](std::size_t i) const { return c_.at(i); }

    UniPoly<C> to_poly() const { return UniPoly<C>(c_); }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        a.require_same_precision(b);
        std::vector<C> r;
        r.reserve(a.c_.size());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.push_back(a.c_[i] + b.c_[i]);
        return TruncSeries(a.c_.size(), std::move(r));
    }

    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        a.require_same_precision(b);
        std::vector<C> r;
        r.reserve(a.c_.size());
        for (std::size_t i = 0; i < a.c_.size(); ++i) r.push_back(a.c_[i] - b.c_[i]);
        return TruncSeries(a.c_.size(), std::move(r));
    }

    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        a.require_same_precision(b);
        std::size_t n = a.c_.size();
        std::vector<C> r(n, coeff_zero_like(a.c_[0]));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; i + j < n; ++j) r[i + j] = r[i + j] + a.c_[i] * b.c_[j];
        return TruncSeries(n, std::move(r));
    }

    TruncSeries scaled(const Rational& s) const {
        std::vector<C> r;
        r.reserve(c_.size());
        for (auto& x : c_) r.push_back(coeff_scale(x, s));
        return TruncSeries(c_.size(), std::move(r));
    }

    // Multiplicative inverse; the constant term must be a unit.
    TruncSeries inverse() const {
        auto inv0 = coeff_invert_unit(c_[0]);
        if (!inv0) throw DomainError("series inverse: constant term is not a unit");
        std::size_t n = c_.size();
        std::vector<C> b(n, coeff_zero_like(c_[0]));
        b[0] = *inv0;
        for (std::size_t k = 1; k < n; ++k) {
            C acc = coeff_zero_like(c_[0]);
            for (std::size_t j = 1; j <= k; ++j) acc = acc + c_[j] * b[k - j];
            b[k] = coeff_scale(acc * *inv0, Rational(-1));
        }
        return TruncSeries(n, std::move(b));
    }

    // Formal logarithm, computed as the integral of p'/p.  Requires constant
    // term exactly 1.
    TruncSeries log() const {
        if (!coeff_is_one(c_[0]))
            throw DomainError("series log: constant term must be 1");
        std::size_t n = c_.size();
        std::vector<C> r(n, coeff_zero_like(c_[0]));
        if (n > 1) {
            // p' and 1/p are only needed mod u^(n-1).
            std::vector<C> dp, low(c_.begin(), c_.end() - 1);
            dp.reserve(n - 1);
            for (std::size_t i = 1; i < n; ++i)
                dp.push_back(coeff_scale(c_[i], Rational(static_cast<long>(i))));
            TruncSeries prod =
                TruncSeries(n - 1, std::move(dp)) * TruncSeries(n - 1, std::move(low)).inverse();
            for (std::size_t i = 0; i + 1 < n; ++i)
                r[i + 1] = coeff_scale(prod.c_[i], Rational(1, static_cast<long>(i) + 1));
        }
        return TruncSeries(n, std::move(r));
    }

    // Formal exponential; requires zero constant term.  Uses the recurrence
    // k*e_k = sum_{j=1..k} j*s_j*e_{k-j} obtained from e' = s'e.
    TruncSeries exp() const {
        if (!coeff_is_zero(c_[0]))
            throw DomainError("series exp: constant term must be 0");
        std::size_t n = c_.size();
        std::vector<C> e(n, coeff_zero_like(c_[0]));
        e[0] = coeff_one_like(c_[0]);
        for (std::size_t k = 1; k < n; ++k) {
            C acc = coeff_zero_like(c_[0]);
            for (std::size_t j = 1; j <= k; ++j)
                acc = acc + coeff_scale(c_[j] * e[k - j], Rational(static_cast<long>(j)));
            e[k] = coeff_scale(acc, Rational(1, static_cast<long>(k)));
        }
        return TruncSeries(n, std::move(e));
    }

    friend bool operator==(const TruncSeries& a, const TruncSeries& b) {
        if (a.c_.size() != b.c_.size()) return false;
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            if (!(a.c_[i] == b.c_[i])) return false;
        return true;
    }

private:
    void require_same_precision(const TruncSeries& o) const {
        if (c_.size() != o.c_.size())
            throw StructuralError("series precision mismatch");
    }

    std::vector<C> c_;
};

}  // namespace cylcert

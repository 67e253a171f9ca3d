#pragma once

#include <vector>

#include "unipoly.hpp"

namespace cylcert {

template <class C>
using Matrix = std::vector<std::vector<C>>;

// Fraction-free Gaussian elimination (Bareiss).  Works over any integral
// domain whose elements support exact division; every interior division is
// exact by the algorithm's invariant.
template <class C>
C bareiss_det(Matrix<C> a) {
    std::size_t n = a.size();
    if (n == 0) throw DomainError("determinant of empty matrix");
    for (auto& row : a)
        if (row.size() != n) throw StructuralError("determinant of non-square matrix");
    C zero = coeff_zero_like(a[0][0]);
    C prev = coeff_one_like(a[0][0]);
    Rational sign(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (coeff_is_zero(a[k][k])) {
            std::size_t pivot = k + 1;
            while (pivot < n && coeff_is_zero(a[pivot][k])) ++pivot;
            if (pivot == n) return zero;
            std::swap(a[k], a[pivot]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                C num = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                auto div = coeff_divide_exact(num, prev);
                if (!div)
                    throw StructuralError("bareiss: non-exact division (not an integral domain?)");
                a[i][j] = std::move(*div);
            }
            a[i][k] = zero;
        }
        prev = a[k][k];
    }
    return coeff_scale(a[n - 1][n - 1], sign);
}

// Sylvester matrix of f (degree df) and g (degree dg): the first dg rows hold
// shifted copies of f's coefficients (descending), the last df rows those of g.
template <class C>
Matrix<C> sylvester_matrix(const UniPoly<C>& f, const UniPoly<C>& g) {
    if (f.is_zero() || g.is_zero())
        throw DomainError("sylvester matrix of zero polynomial");
    std::size_t df = static_cast<std::size_t>(f.degree());
    std::size_t dg = static_cast<std::size_t>(g.degree());
    std::size_t n = df + dg;
    C zero = coeff_zero_like(f.leading());
    Matrix<C> m(n, std::vector<C>(n, zero));
    for (std::size_t i = 0; i < dg; ++i)
        for (std::size_t k = 0; k <= df; ++k) m[i][i + k] = f.coeffs()[df - k];
    for (std::size_t i = 0; i < df; ++i)
        for (std::size_t k = 0; k <= dg; ++k) m[dg + i][i + k] = g.coeffs()[dg - k];
    return m;
}

template <class C>
C resultant(const UniPoly<C>& f, const UniPoly<C>& g) {
    if (f.is_zero() || g.is_zero())
        throw DomainError("resultant of zero polynomial");
    if (f.degree() == 0 && g.degree() == 0) return coeff_one_like(f.leading());
    return bareiss_det(sylvester_matrix(f, g));
}

template <class C>
struct BezoutResult {
    UniPoly<C> s, t;  // s*f + t*g == res, deg s < deg g, deg t < deg f
    C res;
};

namespace detail {

template <class C>
Matrix<C> strike_row0_col(const Matrix<C>& k, std::size_t col) {
    std::size_t n = k.size();
    Matrix<C> m;
    m.reserve(n - 1);
    for (std::size_t i = 1; i < n; ++i) {
        std::vector<C> row;
        row.reserve(n - 1);
        for (std::size_t j = 0; j < n; ++j)
            if (j != col) row.push_back(k[i][j]);
        m.push_back(std::move(row));
    }
    return m;
}

}  // namespace detail

// Solve s*f + t*g = Res(f, g) by Cramer's rule on the convolution matrix.
// All minors are computed fraction-free, so this works over polynomial
// coefficient rings, where ext_gcd does not apply.
template <class C>
BezoutResult<C> bezout_resultant(const UniPoly<C>& f, const UniPoly<C>& g) {
    if (f.is_zero() || g.is_zero())
        throw DomainError("bezout_resultant of zero polynomial");
    std::size_t df = static_cast<std::size_t>(f.degree());
    std::size_t dg = static_cast<std::size_t>(g.degree());
    std::size_t n = df + dg;
    if (n == 0) throw DomainError("bezout_resultant needs a nonconstant input");
    C res = resultant(f, g);
    if (coeff_is_zero(res)) throw DomainError("bezout_resultant: resultant vanishes");
    C zero = coeff_zero_like(res);
    C one = coeff_one_like(res);
    // K[row][j]: coefficient of u^row in u^j*f (j < dg) or u^(j-dg)*g.
    Matrix<C> k(n, std::vector<C>(n, zero));
    for (std::size_t j = 0; j < dg; ++j)
        for (std::size_t i = 0; i <= df; ++i) k[i + j][j] = f.coeffs()[i];
    for (std::size_t j = 0; j < df; ++j)
        for (std::size_t i = 0; i <= dg; ++i) k[i + j][dg + j] = g.coeffs()[i];
    C det = bareiss_det(k);
    auto sigma = coeff_divide_exact(det, res);
    if (!sigma || !(coeff_is_one(*sigma) || coeff_is_one(coeff_scale(*sigma, Rational(-1)))))
        throw StructuralError("bezout_resultant: determinant is not +-resultant");
    std::vector<C> unknowns;
    unknowns.reserve(n);
    for (std::size_t j = 0; j < n; ++j) {
        C minor = n == 1 ? one : bareiss_det(detail::strike_row0_col(k, j));
        Rational s((j % 2 == 0) ? 1 : -1);
        unknowns.push_back(coeff_scale(minor * *sigma, s));
    }
    BezoutResult<C> out{
        UniPoly<C>(std::vector<C>(unknowns.begin(),
                                  unknowns.begin() + static_cast<std::ptrdiff_t>(dg))),
        UniPoly<C>(std::vector<C>(unknowns.begin() + static_cast<std::ptrdiff_t>(dg),
                                  unknowns.end())),
        res};
    if (out.s * f + out.t * g != UniPoly<C>::from_constant(res))
        throw StructuralError("bezout_resultant: identity check failed");
    return out;
}

}  // namespace cylcert

#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <vector>

#include "errors.hpp"
#include "rational.hpp"

namespace cylcert {

// Exponent vector aligned with a variable list.  Variable lists are stored in
// increasing precedence: vars[0] is the least variable of the order.
using Monomial = std::vector<int>;

inline int mono_degree(const Monomial& m) {
    return std::accumulate(m.begin(), m.end(), 0);
}

inline bool mono_divides(const Monomial& d, const Monomial& m) {
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > m[i]) return false;
    return true;
}

inline Monomial mono_add(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline Monomial mono_sub(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline Monomial mono_lcm(const Monomial& a, const Monomial& b) {
    Monomial r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
}

// Graded reverse lexicographic order.  Ties in total degree are broken by
// scanning from the least variable up: whichever monomial carries more of its
// degree in smaller variables is the smaller monomial.
struct GrevlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = mono_degree(a), db = mono_degree(b);
        if (da != db) return da < db;
        for (std::size_t i = 0; i < a.size(); ++i)
            if (a[i] != b[i]) return a[i] > b[i];
        return false;
    }
};

template <class C>
class MultiPoly {
public:
    using TermMap = std::map<Monomial, C, GrevlexLess>;

    MultiPoly() = default;

    static MultiPoly zero(std::vector<std::string> vars) {
        MultiPoly p;
        p.vars_ = std::move(vars);
        return p;
    }

    static MultiPoly constant(std::vector<std::string> vars, C value) {
        MultiPoly p = zero(std::move(vars));
        if (!coeff_is_zero(value))
            p.terms_.emplace(Monomial(p.vars_.size(), 0), std::move(value));
        return p;
    }

    static MultiPoly monomial(std::vector<std::string> vars, Monomial expo, C coeff) {
        MultiPoly p = zero(std::move(vars));
        if (expo.size() != p.vars_.size())
            throw StructuralError("monomial exponent vector length mismatch");
        for (int e : expo)
            if (e < 0) throw StructuralError("negative exponent in monomial");
        if (!coeff_is_zero(coeff)) p.terms_.emplace(std::move(expo), std::move(coeff));
        return p;
    }

    static MultiPoly variable(std::vector<std::string> vars, const std::string& name, C one) {
        MultiPoly p = zero(std::move(vars));
        Monomial e(p.vars_.size(), 0);
        e[p.var_index(name)] = 1;
        p.terms_.emplace(std::move(e), std::move(one));
        return p;
    }

    static MultiPoly variable(std::vector<std::string> vars, const std::string& name)
        requires std::is_constructible_v<C, int>
    {
        return variable(std::move(vars), name, C(1));
    }

    const std::vector<std::string>& vars() const { return vars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    std::size_t var_index(const std::string& name) const {
        auto it = std::find(vars_.begin(), vars_.end(), name);
        if (it == vars_.end())
            throw StructuralError("unknown variable '" + name + "'");
        return static_cast<std::size_t>(it - vars_.begin());
    }

    int total_degree() const {
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
        return d;
    }

    int degree_in(std::size_t var) const {
        int d = -1;
        for (auto& [m, c] : terms_) d = std::max(d, m[var]);
        return d;
    }

    bool is_constant() const {
        return terms_.empty() ||
               (terms_.size() == 1 && mono_degree(terms_.begin()->first) == 0);
    }

    // Value of a constant polynomial.  The zero polynomial only has a value
    // when C can be built without ring context (i.e. at the ground level).
    C constant_value() const {
        if (terms_.empty()) {
            if constexpr (std::is_constructible_v<C, int>)
                return C(0);
            else
                throw StructuralError("constant_value of zero polynomial over tower ring");
        }
        if (!is_constant()) throw DomainError("constant_value of non-constant polynomial");
        return terms_.begin()->second;
    }

    const Monomial& leading_monomial() const {
        require_nonzero("leading_monomial");
        return terms_.rbegin()->first;
    }

    const C& leading_coeff() const {
        require_nonzero("leading_coeff");
        return terms_.rbegin()->second;
    }

    MultiPoly& operator+=(const MultiPoly& o) {
        require_same_ring(o);
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }

    MultiPoly& operator-=(const MultiPoly& o) {
        require_same_ring(o);
        for (auto& [m, c] : o.terms_) {
            auto it = terms_.find(m);
            if (it == terms_.end()) {
                C neg = coeff_scale(c, Rational(-1));
                if (!coeff_is_zero(neg)) terms_.emplace(m, std::move(neg));
            } else {
                it->second = it->second - c;
                if (coeff_is_zero(it->second)) terms_.erase(it);
            }
        }
        return *this;
    }

    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }

    MultiPoly operator-() const {
        MultiPoly r = *this;
        for (auto& [m, c] : r.terms_) c = coeff_scale(c, Rational(-1));
        return r;
    }

    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        a.require_same_ring(b);
        MultiPoly r = zero(a.vars_);
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_)
                r.add_term(mono_add(ma, mb), ca * cb);
        return r;
    }

    MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }

    // Multiply every coefficient by a rational scalar (works at every tower level).
    MultiPoly scaled(const Rational& s) const {
        MultiPoly r = zero(vars_);
        if (s == 0) return r;
        for (auto& [m, c] : terms_) r.terms_.emplace(m, coeff_scale(c, s));
        return r;
    }

    // Multiply every coefficient by a ring element.
    MultiPoly coeff_multiplied(const C& k) const {
        MultiPoly r = zero(vars_);
        for (auto& [m, c] : terms_) r.add_term(m, c * k);
        return r;
    }

    MultiPoly pow(int e) const {
        if (e < 0) throw DomainError("negative polynomial power");
        MultiPoly base = *this;
        std::optional<MultiPoly> acc;
        while (e) {
            if (e & 1) acc = acc ? *acc * base : base;
            e >>= 1;
            if (e) base = base * base;
        }
        if (acc) return *acc;
        // x^0: need a one.  Fall back to an existing coefficient for context.
        if (!terms_.empty())
            return constant(vars_, coeff_one_like(terms_.begin()->second));
        if constexpr (std::is_constructible_v<C, int>)
            return constant(vars_, C(1));
        else
            throw StructuralError("pow(0) of zero polynomial over tower ring");
    }

    MultiPoly derivative(std::size_t var) const {
        if (var >= vars_.size()) throw StructuralError("derivative: variable index out of range");
        MultiPoly r = zero(vars_);
        for (auto& [m, c] : terms_) {
            if (m[var] == 0) continue;
            Monomial e = m;
            int k = e[var]--;
            r.add_term(e, coeff_scale(c, Rational(k)));
        }
        return r;
    }

    MultiPoly derivative(const std::string& name) const { return derivative(var_index(name)); }

    // Substitute an image for every variable; images live in a common target ring.
    MultiPoly substitute(const std::vector<MultiPoly>& images) const {
        if (images.size() != vars_.size())
            throw StructuralError("substitute: need one image per variable");
        if (terms_.empty()) {
            if (images.empty()) return *this;
            return zero(images[0].vars_);
        }
        const auto& tvars = images.empty() ? vars_ : images[0].vars_;
        for (auto& im : images)
            if (im.vars() != tvars)
                throw StructuralError("substitute: images live in different rings");
        // Cache powers of each image up to the largest exponent used.
        std::vector<std::vector<MultiPoly>> powers(images.size());
        for (std::size_t i = 0; i < images.size(); ++i) {
            int maxe = degree_in(i);
            powers[i].reserve(static_cast<std::size_t>(std::max(maxe, 0)) + 1);
            MultiPoly acc = constant(tvars, coeff_one_like(terms_.begin()->second));
            powers[i].push_back(acc);
            for (int e = 1; e <= maxe; ++e) {
                acc = acc * images[i];
                powers[i].push_back(acc);
            }
        }
        MultiPoly r = zero(tvars);
        for (auto& [m, c] : terms_) {
            MultiPoly term = constant(tvars, c);
            for (std::size_t i = 0; i < m.size(); ++i)
                if (m[i] > 0) term = term * powers[i][static_cast<std::size_t>(m[i])];
            r += term;
        }
        return r;
    }

    MultiPoly substitute(const std::map<std::string, MultiPoly>& images) const {
        std::vector<MultiPoly> v;
        v.reserve(vars_.size());
        for (auto& name : vars_) {
            auto it = images.find(name);
            if (it == images.end())
                throw StructuralError("substitute: no image for variable '" + name + "'");
            v.push_back(it->second);
        }
        return substitute(v);
    }

    C evaluate(const std::vector<C>& point) const {
        if (point.size() != vars_.size())
            throw StructuralError("evaluate: need one value per variable");
        C acc = terms_.empty() ? ground_zero() : coeff_zero_like(terms_.begin()->second);
        for (auto& [m, c] : terms_) {
            C term = c;
            for (std::size_t i = 0; i < m.size(); ++i)
                for (int e = 0; e < m[i]; ++e) term = term * point[i];
            acc = acc + term;
        }
        return acc;
    }

    struct MonomialDivision {
        bool divisible = false;
        MultiPoly quotient;
        Monomial witness;  // grevlex-largest non-divisible term, when !divisible
    };

    MonomialDivision divide_by_monomial(const Monomial& d) const {
        if (d.size() != vars_.size())
            throw StructuralError("divide_by_monomial: exponent vector length mismatch");
        MonomialDivision out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it)
            if (!mono_divides(d, it->first)) {
                out.witness = it->first;
                return out;
            }
        out.divisible = true;
        out.quotient = zero(vars_);
        for (auto& [m, c] : terms_) out.quotient.terms_.emplace(mono_sub(m, d), c);
        return out;
    }

    // Embed into a larger ring (every current variable must appear in new_vars).
    MultiPoly<C> lift_to(const std::vector<std::string>& new_vars) const {
        std::vector<std::size_t> where(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
            if (it == new_vars.end())
                throw StructuralError("lift_to: variable '" + vars_[i] + "' missing from target");
            where[i] = static_cast<std::size_t>(it - new_vars.begin());
        }
        MultiPoly r = zero(new_vars);
        for (auto& [m, c] : terms_) {
            Monomial e(new_vars.size(), 0);
            for (std::size_t i = 0; i < m.size(); ++i) e[where[i]] = m[i];
            r.terms_.emplace(std::move(e), c);
        }
        return r;
    }

    // Project onto a subring; variables being dropped must not occur.
    MultiPoly<C> drop_to(const std::vector<std::string>& new_vars) const {
        std::vector<std::optional<std::size_t>> where(vars_.size());
        for (std::size_t i = 0; i < vars_.size(); ++i) {
            auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
            if (it != new_vars.end()) where[i] = static_cast<std::size_t>(it - new_vars.begin());
        }
        MultiPoly r = zero(new_vars);
        for (auto& [m, c] : terms_) {
            Monomial e(new_vars.size(), 0);
            for (std::size_t i = 0; i < m.size(); ++i) {
                if (m[i] == 0) continue;
                if (!where[i])
                    throw StructuralError("drop_to: polynomial involves dropped variable '" +
                                          vars_[i] + "'");
                e[*where[i]] = m[i];
            }
            r.add_term(e, c);
        }
        return r;
    }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) {
        if (a.vars_ != b.vars_ || a.terms_.size() != b.terms_.size()) return false;
        auto ia = a.terms_.begin();
        auto ib = b.terms_.begin();
        for (; ia != a.terms_.end(); ++ia, ++ib)
            if (ia->first != ib->first || !(ia->second == ib->second)) return false;
        return true;
    }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    std::string to_text() const;

    void add_term(const Monomial& m, C c) {
        if (coeff_is_zero(c)) return;
        auto [it, inserted] = terms_.try_emplace(m, std::move(c));
        if (!inserted) {
            it->second = it->second + c;
            if (coeff_is_zero(it->second)) terms_.erase(it);
        }
    }

private:
    void require_same_ring(const MultiPoly& o) const {
        if (vars_ != o.vars_)
            throw StructuralError("operation on polynomials over different rings");
    }

    void require_nonzero(const char* what) const {
        if (terms_.empty()) throw DomainError(std::string(what) + " of zero polynomial");
    }

    static C ground_zero() {
        if constexpr (std::is_constructible_v<C, int>)
            return C(0);
        else
            throw StructuralError("zero coefficient needed but ring context unavailable");
    }

    std::vector<std::string> vars_;
    TermMap terms_;
};

// --- coefficient-ring hooks for stacked polynomial rings --------------------

template <class C>
bool coeff_is_zero(const MultiPoly<C>& p) {
    return p.is_zero();
}

template <class C>
bool coeff_is_one(const MultiPoly<C>& p) {
    return p.is_constant() && !p.is_zero() && coeff_is_one(p.terms().begin()->second);
}

template <class C>
MultiPoly<C> coeff_zero_like(const MultiPoly<C>& p) {
    return MultiPoly<C>::zero(p.vars());
}

template <class C>
MultiPoly<C> coeff_one_like(const MultiPoly<C>& p) {
    if (!p.terms().empty())
        return MultiPoly<C>::constant(p.vars(), coeff_one_like(p.terms().begin()->second));
    if constexpr (std::is_constructible_v<C, int>)
        return MultiPoly<C>::constant(p.vars(), C(1));
    else
        throw StructuralError("one_like of zero polynomial over tower ring");
}

template <class C>
MultiPoly<C> coeff_scale(const MultiPoly<C>& p, const Rational& s) {
    return p.scaled(s);
}

// Exact division in the polynomial ring; nullopt when b does not divide a.
template <class C>
std::optional<MultiPoly<C>> divide_exact(const MultiPoly<C>& a, const MultiPoly<C>& b) {
    if (b.is_zero()) return std::nullopt;
    MultiPoly<C> r = a;
    MultiPoly<C> q = MultiPoly<C>::zero(a.vars());
    while (!r.is_zero()) {
        const Monomial& mr = r.leading_monomial();
        const Monomial& mb = b.leading_monomial();
        if (!mono_divides(mb, mr)) return std::nullopt;
        auto qc = coeff_divide_exact(r.leading_coeff(), b.leading_coeff());
        if (!qc) return std::nullopt;
        MultiPoly<C> t = MultiPoly<C>::monomial(a.vars(), mono_sub(mr, mb), *qc);
        q += t;
        r -= t * b;
    }
    return q;
}

template <class C>
std::optional<MultiPoly<C>> coeff_divide_exact(const MultiPoly<C>& a, const MultiPoly<C>& b) {
    return divide_exact(a, b);
}

template <class C>
std::optional<MultiPoly<C>> coeff_invert_unit(const MultiPoly<C>& p) {
    if (!p.is_constant() || p.is_zero()) return std::nullopt;
    auto inv = coeff_invert_unit(p.terms().begin()->second);
    if (!inv) return std::nullopt;
    return MultiPoly<C>::constant(p.vars(), *inv);
}

// --- canonical text form ----------------------------------------------------
//
// Terms are emitted in decreasing order.  Over Q the usual sign conventions
// apply ("x0^2*y - 1/2*z").  Over a tower ring every coefficient is emitted
// parenthesized and terms are joined with " + ", which keeps the grammar
// unambiguous without a sign notion for polynomial coefficients.

namespace detail {

inline void append_monomial(std::string& out, const Monomial& m,
                            const std::vector<std::string>& vars, bool leading_star) {
    bool first = !leading_star;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (!first) out += "*";
        first = false;
        out += vars[i];
        if (m[i] != 1) out += "^" + std::to_string(m[i]);
    }
}

}  // namespace detail

template <class C>
std::string MultiPoly<C>::to_text() const {
    if (terms_.empty()) return "0";
    std::string out;
    if constexpr (std::is_same_v<C, Rational>) {
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const Rational& c = it->second;
            bool neg = c < 0;
            Rational mag = neg ? Rational(-c) : c;
            if (first)
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            first = false;
            bool const_term = mono_degree(it->first) == 0;
            if (const_term) {
                out += to_string(mag);
            } else {
                if (mag != 1) {
                    out += to_string(mag);
                    detail::append_monomial(out, it->first, vars_, true);
                } else {
                    detail::append_monomial(out, it->first, vars_, false);
                }
            }
        }
    } else {
        bool first = true;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            if (!first) out += " + ";
            first = false;
            out += "(" + it->second.to_text() + ")";
            if (mono_degree(it->first) != 0) detail::append_monomial(out, it->first, vars_, true);
        }
    }
    return out;
}

// --- parsing ----------------------------------------------------------------

namespace detail {

struct PolyLexer {
    explicit PolyLexer(const std::string& s) : text(s) {}
    const std::string& text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= text.size();
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    bool consume(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string number() {
        skip_ws();
        std::size_t b = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == b) throw StructuralError("expected digits at position " +
                                            std::to_string(b) + " in '" + text + "'");
        return text.substr(b, pos - b);
    }
    std::string identifier() {
        skip_ws();
        std::size_t b = pos;
        while (pos < text.size() &&
               (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
            ++pos;
        if (pos == b) throw StructuralError("expected identifier at position " +
                                            std::to_string(b) + " in '" + text + "'");
        return text.substr(b, pos - b);
    }
    // Extract a balanced "(...)" group, returning the inside.
    std::string group() {
        skip_ws();
        if (pos >= text.size() || text[pos] != '(')
            throw StructuralError("expected '(' in '" + text + "'");
        int depth = 0;
        std::size_t b = ++pos;
        for (; pos < text.size(); ++pos) {
            if (text[pos] == '(') ++depth;
            if (text[pos] == ')') {
                if (depth == 0) return text.substr(b, pos++ - b);
                --depth;
            }
        }
        throw StructuralError("unbalanced parentheses in '" + text + "'");
    }
};

inline Rational parse_rational_factor(PolyLexer& lx) {
    std::string num = lx.number();
    if (lx.consume('/')) return Rational(Integer(num), Integer(lx.number()));
    return Rational(Integer(num));
}

}  // namespace detail

// Parse a ground-level polynomial in canonical text form over the given ring.
inline MultiPoly<Rational> parse_ground(const std::vector<std::string>& vars,
                                        const std::string& text) {
    detail::PolyLexer lx(text);
    MultiPoly<Rational> out = MultiPoly<Rational>::zero(vars);
    bool expect_term = true;
    Rational sign(1);
    while (!lx.eof()) {
        if (!expect_term) {
            if (lx.consume('+'))
                sign = 1;
            else if (lx.consume('-'))
                sign = -1;
            else
                throw StructuralError("expected '+' or '-' in '" + text + "'");
            expect_term = true;
            continue;
        }
        if (lx.consume('-')) sign = -sign;  // leading minus
        Rational coeff = sign;
        Monomial expo(vars.size(), 0);
        bool more = true;
        while (more) {
            char c = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coeff *= detail::parse_rational_factor(lx);
            } else {
                std::string name = lx.identifier();
                auto it = std::find(vars.begin(), vars.end(), name);
                if (it == vars.end())
                    throw StructuralError("unknown variable '" + name + "' in '" + text + "'");
                int e = 1;
                if (lx.consume('^')) e = std::stoi(lx.number());
                expo[static_cast<std::size_t>(it - vars.begin())] += e;
            }
            more = lx.consume('*');
        }
        out.add_term(expo, coeff);
        sign = 1;
        expect_term = false;
    }
    if (expect_term && !out.is_zero())
        throw StructuralError("dangling operator in '" + text + "'");
    return out;
}

// Parse a tower-level polynomial: coefficients are parenthesized ground
// polynomials over `inner_vars`, monomials are over `outer_vars`.
inline MultiPoly<MultiPoly<Rational>> parse_tower(const std::vector<std::string>& outer_vars,
                                                  const std::vector<std::string>& inner_vars,
                                                  const std::string& text) {
    detail::PolyLexer lx(text);
    auto out = MultiPoly<MultiPoly<Rational>>::zero(outer_vars);
    if (text == "0") return out;
    bool first = true;
    while (!lx.eof()) {
        if (!first && !lx.consume('+'))
            throw StructuralError("expected '+' in tower polynomial '" + text + "'");
        first = false;
        MultiPoly<Rational> coeff = parse_ground(inner_vars, lx.group());
        Monomial expo(outer_vars.size(), 0);
        while (lx.consume('*')) {
            std::string name = lx.identifier();
            auto it = std::find(outer_vars.begin(), outer_vars.end(), name);
            if (it == outer_vars.end())
                throw StructuralError("unknown variable '" + name + "' in '" + text + "'");
            int e = 1;
            if (lx.consume('^')) e = std::stoi(lx.number());
            expo[static_cast<std::size_t>(it - outer_vars.begin())] += e;
        }
        out.add_term(expo, coeff);
    }
    return out;
}

}  // namespace cylcert

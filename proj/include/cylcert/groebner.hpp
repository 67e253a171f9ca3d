#pragma once

#include <set>
#include <tuple>
#include <vector>

#include "multipoly.hpp"

namespace cylcert {

struct GroebnerOptions {
    std::size_t pair_cap = 50000;  // S-pairs popped before giving up
};

using QPoly = MultiPoly<Rational>;

// Full normal form of f against an ordered list of divisors.  Deterministic:
// the first divisor whose leading monomial divides the current leading term
// is used.
inline QPoly reduce(const QPoly& f, const std::vector<QPoly>& basis) {
    QPoly h = f;
    QPoly r = QPoly::zero(f.vars());
    while (!h.is_zero()) {
        const Monomial& mh = h.leading_monomial();
        const Rational ch = h.leading_coeff();
        bool reduced = false;
        for (const QPoly& g : basis) {
            if (g.is_zero()) continue;
            const Monomial& mg = g.leading_monomial();
            if (!mono_divides(mg, mh)) continue;
            QPoly t = QPoly::monomial(f.vars(), mono_sub(mh, mg), ch / g.leading_coeff());
            h -= t * g;
            reduced = true;
            break;
        }
        if (!reduced) {
            r.add_term(mh, ch);
            h -= QPoly::monomial(f.vars(), mh, ch);
        }
    }
    return r;
}

class GroebnerBasis {
public:
    explicit GroebnerBasis(std::vector<QPoly> elems) : g_(std::move(elems)) {}

    const std::vector<QPoly>& elements() const { return g_; }

    // The ideal is (1) iff the reduced basis is the single constant 1.
    bool is_unit_ideal() const {
        return g_.size() == 1 && g_[0].is_constant() && !g_[0].is_zero() &&
               g_[0].constant_value() == 1;
    }

    QPoly normal_form(const QPoly& f) const { return reduce(f, g_); }

private:
    std::vector<QPoly> g_;
};

namespace detail {

struct PairLess {
    // Normal selection strategy: smallest lcm first, ties by index.
    bool operator()(const std::tuple<Monomial, std::size_t, std::size_t>& a,
                    const std::tuple<Monomial, std::size_t, std::size_t>& b) const {
        GrevlexLess less;
        if (less(std::get<0>(a), std::get<0>(b))) return true;
        if (less(std::get<0>(b), std::get<0>(a))) return false;
        if (std::get<1>(a) != std::get<1>(b)) return std::get<1>(a) < std::get<1>(b);
        return std::get<2>(a) < std::get<2>(b);
    }
};

}  // namespace detail

// Buchberger's algorithm with the product and chain criteria, returning the
// reduced (autoreduced, monic, deterministically ordered) basis.
inline GroebnerBasis buchberger(const std::vector<QPoly>& gens,
                                const GroebnerOptions& opts = {}) {
    if (gens.empty()) throw DomainError("buchberger: empty generator list");
    const auto& vars = gens.front().vars();
    std::vector<QPoly> g;
    for (const QPoly& f : gens) {
        if (f.vars() != vars)
            throw StructuralError("buchberger: generators over different rings");
        if (!f.is_zero()) g.push_back(f.scaled(1 / f.leading_coeff()));
    }
    if (g.empty()) return GroebnerBasis({});  // the zero ideal

    std::set<std::tuple<Monomial, std::size_t, std::size_t>, detail::PairLess> pending;
    std::set<std::pair<std::size_t, std::size_t>> seen;
    auto push_pairs = [&](std::size_t j) {
        for (std::size_t i = 0; i < j; ++i)
            pending.emplace(mono_lcm(g[i].leading_monomial(), g[j].leading_monomial()), i, j);
    };
    for (std::size_t j = 1; j < g.size(); ++j) push_pairs(j);

    std::size_t processed = 0;
    while (!pending.empty()) {
        if (++processed > opts.pair_cap)
            throw CapacityError("buchberger: S-pair cap of " + std::to_string(opts.pair_cap) +
                                " exceeded");
        auto [lcm, i, j] = *pending.begin();
        pending.erase(pending.begin());
        seen.emplace(i, j);

        const Monomial& mi = g[i].leading_monomial();
        const Monomial& mj = g[j].leading_monomial();
        if (lcm == mono_add(mi, mj)) continue;  // product criterion
        bool chained = false;
        for (std::size_t k = 0; k < g.size() && !chained; ++k) {
            if (k == i || k == j || !mono_divides(g[k].leading_monomial(), lcm)) continue;
            auto p1 = std::minmax(i, k);
            auto p2 = std::minmax(j, k);
            chained = seen.count({p1.first, p1.second}) && seen.count({p2.first, p2.second});
        }
        if (chained) continue;  // chain criterion

        QPoly spoly = QPoly::monomial(vars, mono_sub(lcm, mi), Rational(1)) * g[i] -
                      QPoly::monomial(vars, mono_sub(lcm, mj), Rational(1)) * g[j];
        QPoly r = reduce(spoly, g);
        if (!r.is_zero()) {
            g.push_back(r.scaled(1 / r.leading_coeff()));
            push_pairs(g.size() - 1);
        }
    }

    // Autoreduce to the unique reduced basis.
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < g.size(); ++i) {
            std::vector<QPoly> others;
            others.reserve(g.size() - 1);
            for (std::size_t k = 0; k < g.size(); ++k)
                if (k != i) others.push_back(g[k]);
            if (others.empty()) break;
            QPoly r = reduce(g[i], others);
            if (r.is_zero()) {
                g.erase(g.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
                break;
            }
            r = r.scaled(1 / r.leading_coeff());
            if (r != g[i]) {
                g[i] = r;
                changed = true;
            }
        }
    }
    std::sort(g.begin(), g.end(), [](const QPoly& a, const QPoly& b) {
        return GrevlexLess{}(b.leading_monomial(), a.leading_monomial());
    });
    return GroebnerBasis(std::move(g));
}

}  // namespace cylcert

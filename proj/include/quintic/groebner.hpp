#pragma once

#include <algorithm>
#include <list>
#include <stdexcept>
#include <vector>

#include "mpoly.hpp"

namespace quintic {

// Buchberger's algorithm over a field domain, graded reverse-lexicographic
// order. Tuned for the only question the pipeline asks: does the ideal
// contain 1? (smoothness = chartwise emptiness over the algebraic closure).
//
// Criteria: the product (coprime lcm) criterion plus lcm-divisibility pair
// pruning; pairs are selected by minimal lcm degree (normal strategy).

template <typename D>
MPoly<D> groebner_normal_form(MPoly<D> f, const std::vector<MPoly<D>>& basis) {
    MPoly<D> rem(f.nvars(), f.sample());
    while (!f.is_zero()) {
        const Monomial& lm = f.leading_monomial();
        bool reduced = false;
        for (const auto& g : basis) {
            if (g.is_zero()) continue;
            if (g.leading_monomial().divides(lm)) {
                D c = f.leading_coeff() * g.leading_coeff().inv();
                Monomial q = lm.quotient(g.leading_monomial());
                f -= MPoly<D>::term(f.nvars(), q, c) * g;
                reduced = true;
                break;
            }
        }
        if (!reduced) {
            MPoly<D> t = MPoly<D>::term(f.nvars(), lm, f.leading_coeff());
            rem += t;
            f -= t;
        }
    }
    return rem;
}

template <typename D>
struct GroebnerResult {
    std::vector<MPoly<D>> basis;
    bool contains_one = false;
};

template <typename D>
GroebnerResult<D> buchberger(std::vector<MPoly<D>> gens, std::size_t max_basis = 4096) {
    GroebnerResult<D> out;
    std::vector<MPoly<D>>& G = out.basis;
    for (auto& g : gens) {
        if (g.is_zero()) continue;
        if (g.total_degree() == 0) { out.contains_one = true; return out; }
        G.push_back(g * g.leading_coeff().inv());
    }
    if (G.empty()) return out;

    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        unsigned deg;
    };
    std::vector<Pair> pairs;
    auto push_pairs = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) {
            const Monomial &a = G[i].leading_monomial(), &b = G[k].leading_monomial();
            Monomial l = a.lcm(b);
            // Product criterion: coprime leading monomials reduce to zero.
            if (l.degree() == a.degree() + b.degree()) continue;
            pairs.push_back({i, k, l, l.degree()});
        }
    };
    for (std::size_t k = 1; k < G.size(); ++k) push_pairs(k);

    while (!pairs.empty()) {
        // Normal strategy: minimal lcm degree first.
        std::size_t best = 0;
        for (std::size_t t = 1; t < pairs.size(); ++t)
            if (pairs[t].deg < pairs[best].deg) best = t;
        Pair pr = pairs[best];
        pairs.erase(pairs.begin() + static_cast<std::ptrdiff_t>(best));

        const MPoly<D>&f = G[pr.i], &g = G[pr.j];
        Monomial mf = pr.lcm.quotient(f.leading_monomial());
        Monomial mg = pr.lcm.quotient(g.leading_monomial());
        MPoly<D> s = MPoly<D>::term(f.nvars(), mf, f.leading_coeff().inv()) * f -
                     MPoly<D>::term(g.nvars(), mg, g.leading_coeff().inv()) * g;
        MPoly<D> h = groebner_normal_form(std::move(s), G);
        if (h.is_zero()) continue;
        if (h.total_degree() == 0) { out.contains_one = true; return out; }
        G.push_back(h * h.leading_coeff().inv());
        if (G.size() > max_basis)
            throw std::runtime_error("buchberger: basis size limit exceeded");
        // Prune pairs whose lcm is strictly divisible by the new leading
        // monomial together with both partners' criteria (cheap subset of
        // Gebauer-Moeller).
        const Monomial& hl = G.back().leading_monomial();
        std::vector<Pair> kept;
        kept.reserve(pairs.size());
        for (auto& q : pairs) {
            if (hl.divides(q.lcm) &&
                q.lcm != G[q.i].leading_monomial().lcm(hl) &&
                q.lcm != G[q.j].leading_monomial().lcm(hl))
                continue;
            kept.push_back(std::move(q));
        }
        pairs.swap(kept);
        push_pairs(G.size() - 1);
    }
    return out;
}

// True iff the ideal generated by gens is the whole ring.
template <typename D>
bool ideal_contains_one(std::vector<MPoly<D>> gens) {
    return buchberger(std::move(gens)).contains_one;
}

}  // namespace quintic

#pragma once

// Property-suite helpers shared by the unit tests and the acceptance run:
// triple-tensor expansion for coassociativity, the Hopf law sweep, rewrite
// confluence, pairing nondegeneracy and composition associativity.

#include <map>
#include <random>
#include <tuple>
#include <vector>

#include "rmot/milnor.hpp"

namespace rmot_props {

using namespace rmot;

using TripleKey = std::tuple<Mono, Mono, Mono>;
using Triple = std::map<TripleKey, MRPoly>;

inline void triple_add(Triple& t, const Mono& a, const Mono& b, const Mono& c,
                       const MRPoly& coeff) {
    if (coeff.is_zero()) return;
    auto [it, fresh] = t.try_emplace(TripleKey{a, b, c}, coeff);
    if (!fresh) {
        it->second += coeff;
        if (it->second.is_zero()) t.erase(it);
    }
}

// (coproduct (x) id), coefficients gathered leftmost.
inline Triple expand_left(const BalancedTensor& t) {
    Triple out;
    for (const auto& [k, c] : t.terms())
        for (const auto& [ab, d] : coproduct_mono(k.first).terms())
            triple_add(out, ab.first, ab.second, k.second, c * d);
    return out;
}

// (id (x) coproduct); the inner coefficient crosses the left factor via eta_R.
inline Triple expand_right(const BalancedTensor& t) {
    Triple out;
    for (const auto& [k, c] : t.terms())
        for (const auto& [uv, e] : coproduct_mono(k.second).terms()) {
            DualElement crossed = ds_mul(DualElement(k.first), eta_R(e));
            for (const auto& [m, ck] : crossed.terms())
                triple_add(out, m, uv.first, uv.second, c * ck);
        }
    return out;
}

inline std::vector<Mono> all_monomials(const Ctx& ctx, int max_s) {
    std::vector<Mono> out;
    for (int s = 0; s <= max_s; ++s)
        for (int w = 0; w <= s; ++w)
            for (const Mono& m : monomial_basis(ctx, {s, w})) out.push_back(m);
    return out;
}

// Coassociativity, the counit collapses, double conjugation and the
// conjugate flip law, for every monomial with first grade coordinate <= max_s.
inline bool hopf_laws_hold(const Ctx& ctx, int max_s) {
    for (const Mono& m : all_monomials(ctx, max_s)) {
        DualElement x(m);
        BalancedTensor d = coproduct(x);
        if (expand_left(d) != expand_right(d)) return false;
        if (collapse_left(d) != x || collapse_right(d) != x) return false;
        if (conjugate(conjugate(x)) != x) return false;
        BalancedTensor flipped;
        for (const auto& [k, c] : d.terms())
            flipped += tensor_balance(conjugate_mono(k.second),
                                      conjugate(DualElement(k.first, c)));
        if (coproduct(conjugate(x)) != flipped) return false;
    }
    return true;
}

// conjugate . eta_L == eta_R on a fixed scalar sample.
inline bool conj_unit_law_holds() {
    const MRPoly samples[] = {MRPoly::one(),
                              MRPoly::t(),
                              MRPoly::r(),
                              MRPoly::t(2),
                              MRPoly::t() * MRPoly::r(),
                              MRPoly::t(3) * MRPoly::r(2),
                              MRPoly::t() + MRPoly::r()};
    for (const MRPoly& m : samples)
        if (conjugate(eta_L(m)) != eta_R(m)) return false;
    return true;
}

// Normalization reaches the same normal form under randomized rewrite orders.
inline bool confluence_holds(unsigned seed, int orders_per_input) {
    std::mt19937 gen(seed);
    std::vector<RawMono> inputs;
    for (uint32_t t0 = 0; t0 <= 3; ++t0)
        for (uint32_t t1 = 0; t1 <= 2; ++t1)
            for (uint32_t t2 = 0; t2 <= 2; ++t2)
                for (uint8_t x1 = 0; x1 <= 2; ++x1) {
                    if (t0 + 3 * t1 + 7 * t2 + 2 * x1 > 16) continue;
                    RawMono raw;
                    raw.tau = {t0, t1, t2};
                    raw.xi = {x1};
                    inputs.push_back(raw);
                }
    for (const RawMono& raw : inputs) {
        DualElement want = normalize(raw, MRPoly::one());
        for (int k = 0; k < orders_per_input; ++k) {
            auto pick = [&gen](const std::vector<int>& offending) -> size_t {
                std::uniform_int_distribution<size_t> d(0, offending.size() - 1);
                return d(gen);
            };
            if (normalize(raw, MRPoly::one(), pick) != want) return false;
        }
    }
    return true;
}

// The Kronecker pairing has identity Gram matrix in every grade up to max_s.
inline bool pairing_nondegenerate(const Ctx& ctx, int max_s) {
    for (int s = 0; s <= max_s; ++s)
        for (int w = 0; w <= s; ++w) {
            const auto& basis = monomial_basis(ctx, {s, w});
            for (size_t i = 0; i < basis.size(); ++i)
                for (size_t j = 0; j < basis.size(); ++j) {
                    MRPoly got = pair(DualElement(basis[i]), SteenrodElt(basis[j]));
                    if (got != (i == j ? MRPoly::one() : MRPoly::zero())) return false;
                }
        }
    return true;
}

// Composition is associative on operation-table triples with small total degree.
inline bool product_associative(const Ctx& ctx, int max_total_s) {
    const auto& rows = op_table();
    for (const auto& a : rows)
        for (const auto& b : rows)
            for (const auto& c : rows) {
                if (a.degree.s + b.degree.s + c.degree.s > max_total_s) continue;
                SteenrodElt fa(a.dual_op), fb(b.dual_op), fc(c.dual_op);
                if (product(ctx, product(ctx, fa, fb), fc) !=
                    product(ctx, fa, product(ctx, fb, fc)))
                    return false;
            }
    return true;
}

}  // namespace rmot_props

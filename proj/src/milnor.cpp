#include "rmot/milnor.hpp"

#include <algorithm>

namespace rmot {

void SteenrodElt::add(const Mono& m, const MRPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MRPoly SteenrodElt::coefficient(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? MRPoly::zero() : it->second;
}

SteenrodElt operator+(const SteenrodElt& x, const SteenrodElt& y) {
    SteenrodElt out = x;
    for (const auto& [m, c] : y.terms_) out.add(m, c);
    return out;
}

SteenrodElt scale(const MRPoly& m, const SteenrodElt& f) {
    SteenrodElt out;
    for (const auto& [b, c] : f.terms()) out.add(b, c * m);
    return out;
}

SteenrodElt embed(const MRPoly& m) {
    SteenrodElt out;
    if (!m.is_zero()) out.add(Mono{}, m);
    return out;
}

SteenrodElt sq_gen(int k) {
    switch (k) {
        case 1: return SteenrodElt(tau_mono(0));
        case 2: return SteenrodElt(xi_mono(1));
        case 4: return SteenrodElt(xi_mono(1, 2));
        case 8: return SteenrodElt(xi_mono(1, 4));
    }
    fail(ErrorKind::Input, "no generator Sq" + std::to_string(k) +
                               ": available generators are Sq1, Sq2, Sq4, Sq8");
}

SteenrodElt q_gen(int i) { return SteenrodElt(tau_mono(i)); }

SteenrodElt p_gen(const std::vector<uint8_t>& R) {
    Mono m;
    m.xi = R;
    m.trim();
    return SteenrodElt(m);
}

BiDegree term_op_degree(const Mono& basis, const MRMonomial& coeff) {
    return basis.grade() - coeff.grade();
}

std::optional<BiDegree> op_degree(const SteenrodElt& f) {
    if (f.is_zero()) return BiDegree{0, 0};
    std::optional<BiDegree> g;
    for (const auto& [b, c] : f.terms())
        for (const auto& t : c.terms()) {
            BiDegree d = term_op_degree(b, t);
            if (!g)
                g = d;
            else if (*g != d)
                return std::nullopt;
        }
    return g;
}

MRPoly pair(const DualElement& x, const SteenrodElt& f) {
    MRPoly out;
    for (const auto& [m, c] : x.terms()) {
        MRPoly fc = f.coefficient(m);
        if (!fc.is_zero()) out += c * fc;
    }
    return out;
}

namespace {

// Group terms by operation degree at (monomial, scalar term) granularity.
std::map<BiDegree, SteenrodElt> op_split(const SteenrodElt& f) {
    std::map<BiDegree, SteenrodElt> parts;
    for (const auto& [b, c] : f.terms())
        for (const auto& t : c.terms())
            parts[term_op_degree(b, t)].add(b, MRPoly::t(t.a) * MRPoly::r(t.b));
    return parts;
}

// Basis monomials that can carry a nonzero coefficient in an element of
// operation degree g: grade (s,w) with s <= g.s and s - w >= g.s - g.w,
// the slack being absorbed by a forced scalar t^a r^b.
template <class F>
void for_candidates(const Ctx& ctx, BiDegree g, F&& fn) {
    if (g.s < 0) return;
    for (int s = 0; s <= g.s; ++s) {
        int wmax = std::min(s, s - (g.s - g.w));
        for (int w = 0; w <= wmax; ++w)
            for (const Mono& x : monomial_basis(ctx, {s, w})) fn(x);
    }
}

MRPoly eval_composite_at(const Mono& x, const SteenrodElt& phi, const SteenrodElt& psi) {
    MRPoly val;
    const BalancedTensor& d = coproduct_mono(x);
    for (const auto& [k, c] : d.terms()) {
        MRPoly right = pair(DualElement(k.second), psi);
        if (right.is_zero()) continue;
        DualElement left = ds_mul(DualElement(k.first, c), eta_R(right));
        val += pair(left, phi);
    }
    return val;
}

}  // namespace

SteenrodElt product(const Ctx& ctx, const SteenrodElt& phi, const SteenrodElt& psi) {
    SteenrodElt out;
    if (phi.is_zero() || psi.is_zero()) return out;
    auto pf = op_split(phi);
    auto pp = op_split(psi);
    for (const auto& [gf, f] : pf)
        for (const auto& [gp, p] : pp)
            for_candidates(ctx, gf + gp,
                           [&](const Mono& x) { out.add(x, eval_composite_at(x, f, p)); });
    return out;
}

SteenrodElt right_twist(const Ctx& ctx, const SteenrodElt& phi, const MRPoly& m) {
    SteenrodElt out;
    if (phi.is_zero() || m.is_zero()) return out;
    for (const auto& [gf, f] : op_split(phi))
        for (const auto& t : m.terms()) {
            DualElement em = eta_R(MRPoly::t(t.a) * MRPoly::r(t.b));
            BiDegree g = gf + BiDegree{(int)t.b, (int)(t.a + t.b)};
            for_candidates(ctx, g, [&](const Mono& x) {
                out.add(x, pair(ds_mul(DualElement(x), em), f));
            });
        }
    return out;
}

SteenrodElt scalar_commutator(const Ctx& ctx, const MRPoly& m, const SteenrodElt& phi) {
    return product(ctx, embed(m), phi) + product(ctx, phi, embed(m));
}

SteenrodElt g_expression_to_milnor(const Ctx& ctx, const GExpression& e) {
    SteenrodElt out;
    for (const GTerm& term : e) {
        SteenrodElt w = SteenrodElt::unit();
        for (int k : term.word) w = product(ctx, w, sq_gen(k));
        out += scale(term.coeff, w);
    }
    return out;
}

// -------------------------------------------------------- operation table --

namespace {

Mono cat(std::initializer_list<Mono> ms) {
    Mono out;
    for (const Mono& m : ms) out = mono_concat(out, m);
    return out;
}

DualElement elt(std::initializer_list<std::pair<Mono, MRPoly>> ts) {
    DualElement out;
    for (const auto& [m, c] : ts) out.add(m, c);
    return out;
}

std::vector<OpTableRow> build_op_table() {
    const MRPoly one = MRPoly::one(), t = MRPoly::t(), r = MRPoly::r();
    const Mono T0 = tau_mono(0), T1 = tau_mono(1), T2 = tau_mono(2);
    const Mono X1 = xi_mono(1), X1_2 = xi_mono(1, 2), X1_3 = xi_mono(1, 3),
               X1_4 = xi_mono(1, 4), X2 = xi_mono(2);

    std::vector<OpTableRow> rows;
    auto row = [&](Mono basis, DualElement conj, GExpression g) {
        rows.push_back({basis.grade(), basis, std::move(conj), basis, std::move(g)});
    };

    row(Mono{}, DualElement::unit(), {{one, {}}});
    row(T0, elt({{T0, one}}), {{one, {1}}});
    row(X1, elt({{X1, one}}), {{one, {2}}});
    row(cat({T0, X1}), elt({{cat({T0, X1}), one}}), {{one, {1, 2}}});
    row(T1, elt({{T1, one}, {cat({T0, X1}), one}}), {{one, {1, 2}}, {one, {2, 1}}});
    row(cat({T0, T1}),
        elt({{cat({T0, T1}), one},
             {X1_2, t},
             {cat({T0, X1_2}), r},
             {cat({T1, X1}), r}}),
        {{one, {1, 2, 1}}});
    row(X1_2, elt({{X1_2, one}}), {{one, {4}}});
    row(cat({T0, X1_2}), elt({{cat({T0, X1_2}), one}}), {{one, {1, 4}}});
    row(cat({T1, X1}), elt({{cat({T1, X1}), one}, {cat({T0, X1_2}), one}}),
        {{one, {1, 4}}, {one, {4, 1}}});
    row(cat({T0, T1, X1}),
        elt({{cat({T0, T1, X1}), one},
             {X1_3, t},
             {cat({T0, X1_3}), r},
             {cat({T1, X1_2}), r}}),
        {{one, {1, 4, 1}}});
    row(X1_3, elt({{X1_3, one}}), {{one, {2, 4}}, {t, {1, 4, 1}}});
    row(X2, elt({{X2, one}, {X1_3, one}}), {{one, {2, 4}}, {one, {4, 2}}});
    row(T2,
        elt({{T2, one}, {cat({T1, X1_2}), one}, {cat({T0, X2}), one}, {cat({T0, X1_3}), one}}),
        {{one, {1, 2, 4}}, {one, {1, 4, 2}}, {one, {2, 4, 1}}, {one, {4, 2, 1}}});
    row(cat({T0, X1_3}), elt({{cat({T0, X1_3}), one}}), {{one, {1, 2, 4}}, {r, {1, 4, 1}}});
    row(cat({T0, X2}), elt({{cat({T0, X2}), one}, {cat({T0, X1_3}), one}}),
        {{one, {1, 2, 4}}, {one, {1, 4, 2}}});
    row(cat({T1, X1_2}), elt({{cat({T1, X1_2}), one}, {cat({T0, X1_3}), one}}),
        {{one, {1, 2, 4}}, {r, {1, 4, 1}}, {one, {2, 4, 1}}});
    row(X1_4, elt({{X1_4, one}}), {{one, {8}}});
    row(cat({X1, X2}), elt({{cat({X1, X2}), one}, {X1_4, one}}),
        {{one, {2, 4, 2}}, {t, {1, 2, 4, 1}}});
    return rows;
}

}  // namespace

const std::vector<OpTableRow>& op_table() {
    static const std::vector<OpTableRow> rows = build_op_table();
    return rows;
}

std::vector<OpTableRowCheck> op_table_verify(const Ctx& ctx) {
    std::vector<OpTableRowCheck> out;
    for (const OpTableRow& row : op_table()) {
        OpTableRowCheck check;
        check.conj_ok = conjugate_mono(row.basis) == row.conj;
        check.gword_ok = g_expression_to_milnor(ctx, row.gword) == SteenrodElt(row.dual_op);
        out.push_back(check);
    }
    return out;
}

// --------------------------------------------------------------- antipode --

SteenrodElt chi_sq(const Ctx& ctx, int k) {
    switch (k) {
        case 1: return sq_gen(1);
        case 2: return sq_gen(2) + scale(MRPoly::r(), sq_gen(1));
        case 4: {
            SteenrodElt sq21 = product(ctx, sq_gen(2), sq_gen(1));
            SteenrodElt sq121 = product(ctx, product(ctx, sq_gen(1), sq_gen(2)), sq_gen(1));
            return sq_gen(4) + scale(MRPoly::r(), sq21) + scale(MRPoly::t(), sq121);
        }
    }
    fail(ErrorKind::Input, "antipode is provided on Sq1, Sq2, Sq4 only");
}

ChiReport chi_check(const Ctx& ctx) {
    ChiReport rep;
    const MRPoly t = MRPoly::t(), r = MRPoly::r();
    SteenrodElt sq1 = sq_gen(1), sq2 = sq_gen(2), sq4 = sq_gen(4);
    SteenrodElt sq12 = product(ctx, sq1, sq2);

    rep.comm_sq1_ok = scalar_commutator(ctx, t, sq1) == embed(r);
    rep.comm_sq2_ok = scalar_commutator(ctx, t, sq2) == scale(r * t, sq1);
    rep.comm_sq4_ok = scalar_commutator(ctx, t, sq4) == scale(r * t, sq12);

    // Apply the antipode to [tau, Sq2] = r t Sq1.  The right side becomes
    // Sq1 composed with multiplication by t r; the left side is the
    // commutator of the candidate chi(Sq2) = Sq2 + eps r Sq1.
    SteenrodElt rhs2 = product(ctx, sq1, embed(r * t));
    for (int e = 0; e <= 1; ++e) {
        SteenrodElt cand = e ? sq2 + scale(r, sq1) : sq2;
        if (scalar_commutator(ctx, t, cand) == rhs2) rep.eps = rep.eps == -1 ? e : -2;
    }

    // Apply the antipode to [tau, Sq4] = r t Sq1 Sq2, with candidate
    // chi(Sq4) = Sq4 + lambda r Sq2 Sq1 + eps2 t Sq1 Sq2 Sq1 + delta r^2 Sq2.
    SteenrodElt chi2 = sq2 + scale(r, sq1);
    SteenrodElt rhs4 = product(ctx, product(ctx, chi2, sq1), embed(r * t));
    SteenrodElt sq21 = product(ctx, sq2, sq1);
    SteenrodElt sq121 = product(ctx, sq12, sq1);
    int found = 0;
    for (int d = 0; d <= 1; ++d)
        for (int e = 0; e <= 1; ++e)
            for (int l = 0; l <= 1; ++l) {
                SteenrodElt cand = sq4;
                if (l) cand += scale(r, sq21);
                if (e) cand += scale(t, sq121);
                if (d) cand += scale(r * r, sq2);
                if (scalar_commutator(ctx, t, cand) == rhs4) {
                    ++found;
                    rep.delta = d;
                    rep.eps2 = e;
                    rep.lambda = l;
                }
            }
    if (found != 1) rep.delta = rep.eps2 = rep.lambda = -2;

    rep.chi_ok = rep.eps == 1 && rep.delta == 0 && rep.eps2 == 1 && rep.lambda == 1 &&
                 chi_sq(ctx, 2) == chi2 &&
                 chi_sq(ctx, 4) == sq4 + scale(r, sq21) + scale(t, sq121);
    return rep;
}

}  // namespace rmot

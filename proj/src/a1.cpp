#include "rmot/a1.hpp"

#include <sstream>

namespace rmot {

namespace {

enum : int { X00, X10, X21, X31, Y31, Y41, Y52, Y62 };

FreeModule catalog_skeleton() {
    FreeModule m;
    m.add_basis("x00", {0, 0});
    m.add_basis("x10", {1, 0});
    m.add_basis("x21", {2, 1});
    m.add_basis("x31", {3, 1});
    m.add_basis("y31", {3, 1});
    m.add_basis("y41", {4, 1});
    m.add_basis("y52", {5, 2});
    m.add_basis("y62", {6, 2});
    return m;
}

// Scalars and monomials used by the coaction table.
struct Pal {
    MRPoly one = MRPoly::one();
    MRPoly t = MRPoly::t();
    MRPoly r = MRPoly::r();
    MRPoly r2 = MRPoly::r() * MRPoly::r();

    Mono u{};
    Mono T0 = tau_mono(0);
    Mono T1 = tau_mono(1);
    Mono T2 = tau_mono(2);
    Mono X1 = xi_mono(1);
    Mono X1_2 = xi_mono(1, 2);
    Mono X1_3 = xi_mono(1, 3);
    Mono X1_4 = xi_mono(1, 4);
    Mono X2 = xi_mono(2);
    Mono X1X2 = mono_concat(xi_mono(1), xi_mono(2));
    Mono T0X1 = mono_concat(tau_mono(0), xi_mono(1));
    Mono T0T1 = mono_concat(tau_mono(0), tau_mono(1));
    Mono T1X1 = mono_concat(tau_mono(1), xi_mono(1));
    Mono T0X1_2 = mono_concat(tau_mono(0), xi_mono(1, 2));
    Mono T1X1_2 = mono_concat(tau_mono(1), xi_mono(1, 2));
    Mono T0X1_3 = mono_concat(tau_mono(0), xi_mono(1, 3));
    Mono T0X2 = mono_concat(tau_mono(0), xi_mono(2));
    Mono T0T1X1 = mono_concat(mono_concat(tau_mono(0), tau_mono(1)), xi_mono(1));
};

}  // namespace

uint8_t StructureVector::bits() const {
    return static_cast<uint8_t>(a03 | b03 << 1 | b14 << 2 | b06 << 3 | b25 << 4 |
                                b26 << 5 | g36 << 6);
}

StructureVector StructureVector::from_bits(uint8_t b) {
    StructureVector v;
    v.a03 = b & 1;
    v.b03 = b >> 1 & 1;
    v.b14 = b >> 2 & 1;
    v.b06 = b >> 3 & 1;
    v.b25 = b >> 4 & 1;
    v.b26 = b >> 5 & 1;
    v.g36 = b >> 6 & 1;
    return v;
}

std::string StructureVector::label() const {
    std::ostringstream os;
    os << '(' << a03 << ',' << b03 << ',' << b14 << ',' << b06 << ',' << b25 << ','
       << b26 << ',' << g36 << ')';
    return os.str();
}

Coaction a1_coaction(const Ctx&, const StructureVector& v) {
    const Pal p;
    const bool j = v.j24();
    Coaction c;
    c.co.resize(8);
    auto put = [&](int src, int tgt, bool cond, const Mono& m, const MRPoly& s) {
        if (cond) c.co[src][tgt] += DualElement(m, s);
    };

    put(Y62, Y62, true, p.u, p.one);

    put(Y52, Y52, true, p.u, p.one);
    put(Y52, Y62, true, p.T0, p.one);

    put(Y41, Y41, true, p.u, p.one);
    put(Y41, Y62, true, p.X1, p.one);

    put(Y31, Y31, true, p.u, p.one);
    put(Y31, Y41, true, p.T0, p.one);
    put(Y31, Y62, true, p.T1, p.one);
    put(Y31, Y62, true, p.T0X1, p.one);
    put(Y31, Y62, v.g36, p.X1_2, p.r);

    put(X31, X31, true, p.u, p.one);
    put(X31, Y52, true, p.X1, p.one);
    put(X31, Y62, true, p.T1, p.one);
    put(X31, Y62, v.b25 != v.b26, p.X1_2, p.r);

    put(X21, X21, true, p.u, p.one);
    put(X21, X31, true, p.T0, p.one);
    put(X21, Y41, true, p.X1, p.t);
    put(X21, Y41, true, p.T1, p.r);
    put(X21, Y41, true, p.T0X1, p.r);
    put(X21, Y41, j, p.X1_2, p.r2);
    put(X21, Y52, true, p.T1, p.one);
    put(X21, Y52, true, p.T0X1, p.one);
    put(X21, Y52, v.b25, p.X1_2, p.r);
    put(X21, Y62, true, p.T0T1, p.one);
    put(X21, Y62, !v.b26, p.X1_2, p.t);
    put(X21, Y62, !v.b25, p.T0X1_2, p.r);
    put(X21, Y62, true, p.T1X1, p.r);
    put(X21, Y62, j, p.X2, p.r2);

    put(X10, X10, true, p.u, p.one);
    put(X10, Y31, true, p.X1, p.one);
    put(X10, Y41, true, p.T1, p.one);
    put(X10, Y41, v.b14, p.X1_2, p.r);
    put(X10, Y52, true, p.X1_2, p.one);
    put(X10, Y62, true, p.T1X1, p.one);
    put(X10, Y62, v.g36, p.X1_3, p.r);
    put(X10, Y62, v.b14 != v.g36, p.X2, p.r);

    put(X00, X00, true, p.u, p.one);
    put(X00, X10, true, p.T0, p.one);
    put(X00, X21, true, p.X1, p.one);
    put(X00, X31, true, p.T1, p.one);
    put(X00, X31, v.a03, p.X1_2, p.r);
    put(X00, Y31, true, p.T1, p.one);
    put(X00, Y31, true, p.T0X1, p.one);
    put(X00, Y31, v.b03, p.X1_2, p.r);
    put(X00, Y41, true, p.T0T1, p.one);
    put(X00, Y41, v.b03 != v.b14, p.X1_2, p.t);
    put(X00, Y41, v.b03, p.T0X1_2, p.r);
    put(X00, Y41, j, p.X2, p.r2);
    put(X00, Y41, j, p.X1_3, p.r2);
    put(X00, Y52, true, p.T1X1, p.one);
    put(X00, Y52, true, p.T0X1_2, p.one);
    put(X00, Y52, v.b25, p.X1_3, p.r);
    put(X00, Y52, v.a03 != v.b25, p.X2, p.r);
    put(X00, Y62, true, p.T0T1X1, p.one);
    put(X00, Y62, v.b26, p.X1_3, p.t);
    put(X00, Y62, v.b26 != v.g36, p.T0X1_3, p.r);
    put(X00, Y62, v.b25 != (v.b26 != v.g36), p.T1X1_2, p.r);
    put(X00, Y62, !(v.b03 != (v.b14 != v.b26)), p.X2, p.t);
    put(X00, Y62, !(v.b03 != (v.b26 != v.g36)), p.T0X2, p.r);
    put(X00, Y62, !(v.a03 != (v.b03 != (v.b25 != (v.b26 != v.g36)))), p.T2, p.r);
    put(X00, Y62, j, p.X1X2, p.r2);
    put(X00, Y62, j != v.b06, p.X1_4, p.r2);

    for (auto& row : c.co) {
        for (auto it = row.begin(); it != row.end();) {
            it = it->second.is_zero() ? row.erase(it) : std::next(it);
        }
    }
    return c;
}

namespace {

// Action table stated independently of the coaction, used as a cross-check.
FreeModule expected_catalog_action(const StructureVector& v) {
    const MRPoly one = MRPoly::one(), t = MRPoly::t(), r = MRPoly::r(), r2 = r * r;
    const bool j = v.j24();
    FreeModule m = catalog_skeleton();
    auto put = [&](int gen, int src, int tgt, bool cond, const MRPoly& s) {
        if (!cond) return;
        ModElt e;
        if (const ModElt* cur = m.action_on(gen, src)) e = *cur;
        e[tgt] = e.count(tgt) ? e[tgt] + s : s;
        m.set_action(gen, src, e);
    };

    put(0, X00, X10, true, one);
    put(0, X21, X31, true, one);
    put(0, Y31, Y41, true, one);
    put(0, Y52, Y62, true, one);

    put(1, X00, X21, true, one);
    put(1, X10, Y31, true, one);
    put(1, X21, Y41, true, t);
    put(1, X31, Y52, true, one);
    put(1, Y41, Y62, true, one);

    put(2, X00, X31, v.a03, r);
    put(2, X00, Y31, v.b03, r);
    put(2, X00, Y41, !(v.b03 != v.b14), t);
    put(2, X10, Y52, true, one);
    put(2, X10, Y41, v.b14, r);
    put(2, X21, Y62, v.b26, t);
    put(2, X21, Y52, v.b25, r);
    put(2, X21, Y41, j, r2);
    put(2, X31, Y62, v.b25 != v.b26, r);
    put(2, Y31, Y62, v.g36, r);

    put(3, X00, Y62, v.b06, r2);

    return m;
}

// Dual action table in the h-named dual basis, also stated independently.
FreeModule expected_dual_action(const StructureVector& v) {
    const MRPoly one = MRPoly::one(), t = MRPoly::t(), r = MRPoly::r(), r2 = r * r;
    const bool j = v.j24();
    FreeModule m;
    m.add_basis("xh00", {6, 2});
    m.add_basis("xh10", {5, 2});
    m.add_basis("xh21", {4, 1});
    m.add_basis("xh31", {3, 1});
    m.add_basis("yh31", {3, 1});
    m.add_basis("yh41", {2, 1});
    m.add_basis("yh52", {1, 0});
    m.add_basis("yh62", {0, 0});
    const int xh00 = 0, xh10 = 1, xh21 = 2, xh31 = 3, yh31 = 4, yh41 = 5, yh52 = 6,
              yh62 = 7;
    auto put = [&](int gen, int src, int tgt, bool cond, const MRPoly& s) {
        if (!cond) return;
        ModElt e;
        if (const ModElt* cur = m.action_on(gen, src)) e = *cur;
        e[tgt] = e.count(tgt) ? e[tgt] + s : s;
        m.set_action(gen, src, e);
    };

    put(0, yh62, yh52, true, one);
    put(0, yh41, yh31, true, one);
    put(0, xh31, xh21, true, one);
    put(0, xh10, xh00, true, one);

    put(1, yh62, yh41, true, one);
    put(1, yh52, xh31, true, one);
    put(1, yh31, xh10, true, one);
    put(1, xh21, xh00, true, one);
    put(1, yh41, xh21, true, t);

    put(2, yh62, xh31, v.b25 != v.b26, r);
    put(2, yh62, xh21, !v.b26, t);
    put(2, yh62, yh31, v.g36, r);
    put(2, yh52, xh10, true, one);
    put(2, yh52, xh21, v.b25, r);
    put(2, yh41, xh00, v.b03 != v.b14, t);
    put(2, yh41, xh10, v.b14, r);
    put(2, yh41, xh21, j, r2);
    put(2, yh31, xh00, v.b03, r);
    put(2, xh31, xh00, v.a03, r);

    put(3, yh62, xh00, j != v.b06, r2);

    return m;
}

}  // namespace

FreeModule build_a1(const Ctx& ctx, const StructureVector& v) {
    FreeModule skel = catalog_skeleton();
    FreeModule m = action_from_comodule(ctx, skel, a1_coaction(ctx, v));
    if (!(m == expected_catalog_action(v))) {
        fail(ErrorKind::Internal,
             "catalog coaction and action tables disagree at " + v.label());
    }
    return m;
}

StructureVector delta_dual(const StructureVector& v) {
    StructureVector d;
    d.a03 = v.g36;
    d.b03 = v.b25 != v.b26;
    d.b14 = v.b25;
    d.b06 = v.j24() != v.b06;
    d.b25 = v.b14;
    d.b26 = v.b03 != v.b14;
    d.g36 = v.a03;
    return d;
}

bool is_self_dual(const StructureVector& v) {
    return v.a03 == v.g36 && v.b03 == (v.b25 != v.b26) && v.b14 == v.b25;
}

FreeModule dual_a1_raw(const Ctx& ctx, const StructureVector& v) {
    return suspend(dualize(ctx, build_a1(ctx, v)), {6, 2});
}

bool dual_matches_stated(const Ctx& ctx, const StructureVector& v) {
    return dual_a1_raw(ctx, v) == expected_dual_action(v);
}

FreeModule dual_a1(const Ctx& ctx, const StructureVector& v) {
    FreeModule raw = dual_a1_raw(ctx, v);
    FreeModule out = catalog_skeleton();
    auto perm = [](int i) { return 7 - i; };
    for (int i = 0; i < 8; ++i) {
        if (raw.basis[i].coh != out.basis[perm(i)].coh) {
            fail(ErrorKind::Internal, "dual degrees do not line up with the catalog");
        }
    }
    for (int gen = 0; gen < kGenCount; ++gen) {
        for (const auto& [i, val] : raw.action[gen]) {
            ModElt moved;
            for (const auto& [tgt, s] : val) moved[perm(tgt)] = s;
            out.set_action(gen, perm(i), std::move(moved));
        }
    }
    return out;
}

const char* realization_name(Realization r) {
    return r == Realization::Y21 ? "Y(2,1)" : "Y(h,1)";
}

std::optional<Realization> classify_realization(const StructureVector& v) {
    const bool s1 = v.b25 != (v.b26 != v.g36);
    const bool s2 = v.a03 != v.b03;
    if (s1 != s2) return std::nullopt;
    return s1 ? Realization::Y21 : Realization::Yh1;
}

std::vector<CensusRow> census_rows(const Ctx&) {
    std::vector<CensusRow> rows;
    rows.reserve(128);
    for (int b = 0; b < 128; ++b) {
        StructureVector v = StructureVector::from_bits(static_cast<uint8_t>(b));
        rows.push_back({v, is_self_dual(v), v.j24(), classify_realization(v)});
    }
    return rows;
}

FullVerifyResult census_full_verify(const Ctx& ctx, bool exhaustive_iso) {
    FullVerifyResult res;
    std::vector<FreeModule> modules;
    modules.reserve(128);
    for (int b = 0; b < 128; ++b) {
        StructureVector v = StructureVector::from_bits(static_cast<uint8_t>(b));
        ++res.checked;
        std::string bad;
        try {
            FreeModule m = build_a1(ctx, v);
            modules.push_back(m);
            if (!verify_module(ctx, m).all()) {
                bad = "module laws";
            } else if (!(comodule_from_action(ctx, m) == a1_coaction(ctx, v))) {
                bad = "coaction round-trip";
            } else if (!dual_matches_stated(ctx, v)) {
                bad = "stated dual action";
            } else if (!(dual_a1(ctx, v) == build_a1(ctx, delta_dual(v)))) {
                bad = "dual catalog member";
            } else {
                auto self = iso_test(ctx, m, m);
                if (!self || !self->identity) bad = "self-isomorphism";
            }
        } catch (const Error& e) {
            bad = e.what();
        }
        if (bad.empty()) {
            ++res.passed;
        } else {
            res.failures.push_back(v.label() + ": " + bad);
        }
    }
    if (exhaustive_iso && res.failures.empty()) {
        for (int a = 0; a < 128; ++a) {
            for (int b = 0; b < 128; ++b) {
                if (a == b) continue;
                if (iso_test(ctx, modules[a], modules[b])) {
                    res.failures.push_back(
                        StructureVector::from_bits(static_cast<uint8_t>(a)).label() +
                        ": isomorphic to " +
                        StructureVector::from_bits(static_cast<uint8_t>(b)).label());
                }
            }
        }
        if (!res.failures.empty()) res.passed = 0;
    }
    return res;
}

}  // namespace rmot

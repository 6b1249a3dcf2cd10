#include "rmot/fmodule.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <set>

namespace rmot {

ModElt mod_add(const ModElt& x, const ModElt& y) {
    ModElt out = x;
    for (const auto& [i, c] : y) {
        auto [it, inserted] = out.emplace(i, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) out.erase(it);
        }
    }
    return out;
}

ModElt mod_scale(const MRPoly& m, const ModElt& x) {
    ModElt out;
    for (const auto& [i, c] : x) {
        MRPoly p = c * m;
        if (!p.is_zero()) out.emplace(i, std::move(p));
    }
    return out;
}

int gen_letter(int k) { return 1 << k; }

const char* gen_name(int k) {
    static const char* names[kGenCount] = {"Sq1", "Sq2", "Sq4", "Sq8"};
    return names[k];
}

BiDegree gen_degree(int k) { return {1 << k, (1 << k) / 2}; }

int gen_index(const std::string& name) {
    for (int k = 0; k < kGenCount; ++k)
        if (name == gen_name(k)) return k;
    return -1;
}

BiDegree coh_degree(const MRMonomial& coeff) {
    return {(int)coeff.b, (int)(coeff.a + coeff.b)};
}

// -------------------------------------------------------------- FreeModule --

int FreeModule::find(const std::string& name) const {
    for (size_t i = 0; i < basis.size(); ++i)
        if (basis[i].name == name) return (int)i;
    return -1;
}

int FreeModule::require(const std::string& name) const {
    int i = find(name);
    if (i < 0) fail(ErrorKind::Input, "unknown basis element '" + name + "'");
    return i;
}

int FreeModule::add_basis(const std::string& name, BiDegree coh) {
    basis.push_back({name, coh});
    return (int)basis.size() - 1;
}

void FreeModule::set_action(int gen, int i, ModElt v) {
    for (auto it = v.begin(); it != v.end();)
        it = it->second.is_zero() ? v.erase(it) : std::next(it);
    if (v.empty())
        action[gen].erase(i);
    else
        action[gen][i] = std::move(v);
}

const ModElt* FreeModule::action_on(int gen, int i) const {
    auto it = action[gen].find(i);
    return it == action[gen].end() ? nullptr : &it->second;
}

// -------------------------------------------------------------- validation --

void validate(const Ctx& ctx, const FreeModule& m) {
    std::set<std::string> seen;
    for (const auto& b : m.basis) {
        if (b.name.empty()) fail(ErrorKind::Input, "module basis element with empty name");
        if (!seen.insert(b.name).second)
            fail(ErrorKind::Input, "duplicate basis element '" + b.name + "'");
    }
    int n = (int)m.basis.size();
    for (int k = 0; k < kGenCount; ++k)
        for (const auto& [i, v] : m.action[k]) {
            if (i < 0 || i >= n) fail(ErrorKind::Internal, "action entry out of range");
            for (const auto& [j, coeff] : v) {
                if (j < 0 || j >= n) fail(ErrorKind::Internal, "action target out of range");
                BiDegree want = m.basis[i].coh + gen_degree(k);
                for (const auto& t : coeff.terms())
                    if (m.basis[j].coh + coh_degree(t) != want)
                        fail(ErrorKind::Input,
                             std::string(gen_name(k)) + " " + m.basis[i].name +
                                 " has a term on " + m.basis[j].name +
                                 " of the wrong degree");
            }
        }
    for (int i = 0; i < n; ++i) {
        ModElt once = apply_generator(ctx, m, 0, {{i, MRPoly::one()}});
        if (!apply_generator(ctx, m, 0, once).empty())
            fail(ErrorKind::Input,
                 "Sq1 applied twice is nonzero on " + m.basis[i].name);
    }
}

// ------------------------------------------------------- applying operations --

namespace {

const OpTableRow* table_row(const Mono& c) {
    static std::map<Mono, const OpTableRow*> rows = [] {
        std::map<Mono, const OpTableRow*> out;
        for (const OpTableRow& r : op_table()) out.emplace(r.basis, &r);
        return out;
    }();
    auto it = rows.find(c);
    return it == rows.end() ? nullptr : it->second;
}

int letter_index(int letter) {
    switch (letter) {
        case 1: return 0;
        case 2: return 1;
        case 4: return 2;
        case 8: return 3;
    }
    fail(ErrorKind::Internal, "bad generator letter");
}

ModElt apply_gen_impl(const Ctx& ctx, const FreeModule& m, int gen, const ModElt& v,
                      int depth);

// rho(c) applied to the basis element i.  Zero early when no basis element
// sits at a degree the result could reach.
ModElt apply_table_op(const Ctx& ctx, const FreeModule& m, const Mono& c, int i,
                      int depth) {
    if (c.is_unit()) return {{i, MRPoly::one()}};
    if (depth > 64) fail(ErrorKind::Internal, "operation application recursed too deep");
    BiDegree target = m.basis[i].coh + c.grade();
    bool reachable = false;
    for (const auto& b : m.basis) {
        BiDegree e = target - b.coh;
        if (e.s >= 0 && e.w >= e.s) {
            reachable = true;
            break;
        }
    }
    if (!reachable) return {};
    const OpTableRow* row = table_row(c);
    if (!row)
        fail(ErrorKind::Input, "operation of degree " + to_string(c.grade()) + " on '" +
                                   m.basis[i].name + "' is outside the supported table");
    ModElt out;
    for (const GTerm& term : row->gword) {
        ModElt w{{i, MRPoly::one()}};
        for (auto it = term.word.rbegin(); it != term.word.rend() && !w.empty(); ++it)
            w = apply_gen_impl(ctx, m, letter_index(*it), w, depth + 1);
        out = mod_add(out, mod_scale(term.coeff, w));
    }
    return out;
}

ModElt apply_gen_impl(const Ctx& ctx, const FreeModule& m, int gen, const ModElt& v,
                      int depth) {
    ModElt out;
    for (const auto& [i, coeff] : v) {
        if (coeff.is_one()) {
            if (const ModElt* a = m.action_on(gen, i)) out = mod_add(out, *a);
        } else {
            SteenrodElt f = product(ctx, sq_gen(gen_letter(gen)), embed(coeff));
            for (const auto& [c, n_c] : f.terms())
                out = mod_add(out, mod_scale(n_c, apply_table_op(ctx, m, c, i, depth)));
        }
    }
    return out;
}

}  // namespace

ModElt apply_generator(const Ctx& ctx, const FreeModule& m, int gen, const ModElt& v) {
    return apply_gen_impl(ctx, m, gen, v, 0);
}

ModElt apply_op(const Ctx& ctx, const FreeModule& m, const SteenrodElt& f, const ModElt& v) {
    ModElt out;
    for (const auto& [i, coeff] : v) {
        SteenrodElt g = coeff.is_one() ? f : product(ctx, f, embed(coeff));
        for (const auto& [c, n_c] : g.terms())
            out = mod_add(out, mod_scale(n_c, apply_table_op(ctx, m, c, i, 0)));
    }
    return out;
}

// ---------------------------------------------------------------- coaction --

Coaction comodule_from_action(const Ctx& ctx, const FreeModule& m) {
    int n = (int)m.basis.size();
    Coaction out;
    out.co.resize(n);
    for (int i = 0; i < n; ++i) {
        std::set<BiDegree> grades;
        for (int j = 0; j < n; ++j) {
            BiDegree dc = m.basis[j].coh - m.basis[i].coh;
            for (int bp = 0; dc.s + bp <= ctx.degree_bound; ++bp) {
                int s = dc.s + bp;
                if (s < 0) continue;
                for (int ap = 0;; ++ap) {
                    int w = dc.w + ap + bp;
                    if (w < 0) continue;
                    if (2 * w > s) break;
                    grades.insert({s, w});
                }
            }
        }
        for (BiDegree g : grades)
            for (const Mono& b : monomial_basis(ctx, g)) {
                ModElt v = apply_table_op(ctx, m, b, i, 0);
                if (v.empty()) continue;
                DualElement cb = conjugate_mono(b);
                for (const auto& [j, coeff] : v) {
                    DualElement term = ds_mul(cb, eta_R(coeff));
                    auto [it, inserted] = out.co[i].emplace(j, term);
                    if (!inserted) it->second += term;
                }
            }
        for (auto it = out.co[i].begin(); it != out.co[i].end();)
            it = it->second.is_zero() ? out.co[i].erase(it) : std::next(it);
    }
    return out;
}

ModElt apply_via_coaction(const Ctx& ctx, const FreeModule& m, const Coaction& c,
                          const SteenrodElt& f, const ModElt& v) {
    ModElt out;
    for (const auto& [i, coeff] : v) {
        SteenrodElt g = coeff.is_one() ? f : product(ctx, f, embed(coeff));
        for (const auto& [j, a] : c.co[i]) {
            MRPoly val = pair(conjugate(a), g);
            if (val.is_zero()) continue;
            out = mod_add(out, {{j, val}});
        }
    }
    return out;
}

FreeModule action_from_comodule(const Ctx& ctx, const FreeModule& m, const Coaction& c) {
    FreeModule out;
    out.basis = m.basis;
    for (int k = 0; k < kGenCount; ++k) {
        SteenrodElt g = sq_gen(gen_letter(k));
        for (int i = 0; i < (int)m.basis.size(); ++i)
            out.set_action(k, i, apply_via_coaction(ctx, m, c, g, {{i, MRPoly::one()}}));
    }
    return out;
}

// -------------------------------------------------------------------- dual --

std::string dual_name(const std::string& name) {
    if (name.size() >= 2 && name[1] == 'h') {
        std::string out = name;
        out.erase(1, 1);
        return out;
    }
    std::string out = name;
    out.insert(1, "h");
    return out;
}

FreeModule dualize(const Ctx& ctx, const FreeModule& m) {
    Coaction c = comodule_from_action(ctx, m);
    int n = (int)m.basis.size();
    FreeModule d;
    for (const auto& b : m.basis) d.add_basis(dual_name(b.name), -b.coh);
    for (int k = 0; k < kGenCount; ++k) {
        SteenrodElt g = sq_gen(gen_letter(k));
        for (int x = 0; x < n; ++x) {
            ModElt v;
            for (int src = 0; src < n; ++src) {
                auto it = c.co[src].find(x);
                if (it == c.co[src].end()) continue;
                MRPoly val = pair(it->second, g);
                if (!val.is_zero()) v = mod_add(v, {{src, val}});
            }
            d.set_action(k, x, std::move(v));
        }
    }
    return d;
}

FreeModule suspend(const FreeModule& m, BiDegree d) {
    FreeModule out = m;
    for (auto& b : out.basis) b.coh = b.coh + d;
    return out;
}

// --------------------------------------------------------------- iso search --

namespace {

// k x k invertible matrices over F2, rows as bitmasks.
const std::vector<std::vector<uint8_t>>& invertible_mats(int k) {
    static std::map<int, std::vector<std::vector<uint8_t>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lk(mu);
    auto it = cache.find(k);
    if (it != cache.end()) return it->second;
    std::vector<std::vector<uint8_t>> mats;
    int cells = k * k;
    for (uint32_t code = 0; code < (1u << cells); ++code) {
        std::vector<uint8_t> rows(k, 0);
        for (int r = 0; r < k; ++r)
            for (int c = 0; c < k; ++c)
                if (code & (1u << (r * k + c))) rows[r] |= (uint8_t)(1 << c);
        std::vector<uint8_t> work = rows;
        bool inv = true;
        for (int c = 0; c < k && inv; ++c) {
            int pivot = -1;
            for (int r = c; r < k; ++r)
                if (work[r] & (1 << c)) {
                    pivot = r;
                    break;
                }
            if (pivot < 0) {
                inv = false;
                break;
            }
            std::swap(work[c], work[pivot]);
            for (int r = 0; r < k; ++r)
                if (r != c && (work[r] & (1 << c))) work[r] ^= work[c];
        }
        if (inv) mats.push_back(std::move(rows));
    }
    return cache.emplace(k, std::move(mats)).first->second;
}

bool compatible(const Ctx& ctx, const FreeModule& m, const FreeModule& n,
                const std::vector<ModElt>& images) {
    for (int k = 0; k < kGenCount; ++k)
        for (int i = 0; i < (int)m.basis.size(); ++i) {
            ModElt lhs;
            if (const ModElt* a = m.action_on(k, i))
                for (const auto& [j, c] : *a) lhs = mod_add(lhs, mod_scale(c, images[j]));
            ModElt rhs = apply_gen_impl(ctx, n, k, images[i], 0);
            if (lhs != rhs) return false;
        }
    return true;
}

}  // namespace

std::optional<IsoWitness> iso_test(const Ctx& ctx, const FreeModule& m, const FreeModule& n) {
    int count = (int)m.basis.size();
    if ((int)n.basis.size() != count) return std::nullopt;

    std::map<BiDegree, std::vector<int>> gm, gn;
    for (int i = 0; i < count; ++i) gm[m.basis[i].coh].push_back(i);
    for (int j = 0; j < count; ++j) gn[n.basis[j].coh].push_back(j);
    {
        auto it = gm.begin();
        auto jt = gn.begin();
        for (; it != gm.end() && jt != gn.end(); ++it, ++jt)
            if (it->first != jt->first || it->second.size() != jt->second.size())
                return std::nullopt;
        if (it != gm.end() || jt != gn.end()) return std::nullopt;
    }

    // identity candidate first
    bool aligned = true;
    for (int i = 0; i < count; ++i)
        if (m.basis[i].coh != n.basis[i].coh) aligned = false;
    if (aligned) {
        std::vector<ModElt> images(count);
        for (int i = 0; i < count; ++i) images[i] = {{i, MRPoly::one()}};
        if (compatible(ctx, m, n, images)) {
            IsoWitness w;
            w.identity = true;
            w.images = std::move(images);
            return w;
        }
    }

    struct Block {
        std::vector<int> mi, ni;
        const std::vector<std::vector<uint8_t>>* mats;
    };
    std::vector<Block> blocks;
    double space = 1;
    for (const auto& [g, mi] : gm) {
        Block b;
        b.mi = mi;
        b.ni = gn.at(g);
        int k = (int)mi.size();
        if (k > 4)
            fail(ErrorKind::Input, "isomorphism search limited to blocks of rank at most 4");
        b.mats = &invertible_mats(k);
        space *= (double)b.mats->size();
        blocks.push_back(std::move(b));
    }

    struct Cross {
        int i, j;
        MRPoly coeff;
    };
    std::vector<Cross> crosses;
    for (int i = 0; i < count; ++i)
        for (int j = 0; j < count; ++j) {
            BiDegree e = m.basis[i].coh - n.basis[j].coh;
            if (e == BiDegree{0, 0}) continue;
            int b = e.s, a = e.w - e.s;
            if (b < 0 || a < 0) continue;
            crosses.push_back({i, j, MRPoly::t((uint32_t)a) * MRPoly::r((uint32_t)b)});
        }
    space *= std::pow(2.0, (double)crosses.size());
    if (space > (double)(1 << 20))
        fail(ErrorKind::Input, "isomorphism search space too large");

    std::vector<size_t> pick(blocks.size(), 0);
    uint32_t crossbits_end = 1u << crosses.size();
    while (true) {
        for (uint32_t bits = 0; bits < crossbits_end; ++bits) {
            std::vector<ModElt> images(count);
            for (const Block& b : blocks) {
                const auto& mat = (*b.mats)[pick[&b - blocks.data()]];
                int k = (int)b.mi.size();
                for (int r = 0; r < k; ++r)
                    for (int c = 0; c < k; ++c)
                        if (mat[r] & (1 << c))
                            images[b.mi[r]] = mod_add(images[b.mi[r]], {{b.ni[c], MRPoly::one()}});
            }
            for (size_t ci = 0; ci < crosses.size(); ++ci)
                if (bits & (1u << ci))
                    images[crosses[ci].i] =
                        mod_add(images[crosses[ci].i], {{crosses[ci].j, crosses[ci].coeff}});
            if (compatible(ctx, m, n, images)) {
                IsoWitness w;
                w.identity = false;
                w.images = std::move(images);
                return w;
            }
        }
        size_t lvl = 0;
        while (lvl < blocks.size() && ++pick[lvl] == blocks[lvl].mats->size()) {
            pick[lvl] = 0;
            ++lvl;
        }
        if (lvl == blocks.size()) break;
    }
    return std::nullopt;
}

// ----------------------------------------------------------- verification --

VerifyReport verify_module(const Ctx& ctx, const FreeModule& m) {
    VerifyReport rep;
    int n = (int)m.basis.size();

    rep.graded_ok = true;
    for (int k = 0; k < kGenCount && rep.graded_ok; ++k)
        for (const auto& [i, v] : m.action[k]) {
            BiDegree want = m.basis[i].coh + gen_degree(k);
            for (const auto& [j, coeff] : v)
                for (const auto& t : coeff.terms())
                    if (m.basis[j].coh + coh_degree(t) != want) rep.graded_ok = false;
        }

    rep.sq1sq1_ok = true;
    for (int i = 0; i < n; ++i) {
        ModElt once = apply_generator(ctx, m, 0, {{i, MRPoly::one()}});
        if (!apply_generator(ctx, m, 0, once).empty()) rep.sq1sq1_ok = false;
    }

    static std::map<std::pair<int, std::pair<int, int>>, SteenrodElt> pair_cache;
    static std::mutex pair_mu;
    rep.relations_ok = true;
    for (int a = 0; a < kGenCount; ++a)
        for (int b = 0; b < kGenCount; ++b) {
            SteenrodElt composite;
            {
                std::lock_guard<std::mutex> lk(pair_mu);
                auto key = std::make_pair(ctx.degree_bound, std::make_pair(a, b));
                auto it = pair_cache.find(key);
                if (it == pair_cache.end())
                    it = pair_cache
                             .emplace(key, product(ctx, sq_gen(gen_letter(a)),
                                                   sq_gen(gen_letter(b))))
                             .first;
                composite = it->second;
            }
            for (int i = 0; i < n; ++i) {
                ModElt one{{i, MRPoly::one()}};
                ModElt lhs = apply_generator(ctx, m, a, apply_generator(ctx, m, b, one));
                ModElt rhs = apply_op(ctx, m, composite, one);
                if (lhs != rhs) rep.relations_ok = false;
            }
        }

    Coaction co = comodule_from_action(ctx, m);
    rep.counit_ok = true;
    for (int i = 0; i < n; ++i)
        for (const auto& [j, a] : co.co[i]) {
            MRPoly e = counit(a);
            if (i == j ? !(e == MRPoly::one()) : !e.is_zero()) rep.counit_ok = false;
        }
    rep.roundtrip_ok = action_from_comodule(ctx, m, co) == m;
    return rep;
}

std::pair<MRPoly, MRPoly> antihom_counterexample(const Ctx& ctx) {
    FreeModule m;
    int i0 = m.add_basis("x00", {0, 0});
    int i1 = m.add_basis("x10", {1, 0});
    m.set_action(0, i0, {{i1, MRPoly::one()}});
    SteenrodElt twisted = chi_sq(ctx, 2);
    auto read = [&](const ModElt& v) {
        auto it = v.find(i1);
        return it == v.end() ? MRPoly::zero() : it->second;
    };
    ModElt on_t = apply_op(ctx, m, twisted, {{i0, MRPoly::t()}});
    ModElt on_one = apply_op(ctx, m, twisted, {{i0, MRPoly::one()}});
    return {read(on_t), read(on_one)};
}

}  // namespace rmot

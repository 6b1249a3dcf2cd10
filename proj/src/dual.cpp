#include "rmot/dual.hpp"

#include <algorithm>
#include <deque>
#include <mutex>

namespace rmot {

namespace {

// Small thread-safe memo cache.  compute() runs without the lock held, so
// recursive fills are fine; a lost race just recomputes the same value.
template <class K, class V>
class Memo {
public:
    template <class F>
    const V& get(const K& key, F&& compute) {
        {
            std::lock_guard<std::mutex> lk(mu_);
            auto it = map_.find(key);
            if (it != map_.end()) return it->second;
        }
        V value = compute();
        std::lock_guard<std::mutex> lk(mu_);
        return map_.emplace(key, std::move(value)).first->second;
    }

private:
    std::map<K, V> map_;
    std::mutex mu_;
};

}  // namespace

// ------------------------------------------------------------------ Mono --

BiDegree tau_grade(int n) { return {(1 << (n + 1)) - 1, (1 << n) - 1}; }
BiDegree xi_grade(int n) { return {(1 << (n + 1)) - 2, (1 << n) - 1}; }

BiDegree Mono::grade() const {
    BiDegree g{0, 0};
    for (int n = 0; n < 32; ++n)
        if (tau & (1u << n)) g = g + tau_grade(n);
    for (size_t i = 0; i < xi.size(); ++i)
        for (int k = 0; k < xi[i]; ++k) g = g + xi_grade((int)i + 1);
    return g;
}

void Mono::trim() {
    while (!xi.empty() && xi.back() == 0) xi.pop_back();
}

bool Mono::operator<(const Mono& o) const {
    BiDegree g = grade(), h = o.grade();
    if (g.s != h.s) return g.s < h.s;
    if (g.w != h.w) return g.w > h.w;
    if (tau != o.tau) return tau < o.tau;
    return std::lexicographical_compare(xi.begin(), xi.end(), o.xi.begin(), o.xi.end());
}

Mono tau_mono(int n) {
    Mono m;
    m.tau = 1u << n;
    return m;
}

Mono xi_mono(int n, uint8_t power) {
    Mono m;
    if (power) {
        m.xi.assign(n, 0);
        m.xi[n - 1] = power;
    }
    return m;
}

Mono mono_concat(const Mono& x, const Mono& y) {
    Mono out;
    out.tau = x.tau | y.tau;  // valid only when disjoint; callers check overlap
    out.xi.assign(std::max(x.xi.size(), y.xi.size()), 0);
    for (size_t i = 0; i < x.xi.size(); ++i) out.xi[i] += x.xi[i];
    for (size_t i = 0; i < y.xi.size(); ++i) out.xi[i] += y.xi[i];
    out.trim();
    return out;
}

// ----------------------------------------------------------- DualElement --

void DualElement::add(const Mono& m, const MRPoly& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

MRPoly DualElement::coefficient(const Mono& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? MRPoly::zero() : it->second;
}

DualElement operator+(const DualElement& x, const DualElement& y) {
    DualElement out = x;
    for (const auto& [m, c] : y.terms_) out.add(m, c);
    return out;
}

std::optional<BiDegree> DualElement::grade() const {
    if (terms_.empty()) return BiDegree{0, 0};
    std::optional<BiDegree> g;
    for (const auto& [m, c] : terms_) {
        auto cg = c.grade();
        if (!cg) return std::nullopt;
        BiDegree tg = m.grade() + *cg;
        if (!g)
            g = tg;
        else if (*g != tg)
            return std::nullopt;
    }
    return g;
}

// ------------------------------------------------------------- normalize --

namespace {

size_t lowest_index(const std::vector<int>&) { return 0; }

Mono raw_to_mono(const RawMono& raw) {
    Mono m;
    for (size_t n = 0; n < raw.tau.size(); ++n)
        if (raw.tau[n]) m.tau |= 1u << n;
    m.xi.assign(raw.xi.begin(), raw.xi.end());
    m.trim();
    return m;
}

void bump_tau(RawMono& r, size_t n, int delta) {
    if (r.tau.size() <= n) r.tau.resize(n + 1, 0);
    r.tau[n] += delta;
}

void bump_xi(RawMono& r, size_t i, int delta) {  // i is the xi vector slot for X_{i+1}
    if (r.xi.size() <= i) r.xi.resize(i + 1, 0);
    r.xi[i] = (uint8_t)(r.xi[i] + delta);
}

}  // namespace

DualElement normalize(const RawMono& raw, const MRPoly& coeff,
                      const std::function<size_t(const std::vector<int>&)>& pick) {
    DualElement out;
    std::deque<std::pair<MRPoly, RawMono>> work;
    work.emplace_back(coeff, raw);
    while (!work.empty()) {
        auto [c, r] = std::move(work.front());
        work.pop_front();
        if (c.is_zero()) continue;
        std::vector<int> offending;
        for (size_t n = 0; n < r.tau.size(); ++n)
            if (r.tau[n] >= 2) offending.push_back((int)n);
        if (offending.empty()) {
            out.add(raw_to_mono(r), c);
            continue;
        }
        size_t n = (size_t)offending[pick(offending) % offending.size()];
        // T_n^2 = t X_{n+1} + r T0 X_{n+1} + r T_{n+1}
        RawMono base = r;
        base.tau[n] -= 2;
        RawMono b1 = base;
        bump_xi(b1, n, 1);
        work.emplace_back(c * MRPoly::t(), b1);
        RawMono b2 = base;
        bump_tau(b2, 0, 1);
        bump_xi(b2, n, 1);
        work.emplace_back(c * MRPoly::r(), b2);
        RawMono b3 = base;
        bump_tau(b3, n + 1, 1);
        work.emplace_back(c * MRPoly::r(), b3);
    }
    return out;
}

DualElement normalize(const RawMono& raw, const MRPoly& coeff) {
    return normalize(raw, coeff, lowest_index);
}

// ------------------------------------------------------- ring operations --

namespace {

RawMono raw_of(const Mono& m) {
    RawMono r;
    for (int n = 0; n < 32; ++n)
        if (m.tau & (1u << n)) bump_tau(r, (size_t)n, 1);
    r.xi.assign(m.xi.begin(), m.xi.end());
    return r;
}

Memo<std::pair<Mono, Mono>, DualElement>& mono_product_cache() {
    static Memo<std::pair<Mono, Mono>, DualElement> memo;
    return memo;
}

DualElement mono_product(const Mono& x, const Mono& y) {
    if (x.is_unit()) return DualElement(y);
    if (y.is_unit()) return DualElement(x);
    auto key = std::make_pair(std::min(x, y), std::max(x, y));
    return mono_product_cache().get(key, [&] {
        RawMono r = raw_of(key.first);
        RawMono s = raw_of(key.second);
        if (s.tau.size() > r.tau.size()) r.tau.resize(s.tau.size(), 0);
        for (size_t n = 0; n < s.tau.size(); ++n) r.tau[n] += s.tau[n];
        if (s.xi.size() > r.xi.size()) r.xi.resize(s.xi.size(), 0);
        for (size_t i = 0; i < s.xi.size(); ++i) r.xi[i] = (uint8_t)(r.xi[i] + s.xi[i]);
        return normalize(r, MRPoly::one());
    });
}

}  // namespace

DualElement ds_mul(const DualElement& x, const DualElement& y) {
    DualElement out;
    for (const auto& [mx, cx] : x.terms())
        for (const auto& [my, cy] : y.terms()) {
            MRPoly c = cx * cy;
            DualElement p = mono_product(mx, my);
            for (const auto& [m, k] : p.terms()) out.add(m, c * k);
        }
    return out;
}

DualElement ds_mul(const DualElement& x, const MRPoly& m) {
    DualElement out;
    for (const auto& [mx, cx] : x.terms()) out.add(mx, cx * m);
    return out;
}

DualElement eta_L(const MRPoly& m) {
    DualElement out;
    if (!m.is_zero()) out.add(Mono{}, m);
    return out;
}

namespace {

const DualElement& eta_r_tau_power(uint32_t a) {
    static Memo<uint32_t, DualElement> memo;
    return memo.get(a, [&]() -> DualElement {
        if (a == 0) return DualElement::unit();
        DualElement tau_image;  // t + r T0
        tau_image.add(Mono{}, MRPoly::t());
        tau_image.add(tau_mono(0), MRPoly::r());
        return ds_mul(eta_r_tau_power(a - 1), tau_image);
    });
}

}  // namespace

DualElement eta_R(const MRPoly& m) {
    DualElement out;
    for (const auto& t : m.terms())
        out += ds_mul(eta_r_tau_power(t.a), MRPoly::r(t.b));
    return out;
}

MRPoly counit(const DualElement& x) { return x.coefficient(Mono{}); }

// ------------------------------------------------------------- conjugate --

namespace {

DualElement conj_xi(int n);
DualElement conj_tau(int n);

// c(X_n) = sum_{i=0}^{n-1} X_{n-i}^{2^i} c(X_i),  X_0 = 1.
DualElement conj_xi(int n) {
    static Memo<int, DualElement> memo;
    if (n == 0) return DualElement::unit();
    return memo.get(n, [&] {
        DualElement out;
        for (int i = 0; i < n; ++i)
            out += ds_mul(DualElement(xi_mono(n - i, (uint8_t)(1 << i))), conj_xi(i));
        return out;
    });
}

// c(T_n) = T_n + sum_{i=0}^{n-1} X_{n-i}^{2^i} c(T_i).
DualElement conj_tau(int n) {
    static Memo<int, DualElement> memo;
    return memo.get(n, [&] {
        DualElement out(tau_mono(n));
        for (int i = 0; i < n; ++i)
            out += ds_mul(DualElement(xi_mono(n - i, (uint8_t)(1 << i))), conj_tau(i));
        return out;
    });
}

}  // namespace

DualElement conjugate_mono(const Mono& m) {
    static Memo<Mono, DualElement> memo;
    if (m.is_unit()) return DualElement::unit();
    return memo.get(m, [&] {
        DualElement out = DualElement::unit();
        for (int n = 0; n < 32; ++n)
            if (m.tau & (1u << n)) out = ds_mul(out, conj_tau(n));
        for (size_t i = 0; i < m.xi.size(); ++i)
            for (int k = 0; k < m.xi[i]; ++k) out = ds_mul(out, conj_xi((int)i + 1));
        return out;
    });
}

DualElement conjugate(const DualElement& x) {
    // Not left-linear: scalars pass through c via eta_R.
    DualElement out;
    for (const auto& [m, c] : x.terms()) out += ds_mul(eta_R(c), conjugate_mono(m));
    return out;
}

// -------------------------------------------------------- monomial basis --

namespace {

std::vector<Mono> enumerate_basis(BiDegree g) {
    std::vector<Mono> out;
    if (g.s < 0 || g.w < 0 || g.w > g.s) return out;

    struct Gen {
        bool is_tau;
        int n;
        BiDegree g;
    };
    std::vector<Gen> gens;
    for (int n = 0; tau_grade(n).s <= g.s; ++n) gens.push_back({true, n, tau_grade(n)});
    for (int n = 1; xi_grade(n).s <= g.s; ++n) gens.push_back({false, n, xi_grade(n)});

    Mono cur;
    auto rec = [&](auto&& self, size_t idx, BiDegree rem) -> void {
        if (rem.s == 0 && rem.w == 0) {
            Mono m = cur;
            m.trim();
            out.push_back(std::move(m));
            return;
        }
        if (idx == gens.size() || rem.s < 0 || rem.w < 0) return;
        const Gen& gen = gens[idx];
        if (gen.is_tau) {
            self(self, idx + 1, rem);
            cur.tau |= 1u << gen.n;
            self(self, idx + 1, rem - gen.g);
            cur.tau &= ~(1u << gen.n);
        } else {
            int max_k = gen.g.s ? rem.s / gen.g.s : 0;
            for (int k = 0; k <= max_k; ++k) {
                if (cur.xi.size() < (size_t)gen.n) cur.xi.resize(gen.n, 0);
                cur.xi[gen.n - 1] = (uint8_t)k;
                self(self, idx + 1, {rem.s - k * gen.g.s, rem.w - k * gen.g.w});
            }
            cur.xi[gen.n - 1] = 0;
        }
    };
    rec(rec, 0, g);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

const std::vector<Mono>& monomial_basis(const Ctx& ctx, BiDegree g) {
    if (g.s > ctx.degree_bound)
        fail(ErrorKind::Bound, "degree bound exceeded: monomial basis requested at grade " +
                                   to_string(g) + " with bound " +
                                   std::to_string(ctx.degree_bound));
    static Memo<BiDegree, std::vector<Mono>> memo;
    return memo.get(g, [&] { return enumerate_basis(g); });
}

// -------------------------------------------------------- BalancedTensor --

void BalancedTensor::add(const Mono& left, const Mono& right, const MRPoly& c) {
    if (c.is_zero()) return;
    Key key{left, right};
    auto [it, inserted] = terms_.emplace(key, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

BalancedTensor operator+(const BalancedTensor& x, const BalancedTensor& y) {
    BalancedTensor out = x;
    for (const auto& [k, c] : y.terms_) out.add(k.first, k.second, c);
    return out;
}

BalancedTensor tensor_balance(const DualElement& a, const DualElement& b) {
    BalancedTensor out;
    for (const auto& [bm, bc] : b.terms()) {
        DualElement left = ds_mul(a, eta_R(bc));
        for (const auto& [am, ac] : left.terms()) out.add(am, bm, ac);
    }
    return out;
}

BalancedTensor tensor_mul(const BalancedTensor& x, const BalancedTensor& y) {
    BalancedTensor out;
    for (const auto& [xk, xc] : x.terms())
        for (const auto& [yk, yc] : y.terms()) {
            DualElement left = mono_product(xk.first, yk.first);
            DualElement right = mono_product(xk.second, yk.second);
            BalancedTensor t = tensor_balance(left, right);
            MRPoly c = xc * yc;
            for (const auto& [k, tc] : t.terms()) out.add(k.first, k.second, tc * c);
        }
    return out;
}

// --------------------------------------------------------------- coproduct --

namespace {

BalancedTensor coproduct_tau(int n) {
    BalancedTensor out;
    out.add(tau_mono(n), Mono{}, MRPoly::one());
    for (int i = 0; i <= n; ++i) {
        Mono left = i == n ? Mono{} : xi_mono(n - i, (uint8_t)(1 << i));
        out.add(left, tau_mono(i), MRPoly::one());
    }
    return out;
}

BalancedTensor coproduct_xi(int n) {
    BalancedTensor out;
    for (int i = 0; i <= n; ++i) {
        Mono left = i == n ? Mono{} : xi_mono(n - i, (uint8_t)(1 << i));
        Mono right = i == 0 ? Mono{} : xi_mono(i);
        out.add(left, right, MRPoly::one());
    }
    return out;
}

// Frobenius squaring; valid for xi-only tensors, where squares stay normal.
BalancedTensor frob_square(const BalancedTensor& t) {
    BalancedTensor out;
    for (const auto& [k, c] : t.terms()) {
        Mono l = k.first, r = k.second;
        for (auto& e : l.xi) e = (uint8_t)(e * 2);
        for (auto& e : r.xi) e = (uint8_t)(e * 2);
        out.add(l, r, c * c);
    }
    return out;
}

BalancedTensor coproduct_xi_power(int n, uint8_t k) {
    BalancedTensor out;
    out.add(Mono{}, Mono{}, MRPoly::one());
    BalancedTensor sq = coproduct_xi(n);
    for (uint8_t bits = k; bits; bits >>= 1) {
        if (bits & 1) out = tensor_mul(out, sq);
        if (bits >> 1) sq = frob_square(sq);
    }
    return out;
}

}  // namespace

const BalancedTensor& coproduct_mono(const Mono& m) {
    static Memo<Mono, BalancedTensor> memo;
    return memo.get(m, [&] {
        BalancedTensor out;
        out.add(Mono{}, Mono{}, MRPoly::one());
        for (int n = 0; n < 32; ++n)
            if (m.tau & (1u << n)) out = tensor_mul(out, coproduct_tau(n));
        for (size_t i = 0; i < m.xi.size(); ++i)
            if (m.xi[i]) out = tensor_mul(out, coproduct_xi_power((int)i + 1, m.xi[i]));
        return out;
    });
}

BalancedTensor coproduct(const DualElement& x) {
    BalancedTensor out;
    for (const auto& [m, c] : x.terms()) {
        const BalancedTensor& t = coproduct_mono(m);
        for (const auto& [k, tc] : t.terms()) out.add(k.first, k.second, tc * c);
    }
    return out;
}

DualElement collapse_left(const BalancedTensor& t) {
    DualElement out;
    for (const auto& [k, c] : t.terms())
        if (k.first.is_unit()) out.add(k.second, c);
    return out;
}

DualElement collapse_right(const BalancedTensor& t) {
    DualElement out;
    for (const auto& [k, c] : t.terms())
        if (k.second.is_unit()) out.add(k.first, c);
    return out;
}

}  // namespace rmot

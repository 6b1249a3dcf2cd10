#pragma once

// The dual R-motivic Steenrod algebra as a Hopf algebroid over F2[t,r]:
// monomial normal form under  Tn^2 = t X_{n+1} + r T0 X_{n+1} + r T_{n+1},
// multiplication, the two units, coproduct into the balanced tensor square,
// conjugation and counit.

#include <cstdint>
#include <functional>
#include <map>
#include <utility>
#include <vector>

#include "rmot/basics.hpp"

namespace rmot {

// Normal-form monomial: tau factors as a bitmask (exponents are 0/1 after
// normalization), xi exponents with xi[i] the power of X_{i+1}.  Trailing
// zero xi entries are always trimmed so equality is structural.
struct Mono {
    uint32_t tau = 0;
    std::vector<uint8_t> xi;

    bool is_unit() const { return tau == 0 && xi.empty(); }
    BiDegree grade() const;
    void trim();
    bool operator==(const Mono&) const = default;
    // Canonical order: s asc, w desc, tau mask asc, xi exponents lex asc.
    bool operator<(const Mono& o) const;
};

Mono tau_mono(int n);
Mono xi_mono(int n, uint8_t power = 1);
Mono mono_concat(const Mono& x, const Mono& y);  // formal product, no relation applied

BiDegree tau_grade(int n);  // (2^{n+1}-1, 2^n-1)
BiDegree xi_grade(int n);   // (2^{n+1}-2, 2^n-1)

// Element in left-coefficient normal form: sum of coeff * monomial.
class DualElement {
public:
    using Terms = std::map<Mono, MRPoly>;

    DualElement() = default;
    explicit DualElement(Mono m, MRPoly c = MRPoly::one()) { add(m, c); }
    static DualElement zero() { return {}; }
    static DualElement unit() { return DualElement(Mono{}); }

    void add(const Mono& m, const MRPoly& c);
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    MRPoly coefficient(const Mono& m) const;

    friend DualElement operator+(const DualElement& x, const DualElement& y);
    DualElement& operator+=(const DualElement& y) { *this = *this + y; return *this; }
    bool operator==(const DualElement&) const = default;

    std::optional<BiDegree> grade() const;

private:
    Terms terms_;
};

// Raw monomial before normalization: arbitrary tau exponents.
struct RawMono {
    std::vector<uint32_t> tau;  // tau[n] = exponent of T_n
    std::vector<uint8_t> xi;
};

// Rewrites every tau square away, lowest index first.  `pick` overrides the
// choice of which offending index to rewrite next (used by the confluence
// tests); it receives the indices with exponent >= 2 and returns one of them.
DualElement normalize(const RawMono& raw, const MRPoly& coeff = MRPoly::one());
DualElement normalize(const RawMono& raw, const MRPoly& coeff,
                      const std::function<size_t(const std::vector<int>&)>& pick);

DualElement ds_mul(const DualElement& x, const DualElement& y);
DualElement ds_mul(const DualElement& x, const MRPoly& m);  // left scalar

DualElement eta_L(const MRPoly& m);
DualElement eta_R(const MRPoly& m);
MRPoly counit(const DualElement& x);

DualElement conjugate(const DualElement& x);
DualElement conjugate_mono(const Mono& m);

// All normal-form monomials of exactly grade g.  Throws a Bound error when
// g.s exceeds ctx.degree_bound.
const std::vector<Mono>& monomial_basis(const Ctx& ctx, BiDegree g);

// Tensor square over the coefficient ring, coefficients gathered on the left
// factor: terms are coeff * (mono (x) mono) with both monomials monic.
class BalancedTensor {
public:
    using Key = std::pair<Mono, Mono>;
    using Terms = std::map<Key, MRPoly>;

    BalancedTensor() = default;
    void add(const Mono& left, const Mono& right, const MRPoly& c);
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    friend BalancedTensor operator+(const BalancedTensor& x, const BalancedTensor& y);
    BalancedTensor& operator+=(const BalancedTensor& y) { *this = *this + y; return *this; }
    bool operator==(const BalancedTensor&) const = default;

private:
    Terms terms_;
};

// a (x) b in canonical form; right-factor coefficients cross the tensor as
// eta_R multipliers on the left factor.
BalancedTensor tensor_balance(const DualElement& a, const DualElement& b);
BalancedTensor tensor_mul(const BalancedTensor& x, const BalancedTensor& y);

BalancedTensor coproduct(const DualElement& x);
const BalancedTensor& coproduct_mono(const Mono& m);

// Counit collapse maps; both are identities (asserted in tests, not assumed).
DualElement collapse_left(const BalancedTensor& t);   // (counit (x) id)
DualElement collapse_right(const BalancedTensor& t);  // (id (x) counit)

}  // namespace rmot

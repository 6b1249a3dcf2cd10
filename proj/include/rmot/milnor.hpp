#pragma once

#include "rmot/dual.hpp"

#include <vector>

namespace rmot {

// A Steenrod operation in the Milnor basis.  A term m * rho(E,R) is m times
// the functional dual to the monomial tau(E) xi(R); Mono carries (E,R).
// Coefficients are gathered on the left (module structure via eta_L).
class SteenrodElt {
public:
    using Terms = std::map<Mono, MRPoly>;

    SteenrodElt() = default;
    explicit SteenrodElt(const Mono& m, const MRPoly& c = MRPoly::one()) { add(m, c); }
    static SteenrodElt zero() { return {}; }
    static SteenrodElt unit() { return SteenrodElt(Mono{}); }

    void add(const Mono& m, const MRPoly& c);
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    MRPoly coefficient(const Mono& m) const;

    friend SteenrodElt operator+(const SteenrodElt& x, const SteenrodElt& y);
    SteenrodElt& operator+=(const SteenrodElt& o) {
        *this = *this + o;
        return *this;
    }
    bool operator==(const SteenrodElt&) const = default;

private:
    Terms terms_;
};

SteenrodElt scale(const MRPoly& m, const SteenrodElt& f);  // left scalar action
SteenrodElt embed(const MRPoly& m);  // m times the identity operation
SteenrodElt sq_gen(int k);           // k in {1,2,4,8}
SteenrodElt q_gen(int i);            // Q_i
SteenrodElt p_gen(const std::vector<uint8_t>& R);  // P^R

// Cohomological degree of the operation m * rho(E,R): the grade of the
// monomial minus the (homologically stored) grade of the scalar.
BiDegree term_op_degree(const Mono& basis, const MRMonomial& coeff);
// Degree shared by all terms; nullopt if mixed, (0,0) for zero.
std::optional<BiDegree> op_degree(const SteenrodElt& f);

// Kronecker pairing: coefficient extraction over matching monomials.
// Left-linear in x; scalars on f pass through unchanged.
MRPoly pair(const DualElement& x, const SteenrodElt& f);

// Composition product phi . psi (psi applied first), computed by evaluating
// against the coproduct of each candidate basis monomial.
SteenrodElt product(const Ctx& ctx, const SteenrodElt& phi, const SteenrodElt& psi);

// phi composed with right multiplication by m: x -> pair(x * eta_R(m), phi).
SteenrodElt right_twist(const Ctx& ctx, const SteenrodElt& phi, const MRPoly& m);

// [m, phi] = embed(m).phi + phi.embed(m)
SteenrodElt scalar_commutator(const Ctx& ctx, const MRPoly& m, const SteenrodElt& phi);

// A sum of scalar-prefixed words in the generators Sq1/Sq2/Sq4/Sq8.
// A word composes left to right: {1,2} means Sq1 applied after Sq2.
struct GTerm {
    MRPoly coeff;
    std::vector<int> word;  // letters in {1,2,4,8}
};
using GExpression = std::vector<GTerm>;

SteenrodElt g_expression_to_milnor(const Ctx& ctx, const GExpression& e);

// The table of all basis operations of cohomological degree up to (8,4):
// each with its conjugate and a generator expression for its dual.
struct OpTableRow {
    BiDegree degree;     // grade of the basis monomial
    Mono basis;          // monomial in the dual algebra
    DualElement conj;    // stated conjugate of that monomial
    Mono dual_op;        // Milnor-basis operation dual to `basis`
    GExpression gword;   // the same operation in the generators
};
const std::vector<OpTableRow>& op_table();

struct OpTableRowCheck {
    bool conj_ok = false;
    bool gword_ok = false;
};
std::vector<OpTableRowCheck> op_table_verify(const Ctx& ctx);

// Antipode values on the generators; k in {1,2,4}.
SteenrodElt chi_sq(const Ctx& ctx, int k);

// Consistency report for the antipode and the tau commutators:
// the commutator identities, plus the coefficients forced by applying the
// antipode to those identities (eps for chi(Sq2), the triple for chi(Sq4)).
struct ChiReport {
    bool comm_sq1_ok = false;  // [tau,Sq1] = r
    bool comm_sq2_ok = false;  // [tau,Sq2] = r t Sq1
    bool comm_sq4_ok = false;  // [tau,Sq4] = r t Sq1 Sq2
    int eps = -1;              // forced: chi(Sq2) = Sq2 + eps*r Sq1
    int delta = -1, eps2 = -1, lambda = -1;  // forced triple for chi(Sq4)
    bool chi_ok = false;       // chi_sq values solve both antipode equations
};
ChiReport chi_check(const Ctx& ctx);

}  // namespace rmot

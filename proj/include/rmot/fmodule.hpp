#pragma once

#include "rmot/milnor.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace rmot {

// Element of a free module: basis index -> coefficient.
using ModElt = std::map<int, MRPoly>;

ModElt mod_add(const ModElt& x, const ModElt& y);
ModElt mod_scale(const MRPoly& m, const ModElt& x);

// Generators are indexed 0..3 for Sq1, Sq2, Sq4, Sq8.
inline constexpr int kGenCount = 4;
int gen_letter(int k);                  // 1, 2, 4, 8
const char* gen_name(int k);            // "Sq1", ...
BiDegree gen_degree(int k);             // (1,0), (2,1), (4,2), (8,4)
int gen_index(const std::string& name); // -1 if not a generator name

// A finitely generated free module, with basis degrees stored
// cohomologically.  A scalar t^a r^b placed on a basis element contributes
// (b, a+b) to the cohomological degree of the term.
struct FreeModule {
    struct BasisElt {
        std::string name;
        BiDegree coh;
        bool operator==(const BasisElt&) const = default;
    };
    std::vector<BasisElt> basis;
    std::array<std::map<int, ModElt>, kGenCount> action;  // absent entry = zero

    int find(const std::string& name) const;     // -1 if absent
    int require(const std::string& name) const;  // Input error if absent
    int add_basis(const std::string& name, BiDegree coh);
    void set_action(int gen, int i, ModElt v);    // drops zero coefficients
    const ModElt* action_on(int gen, int i) const;

    bool operator==(const FreeModule&) const = default;
};

BiDegree coh_degree(const MRMonomial& coeff);  // (b, a+b)

// Input-validation: unique nonempty names, action values homogeneous of the
// expected degree, Sq1 squaring to zero on every basis element.
void validate(const Ctx& ctx, const FreeModule& m);

// Apply a generator, an operation written in the basis of the operation
// table, or a general Milnor-basis operation to a module element.  Scalars
// inside the element are routed through the composite product, so these are
// genuinely semilinear.  Fails with an Input error if an operation outside
// the supported table is needed at a degree the module occupies.
ModElt apply_generator(const Ctx& ctx, const FreeModule& m, int gen, const ModElt& v);
ModElt apply_op(const Ctx& ctx, const FreeModule& m, const SteenrodElt& f, const ModElt& v);

// The induced coaction: co[i][j] is the dual-algebra coefficient of x_j in
// psi(x_i).
struct Coaction {
    std::vector<std::map<int, DualElement>> co;
    bool operator==(const Coaction&) const = default;
};

Coaction comodule_from_action(const Ctx& ctx, const FreeModule& m);

// Recover the action from a coaction: the value of f on x_i reads off the
// conjugated coefficients of psi(x_i).
ModElt apply_via_coaction(const Ctx& ctx, const FreeModule& m, const Coaction& c,
                          const SteenrodElt& f, const ModElt& v);
FreeModule action_from_comodule(const Ctx& ctx, const FreeModule& m, const Coaction& c);

// Dual module: basis names toggle an 'h' after their first character,
// degrees negate, and the action is read off the coaction coefficients.
std::string dual_name(const std::string& name);
FreeModule dualize(const Ctx& ctx, const FreeModule& m);

// Shift all degrees up by d (cohomological).
FreeModule suspend(const FreeModule& m, BiDegree d);

// Degree-preserving module isomorphism search.  Same-degree blocks range
// over invertible matrices; cross entries carry the scalar forced by the
// degree difference.  Returns the first compatible candidate.
struct IsoWitness {
    bool identity = false;
    std::vector<ModElt> images;  // images[i] = f(x_i) as an element of N
};
std::optional<IsoWitness> iso_test(const Ctx& ctx, const FreeModule& m, const FreeModule& n);

// Structural verification used by the census: degree homogeneity, the
// composite relations of generator pairs, and the coaction laws.
struct VerifyReport {
    bool graded_ok = false;
    bool sq1sq1_ok = false;
    bool relations_ok = false;
    bool counit_ok = false;
    bool roundtrip_ok = false;
    bool all() const { return graded_ok && sq1sq1_ok && relations_ok && counit_ok && roundtrip_ok; }
};
VerifyReport verify_module(const Ctx& ctx, const FreeModule& m);

// The two evaluations showing that twisting an operation by the antipode is
// not scalar-linear: the value of the twisted functional on t*x00 and on
// x00 for the rank-two module with Sq1 x00 = x10 and Sq2 x00 = 0.
std::pair<MRPoly, MRPoly> antihom_counterexample(const Ctx& ctx);

}  // namespace rmot

#pragma once

#include "rmot/fmodule.hpp"

namespace rmot {

// The seven structure bits of a catalog member, with the derived bit j24.
struct StructureVector {
    bool a03 = false, b03 = false, b14 = false, b06 = false;
    bool b25 = false, b26 = false, g36 = false;

    bool j24() const { return (b03 && g36) != (a03 && (b25 != b26)); }
    uint8_t bits() const;                  // a03 lowest bit .. g36 bit 6
    static StructureVector from_bits(uint8_t b);
    std::string label() const;             // "(a03,b03,b14,b06,b25,b26,g36)"
    bool operator==(const StructureVector&) const = default;
};

// The coaction table of the catalog member for v, on the fixed basis
// x00 x10 x21 x31 y31 y41 y52 y62.
Coaction a1_coaction(const Ctx& ctx, const StructureVector& v);

// The catalog module itself.  The action is derived from the coaction and
// cross-checked against the independently stated action table; a mismatch
// is an internal error.
FreeModule build_a1(const Ctx& ctx, const StructureVector& v);

// Structure vector of the dual member; an involution.
StructureVector delta_dual(const StructureVector& v);
bool is_self_dual(const StructureVector& v);

// Dual module, suspended by (6,2) so the degrees line up with the catalog:
// raw keeps the h-names in the original order, the other renames and
// reorders onto the catalog basis.
FreeModule dual_a1_raw(const Ctx& ctx, const StructureVector& v);
FreeModule dual_a1(const Ctx& ctx, const StructureVector& v);

// Checks the raw dual against the stated dual action table.
bool dual_matches_stated(const Ctx& ctx, const StructureVector& v);

enum class Realization { Y21, Yh1 };
std::optional<Realization> classify_realization(const StructureVector& v);
const char* realization_name(Realization r);  // "Y(2,1)" / "Y(h,1)"

struct CensusRow {
    StructureVector v;
    bool self_dual = false;
    bool j24 = false;
    std::optional<Realization> realization;
};
std::vector<CensusRow> census_rows(const Ctx& ctx);  // all 128 members

struct FullVerifyResult {
    int checked = 0;
    int passed = 0;
    std::vector<std::string> failures;  // labels with the failing check
};
// Per-member structural verification: module laws, coaction round-trip,
// stated-dual match, self-isomorphism.  With exhaustive_iso, also checks
// that distinct members are pairwise non-isomorphic.
FullVerifyResult census_full_verify(const Ctx& ctx, bool exhaustive_iso);

}  // namespace rmot

#include "rmot/basics.hpp"

#include <algorithm>

namespace rmot {

std::string to_string(BiDegree d) {
    return "(" + std::to_string(d.s) + "," + std::to_string(d.w) + ")";
}

void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

namespace {
// Canonical term order: tau-power descending, then rho-power ascending.
bool term_less(MRMonomial x, MRMonomial y) {
    if (x.a != y.a) return x.a > y.a;
    return x.b < y.b;
}
}  // namespace

bool MRPoly::is_one() const {
    return terms_.size() == 1 && terms_[0] == MRMonomial{0, 0};
}

void MRPoly::toggle(MRMonomial m) {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m, term_less);
    if (it != terms_.end() && *it == m)
        terms_.erase(it);
    else
        terms_.insert(it, m);
}

MRPoly operator+(const MRPoly& p, const MRPoly& q) {
    MRPoly out;
    auto a = p.terms_.begin(), ae = p.terms_.end();
    auto b = q.terms_.begin(), be = q.terms_.end();
    while (a != ae && b != be) {
        if (*a == *b) {
            ++a;
            ++b;  // cancels in characteristic 2
        } else if (term_less(*a, *b)) {
            out.terms_.push_back(*a++);
        } else {
            out.terms_.push_back(*b++);
        }
    }
    out.terms_.insert(out.terms_.end(), a, ae);
    out.terms_.insert(out.terms_.end(), b, be);
    return out;
}

MRPoly operator*(const MRPoly& p, const MRPoly& q) {
    MRPoly out;
    for (const auto& x : p.terms_)
        for (const auto& y : q.terms_)
            out.toggle(MRMonomial{x.a + y.a, x.b + y.b});
    return out;
}

std::optional<BiDegree> MRPoly::grade() const {
    if (terms_.empty()) return BiDegree{0, 0};
    BiDegree g = terms_[0].grade();
    for (const auto& m : terms_)
        if (m.grade() != g) return std::nullopt;
    return g;
}

}  // namespace rmot

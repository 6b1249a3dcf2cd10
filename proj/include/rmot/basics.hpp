#pragma once

// Bigraded coefficient arithmetic over F2[t,r] ("t" is tau, "r" is rho) and
// the bidegree bookkeeping shared by every other component.  All grades kept
// internally are homological; cohomological degrees appear only at file and
// CLI boundaries.

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmot {

struct BiDegree {
    int s = 0;  // topological degree
    int w = 0;  // weight

    friend BiDegree operator+(BiDegree a, BiDegree b) { return {a.s + b.s, a.w + b.w}; }
    friend BiDegree operator-(BiDegree a, BiDegree b) { return {a.s - b.s, a.w - b.w}; }
    BiDegree operator-() const { return {-s, -w}; }
    auto operator<=>(const BiDegree&) const = default;
};

std::string to_string(BiDegree d);

// ---------------------------------------------------------------- errors --

enum class ErrorKind {
    Parse,     // malformed input text / JSON
    Bound,     // degree bound exceeded
    Input,     // structurally invalid input (schema, grades, unknown names)
    Verify,    // a verification that was asked for failed
    Internal,
};

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string msg) : std::runtime_error(std::move(msg)), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& msg);

// Shared configuration.  The bound limits the first coordinate of any grade
// whose monomial basis has to be enumerated.
struct Ctx {
    int degree_bound = 16;
};

// ----------------------------------------------------------- coefficients --

// t^a r^b.  Homological grade (-b, -a-b).
struct MRMonomial {
    uint32_t a = 0;
    uint32_t b = 0;

    BiDegree grade() const { return {-(int)b, -(int)(a + b)}; }
    auto operator<=>(const MRMonomial&) const = default;
};

// Element of F2[t,r]: a set of monomials, presence meaning coefficient 1.
// Terms are kept sorted by (a desc, b asc), which is also the render order.
class MRPoly {
public:
    MRPoly() = default;
    MRPoly(MRMonomial m) : terms_{m} {}
    static MRPoly zero() { return {}; }
    static MRPoly one() { return MRPoly(MRMonomial{0, 0}); }
    static MRPoly t(uint32_t a = 1) { return MRPoly(MRMonomial{a, 0}); }
    static MRPoly r(uint32_t b = 1) { return MRPoly(MRMonomial{0, b}); }

    bool is_zero() const { return terms_.empty(); }
    bool is_one() const;
    const std::vector<MRMonomial>& terms() const { return terms_; }
    size_t size() const { return terms_.size(); }

    void toggle(MRMonomial m);  // add one monomial (symmetric difference)

    friend MRPoly operator+(const MRPoly& p, const MRPoly& q);
    friend MRPoly operator*(const MRPoly& p, const MRPoly& q);
    MRPoly& operator+=(const MRPoly& q) { *this = *this + q; return *this; }
    MRPoly& operator*=(const MRPoly& q) { *this = *this * q; return *this; }
    bool operator==(const MRPoly&) const = default;
    auto operator<=>(const MRPoly&) const = default;

    // Common grade of all terms; nullopt when inhomogeneous.  grade(0) = (0,0).
    std::optional<BiDegree> grade() const;
    bool homogeneous() const { return grade().has_value(); }

private:
    std::vector<MRMonomial> terms_;
};

}  // namespace rmot

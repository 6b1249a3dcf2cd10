#pragma once

// Text grammar (parse + render) for coefficients, dual-algebra elements,
// Milnor-basis operations and module elements, plus the JSON module format.
// Rendering is canonical: terms appear in a fixed order and every summand is
// one scalar monomial times one object, so output round-trips through parse.

#include "rmot/fmodule.hpp"

namespace rmot {

std::string render(const MRPoly& p);
std::string render(const Mono& m);           // algebra monomial: "T0 X1^2"
std::string render(const DualElement& x);
std::string render(const BalancedTensor& x); // "a | b" terms, left factor descending
std::string render(const SteenrodElt& f);    // Milnor tokens: "P(1,1) + t Q0 Q1 P2"
std::string render(const GExpression& e);    // "Sq2 Sq4 + t Sq1 Sq4 Sq1"
std::string render(const FreeModule& m, const ModElt& v);

// Parsers accept the same grammar; errors are Parse failures naming the
// byte offset.  parse_dual accepts raw tau powers and normalizes.
MRPoly parse_poly(const std::string& text);
DualElement parse_dual(const std::string& text);
SteenrodElt parse_milnor(const std::string& text);

// Human-readable module and coaction summaries ("Sq1 x00 = x10" lines,
// "psi x00 = 1 | x00 + ..." lines).
std::string module_render(const FreeModule& m);
std::string coaction_render(const FreeModule& m, const Coaction& c);

// JSON: { "basis": [{"name","degree"}...], "action": {"Sq1": {...}}, and
// optionally "coaction" }.  Degrees in files are cohomological.
FreeModule module_from_json(const Ctx& ctx, const std::string& text);
Coaction coaction_from_json(const Ctx& ctx, const FreeModule& m, const std::string& text);
bool json_has_coaction(const std::string& text);
std::string module_to_json(const FreeModule& m);
std::string module_to_json(const FreeModule& m, const Coaction& c);

FreeModule load_module(const Ctx& ctx, const std::string& path);
std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

}  // namespace rmot

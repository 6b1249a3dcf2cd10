#include "rmot/textio.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace rmot {

namespace {

std::string scalar_term(const MRMonomial& m) {
    if (m.a == 0 && m.b == 0) return "1";
    std::string out;
    if (m.a > 0) {
        out += "t";
        if (m.a > 1) out += "^" + std::to_string(m.a);
    }
    if (m.b > 0) {
        if (!out.empty()) out += " ";
        out += "r";
        if (m.b > 1) out += "^" + std::to_string(m.b);
    }
    return out;
}

// "<scalar> <object>" with the unit scalar omitted; bare scalar when the
// object itself is the unit monomial.
std::string prefixed(const MRMonomial& c, const std::string& object) {
    if (object == "1") return scalar_term(c);
    if (c.a == 0 && c.b == 0) return object;
    return scalar_term(c) + " " + object;
}

std::string join_terms(const std::vector<std::string>& terms) {
    if (terms.empty()) return "0";
    std::string out;
    for (size_t i = 0; i < terms.size(); ++i) {
        if (i) out += " + ";
        out += terms[i];
    }
    return out;
}

std::string milnor_name(const Mono& m) {
    std::string out;
    for (int n = 0; n < 32; ++n) {
        if (m.tau >> n & 1) {
            if (!out.empty()) out += " ";
            out += "Q" + std::to_string(n);
        }
    }
    if (!m.xi.empty()) {
        if (!out.empty()) out += " ";
        if (m.xi.size() == 1) {
            out += "P" + std::to_string(m.xi[0]);
        } else {
            out += "P(";
            for (size_t i = 0; i < m.xi.size(); ++i) {
                if (i) out += ",";
                out += std::to_string(m.xi[i]);
            }
            out += ")";
        }
    }
    return out.empty() ? "1" : out;
}

}  // namespace

std::string render(const MRPoly& p) {
    std::vector<std::string> terms;
    for (const MRMonomial& m : p.terms()) terms.push_back(scalar_term(m));
    return join_terms(terms);
}

std::string render(const Mono& m) {
    std::string out;
    for (int n = 0; n < 32; ++n) {
        if (m.tau >> n & 1) {
            if (!out.empty()) out += " ";
            out += "T" + std::to_string(n);
        }
    }
    for (size_t i = 0; i < m.xi.size(); ++i) {
        if (m.xi[i] == 0) continue;
        if (!out.empty()) out += " ";
        out += "X" + std::to_string(i + 1);
        if (m.xi[i] > 1) out += "^" + std::to_string(m.xi[i]);
    }
    return out.empty() ? "1" : out;
}

std::string render(const DualElement& x) {
    std::vector<std::string> terms;
    for (const auto& [mono, poly] : x.terms()) {
        const std::string name = render(mono);
        for (const MRMonomial& c : poly.terms()) terms.push_back(prefixed(c, name));
    }
    return join_terms(terms);
}

std::string render(const BalancedTensor& x) {
    std::vector<std::string> terms;
    const auto& t = x.terms();
    for (auto it = t.rbegin(); it != t.rend(); ++it) {
        const std::string left = render(it->first.first);
        const std::string right = render(it->first.second);
        for (const MRMonomial& c : it->second.terms())
            terms.push_back(prefixed(c, left) + " | " + right);
    }
    return join_terms(terms);
}

std::string render(const SteenrodElt& f) {
    std::vector<std::string> terms;
    for (const auto& [mono, poly] : f.terms()) {
        const std::string name = milnor_name(mono);
        for (const MRMonomial& c : poly.terms()) terms.push_back(prefixed(c, name));
    }
    return join_terms(terms);
}

std::string render(const GExpression& e) {
    std::vector<std::string> terms;
    for (const GTerm& g : e) {
        std::string word;
        for (int k : g.word) {
            if (!word.empty()) word += " ";
            word += "Sq" + std::to_string(k);
        }
        if (word.empty()) word = "1";
        for (const MRMonomial& c : g.coeff.terms()) terms.push_back(prefixed(c, word));
    }
    return join_terms(terms);
}

std::string render(const FreeModule& m, const ModElt& v) {
    std::vector<std::string> terms;
    for (const auto& [i, poly] : v) {
        for (const MRMonomial& c : poly.terms())
            terms.push_back(prefixed(c, m.basis[i].name));
    }
    return join_terms(terms);
}

// ------------------------------------------------------------- parsing --

namespace {

struct Token {
    std::string text;
    size_t offset = 0;
};

std::vector<Token> tokenize(const std::string& s) {
    std::vector<Token> out;
    size_t i = 0;
    while (i < s.size()) {
        if (std::isspace(static_cast<unsigned char>(s[i]))) {
            ++i;
            continue;
        }
        if (s[i] == '+') {
            out.push_back({"+", i});
            ++i;
            continue;
        }
        size_t j = i;
        while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j])) &&
               s[j] != '+')
            ++j;
        out.push_back({s.substr(i, j - i), i});
        i = j;
    }
    return out;
}

[[noreturn]] void bad_token(const Token& t, const std::string& why) {
    fail(ErrorKind::Parse, why + " '" + t.text + "' at offset " +
                               std::to_string(t.offset));
}

uint32_t parse_number(const Token& t, const std::string& digits) {
    if (digits.empty()) bad_token(t, "missing number in");
    for (char c : digits)
        if (!std::isdigit(static_cast<unsigned char>(c))) bad_token(t, "malformed token");
    unsigned long v = std::stoul(digits);
    if (v > 1000000) bad_token(t, "number out of range in");
    return static_cast<uint32_t>(v);
}

// Splits "X2^3" into base "X2" and exponent 3 (default 1).
std::pair<std::string, uint32_t> split_exponent(const Token& t) {
    size_t caret = t.text.find('^');
    if (caret == std::string::npos) return {t.text, 1};
    uint32_t e = parse_number(t, t.text.substr(caret + 1));
    return {t.text.substr(0, caret), e};
}

// One additive term of any grammar: tokens between '+' separators.
struct TermTokens {
    std::vector<Token> factors;
};

std::vector<TermTokens> split_terms(const std::string& text) {
    std::vector<Token> toks = tokenize(text);
    if (toks.empty()) fail(ErrorKind::Parse, "empty expression");
    std::vector<TermTokens> terms(1);
    for (const Token& t : toks) {
        if (t.text == "+") {
            if (terms.back().factors.empty()) bad_token(t, "misplaced");
            terms.emplace_back();
        } else {
            terms.back().factors.push_back(t);
        }
    }
    if (terms.back().factors.empty())
        fail(ErrorKind::Parse, "expression ends with '+'");
    return terms;
}

bool is_zero_literal(const std::vector<TermTokens>& terms) {
    return terms.size() == 1 && terms[0].factors.size() == 1 &&
           terms[0].factors[0].text == "0";
}

// Scalar factors shared by all grammars; returns false if not a scalar token.
bool scalar_factor(const Token& t, MRPoly& acc) {
    auto [base, e] = split_exponent(t);
    if (base == "1") {
        if (t.text != "1") bad_token(t, "malformed token");
        return true;
    }
    if (base == "t") {
        acc *= MRPoly::t(e);
        return true;
    }
    if (base == "r") {
        acc *= MRPoly::r(e);
        return true;
    }
    return false;
}

}  // namespace

MRPoly parse_poly(const std::string& text) {
    std::vector<TermTokens> terms = split_terms(text);
    if (is_zero_literal(terms)) return MRPoly::zero();
    MRPoly out;
    for (const TermTokens& term : terms) {
        MRPoly s = MRPoly::one();
        for (const Token& t : term.factors) {
            if (!scalar_factor(t, s)) bad_token(t, "unexpected token");
        }
        out += s;
    }
    return out;
}

DualElement parse_dual(const std::string& text) {
    std::vector<TermTokens> terms = split_terms(text);
    if (is_zero_literal(terms)) return DualElement::zero();
    DualElement out;
    for (const TermTokens& term : terms) {
        MRPoly s = MRPoly::one();
        RawMono raw;
        for (const Token& t : term.factors) {
            if (scalar_factor(t, s)) continue;
            auto [base, e] = split_exponent(t);
            if (base.size() >= 2 && base[0] == 'T') {
                uint32_t n = parse_number(t, base.substr(1));
                if (raw.tau.size() <= n) raw.tau.resize(n + 1, 0);
                raw.tau[n] += e;
            } else if (base.size() >= 2 && base[0] == 'X') {
                uint32_t n = parse_number(t, base.substr(1));
                if (n == 0) bad_token(t, "unexpected token");
                if (raw.xi.size() < n) raw.xi.resize(n, 0);
                raw.xi[n - 1] = static_cast<uint8_t>(raw.xi[n - 1] + e);
            } else {
                bad_token(t, "unexpected token");
            }
        }
        out += normalize(raw, s);
    }
    return out;
}

SteenrodElt parse_milnor(const std::string& text) {
    std::vector<TermTokens> terms = split_terms(text);
    if (is_zero_literal(terms)) return SteenrodElt::zero();
    SteenrodElt out;
    for (const TermTokens& term : terms) {
        MRPoly s = MRPoly::one();
        Mono m;
        bool have_p = false;
        for (const Token& t : term.factors) {
            if (scalar_factor(t, s)) continue;
            if (t.text.size() >= 2 && t.text[0] == 'Q') {
                uint32_t n = parse_number(t, t.text.substr(1));
                if (n >= 31) bad_token(t, "number out of range in");
                if (m.tau >> n & 1) bad_token(t, "repeated factor");
                m.tau |= 1u << n;
            } else if (t.text.size() >= 2 && t.text[0] == 'P') {
                if (have_p) bad_token(t, "repeated factor");
                have_p = true;
                if (t.text[1] == '(') {
                    if (t.text.back() != ')') bad_token(t, "malformed token");
                    std::string body = t.text.substr(2, t.text.size() - 3);
                    std::string cur;
                    for (char c : body + ",") {
                        if (c == ',') {
                            m.xi.push_back(static_cast<uint8_t>(parse_number(t, cur)));
                            cur.clear();
                        } else {
                            cur += c;
                        }
                    }
                } else {
                    uint32_t e = parse_number(t, t.text.substr(1));
                    if (e == 0) bad_token(t, "malformed token");
                    m.xi.push_back(static_cast<uint8_t>(e));
                }
            } else {
                bad_token(t, "unexpected token");
            }
        }
        m.trim();
        out += SteenrodElt(m, s);
    }
    return out;
}

// --------------------------------------------------------------- module --

std::string module_render(const FreeModule& m) {
    std::ostringstream os;
    for (const auto& b : m.basis) os << "basis " << b.name << " " << to_string(b.coh) << "\n";
    for (int gen = 0; gen < kGenCount; ++gen) {
        for (size_t i = 0; i < m.basis.size(); ++i) {
            const ModElt* v = m.action_on(gen, static_cast<int>(i));
            if (!v || v->empty()) continue;
            os << gen_name(gen) << " " << m.basis[i].name << " = " << render(m, *v) << "\n";
        }
    }
    return os.str();
}

std::string coaction_render(const FreeModule& m, const Coaction& c) {
    std::ostringstream os;
    for (size_t i = 0; i < m.basis.size(); ++i) {
        std::vector<std::string> terms;
        if (i < c.co.size()) {
            for (const auto& [tgt, elt] : c.co[i]) {
                for (const auto& [mono, poly] : elt.terms()) {
                    const std::string name = render(mono);
                    for (const MRMonomial& cm : poly.terms())
                        terms.push_back(prefixed(cm, name) + " | " + m.basis[tgt].name);
                }
            }
        }
        os << "psi " << m.basis[i].name << " = " << join_terms(terms) << "\n";
    }
    return os.str();
}

namespace {

using nlohmann::ordered_json;

ordered_json parse_json(const std::string& text) {
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded()) fail(ErrorKind::Parse, "malformed JSON");
    return j;
}

}  // namespace

FreeModule module_from_json(const Ctx& ctx, const std::string& text) {
    ordered_json j = parse_json(text);
    if (!j.is_object() || !j.contains("basis") || !j["basis"].is_array())
        fail(ErrorKind::Input, "module file needs a \"basis\" array");
    FreeModule m;
    for (const auto& b : j["basis"]) {
        if (!b.is_object() || !b.contains("name") || !b.contains("degree") ||
            !b["degree"].is_array() || b["degree"].size() != 2)
            fail(ErrorKind::Input, "basis entries need \"name\" and \"degree\" [i,j]");
        m.add_basis(b["name"].get<std::string>(),
                    {b["degree"][0].get<int>(), b["degree"][1].get<int>()});
    }
    if (j.contains("action")) {
        if (!j["action"].is_object()) fail(ErrorKind::Input, "\"action\" must be an object");
        for (const auto& [genname, table] : j["action"].items()) {
            int gen = gen_index(genname);
            if (gen < 0)
                fail(ErrorKind::Input, "unknown generator '" + genname + "' in action");
            if (!table.is_object())
                fail(ErrorKind::Input, "action." + genname + " must be an object");
            for (const auto& [src, pairs] : table.items()) {
                int i = m.require(src);
                ModElt v;
                if (!pairs.is_array())
                    fail(ErrorKind::Input, "action entries must be arrays of pairs");
                for (const auto& p : pairs) {
                    if (!p.is_array() || p.size() != 2)
                        fail(ErrorKind::Input, "action terms must be [coefficient, target]");
                    int tgt = m.require(p[1].get<std::string>());
                    MRPoly c = parse_poly(p[0].get<std::string>());
                    v[tgt] = v.count(tgt) ? v[tgt] + c : c;
                }
                m.set_action(gen, i, v);
            }
        }
    }
    validate(ctx, m);
    return m;
}

bool json_has_coaction(const std::string& text) {
    ordered_json j = parse_json(text);
    return j.is_object() && j.contains("coaction");
}

Coaction coaction_from_json(const Ctx& ctx, const FreeModule& m, const std::string& text) {
    ordered_json j = parse_json(text);
    if (!j.is_object() || !j.contains("coaction") || !j["coaction"].is_object())
        fail(ErrorKind::Input, "file has no \"coaction\" object");
    Coaction c;
    c.co.resize(m.basis.size());
    for (const auto& [src, pairs] : j["coaction"].items()) {
        int i = m.require(src);
        if (!pairs.is_array())
            fail(ErrorKind::Input, "coaction entries must be arrays of pairs");
        for (const auto& p : pairs) {
            if (!p.is_array() || p.size() != 2)
                fail(ErrorKind::Input, "coaction terms must be [coefficient, target]");
            int tgt = m.require(p[1].get<std::string>());
            DualElement e = parse_dual(p[0].get<std::string>());
            c.co[i][tgt] += e;
        }
    }
    for (auto& row : c.co) {
        for (auto it = row.begin(); it != row.end();) {
            it = it->second.is_zero() ? row.erase(it) : std::next(it);
        }
    }
    (void)ctx;
    return c;
}

namespace {

ordered_json module_json_body(const FreeModule& m) {
    ordered_json j;
    j["basis"] = ordered_json::array();
    for (const auto& b : m.basis)
        j["basis"].push_back({{"name", b.name}, {"degree", {b.coh.s, b.coh.w}}});
    ordered_json action = ordered_json::object();
    for (int gen = 0; gen < kGenCount; ++gen) {
        ordered_json table = ordered_json::object();
        for (size_t i = 0; i < m.basis.size(); ++i) {
            const ModElt* v = m.action_on(gen, static_cast<int>(i));
            if (!v || v->empty()) continue;
            ordered_json pairs = ordered_json::array();
            for (const auto& [tgt, poly] : *v)
                pairs.push_back({render(poly), m.basis[tgt].name});
            table[m.basis[i].name] = pairs;
        }
        if (!table.empty()) action[gen_name(gen)] = table;
    }
    j["action"] = action;
    return j;
}

}  // namespace

std::string module_to_json(const FreeModule& m) {
    return module_json_body(m).dump(2) + "\n";
}

std::string module_to_json(const FreeModule& m, const Coaction& c) {
    ordered_json j = module_json_body(m);
    ordered_json co = ordered_json::object();
    for (size_t i = 0; i < c.co.size() && i < m.basis.size(); ++i) {
        ordered_json pairs = ordered_json::array();
        for (const auto& [tgt, elt] : c.co[i]) {
            for (const auto& [mono, poly] : elt.terms()) {
                const std::string name = render(mono);
                for (const MRMonomial& cm : poly.terms())
                    pairs.push_back({prefixed(cm, name), m.basis[tgt].name});
            }
        }
        if (!pairs.empty()) co[m.basis[i].name] = pairs;
    }
    j["coaction"] = co;
    return j.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::Input, "cannot open '" + path + "'");
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::Input, "cannot write '" + path + "'");
    out << text;
}

FreeModule load_module(const Ctx& ctx, const std::string& path) {
    return module_from_json(ctx, read_file(path));
}

}  // namespace rmot

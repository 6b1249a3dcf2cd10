#include "rmotivic.h"

#include <cstdlib>
#include <cstring>
#include <sstream>

#include "json.hpp"
#include "rmot/a1.hpp"
#include "rmot/textio.hpp"

using nlohmann::ordered_json;

struct rmot_ctx {
    rmot::Ctx ctx;
    std::string last_error;
};

namespace {

char* dup_string(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (p) std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

rmot_status to_status(rmot::ErrorKind k) {
    switch (k) {
        case rmot::ErrorKind::Parse:
        case rmot::ErrorKind::Bound:
        case rmot::ErrorKind::Input:
            return RMOT_INPUT_ERROR;
        case rmot::ErrorKind::Verify:
            return RMOT_VERIFY_FAIL;
        case rmot::ErrorKind::Internal:
            return RMOT_INTERNAL_ERROR;
    }
    return RMOT_INTERNAL_ERROR;
}

// Runs f(text), which returns a status and fills the output text; converts
// exceptions to statuses and copies the text out.
template <class F>
rmot_status wrap(rmot_ctx* c, char** out, F&& f) {
    if (!c) return RMOT_INTERNAL_ERROR;
    if (out) *out = nullptr;
    c->last_error.clear();
    try {
        std::string text;
        rmot_status st = f(text);
        if (out && !text.empty()) *out = dup_string(text);
        if (st != RMOT_OK && c->last_error.empty()) c->last_error = text;
        return st;
    } catch (const rmot::Error& e) {
        c->last_error = e.what();
        return to_status(e.kind());
    } catch (const std::exception& e) {
        c->last_error = e.what();
        return RMOT_INTERNAL_ERROR;
    }
}

const char* realization_label(const std::optional<rmot::Realization>& r) {
    return r ? rmot::realization_name(*r) : "-";
}

}  // namespace

extern "C" {

rmot_ctx* rmot_ctx_new(int degree_bound) {
    auto* c = new (std::nothrow) rmot_ctx;
    if (c && degree_bound > 0) c->ctx.degree_bound = degree_bound;
    return c;
}

void rmot_ctx_free(rmot_ctx* ctx) { delete ctx; }

const char* rmot_last_error(const rmot_ctx* ctx) {
    return ctx ? ctx->last_error.c_str() : "";
}

void rmot_string_free(char* s) { std::free(s); }

rmot_status rmot_dual_normalize(rmot_ctx* ctx, const char* expr, char** out) {
    return wrap(ctx, out, [&](std::string& text) {
        text = rmot::render(rmot::parse_dual(expr));
        return RMOT_OK;
    });
}

rmot_status rmot_dual_mul(rmot_ctx* ctx, const char* a, const char* b, char** out) {
    return wrap(ctx, out, [&](std::string& text) {
        text = rmot::render(rmot::ds_mul(rmot::parse_dual(a), rmot::parse_dual(b)));
        return RMOT_OK;
    });
}

rmot_status rmot_dual_coproduct(rmot_ctx* ctx, const char* expr, char** out) {
    return wrap(ctx, out, [&](std::string& text) {
        text = rmot::render(rmot::coproduct(rmot::parse_dual(expr)));
        return RMOT_OK;
    });
}

rmot_status rmot_dual_conjugate(rmot_ctx* ctx, const char* expr, char** out) {
    return wrap(ctx, out, [&](std::string& text) {
        text = rmot::render(rmot::conjugate(rmot::parse_dual(expr)));
        return RMOT_OK;
    });
}

rmot_status rmot_milnor_pair(rmot_ctx* ctx, const char* dual_expr, const char* op_expr,
                             char** out) {
    return wrap(ctx, out, [&](std::string& text) {
        text = rmot::render(
            rmot::pair(rmot::parse_dual(dual_expr), rmot::parse_milnor(op_expr)));
        return RMOT_OK;
    });
}

rmot_status rmot_milnor_product(rmot_ctx* ctx, const char* a, const char* b, char** out) {
    return wrap(ctx, out, [&](std::string& text) {
        text = rmot::render(
            rmot::product(ctx->ctx, rmot::parse_milnor(a), rmot::parse_milnor(b)));
        return RMOT_OK;
    });
}

rmot_status rmot_table1_verify(rmot_ctx* ctx, int fmt, char** report) {
    return wrap(ctx, report, [&](std::string& text) {
        const auto& table = rmot::op_table();
        auto checks = rmot::op_table_verify(ctx->ctx);
        int passed = 0;
        for (const auto& ck : checks)
            if (ck.conj_ok && ck.gword_ok) ++passed;
        const int total = static_cast<int>(checks.size());
        if (fmt == 1) {
            ordered_json j;
            j["rows"] = ordered_json::array();
            for (size_t i = 0; i < checks.size(); ++i) {
                j["rows"].push_back({{"degree", {table[i].degree.s, table[i].degree.w}},
                                     {"monomial", rmot::render(table[i].basis)},
                                     {"conjugate_ok", checks[i].conj_ok},
                                     {"gword_ok", checks[i].gword_ok}});
            }
            j["passed"] = passed;
            j["total"] = total;
            text = j.dump(2) + "\n";
        } else {
            std::ostringstream os;
            for (size_t i = 0; i < checks.size(); ++i) {
                bool ok = checks[i].conj_ok && checks[i].gword_ok;
                os << rmot::to_string(table[i].degree) << " "
                   << rmot::render(table[i].basis) << ": " << (ok ? "PASS" : "FAIL");
                if (!ok) {
                    os << " (";
                    if (!checks[i].conj_ok) os << "conjugate";
                    if (!checks[i].conj_ok && !checks[i].gword_ok) os << ", ";
                    if (!checks[i].gword_ok) os << "generator word";
                    os << ")";
                }
                os << "\n";
            }
            os << passed << "/" << total << " rows verified\n";
            text = os.str();
        }
        return passed == total ? RMOT_OK : RMOT_VERIFY_FAIL;
    });
}

rmot_status rmot_chi_check(rmot_ctx* ctx, int fmt, char** report) {
    return wrap(ctx, report, [&](std::string& text) {
        rmot::ChiReport r = rmot::chi_check(ctx->ctx);
        const bool eps_ok = r.eps == 1;
        const bool triple_ok = r.delta == 0 && r.eps2 == 1 && r.lambda == 1;
        const bool all = r.comm_sq1_ok && r.comm_sq2_ok && r.comm_sq4_ok && eps_ok &&
                         triple_ok && r.chi_ok;
        if (fmt == 1) {
            ordered_json j;
            j["commutator_sq1_ok"] = r.comm_sq1_ok;
            j["commutator_sq2_ok"] = r.comm_sq2_ok;
            j["commutator_sq4_ok"] = r.comm_sq4_ok;
            j["eps"] = r.eps;
            j["delta"] = r.delta;
            j["eps2"] = r.eps2;
            j["lambda"] = r.lambda;
            j["chi_ok"] = r.chi_ok;
            j["ok"] = all;
            text = j.dump(2) + "\n";
        } else {
            std::ostringstream os;
            auto line = [&os](const char* name, bool ok) {
                os << name << ": " << (ok ? "PASS" : "FAIL") << "\n";
            };
            line("commutator [t, Sq1]", r.comm_sq1_ok);
            line("commutator [t, Sq2]", r.comm_sq2_ok);
            line("commutator [t, Sq4]", r.comm_sq4_ok);
            line("forced eps = 1", eps_ok);
            os << "forced (delta, eps, lambda) = (" << r.delta << ", " << r.eps2 << ", "
               << r.lambda << "): " << (triple_ok ? "PASS" : "FAIL") << "\n";
            line("antipode consistency", r.chi_ok);
            text = os.str();
        }
        return all ? RMOT_OK : RMOT_VERIFY_FAIL;
    });
}

rmot_status rmot_module_comodule(rmot_ctx* ctx, const char* module_json, int fmt,
                                 char** out) {
    return wrap(ctx, out, [&](std::string& text) {
        rmot::FreeModule m = rmot::module_from_json(ctx->ctx, module_json);
        rmot::Coaction co = rmot::comodule_from_action(ctx->ctx, m);
        text = fmt == 1 ? rmot::module_to_json(m, co) : rmot::coaction_render(m, co);
        return RMOT_OK;
    });
}

rmot_status rmot_module_dualize(rmot_ctx* ctx, const char* module_json, int fmt,
                                char** out) {
    return wrap(ctx, out, [&](std::string& text) {
        rmot::FreeModule m = rmot::module_from_json(ctx->ctx, module_json);
        rmot::FreeModule d = rmot::dualize(ctx->ctx, m);
        text = fmt == 1 ? rmot::module_to_json(d) : rmot::module_render(d);
        return RMOT_OK;
    });
}

rmot_status rmot_module_roundtrip(rmot_ctx* ctx, const char* module_json, int fmt,
                                  char** out) {
    return wrap(ctx, out, [&](std::string& text) {
        rmot::FreeModule m = rmot::module_from_json(ctx->ctx, module_json);
        rmot::Coaction co = rmot::comodule_from_action(ctx->ctx, m);
        bool ok = rmot::action_from_comodule(ctx->ctx, m, co) == m;
        if (fmt == 1) {
            ordered_json j;
            j["ok"] = ok;
            text = j.dump(2) + "\n";
        } else {
            text = ok ? "roundtrip ok\n" : "roundtrip mismatch\n";
        }
        return ok ? RMOT_OK : RMOT_VERIFY_FAIL;
    });
}

rmot_status rmot_module_iso(rmot_ctx* ctx, const char* a_json, const char* b_json,
                            int fmt, char** out) {
    return wrap(ctx, out, [&](std::string& text) {
        rmot::FreeModule a = rmot::module_from_json(ctx->ctx, a_json);
        rmot::FreeModule b = rmot::module_from_json(ctx->ctx, b_json);
        auto w = rmot::iso_test(ctx->ctx, a, b);
        if (fmt == 1) {
            ordered_json j;
            j["isomorphic"] = w.has_value();
            j["identity"] = w && w->identity;
            if (w && !w->identity) {
                ordered_json map = ordered_json::object();
                for (size_t i = 0; i < a.basis.size(); ++i)
                    map[a.basis[i].name] = rmot::render(b, w->images[i]);
                j["map"] = map;
            }
            text = j.dump(2) + "\n";
        } else {
            std::ostringstream os;
            if (!w) {
                os << "not isomorphic\n";
            } else if (w->identity) {
                os << "isomorphic (identity)\n";
            } else {
                os << "isomorphic\n";
                for (size_t i = 0; i < a.basis.size(); ++i)
                    os << "map " << a.basis[i].name << " = "
                       << rmot::render(b, w->images[i]) << "\n";
            }
            text = os.str();
        }
        return w ? RMOT_OK : RMOT_VERIFY_FAIL;
    });
}

rmot_status rmot_census(rmot_ctx* ctx, int mode, int exhaustive, int fmt, char** out) {
    return wrap(ctx, out, [&](std::string& text) {
        if (mode < 0 || mode > 3)
            rmot::fail(rmot::ErrorKind::Input, "census mode must be 0..3");
        if (mode == 3) {
            rmot::FullVerifyResult res =
                rmot::census_full_verify(ctx->ctx, exhaustive != 0);
            if (fmt == 1) {
                ordered_json j;
                j["checked"] = res.checked;
                j["passed"] = res.passed;
                j["exhaustive"] = exhaustive != 0;
                j["failures"] = res.failures;
                text = j.dump(2) + "\n";
            } else {
                std::ostringstream os;
                for (const auto& f : res.failures) os << "FAIL " << f << "\n";
                os << res.passed << "/" << res.checked << " verified\n";
                text = os.str();
            }
            return res.passed == res.checked && res.failures.empty() ? RMOT_OK
                                                                     : RMOT_VERIFY_FAIL;
        }
        auto rows = rmot::census_rows(ctx->ctx);
        if (mode == 2) {
            int y21 = 0, yh1 = 0;
            for (const auto& row : rows) {
                if (!row.self_dual) continue;
                if (row.realization && *row.realization == rmot::Realization::Y21)
                    ++y21;
                else
                    ++yh1;
            }
            if (fmt == 1) {
                ordered_json j;
                j["Y(2,1)"] = y21;
                j["Y(h,1)"] = yh1;
                text = j.dump(2) + "\n";
            } else {
                std::ostringstream os;
                os << "Y(2,1): " << y21 << "  Y(h,1): " << yh1 << "\n";
                text = os.str();
            }
            return RMOT_OK;
        }
        if (fmt == 1) {
            ordered_json j;
            j["rows"] = ordered_json::array();
            for (const auto& row : rows) {
                if (mode == 1 && !row.self_dual) continue;
                ordered_json o;
                o["bits"] = row.v.bits();
                o["vector"] = {row.v.a03, row.v.b03, row.v.b14, row.v.b06,
                               row.v.b25, row.v.b26, row.v.g36};
                o["self_dual"] = row.self_dual;
                o["j24"] = row.j24;
                o["delta_bits"] = rmot::delta_dual(row.v).bits();
                if (row.realization)
                    o["realization"] = rmot::realization_name(*row.realization);
                else
                    o["realization"] = nullptr;
                j["rows"].push_back(o);
            }
            text = j.dump(2) + "\n";
        } else {
            std::ostringstream os;
            for (const auto& row : rows) {
                if (mode == 1 && !row.self_dual) continue;
                os << row.v.label() << " " << (row.self_dual ? "self-dual" : "-        ")
                   << " delta=" << rmot::delta_dual(row.v).label() << " "
                   << realization_label(row.realization) << "\n";
            }
            text = os.str();
        }
        return RMOT_OK;
    });
}

rmot_status rmot_census_emit(rmot_ctx* ctx, int bits, char** out) {
    return wrap(ctx, out, [&](std::string& text) {
        if (bits < 0 || bits > 127)
            rmot::fail(rmot::ErrorKind::Input, "catalog index must be 0..127");
        rmot::StructureVector v =
            rmot::StructureVector::from_bits(static_cast<uint8_t>(bits));
        rmot::FreeModule m = rmot::build_a1(ctx->ctx, v);
        text = rmot::module_to_json(m, rmot::a1_coaction(ctx->ctx, v));
        return RMOT_OK;
    });
}

}  // extern "C"

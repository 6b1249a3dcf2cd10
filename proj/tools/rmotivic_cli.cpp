#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "rmotivic.h"

namespace {

struct Cli {
    int bound = 0;             // 0 = library default
    std::string format = "text";
    rmot_ctx* ctx = nullptr;
    int exit_code = 0;

    ~Cli() {
        if (ctx) rmot_ctx_free(ctx);
    }

    int fmt() const { return format == "json" ? 1 : 0; }

    rmot_ctx* get() {
        if (!ctx) ctx = rmot_ctx_new(bound);
        return ctx;
    }
};

int status_exit(rmot_status st) {
    switch (st) {
        case RMOT_OK: return 0;
        case RMOT_VERIFY_FAIL: return 1;
        case RMOT_INPUT_ERROR: return 2;
        case RMOT_INTERNAL_ERROR: return 3;
    }
    return 3;
}

void print_out(const char* out) {
    if (!out || !*out) return;
    fputs(out, stdout);
    if (out[std::strlen(out) - 1] != '\n') fputc('\n', stdout);
}

// Prints the result (if any), reports errors, records the exit code.
void finish(Cli& cli, rmot_status st, char* out) {
    print_out(out);
    if (st != RMOT_OK && (!out || !*out))
        fprintf(stderr, "error: %s\n", rmot_last_error(cli.ctx));
    rmot_string_free(out);
    cli.exit_code = status_exit(st);
}

// Element operations return one expression string; JSON mode wraps it.
void finish_expr(Cli& cli, rmot_status st, char* out) {
    if (st == RMOT_OK && cli.fmt() == 1 && out) {
        std::string text(out);
        while (!text.empty() && text.back() == '\n') text.pop_back();
        nlohmann::ordered_json j;
        j["result"] = text;
        print_out(j.dump(2).c_str());
        rmot_string_free(out);
        cli.exit_code = 0;
        return;
    }
    finish(cli, st, out);
}

std::string read_file_or_die(Cli& cli, const std::string& path, bool& ok) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        fprintf(stderr, "error: cannot open '%s'\n", path.c_str());
        cli.exit_code = 2;
        ok = false;
        return {};
    }
    std::ostringstream os;
    os << in.rdbuf();
    ok = true;
    return os.str();
}

bool write_file_or_die(Cli& cli, const std::string& path, const char* text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << (text ? text : ""))) {
        fprintf(stderr, "error: cannot write '%s'\n", path.c_str());
        cli.exit_code = 2;
        return false;
    }
    return true;
}

// Module subcommands print a summary (or JSON with --format json) and
// optionally write the JSON result to a file.
template <class F>
void run_module_op(Cli& cli, const std::string& path, const std::string& out_path, F op) {
    bool ok = false;
    std::string json = read_file_or_die(cli, path, ok);
    if (!ok) return;
    char* out = nullptr;
    rmot_status st = op(cli.get(), json.c_str(), cli.fmt(), &out);
    finish(cli, st, out);
    if (cli.exit_code == 0 && !out_path.empty()) {
        char* file_text = nullptr;
        st = op(cli.get(), json.c_str(), 1, &file_text);
        if (st == RMOT_OK) {
            if (!write_file_or_die(cli, out_path, file_text)) {
                rmot_string_free(file_text);
                return;
            }
        } else {
            cli.exit_code = status_exit(st);
        }
        rmot_string_free(file_text);
    }
}

}  // namespace

int main(int argc, char** argv) {
    Cli cli;
    if (const char* env = std::getenv("RMOTIVIC_DEGREE_BOUND")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (!end || *end != '\0' || v <= 0 || v > 64) {
            fprintf(stderr, "error: invalid RMOTIVIC_DEGREE_BOUND '%s'\n", env);
            return 2;
        }
        cli.bound = static_cast<int>(v);
    }

    CLI::App app{"R-motivic Steenrod algebra calculator"};
    app.require_subcommand(1);
    app.fallthrough();
    app.add_option("--bound", cli.bound,
                   "degree bound on enumerated grades (default 16)");
    app.add_option("--format", cli.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));

    // dual-algebra --------------------------------------------------------
    auto* dual = app.add_subcommand("dual-algebra", "dual Steenrod algebra");
    dual->require_subcommand(1);
    static std::string expr_a, expr_b;

    auto* d_norm = dual->add_subcommand("normalize", "rewrite to the monomial basis");
    d_norm->add_option("expr", expr_a, "element")->required();
    d_norm->callback([&] {
        char* out = nullptr;
        rmot_status st = rmot_dual_normalize(cli.get(), expr_a.c_str(), &out);
        finish_expr(cli, st, out);
    });

    auto* d_mul = dual->add_subcommand("mul", "multiply two elements");
    d_mul->add_option("a", expr_a, "left factor")->required();
    d_mul->add_option("b", expr_b, "right factor")->required();
    d_mul->callback([&] {
        char* out = nullptr;
        rmot_status st = rmot_dual_mul(cli.get(), expr_a.c_str(), expr_b.c_str(), &out);
        finish_expr(cli, st, out);
    });

    auto* d_cop = dual->add_subcommand("coproduct", "coproduct in the tensor square");
    d_cop->add_option("expr", expr_a, "element")->required();
    d_cop->callback([&] {
        char* out = nullptr;
        rmot_status st = rmot_dual_coproduct(cli.get(), expr_a.c_str(), &out);
        finish_expr(cli, st, out);
    });

    auto* d_conj = dual->add_subcommand("conjugate", "apply the conjugation");
    d_conj->add_option("expr", expr_a, "element")->required();
    d_conj->callback([&] {
        char* out = nullptr;
        rmot_status st = rmot_dual_conjugate(cli.get(), expr_a.c_str(), &out);
        finish_expr(cli, st, out);
    });

    // milnor ---------------------------------------------------------------
    auto* milnor = app.add_subcommand("milnor", "Steenrod algebra, Milnor basis");
    milnor->require_subcommand(1);

    auto* m_pair = milnor->add_subcommand("pair", "Kronecker pairing");
    m_pair->add_option("element", expr_a, "dual-algebra element")->required();
    m_pair->add_option("operation", expr_b, "Milnor-basis operation")->required();
    m_pair->callback([&] {
        char* out = nullptr;
        rmot_status st = rmot_milnor_pair(cli.get(), expr_a.c_str(), expr_b.c_str(), &out);
        finish_expr(cli, st, out);
    });

    auto* m_prod = milnor->add_subcommand("product", "compose two operations");
    m_prod->add_option("a", expr_a, "outer operation")->required();
    m_prod->add_option("b", expr_b, "inner operation")->required();
    m_prod->callback([&] {
        char* out = nullptr;
        rmot_status st =
            rmot_milnor_product(cli.get(), expr_a.c_str(), expr_b.c_str(), &out);
        finish_expr(cli, st, out);
    });

    auto* m_table = milnor->add_subcommand(
        "table1-verify", "check the operation table against the algebra");
    m_table->callback([&] {
        char* out = nullptr;
        rmot_status st = rmot_table1_verify(cli.get(), cli.fmt(), &out);
        finish(cli, st, out);
    });

    auto* m_chi = milnor->add_subcommand("chi-check", "antipode consistency report");
    m_chi->callback([&] {
        char* out = nullptr;
        rmot_status st = rmot_chi_check(cli.get(), cli.fmt(), &out);
        finish(cli, st, out);
    });

    // module ----------------------------------------------------------------
    auto* module = app.add_subcommand("module", "free module operations");
    module->require_subcommand(1);
    static std::string file_a, file_b, out_path;

    auto* mo_com = module->add_subcommand("comodule", "derive the coaction");
    mo_com->add_option("file", file_a, "module JSON file")->required();
    mo_com->add_option("-o,--output", out_path, "write module+coaction JSON here");
    mo_com->callback([&] {
        run_module_op(cli, file_a, out_path, rmot_module_comodule);
    });

    auto* mo_dual = module->add_subcommand("dualize", "dual module");
    mo_dual->add_option("file", file_a, "module JSON file")->required();
    mo_dual->add_option("-o,--output", out_path, "write dual module JSON here");
    mo_dual->callback([&] {
        run_module_op(cli, file_a, out_path, rmot_module_dualize);
    });

    auto* mo_rt = module->add_subcommand("roundtrip",
                                         "action -> coaction -> action check");
    mo_rt->add_option("file", file_a, "module JSON file")->required();
    mo_rt->callback([&] { run_module_op(cli, file_a, "", rmot_module_roundtrip); });

    auto* mo_iso = module->add_subcommand("iso", "graded isomorphism search");
    mo_iso->add_option("a", file_a, "module JSON file")->required();
    mo_iso->add_option("b", file_b, "module JSON file")->required();
    mo_iso->callback([&] {
        bool ok_a = false, ok_b = false;
        std::string ja = read_file_or_die(cli, file_a, ok_a);
        if (!ok_a) return;
        std::string jb = read_file_or_die(cli, file_b, ok_b);
        if (!ok_b) return;
        char* out = nullptr;
        rmot_status st =
            rmot_module_iso(cli.get(), ja.c_str(), jb.c_str(), cli.fmt(), &out);
        finish(cli, st, out);
    });

    // census ------------------------------------------------------------------
    auto* census = app.add_subcommand("census", "the 128-member catalog");
    bool f_selfdual = false, f_real = false, f_verify = false, f_exhaustive = false;
    int emit_bits = -1;
    auto* o_sd = census->add_flag("--self-dual", f_selfdual, "only self-dual rows");
    auto* o_re = census->add_flag("--realizations", f_real, "realization counts");
    auto* o_fv = census->add_flag("--full-verify", f_verify, "verify all 128 members");
    census->add_flag("--exhaustive", f_exhaustive,
                     "with --full-verify: all-pairs isomorphism sweep");
    auto* o_em = census->add_option("--emit", emit_bits,
                                    "print module+coaction JSON for one member")
                     ->check(CLI::Range(0, 127));
    o_sd->excludes(o_re)->excludes(o_fv)->excludes(o_em);
    o_re->excludes(o_fv)->excludes(o_em);
    o_fv->excludes(o_em);
    census->callback([&] {
        char* out = nullptr;
        rmot_status st;
        if (emit_bits >= 0) {
            st = rmot_census_emit(cli.get(), emit_bits, &out);
        } else {
            int mode = f_verify ? 3 : f_real ? 2 : f_selfdual ? 1 : 0;
            st = rmot_census(cli.get(), mode, f_exhaustive ? 1 : 0, cli.fmt(), &out);
        }
        finish(cli, st, out);
    });

    CLI11_PARSE(app, argc, argv);
    return cli.exit_code;
}

#include <cstring>
#include <string>

#include "doctest.h"
#include "rmotivic.h"

// The C interface is exercised as a black box: only rmotivic.h, no core
// headers.  Module inputs are inline JSON matching the fixture files.

namespace {

const char* SMOD2 = R"({
  "basis": [
    {"name": "x00", "degree": [0, 0]},
    {"name": "x10", "degree": [1, 0]}
  ],
  "action": {
    "Sq1": {"x00": [["1", "x10"]]},
    "Sq2": {"x00": [["r", "x10"]]}
  }
})";

const char* SMODH = R"({
  "basis": [
    {"name": "x00", "degree": [0, 0]},
    {"name": "x10", "degree": [1, 0]}
  ],
  "action": {
    "Sq1": {"x00": [["1", "x10"]]}
  }
})";

struct CtxGuard {
    rmot_ctx* ctx;
    explicit CtxGuard(int bound = 0) : ctx(rmot_ctx_new(bound)) {}
    ~CtxGuard() { rmot_ctx_free(ctx); }
};

struct OutGuard {
    char* s = nullptr;
    ~OutGuard() { rmot_string_free(s); }
    std::string str() const { return s ? std::string(s) : std::string(); }
};

}  // namespace

TEST_CASE("context lifecycle and error channel") {
    CtxGuard g(0);
    REQUIRE(g.ctx != nullptr);
    CHECK(std::string(rmot_last_error(g.ctx)) == "");
    CHECK(std::string(rmot_last_error(nullptr)) == "");

    OutGuard out;
    CHECK(rmot_dual_mul(nullptr, "T0", "T0", &out.s) == RMOT_INTERNAL_ERROR);
    CHECK(out.s == nullptr);

    rmot_string_free(nullptr);  // must be a no-op
}

TEST_CASE("element operations return canonical text") {
    CtxGuard g;
    {
        OutGuard out;
        REQUIRE(rmot_dual_mul(g.ctx, "T0", "T0", &out.s) == RMOT_OK);
        CHECK(out.str() == "t X1 + r T0 X1 + r T1");
    }
    {
        OutGuard out;
        REQUIRE(rmot_dual_normalize(g.ctx, "T0^3", &out.s) == RMOT_OK);
        CHECK(out.str() == "t T0 X1 + t r X1^2 + r T0 T1 + r^2 T0 X1^2 + r^2 T1 X1");
    }
    {
        OutGuard out;
        REQUIRE(rmot_dual_coproduct(g.ctx, "X1", &out.s) == RMOT_OK);
        CHECK(out.str() == "X1 | 1 + 1 | X1");
    }
    {
        OutGuard out;
        REQUIRE(rmot_dual_conjugate(g.ctx, "T1", &out.s) == RMOT_OK);
        CHECK(out.str() == "T0 X1 + T1");
    }
    {
        OutGuard out;
        REQUIRE(rmot_milnor_pair(g.ctx, "T0", "Q0", &out.s) == RMOT_OK);
        CHECK(out.str() == "1");
    }
    {
        OutGuard out;
        REQUIRE(rmot_milnor_product(g.ctx, "P3", "P1", &out.s) == RMOT_OK);
        CHECK(out.str() == "P(1,1) + t Q0 Q1 P2");
    }
}

TEST_CASE("input errors set last_error and leave out null") {
    CtxGuard g;
    OutGuard out;
    CHECK(rmot_dual_mul(g.ctx, "T0", "Zq", &out.s) == RMOT_INPUT_ERROR);
    CHECK(out.s == nullptr);
    CHECK(std::string(rmot_last_error(g.ctx)) == "unexpected token 'Zq' at offset 0");

    // a later success clears the stored message
    REQUIRE(rmot_dual_mul(g.ctx, "T0", "T0", &out.s) == RMOT_OK);
    CHECK(std::string(rmot_last_error(g.ctx)) == "");
}

TEST_CASE("degree bound is enforced per context") {
    CtxGuard g(4);
    OutGuard out;
    CHECK(rmot_milnor_product(g.ctx, "P4", "P4", &out.s) == RMOT_INPUT_ERROR);
    CHECK(out.s == nullptr);
    CHECK(std::string(rmot_last_error(g.ctx)).find("degree bound exceeded") == 0);
}

TEST_CASE("operation table report") {
    CtxGuard g;
    {
        OutGuard out;
        REQUIRE(rmot_table1_verify(g.ctx, 0, &out.s) == RMOT_OK);
        std::string rep = out.str();
        CHECK(rep.find("18/18 rows verified") != std::string::npos);
        CHECK(rep.find("FAIL") == std::string::npos);
    }
    {
        OutGuard out;
        REQUIRE(rmot_table1_verify(g.ctx, 1, &out.s) == RMOT_OK);
        std::string rep = out.str();
        CHECK(rep.front() == '{');
        CHECK(rep.find("\"passed\": 18") != std::string::npos);
    }
}

TEST_CASE("antipode report") {
    CtxGuard g;
    OutGuard out;
    REQUIRE(rmot_chi_check(g.ctx, 0, &out.s) == RMOT_OK);
    CHECK(out.str() ==
          "commutator [t, Sq1]: PASS\n"
          "commutator [t, Sq2]: PASS\n"
          "commutator [t, Sq4]: PASS\n"
          "forced eps = 1: PASS\n"
          "forced (delta, eps, lambda) = (0, 1, 1): PASS\n"
          "antipode consistency: PASS\n");
}

TEST_CASE("module operations") {
    CtxGuard g;
    {
        OutGuard out;
        REQUIRE(rmot_module_comodule(g.ctx, SMOD2, 0, &out.s) == RMOT_OK);
        std::string rep = out.str();
        CHECK(rep.find("psi x00 = 1 | x00 + T0 | x10 + r X1 | x10") != std::string::npos);
        CHECK(rep.find("psi x10 = 1 | x10") != std::string::npos);
    }
    {
        OutGuard out;
        REQUIRE(rmot_module_dualize(g.ctx, SMOD2, 0, &out.s) == RMOT_OK);
        CHECK(out.str().find("Sq1 xh10 = xh00") != std::string::npos);
    }
    {
        OutGuard out;
        REQUIRE(rmot_module_roundtrip(g.ctx, SMOD2, 0, &out.s) == RMOT_OK);
        CHECK(out.str() == "roundtrip ok\n");
    }
    {
        OutGuard out;
        REQUIRE(rmot_module_iso(g.ctx, SMOD2, SMOD2, 0, &out.s) == RMOT_OK);
        CHECK(out.str() == "isomorphic (identity)\n");
    }
    {
        OutGuard out;
        CHECK(rmot_module_iso(g.ctx, SMOD2, SMODH, 0, &out.s) == RMOT_VERIFY_FAIL);
        CHECK(out.str() == "not isomorphic\n");
    }
    {
        OutGuard out;
        CHECK(rmot_module_comodule(g.ctx, "not json", 0, &out.s) == RMOT_INPUT_ERROR);
        CHECK(out.s == nullptr);
    }
}

TEST_CASE("census modes") {
    CtxGuard g;
    auto count_lines = [](const std::string& s) {
        size_t n = 0;
        for (char c : s)
            if (c == '\n') n++;
        return n;
    };
    {
        OutGuard out;
        REQUIRE(rmot_census(g.ctx, 0, 0, 0, &out.s) == RMOT_OK);
        CHECK(count_lines(out.str()) == 128);
    }
    {
        OutGuard out;
        REQUIRE(rmot_census(g.ctx, 1, 0, 0, &out.s) == RMOT_OK);
        std::string rep = out.str();
        CHECK(count_lines(rep) == 16);
        CHECK(rep.find("self-dual") != std::string::npos);
    }
    {
        OutGuard out;
        REQUIRE(rmot_census(g.ctx, 2, 0, 0, &out.s) == RMOT_OK);
        CHECK(out.str() == "Y(2,1): 8  Y(h,1): 8\n");
    }
    {
        OutGuard out;
        REQUIRE(rmot_census(g.ctx, 3, 0, 0, &out.s) == RMOT_OK);
        CHECK(out.str().find("128/128 verified") != std::string::npos);
    }
    {
        OutGuard out;
        CHECK(rmot_census(g.ctx, 4, 0, 0, &out.s) == RMOT_INPUT_ERROR);
        CHECK(std::string(rmot_last_error(g.ctx)) == "census mode must be 0..3");
    }
}

TEST_CASE("census emit feeds back into module calls") {
    CtxGuard g;
    OutGuard emitted;
    REQUIRE(rmot_census_emit(g.ctx, 0, &emitted.s) == RMOT_OK);
    std::string js = emitted.str();
    CHECK(js.find("\"basis\"") != std::string::npos);
    CHECK(js.find("\"coaction\"") != std::string::npos);

    OutGuard rt;
    REQUIRE(rmot_module_roundtrip(g.ctx, js.c_str(), 0, &rt.s) == RMOT_OK);
    CHECK(rt.str() == "roundtrip ok\n");

    OutGuard bad;
    CHECK(rmot_census_emit(g.ctx, -1, &bad.s) == RMOT_INPUT_ERROR);
    CHECK(std::string(rmot_last_error(g.ctx)) == "catalog index must be 0..127");
    CHECK(rmot_census_emit(g.ctx, 200, &bad.s) == RMOT_INPUT_ERROR);
}

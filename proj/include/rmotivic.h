#ifndef RMOTIVIC_H
#define RMOTIVIC_H

/* C interface to the R-motivic Steenrod algebra library.
 *
 * All functions return rmot_status; on failure rmot_last_error(ctx) holds a
 * message.  Output strings are heap-allocated; release them with
 * rmot_string_free.  Element arguments use the text grammar (see README):
 * scalars "t^a r^b", dual-algebra monomials "T0 T1 X1^2", Milnor-basis
 * operations "Q0 Q1 P2" / "P(1,1)".  Module arguments are JSON text.
 * A context is not safe for concurrent use from multiple threads.
 */

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    RMOT_OK = 0,
    RMOT_VERIFY_FAIL = 1,
    RMOT_INPUT_ERROR = 2,
    RMOT_INTERNAL_ERROR = 3
} rmot_status;

typedef struct rmot_ctx rmot_ctx;

/* degree_bound <= 0 selects the default (16). */
rmot_ctx* rmot_ctx_new(int degree_bound);
void rmot_ctx_free(rmot_ctx* ctx);
const char* rmot_last_error(const rmot_ctx* ctx);
void rmot_string_free(char* s);

/* Format selector for report-producing calls: 0 = text, 1 = JSON. */

/* Dual algebra. */
rmot_status rmot_dual_normalize(rmot_ctx* ctx, const char* expr, char** out);
rmot_status rmot_dual_mul(rmot_ctx* ctx, const char* a, const char* b, char** out);
rmot_status rmot_dual_coproduct(rmot_ctx* ctx, const char* expr, char** out);
rmot_status rmot_dual_conjugate(rmot_ctx* ctx, const char* expr, char** out);

/* Steenrod algebra in the Milnor basis. */
rmot_status rmot_milnor_pair(rmot_ctx* ctx, const char* dual_expr, const char* op_expr,
                             char** out);
rmot_status rmot_milnor_product(rmot_ctx* ctx, const char* a, const char* b, char** out);
rmot_status rmot_table1_verify(rmot_ctx* ctx, int fmt, char** report);
rmot_status rmot_chi_check(rmot_ctx* ctx, int fmt, char** report);

/* Modules (JSON in, summary or JSON out). */
rmot_status rmot_module_comodule(rmot_ctx* ctx, const char* module_json, int fmt,
                                 char** out);
rmot_status rmot_module_dualize(rmot_ctx* ctx, const char* module_json, int fmt,
                                char** out);
rmot_status rmot_module_roundtrip(rmot_ctx* ctx, const char* module_json, int fmt,
                                  char** out);
rmot_status rmot_module_iso(rmot_ctx* ctx, const char* a_json, const char* b_json,
                            int fmt, char** out);

/* Catalog census.  mode: 0 = full table, 1 = self-dual rows,
 * 2 = realization counts, 3 = full verification sweep (exhaustive != 0 adds
 * the all-pairs isomorphism sweep). */
rmot_status rmot_census(rmot_ctx* ctx, int mode, int exhaustive, int fmt, char** out);
/* Module + coaction JSON for one catalog member, bits in 0..127. */
rmot_status rmot_census_emit(rmot_ctx* ctx, int bits, char** out);

#ifdef __cplusplus
}
#endif

#endif /* RMOTIVIC_H */

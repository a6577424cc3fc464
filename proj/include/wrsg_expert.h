/* Public C interface of the WRSG preliminary-design expert library.
 *
 * Every function is thread-compatible: distinct handles may be used from
 * distinct threads freely; a single handle needs external synchronization
 * only if one of the threads mutates it (none of the functions below do
 * after creation).  Errors are reported as status codes; the failing
 * call's diagnostic text and stable identifier are kept per thread and
 * readable via wrsg_last_error / wrsg_last_error_id until the next failing
 * call on the same thread.
 *
 * Strings returned through char** out-parameters are heap-allocated and
 * must be released with wrsg_string_free.
 */

#ifndef WRSG_EXPERT_H
#define WRSG_EXPERT_H

#include <stdint.h>

#if defined(_WIN32)
#if defined(WRSG_BUILDING)
#define WRSG_API __declspec(dllexport)
#else
#define WRSG_API __declspec(dllimport)
#endif
#elif defined(WRSG_BUILDING)
#define WRSG_API __attribute__((visibility("default")))
#else
#define WRSG_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum wrsg_status {
  WRSG_OK = 0,
  WRSG_ERR_ARGUMENT = 1, /* bad parameter, spec string, or config content */
  WRSG_ERR_IO = 2,       /* file unreadable / unwritable */
  WRSG_ERR_FORMAT = 3,   /* file exists but does not parse as expected */
  WRSG_ERR_DOMAIN = 4,   /* numerically or physically impossible request */
  WRSG_ERR_INTERNAL = 5  /* unexpected failure; report a bug */
} wrsg_status;

typedef struct wrsg_ctx wrsg_ctx;         /* constants + ratings + space */
typedef struct wrsg_dataset wrsg_dataset; /* LHS samples with oracle labels */
typedef struct wrsg_model wrsg_model;     /* trained per-target surrogates */
typedef struct wrsg_db wrsg_db;           /* bulk design database */
typedef struct wrsg_ranking wrsg_ranking; /* query result */

/* Library semantic version, e.g. "1.0.0".  Static storage; do not free. */
WRSG_API const char* wrsg_version(void);

/* Diagnostic text / stable identifier of this thread's last failure.
 * Static thread-local storage; do not free.  Empty strings before any
 * failure. */
WRSG_API const char* wrsg_last_error(void);
WRSG_API const char* wrsg_last_error_id(void);

/* Release a string returned through a char** out-parameter. */
WRSG_API void wrsg_string_free(char* s);

/* ---- context ---------------------------------------------------------- */

/* Create an evaluation context.  Either path may be NULL to keep the
 * built-in defaults: constants_file overrides analytical-oracle constants,
 * space_file overrides the sampled design-space box (flat key=value files,
 * see the library documentation for the key sets). */
WRSG_API wrsg_status wrsg_ctx_create(const char* constants_file,
                                     const char* space_file, wrsg_ctx** out);
WRSG_API void wrsg_ctx_free(wrsg_ctx* ctx);

/* ---- dataset ---------------------------------------------------------- */

/* Draw n Latin-hypercube designs, derive dependent geometry, label the
 * valid ones with the analytical oracle.  Deterministic under (ctx, n,
 * seed). */
WRSG_API wrsg_status wrsg_dataset_generate(const wrsg_ctx* ctx, int n,
                                           uint64_t seed, wrsg_dataset** out);
WRSG_API wrsg_status wrsg_dataset_save(const wrsg_dataset* ds,
                                       const char* path);
WRSG_API wrsg_status wrsg_dataset_open(const char* path, wrsg_dataset** out);
WRSG_API int wrsg_dataset_count(const wrsg_dataset* ds);
WRSG_API int wrsg_dataset_valid_count(const wrsg_dataset* ds);
WRSG_API void wrsg_dataset_free(wrsg_dataset* ds);

/* ---- surrogate model -------------------------------------------------- */

/* Train the per-target metamodels on a dataset: split off test_fraction of
 * the valid samples under `seed`, fit every candidate, keep the
 * best-prognosis one per target. */
WRSG_API wrsg_status wrsg_model_train(const wrsg_dataset* ds,
                                      double test_fraction, uint64_t seed,
                                      wrsg_model** out);
WRSG_API wrsg_status wrsg_model_save(const wrsg_model* m, const char* path);
WRSG_API wrsg_status wrsg_model_open(const char* path, wrsg_model** out);

/* Held-out prognosis coefficient of the winner for a target
 * ("pout_kva" / "w_kg" / "eta_pct"). */
WRSG_API wrsg_status wrsg_model_cop(const wrsg_model* m, const char* target,
                                    double* out);

/* One human-readable line per target: kind, variables, CoP. */
WRSG_API wrsg_status wrsg_model_summary(const wrsg_model* m, char** out);

/* Digest of the canonical serialized model. */
WRSG_API wrsg_status wrsg_model_fingerprint(const wrsg_model* m, char** out);
WRSG_API void wrsg_model_free(wrsg_model* m);

/* ---- design database --------------------------------------------------- */

/* Predict n LHS designs with the trained model, dropping geometry-invalid
 * points.  `spec` (may be NULL) is a requirement list such as
 * "pout>=30,w<=17,eta>=92,d2<=205"; it sets the stored feasibility
 * partition and the power-weight Pareto front is refreshed accordingly. */
WRSG_API wrsg_status wrsg_db_build(const wrsg_ctx* ctx, const wrsg_model* m,
                                   int n, uint64_t seed, const char* spec,
                                   wrsg_db** out);
WRSG_API wrsg_status wrsg_db_save(const wrsg_db* db, const char* path);

/* Load a database.  When expected_fingerprint is non-NULL and non-empty
 * and differs from the stored model fingerprint, *stale (if non-NULL) is
 * set to 1 (0 otherwise); this is a warning, not an error. */
WRSG_API wrsg_status wrsg_db_open(const char* path,
                                  const char* expected_fingerprint,
                                  wrsg_db** out, int* stale);
WRSG_API long long wrsg_db_count(const wrsg_db* db);
WRSG_API long long wrsg_db_dropped(const wrsg_db* db);
WRSG_API wrsg_status wrsg_db_fingerprint(const wrsg_db* db, char** out);

/* Scatter-plot CSV (id,w_kg,pout_kva,eta_pct,feasible,on_front). */
WRSG_API wrsg_status wrsg_db_export_plot(const wrsg_db* db, char** csv);

/* Retrieve the best matching designs.  rank_by is "power_density" (the
 * default when NULL), "pout", or "eta"; top_k >= 1.  An unsatisfiable spec
 * yields an empty ranking with status "no_solution", not an error. */
WRSG_API wrsg_status wrsg_db_query(const wrsg_db* db, const char* spec,
                                   const char* rank_by, int top_k,
                                   wrsg_ranking** out);

/* Re-evaluate stored predictions with the analytical oracle.  `which` is
 * "front" or "sample:<k>:<seed>".  Returns a text report; the largest
 * relative errors per quantity land in the optional out-parameters. */
WRSG_API wrsg_status wrsg_db_verify(const wrsg_db* db, const wrsg_ctx* ctx,
                                    const char* which, char** report,
                                    double* max_rel_pout, double* max_rel_w,
                                    double* max_rel_eta);

/* Compare record `id` against a reference design (baseline_file, or the
 * built-in reference when NULL).  with_oracle adds an oracle re-evaluation
 * column; as_csv selects CSV over the aligned text table. */
WRSG_API wrsg_status wrsg_db_report(const wrsg_db* db, const wrsg_ctx* ctx,
                                    int id, const char* baseline_file,
                                    int with_oracle, int as_csv, char** out);
WRSG_API void wrsg_db_free(wrsg_db* db);

/* ---- ranking ----------------------------------------------------------- */

WRSG_API int wrsg_ranking_count(const wrsg_ranking* r);

/* "ok" or "no_solution".  Storage owned by the ranking handle. */
WRSG_API const char* wrsg_ranking_status(const wrsg_ranking* r);
WRSG_API double wrsg_ranking_search_ms(const wrsg_ranking* r);

/* Fetch one entry (0-based, best first).  Out-pointers may be NULL. */
WRSG_API wrsg_status wrsg_ranking_entry(const wrsg_ranking* r, int index,
                                        int* id, double* pout_kva,
                                        double* w_kg, double* eta_pct,
                                        double* power_density);

/* Render as "table", "csv", or "lines". */
WRSG_API wrsg_status wrsg_ranking_format(const wrsg_ranking* r,
                                         const char* format, char** out);
WRSG_API void wrsg_ranking_free(wrsg_ranking* r);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* WRSG_EXPERT_H */

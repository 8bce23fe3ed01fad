/* C interface to the simplicial-set kernel.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_free function.  Functions return an sset_status; on failure
 * sset_last_error() describes the problem (per thread).  Verb functions
 * produce an sset_report holding a verdict, the exit code of the command
 * line tool, a JSON document ("schema": "sset-report/1"), human-readable
 * text and named text artifacts (complexes, maps, certificates).
 */
#ifndef SSET_H
#define SSET_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define SSET_API __declspec(dllexport)
#else
#define SSET_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sset_status {
  SSET_OK = 0,
  SSET_E_ARGUMENT = 1, /* invalid argument or unmet precondition */
  SSET_E_PARSE = 2,    /* malformed complex, map or certificate text */
  SSET_E_INTERNAL = 3
} sset_status;

typedef struct sset_complex sset_complex;
typedef struct sset_map sset_map;
typedef struct sset_report sset_report;

typedef struct sset_config {
  int max_dim;          /* -1: command default */
  uint64_t node_budget; /* default 1000000 */
  int word_budget;      /* default 8 */
  int stage_count;      /* default 2 */
} sset_config;

SSET_API void sset_config_init(sset_config* config);

SSET_API const char* sset_version(void);
SSET_API const char* sset_last_error(void);
/* Line of the last parse error, 0 if none. */
SSET_API int sset_last_error_line(void);
SSET_API void sset_string_free(char* s);

/* complexes */
SSET_API sset_status sset_complex_parse(const char* text, sset_complex** out);
/* kind: simplex, boundary, horn, spine, j_trunc; i < 0 when not applicable */
SSET_API sset_status sset_complex_generate(const char* kind, int n, int i, sset_complex** out);
SSET_API sset_status sset_complex_serialize(const sset_complex* x, char** out);
SSET_API int sset_complex_dim(const sset_complex* x);
SSET_API size_t sset_complex_count(const sset_complex* x, unsigned dim);
SSET_API void sset_complex_free(sset_complex* x);

/* maps */
SSET_API sset_status sset_map_header(const char* text, char** source_file, char** target_file);
SSET_API sset_status sset_map_parse(const char* text, const sset_complex* source, const sset_complex* target,
                                    sset_map** out);
SSET_API sset_status sset_map_serialize(const sset_map* f, const char* source_file, const char* target_file,
                                        char** out);
SSET_API void sset_map_free(sset_map* f);

/* reports */
SSET_API int sset_report_exit_code(const sset_report* r);
SSET_API const char* sset_report_verdict(const sset_report* r);
SSET_API const char* sset_report_json(const sset_report* r);
SSET_API const char* sset_report_text(const sset_report* r);
SSET_API size_t sset_report_artifact_count(const sset_report* r);
SSET_API const char* sset_report_artifact_name(const sset_report* r, size_t k);
SSET_API const char* sset_report_artifact_text(const sset_report* r, size_t k);
SSET_API void sset_report_free(sset_report* r);

/* verbs */
SSET_API sset_status sset_validate(const char* text, sset_report** out);
SSET_API sset_status sset_generate(const char* kind, int n, int i, sset_report** out);
/* op: product, join, coproduct (a, b); skeleton (a, n); full-subset (a, arg1 = comma
 * separated vertices); slice (a, arg1 = vertex, n = up_to); hom-left (a, arg1, arg2,
 * n = up_to); cosk0 (arg1 = comma separated names, n) */
SSET_API sset_status sset_op(const char* op, const sset_complex* a, const sset_complex* b, const char* arg1,
                             const char* arg2, int n, sset_report** out);
/* pushout of the mono i : A -> B along f : A -> C */
SSET_API sset_status sset_pushout(const sset_map* i, const sset_map* f, sset_report** out);
/* p and v may be NULL: the base is then a point */
SSET_API sset_status sset_lift(const sset_map* i, const sset_map* p, const sset_map* u, const sset_map* v,
                               const sset_config* config, sset_report** out);
/* classes: comma separated subset of inner,left,right,kan,trivial_kan; NULL for all */
SSET_API sset_status sset_classify(const sset_map* p, const char* classes, const sset_config* config,
                                   sset_report** out);
/* x, y: vertex names, or NULL for every pair */
SSET_API sset_status sset_homcat(const sset_complex* s, const char* x, const char* y, const sset_config* config,
                                 sset_report** out);
SSET_API sset_status sset_equiv_edge(const sset_complex* s, const char* edge, const sset_config* config,
                                     sset_report** out);
SSET_API sset_status sset_isofib(const sset_map* p, const sset_config* config, sset_report** out);
SSET_API sset_status sset_catfib(const sset_map* p, const sset_config* config, sset_report** out);
SSET_API sset_status sset_dk_check(const sset_map* f, const sset_config* config, sset_report** out);
/* Fun(K, C) up to max_dim (default 2); restricted != 0 keeps equivalence-valued vertices */
SSET_API sset_status sset_mapspace(const sset_complex* c, const sset_complex* k, int restricted,
                                   const sset_config* config, sset_report** out);
/* cls: inner, left, right, kan; theorem_c != 0 runs the inner anodyne classifier */
SSET_API sset_status sset_certify(const sset_map* i, const char* cls, int theorem_c, const sset_config* config,
                                  sset_report** out);
SSET_API sset_status sset_verify_certificate(const sset_map* i, const char* certificate_text, sset_report** out);
SSET_API sset_status sset_two_of_three(const sset_map* u, const sset_map* v, const sset_config* config,
                                       sset_report** out);
SSET_API sset_status sset_prefibrantize(const sset_complex* s, int only_unfilled, const sset_config* config,
                                        sset_report** out);
SSET_API sset_status sset_complete(const sset_complex* s, const sset_config* config, sset_report** out);
/* up to max_dim (default 3); literal != 0 attaches every horn with non-constant d0 */
SSET_API sset_status sset_saturate(const sset_complex* s, int literal, const sset_config* config,
                                   sset_report** out);
SSET_API sset_status sset_descend_triangle(const sset_map* p, const sset_config* config, sset_report** out);
/* up to max_dim (default 1) */
SSET_API sset_status sset_pathspace(const sset_map* f, const sset_config* config, sset_report** out);

#ifdef __cplusplus
}
#endif

#endif /* SSET_H */

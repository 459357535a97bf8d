#ifndef CAYLEYSEP_H
#define CAYLEYSEP_H

/* C interface to the cayleysep library.
 *
 * Every function returns a csep_status. On failure the message of the most
 * recent error on the calling thread is available from csep_last_error().
 * Strings returned through char** out-parameters are owned by the caller and
 * must be released with csep_string_free(). Result documents are JSON objects
 * with a "results" member, which is deterministic for fixed inputs and seed,
 * and a "timing" member, which is not. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CAYLEYSEP_BUILDING)
#    define CSEP_API __declspec(dllexport)
#  else
#    define CSEP_API __declspec(dllimport)
#  endif
#else
#  define CSEP_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum csep_status {
  CSEP_OK = 0,
  CSEP_ERR_ARGUMENT = 1,      /* invalid argument or precondition */
  CSEP_ERR_CONFIGURATION = 2, /* unknown spec, missing relator bound */
  CSEP_ERR_RESOURCE = 3,      /* vertex budget or size cap exceeded */
  CSEP_ERR_PARSE = 4,         /* malformed input file */
  CSEP_ERR_UNSUPPORTED = 5,   /* presentation outside the Dehn oracle's reach */
  CSEP_ERR_IO = 6,
  CSEP_ERR_INTERNAL = 7
} csep_status;

typedef struct csep_group csep_group;
typedef struct csep_graph csep_graph;

typedef struct csep_run_options {
  int64_t budget_ms;     /* per exact cut; default 2000 */
  uint64_t seed;         /* default 0 */
  int workers;           /* default 1 */
  size_t vertex_budget;  /* default 500000 */
} csep_run_options;

CSEP_API void csep_run_options_init(csep_run_options* options);

CSEP_API const char* csep_version(void);
CSEP_API const char* csep_last_error(void);
CSEP_API const char* csep_status_name(csep_status status);
CSEP_API void csep_string_free(char* s);

/* groups */
CSEP_API csep_status csep_group_open(const char* spec, csep_group** out);
CSEP_API void csep_group_close(csep_group* group);
CSEP_API csep_status csep_group_describe(const csep_group* group, char** json);
CSEP_API csep_status csep_kappa(const csep_group* group, uint64_t n, size_t vertex_budget,
                                int* out);
CSEP_API csep_status csep_growth(const csep_group* group, int r_max, size_t vertex_budget,
                                 char** json);

/* graphs: a Cayley ball, a graph spec (file:<path>, sierpinski:<L>) or an
 * edge-list file. For graph specs a non-negative radius selects the ball
 * around vertex 0; a negative radius keeps the whole graph. */
CSEP_API csep_status csep_graph_open(const char* spec, int radius, size_t vertex_budget,
                                     csep_graph** out);
CSEP_API csep_status csep_graph_load(const char* path, csep_graph** out);
CSEP_API void csep_graph_close(csep_graph* graph);
CSEP_API csep_status csep_graph_size(const csep_graph* graph, size_t* vertices, size_t* edges);
CSEP_API csep_status csep_graph_save(const csep_graph* graph, const char* path);
/* center, radius, distances and element keys (balls), labels otherwise */
CSEP_API csep_status csep_graph_describe(const csep_graph* graph, char** json);

/* cuts; mode is "brute", "exact" or "heuristic" */
CSEP_API csep_status csep_cut(const csep_graph* graph, const char* mode,
                              const csep_run_options* options, char** json);
CSEP_API csep_status csep_is_cut_set(const csep_graph* graph, const int32_t* vertices,
                                     size_t count, int* out);

/* profiles; candidates is a comma-separated subset of
 * balls,spheres-thickened,random-connected */
CSEP_API csep_status csep_profile(const char* spec, size_t max_n, const char* candidates,
                                  const csep_run_options* options, char** json);
CSEP_API csep_status csep_gapcheck(const csep_group* group, int max_r,
                                   const csep_run_options* options, char** json);
/* n_list of length count; the profile is computed over balls up to max(n_list) */
CSEP_API csep_status csep_kappa_compare(const csep_group* group, const uint64_t* n_list,
                                        size_t count, const csep_run_options* options,
                                        char** json);

/* hyperbolicity; K is a rational such as "18", "2" or "9/2" */
CSEP_API csep_status csep_witness(const csep_group* group, int length, const char* K,
                                  size_t vertex_budget, char** json);
CSEP_API csep_status csep_bigons(const csep_group* group, int radius,
                                 const csep_run_options* options, char** json);
CSEP_API csep_status csep_bottleneck(const csep_group* group, int radius, int delta,
                                     const csep_run_options* options, char** json);

/* Re-validates the results of a run record produced by the command-line tool
 * (separators against is_cut_set, witnesses against cycle_distortion). */
CSEP_API csep_status csep_verify_record(const char* record_json, char** report_json);

#ifdef __cplusplus
}
#endif

#endif

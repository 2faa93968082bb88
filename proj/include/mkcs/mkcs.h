#ifndef MKCS_MKCS_H
#define MKCS_MKCS_H

#include <stddef.h>

#if defined(_WIN32)
#define MKCS_API __declspec(dllexport)
#else
#define MKCS_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mkcs_status {
  MKCS_OK = 0,
  MKCS_ERR_PARSE = 2,
  MKCS_ERR_INVALID_ARGUMENT = 3,
  MKCS_ERR_IO = 4,
  MKCS_ERR_INTERNAL = 5
} mkcs_status;

typedef enum mkcs_mode {
  MKCS_MODE_BOUND = 0,
  MKCS_MODE_SOLVE = 1,
  MKCS_MODE_CHROMATIC = 2,
  MKCS_MODE_ORACLE = 3
} mkcs_mode;

typedef struct mkcs_graph mkcs_graph;
typedef struct mkcs_config mkcs_config;
typedef struct mkcs_report mkcs_report;

MKCS_API const char* mkcs_version(void);
/* Message of the last failing call on this thread; "" if none. */
MKCS_API const char* mkcs_last_error(void);

MKCS_API mkcs_status mkcs_graph_load(const char* path, mkcs_graph** out);
/* DIMACS text; name may be NULL. */
MKCS_API mkcs_status mkcs_graph_parse(const char* text, const char* name, mkcs_graph** out);
MKCS_API void mkcs_graph_free(mkcs_graph* g);
MKCS_API int mkcs_graph_num_vertices(const mkcs_graph* g);
MKCS_API int mkcs_graph_num_edges(const mkcs_graph* g);
MKCS_API double mkcs_graph_density(const mkcs_graph* g);
MKCS_API size_t mkcs_graph_num_warnings(const mkcs_graph* g);
MKCS_API const char* mkcs_graph_warning(const mkcs_graph* g, size_t i);

MKCS_API mkcs_status mkcs_config_create(mkcs_config** out);
MKCS_API void mkcs_config_free(mkcs_config* c);
/* Keys are the long flag names without dashes, e.g. "max-cuts-per-var", "k", "seed". */
MKCS_API mkcs_status mkcs_config_set(mkcs_config* c, const char* key, const char* value);
MKCS_API mkcs_status mkcs_config_load_json(mkcs_config* c, const char* path);
/* Writes a NUL-separated, double-NUL-terminated list of the accepted keys. */
MKCS_API mkcs_status mkcs_config_keys(char** out);

MKCS_API mkcs_status mkcs_run(const mkcs_graph* g, const mkcs_config* c, mkcs_mode mode, mkcs_report** out);
MKCS_API void mkcs_report_free(mkcs_report* r);
MKCS_API size_t mkcs_report_count(const mkcs_report* r);
/* Returns NaN when the entry carries no upper bound. */
MKCS_API double mkcs_report_ub(const mkcs_report* r, size_t i);
/* Returns -1 when the entry carries no feasible value. */
MKCS_API int mkcs_report_lb(const mkcs_report* r, size_t i);
MKCS_API int mkcs_report_k(const mkcs_report* r, size_t i);

/* Serializations; free the result with mkcs_string_free. */
MKCS_API mkcs_status mkcs_report_json(const mkcs_report* r, char** out);
MKCS_API mkcs_status mkcs_report_csv(const mkcs_report* r, char** out);
MKCS_API mkcs_status mkcs_report_trace(const mkcs_report* r, char** out);
MKCS_API void mkcs_string_free(char* s);

MKCS_API mkcs_status mkcs_alpha_k_exact(const mkcs_graph* g, int k, int* out);
MKCS_API mkcs_status mkcs_chi_exact(const mkcs_graph* g, int* out);

#ifdef __cplusplus
}
#endif

#endif

#ifndef BISHEAF_H
#define BISHEAF_H

#include <stddef.h>

#if defined(_WIN32)
#define BISHEAF_API __declspec(dllexport)
#else
#define BISHEAF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Status values double as process exit codes for the command-line tool. */
typedef enum bisheaf_status {
  BISHEAF_OK = 0,
  BISHEAF_ERR_ARGUMENT = 1,       /* null pointer or unusable handle */
  BISHEAF_ERR_INVALID_CONFIG = 2, /* malformed or out-of-range input */
  BISHEAF_ERR_CONTRACT = 3,       /* a pipeline precondition failed */
  BISHEAF_ERR_DIAGNOSTIC = 4,     /* the run finished but an invariant check failed */
  BISHEAF_ERR_INTERNAL = 5
} bisheaf_status;

typedef struct bisheaf_pipeline bisheaf_pipeline;

BISHEAF_API const char* bisheaf_version(void);

/* Message of the last failing call on this thread; "" after a success. */
BISHEAF_API const char* bisheaf_last_error(void);

/* Releases any string returned through a char** out-parameter. */
BISHEAF_API void bisheaf_string_free(char* s);

/* All JSON inputs are UTF-8 text; JSON outputs use fixed field order. */
BISHEAF_API bisheaf_status bisheaf_tower_describe(const char* tower_json, char** out_json);
BISHEAF_API bisheaf_status bisheaf_classify(const char* germ_json, char** out_json);
BISHEAF_API bisheaf_status bisheaf_unfold(const char* class_name, char** out_json);
/* levels: comma-separated tags from {ST, MG, M}. */
BISHEAF_API bisheaf_status bisheaf_expand(const char* levels, char** out_json);
/* CSV with header x,re,im,modulus. */
BISHEAF_API bisheaf_status bisheaf_samples(const char* semimodule_json, int n, double x0, double x1,
                                           char** out_csv);

BISHEAF_API bisheaf_status bisheaf_pipeline_create(const char* config_json, bisheaf_pipeline** out);
/* Returns BISHEAF_ERR_DIAGNOSTIC when the run completed with a failed check;
   the report stays available in that case. */
BISHEAF_API bisheaf_status bisheaf_pipeline_run(bisheaf_pipeline* p);
BISHEAF_API bisheaf_status bisheaf_pipeline_report(const bisheaf_pipeline* p, char** out_json);
BISHEAF_API bisheaf_status bisheaf_pipeline_levels(const bisheaf_pipeline* p, char** out_json);
BISHEAF_API bisheaf_status bisheaf_pipeline_summary(const bisheaf_pipeline* p, char** out_text);
BISHEAF_API size_t bisheaf_pipeline_level_count(const bisheaf_pipeline* p);
/* level: ST, MG or M; part: "reduced" or "orthogonal"; side: "Left" or "Right". */
BISHEAF_API bisheaf_status bisheaf_pipeline_semimodule(const bisheaf_pipeline* p, const char* level,
                                                       const char* part, const char* side, char** out_json);
/* Output path from the config, "" when unset. Owned by the handle. */
BISHEAF_API const char* bisheaf_pipeline_output_path(const bisheaf_pipeline* p);
BISHEAF_API void bisheaf_pipeline_destroy(bisheaf_pipeline* p);

#ifdef __cplusplus
}
#endif

#endif

#ifndef LCF_LCF_H
#define LCF_LCF_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(LCF_BUILDING)
#define LCF_API __attribute__((visibility("default")))
#else
#define LCF_API
#endif

typedef enum lcf_status {
  LCF_OK = 0,
  LCF_INVALID_ARGUMENT = 1,
  LCF_PARSE = 2,
  LCF_PRECONDITION = 3,
  LCF_INTERNAL = 4,
  LCF_IO = 5
} lcf_status;

typedef enum lcf_mode { LCF_MODE_DET = 0, LCF_MODE_RAND = 1 } lcf_mode;

typedef enum lcf_variant {
  LCF_VARIANT_VERTEX = 0,
  LCF_VARIANT_EDGE = 1,
  LCF_VARIANT_DVERTEX = 2,
  LCF_VARIANT_DARC = 3
} lcf_variant;

typedef struct lcf_instance lcf_instance;
typedef struct lcf_result lcf_result;

typedef struct lcf_options {
  const char* command; /* solve, blocker, blocking-flow, round, maximal-paths,
                          max-paths, bmatch, cutmatch */
  int64_t h;           /* required by solve, blocker, *-paths, cutmatch */
  double eps;          /* <= 0 selects the command default */
  lcf_mode mode;
  uint64_t seed;
  lcf_variant variant;
  double phi;
} lcf_options;

LCF_API void lcf_options_init(lcf_options* opt);

/* Message of the last failed call on this thread; never NULL. */
LCF_API const char* lcf_last_error(void);
LCF_API void lcf_string_free(char* s);

LCF_API lcf_status lcf_instance_parse(const char* text, lcf_instance** out);
LCF_API lcf_status lcf_instance_load(const char* path, lcf_instance** out);
LCF_API lcf_status lcf_instance_serialize(const lcf_instance* inst, char** text);
LCF_API lcf_status lcf_instance_size(const lcf_instance* inst, int* n, int* m);
LCF_API void lcf_instance_free(lcf_instance* inst);

/* model: "layered" or "random". */
LCF_API lcf_status lcf_generate(const char* model, int n, int m, int64_t h, uint64_t seed,
                                lcf_instance** out);

LCF_API lcf_status lcf_run(const lcf_instance* inst, const lcf_options* opt, lcf_result** out);
LCF_API lcf_status lcf_result_json(const lcf_result* res, char** json);
LCF_API int lcf_result_passed(const lcf_result* res);
LCF_API lcf_status lcf_result_summary(const lcf_result* res, char** line);
LCF_API void lcf_result_free(lcf_result* res);

/* Re-verifies a result document. *passed is 1 or 0; *report, when non-NULL,
   receives the one-line summary plus the first failure. */
LCF_API lcf_status lcf_verify(const char* json, int* passed, char** report);

#ifdef __cplusplus
}
#endif

#endif

#ifndef REFL_REFL_H
#define REFL_REFL_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(REFL_BUILDING_LIBRARY)
#define REFL_API __attribute__((visibility("default")))
#else
#define REFL_API
#endif

typedef enum refl_status {
    REFL_OK = 0,
    REFL_VERIFY_FAILED = 1,
    REFL_ERR_INPUT = 2,
    REFL_ERR_DATA = 3,
    REFL_ERR_INTERNAL = 4
} refl_status;

typedef struct refl_config refl_config;
typedef struct refl_report refl_report;
typedef struct refl_discform refl_discform;

REFL_API const char* refl_version(void);
/* message of the last failing call on this thread, "" if none */
REFL_API const char* refl_last_error(void);
REFL_API void refl_string_free(char* s);

/* command: bounds, enumerate, verify-table1, lift, obstruct, pair, eta */
REFL_API refl_status refl_config_new(const char* command, refl_config** out);
/* keys: n, N, symbol, eta, scale, gamma, precision, data-dir, jobs */
REFL_API refl_status refl_config_set(refl_config* cfg, const char* key, const char* value);
REFL_API void refl_config_free(refl_config* cfg);

/* REFL_OK or REFL_VERIFY_FAILED with a report, otherwise an error and no report */
REFL_API refl_status refl_run(const refl_config* cfg, refl_report** out);
/* format "json" or "table"; free the text with refl_string_free */
REFL_API refl_status refl_report_render(const refl_report* r, const char* format, char** text);
REFL_API int refl_report_passed(const refl_report* r);
REFL_API void refl_report_free(refl_report* r);

/* "2_II^+4 3^-3", "1" for the trivial form */
REFL_API refl_status refl_discform_new(const char* symbol, refl_discform** out);
REFL_API void refl_discform_free(refl_discform* D);
REFL_API refl_status refl_discform_info(const refl_discform* D, uint64_t* order, uint64_t* level, int* signature);
/* elements of D_c with norm j/c mod 1 */
REFL_API refl_status refl_discform_count_norm(const refl_discform* D, uint64_t c, int64_t j, uint64_t* out);
REFL_API refl_status refl_discform_gauss_milgram(const refl_discform* D, int* holds);

#ifdef __cplusplus
}
#endif

#endif

#ifndef EXPINTERP_H
#define EXPINTERP_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(EXPINTERP_BUILD)
#    define EI_API __declspec(dllexport)
#  else
#    define EI_API __declspec(dllimport)
#  endif
#else
#  define EI_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef struct ei_scenario ei_scenario;
typedef struct ei_report ei_report;

typedef enum ei_status {
  EI_OK = 0,
  EI_SCHEMA_ERROR = 2,
  EI_HARD_ERROR = 3,
  EI_INVALID_ARGUMENT = 4,
  EI_PAYLOAD_MISSING = 5,
  EI_OUT_OF_MEMORY = 6
} ei_status;

typedef enum ei_format { EI_FORMAT_HUMAN = 0, EI_FORMAT_MACHINE = 1 } ei_format;

typedef struct ei_grid {
  double re_min, re_max, im_min, im_max;
  size_t nx, ny;
} ei_grid;

/* Strings returned through char** are owned by the caller; release them with
   ei_string_free. Handles are released with their *_free function. */

EI_API ei_status ei_scenario_parse(const char* text, size_t len, ei_scenario** out);
EI_API void ei_scenario_free(ei_scenario* s);
/* task: "ANALYZE", "SOLVE", "VERIFY" or "PLOTDATA". */
EI_API ei_status ei_scenario_set_task(ei_scenario* s, const char* task);
EI_API ei_status ei_scenario_set_seed(ei_scenario* s, uint64_t seed);
EI_API ei_status ei_scenario_emit(const ei_scenario* s, char** out);

/* Stage failures are recorded in the report; EI_OK is returned even then. */
EI_API ei_status ei_run(const ei_scenario* s, ei_report** out);
EI_API void ei_report_free(ei_report* r);
EI_API int ei_report_has_hard_error(const ei_report* r);
EI_API ei_status ei_report_emit(const ei_report* r, ei_format format, char** out);
/* what: "NODES", "DIRECTIONS", "DOMAIN_BOUNDARY" or "SOLUTION_MODULUS".
   grid may be NULL for the default [-2, 2]^2, 21 x 21. */
EI_API ei_status ei_report_plotdata(const ei_report* r, const char* what, const ei_grid* grid, char** out);
/* coeffs: coefficient document or MACHINE report with a solution. */
EI_API ei_status ei_verify(const ei_report* r, const char* coeffs, size_t len, ei_format format, char** out);

/* Message of the last failing call on this thread; never NULL. */
EI_API const char* ei_last_error(void);
EI_API const char* ei_status_name(ei_status status);
EI_API void ei_string_free(char* s);

#ifdef __cplusplus
}
#endif

#endif

/* qdc — event-by-event simulator of a single-photon delayed-choice
 * interferometer experiment.
 *
 * C interface of the shared library. All objects are opaque handles created
 * and destroyed through these functions; every fallible call returns a
 * qdc_status, with qdc_last_error() holding a human-readable detail string
 * for the most recent failure on the calling thread.
 */
#ifndef QDC_H
#define QDC_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(QDC_BUILD)
#    define QDC_API __declspec(dllexport)
#  else
#    define QDC_API __declspec(dllimport)
#  endif
#else
#  if defined(QDC_BUILD)
#    define QDC_API __attribute__((visibility("default")))
#  else
#    define QDC_API
#  endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum qdc_status {
  QDC_OK = 0,
  QDC_ERROR_INVALID_ARGUMENT = 1,
  QDC_ERROR_TOPOLOGY = 2,
  QDC_ERROR_ALL_ABSORBED = 3,
  QDC_ERROR_IO = 4,
  QDC_ERROR_INTERNAL = 5
} qdc_status;

typedef enum qdc_mode {
  QDC_MODE_WHEELER = 0, /* no polarizers before the detectors */
  QDC_MODE_QUANTUM = 1  /* 45-degree polarizer on each detector arm */
} qdc_mode;

typedef enum qdc_format {
  QDC_FORMAT_CSV = 0,
  QDC_FORMAT_PLOTDATA = 1,
  QDC_FORMAT_JSON = 2
} qdc_format;

/* Defaults applied by qdc_config_new(). */
#define QDC_DEFAULT_EVENTS UINT64_C(10000)
#define QDC_DEFAULT_PHI_POINTS 50
#define QDC_DEFAULT_GAMMA 0.99
#define QDC_DEFAULT_SEED UINT64_C(123456789)

typedef struct qdc_config qdc_config;
typedef struct qdc_result qdc_result;

typedef struct qdc_row {
  double phi;
  double alpha;
  int32_t mode; /* qdc_mode */
  uint64_t n0;
  uint64_t n1;
  uint64_t absorbed;
  double f1_sim;
  double f1_theory;
} qdc_row;

QDC_API const char* qdc_version(void);
QDC_API const char* qdc_status_message(qdc_status status);
/* Detail of the last failure on this thread; empty string when none. */
QDC_API const char* qdc_last_error(void);

/* --- configuration ------------------------------------------------------ */

/* New configuration with the standard defaults: alpha 0, Wheeler mode,
 * 50 phase points on [0, 2*pi), 10000 events per point, delta0 = pi/8,
 * delta1 = -7*pi/40, gamma 0.99, seed QDC_DEFAULT_SEED. */
QDC_API qdc_config* qdc_config_new(void);
QDC_API void qdc_config_free(qdc_config* config);

QDC_API qdc_status qdc_config_set_alpha(qdc_config* config, double alpha);
QDC_API qdc_status qdc_config_set_mode(qdc_config* config, qdc_mode mode);
/* Replaces the grid with `count` evenly spaced phases over [0, 2*pi). */
QDC_API qdc_status qdc_config_set_phi_count(qdc_config* config, int32_t count);
/* Replaces the grid with explicit phase values. */
QDC_API qdc_status qdc_config_set_phi_values(qdc_config* config,
                                             const double* values, size_t count);
QDC_API qdc_status qdc_config_set_events(qdc_config* config, uint64_t events);
QDC_API qdc_status qdc_config_set_deltas(qdc_config* config, double delta0,
                                         double delta1);
QDC_API qdc_status qdc_config_set_gamma(qdc_config* config, double gamma);
QDC_API qdc_status qdc_config_set_seed(qdc_config* config, uint64_t seed);
/* Worker threads for the sweep; 0 selects the hardware thread count. */
QDC_API qdc_status qdc_config_set_jobs(qdc_config* config, int32_t jobs);

/* --- running and results ------------------------------------------------ */

QDC_API qdc_status qdc_run_sweep(const qdc_config* config, qdc_result** out);
QDC_API void qdc_result_free(qdc_result* result);

QDC_API size_t qdc_result_size(const qdc_result* result);
QDC_API qdc_status qdc_result_row(const qdc_result* result, size_t idx,
                                  qdc_row* out);
/* Max and RMS of |f1_sim - f1_theory| over all rows. */
QDC_API qdc_status qdc_result_deviation(const qdc_result* result,
                                        double* max_abs, double* rms);
/* Appends src's rows to dst. Both results must share seed, gamma, events and
 * deltas so the merged table has one consistent metadata block. */
QDC_API qdc_status qdc_result_merge(qdc_result* dst, const qdc_result* src);

/* Renders into a NUL-terminated buffer owned by the caller; release it with
 * qdc_string_free(). */
QDC_API qdc_status qdc_result_render(const qdc_result* result,
                                     qdc_format format, char** out);
QDC_API qdc_status qdc_result_write(const qdc_result* result,
                                    qdc_format format, const char* path);
QDC_API void qdc_string_free(char* text);

/* --- closed-form theory ------------------------------------------------- */

/* Normalized detector intensities without polarizers. */
QDC_API qdc_status qdc_theory_wheeler(double alpha, double phi, double* i0,
                                      double* i1);
/* Non-normalized detector intensities with the 45-degree polarizers. */
QDC_API qdc_status qdc_theory_quantum(double alpha, double phi, double delta0,
                                      double delta1, double* i0, double* i1);
/* i1 / (i0 + i1); fails with QDC_ERROR_INVALID_ARGUMENT when i0 + i1 == 0. */
QDC_API qdc_status qdc_theory_fraction_d1(double i0, double i1, double* f1);

#ifdef __cplusplus
}
#endif

#endif /* QDC_H */

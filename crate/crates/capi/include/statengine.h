/* C bindings for the statengine quantum-statistics heat-engine simulator. */

#ifndef STATENGINE_H
#define STATENGINE_H

/* Generated from the crate's C surface by cbindgen; regenerate via cargo build. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Result of every fallible call. Anything but `SE_OK` leaves details in
 * `se_last_error_message`.
 */
typedef enum {
  SE_OK = 0,
  /**
   * A required pointer argument was null.
   */
  SE_ERR_NULL = 1,
  /**
   * Arguments outside the model's domain (bad enum value, negative
   * temperature, non-positive compression, ...).
   */
  SE_ERR_CONFIG = 2,
  /**
   * A solver failed to converge; typical for statistics switches into the
   * Bose gas below its condensate entropy floor.
   */
  SE_ERR_NUMERICAL = 3,
  /**
   * The requested figure is undefined for this cycle (e.g. efficiency of
   * a refrigerator); the output was set to NaN.
   */
  SE_ERR_UNDEFINED = 4,
  /**
   * An internal invariant broke. Please report the message.
   */
  SE_ERR_PANIC = 5,
} se_status;

/**
 * Engine layout: four-stroke switching, six-stroke switching, the
 * equivalence construction, or one of the non-switching references.
 */
typedef enum {
  SE_VARIANT_A = 0,
  SE_VARIANT_T = 1,
  SE_VARIANT_GV = 2,
  SE_VARIANT_SINGLE = 3,
  SE_VARIANT_FERMI = 4,
  SE_VARIANT_BOSE = 5,
} se_variant;

/**
 * Which statistics the medium holds while compressed. References take
 * `SE_ORDER_NONE`; switching variants must pick a direction.
 */
typedef enum {
  SE_ORDER_NONE = 0,
  SE_ORDER_BG_TG = 1,
  SE_ORDER_TG_BG = 2,
} se_order;

typedef enum {
  SE_SPECTRUM_BOX = 0,
  SE_SPECTRUM_HARMONIC = 1,
} se_spectrum;

/**
 * Operational mode from the signs of (Q_in, Q_out, W_out).
 */
typedef enum {
  SE_MODE_ENGINE = 0,
  SE_MODE_REFRIGERATOR = 1,
  SE_MODE_ACCELERATOR = 2,
  SE_MODE_HEATER = 3,
  SE_MODE_NONE = 4,
} se_mode;

typedef enum {
  SE_STROKE_ADIABAT = 0,
  SE_STROKE_ISOCHORE = 1,
  SE_STROKE_STAT_ISOTHERM = 2,
  SE_STROKE_GV_ISOCHORE = 3,
} se_stroke_kind;

/**
 * Opaque cycle report. Create with `se_cycle_run`, read through the
 * `se_report_*` getters, release with `se_report_free`.
 */
typedef struct se_report se_report;

/**
 * One stroke's energy ledger. Energies in E_F units, `t_out` in T_F units.
 * `d_u == work + heat` holds exactly; the `_stat` split is nonzero only for
 * statistical isotherms.
 */
typedef struct {
  se_stroke_kind kind;
  double d_u;
  double work;
  double heat;
  double heat_stat;
  double work_stat;
  double t_out;
} se_stroke;

/**
 * Compression-ratio optimum for fixed baths. Optional figures (`eta_mw`,
 * `sigma`, `sigma_s`) are NaN when the optimum is not an engine.
 */
typedef struct {
  /**
   * Bath temperatures echoed back, T_F units.
   */
  double t_c;
  double t_h;
  /**
   * Work-maximizing trap-size ratio r (box lengths L_a/L_b).
   */
  double best_ratio;
  /**
   * True when the coarse scan peaked at an end of [r_min, r_max].
   */
  bool boundary;
  /**
   * Net work at the maximizer, E_F units; <= 0 means no engine exists in
   * the searched interval.
   */
  double w_max;
  double eta_mw;
  double sigma;
  double sigma_s;
} se_optimum;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Explanation of the most recent failure on this thread. Valid until the
 * next failing call on the same thread; never null.
 */
const char *se_last_error_message(void);

/**
 * Library version as a static string.
 */
const char *se_version(void);

/**
 * Run one full cycle.
 *
 * `ratio_squared` is the Otto ratio (L_b/L_a)² for boxes, ω_a/ω_b for
 * harmonic traps; `scale_b` fixes the compressed trap's absolute size (pass
 * 1.0 unless absolute energies matter — reduced outputs do not depend on
 * it). `t_c`/`t_h` are bath temperatures in T_F units. On success writes a
 * fresh handle to `out`, which the caller owns.
 */
se_status se_cycle_run(se_variant variant,
                       se_order order,
                       se_spectrum spectrum,
                       uint64_t n_particles,
                       double ratio_squared,
                       double scale_b,
                       double t_c,
                       double t_h,
                       se_report **out);

/**
 * Release a report handle. Null is a no-op.
 */
void se_report_free(se_report *report);

/**
 * Net extracted work, E_F units (positive when the cycle produces work).
 */
se_status se_report_w_out(const se_report *report, double *out);

/**
 * Heat exchanged with the hot bath, E_F units, into-medium positive.
 */
se_status se_report_q_in(const se_report *report, double *out);

/**
 * Heat exchanged with the cold bath, E_F units, into-medium positive.
 */
se_status se_report_q_out(const se_report *report, double *out);

/**
 * Efficiency W_out/Q_in. Undefined unless the cycle actually works as an
 * engine (the equivalence construction defines it whenever heat flowed).
 */
se_status se_report_eta(const se_report *report, double *out);

/**
 * Work relative to N independent single-particle engines between the same
 * baths. Undefined when that reference is not itself an engine.
 */
se_status se_report_gain(const se_report *report, double *out);

/**
 * Thermal share of the hot-leg heat (six-stroke variant only).
 */
se_status se_report_sigma(const se_report *report, double *out);

/**
 * Statistical share of the hot-leg heat (six-stroke variant only).
 */
se_status se_report_sigma_s(const se_report *report, double *out);

/**
 * Net energy drift over the closed cycle, E_F units (diagnostic; should be
 * at round-off scale).
 */
se_status se_report_closure(const se_report *report, double *out);

/**
 * Operational mode classification.
 */
se_status se_report_mode(const se_report *report, se_mode *out);

/**
 * Number of strokes in the cycle (4 or 6).
 */
se_status se_report_stroke_count(const se_report *report, size_t *out);

/**
 * Copy one stroke's ledger, zero-indexed in execution order.
 */
se_status se_report_stroke(const se_report *report, size_t index, se_stroke *out);

/**
 * Maximize net work over the trap-size ratio r in [r_min, r_max] at fixed
 * baths (T_F units). Pass `coarse_points = 0` for the default scan density.
 */
se_status se_optimize_ratio(se_variant variant,
                            se_order order,
                            se_spectrum spectrum,
                            uint64_t n_particles,
                            double t_c,
                            double t_h,
                            double r_min,
                            double r_max,
                            size_t coarse_points,
                            se_optimum *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* STATENGINE_H */

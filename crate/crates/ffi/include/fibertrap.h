#ifndef FIBERTRAP_H
#define FIBERTRAP_H

#include <stddef.h>
#include <stdint.h>

typedef enum FtStatus {
  FT_STATUS_OK = 0,
  FT_STATUS_NULL_POINTER = 1,
  // Argument outside the domain of the operation.
  FT_STATUS_INPUT = 2,
  // Solver or quadrature failure.
  FT_STATUS_NUMERICAL = 3,
  // Internal panic caught at the boundary.
  FT_STATUS_INTERNAL = 4,
} FtStatus;

typedef enum FtSurface {
  FT_SURFACE_NONE = 0,
  FT_SURFACE_VAN_DER_WAALS = 1,
  FT_SURFACE_CASIMIR_POLDER = 2,
} FtSurface;

// Step-index fiber.
typedef struct FtFiber FtFiber;

// Solved HE11 mode.
typedef struct FtMode FtMode;

// Scalar mode data, SI units.
typedef struct FtModeInfo {
  double wavelength;
  double beta;
  double n_eff;
  double h;
  double q;
  double s;
  double n1;
  double n2;
  double residual;
  // Field scale, V/m; 1 until normalized.
  double amplitude;
  // Normalized power, W; 0 if not normalized.
  double power;
} FtModeInfo;

// Two-color trap inputs. Lengths in m, powers in W.
typedef struct FtTrapParams {
  double red_wavelength;
  double red_power;
  double blue_wavelength;
  double blue_power;
  // Polarization axis of the blue beam relative to the red one, rad.
  double relative_polarization;
  // Nonzero launches the red beam from both ends.
  int32_t counterpropagating;
  // One of the `FtSurface` values.
  int32_t surface;
  // J·m³; used with `FT_SURFACE_VAN_DER_WAALS`, non-positive selects the default.
  double c3;
  // C·m²/V; used with `FT_SURFACE_CASIMIR_POLDER`, non-positive selects the default.
  double alpha0;
  // Used with `FT_SURFACE_CASIMIR_POLDER`, non-positive selects the default.
  double epsilon;
} FtTrapParams;

// Characterization of the deeper of the two standard cuts.
typedef struct FtTrapResult {
  // 1 if the cut has an interior minimum.
  int32_t has_trap;
  // φ − φ₀ of the reported cut, rad.
  double relative_azimuth;
  double r_min;
  double d_min;
  double depth_mk;
  double escape_mk;
  double barrier_mk;
} FtTrapResult;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static nul-terminated string.
const char *ft_version(void);

// Copies the calling thread's last error message into `buffer` (truncated, nul-terminated).
// Returns the full message length excluding the terminator, 0 if there is none.
//
// # Safety
// `buffer` must be null or valid for `capacity` bytes.
size_t ft_last_error_message(char *buffer, size_t capacity);

// Fiber with a constant core index; `core_index <= 0` selects fused silica.
//
// # Safety
// `out` must be valid for writes.
enum FtStatus ft_fiber_new(double radius,
                           double core_index,
                           double surround_index,
                           struct FtFiber **out);

// # Safety
// `fiber` must be null or a handle from [`ft_fiber_new`] not yet freed.
void ft_fiber_free(struct FtFiber *fiber);

// # Safety
// `fiber` must be a live handle and `out` valid for writes.
enum FtStatus ft_fiber_v_number(const struct FtFiber *fiber, double wavelength, double *out);

// Solves the HE11 mode at `wavelength`.
//
// # Safety
// `fiber` must be a live handle and `out` valid for writes.
enum FtStatus ft_mode_solve(const struct FtFiber *fiber, double wavelength, struct FtMode **out);

// # Safety
// `mode` must be null or a handle from [`ft_mode_solve`] not yet freed.
void ft_mode_free(struct FtMode *mode);

// Rescales the field so the mode carries `power` watts.
//
// # Safety
// `mode` must be a live handle.
enum FtStatus ft_mode_normalize(struct FtMode *mode, double power);

// # Safety
// `mode` must be a live handle and `out` valid for writes.
enum FtStatus ft_mode_info(const struct FtMode *mode, struct FtModeInfo *out);

// Fraction of the guided power outside the core.
//
// # Safety
// `mode` must be a live handle and `out` valid for writes.
enum FtStatus ft_mode_fraction_outside(const struct FtMode *mode, double *out);

// |E|² of the quasi-linear mode polarized along `phi0`, V²/m².
//
// # Safety
// `mode` must be a live handle and `out` valid for writes.
enum FtStatus ft_mode_intensity(const struct FtMode *mode,
                                double r,
                                double phi,
                                double phi0,
                                double *out);

// Characterizes the two-color trap around `fiber` and reports the deeper cut.
//
// # Safety
// `fiber` must be a live handle, `params` readable and `out` valid for writes.
enum FtStatus ft_trap_characterize(const struct FtFiber *fiber,
                                   const struct FtTrapParams *params,
                                   struct FtTrapResult *out);

// Largest adiabatic local taper angle at radius `rho`, rad.
//
// # Safety
// `fiber` must be a live handle and `out` valid for writes.
enum FtStatus ft_taper_limit_angle(const struct FtFiber *fiber,
                                   double rho,
                                   double wavelength,
                                   double *out);

// Shortest adiabatic linear taper from `rho_start` down to `rho_end`, m.
//
// # Safety
// `fiber` must be a live handle and `out` valid for writes.
enum FtStatus ft_taper_min_linear_length(const struct FtFiber *fiber,
                                         double rho_start,
                                         double rho_end,
                                         double wavelength,
                                         double *out);

// Single-photon magnetic field of a resonator at `frequency` (Hz) with `mode_volume` (m³), T.
//
// # Safety
// `out` must be valid for writes.
enum FtStatus ft_single_photon_field(double frequency, double mode_volume, double *out);

// Field of one flux quantum through `loop_area` (m²), T.
//
// # Safety
// `out` must be valid for writes.
enum FtStatus ft_flux_quantum_field(double loop_area, double geometric_factor, double *out);

// Per-atom rate `g` and collective rate g√N, Hz. Either out-pointer may be null.
//
// # Safety
// Non-null out-pointers must be valid for writes.
enum FtStatus ft_coupling_rate(double field,
                               double moment,
                               uint64_t atoms,
                               double *g,
                               double *collective);

#ifdef __cplusplus
} // extern "C"
#endif // __cplusplus

#endif /* FIBERTRAP_H */

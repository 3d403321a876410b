//! C ABI over the `fibertrap` library.
//!
//! Every function returns an [`FtStatus`] and writes results through out-pointers.
//! On failure the message is kept per thread and read with [`ft_last_error_message`].
//! Handles are created by `*_new`/`*_solve` and must be released with the matching `*_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, UnwindSafe};

use fibertrap::coupling;
use fibertrap::fibermode::{solve_he11, v_number, FiberSpec, IndexModel, ModeSolution};
use fibertrap::taper::{limit_angle, min_linear_taper_length};
use fibertrap::trap::{analyze, SurfaceModel, TrapBeam, TrapConfig, Verdict};
use fibertrap::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtStatus {
    Ok = 0,
    NullPointer = 1,
    /// Argument outside the domain of the operation.
    Input = 2,
    /// Solver or quadrature failure.
    Numerical = 3,
    /// Internal panic caught at the boundary.
    Internal = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FtSurface {
    None = 0,
    VanDerWaals = 1,
    CasimirPolder = 2,
}

/// Step-index fiber.
pub struct FtFiber {
    spec: FiberSpec,
}

/// Solved HE11 mode.
pub struct FtMode {
    mode: ModeSolution,
}

/// Scalar mode data, SI units.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct FtModeInfo {
    pub wavelength: f64,
    pub beta: f64,
    pub n_eff: f64,
    pub h: f64,
    pub q: f64,
    pub s: f64,
    pub n1: f64,
    pub n2: f64,
    pub residual: f64,
    /// Field scale, V/m; 1 until normalized.
    pub amplitude: f64,
    /// Normalized power, W; 0 if not normalized.
    pub power: f64,
}

/// Two-color trap inputs. Lengths in m, powers in W.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct FtTrapParams {
    pub red_wavelength: f64,
    pub red_power: f64,
    pub blue_wavelength: f64,
    pub blue_power: f64,
    /// Polarization axis of the blue beam relative to the red one, rad.
    pub relative_polarization: f64,
    /// Nonzero launches the red beam from both ends.
    pub counterpropagating: i32,
    /// One of the `FtSurface` values.
    pub surface: i32,
    /// J·m³; used with `FT_SURFACE_VAN_DER_WAALS`, non-positive selects the default.
    pub c3: f64,
    /// C·m²/V; used with `FT_SURFACE_CASIMIR_POLDER`, non-positive selects the default.
    pub alpha0: f64,
    /// Used with `FT_SURFACE_CASIMIR_POLDER`, non-positive selects the default.
    pub epsilon: f64,
}

/// Characterization of the deeper of the two standard cuts.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct FtTrapResult {
    /// 1 if the cut has an interior minimum.
    pub has_trap: i32,
    /// φ − φ₀ of the reported cut, rad.
    pub relative_azimuth: f64,
    pub r_min: f64,
    pub d_min: f64,
    pub depth_mk: f64,
    pub escape_mk: f64,
    pub barrier_mk: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let text = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(text));
}

fn fail(error: Error) -> FtStatus {
    let status = if error.is_input_error() { FtStatus::Input } else { FtStatus::Numerical };
    set_error(error.to_string());
    status
}

fn guard<F: FnOnce() -> Result<(), FtStatus> + UnwindSafe>(body: F) -> FtStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(body) {
        Ok(Ok(())) => FtStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => {
            set_error("internal panic".into());
            FtStatus::Internal
        }
    }
}

unsafe fn out_ref<'a, T>(ptr: *mut T, name: &str) -> Result<&'a mut T, FtStatus> {
    ptr.as_mut().ok_or_else(|| {
        set_error(format!("{name} is null"));
        FtStatus::NullPointer
    })
}

unsafe fn in_ref<'a, T>(ptr: *const T, name: &str) -> Result<&'a T, FtStatus> {
    ptr.as_ref().ok_or_else(|| {
        set_error(format!("{name} is null"));
        FtStatus::NullPointer
    })
}

/// Library version as a static nul-terminated string.
#[no_mangle]
pub extern "C" fn ft_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's last error message into `buffer` (truncated, nul-terminated).
/// Returns the full message length excluding the terminator, 0 if there is none.
///
/// # Safety
/// `buffer` must be null or valid for `capacity` bytes.
#[no_mangle]
pub unsafe extern "C" fn ft_last_error_message(buffer: *mut c_char, capacity: usize) -> usize {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        None => {
            if !buffer.is_null() && capacity > 0 {
                *buffer = 0;
            }
            0
        }
        Some(message) => {
            let bytes = message.as_bytes();
            if !buffer.is_null() && capacity > 0 {
                let n = bytes.len().min(capacity - 1);
                std::ptr::copy_nonoverlapping(bytes.as_ptr().cast(), buffer, n);
                *buffer.add(n) = 0;
            }
            bytes.len()
        }
    })
}

/// Fiber with a constant core index; `core_index <= 0` selects fused silica.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ft_fiber_new(
    radius: f64,
    core_index: f64,
    surround_index: f64,
    out: *mut *mut FtFiber,
) -> FtStatus {
    guard(|| {
        let out = out_ref(out, "out")?;
        let core = if core_index > 0.0 { IndexModel::Constant(core_index) } else { IndexModel::FusedSilica };
        let spec = FiberSpec::new(radius, core, surround_index).map_err(fail)?;
        *out = Box::into_raw(Box::new(FtFiber { spec }));
        Ok(())
    })
}

/// # Safety
/// `fiber` must be null or a handle from [`ft_fiber_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ft_fiber_free(fiber: *mut FtFiber) {
    if !fiber.is_null() {
        drop(Box::from_raw(fiber));
    }
}

/// # Safety
/// `fiber` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ft_fiber_v_number(fiber: *const FtFiber, wavelength: f64, out: *mut f64) -> FtStatus {
    guard(|| {
        let fiber = in_ref(fiber, "fiber")?;
        *out_ref(out, "out")? = v_number(&fiber.spec, wavelength).map_err(fail)?;
        Ok(())
    })
}

/// Solves the HE11 mode at `wavelength`.
///
/// # Safety
/// `fiber` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ft_mode_solve(fiber: *const FtFiber, wavelength: f64, out: *mut *mut FtMode) -> FtStatus {
    guard(|| {
        let fiber = in_ref(fiber, "fiber")?;
        let out = out_ref(out, "out")?;
        let mode = solve_he11(&fiber.spec, wavelength).map_err(fail)?;
        *out = Box::into_raw(Box::new(FtMode { mode }));
        Ok(())
    })
}

/// # Safety
/// `mode` must be null or a handle from [`ft_mode_solve`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ft_mode_free(mode: *mut FtMode) {
    if !mode.is_null() {
        drop(Box::from_raw(mode));
    }
}

/// Rescales the field so the mode carries `power` watts.
///
/// # Safety
/// `mode` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn ft_mode_normalize(mode: *mut FtMode, power: f64) -> FtStatus {
    guard(|| {
        let mode = out_ref(mode, "mode")?;
        mode.mode = mode.mode.normalized_to_power(power).map_err(fail)?;
        Ok(())
    })
}

/// # Safety
/// `mode` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ft_mode_info(mode: *const FtMode, out: *mut FtModeInfo) -> FtStatus {
    guard(|| {
        let m = &in_ref(mode, "mode")?.mode;
        *out_ref(out, "out")? = FtModeInfo {
            wavelength: m.wavelength,
            beta: m.beta,
            n_eff: m.n_eff(),
            h: m.h,
            q: m.q,
            s: m.s,
            n1: m.n1,
            n2: m.n2,
            residual: m.residual,
            amplitude: m.amplitude,
            power: m.power.unwrap_or(0.0),
        };
        Ok(())
    })
}

/// Fraction of the guided power outside the core.
///
/// # Safety
/// `mode` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ft_mode_fraction_outside(mode: *const FtMode, out: *mut f64) -> FtStatus {
    guard(|| {
        let m = &in_ref(mode, "mode")?.mode;
        *out_ref(out, "out")? = m.power_split().map_err(fail)?.fraction_outside();
        Ok(())
    })
}

/// |E|² of the quasi-linear mode polarized along `phi0`, V²/m².
///
/// # Safety
/// `mode` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ft_mode_intensity(
    mode: *const FtMode,
    r: f64,
    phi: f64,
    phi0: f64,
    out: *mut f64,
) -> FtStatus {
    guard(|| {
        let m = &in_ref(mode, "mode")?.mode;
        *out_ref(out, "out")? = m.intensity(r, phi, phi0).map_err(fail)?;
        Ok(())
    })
}

fn positive_or(value: f64, default: f64) -> f64 {
    if value > 0.0 {
        value
    } else {
        default
    }
}

fn surface_model(params: &FtTrapParams) -> Result<SurfaceModel, FtStatus> {
    Ok(match params.surface {
        x if x == FtSurface::None as i32 => SurfaceModel::None,
        x if x == FtSurface::VanDerWaals as i32 => SurfaceModel::VanDerWaals {
            c3: positive_or(params.c3, fibertrap::trap::DEFAULT_C3),
        },
        x if x == FtSurface::CasimirPolder as i32 => SurfaceModel::CasimirPolder {
            alpha0: positive_or(params.alpha0, fibertrap::trap::DEFAULT_ALPHA0),
            epsilon: positive_or(params.epsilon, fibertrap::trap::DEFAULT_EPSILON),
        },
        other => {
            set_error(format!("unknown surface model {other}"));
            return Err(FtStatus::Input);
        }
    })
}

/// Characterizes the two-color trap around `fiber` and reports the deeper cut.
///
/// # Safety
/// `fiber` must be a live handle, `params` readable and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ft_trap_characterize(
    fiber: *const FtFiber,
    params: *const FtTrapParams,
    out: *mut FtTrapResult,
) -> FtStatus {
    guard(|| {
        let fiber = in_ref(fiber, "fiber")?;
        let params = in_ref(params, "params")?;
        let out = out_ref(out, "out")?;
        let mut red = TrapBeam::new(params.red_wavelength, params.red_power);
        red.counterpropagating = params.counterpropagating != 0;
        let mut blue = TrapBeam::new(params.blue_wavelength, params.blue_power);
        blue.phi0 = params.relative_polarization;
        let config = TrapConfig {
            red,
            blue,
            surface: surface_model(params)?,
            fiber: fiber.spec,
        };
        let analysis = analyze(&config).map_err(fail)?;
        let cut = analysis.primary();
        let mut result = FtTrapResult {
            has_trap: i32::from(cut.verdict == Verdict::Trap),
            relative_azimuth: cut.relative_azimuth,
            ..FtTrapResult::default()
        };
        if let Some(site) = cut.site {
            result.r_min = site.r_min;
            result.d_min = site.d_min;
            result.depth_mk = site.depth_mk;
            result.escape_mk = site.escape_mk;
            result.barrier_mk = site.barrier_mk;
        }
        *out = result;
        Ok(())
    })
}

/// Largest adiabatic local taper angle at radius `rho`, rad.
///
/// # Safety
/// `fiber` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ft_taper_limit_angle(
    fiber: *const FtFiber,
    rho: f64,
    wavelength: f64,
    out: *mut f64,
) -> FtStatus {
    guard(|| {
        let fiber = in_ref(fiber, "fiber")?;
        *out_ref(out, "out")? = limit_angle(rho, wavelength, &fiber.spec).map_err(fail)?;
        Ok(())
    })
}

/// Shortest adiabatic linear taper from `rho_start` down to `rho_end`, m.
///
/// # Safety
/// `fiber` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ft_taper_min_linear_length(
    fiber: *const FtFiber,
    rho_start: f64,
    rho_end: f64,
    wavelength: f64,
    out: *mut f64,
) -> FtStatus {
    guard(|| {
        let fiber = in_ref(fiber, "fiber")?;
        *out_ref(out, "out")? =
            min_linear_taper_length(rho_start, rho_end, wavelength, &fiber.spec).map_err(fail)?;
        Ok(())
    })
}

/// Single-photon magnetic field of a resonator at `frequency` (Hz) with `mode_volume` (m³), T.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ft_single_photon_field(frequency: f64, mode_volume: f64, out: *mut f64) -> FtStatus {
    guard(|| {
        *out_ref(out, "out")? = coupling::single_photon_field(frequency, mode_volume).map_err(fail)?;
        Ok(())
    })
}

/// Field of one flux quantum through `loop_area` (m²), T.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ft_flux_quantum_field(loop_area: f64, geometric_factor: f64, out: *mut f64) -> FtStatus {
    guard(|| {
        *out_ref(out, "out")? = coupling::flux_quantum_field(loop_area, geometric_factor).map_err(fail)?;
        Ok(())
    })
}

/// Per-atom rate `g` and collective rate g√N, Hz. Either out-pointer may be null.
///
/// # Safety
/// Non-null out-pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn ft_coupling_rate(
    field: f64,
    moment: f64,
    atoms: u64,
    g: *mut f64,
    collective: *mut f64,
) -> FtStatus {
    guard(|| {
        let estimate = coupling::coupling_rate(field, moment, atoms).map_err(fail)?;
        if let Some(g) = g.as_mut() {
            *g = estimate.g;
        }
        if let Some(c) = collective.as_mut() {
            *c = estimate.collective;
        }
        Ok(())
    })
}

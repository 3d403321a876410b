//! Guided modes of a step-index circular fiber (core of index n₁ and radius a in
//! a homogeneous surround of index n₂): the exact HE11 hybrid mode, the TE01
//! first excited mode, their fields and power normalization.
//!
//! Roots are searched in the transverse parameter U = h·a, with
//! W = q·a = √(V² − U²). HE11 always has U < j₁,₁ and TE01 lives in
//! (j₀,₁, j₁,₁), so both scans are confined to a window free of other modes of
//! the same family.

use num_complex::Complex64;

use crate::constants::{C, EPS0, MU0, PI};
use crate::error::{Error, Result};
use crate::numerics::{bisect_secant, integrate};
use crate::specfun::{j012, j_prime_from, k012_scaled};

/// First zero of J0: the single-mode cutoff V-number.
pub const SINGLE_MODE_CUTOFF: f64 = 2.404_825_557_695_773;
/// First nonzero zero of J1.
const J1_FIRST_ZERO: f64 = 3.831_705_970_207_512;

/// Fused-silica three-term Sellmeier coefficients (wavelength in µm).
pub const SILICA_SELLMEIER_B: [f64; 3] = [0.696_166_3, 0.407_942_6, 0.897_479_4];
pub const SILICA_SELLMEIER_C_UM: [f64; 3] = [0.068_404_3, 0.116_241_4, 9.896_161];
/// Wavelength range (m) over which the silica model is accepted.
pub const SILICA_RANGE: (f64, f64) = (400e-9, 1200e-9);

const SCAN_POINTS: usize = 2048;
const MAX_SCAN_POINTS: usize = 1 << 20;
const POWER_REL_TOL: f64 = 1e-11;

/// Refractive index of fused silica.
pub fn silica_index(wavelength: f64) -> Result<f64> {
    if !(wavelength >= SILICA_RANGE.0 && wavelength <= SILICA_RANGE.1) {
        return Err(Error::domain(
            "wavelength",
            format!(
                "{:.1} nm outside the fused-silica model range {:.0}–{:.0} nm",
                wavelength * 1e9,
                SILICA_RANGE.0 * 1e9,
                SILICA_RANGE.1 * 1e9
            ),
        ));
    }
    let l2 = (wavelength * 1e6).powi(2);
    let n2 = 1.0
        + SILICA_SELLMEIER_B
            .iter()
            .zip(SILICA_SELLMEIER_C_UM)
            .map(|(b, c)| b * l2 / (l2 - c * c))
            .sum::<f64>();
    Ok(n2.sqrt())
}

/// Refractive index of the fiber material.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum IndexModel {
    FusedSilica,
    Constant(f64),
}

impl IndexModel {
    pub fn at(&self, wavelength: f64) -> Result<f64> {
        match *self {
            IndexModel::FusedSilica => silica_index(wavelength),
            IndexModel::Constant(n) => Ok(n),
        }
    }
}

/// Geometry and materials of the fiber.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FiberSpec {
    /// Radius a, m.
    pub radius: f64,
    pub core_index: IndexModel,
    pub surround_index: f64,
}

impl FiberSpec {
    pub fn new(radius: f64, core_index: IndexModel, surround_index: f64) -> Result<Self> {
        if !(radius > 0.0) || !radius.is_finite() {
            return Err(Error::domain("radius", format!("{radius:e} m must be positive")));
        }
        if !(surround_index >= 1.0) || !surround_index.is_finite() {
            return Err(Error::domain(
                "surround index",
                format!("{surround_index} must be a finite index ≥ 1"),
            ));
        }
        if let IndexModel::Constant(n) = core_index {
            if !(n > surround_index) || !n.is_finite() {
                return Err(Error::domain(
                    "core index",
                    format!("{n} must exceed the surround index {surround_index}"),
                ));
            }
        }
        Ok(Self {
            radius,
            core_index,
            surround_index,
        })
    }

    /// Bare silica fiber in vacuum.
    pub fn silica_in_vacuum(radius: f64) -> Result<Self> {
        Self::new(radius, IndexModel::FusedSilica, 1.0)
    }

    pub fn with_radius(&self, radius: f64) -> Result<Self> {
        Self::new(radius, self.core_index, self.surround_index)
    }

    /// (n₁, n₂) at `wavelength`.
    pub fn indices(&self, wavelength: f64) -> Result<(f64, f64)> {
        let n1 = self.core_index.at(wavelength)?;
        if !(n1 > self.surround_index) {
            return Err(Error::domain(
                "core index",
                format!("{n1} does not exceed surround {}", self.surround_index),
            ));
        }
        Ok((n1, self.surround_index))
    }
}

fn check_wavelength(wavelength: f64) -> Result<()> {
    if !(wavelength > 0.0) || !wavelength.is_finite() {
        return Err(Error::domain(
            "wavelength",
            format!("{wavelength:e} m must be positive"),
        ));
    }
    Ok(())
}

/// Normalized frequency V = k₀·a·√(n₁² − n₂²).
pub fn v_number(spec: &FiberSpec, wavelength: f64) -> Result<f64> {
    check_wavelength(wavelength)?;
    let (n1, n2) = spec.indices(wavelength)?;
    Ok(2.0 * PI / wavelength * spec.radius * (n1 * n1 - n2 * n2).sqrt())
}

struct Setup {
    k0: f64,
    n1: f64,
    n2: f64,
    v: f64,
    radius: f64,
}

impl Setup {
    fn new(spec: &FiberSpec, wavelength: f64) -> Result<Self> {
        check_wavelength(wavelength)?;
        let (n1, n2) = spec.indices(wavelength)?;
        let k0 = 2.0 * PI / wavelength;
        Ok(Self {
            k0,
            n1,
            n2,
            v: k0 * spec.radius * (n1 * n1 - n2 * n2).sqrt(),
            radius: spec.radius,
        })
    }

    fn beta_from_u(&self, u: f64) -> f64 {
        ((self.n1 * self.k0).powi(2) - (u / self.radius).powi(2)).sqrt()
    }

    fn u_from_beta(&self, beta: f64) -> f64 {
        self.radius * ((self.n1 * self.k0).powi(2) - beta * beta).max(0.0).sqrt()
    }

    /// U window corresponding to β ∈ (n₂k₀ + ε, n₁k₀ − ε), ε = 1e-9·k₀.
    fn u_window(&self) -> (f64, f64) {
        let eps = 1e-9 * self.k0;
        (
            self.u_from_beta(self.n1 * self.k0 - eps),
            self.u_from_beta(self.n2 * self.k0 + eps),
        )
    }

    fn w(&self, u: f64) -> f64 {
        (self.v * self.v - u * u).max(0.0).sqrt()
    }

    fn nu(&self) -> f64 {
        (self.n2 / self.n1).powi(2)
    }

    /// HE11 characteristic function multiplied through by J1(U)², which removes
    /// the poles of J1'/(U J1) without adding roots.
    fn he11_pole_free(&self, u: f64) -> f64 {
        let w = self.w(u);
        let j = j012(u);
        let k = k012_scaled(w);
        let y = -(k[0] + k[1] / w) / (w * k[1]);
        let a = j_prime_from(1, u, &j) / u;
        let nu = self.nu();
        let rhs = (1.0 / (u * u) + 1.0 / (w * w)) * (1.0 / (u * u) + nu / (w * w));
        (a + y * j[1]) * (a + nu * y * j[1]) - rhs * j[1] * j[1]
    }

    /// TE01 characteristic function J1·W·K0 + U·J0·K1 (both scaled by e^W).
    fn te01(&self, u: f64) -> f64 {
        let w = self.w(u);
        let j = j012(u);
        let k = k012_scaled(w);
        j[1] * w * k[0] + u * j[0] * k[1]
    }
}

/// Parts of the HE11 characteristic equation
/// (X+Y)(X+νY) = (1/U²+1/W²)(1/U²+ν/W²), ν = n₂²/n₁²,
/// with X = J1'(U)/(U J1(U)) and Y = K1'(W)/(W K1(W)).
fn he11_terms(u: f64, w: f64, nu: f64) -> (f64, f64, f64, f64) {
    let j = j012(u);
    let k = k012_scaled(w);
    let x = j_prime_from(1, u, &j) / (u * j[1]);
    let y = -(k[0] + k[1] / w) / (w * k[1]);
    let rhs = (1.0 / (u * u) + 1.0 / (w * w)) * (1.0 / (u * u) + nu / (w * w));
    (x, y, (x + y) * (x + nu * y), rhs)
}

/// The HE11 characteristic function F(β) = (X+Y)(X+νY) − (1/U²+1/W²)(1/U²+ν/W²).
pub fn he11_characteristic(spec: &FiberSpec, wavelength: f64, beta: f64) -> Result<f64> {
    let setup = Setup::new(spec, wavelength)?;
    let (lo, hi) = (setup.n2 * setup.k0, setup.n1 * setup.k0);
    if !(beta > lo && beta < hi) {
        return Err(Error::domain(
            "beta",
            format!("{beta:e} outside the guided band ({lo:e}, {hi:e})"),
        ));
    }
    let u = setup.u_from_beta(beta);
    let (_, _, lhs, rhs) = he11_terms(u, setup.w(u), setup.nu());
    Ok(lhs - rhs)
}

/// Scans `f` on (lo, hi) starting from `lo` and refines the first sign change.
fn first_root<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64, what: &str) -> Result<f64> {
    let mut points = SCAN_POINTS;
    loop {
        let step = (hi - lo) / points as f64;
        let mut prev_x = lo;
        let mut prev_f = f(lo);
        for i in 1..=points {
            let x = if i == points { hi } else { lo + i as f64 * step };
            let fx = f(x);
            if prev_f.is_finite() && fx.is_finite() && (prev_f == 0.0 || prev_f.signum() != fx.signum()) {
                let tol = 1e-15 * hi.max(1.0);
                return bisect_secant(&f, prev_x, x, tol).map(|r| r.x);
            }
            prev_x = x;
            prev_f = fx;
        }
        if points >= MAX_SCAN_POINTS {
            return Err(Error::Solver(format!(
                "{what}: no sign change in U ∈ ({lo:.6e}, {hi:.6e}) after a {points}-point scan"
            )));
        }
        points *= 8;
    }
}

/// Solution of the HE11 eigenvalue problem plus the field amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModeSolution {
    /// Vacuum wavelength, m.
    pub wavelength: f64,
    /// Vacuum wavenumber 2π/λ, 1/m.
    pub k0: f64,
    /// Propagation constant, 1/m.
    pub beta: f64,
    /// Interior transverse wavenumber √(n₁²k₀² − β²), 1/m.
    pub h: f64,
    /// Exterior decay constant √(β² − n₂²k₀²), 1/m.
    pub q: f64,
    /// Hybrid-mode parameter s = (1/U² + 1/W²)/(X + Y).
    pub s: f64,
    pub n1: f64,
    pub n2: f64,
    pub radius: f64,
    /// Field scale |A|, V/m. 1 until the mode is normalized to a power.
    pub amplitude: f64,
    /// Guided power, W, once normalized.
    pub power: Option<f64>,
    /// |F(β)| / (1/U²+1/W²)(1/U²+ν/W²) at the returned root.
    pub residual: f64,
    j1_a: f64,
    k1s_a: f64,
}

/// Polarization of the HE11 field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Polarization {
    /// Quasi-linear: the radial field is maximal along azimuth φ₀.
    QuasiLinear { phi0: f64 },
    /// Quasi-circular with angular dependence e^{±iφ} (`counterclockwise` = +).
    QuasiCircular { counterclockwise: bool },
}

/// Where a field is evaluated relative to the fiber surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Region {
    Core,
    Surround,
}

/// Complex cylindrical components of a field phasor (physical field = Re[F e^{−iωt}]).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CylindricalField {
    pub r: Complex64,
    pub phi: Complex64,
    pub z: Complex64,
}

impl CylindricalField {
    pub fn norm_sqr(&self) -> f64 {
        self.r.norm_sqr() + self.phi.norm_sqr() + self.z.norm_sqr()
    }
}

/// Coefficients of the azimuthally resolved intensity
///
/// inside:  g_in [J0² + u J1² + f J2² − (u J1² + f_p J0 J2) cos 2(φ−φ₀)]
/// outside: g_out[K0² + w K1² + f K2² − (w K1² − f_p K0 K2) cos 2(φ−φ₀)]
///
/// with Bessel arguments hr and qr, φ₀ the quasi-linear polarization axis.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct IntensityCoefficients {
    pub u: f64,
    pub w: f64,
    pub f: f64,
    pub f_p: f64,
    pub g_in: f64,
    pub g_out: f64,
}

/// Guided power per unit |A|², split at the fiber surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerSplit {
    pub inside: f64,
    pub outside: f64,
}

impl PowerSplit {
    pub fn total(&self) -> f64 {
        self.inside + self.outside
    }

    pub fn fraction_outside(&self) -> f64 {
        self.outside / self.total()
    }
}

/// How optical power maps to field amplitude.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PowerNormalization {
    /// Axial Poynting flux of the exact hybrid fields.
    #[default]
    ExactPoynting,
    /// P ≈ ½ε₀c·n_eff·∫|E|² dA.
    EffectiveIndex,
}

/// Solves the exact HE11 eigenvalue equation. The result carries unit amplitude.
pub fn solve_he11(spec: &FiberSpec, wavelength: f64) -> Result<ModeSolution> {
    let setup = Setup::new(spec, wavelength)?;
    let (u_lo, u_hi) = setup.u_window();
    let hi = u_hi.min(J1_FIRST_ZERO * (1.0 - 1e-12));
    let u = match first_root(|u| setup.he11_pole_free(u), u_lo, hi, "HE11") {
        Ok(u) => u,
        Err(_) if hi < u_hi => first_root(|u| setup.he11_pole_free(u), u_lo, u_hi, "HE11")?,
        Err(e) => return Err(e),
    };
    let w = setup.w(u);
    let nu = setup.nu();
    let (x, y, lhs, rhs) = he11_terms(u, w, nu);
    let residual = ((lhs - rhs) / rhs).abs();
    let a = spec.radius;
    let j = j012(u);
    let k = k012_scaled(w);
    Ok(ModeSolution {
        wavelength,
        k0: setup.k0,
        beta: setup.beta_from_u(u),
        h: u / a,
        q: w / a,
        s: (1.0 / (u * u) + 1.0 / (w * w)) / (x + y),
        n1: setup.n1,
        n2: setup.n2,
        radius: a,
        amplitude: 1.0,
        power: None,
        residual,
        j1_a: j[1],
        k1s_a: k[1],
    })
}

/// Propagation constant of the first excited mode.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FirstExcited {
    /// β₂, 1/m. Equal to n₂k₀ when the mode is cut off.
    pub beta: f64,
    /// True when TE01 is guided; false when β₂ is the radiation-band edge.
    pub guided: bool,
}

/// TE01 propagation constant, or the radiation edge n₂k₀ below cutoff.
pub fn solve_first_excited(spec: &FiberSpec, wavelength: f64) -> Result<FirstExcited> {
    let setup = Setup::new(spec, wavelength)?;
    let edge = setup.n2 * setup.k0;
    if setup.v <= SINGLE_MODE_CUTOFF {
        return Ok(FirstExcited {
            beta: edge,
            guided: false,
        });
    }
    let (_, u_hi) = setup.u_window();
    let hi = u_hi.min(J1_FIRST_ZERO);
    if hi <= SINGLE_MODE_CUTOFF {
        return Ok(FirstExcited {
            beta: edge,
            guided: false,
        });
    }
    match first_root(|u| setup.te01(u), SINGLE_MODE_CUTOFF, hi, "TE01") {
        Ok(u) => Ok(FirstExcited {
            beta: setup.beta_from_u(u).max(edge),
            guided: true,
        }),
        // Within ε of cutoff the root merges with the band edge.
        Err(_) => Ok(FirstExcited {
            beta: edge,
            guided: false,
        }),
    }
}

impl ModeSolution {
    /// Effective index β/k₀.
    pub fn n_eff(&self) -> f64 {
        self.beta / self.k0
    }

    pub fn angular_frequency(&self) -> f64 {
        C * self.k0
    }

    fn s1(&self) -> f64 {
        self.beta * self.beta * self.s / (self.k0 * self.n1).powi(2)
    }

    fn s2(&self) -> f64 {
        self.beta * self.beta * self.s / (self.k0 * self.n2).powi(2)
    }

    fn check_r(r: f64) -> Result<()> {
        if !(r >= 0.0) || !r.is_finite() {
            return Err(Error::domain("r", format!("{r:e} m must be ≥ 0")));
        }
        Ok(())
    }

    fn region_of(&self, r: f64) -> Region {
        if r < self.radius {
            Region::Core
        } else {
            Region::Surround
        }
    }

    /// Quasi-circular (l = +1) radial profiles of E: (E_r/i, E_φ, E_z) without e^{iφ}.
    fn e_profiles(&self, region: Region, r: f64) -> (f64, f64, f64) {
        let (s, a, b) = (self.s, self.amplitude, self.beta);
        match region {
            Region::Core => {
                let j = j012(self.h * r);
                let c = b / (2.0 * self.h);
                (
                    a * c * ((1.0 - s) * j[0] - (1.0 + s) * j[2]),
                    -a * c * ((1.0 - s) * j[0] + (1.0 + s) * j[2]),
                    a * j[1],
                )
            }
            Region::Surround => {
                let k = k012_scaled(self.q * r);
                let ratio = self.j1_a / self.k1s_a * (-self.q * (r - self.radius)).exp();
                let c = b / (2.0 * self.q);
                (
                    a * ratio * c * ((1.0 - s) * k[0] + (1.0 + s) * k[2]),
                    -a * ratio * c * ((1.0 - s) * k[0] - (1.0 + s) * k[2]),
                    a * ratio * k[1],
                )
            }
        }
    }

    /// Quasi-circular (l = +1) radial profiles of H: (H_r, H_φ/i, H_z/i).
    fn h_profiles(&self, region: Region, r: f64) -> (f64, f64, f64) {
        let (s, a, b) = (self.s, self.amplitude, self.beta);
        let omega = self.angular_frequency();
        let hz = a * b * s / (omega * MU0);
        match region {
            Region::Core => {
                let j = j012(self.h * r);
                let s1 = self.s1();
                let c = a * omega * EPS0 * self.n1 * self.n1 / (2.0 * self.h);
                (
                    c * ((1.0 - s1) * j[0] + (1.0 + s1) * j[2]),
                    c * ((1.0 - s1) * j[0] - (1.0 + s1) * j[2]),
                    hz * j[1],
                )
            }
            Region::Surround => {
                let k = k012_scaled(self.q * r);
                let ratio = self.j1_a / self.k1s_a * (-self.q * (r - self.radius)).exp();
                let s2 = self.s2();
                let c = a * ratio * omega * EPS0 * self.n2 * self.n2 / (2.0 * self.q);
                (
                    c * ((1.0 - s2) * k[0] - (1.0 + s2) * k[2]),
                    c * ((1.0 - s2) * k[0] + (1.0 + s2) * k[2]),
                    hz * ratio * k[1],
                )
            }
        }
    }

    /// Electric field at (r, φ).
    pub fn fields(&self, r: f64, phi: f64, pol: Polarization) -> Result<CylindricalField> {
        Self::check_r(r)?;
        Ok(self.fields_in_region(self.region_of(r), r, phi, pol))
    }

    /// Electric field using the closed form of a given region, regardless of
    /// which side of the surface `r` lies on (for boundary comparisons).
    pub fn fields_in_region(&self, region: Region, r: f64, phi: f64, pol: Polarization) -> CylindricalField {
        let (er, ep, ez) = self.e_profiles(region, r);
        let i = Complex64::i();
        match pol {
            Polarization::QuasiCircular { counterclockwise } => {
                let l = if counterclockwise { 1.0 } else { -1.0 };
                let phase = Complex64::from_polar(1.0, l * phi);
                CylindricalField {
                    r: i * er * phase,
                    phi: l * ep * phase,
                    z: l * ez * phase,
                }
            }
            Polarization::QuasiLinear { phi0 } => {
                let psi = phi - phi0;
                let root2 = std::f64::consts::SQRT_2;
                CylindricalField {
                    r: i * (root2 * er * psi.cos()),
                    phi: i * (root2 * ep * psi.sin()),
                    z: i * (root2 * ez * psi.sin()),
                }
            }
        }
    }

    /// Magnetic field of the quasi-circular (l = +1) mode at (r, φ), in the
    /// closed form of `region`.
    pub fn h_fields_in_region(&self, region: Region, r: f64, phi: f64) -> CylindricalField {
        let (hr, hp, hz) = self.h_profiles(region, r);
        let i = Complex64::i();
        let phase = Complex64::from_polar(1.0, phi);
        CylindricalField {
            r: hr * phase,
            phi: i * hp * phase,
            z: i * hz * phase,
        }
    }

    /// |E|² of the quasi-linearly polarized mode, V²/m².
    pub fn intensity(&self, r: f64, phi: f64, phi0: f64) -> Result<f64> {
        Self::check_r(r)?;
        Ok(self.intensity_unchecked(r, phi - phi0))
    }

    pub(crate) fn intensity_unchecked(&self, r: f64, psi: f64) -> f64 {
        let (er, ep, ez) = self.e_profiles(self.region_of(r), r);
        let (c2, s2) = (psi.cos().powi(2), psi.sin().powi(2));
        2.0 * (er * er * c2 + (ep * ep + ez * ez) * s2)
    }

    /// Intensity coefficients in the Bessel-series form.
    pub fn intensity_coefficients(&self) -> IntensityCoefficients {
        let s = self.s;
        let a2 = self.amplitude * self.amplitude;
        let b2 = self.beta * self.beta;
        let one_minus = (1.0 - s).powi(2);
        // J1(ha)/K1(qa) with K1 unscaled.
        let ratio = self.j1_a / self.k1s_a * (self.q * self.radius).exp();
        IntensityCoefficients {
            u: 2.0 * self.h * self.h / (b2 * one_minus),
            w: 2.0 * self.q * self.q / (b2 * one_minus),
            f: (1.0 + s).powi(2) / one_minus,
            f_p: 2.0 * (1.0 + s) / (1.0 - s),
            g_in: a2 * b2 * one_minus / (2.0 * self.h * self.h),
            g_out: a2 * ratio * ratio * b2 * one_minus / (2.0 * self.q * self.q),
        }
    }

    /// Axial Poynting flux densities (inside, outside integrands) per unit |A|².
    fn poynting_density(&self, region: Region, r: f64) -> f64 {
        let omega = self.angular_frequency();
        let b = self.beta;
        match region {
            Region::Core => {
                let j = j012(self.h * r);
                let (s, s1) = (self.s, self.s1());
                0.25 * b * omega * EPS0 * self.n1 * self.n1 / (self.h * self.h)
                    * ((1.0 - s) * (1.0 - s1) * j[0] * j[0] + (1.0 + s) * (1.0 + s1) * j[2] * j[2])
            }
            Region::Surround => {
                let k = k012_scaled(self.q * r);
                let ratio = self.j1_a / self.k1s_a * (-self.q * (r - self.radius)).exp();
                let (s, s2) = (self.s, self.s2());
                0.25 * b * omega * EPS0 * self.n2 * self.n2 / (self.q * self.q)
                    * ratio
                    * ratio
                    * ((1.0 - s) * (1.0 - s2) * k[0] * k[0] + (1.0 + s) * (1.0 + s2) * k[2] * k[2])
            }
        }
    }

    fn integrate_regions<F: Fn(Region, f64) -> f64>(&self, density: F) -> Result<PowerSplit> {
        let a = self.radius;
        let decay = 1.0 / self.q;
        let inside = integrate(|r| density(Region::Core, r) * 2.0 * PI * r, 0.0, a, POWER_REL_TOL)?;
        let near = integrate(
            |r| density(Region::Surround, r) * 2.0 * PI * r,
            a,
            a + 4.0 * decay,
            POWER_REL_TOL,
        )?;
        let far = integrate(
            |r| density(Region::Surround, r) * 2.0 * PI * r,
            a + 4.0 * decay,
            a + 60.0 * decay,
            POWER_REL_TOL,
        )?;
        Ok(PowerSplit {
            inside: inside.value,
            outside: near.value + far.value,
        })
    }

    /// Guided power per unit |A|² from the exact Poynting flux.
    pub fn power_split(&self) -> Result<PowerSplit> {
        let unit = ModeSolution {
            amplitude: 1.0,
            ..*self
        };
        unit.integrate_regions(|region, r| unit.poynting_density(region, r))
    }

    /// ∫|E|² dA per unit |A|² (azimuthal average × 2πr).
    fn field_energy_integral(&self) -> Result<f64> {
        let unit = ModeSolution {
            amplitude: 1.0,
            ..*self
        };
        let split = unit.integrate_regions(|region, r| {
            let (er, ep, ez) = unit.e_profiles(region, r);
            er * er + ep * ep + ez * ez
        })?;
        Ok(split.total())
    }

    /// Sets the amplitude so that the guided power equals `power` (W).
    pub fn normalized_to_power(&self, power: f64) -> Result<ModeSolution> {
        self.normalized_with(power, PowerNormalization::ExactPoynting)
    }

    pub fn normalized_with(&self, power: f64, method: PowerNormalization) -> Result<ModeSolution> {
        if !(power > 0.0) || !power.is_finite() {
            return Err(Error::domain("power", format!("{power:e} W must be positive")));
        }
        let per_unit = match method {
            PowerNormalization::ExactPoynting => self.power_split()?.total(),
            PowerNormalization::EffectiveIndex => {
                0.5 * EPS0 * C * self.n_eff() * self.field_energy_integral()?
            }
        };
        if !(per_unit > 0.0) || !per_unit.is_finite() {
            return Err(Error::Numerical(format!(
                "power per unit amplitude is {per_unit:e} for λ = {:e} m",
                self.wavelength
            )));
        }
        Ok(ModeSolution {
            amplitude: (power / per_unit).sqrt(),
            power: Some(power),
            ..*self
        })
    }
}

impl IntensityCoefficients {
    /// Evaluates the Bessel-series intensity at radius `r` and relative azimuth
    /// ψ = φ − φ₀ for a mode with parameters `mode`.
    pub fn evaluate(&self, mode: &ModeSolution, r: f64, psi: f64) -> f64 {
        let c = (2.0 * psi).cos();
        if r < mode.radius {
            let j = j012(mode.h * r);
            self.g_in
                * (j[0] * j[0] + self.u * j[1] * j[1] + self.f * j[2] * j[2]
                    - (self.u * j[1] * j[1] + self.f_p * j[0] * j[2]) * c)
        } else {
            let k = k012_scaled(mode.q * r);
            let decay = (-2.0 * mode.q * r).exp();
            decay
                * self.g_out
                * (k[0] * k[0] + self.w * k[1] * k[1] + self.f * k[2] * k[2]
                    - (self.w * k[1] * k[1] - self.f_p * k[0] * k[2]) * c)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reference_fiber() -> FiberSpec {
        FiberSpec::silica_in_vacuum(250e-9).unwrap()
    }

    #[test]
    fn silica_index_values() {
        assert!((silica_index(980e-9).unwrap() - 1.4507).abs() < 5e-4);
        assert!((silica_index(730e-9).unwrap() - 1.4542).abs() < 5e-4);
        assert!(silica_index(730e-9).unwrap() > silica_index(980e-9).unwrap());
        assert!(silica_index(300e-9).is_err());
        assert!(silica_index(1300e-9).is_err());
    }

    #[test]
    fn v_numbers_of_the_waist() {
        let f = reference_fiber();
        let v730 = v_number(&f, 730e-9).unwrap();
        let v980 = v_number(&f, 980e-9).unwrap();
        assert!((v730 - 2.27).abs() < 0.01 && v730 < SINGLE_MODE_CUTOFF);
        assert!((v980 - 1.69).abs() < 0.01);
        let tiny = f.with_radius(1e-12).unwrap();
        assert!(v_number(&tiny, 980e-9).unwrap() < 1e-4);
    }

    #[test]
    fn he11_in_guided_band() {
        let m = solve_he11(&reference_fiber(), 980e-9).unwrap();
        assert!(m.beta > m.k0 && m.beta < m.n1 * m.k0);
        assert!(m.residual < 1e-10);
        let ident = m.h * m.h + m.q * m.q;
        let expect = (m.n1 * m.n1 - m.n2 * m.n2) * m.k0 * m.k0;
        assert!(((ident - expect) / expect).abs() < 1e-12);
    }

    #[test]
    fn thick_fiber_approaches_core_index() {
        let f = FiberSpec::silica_in_vacuum(9.8e-6).unwrap();
        let m = solve_he11(&f, 980e-9).unwrap();
        assert!((m.n_eff() - m.n1).abs() / m.n1 < 0.01);
    }

    #[test]
    fn first_excited_mode_cutoff_and_ordering() {
        let f = reference_fiber();
        let cut = solve_first_excited(&f, 730e-9).unwrap();
        assert!(!cut.guided);
        assert_eq!(cut.beta, 2.0 * PI / 730e-9);

        let thick = FiberSpec::silica_in_vacuum(5e-6).unwrap();
        let b1 = solve_he11(&thick, 730e-9).unwrap().beta;
        let b2 = solve_first_excited(&thick, 730e-9).unwrap();
        assert!(b2.guided);
        assert!(b2.beta > 2.0 * PI / 730e-9 && b2.beta < b1);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(FiberSpec::silica_in_vacuum(0.0).is_err());
        assert!(FiberSpec::new(1e-7, IndexModel::Constant(1.0), 1.0).is_err());
        let m = solve_he11(&reference_fiber(), 980e-9).unwrap();
        assert!(m.normalized_to_power(0.0).is_err());
        assert!(m.intensity(-1e-9, 0.0, 0.0).is_err());
    }

    #[test]
    fn power_doubling_doubles_intensity() {
        let m = solve_he11(&reference_fiber(), 980e-9).unwrap();
        let p1 = m.normalized_to_power(10e-3).unwrap();
        let p2 = m.normalized_to_power(20e-3).unwrap();
        for &r in &[0.0, 100e-9, 300e-9, 600e-9] {
            let (i1, i2) = (p1.intensity(r, 0.3, 0.0).unwrap(), p2.intensity(r, 0.3, 0.0).unwrap());
            assert!((i2 / i1 - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn effective_index_normalization_is_close_to_exact() {
        let m = solve_he11(&reference_fiber(), 980e-9).unwrap();
        let exact = m.normalized_to_power(1e-3).unwrap();
        let approx = m
            .normalized_with(1e-3, PowerNormalization::EffectiveIndex)
            .unwrap();
        let ratio = approx.amplitude / exact.amplitude;
        assert!((ratio - 1.0).abs() < 0.3, "ratio {ratio}");
    }
}

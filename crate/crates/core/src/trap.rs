//! Two-color evanescent-wave trap for ⁸⁷Rb around the fiber waist.
//!
//! The optical light shift is U = −¼·α(λ)·|E|², with E the complex amplitude of
//! Re[E·e^{−iωt}]. Surface interactions use plane-wall formulas at d = r − a.

use serde::Serialize;

use crate::constants::{joule_to_mk, C, EPS0, H, HBAR, PI};
use crate::error::{Error, Result};
use crate::fibermode::{solve_he11, FiberSpec, ModeSolution};
use crate::numerics::{brent_minimize, integrate};

/// Human-readable statement of the light-shift convention, for output metadata.
pub const LIGHT_SHIFT_CONVENTION: &str =
    "U = -alpha(lambda) |E|^2 / 4, E = complex amplitude of Re[E exp(-i w t)]";

/// van der Waals coefficient for Rb on silica, J·m³.
pub const DEFAULT_C3: f64 = 8.46e-49;
/// Ground-state static polarizability 0.0794·h Hz·cm²/V² in C·m²/V.
pub const DEFAULT_ALPHA0: f64 = 0.0794 * H * 1e-4;
/// Static dielectric constant of silica.
pub const DEFAULT_EPSILON: f64 = 2.04;

/// Wavelength band, m, inside which the two-line polarizability is trusted.
pub const POLARIZABILITY_RANGE: (f64, f64) = (600e-9, 1100e-9);
/// Band around the D lines where the far-detuned model breaks down, m.
pub const RESONANCE_BAND: (f64, f64) = (770e-9, 800e-9);

/// (weight, wavelength m, linewidth Γ/2π Hz) for the D1 and D2 lines.
const RB_LINES: [(f64, f64, f64); 2] = [
    (1.0 / 3.0, 794.979e-9, 5.746e6),
    (2.0 / 3.0, 780.241e-9, 6.065e6),
];

fn two_line_polarizability(omega: f64) -> f64 {
    let sum: f64 = RB_LINES
        .iter()
        .map(|&(g, lambda, gamma)| {
            let w = 2.0 * PI * C / lambda;
            g * 2.0 * PI * gamma / (w * w * (w * w - omega * omega))
        })
        .sum();
    6.0 * PI * EPS0 * C.powi(3) * sum
}

/// Scalar ground-state polarizability of Rb, C·m²/V, from the D1/D2 oscillators
/// including counter-rotating terms.
pub fn rb_polarizability(wavelength: f64) -> Result<f64> {
    let (lo, hi) = POLARIZABILITY_RANGE;
    if !(wavelength >= lo && wavelength <= hi) {
        return Err(Error::domain(
            "wavelength",
            format!("{:.3} nm outside polarizability model range 600–1100 nm", wavelength * 1e9),
        ));
    }
    if wavelength > RESONANCE_BAND.0 && wavelength < RESONANCE_BAND.1 {
        return Err(Error::domain(
            "wavelength",
            format!("{:.3} nm is inside the 770–800 nm D-line band", wavelength * 1e9),
        ));
    }
    Ok(two_line_polarizability(2.0 * PI * C / wavelength))
}

/// ω → 0 limit of the two-line polarizability, C·m²/V.
pub fn rb_static_polarizability() -> f64 {
    two_line_polarizability(0.0)
}

/// Retarded-limit reduction factor φ(ε) for a dielectric half-space, normalized
/// so that a perfect conductor gives 1:
///
/// φ(ε) = ½∫₁^∞ p⁻⁴ [(s−p)/(s+p) + (1−2p²)(s−εp)/(s+εp)] dp,  s = √(ε−1+p²).
///
/// Evaluated after the substitution p = 1/t, which leaves a smooth integrand on [0, 1].
pub fn dielectric_factor(epsilon: f64) -> Result<f64> {
    if !(epsilon > 1.0) || !epsilon.is_finite() {
        return Err(Error::domain("epsilon", format!("{epsilon} must be > 1")));
    }
    let integrand = |t: f64| {
        let delta = epsilon - 1.0;
        let sigma = (delta * t * t + 1.0).sqrt();
        // σ − 1 and σ − ε rewritten without cancellation as ε → 1.
        let te = delta * t * t / (sigma + 1.0).powi(2);
        let tm = delta * (t * t - 1.0 - epsilon) / (sigma + epsilon).powi(2);
        t * t * te + (t * t - 2.0) * tm
    };
    Ok(0.5 * integrate(integrand, 0.0, 1.0, 1e-13)?.value)
}

/// Atom–surface interaction model.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceModel {
    None,
    /// Non-retarded −C₃/d³.
    VanDerWaals { c3: f64 },
    /// Retarded −C₄/d⁴ with C₄ = 3ħcα₀φ(ε)/(32π²ε₀).
    CasimirPolder { alpha0: f64, epsilon: f64 },
}

impl SurfaceModel {
    pub fn van_der_waals() -> Self {
        SurfaceModel::VanDerWaals { c3: DEFAULT_C3 }
    }

    pub fn casimir_polder() -> Self {
        SurfaceModel::CasimirPolder {
            alpha0: DEFAULT_ALPHA0,
            epsilon: DEFAULT_EPSILON,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            SurfaceModel::None => "none",
            SurfaceModel::VanDerWaals { .. } => "vdw",
            SurfaceModel::CasimirPolder { .. } => "cp",
        }
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            SurfaceModel::None => Ok(()),
            SurfaceModel::VanDerWaals { c3 } if c3 > 0.0 && c3.is_finite() => Ok(()),
            SurfaceModel::VanDerWaals { c3 } => Err(Error::domain("c3", format!("{c3:e} must be > 0"))),
            SurfaceModel::CasimirPolder { alpha0, .. } if !(alpha0 > 0.0 && alpha0.is_finite()) => {
                Err(Error::domain("alpha0", format!("{alpha0:e} must be > 0")))
            }
            SurfaceModel::CasimirPolder { epsilon, .. } if !(epsilon > 1.0 && epsilon.is_finite()) => {
                Err(Error::domain("epsilon", format!("{epsilon} must be > 1")))
            }
            SurfaceModel::CasimirPolder { .. } => Ok(()),
        }
    }

    /// The inverse-power law coefficient and exponent (C, n) in −C/dⁿ.
    pub fn power_law(&self) -> Result<Option<(f64, i32)>> {
        self.validate()?;
        Ok(match *self {
            SurfaceModel::None => None,
            SurfaceModel::VanDerWaals { c3 } => Some((c3, 3)),
            SurfaceModel::CasimirPolder { alpha0, epsilon } => {
                let c4 = 3.0 * HBAR * C * alpha0 / (32.0 * PI * PI * EPS0) * dielectric_factor(epsilon)?;
                Some((c4, 4))
            }
        })
    }
}

/// Surface potential at distance `d` from the fiber surface, J.
pub fn surface_potential(model: &SurfaceModel, d: f64) -> Result<f64> {
    if !(d > 0.0) || !d.is_finite() {
        return Err(Error::domain("d", format!("{d:e} m must be > 0")));
    }
    Ok(match model.power_law()? {
        None => 0.0,
        Some((c, n)) => -c / d.powi(n),
    })
}

/// One trapping laser.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapBeam {
    /// Vacuum wavelength, m.
    pub wavelength: f64,
    /// Power per propagation direction, W.
    pub power: f64,
    /// Quasi-linear polarization axis φ₀, rad.
    pub phi0: f64,
    /// Launched from both fiber ends, forming an axial standing wave.
    pub counterpropagating: bool,
}

impl TrapBeam {
    pub fn new(wavelength: f64, power: f64) -> Self {
        TrapBeam {
            wavelength,
            power,
            phi0: 0.0,
            counterpropagating: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.power > 0.0) || !self.power.is_finite() {
            return Err(Error::domain("power", format!("{:e} W must be > 0", self.power)));
        }
        if !self.phi0.is_finite() {
            return Err(Error::domain("phi0", "must be finite"));
        }
        rb_polarizability(self.wavelength).map(|_| ())
    }

    /// Ratio of peak intensity to the single-pass intensity at the same power.
    pub fn antinode_factor(&self) -> f64 {
        if self.counterpropagating {
            4.0
        } else {
            1.0
        }
    }
}

/// Optical potential of a beam at (r, φ), J, given the beam's mode normalized to its power.
pub fn optical_potential(beam: &TrapBeam, mode: &ModeSolution, r: f64, phi: f64) -> Result<f64> {
    let alpha = rb_polarizability(beam.wavelength)?;
    let intensity = mode.intensity(r, phi, beam.phi0)?;
    Ok(-0.25 * alpha * intensity * beam.antinode_factor())
}

/// Which beam carries the larger power in the reference trap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PowerAssignment {
    /// 980 nm at 30 mW, 730 nm at 13 mW.
    RedStrong,
    /// 730 nm at 30 mW, 980 nm at 13 mW.
    BlueStrong,
}

/// Complete description of a two-color trap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapConfig {
    pub red: TrapBeam,
    pub blue: TrapBeam,
    pub surface: SurfaceModel,
    #[serde(skip)]
    pub fiber: FiberSpec,
}

impl TrapConfig {
    /// 500 nm diameter silica fiber in vacuum with 980/730 nm beams.
    pub fn reference(assignment: PowerAssignment, surface: SurfaceModel) -> Self {
        let (p_red, p_blue) = match assignment {
            PowerAssignment::RedStrong => (30e-3, 13e-3),
            PowerAssignment::BlueStrong => (13e-3, 30e-3),
        };
        TrapConfig {
            red: TrapBeam::new(980e-9, p_red),
            blue: TrapBeam::new(730e-9, p_blue),
            surface,
            fiber: FiberSpec::silica_in_vacuum(250e-9).expect("reference fiber is valid"),
        }
    }

    pub fn with_powers(&self, red: f64, blue: f64) -> Self {
        let mut out = *self;
        out.red.power = red;
        out.blue.power = blue;
        out
    }

    pub fn validate(&self) -> Result<()> {
        self.red.validate()?;
        self.blue.validate()?;
        self.surface.validate()?;
        if rb_polarizability(self.red.wavelength)? <= 0.0 {
            return Err(Error::domain("red wavelength", "must be red-detuned (> 800 nm)"));
        }
        if rb_polarizability(self.blue.wavelength)? >= 0.0 {
            return Err(Error::domain("blue wavelength", "must be blue-detuned (< 770 nm)"));
        }
        Ok(())
    }
}

/// One radial sample of the potential, J.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PotentialSample {
    pub r: f64,
    pub red: f64,
    pub blue: f64,
    pub surface: f64,
    pub total: f64,
}

/// Sampled potential along a radial line at fixed azimuth.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PotentialCurve {
    /// Azimuth φ of the cut, rad.
    pub azimuth: f64,
    pub samples: Vec<PotentialSample>,
}

impl PotentialCurve {
    pub fn total_mk(&self) -> Vec<f64> {
        self.samples.iter().map(|s| joule_to_mk(s.total)).collect()
    }
}

/// A trap configuration with its two modes solved and normalized.
#[derive(Debug, Clone, PartialEq)]
pub struct PreparedTrap {
    pub config: TrapConfig,
    pub red_mode: ModeSolution,
    pub blue_mode: ModeSolution,
    alpha_red: f64,
    alpha_blue: f64,
    surface_law: Option<(f64, i32)>,
}

const BASE_GRID: usize = 400;
const MAX_REFINE: usize = 6;

impl PreparedTrap {
    pub fn new(config: &TrapConfig) -> Result<Self> {
        config.validate()?;
        let red_mode = solve_he11(&config.fiber, config.red.wavelength)?.normalized_to_power(config.red.power)?;
        let blue_mode =
            solve_he11(&config.fiber, config.blue.wavelength)?.normalized_to_power(config.blue.power)?;
        Ok(PreparedTrap {
            config: *config,
            red_mode,
            blue_mode,
            alpha_red: rb_polarizability(config.red.wavelength)?,
            alpha_blue: rb_polarizability(config.blue.wavelength)?,
            surface_law: config.surface.power_law()?,
        })
    }

    pub fn radius(&self) -> f64 {
        self.config.fiber.radius
    }

    /// Potential components at (r, φ) with r > a.
    pub fn sample(&self, r: f64, phi: f64) -> PotentialSample {
        let cfg = &self.config;
        let red = -0.25
            * self.alpha_red
            * cfg.red.antinode_factor()
            * self.red_mode.intensity_unchecked(r, phi - cfg.red.phi0);
        let blue = -0.25
            * self.alpha_blue
            * cfg.blue.antinode_factor()
            * self.blue_mode.intensity_unchecked(r, phi - cfg.blue.phi0);
        let surface = match self.surface_law {
            None => 0.0,
            Some((c, n)) => -c / (r - self.radius()).powi(n),
        };
        PotentialSample {
            r,
            red,
            blue,
            surface,
            total: red + blue + surface,
        }
    }

    pub fn total(&self, r: f64, phi: f64) -> f64 {
        self.sample(r, phi).total
    }

    /// Radial extent of the sampled curve: a(1+10⁻³) to a + 5·max(1/q).
    pub fn radial_range(&self) -> (f64, f64) {
        let a = self.radius();
        let decay = (1.0 / self.red_mode.q).max(1.0 / self.blue_mode.q);
        (a * (1.0 + 1e-3), a + 5.0 * decay)
    }

    /// Samples the total potential on a grid that is geometric in d = r − a and
    /// refined wherever linear interpolation misses the midpoint value.
    pub fn curve(&self, phi: f64) -> PotentialCurve {
        let a = self.radius();
        let (lo, hi) = self.radial_range();
        let (d_lo, d_hi) = (lo - a, hi - a);
        let ratio = (d_hi / d_lo).ln();
        let mut samples: Vec<PotentialSample> = (0..=BASE_GRID)
            .map(|i| {
                let r = if i == BASE_GRID {
                    hi
                } else {
                    a + d_lo * (ratio * i as f64 / BASE_GRID as f64).exp()
                };
                self.sample(r, phi)
            })
            .collect();
        let depth_scale = |s: &[PotentialSample]| {
            let finite = s.iter().skip(s.len() / 50).map(|p| p.total.abs());
            finite.fold(0.0_f64, f64::max)
        };
        for _ in 0..MAX_REFINE {
            let tol = 1e-4 * depth_scale(&samples);
            let mut refined = Vec::with_capacity(samples.len() * 2);
            let mut changed = false;
            for pair in samples.windows(2) {
                refined.push(pair[0]);
                let mid = self.sample(0.5 * (pair[0].r + pair[1].r), phi);
                if (mid.total - 0.5 * (pair[0].total + pair[1].total)).abs() > tol {
                    refined.push(mid);
                    changed = true;
                }
            }
            refined.push(*samples.last().expect("grid is non-empty"));
            samples = refined;
            if !changed {
                break;
            }
        }
        PotentialCurve { azimuth: phi, samples }
    }

    /// Standing-wave potential of the red beam along z at (r, φ), J. Zero offset
    /// is an antinode. For a single-pass red beam the profile is flat.
    pub fn axial_profile(&self, r: f64, phi: f64, z: &[f64]) -> Vec<(f64, f64)> {
        let cfg = &self.config;
        let single = -0.25 * self.alpha_red * self.red_mode.intensity_unchecked(r, phi - cfg.red.phi0);
        let beta = self.red_mode.beta;
        z.iter()
            .map(|&z| {
                let u = if cfg.red.counterpropagating {
                    4.0 * single * (beta * z).cos().powi(2)
                } else {
                    single
                };
                (z, u)
            })
            .collect()
    }
}

/// Shape of a curve without an interior minimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Monotonicity {
    /// U rises away from the fiber: atoms are pulled onto the surface.
    Increasing,
    /// U falls away from the fiber: atoms are pushed outward.
    Decreasing,
    NonMonotone,
}

/// Location and depth of a trap minimum.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapSite {
    /// Radius of the minimum measured from the fiber axis, m.
    pub r_min: f64,
    /// Distance from the fiber surface, m.
    pub d_min: f64,
    /// Potential at the minimum, J.
    pub u_min: f64,
    /// Highest potential between the minimum and infinity (at least 0), J.
    pub u_escape: f64,
    /// Highest potential between the surface and the minimum, J.
    pub u_barrier: f64,
    /// min(escape, barrier), mK.
    pub depth_mk: f64,
    /// Energy needed to leave outward, mK.
    pub escape_mk: f64,
    /// Energy needed to cross the inner barrier toward the surface, mK.
    pub barrier_mk: f64,
    /// U″(r_min), J/m².
    pub curvature: f64,
    /// U′(r_min), J/m.
    pub gradient: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Trap,
    None,
}

/// Characterization of one radial cut.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrapCharacterization {
    /// Azimuth φ of the cut, rad.
    pub azimuth: f64,
    /// φ − φ₀ of the red beam, rad.
    pub relative_azimuth: f64,
    pub verdict: Verdict,
    pub site: Option<TrapSite>,
    pub diagnosis: Option<Monotonicity>,
}

impl TrapCharacterization {
    pub fn depth_mk(&self) -> f64 {
        self.site.map_or(0.0, |s| s.depth_mk)
    }
}

fn diagnose(samples: &[PotentialSample]) -> Monotonicity {
    let up = samples.windows(2).all(|w| w[1].total >= w[0].total);
    let down = samples.windows(2).all(|w| w[1].total <= w[0].total);
    match (up, down) {
        (true, _) => Monotonicity::Increasing,
        (_, true) => Monotonicity::Decreasing,
        _ => Monotonicity::NonMonotone,
    }
}

/// Locates the deepest interior minimum of a sampled curve and refines it.
pub fn characterize(trap: &PreparedTrap, curve: &PotentialCurve) -> Result<TrapCharacterization> {
    let phi = curve.azimuth;
    let s = &curve.samples;
    let relative_azimuth = phi - trap.config.red.phi0;
    let none = |diagnosis| TrapCharacterization {
        azimuth: phi,
        relative_azimuth,
        verdict: Verdict::None,
        site: None,
        diagnosis: Some(diagnosis),
    };
    let candidates = (1..s.len().saturating_sub(1))
        .filter(|&i| s[i].total < s[i - 1].total && s[i].total <= s[i + 1].total);
    let Some(i) = candidates.min_by(|&x, &y| s[x].total.total_cmp(&s[y].total)) else {
        return Ok(none(diagnose(s)));
    };

    let u = |r: f64| trap.total(r, phi);
    let min = brent_minimize(u, s[i - 1].r, s[i].r, s[i + 1].r, 1e-14)?;
    let (r_min, u_min) = (min.x, min.fx);

    // Inner barrier: highest point between the surface and the minimum.
    let (j, _) = s[..=i]
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total.total_cmp(&y.1.total))
        .expect("non-empty prefix");
    let barrier = if j > 0 && j < i {
        brent_minimize(|r| -u(r), s[j - 1].r, s[j].r, s[j + 1].r, 1e-12)
            .map(|m| -m.fx)?
            .max(s[j].total)
    } else {
        s[j].total
    };
    // Outward escape: the potential vanishes at infinity.
    let (k, _) = s[i..]
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.total.total_cmp(&y.1.total))
        .expect("non-empty suffix");
    let k = k + i;
    let outer = if k > i && k + 1 < s.len() {
        brent_minimize(|r| -u(r), s[k - 1].r, s[k].r, s[k + 1].r, 1e-12)
            .map(|m| -m.fx)?
            .max(s[k].total)
    } else {
        s[k].total
    };
    let escape = outer.max(0.0);

    let step = 1e-10;
    let (um, up) = (u(r_min - step), u(r_min + step));
    let curvature = (up - 2.0 * u_min + um) / (step * step);
    let gradient = (up - um) / (2.0 * step);
    let escape_mk = joule_to_mk(escape - u_min);
    let barrier_mk = joule_to_mk(barrier - u_min);
    let depth_mk = escape_mk.min(barrier_mk);
    if !(depth_mk > 0.0) {
        return Ok(none(diagnose(s)));
    }
    Ok(TrapCharacterization {
        azimuth: phi,
        relative_azimuth,
        verdict: Verdict::Trap,
        site: Some(TrapSite {
            r_min,
            d_min: r_min - trap.radius(),
            u_min,
            u_escape: escape,
            u_barrier: barrier,
            depth_mk,
            escape_mk,
            barrier_mk,
            curvature,
            gradient,
        }),
        diagnosis: None,
    })
}

/// Both standard cuts (φ − φ₀ = 0 and π/2 relative to the red beam) of one configuration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrapAnalysis {
    pub cuts: Vec<TrapCharacterization>,
    /// Index into `cuts` of the deeper trap.
    pub primary: usize,
    #[serde(skip)]
    pub curves: Vec<PotentialCurve>,
}

impl TrapAnalysis {
    pub fn primary(&self) -> &TrapCharacterization {
        &self.cuts[self.primary]
    }

    pub fn primary_curve(&self) -> &PotentialCurve {
        &self.curves[self.primary]
    }
}

/// Samples and characterizes the trap along φ − φ₀ ∈ {0, π/2}.
pub fn analyze(config: &TrapConfig) -> Result<TrapAnalysis> {
    let trap = PreparedTrap::new(config)?;
    analyze_prepared(&trap)
}

pub fn analyze_prepared(trap: &PreparedTrap) -> Result<TrapAnalysis> {
    let phi0 = trap.config.red.phi0;
    let mut cuts = Vec::with_capacity(2);
    let mut curves = Vec::with_capacity(2);
    for offset in [0.0, 0.5 * PI] {
        let curve = trap.curve(phi0 + offset);
        cuts.push(characterize(trap, &curve)?);
        curves.push(curve);
    }
    let primary = if cuts[1].depth_mk() > cuts[0].depth_mk() { 1 } else { 0 };
    Ok(TrapAnalysis { cuts, primary, curves })
}

/// One row of a red-power scan.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    /// Red power, W.
    pub p_red: f64,
    /// Both cuts, as in [`TrapAnalysis`].
    pub cuts: Vec<TrapCharacterization>,
    pub primary: usize,
}

impl ScanRow {
    pub fn primary(&self) -> &TrapCharacterization {
        &self.cuts[self.primary]
    }
}

/// Characterizes both cuts for each red power at fixed blue power, rows sorted by power.
pub fn power_ratio_scan(config: &TrapConfig, red_powers: &[f64]) -> Result<Vec<ScanRow>> {
    let mut powers = red_powers.to_vec();
    if powers.iter().any(|p| !(*p > 0.0) || !p.is_finite()) {
        return Err(Error::domain("red power", "scan powers must be > 0"));
    }
    powers.sort_by(f64::total_cmp);
    let base = PreparedTrap::new(config)?;
    powers
        .into_iter()
        .map(|p| {
            let mut trap = base.clone();
            trap.config.red.power = p;
            trap.red_mode = trap.red_mode.normalized_to_power(p)?;
            let analysis = analyze_prepared(&trap)?;
            Ok(ScanRow {
                p_red: p,
                cuts: analysis.cuts,
                primary: analysis.primary,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vdw_at_hundred_nanometres() {
        let u = surface_potential(&SurfaceModel::van_der_waals(), 100e-9).unwrap();
        assert!((u + 8.46e-28).abs() < 1e-40);
    }

    #[test]
    fn surface_rejects_nonpositive_distance() {
        for d in [0.0, -1e-9, f64::NAN] {
            assert!(surface_potential(&SurfaceModel::van_der_waals(), d).is_err());
        }
    }

    #[test]
    fn dielectric_factor_limits() {
        assert!(dielectric_factor(1.0 + 1e-9).unwrap().abs() < 1e-8);
        let conductor = dielectric_factor(1e12).unwrap();
        assert!((conductor - 1.0).abs() < 1e-4);
        let silica = dielectric_factor(DEFAULT_EPSILON).unwrap();
        assert!(silica > 0.0 && silica < 1.0);
        assert!(dielectric_factor(1.0).is_err());
    }

    #[test]
    fn polarizability_signs_and_band() {
        assert!(rb_polarizability(980e-9).unwrap() > 0.0);
        assert!(rb_polarizability(730e-9).unwrap() < 0.0);
        assert!(rb_polarizability(785e-9).is_err());
        assert!(rb_polarizability(1500e-9).is_err());
        let static_alpha = rb_static_polarizability();
        assert!((static_alpha / 5.26e-39 - 1.0).abs() < 0.1);
    }

    #[test]
    fn components_sum_exactly() {
        let trap = PreparedTrap::new(&TrapConfig::reference(
            PowerAssignment::RedStrong,
            SurfaceModel::van_der_waals(),
        ))
        .unwrap();
        let curve = trap.curve(0.3);
        assert!(curve.samples.windows(2).all(|w| w[1].r > w[0].r));
        assert!(curve.samples.iter().all(|s| s.r > trap.radius()));
        for s in &curve.samples {
            assert_eq!(s.total, s.red + s.blue + s.surface);
        }
    }

    #[test]
    fn counterpropagating_quadruples_antinode() {
        let mut cfg = TrapConfig::reference(PowerAssignment::RedStrong, SurfaceModel::None);
        let single = PreparedTrap::new(&cfg).unwrap().sample(400e-9, 0.0).red;
        cfg.red.counterpropagating = true;
        let trap = PreparedTrap::new(&cfg).unwrap();
        assert!((trap.sample(400e-9, 0.0).red / single - 4.0).abs() < 1e-12);
        let lambda_z = PI / trap.red_mode.beta;
        let profile = trap.axial_profile(400e-9, 0.0, &[0.0, 0.5 * lambda_z]);
        assert!((profile[0].1 / single - 4.0).abs() < 1e-12);
        assert!(profile[1].1.abs() < 1e-12 * single.abs());
    }

    #[test]
    fn wrong_detuning_rejected() {
        let mut cfg = TrapConfig::reference(PowerAssignment::RedStrong, SurfaceModel::None);
        std::mem::swap(&mut cfg.red, &mut cfg.blue);
        assert!(PreparedTrap::new(&cfg).is_err());
    }
}

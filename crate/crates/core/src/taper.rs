//! Adiabaticity of a fiber taper.
//!
//! Each axial position is treated as an infinite cylinder of the local radius
//! ρ(z) (local-mode approximation, two-layer model). The taper half-angle
//! Ω = |atan(dρ/dz)| must stay below ρ(β₁ − β₂)/2π, where β₁ is HE11 and β₂ is
//! TE01 while guided or the radiation edge n₂k₀ once TE01 is cut off.

use std::path::Path;

use serde::Serialize;

use crate::constants::PI;
use crate::error::{Error, Result};
use crate::fibermode::{solve_first_excited, solve_he11, FiberSpec};

/// Radius-vs-position samples of a taper, m.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TaperProfile {
    pub z: Vec<f64>,
    pub rho: Vec<f64>,
}

impl TaperProfile {
    pub fn new(z: Vec<f64>, rho: Vec<f64>) -> Result<Self> {
        if z.len() != rho.len() {
            return Err(Error::Input(format!(
                "profile has {} positions but {} radii",
                z.len(),
                rho.len()
            )));
        }
        if z.len() < 3 {
            return Err(Error::Input(format!(
                "profile needs at least 3 samples, got {}",
                z.len()
            )));
        }
        if let Some(i) = z.iter().position(|v| !v.is_finite()) {
            return Err(Error::Input(format!("sample {i}: z is not finite")));
        }
        if let Some(i) = rho.iter().position(|r| !(*r > 0.0) || !r.is_finite()) {
            return Err(Error::Input(format!("sample {i}: radius {} must be > 0", rho[i])));
        }
        if let Some(i) = z.windows(2).position(|w| w[1] <= w[0]) {
            return Err(Error::Input(format!(
                "z must be strictly increasing: sample {} ({:e}) follows {:e}",
                i + 1,
                z[i + 1],
                z[i]
            )));
        }
        Ok(TaperProfile { z, rho })
    }

    /// Parses two whitespace- or comma-separated columns (z, ρ) in metres.
    /// Blank lines and text after `#` are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let (mut z, mut rho) = (Vec::new(), Vec::new());
        for (n, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|f| !f.is_empty())
                .collect();
            if fields.len() != 2 {
                return Err(Error::Input(format!(
                    "line {}: expected 2 columns (z, rho), found {}",
                    n + 1,
                    fields.len()
                )));
            }
            let parse = |f: &str, what: &str| {
                f.parse::<f64>()
                    .map_err(|_| Error::Input(format!("line {}: cannot parse {what} '{f}'", n + 1)))
            };
            z.push(parse(fields[0], "z")?);
            rho.push(parse(fields[1], "rho")?);
        }
        Self::new(z, rho)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Straight taper from `rho_start` to `rho_end` over `length`, with `samples` points.
    pub fn linear(rho_start: f64, rho_end: f64, length: f64, samples: usize) -> Result<Self> {
        if !(length > 0.0) {
            return Err(Error::domain("length", format!("{length:e} m must be > 0")));
        }
        let n = samples.max(3);
        let last = (n - 1) as f64;
        let z = (0..n).map(|i| length * i as f64 / last).collect();
        let rho = (0..n)
            .map(|i| rho_start + (rho_end - rho_start) * i as f64 / last)
            .collect();
        Self::new(z, rho)
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }

    /// True when the radius never increases or never decreases along z.
    pub fn is_monotone(&self) -> bool {
        let w = || self.rho.windows(2);
        w().all(|p| p[1] <= p[0]) || w().all(|p| p[1] >= p[0])
    }

    /// Local half-angle |atan(dρ/dz)|, central differences inside, one-sided at the ends.
    pub fn angles(&self) -> Vec<f64> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let (a, b) = match i {
                    0 => (0, 1),
                    _ if i == n - 1 => (n - 2, n - 1),
                    _ => (i - 1, i + 1),
                };
                ((self.rho[b] - self.rho[a]) / (self.z[b] - self.z[a])).atan().abs()
            })
            .collect()
    }

    /// Same profile stretched along z by `factor`.
    pub fn stretched(&self, factor: f64) -> Result<Self> {
        Self::new(self.z.iter().map(|z| z * factor).collect(), self.rho.clone())
    }

    /// Linearly interpolated profile with `factor`× as many intervals.
    pub fn resampled(&self, factor: usize) -> Result<Self> {
        let factor = factor.max(1);
        let (mut z, mut rho) = (Vec::new(), Vec::new());
        for i in 0..self.len() - 1 {
            for k in 0..factor {
                let t = k as f64 / factor as f64;
                z.push(self.z[i] + t * (self.z[i + 1] - self.z[i]));
                rho.push(self.rho[i] + t * (self.rho[i + 1] - self.rho[i]));
            }
        }
        z.push(*self.z.last().expect("non-empty"));
        rho.push(*self.rho.last().expect("non-empty"));
        Self::new(z, rho)
    }
}

/// Source of the local propagation constants (β₁, β₂) at a given radius.
pub trait BetaGap {
    fn betas(&self, rho: f64) -> Result<(f64, f64)>;

    fn gap(&self, rho: f64) -> Result<f64> {
        let (b1, b2) = self.betas(rho)?;
        Ok(b1 - b2)
    }
}

/// β₁ and β₂ from the mode solvers for a fiber whose radius varies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalModes {
    /// Index models; the radius is replaced at each sample.
    pub fiber: FiberSpec,
    pub wavelength: f64,
}

impl LocalModes {
    pub fn new(fiber: FiberSpec, wavelength: f64) -> Self {
        LocalModes { fiber, wavelength }
    }
}

impl BetaGap for LocalModes {
    fn betas(&self, rho: f64) -> Result<(f64, f64)> {
        let spec = self.fiber.with_radius(rho)?;
        let b1 = solve_he11(&spec, self.wavelength)?.beta;
        let b2 = solve_first_excited(&spec, self.wavelength)?.beta;
        Ok((b1, b2))
    }
}

/// Ω_limit = ρ(β₁ − β₂)/2π for a given gap model.
pub fn limit_angle_with(model: &dyn BetaGap, rho: f64) -> Result<f64> {
    if !(rho > 0.0) || !rho.is_finite() {
        return Err(Error::domain("rho", format!("{rho:e} m must be > 0")));
    }
    Ok(rho * model.gap(rho)? / (2.0 * PI))
}

/// Ω_limit at radius `rho` for the index models of `fiber`.
pub fn limit_angle(rho: f64, wavelength: f64, fiber: &FiberSpec) -> Result<f64> {
    limit_angle_with(&LocalModes::new(*fiber, wavelength), rho)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdiabaticitySample {
    pub z: f64,
    pub rho: f64,
    /// Local half-angle, rad.
    pub omega: f64,
    /// Largest adiabatic half-angle, rad.
    pub omega_limit: f64,
    /// Ω_limit − Ω, rad.
    pub margin: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AdiabaticityReport {
    pub samples: Vec<AdiabaticitySample>,
    /// True iff every interior sample has positive margin.
    pub pass: bool,
    /// Index of the interior sample with the smallest margin.
    pub worst: usize,
    /// z of every violating interior sample, m.
    pub violations: Vec<f64>,
}

impl AdiabaticityReport {
    pub fn worst_sample(&self) -> &AdiabaticitySample {
        &self.samples[self.worst]
    }
}

fn assemble(profile: &TaperProfile, limits: &[f64]) -> AdiabaticityReport {
    let samples: Vec<AdiabaticitySample> = profile
        .angles()
        .into_iter()
        .zip(limits)
        .enumerate()
        .map(|(i, (omega, &omega_limit))| AdiabaticitySample {
            z: profile.z[i],
            rho: profile.rho[i],
            omega,
            omega_limit,
            margin: omega_limit - omega,
        })
        .collect();
    let interior = 1..samples.len() - 1;
    let worst = interior
        .clone()
        .min_by(|&a, &b| samples[a].margin.total_cmp(&samples[b].margin))
        .expect("at least one interior sample");
    let violations: Vec<f64> = interior
        .filter(|&i| !(samples[i].margin > 0.0))
        .map(|i| samples[i].z)
        .collect();
    AdiabaticityReport {
        pass: violations.is_empty(),
        samples,
        worst,
        violations,
    }
}

/// Compares the local taper angle with Ω_limit at every sample.
pub fn check_profile_with(profile: &TaperProfile, model: &dyn BetaGap) -> Result<AdiabaticityReport> {
    let limits = profile
        .rho
        .iter()
        .map(|&rho| limit_angle_with(model, rho))
        .collect::<Result<Vec<_>>>()?;
    Ok(assemble(profile, &limits))
}

pub fn check_profile(profile: &TaperProfile, wavelength: f64, fiber: &FiberSpec) -> Result<AdiabaticityReport> {
    check_profile_with(profile, &LocalModes::new(*fiber, wavelength))
}

/// Samples used for the straight profiles in [`min_linear_taper_length_with`].
pub const LINEAR_TAPER_SAMPLES: usize = 201;

const MAX_TAPER_LENGTH: f64 = 1e3;

/// Shortest straight taper from `rho_start` down to `rho_end` that passes
/// [`check_profile_with`] at [`LINEAR_TAPER_SAMPLES`] samples, found by bisection
/// on L to a relative tolerance of 1e-9.
pub fn min_linear_taper_length_with(model: &dyn BetaGap, rho_start: f64, rho_end: f64) -> Result<f64> {
    if !(rho_end > 0.0) || !(rho_start >= rho_end) || !rho_start.is_finite() {
        return Err(Error::domain(
            "taper radii",
            format!("need rho_start ≥ rho_end > 0, got {rho_start:e} → {rho_end:e}"),
        ));
    }
    if rho_start == rho_end {
        return Ok(0.0);
    }
    // Sample radii do not depend on L, so Ω_limit is computed once.
    let template = TaperProfile::linear(rho_start, rho_end, 1.0, LINEAR_TAPER_SAMPLES)?;
    let limits = template
        .rho
        .iter()
        .map(|&rho| limit_angle_with(model, rho))
        .collect::<Result<Vec<_>>>()?;
    let passes = |length: f64| -> Result<bool> {
        let profile = TaperProfile::linear(rho_start, rho_end, length, LINEAR_TAPER_SAMPLES)?;
        Ok(assemble(&profile, &limits).pass)
    };
    let mut hi = 1e-6;
    while !passes(hi)? {
        hi *= 2.0;
        if hi > MAX_TAPER_LENGTH {
            return Err(Error::Solver(format!(
                "no passing linear taper shorter than {MAX_TAPER_LENGTH} m"
            )));
        }
    }
    let mut lo = 0.5 * hi;
    if passes(lo)? {
        lo = 0.0;
    }
    while hi - lo > 1e-9 * hi {
        let mid = 0.5 * (lo + hi);
        if passes(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

pub fn min_linear_taper_length(rho_start: f64, rho_end: f64, wavelength: f64, fiber: &FiberSpec) -> Result<f64> {
    min_linear_taper_length_with(&LocalModes::new(*fiber, wavelength), rho_start, rho_end)
}

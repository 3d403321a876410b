//! Magnetic-dipole coupling between trapped atoms and a microwave resonator.

use serde::Serialize;

use crate::constants::{FLUX_QUANTUM, HBAR, MU0, PI};
use crate::error::{Error, Result};

/// Typical ground-state magnetic moment μ/h, Hz/T.
pub const DEFAULT_MOMENT: f64 = 1.4e10;
/// ⁸⁷Rb ground-state hyperfine splitting used as the resonator frequency, Hz.
pub const DEFAULT_FREQUENCY: f64 = 6.834e9;

/// Mode volume of a 10 µm × 10 µm SQUID loop with 5 µm field confinement above and below, m³.
pub const SQUID_MODE_VOLUME: f64 = 1e-15;
/// Simulated field 5 µm above the LC inductor, T.
pub const LC_SIMULATED_FIELD: f64 = 3.124e-10;
/// Photon number at which [`LC_SIMULATED_FIELD`] was simulated.
pub const LC_PHOTON_NUMBER: f64 = 0.016;

fn positive(quantity: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 && value.is_finite() {
        Ok(value)
    } else {
        Err(Error::domain(quantity, format!("{value:e} must be > 0")))
    }
}

/// Single-photon field B = √(μ₀ħω/2V) with ω = 2πf, T.
pub fn single_photon_field(frequency: f64, mode_volume: f64) -> Result<f64> {
    let omega = 2.0 * PI * positive("frequency", frequency)?;
    let volume = positive("mode volume", mode_volume)?;
    Ok((MU0 * HBAR * omega / (2.0 * volume)).sqrt())
}

/// Field of one flux quantum threading `loop_area`, reduced by a geometric factor, T.
pub fn flux_quantum_field(loop_area: f64, geometric_factor: f64) -> Result<f64> {
    let area = positive("loop area", loop_area)?;
    Ok(positive("geometric factor", geometric_factor)? * FLUX_QUANTUM / area)
}

/// Single-photon field from a field simulated at photon number `n_ph`: B/√n_ph, T.
pub fn rescale_simulated_field(simulated: f64, n_ph: f64) -> Result<f64> {
    if !(simulated >= 0.0) || !simulated.is_finite() {
        return Err(Error::domain("simulated field", format!("{simulated:e} must be ≥ 0")));
    }
    Ok(simulated / positive("photon number", n_ph)?.sqrt())
}

/// Per-atom and collective coupling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CouplingEstimate {
    /// Field amplitude, T.
    pub field: f64,
    /// μ/h, Hz/T.
    pub moment: f64,
    /// Per-atom rate, Hz.
    pub g: f64,
    pub atoms: u64,
    /// g√N, Hz.
    pub collective: f64,
}

pub fn coupling_rate(field: f64, moment: f64, atoms: u64) -> Result<CouplingEstimate> {
    if !(field >= 0.0) || !field.is_finite() {
        return Err(Error::domain("field", format!("{field:e} must be ≥ 0")));
    }
    let moment = positive("moment", moment)?;
    if atoms == 0 {
        return Err(Error::domain("atoms", "need at least one atom"));
    }
    let g = moment * field;
    Ok(CouplingEstimate {
        field,
        moment,
        g,
        atoms,
        collective: g * (atoms as f64).sqrt(),
    })
}

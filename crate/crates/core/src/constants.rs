//! Physical constants in SI units (CODATA 2018 exact and recommended values).

pub const PI: f64 = std::f64::consts::PI;

/// Speed of light in vacuum, m/s.
pub const C: f64 = 299_792_458.0;
/// Planck constant, J·s.
pub const H: f64 = 6.626_070_15e-34;
/// Reduced Planck constant, J·s.
pub const HBAR: f64 = H / (2.0 * PI);
/// Elementary charge, C.
pub const E_CHARGE: f64 = 1.602_176_634e-19;
/// Boltzmann constant, J/K.
pub const K_B: f64 = 1.380_649e-23;
/// Vacuum permittivity, F/m.
pub const EPS0: f64 = 8.854_187_812_8e-12;
/// Vacuum permeability, H/m.
pub const MU0: f64 = 1.256_637_062_12e-6;
/// Magnetic flux quantum h/2e, Wb.
pub const FLUX_QUANTUM: f64 = H / (2.0 * E_CHARGE);
/// Euler–Mascheroni constant.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Converts an energy in joules to a temperature in millikelvin.
pub fn joule_to_mk(energy: f64) -> f64 {
    energy / K_B * 1e3
}

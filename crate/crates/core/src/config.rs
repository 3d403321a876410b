//! Run configuration: a sectioned TOML file whose keys carry their units.
//!
//! Lengths are in nm, powers in mW and frequencies in GHz; areas, volumes and
//! fields stay in SI. Values are converted to SI when resolved into module types.
//! Every field is optional so that presets, files and flags can be layered.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fibermode::{FiberSpec, IndexModel};
use crate::trap::{SurfaceModel, TrapBeam, TrapConfig, DEFAULT_ALPHA0, DEFAULT_C3, DEFAULT_EPSILON};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Vdw,
    Cp,
    None,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Preset {
    Fig6,
    Fig7,
    Fig8,
    Squid,
    Lc,
}

/// Core index: a number or `"silica"` for the fused-silica dispersion.
#[derive(Debug, Clone, PartialEq, Deserialize, Serialize)]
#[serde(untagged)]
pub enum IndexSetting {
    Value(f64),
    Named(String),
}

macro_rules! section {
    ($(#[$doc:meta])* $name:ident { $($field:ident : $ty:ty),* $(,)? }) => {
        $(#[$doc])*
        #[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
        #[serde(default, deny_unknown_fields)]
        pub struct $name {
            $(#[serde(skip_serializing_if = "Option::is_none")] pub $field: Option<$ty>,)*
        }

        impl $name {
            /// Values set in `top` win over values in `self`.
            pub fn overlay(self, top: Self) -> Self {
                $name { $($field: top.$field.or(self.$field),)* }
            }
        }
    };
}

section!(FiberSection {
    radius_nm: f64,
    core_index: IndexSetting,
    surround_index: f64,
});

section!(ModeSection {
    wavelength_nm: f64,
    power_mw: f64,
});

section!(ProfileSection {
    samples: usize,
    r_max_nm: f64,
});

section!(BeamSection {
    wavelength_nm: f64,
    power_mw: f64,
    phi0_rad: f64,
    counterpropagating: bool,
});

section!(SurfaceSection {
    model: SurfaceKind,
    c3: f64,
    alpha0: f64,
    epsilon: f64,
});

section!(TrapSection {
    both_assignments: bool,
    scan_red_mw: Vec<f64>,
});

section!(TaperSection {
    profile: PathBuf,
    wavelength_nm: f64,
});

section!(CouplingSection {
    veff_m3: f64,
    bsim_t: f64,
    nph: f64,
    flux_area_m2: f64,
    geometric_factor: f64,
    moment_hz_per_t: f64,
    freq_ghz: f64,
    atoms: u64,
});

section!(OutputSection {
    format: Format,
    path: PathBuf,
});

#[derive(Debug, Clone, Default, PartialEq, Deserialize, Serialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub fiber: FiberSection,
    pub mode: ModeSection,
    pub profile: ProfileSection,
    pub red: BeamSection,
    pub blue: BeamSection,
    pub surface: SurfaceSection,
    pub trap: TrapSection,
    pub taper: TaperSection,
    pub coupling: CouplingSection,
    pub output: OutputSection,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| Error::Input(format!("config: {}", e.to_string().trim_end())))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| match e {
            Error::Input(msg) => Error::Input(format!("{}: {msg}", path.display())),
            other => other,
        })
    }

    pub fn overlay(self, top: Self) -> Self {
        RunConfig {
            fiber: self.fiber.overlay(top.fiber),
            mode: self.mode.overlay(top.mode),
            profile: self.profile.overlay(top.profile),
            red: self.red.overlay(top.red),
            blue: self.blue.overlay(top.blue),
            surface: self.surface.overlay(top.surface),
            trap: self.trap.overlay(top.trap),
            taper: self.taper.overlay(top.taper),
            coupling: self.coupling.overlay(top.coupling),
            output: self.output.overlay(top.output),
        }
    }

    /// Built-in reference parameter sets.
    pub fn preset(preset: Preset) -> Self {
        let mut cfg = RunConfig::default();
        let reference_fiber = FiberSection {
            radius_nm: Some(250.0),
            core_index: Some(IndexSetting::Named("silica".into())),
            surround_index: Some(1.0),
        };
        match preset {
            Preset::Fig6 => {
                cfg.fiber = reference_fiber;
                cfg.mode.wavelength_nm = Some(980.0);
                cfg.profile.r_max_nm = Some(1000.0);
            }
            Preset::Fig7 | Preset::Fig8 => {
                cfg.fiber = reference_fiber;
                cfg.red = BeamSection {
                    wavelength_nm: Some(980.0),
                    power_mw: Some(30.0),
                    phi0_rad: Some(0.0),
                    counterpropagating: Some(false),
                };
                cfg.blue = BeamSection {
                    wavelength_nm: Some(730.0),
                    power_mw: Some(13.0),
                    phi0_rad: Some(0.0),
                    counterpropagating: Some(false),
                };
                cfg.surface.model = Some(if preset == Preset::Fig7 {
                    SurfaceKind::Vdw
                } else {
                    SurfaceKind::Cp
                });
            }
            Preset::Squid => {
                cfg.coupling.veff_m3 = Some(crate::coupling::SQUID_MODE_VOLUME);
            }
            Preset::Lc => {
                cfg.coupling.bsim_t = Some(crate::coupling::LC_SIMULATED_FIELD);
                cfg.coupling.nph = Some(crate::coupling::LC_PHOTON_NUMBER);
            }
        }
        cfg
    }

    pub fn fiber_spec(&self) -> Result<FiberSpec> {
        let f = &self.fiber;
        let core = match &f.core_index {
            None => IndexModel::FusedSilica,
            Some(IndexSetting::Value(n)) => IndexModel::Constant(*n),
            Some(IndexSetting::Named(name)) if name.eq_ignore_ascii_case("silica") => IndexModel::FusedSilica,
            Some(IndexSetting::Named(name)) => {
                return Err(Error::Input(format!(
                    "fiber.core_index: unknown material '{name}' (use a number or \"silica\")"
                )))
            }
        };
        FiberSpec::new(
            nm(f.radius_nm.unwrap_or(250.0)),
            core,
            f.surround_index.unwrap_or(1.0),
        )
    }

    pub fn mode_wavelength(&self) -> f64 {
        nm(self.mode.wavelength_nm.unwrap_or(980.0))
    }

    fn beam(section: &BeamSection, wavelength_nm: f64, power_mw: f64) -> TrapBeam {
        TrapBeam {
            wavelength: nm(section.wavelength_nm.unwrap_or(wavelength_nm)),
            power: section.power_mw.unwrap_or(power_mw) / 1e3,
            phi0: section.phi0_rad.unwrap_or(0.0),
            counterpropagating: section.counterpropagating.unwrap_or(false),
        }
    }

    pub fn surface_model(&self) -> SurfaceModel {
        let s = &self.surface;
        match s.model.unwrap_or(SurfaceKind::Vdw) {
            SurfaceKind::None => SurfaceModel::None,
            SurfaceKind::Vdw => SurfaceModel::VanDerWaals {
                c3: s.c3.unwrap_or(DEFAULT_C3),
            },
            SurfaceKind::Cp => SurfaceModel::CasimirPolder {
                alpha0: s.alpha0.unwrap_or(DEFAULT_ALPHA0),
                epsilon: s.epsilon.unwrap_or(DEFAULT_EPSILON),
            },
        }
    }

    pub fn trap_config(&self) -> Result<TrapConfig> {
        Ok(TrapConfig {
            red: Self::beam(&self.red, 980.0, 30.0),
            blue: Self::beam(&self.blue, 730.0, 13.0),
            surface: self.surface_model(),
            fiber: self.fiber_spec()?,
        })
    }

    pub fn taper_wavelength(&self) -> f64 {
        nm(self.taper.wavelength_nm.unwrap_or(730.0))
    }
}

fn nm(value: f64) -> f64 {
    value / 1e9
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_key_reports_location() {
        let err = RunConfig::parse("[fiber]\nradius_nm = 250\nradius = 3\n").unwrap_err();
        let msg = err.to_string();
        assert!(err.is_input_error());
        assert!(msg.contains("line 3") && msg.contains("column 1"), "{msg}");
        assert!(msg.contains("radius"), "{msg}");
    }

    #[test]
    fn unknown_section_rejected() {
        assert!(RunConfig::parse("[fibre]\nradius_nm = 1\n").is_err());
    }

    #[test]
    fn overlay_prefers_top() {
        let base = RunConfig::preset(Preset::Fig7);
        let top = RunConfig::parse("[red]\npower_mw = 20\n").unwrap();
        let merged = base.overlay(top);
        assert_eq!(merged.red.power_mw, Some(20.0));
        assert_eq!(merged.red.wavelength_nm, Some(980.0));
        let cfg = merged.trap_config().unwrap();
        assert!((cfg.red.power - 0.02).abs() < 1e-15);
        assert_eq!(cfg.surface, SurfaceModel::van_der_waals());
    }

    #[test]
    fn units_converted_on_resolve() {
        let cfg = RunConfig::parse(
            "[fiber]\nradius_nm = 300\ncore_index = 1.46\nsurround_index = 1.33\n[surface]\nmodel = \"cp\"\nepsilon = 3.0\n",
        )
        .unwrap();
        let spec = cfg.fiber_spec().unwrap();
        assert!((spec.radius - 300e-9).abs() < 1e-20);
        assert_eq!(spec.core_index, IndexModel::Constant(1.46));
        assert_eq!(
            cfg.surface_model(),
            SurfaceModel::CasimirPolder { alpha0: DEFAULT_ALPHA0, epsilon: 3.0 }
        );
        assert!(RunConfig::parse("[fiber]\ncore_index = \"glass\"\n").unwrap().fiber_spec().is_err());
    }
}

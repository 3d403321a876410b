//! Command-line front end.
//!
//! Exit codes: 0 success (including "no trap" and failed taper verdicts),
//! 2 input or configuration error, 3 numerical or solver failure.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{
    BeamSection, CouplingSection, FiberSection, Format, IndexSetting, Preset, RunConfig, SurfaceKind,
};
use crate::constants::{joule_to_mk, PI};
use crate::coupling::{
    coupling_rate, flux_quantum_field, rescale_simulated_field, single_photon_field, DEFAULT_FREQUENCY,
    DEFAULT_MOMENT,
};
use crate::error::{Error, Result};
use crate::fibermode::{solve_first_excited, solve_he11, v_number, Region, SINGLE_MODE_CUTOFF};
use crate::taper::{check_profile, TaperProfile};
use crate::trap::{
    analyze_prepared, power_ratio_scan, PreparedTrap, TrapBeam, TrapCharacterization, TrapConfig,
    Verdict, LIGHT_SHIFT_CONVENTION,
};

pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "fibertrap", version, about = "Nanofiber mode, trap, taper and coupling calculations")]
pub struct Cli {
    /// TOML run configuration; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Reference parameter set, applied beneath the config file.
    #[arg(long, global = true, value_enum)]
    pub preset: Option<Preset>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file; defaults to stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Solve the HE11 mode.
    Mode(ModeArgs),
    /// Radial intensity cuts along and across the polarization axis.
    Profile(ProfileArgs),
    /// Two-color trapping potential and its characterization.
    Trap(TrapArgs),
    /// Adiabaticity check of a taper profile.
    Taper(TaperArgs),
    /// Atom–resonator magnetic coupling estimate.
    Couple(CoupleArgs),
}

#[derive(Debug, Clone, Default, Args)]
pub struct FiberArgs {
    /// Waist radius, nm.
    #[arg(long)]
    pub radius_nm: Option<f64>,
    /// Core index: a number or "silica".
    #[arg(long)]
    pub core_index: Option<String>,
    #[arg(long)]
    pub surround_index: Option<f64>,
}

impl FiberArgs {
    fn section(&self) -> FiberSection {
        FiberSection {
            radius_nm: self.radius_nm,
            core_index: self.core_index.as_ref().map(|s| match s.parse::<f64>() {
                Ok(n) => IndexSetting::Value(n),
                Err(_) => IndexSetting::Named(s.clone()),
            }),
            surround_index: self.surround_index,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ModeArgs {
    #[command(flatten)]
    pub fiber: FiberArgs,
    #[arg(long)]
    pub wavelength_nm: Option<f64>,
    /// Normalize the field to this guided power, mW.
    #[arg(long)]
    pub power_mw: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub fiber: FiberArgs,
    #[arg(long)]
    pub wavelength_nm: Option<f64>,
    /// Total number of rows, split between the two cuts.
    #[arg(short = 'n', long)]
    pub samples: Option<usize>,
    /// Outer radius of the cuts, nm.
    #[arg(long)]
    pub r_max_nm: Option<f64>,
}

#[derive(Debug, Clone, Args)]
pub struct TrapArgs {
    #[command(flatten)]
    pub fiber: FiberArgs,
    #[arg(long)]
    pub red_nm: Option<f64>,
    #[arg(long)]
    pub red_mw: Option<f64>,
    #[arg(long)]
    pub blue_nm: Option<f64>,
    #[arg(long)]
    pub blue_mw: Option<f64>,
    #[arg(long, value_enum)]
    pub surface: Option<SurfaceKind>,
    /// van der Waals C₃, J·m³.
    #[arg(long)]
    pub c3: Option<f64>,
    /// Static polarizability for the Casimir–Polder term, C·m²/V.
    #[arg(long)]
    pub alpha0: Option<f64>,
    /// Dielectric constant for the Casimir–Polder term.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Blue polarization axis relative to the red one, rad.
    #[arg(long)]
    pub relative_polarization: Option<f64>,
    /// Launch the red beam from both ends.
    #[arg(long)]
    pub counterpropagating: bool,
    /// Also run with the red and blue powers exchanged.
    #[arg(long)]
    pub both_assignments: bool,
    /// Comma-separated red powers for a scan at fixed blue power, mW.
    #[arg(long, value_delimiter = ',')]
    pub scan_red_mw: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Args)]
pub struct TaperArgs {
    /// Two-column (z, rho) profile in metres.
    pub profile: Option<PathBuf>,
    #[arg(long)]
    pub wavelength_nm: Option<f64>,
    #[command(flatten)]
    pub fiber: FiberArgs,
}

#[derive(Debug, Clone, Args)]
pub struct CoupleArgs {
    /// Effective mode volume, m³.
    #[arg(long)]
    pub veff: Option<f64>,
    /// Simulated field amplitude, T.
    #[arg(long)]
    pub bsim: Option<f64>,
    /// Photon number of the simulated field.
    #[arg(long)]
    pub nph: Option<f64>,
    /// Loop area threaded by one flux quantum, m².
    #[arg(long)]
    pub flux_area: Option<f64>,
    /// Multiplier on the flux-quantum field.
    #[arg(long)]
    pub geometric_factor: Option<f64>,
    /// Magnetic moment μ/h, Hz/T.
    #[arg(long)]
    pub moment: Option<f64>,
    /// Resonator frequency, GHz.
    #[arg(long)]
    pub freq: Option<f64>,
    /// Number of atoms.
    #[arg(short = 'N', long)]
    pub atoms: Option<u64>,
}

/// A command result: a JSON report and an optional table.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub report: Value,
    pub table: Option<Table>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn to_json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| (c.to_string(), json!(v)))
                        .collect();
                    Value::Object(obj)
                })
                .collect(),
        )
    }
}

/// Flattens scalar fields (nested objects as dotted keys) into quantity,value rows.
fn render_key_value(report: &Value) -> String {
    fn walk(prefix: &str, value: &Value, out: &mut String) {
        match value {
            Value::Object(map) => {
                for (k, v) in map {
                    let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                    walk(&key, v, out);
                }
            }
            Value::Number(n) => out.push_str(&format!("{prefix},{n}\n")),
            Value::Bool(b) => out.push_str(&format!("{prefix},{b}\n")),
            Value::String(s) => out.push_str(&format!("{prefix},{s}\n")),
            _ => {}
        }
    }
    let mut out = String::from("quantity,value\n");
    walk("", report, &mut out);
    out
}

fn input(msg: impl Into<String>) -> Error {
    Error::Input(msg.into())
}

/// Layers preset, config file and flags.
fn resolve(cli: &Cli, flags: RunConfig) -> Result<RunConfig> {
    let mut cfg = cli.preset.map(RunConfig::preset).unwrap_or_default();
    if let Some(path) = &cli.config {
        cfg = cfg.overlay(RunConfig::load(path)?);
    }
    let mut cfg = cfg.overlay(flags);
    cfg.output.format = cli.format.or(cfg.output.format);
    cfg.output.path = cli.out.clone().or(cfg.output.path);
    Ok(cfg)
}

/// Metres to nanometres, rounded to 1e-9 nm so unit round trips print cleanly.
fn nm(x: f64) -> f64 {
    (x * 1e18).round() / 1e9
}

#[derive(Serialize)]
struct FirstExcitedReport {
    beta_per_m: f64,
    guided: bool,
}

#[derive(Serialize)]
struct ModeReport {
    wavelength_nm: f64,
    radius_nm: f64,
    n1: f64,
    n2: f64,
    v_number: f64,
    single_mode: bool,
    beta_per_m: f64,
    n_eff: f64,
    h_per_m: f64,
    q_per_m: f64,
    s: f64,
    fraction_outside: f64,
    residual: f64,
    first_excited: FirstExcitedReport,
    power_mw: Option<f64>,
    amplitude_v_per_m: Option<f64>,
}

fn cmd_mode(cfg: &RunConfig) -> Result<Output> {
    let spec = cfg.fiber_spec()?;
    let lambda = cfg.mode_wavelength();
    let mut mode = solve_he11(&spec, lambda)?;
    if let Some(p) = cfg.mode.power_mw {
        mode = mode.normalized_to_power(p / 1e3)?;
    }
    let v = v_number(&spec, lambda)?;
    let excited = solve_first_excited(&spec, lambda)?;
    let report = ModeReport {
        wavelength_nm: nm(lambda),
        radius_nm: nm(spec.radius),
        n1: mode.n1,
        n2: mode.n2,
        v_number: v,
        single_mode: v < SINGLE_MODE_CUTOFF,
        beta_per_m: mode.beta,
        n_eff: mode.n_eff(),
        h_per_m: mode.h,
        q_per_m: mode.q,
        s: mode.s,
        fraction_outside: mode.power_split()?.fraction_outside(),
        residual: mode.residual,
        first_excited: FirstExcitedReport {
            beta_per_m: excited.beta,
            guided: excited.guided,
        },
        power_mw: mode.power.map(|p| p * 1e3),
        amplitude_v_per_m: mode.power.map(|_| mode.amplitude),
    };
    Ok(Output {
        report: serde_json::to_value(report).expect("serializable"),
        table: None,
        warnings: vec![],
    })
}

fn cmd_profile(cfg: &RunConfig) -> Result<Output> {
    let spec = cfg.fiber_spec()?;
    let lambda = cfg.mode_wavelength();
    let mode = solve_he11(&spec, lambda)?;
    let a = spec.radius;
    let samples = cfg.profile.samples.unwrap_or(1000);
    if samples < 2 {
        return Err(input(format!("profile needs at least 2 samples, got {samples}")));
    }
    let r_max = cfg.profile.r_max_nm.map_or(4.0 * a, |r| r / 1e9);
    if !(r_max > a) {
        return Err(input("profile r_max_nm must exceed the fiber radius"));
    }
    let on_axis = mode.intensity(0.0, 0.0, 0.0)?;
    let mut rows = Vec::with_capacity(samples);
    for (cut, count) in [(0.0, samples - samples / 2), (0.5 * PI, samples / 2)] {
        for i in 0..count {
            let r = if count > 1 { r_max * i as f64 / (count - 1) as f64 } else { 0.0 };
            rows.push(vec![nm(r), cut, mode.intensity(r, cut, 0.0)? / on_axis]);
        }
    }
    let pol = crate::fibermode::Polarization::QuasiLinear { phi0: 0.0 };
    let inside = mode.fields_in_region(Region::Core, a, 0.0, pol);
    let outside = mode.fields_in_region(Region::Surround, a, 0.0, pol);
    let report = json!({
        "wavelength_nm": nm(lambda),
        "radius_nm": nm(a),
        "r_max_nm": nm(r_max),
        "samples": samples,
        "normalization": "intensity divided by its on-axis value",
        "boundary": {
            "intensity_ratio": outside.norm_sqr() / inside.norm_sqr(),
            "radial_field_ratio": outside.r.norm() / inside.r.norm(),
            "expected_radial_field_ratio": (mode.n1 / mode.n2).powi(2),
        },
    });
    Ok(Output {
        report,
        table: Some(Table {
            columns: vec!["r_nm", "phi_rad", "intensity_norm"],
            rows,
        }),
        warnings: vec![],
    })
}

fn beam_json(beam: &TrapBeam) -> Value {
    json!({
        "wavelength_nm": nm(beam.wavelength),
        "power_mw": beam.power * 1e3,
        "phi0_rad": beam.phi0,
        "counterpropagating": beam.counterpropagating,
    })
}

fn cut_json(cut: &TrapCharacterization) -> Value {
    let site = cut.site;
    json!({
        "relative_azimuth_rad": cut.relative_azimuth,
        "verdict": match cut.verdict { Verdict::Trap => "trap", Verdict::None => "none" },
        "diagnosis": cut.diagnosis,
        "d_min_nm": site.map(|s| nm(s.d_min)),
        "r_min_nm": site.map(|s| nm(s.r_min)),
        "depth_mk": site.map(|s| s.depth_mk),
        "escape_mk": site.map(|s| s.escape_mk),
        "barrier_mk": site.map(|s| s.barrier_mk),
        "curvature_j_per_m2": site.map(|s| s.curvature),
    })
}

fn assignment_label(config: &TrapConfig) -> String {
    format!(
        "{}nm:{}mW,{}nm:{}mW",
        nm(config.red.wavelength).round(),
        config.red.power * 1e3,
        nm(config.blue.wavelength).round(),
        config.blue.power * 1e3
    )
}

fn cmd_trap(cfg: &RunConfig) -> Result<Output> {
    let config = cfg.trap_config()?;
    let mut variants = vec![config];
    if cfg.trap.both_assignments.unwrap_or(false) {
        variants.push(config.with_powers(config.blue.power, config.red.power));
    }
    let mut assignments = Vec::new();
    let mut table = None;
    for variant in &variants {
        let trap = PreparedTrap::new(variant)?;
        let analysis = analyze_prepared(&trap)?;
        if table.is_none() {
            let a = trap.radius();
            let rows = analysis
                .primary_curve()
                .samples
                .iter()
                .map(|s| {
                    vec![
                        nm(s.r),
                        nm(s.r - a),
                        joule_to_mk(s.red),
                        joule_to_mk(s.blue),
                        joule_to_mk(s.surface),
                        joule_to_mk(s.total),
                    ]
                })
                .collect();
            table = Some(Table {
                columns: vec!["r_nm", "d_nm", "red_mk", "blue_mk", "surface_mk", "total_mk"],
                rows,
            });
        }
        assignments.push(json!({
            "label": assignment_label(variant),
            "red": beam_json(&variant.red),
            "blue": beam_json(&variant.blue),
            "primary": analysis.primary,
            "cuts": analysis.cuts.iter().map(cut_json).collect::<Vec<_>>(),
            "axial_period_nm": variant.red.counterpropagating.then(|| nm(PI / trap.red_mode.beta)),
        }));
    }
    let scan = match &cfg.trap.scan_red_mw {
        None => Value::Null,
        Some(powers) => {
            let mw: Vec<f64> = powers.iter().map(|p| p / 1e3).collect();
            let rows = power_ratio_scan(&config, &mw)?;
            Value::Array(
                rows.iter()
                    .map(|row| {
                        json!({
                            "red_power_mw": row.p_red * 1e3,
                            "primary": row.primary,
                            "cuts": row.cuts.iter().map(cut_json).collect::<Vec<_>>(),
                        })
                    })
                    .collect(),
            )
        }
    };
    let surface_coefficient = config.surface.power_law()?.map(|(c, n)| json!({"coefficient": c, "exponent": n}));
    let report = json!({
        "light_shift_convention": LIGHT_SHIFT_CONVENTION,
        "radius_nm": nm(config.fiber.radius),
        "surface": config.surface,
        "surface_law": surface_coefficient,
        "assignments": assignments,
        "scan": scan,
    });
    Ok(Output {
        report,
        table,
        warnings: vec![],
    })
}

fn cmd_taper(cfg: &RunConfig) -> Result<Output> {
    let path = cfg
        .taper
        .profile
        .as_ref()
        .ok_or_else(|| input("taper needs a profile file"))?;
    let profile = TaperProfile::from_file(path)?;
    let lambda = cfg.taper_wavelength();
    let spec = cfg.fiber_spec()?;
    let report = check_profile(&profile, lambda, &spec)?;
    let worst = report.worst_sample();
    let rows = report
        .samples
        .iter()
        .map(|s| vec![s.z, s.rho, s.omega, s.omega_limit, s.margin])
        .collect();
    Ok(Output {
        report: json!({
            "wavelength_nm": nm(lambda),
            "samples": profile.len(),
            "monotone": profile.is_monotone(),
            "verdict": if report.pass { "pass" } else { "fail" },
            "worst": {"z_m": worst.z, "rho_m": worst.rho, "margin_rad": worst.margin},
            "violations_z_m": report.violations,
            "approximation": "local modes of a two-layer cylinder at each radius",
        }),
        table: Some(Table {
            columns: vec!["z_m", "rho_m", "omega_rad", "omega_limit_rad", "margin_rad"],
            rows,
        }),
        warnings: vec![],
    })
}

fn cmd_couple(cfg: &RunConfig) -> Result<Output> {
    let c = &cfg.coupling;
    let moment = c.moment_hz_per_t.unwrap_or(DEFAULT_MOMENT);
    let atoms = c.atoms.unwrap_or(1);
    let sources = [c.veff_m3.is_some(), c.bsim_t.is_some() || c.nph.is_some(), c.flux_area_m2.is_some()];
    if sources.iter().filter(|s| **s).count() != 1 {
        return Err(input("couple needs exactly one of --veff, --bsim with --nph, or --flux-area"));
    }
    let mut warnings = Vec::new();
    let mut report = Map::new();
    let field = if let Some(volume) = c.veff_m3 {
        let freq = match c.freq_ghz {
            Some(f) if f >= 1e6 => {
                return Err(input(format!("--freq is in GHz; {f} GHz is not a microwave frequency")))
            }
            Some(f) => f * 1e9,
            None => DEFAULT_FREQUENCY,
        };
        let b = single_photon_field(freq, volume)?;
        warnings.push(format!(
            "single-photon field {b:.3e} T uses omega = 2 pi f; the quoted order-of-magnitude estimate is about 1e-8 T"
        ));
        report.insert("source".into(), json!("mode_volume"));
        report.insert("frequency_ghz".into(), json!((freq / 1e3).round() / 1e6));
        report.insert("mode_volume_m3".into(), json!(volume));
        b
    } else if let Some(area) = c.flux_area_m2 {
        let factor = c.geometric_factor.unwrap_or(1.0);
        report.insert("source".into(), json!("flux_quantum"));
        report.insert("loop_area_m2".into(), json!(area));
        report.insert("geometric_factor".into(), json!(factor));
        flux_quantum_field(area, factor)?
    } else {
        let (Some(b), Some(n)) = (c.bsim_t, c.nph) else {
            return Err(input("--bsim and --nph must be given together"));
        };
        report.insert("source".into(), json!("simulated_field"));
        report.insert("simulated_field_t".into(), json!(b));
        report.insert("photon_number".into(), json!(n));
        rescale_simulated_field(b, n)?
    };
    let est = coupling_rate(field, moment, atoms)?;
    report.insert("field_t".into(), json!(est.field));
    report.insert("moment_hz_per_t".into(), json!(est.moment));
    report.insert("g_hz".into(), json!(est.g));
    report.insert("atoms".into(), json!(est.atoms));
    report.insert("collective_hz".into(), json!(est.collective));
    report.insert("notes".into(), json!(warnings));
    Ok(Output {
        report: Value::Object(report),
        table: None,
        warnings,
    })
}

fn flags(command: &Command) -> RunConfig {
    let mut cfg = RunConfig::default();
    match command {
        Command::Mode(args) => {
            cfg.fiber = args.fiber.section();
            cfg.mode.wavelength_nm = args.wavelength_nm;
            cfg.mode.power_mw = args.power_mw;
        }
        Command::Profile(args) => {
            cfg.fiber = args.fiber.section();
            cfg.mode.wavelength_nm = args.wavelength_nm;
            cfg.profile.samples = args.samples;
            cfg.profile.r_max_nm = args.r_max_nm;
        }
        Command::Trap(args) => {
            cfg.fiber = args.fiber.section();
            cfg.red = BeamSection {
                wavelength_nm: args.red_nm,
                power_mw: args.red_mw,
                phi0_rad: None,
                counterpropagating: args.counterpropagating.then_some(true),
            };
            cfg.blue = BeamSection {
                wavelength_nm: args.blue_nm,
                power_mw: args.blue_mw,
                phi0_rad: args.relative_polarization,
                counterpropagating: None,
            };
            cfg.surface.model = args.surface;
            cfg.surface.c3 = args.c3;
            cfg.surface.alpha0 = args.alpha0;
            cfg.surface.epsilon = args.epsilon;
            cfg.trap.both_assignments = args.both_assignments.then_some(true);
            cfg.trap.scan_red_mw = args.scan_red_mw.clone();
        }
        Command::Taper(args) => {
            cfg.fiber = args.fiber.section();
            cfg.taper.profile = args.profile.clone();
            cfg.taper.wavelength_nm = args.wavelength_nm;
        }
        Command::Couple(args) => {
            cfg.coupling = CouplingSection {
                veff_m3: args.veff,
                bsim_t: args.bsim,
                nph: args.nph,
                flux_area_m2: args.flux_area,
                geometric_factor: args.geometric_factor,
                moment_hz_per_t: args.moment,
                freq_ghz: args.freq,
                atoms: args.atoms,
            };
        }
    }
    cfg
}

/// Resolves the configuration and runs the selected command.
pub fn execute(cli: &Cli) -> Result<(RunConfig, Output)> {
    let cfg = resolve(cli, flags(&cli.command))?;
    let out = match &cli.command {
        Command::Mode(_) => cmd_mode(&cfg),
        Command::Profile(_) => cmd_profile(&cfg),
        Command::Trap(_) => cmd_trap(&cfg),
        Command::Taper(_) => cmd_taper(&cfg),
        Command::Couple(_) => cmd_couple(&cfg),
    }?;
    Ok((cfg, out))
}

/// Full JSON document: the report plus the table rows, if any.
pub fn json_document(output: &Output) -> Value {
    let mut doc = output.report.clone();
    if let (Some(table), Value::Object(map)) = (&output.table, &mut doc) {
        map.insert("rows".into(), table.to_json());
    }
    doc
}

fn sidecar_path(out: &Path) -> PathBuf {
    if out.extension().is_some_and(|e| e == "json") {
        out.with_extension("report.json")
    } else {
        out.with_extension("json")
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| input(format!("{}: {e}", path.display())))
}

/// Writes command output according to the resolved format and path.
pub fn emit(cfg: &RunConfig, output: &Output) -> Result<()> {
    for w in &output.warnings {
        eprintln!("warning: {w}");
    }
    let format = cfg.output.format.unwrap_or(Format::Csv);
    let report_text = serde_json::to_string_pretty(&output.report).expect("serializable") + "\n";
    let (data, sidecar) = match format {
        Format::Json => (
            serde_json::to_string_pretty(&json_document(output)).expect("serializable") + "\n",
            None,
        ),
        Format::Csv => match &output.table {
            Some(table) => (table.to_csv(), Some(report_text)),
            None => (render_key_value(&output.report), None),
        },
    };
    match &cfg.output.path {
        Some(path) => {
            write_file(path, &data)?;
            if let Some(report) = sidecar {
                write_file(&sidecar_path(path), &report)?;
            }
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            let mut text = String::new();
            if let Some(report) = sidecar {
                let compact: Value = serde_json::from_str(&report).expect("round trip");
                text.push_str(&format!("# {compact}\n"));
            }
            text.push_str(&data);
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| Error::Numerical(format!("writing stdout: {e}")))?;
        }
    }
    Ok(())
}

/// Entry point used by the binary; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli).and_then(|(cfg, out)| emit(&cfg, &out)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_input_error() {
                EXIT_INPUT
            } else {
                EXIT_NUMERICAL
            }
        }
    }
}

//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use fibertrap::constants::PI;
use fibertrap::coupling::{coupling_rate, flux_quantum_field, single_photon_field};
use fibertrap::fibermode::{solve_he11, v_number, FiberSpec, Polarization, Region, SINGLE_MODE_CUTOFF};
use fibertrap::taper::{
    check_profile_with, min_linear_taper_length_with, LocalModes, TaperProfile, LINEAR_TAPER_SAMPLES,
};
use fibertrap::trap::{
    analyze, power_ratio_scan, rb_static_polarizability, PowerAssignment, SurfaceModel, TrapCharacterization,
    TrapConfig, LIGHT_SHIFT_CONVENTION,
};
use rand::{rngs::StdRng, Rng, SeedableRng};

type Check = Result<(bool, String), String>;
type Criterion = (&'static str, fn() -> Check);

fn within_factor(value: f64, target: f64, factor: f64) -> bool {
    value >= target / factor && value <= target * factor
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn primary(config: &TrapConfig) -> Result<TrapCharacterization, String> {
    Ok(*analyze(config).map_err(err)?.primary())
}

/// (d_min nm, depth mK) of the primary cut, if it traps.
fn site_nm_mk(cut: &TrapCharacterization) -> Option<(f64, f64)> {
    cut.site.map(|s| (s.d_min * 1e9, s.depth_mk))
}

fn describe(label: &str, cut: &TrapCharacterization) -> String {
    match site_nm_mk(cut) {
        Some((d, depth)) => format!("{label}: d_min {d:.2} nm, depth {depth:.3} mK"),
        None => format!("{label}: no trap"),
    }
}

fn matches_reference(cut: &TrapCharacterization, d_target: f64, depth_target: f64) -> bool {
    site_nm_mk(cut).is_some_and(|(d, depth)| (d - d_target).abs() <= 15.0 && within_factor(depth, depth_target, 2.0))
}

fn assignment_label(a: PowerAssignment) -> &'static str {
    match a {
        PowerAssignment::RedStrong => "980nm:30mW,730nm:13mW",
        PowerAssignment::BlueStrong => "980nm:13mW,730nm:30mW",
    }
}

fn criterion_1() -> Check {
    let mut passing = Vec::new();
    let mut details = Vec::new();
    let mut elapsed = Duration::ZERO;
    for assignment in [PowerAssignment::RedStrong, PowerAssignment::BlueStrong] {
        let config = TrapConfig::reference(assignment, SurfaceModel::van_der_waals());
        let start = Instant::now();
        let cut = primary(&config)?;
        elapsed = elapsed.max(start.elapsed());
        details.push(describe(assignment_label(assignment), &cut));
        if matches_reference(&cut, 137.0, 7.46) {
            passing.push(assignment_label(assignment));
        }
    }
    let fast = elapsed < Duration::from_secs(1);
    let recorded = if passing.is_empty() { "none".to_owned() } else { passing.join(" ") };
    Ok((
        !passing.is_empty() && fast,
        format!(
            "target 137 ± 15 nm, 7.46 mK ×/÷ 2; {}; passing assignment: {recorded}; convention: {LIGHT_SHIFT_CONVENTION}; slowest {:.0} ms",
            details.join("; "),
            elapsed.as_secs_f64() * 1e3
        ),
    ))
}

fn criterion_2() -> Check {
    let vdw = primary(&TrapConfig::reference(PowerAssignment::RedStrong, SurfaceModel::van_der_waals()))?;
    let cp = primary(&TrapConfig::reference(PowerAssignment::RedStrong, SurfaceModel::casimir_polder()))?;
    let (Some(a), Some(b)) = (vdw.site, cp.site) else {
        return Ok((false, "missing trap under vdW or CP".into()));
    };
    let outward = (b.d_min - a.d_min) * 1e9;
    let change = b.depth_mk - a.depth_mk;
    let differential = change <= 0.0 && change.abs() <= 0.1 && outward > 0.0 && outward <= 3.0;
    let absolute = matches_reference(&cp, 138.0, 7.43);
    Ok((
        differential && absolute,
        format!(
            "differential {} (depth {change:+.4} mK, minimum {outward:+.3} nm); absolute {} ({}; target 138 ± 15 nm, 7.43 mK ×/÷ 2)",
            if differential { "ok" } else { "out of bounds" },
            if absolute { "ok" } else { "out of bounds" },
            describe("CP", &cp)
        ),
    ))
}

fn criterion_3() -> Check {
    let g = coupling_rate(2.47e-9, 1.4e10, 1).map_err(err)?.g;
    let flux = flux_quantum_field(1e-10, 1.0).map_err(err)?;
    let field = single_photon_field(6.8e9, 1e-15).map_err(err)?;
    let pass = (g - 34.6).abs() <= 0.1 && (flux / 2.068e-5 - 1.0).abs() <= 0.005 && within_factor(field, 1e-8, 10.0);
    Ok((pass, format!("g {g:.3} Hz; flux field {flux:.4e} T; single-photon field {field:.3e} T")))
}

fn criterion_4() -> Check {
    let alpha = rb_static_polarizability();
    let deviation = alpha / 5.26e-39 - 1.0;
    Ok((
        deviation.abs() <= 0.10,
        format!("α(ω→0) {alpha:.4e} C·m²/V, {:+.2}% from 5.26e-39", 100.0 * deviation),
    ))
}

fn criterion_5() -> Check {
    let start = Instant::now();
    let fiber = FiberSpec::silica_in_vacuum(250e-9).map_err(err)?;
    let mut rng = StdRng::seed_from_u64(5);
    let mut worst_residual: f64 = 0.0;
    let mut worst_tangential: f64 = 0.0;
    let mut worst_jump: f64 = 0.0;
    let mut worst_harmonic: f64 = 0.0;
    for lambda in [730e-9, 980e-9] {
        let mode = solve_he11(&fiber, lambda).map_err(err)?;
        worst_residual = worst_residual.max(mode.residual);
        let a = mode.radius;
        let jump = (mode.n1 / mode.n2).powi(2);
        for _ in 0..100 {
            let phi = rng.gen_range(0.0..2.0 * PI);
            let pol = Polarization::QuasiLinear { phi0: 0.0 };
            let inside = mode.fields_in_region(Region::Core, a, phi, pol);
            let outside = mode.fields_in_region(Region::Surround, a, phi, pol);
            let scale = inside.norm_sqr().sqrt();
            worst_tangential = worst_tangential
                .max((outside.z - inside.z).norm() / scale)
                .max((outside.phi - inside.phi).norm() / scale);
            if inside.r.norm() > 1e-6 * scale {
                worst_jump = worst_jump.max((outside.r / inside.r - jump).norm() / jump);
            }
        }
        let normalized = mode.normalized_to_power(1e-3).map_err(err)?;
        let n = 64;
        for r in [0.3 * a, 0.9 * a, 1.1 * a, 2.0 * a] {
            let samples: Vec<f64> = (0..n)
                .map(|i| normalized.intensity(r, 2.0 * PI * i as f64 / n as f64, 0.0))
                .collect::<Result<_, _>>()
                .map_err(err)?;
            let mean = samples.iter().sum::<f64>() / n as f64;
            for m in (1..n / 2).filter(|&m| m != 2) {
                let (mut re, mut im) = (0.0, 0.0);
                for (i, v) in samples.iter().enumerate() {
                    let t = 2.0 * PI * (m * i) as f64 / n as f64;
                    re += v * t.cos();
                    im += v * t.sin();
                }
                worst_harmonic = worst_harmonic.max((re * re + im * im).sqrt() / n as f64 / mean);
            }
        }
    }
    let v = v_number(&fiber, 730e-9).map_err(err)?;
    let elapsed = start.elapsed();
    let pass = worst_residual < 1e-10
        && worst_tangential <= 1e-9
        && worst_jump <= 1e-9
        && worst_harmonic < 1e-10
        && (v - 2.27).abs() < 0.01
        && v < SINGLE_MODE_CUTOFF
        && elapsed < Duration::from_secs(10);
    Ok((
        pass,
        format!(
            "residual {worst_residual:.1e}; tangential {worst_tangential:.1e}; E_r jump {worst_jump:.1e}; odd/high harmonics {worst_harmonic:.1e}; V {v:.4}; {:.2} s",
            elapsed.as_secs_f64()
        ),
    ))
}

fn criterion_6() -> Check {
    let base = TrapConfig::reference(PowerAssignment::RedStrong, SurfaceModel::None);
    let reference = primary(&base)?;
    let site = reference.site.ok_or("no trap without surface term")?;
    let mut worst_shift: f64 = 0.0;
    let mut worst_depth: f64 = 0.0;
    for scale in [0.25, 0.5, 2.0, 3.7, 10.0] {
        let cut = primary(&base.with_powers(base.red.power * scale, base.blue.power * scale))?;
        let scaled = cut.site.ok_or("trap lost under scaling")?;
        worst_shift = worst_shift.max((scaled.r_min - site.r_min).abs());
        worst_depth = worst_depth.max((scaled.depth_mk / site.depth_mk / scale - 1.0).abs());
    }
    let scan_config = TrapConfig::reference(PowerAssignment::RedStrong, SurfaceModel::van_der_waals());
    let powers: Vec<f64> = (0..=25).map(|i| (5.0 + i as f64) * 1e-3).collect();
    let rows = power_ratio_scan(&scan_config, &powers).map_err(err)?;
    let mut monotone = true;
    let mut trapping_rows = 0;
    for cut in 0..2 {
        let sites: Vec<_> = rows.iter().filter_map(|r| r.cuts[cut].site).collect();
        trapping_rows += sites.len();
        monotone &= sites.windows(2).all(|w| w[1].escape_mk > w[0].escape_mk && w[1].d_min < w[0].d_min);
    }
    let pass = worst_shift <= 1e-12 && worst_depth <= 1e-9 && monotone && trapping_rows > 20;
    Ok((
        pass,
        format!(
            "argmin shift {:.1e} nm; depth linearity {worst_depth:.1e}; red scan 5–30 mW deepens and approaches on each cut: {monotone} ({trapping_rows} trapping rows)",
            worst_shift * 1e9
        ),
    ))
}

fn criterion_7() -> Check {
    let start = Instant::now();
    let lambda = 730e-9;
    let fiber = FiberSpec::silica_in_vacuum(250e-9).map_err(err)?;
    let modes = LocalModes::new(fiber, lambda);
    let flat = TaperProfile::new(vec![0.0, 1e-3, 2e-3, 3e-3], vec![250e-9; 4]).map_err(err)?;
    let flat_pass = check_profile_with(&flat, &modes).map_err(err)?.pass;
    let mut invariant = true;
    for (rho_start, length) in [(62.5e-6, 1e-3), (5e-6, 2e-2), (2e-6, 50e-6)] {
        let profile = TaperProfile::linear(rho_start, 250e-9, length, 101).map_err(err)?;
        let coarse = check_profile_with(&profile, &modes).map_err(err)?.pass;
        let fine = check_profile_with(&profile.resampled(2).map_err(err)?, &modes).map_err(err)?.pass;
        invariant &= coarse == fine;
    }
    let (rho_start, rho_end) = (5e-6, 250e-9);
    let length = min_linear_taper_length_with(&modes, rho_start, rho_end).map_err(err)?;
    let verdict = |l: f64| -> Result<bool, String> {
        let profile = TaperProfile::linear(rho_start, rho_end, l, LINEAR_TAPER_SAMPLES).map_err(err)?;
        Ok(check_profile_with(&profile, &modes).map_err(err)?.pass)
    };
    let bracket = verdict(length)? && !verdict(0.99 * length)?;
    let elapsed = start.elapsed();
    Ok((
        flat_pass && invariant && bracket && elapsed < Duration::from_secs(30),
        format!(
            "flat profile passes: {flat_pass}; verdicts stable under 2× resampling: {invariant}; minimal length {:.3} mm bracketed: {bracket}; {:.2} s",
            length * 1e3,
            elapsed.as_secs_f64()
        ),
    ))
}

fn preset_files(dir: &Path, preset: &str, tag: &str) -> Result<Vec<Vec<u8>>, String> {
    let subcommand = match preset {
        "fig6" => "profile",
        "fig7" | "fig8" => "trap",
        _ => "couple",
    };
    let data = dir.join(format!("{preset}-{tag}.csv"));
    let status = Command::new(env!("CARGO_BIN_EXE_fibertrap"))
        .args(["--preset", preset, "--out"])
        .arg(&data)
        .arg(subcommand)
        .output()
        .map_err(err)?;
    if !status.status.success() {
        return Err(format!("{preset}: {}", String::from_utf8_lossy(&status.stderr)));
    }
    let mut files = vec![std::fs::read(&data).map_err(err)?];
    if let Ok(sidecar) = std::fs::read(data.with_extension("json")) {
        files.push(sidecar);
    }
    Ok(files)
}

fn criterion_8() -> Check {
    let dir = tempfile::tempdir().map_err(err)?;
    let mut differing = Vec::new();
    let mut files = 0;
    for preset in ["fig6", "fig7", "fig8", "squid", "lc"] {
        let first = preset_files(dir.path(), preset, "a")?;
        let second = preset_files(dir.path(), preset, "b")?;
        files += first.len();
        if first != second {
            differing.push(preset);
        }
    }
    Ok((
        differing.is_empty(),
        format!("5 presets, {files} files per run; differing: {differing:?}"),
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("trap depth and position, van der Waals", criterion_1),
        ("surface model switch to Casimir-Polder", criterion_2),
        ("coupling arithmetic", criterion_3),
        ("static polarizability", criterion_4),
        ("mode solver properties", criterion_5),
        ("power scaling properties", criterion_6),
        ("adiabaticity suite", criterion_7),
        ("preset determinism", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let (pass, detail) = run().unwrap_or_else(|e| (false, format!("error: {e}")));
        failed += usize::from(!pass);
        println!("{} {} {name}: {detail}", if pass { "PASS" } else { "FAIL" }, i + 1);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}

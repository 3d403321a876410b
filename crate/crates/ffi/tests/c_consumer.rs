use std::path::{Path, PathBuf};
use std::process::Command;

fn profile_dir() -> PathBuf {
    let exe = std::env::current_exe().unwrap();
    exe.parent().and_then(Path::parent).unwrap().to_path_buf()
}

#[test]
fn c_program_links_against_header_and_static_library() {
    let crate_dir = Path::new(env!("CARGO_MANIFEST_DIR"));
    let lib = profile_dir().join("libfibertrap_ffi.a");
    assert!(lib.exists(), "{} missing", lib.display());
    let dir = tempfile::tempdir().unwrap();
    let exe = dir.path().join("smoke");
    let compiled = Command::new("cc")
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(crate_dir.join("include"))
        .arg(crate_dir.join("tests/c/smoke.c"))
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .output()
        .expect("C compiler available");
    assert!(compiled.status.success(), "{}", String::from_utf8_lossy(&compiled.stderr));

    let run = Command::new(&exe).output().unwrap();
    assert!(run.status.success(), "{}", String::from_utf8_lossy(&run.stderr));
    let line = String::from_utf8(run.stdout).unwrap();
    let fields: Vec<&str> = line.split_whitespace().collect();
    assert_eq!(fields[0], env!("CARGO_PKG_VERSION"));

    let fiber = fibertrap::fibermode::FiberSpec::silica_in_vacuum(250e-9).unwrap();
    let beta = fibertrap::fibermode::solve_he11(&fiber, 980e-9).unwrap().beta;
    assert_eq!(fields[1].parse::<f64>().unwrap(), beta);
    let config = fibertrap::trap::TrapConfig::reference(
        fibertrap::trap::PowerAssignment::RedStrong,
        fibertrap::trap::SurfaceModel::van_der_waals(),
    );
    let site = fibertrap::trap::analyze(&config).unwrap().primary().site.unwrap();
    assert_eq!(fields[2].parse::<f64>().unwrap(), site.d_min);
    assert_eq!(fields[3].parse::<f64>().unwrap(), site.depth_mk);
}

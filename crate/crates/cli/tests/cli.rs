use casimir_cli::{run, RunReport, Scenario};
use std::path::Path;
use std::process::Command;

const SWEEP: &str = r#"
kind = "force"
temperature_k = 300.0

[model]
type = "plasma"
omega_p_rad_s = 2e16

[geometry]
separation_m = 1e-7
radius_m = 1e-4

[sweep]
parameter = "separation_m"
start = 1e-7
stop = 4e-7
points = 3
spacing = "log"
"#;

fn casimir(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn csv_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "s.toml", SWEEP);
    let a = casimir(&["run", &sc]);
    let b = casimir(&["run", &sc]);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);
    let single = Command::new(env!("CARGO_BIN_EXE_casimir"))
        .args(["run", &sc])
        .env("CASIMIR_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(single.stdout, a.stdout);
}

#[test]
fn sweep_rows_stay_in_input_order() {
    let sc = Scenario::from_toml_str(SWEEP).unwrap();
    let report = run(&sc).unwrap();
    assert_eq!(report.records.len(), 3);
    let params: Vec<f64> = report.records.iter().map(|r| r.param.unwrap()).collect();
    assert!(params.windows(2).all(|w| w[0] < w[1]));
    let forces: Vec<f64> = report.records.iter().map(|r| r.value.unwrap()).collect();
    assert!(forces.windows(2).all(|w| w[0] > w[1]));
    assert!(report
        .records
        .iter()
        .all(|r| r.converged && r.abs_error.unwrap() <= 1e-9 * r.value.unwrap()));
}

#[test]
fn json_file_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(dir.path(), "s.toml", SWEEP);
    let out = dir.path().join("r.json");
    let st = casimir(&[
        "run",
        &sc,
        "--format",
        "json",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert!(st.status.success());
    let report: RunReport = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(report.records.len(), 3);
    assert_eq!(report.metadata.kind, "force");
    assert_eq!(
        report.metadata.sweep_parameter.as_deref(),
        Some("separation_m")
    );
}

#[test]
fn empty_sweep_gives_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let sc = write(
        dir.path(),
        "s.toml",
        &SWEEP.replace("points = 3", "points = 0"),
    );
    let st = casimir(&["run", &sc]);
    assert!(st.status.success());
    assert_eq!(
        String::from_utf8(st.stdout).unwrap(),
        "param,value_N,abs_error_N,n_zero_N,n_terms\n"
    );
}

#[test]
fn single_point_ideal_zero_temperature_is_closed_form() {
    let body = r#"
kind = "zero_T_force"
[model]
type = "ideal"
[geometry]
separation_m = 1e-7
radius_m = 1e-4
"#;
    let report = run(&Scenario::from_toml_str(body).unwrap()).unwrap();
    let f0 =
        std::f64::consts::PI.powi(3) * casimir_core::constants::HBAR_C * 1e-4 / (360.0 * 1e-21);
    let v = report.records[0].value.unwrap();
    assert!((v / f0 - 1.0).abs() < 1e-8, "{v} vs {f0}");
}

#[test]
fn failures_are_recorded_and_only_total_failure_exits_nonzero() {
    let dir = tempfile::tempdir().unwrap();
    // The expansion is refused for β ≥ 1/2, i.e. small ω_p.
    let partial = r#"
kind = "expansion"
temperature_k = 300.0
[model]
type = "plasma"
omega_p_rad_s = 2e16
[geometry]
separation_m = 1e-7
radius_m = 1e-4
[sweep]
parameter = "omega_p_rad_s"
start = 1e14
stop = 2e16
points = 2
"#;
    let sc = write(dir.path(), "p.toml", partial);
    let st = casimir(&["run", &sc]);
    assert!(st.status.success());
    let text = String::from_utf8(st.stdout).unwrap();
    let rows: Vec<_> = text.lines().skip(1).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows[0].starts_with("1.00000000000e14,,"), "{}", rows[0]);
    assert!(!rows[1].contains(",,,,"));

    let all = partial.replace("stop = 2e16", "stop = 2e14");
    let sc = write(dir.path(), "a.toml", &all);
    let st = casimir(&["run", &sc]);
    assert!(!st.status.success());
}

#[test]
fn overrides_and_presets() {
    let dir = tempfile::tempdir().unwrap();
    let st = casimir(&["preset", "afm"]);
    assert!(st.status.success());
    let sc = Scenario::from_toml_str(&String::from_utf8(st.stdout).unwrap()).unwrap();
    assert_eq!(sc.model.omega_tau_rad_s, Some(5e13));
    assert!(!casimir(&["preset", "nope"]).status.success());

    let path = write(
        dir.path(),
        "s.toml",
        &SWEEP.replace("points = 3", "points = 1"),
    );
    let schwinger = casimir(&["run", &path, "--tol", "1e-8"]);
    let direct = casimir(&["run", &path, "--prescription", "direct"]);
    assert!(schwinger.status.success() && direct.status.success());
    assert_ne!(schwinger.stdout, direct.stdout);
    assert!(!casimir(&["run", &path, "--tol", "2"]).status.success());
    let missing = casimir(&["run", "/nonexistent/s.toml"]);
    assert!(!missing.status.success());
    assert!(String::from_utf8_lossy(&missing.stderr).contains("/nonexistent/s.toml"));
}

#[test]
fn shipped_scenarios_run_cleanly() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("scenarios");
    let mut n = 0;
    for entry in std::fs::read_dir(&dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().and_then(|e| e.to_str()) != Some("toml") {
            continue;
        }
        let report = run(&Scenario::from_path(&path).unwrap()).unwrap();
        assert!(
            report
                .records
                .iter()
                .all(|r| r.error.is_none() && r.converged),
            "{}",
            path.display()
        );
        n += 1;
    }
    assert!(n >= 5);
}

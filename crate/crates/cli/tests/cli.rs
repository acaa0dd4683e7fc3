use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_isoprofile"))
        .args(args)
        .arg("--out")
        .arg(dir)
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

#[test]
fn configuration_errors_exit_2() {
    let d = tempfile::tempdir().unwrap();
    assert_eq!(code(&run(d.path(), &["verify", "--grid", "10"])), 2);
    assert_eq!(code(&run(d.path(), &["profile", "figure4"])), 2);
    assert_eq!(code(&run(d.path(), &["constants", "--eps", "-1"])), 2);
    assert_eq!(code(&run(d.path(), &["symmetrize", "--tol", "0"])), 2);
    assert_eq!(code(&run(d.path(), &["frobnicate"])), 2);
    let missing = d.path().join("missing.txt");
    assert_eq!(code(&run(d.path(), &["symmetrize", missing.to_str().unwrap()])), 2);
}

#[test]
fn large_eps_fails_verification() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["verify", "--eps", "1.5625", "--count", "4"]);
    assert_eq!(code(&o), 1);
    let report = fs::read_to_string(d.path().join("report.txt")).unwrap();
    assert!(report.contains("[FAIL] chord"), "chord step should fail");
    assert!(report.trim_end().ends_with("result: FAIL"));
}

#[test]
fn constants_formats() {
    let d = tempfile::tempdir().unwrap();
    let o = run(d.path(), &["constants"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.contains("c^2 > 2/3: 0.680092 > 0.666667"), "{text}");
    let o = run(d.path(), &["constants", "--eps", "1", "--format", "kv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    let c2: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("c2="))
        .unwrap()
        .parse()
        .unwrap();
    assert!((c2 - 0.6204).abs() < 1e-4);
    assert!(text.lines().all(|l| l.contains('=')));
}

#[test]
fn profile_outputs_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for which in ["figure2", "s2xR", "figure3a"] {
        assert_eq!(code(&run(a.path(), &["profile", which, "--grid", "300"])), 0);
        assert_eq!(code(&run(b.path(), &["profile", which, "--grid", "300"])), 0);
        for ext in ["csv", "svg"] {
            let name = format!("{which}.{ext}");
            let x = fs::read(a.path().join(&name)).unwrap();
            let y = fs::read(b.path().join(&name)).unwrap();
            assert_eq!(x, y, "{name} differs between runs");
        }
    }
    let csv = fs::read_to_string(a.path().join("figure2.csv")).unwrap();
    assert_eq!(csv.lines().count(), 301);
    assert!(csv.starts_with("volume,I_S3(3)xR,c*I_S4scaled,margin\n"));
    let svg = fs::read_to_string(a.path().join("figure2.svg")).unwrap();
    assert!(svg.contains(r#"viewBox="0 0 800 600""#));
    assert_eq!(svg.matches("stroke-dasharray").count(), 2);
    let flat = fs::read_to_string(a.path().join("s2xR.csv")).unwrap();
    let last: f64 = flat.lines().last().unwrap().split(',').nth(1).unwrap().parse().unwrap();
    assert!((last - 8.0 * std::f64::consts::PI).abs() < 1e-12);
}

#[test]
fn symmetrize_round_trips_function_files() {
    let a = tempfile::tempdir().unwrap();
    let o = run(a.path(), &["symmetrize", "--count", "4", "--seed", "11", "--format", "kv"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let generated = a.path().join("functions.txt");
    let first = fs::read(a.path().join("symmetrize.kv")).unwrap();
    let b = tempfile::tempdir().unwrap();
    let o = run(b.path(), &["symmetrize", generated.to_str().unwrap(), "--format", "kv"]);
    assert_eq!(code(&o), 0);
    assert_eq!(first, fs::read(b.path().join("symmetrize.kv")).unwrap());
    let layers = fs::read_to_string(b.path().join("symmetrized.txt")).unwrap();
    assert!(layers.starts_with("# function 1 layer 1"));
    assert!(isoprofile::radial::parse_functions(&layers).unwrap().len() >= 4);
}

#[test]
fn verify_reports_are_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    for d in [&a, &b] {
        assert_eq!(code(&run(d.path(), &["verify", "--grid", "500", "--count", "3", "--format", "kv"])), 0);
    }
    let x = fs::read(a.path().join("report.kv")).unwrap();
    assert_eq!(x, fs::read(b.path().join("report.kv")).unwrap());
    let text = String::from_utf8(x).unwrap();
    assert!(text.contains("assumed=ros-product,bayle-ratio,bayle-concavity,yamabe-limit\n"));
    assert!(text.contains("result=pass\n"));
}

//! Binary-level tests: exit codes, output contracts, determinism.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cvmem"))
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("cvmem-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn write_config(name: &str, text: &str) -> PathBuf {
    let path = tmp(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

const WORKED: &str = "
[input_state]
s = 4

[cell1]
z_sq = 6.4
delta_at = 0.6

[cell2]
z_sq = 6.4
delta_at = 1.0
";

#[test]
fn compare_reports_worked_example() {
    let cfg = write_config("worked.conf", WORKED);
    let json_path = tmp("worked.json");
    let out = bin()
        .args(["compare", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&json_path)
        .output()
        .unwrap();
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("E_N = 1.061"), "{text}");
    assert!(text.contains("E_N = 0.935"), "{text}");
    assert!(text.contains("prefers storing entanglement"), "{text}");

    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json_path).unwrap()).unwrap();
    let en = doc["store_entanglement"]["log_negativity_ebits"].as_f64().unwrap();
    assert!((en - 1.0611).abs() < 1e-3);
}

#[test]
fn compare_rejects_bad_config_with_exit_2() {
    let cfg = write_config("bad.conf", "[input_state]\ns = oops\n[channel]\n");
    let out = bin().args(["compare", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error"));
}

#[test]
fn compare_warns_on_unphysical_channel_but_succeeds() {
    let cfg = write_config(
        "unphys.conf",
        "
[input_state]
s = 4

[channel]
xi1 = 0.5
",
    );
    let out = bin().args(["compare", "--config"]).arg(&cfg).output().unwrap();
    assert!(out.status.success());
    assert!(stdout(&out).contains("warning"));
}

const SWEEP: &str = "
convention = attenuation

[input_state]
s = 8
n1 = 1.4
n2 = 1.2

[cell1]
g = 0.95
z_sq = 6.4
delta_at = 0.6
delta_q = 0.1
delta_p = 0.3

[cell2]
g = 0.95
z_sq = 6.4
delta_at = 0.6
delta_q = 0.1
delta_p = 0.3

[sweep]
axis1 = delta_at1 0.0 1.2 9
axis2 = delta_at2 0.0 1.2 9
";

#[test]
fn sweep_is_byte_deterministic() {
    let cfg = write_config("sweep.conf", SWEEP);
    let (p1, p2) = (tmp("sweep1.csv"), tmp("sweep2.csv"));
    for p in [&p1, &p2] {
        let out = bin()
            .args(["sweep", "--config"])
            .arg(&cfg)
            .arg("--out")
            .arg(p)
            .output()
            .unwrap();
        assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    }
    assert_eq!(std::fs::read(&p1).unwrap(), std::fs::read(&p2).unwrap());
}

#[test]
fn sweep_sign_pattern_matches_pseudospin_asymmetry() {
    // store-squeezing wins exactly where cell 1 carries the larger
    // pseudo-spin variance
    let cfg = write_config("sweep-pattern.conf", SWEEP);
    let path = tmp("pattern.csv");
    let out = bin()
        .args(["sweep", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(
        header,
        vec![
            "delta_at1",
            "delta_at2",
            "en_a",
            "en_b",
            "delta_en",
            "f_a",
            "f_b",
            "delta_f_bar",
            "nu_a",
            "nu_b",
            "channel_physical"
        ]
    );
    for line in lines {
        let f: Vec<f64> = line
            .split(',')
            .take(10)
            .map(|v| v.parse().unwrap())
            .collect();
        let (d1, d2, delta_en) = (f[0], f[1], f[4]);
        if d1 > d2 {
            assert!(delta_en > -1e-12, "line: {line}");
        } else if d2 > d1 {
            assert!(delta_en < 1e-12, "line: {line}");
        }
        assert!(line.ends_with("true"), "mild equal losses stay physical");
    }
}

#[test]
fn sweep_grid_and_json_overrides() {
    let cfg = write_config("sweep-json.conf", SWEEP);
    let path = tmp("sweep.json");
    let out = bin()
        .args(["sweep", "--config"])
        .arg(&cfg)
        .args(["--grid", "4x3", "--format", "json", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let arr = doc.as_array().unwrap();
    assert_eq!(arr.len(), 12);
    assert!(arr[0]["delta_at1"].is_f64());
    assert!(arr[0]["channel_physical"].is_boolean());
}

#[test]
fn zero_noise_sweep_has_identically_zero_deltas() {
    let cfg = write_config(
        "zero.conf",
        "
[input_state]
s = 4

[cell1]
z_sq = 6.4
delta_at = 0.0

[cell2]
z_sq = 6.4
delta_at = 0.0

[sweep]
axis1 = s 2.0 8.0 7
",
    );
    let path = tmp("zero.csv");
    let out = bin()
        .args(["sweep", "--config"])
        .arg(&cfg)
        .arg("--out")
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    for line in text.lines().skip(1) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f[3].parse::<f64>().unwrap(), 0.0, "delta_en: {line}"); // delta_en column index 3 for 1 axis
        assert_eq!(f[6].parse::<f64>().unwrap(), 0.0, "delta_f_bar: {line}");
    }
}

#[test]
fn sweep_without_axes_is_an_error() {
    let cfg = write_config("noaxes.conf", WORKED);
    let out = bin()
        .args(["sweep", "--config"])
        .arg(&cfg)
        .args(["--out", "/tmp/ignored.csv"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compare_rejects_sweep_configs() {
    let cfg = write_config("axes-compare.conf", SWEEP);
    let out = bin().args(["compare", "--config"]).arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("sweep"));
}

#[test]
fn verify_core_suite_passes() {
    let out = bin()
        .args(["verify", "--suite", "core", "--seed", "7"])
        .output()
        .unwrap();
    assert!(out.status.success(), "stdout: {}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("[PASS]"));
    assert!(!text.contains("[FAIL]"));
}

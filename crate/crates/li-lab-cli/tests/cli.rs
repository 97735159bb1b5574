//! End-to-end checks of the command-line surface: exit codes, CSV
//! round-tripping, config echo, and plot emission.

use std::io::Write as _;
use std::process::{Command, Output};

fn li_lab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_li-lab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn zeros_validate_reports_bundled_table() {
    let out = li_lab(&["zeros", "validate"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("OK, 100 zeros"), "{text}");
    assert!(text.contains("T≈236.5"), "{text}");
}

#[test]
fn zeros_validate_rejects_corrupt_file_with_exit_2() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "14.134725141\n21.02\nbroken-line\n").unwrap();
    let out = li_lab(&["zeros", "validate", "--zeros", file.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr).into_owned();
    assert!(err.contains("line 3"), "{err}");
}

#[test]
fn zeros_validate_missing_file_is_exit_2() {
    let out = li_lab(&["zeros", "validate", "--zeros", "/nonexistent/table.txt"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn lambda_reports_first_value_and_all_methods_agree() {
    let out = li_lab(&[
        "lambda", "--from", "1", "--to", "6", "--method", "all", "--bits", "192",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    let rows = csv_rows(&text);
    // header + 6 data rows
    assert_eq!(rows.len(), 7);
    assert_eq!(rows[0][0], "n");
    let first_value: f64 = rows[1][1].parse().unwrap();
    assert!((first_value - 0.023_095_7).abs() < 1e-4, "{first_value}");
    for row in &rows[1..] {
        assert_eq!(row.last().unwrap(), "true");
    }
}

#[test]
fn lambda_empty_range_is_usage_error_64() {
    let out = li_lab(&["lambda", "--from", "5", "--to", "2"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn unknown_flag_is_usage_error_64() {
    let out = li_lab(&["lambda", "--from", "1", "--to", "2", "--no-such-flag"]);
    assert_eq!(out.status.code(), Some(64));
}

#[test]
fn csv_round_trips_all_printed_digits() {
    let out = li_lab(&["lambda", "--from", "1", "--to", "4", "--bits", "128"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&stdout(&out));
    for row in &rows[1..] {
        for field in &row[1..3] {
            // parse at generous precision and re-render with the same digit
            // count: the text must survive unchanged
            let parsed = rug::Float::with_val(256, rug::Float::parse(field).unwrap());
            // rug's e-format precision counts significant digits
            let sig = field.split('e').next().unwrap().split('.').nth(1).map(|s| s.len() + 1).unwrap_or(1);
            let rendered = format!("{:.*e}", sig, parsed);
            assert_eq!(&rendered, field, "digit round-trip failed");
        }
    }
}

#[test]
fn compare_emits_summary_with_delta_verdict() {
    let out = li_lab(&[
        "compare", "--from", "20", "--to", "60", "--step", "5", "--bits", "128",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("mean signed deviation"), "{text}");
    let rows = csv_rows(&text);
    assert_eq!(rows[0], vec!["n", "lambda", "predictor", "difference", "relative_difference"]);
    assert_eq!(rows.len(), 1 + 9);
}

#[test]
fn compare_small_range_omits_summary() {
    let out = li_lab(&["compare", "--from", "1", "--to", "5", "--bits", "128"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(!text.contains("mean signed deviation"), "{text}");
}

#[test]
fn sandbox_rejects_real_ordinate_with_exit_2() {
    let out = li_lab(&["sandbox", "--tau-star", "50,0", "--to", "64"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sandbox_runs_reference_configuration() {
    let out = li_lab(&[
        "sandbox", "--tau-star", "50,2", "--to", "400", "--bits", "96",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = stdout(&out);
    assert!(text.contains("fitted footprint growth rate"), "{text}");
    assert!(text.contains("theoretical log-modulus rate"), "{text}");
    let rows = csv_rows(&text);
    assert_eq!(rows[0][0], "n");
    assert_eq!(rows.len(), 1 + 400);
}

#[test]
fn sandbox_pure_imaginary_regime_grows_like_ratio_three() {
    // tau* = 0.05,1: nearly the pure-imaginary case; lambda is dominated by
    // fast exponential growth of the injected pair
    let out = li_lab(&[
        "sandbox", "--tau-star", "0.05,1.0", "--base", "empty", "--to", "16", "--bits", "128",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&stdout(&out));
    let lam_10: f64 = rows[10][1].parse().unwrap();
    let lam_13: f64 = rows[13][1].parse().unwrap();
    let ratio = (lam_13.abs() / lam_10.abs()).powf(1.0 / 3.0);
    assert!((ratio - 3.0).abs() < 0.75, "per-step growth {ratio}");
}

#[test]
fn cumulants_first_row_is_gamma() {
    let out = li_lab(&["cumulants", "--to", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rows = csv_rows(&stdout(&out));
    assert_eq!(
        rows[0],
        vec!["n", "g_series", "g_series_abs_error", "s_n", "s_n_over_n"]
    );
    let g1: f64 = rows[1][1].parse().unwrap();
    let s1: f64 = rows[1][3].parse().unwrap();
    assert!((g1 - 0.577_215_664_9).abs() < 1e-9);
    assert!((s1 - 0.577_215_664_9).abs() < 1e-9);
}

#[test]
fn sn_emits_trend_column() {
    let out = li_lab(&["sn", "--to", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let rows = csv_rows(&stdout(&out));
    assert_eq!(rows[0], vec!["n", "s_n", "abs_error", "s_n_over_n"]);
    assert_eq!(rows.len(), 4);
    let s2: f64 = rows[2][1].parse().unwrap();
    // S_2 = 2 gamma - gamma^2 - 2 gamma_1
    let expected = 2.0 * 0.5772156649015329 - 0.5772156649015329f64.powi(2)
        - 2.0 * (-0.07281584548367672);
    assert!((s2 - expected).abs() < 1e-9, "{s2} vs {expected}");
}

#[test]
fn json_format_embeds_config_and_rows() {
    let out = li_lab(&[
        "lambda", "--from", "1", "--to", "2", "--format", "json", "--bits", "128",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["config"]["command"], "lambda");
    assert_eq!(doc["config"]["derived_bits"], 128);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 2);
    assert_eq!(doc["rows"][0]["n"], "1");
}

#[test]
fn config_echo_appears_on_stderr() {
    let out = li_lab(&["lambda", "--from", "1", "--to", "1", "--bits", "128"]);
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("# config"), "{err}");
    assert!(err.contains("\"derived_bits\":128"), "{err}");
}

#[test]
fn plot_emission_writes_data_and_script() {
    let dir = tempfile::tempdir().unwrap();
    let prefix = dir.path().join("trend");
    let prefix_str = prefix.to_str().unwrap();
    let out = li_lab(&[
        "compare", "--from", "10", "--to", "20", "--bits", "128", "--plot", prefix_str,
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let dat = std::fs::read_to_string(format!("{prefix_str}.dat")).unwrap();
    let gp = std::fs::read_to_string(format!("{prefix_str}.gp")).unwrap();
    assert!(dat.lines().count() >= 12);
    assert!(gp.contains("plot"), "{gp}");
    assert!(gp.contains(&format!("{prefix_str}.dat")), "{gp}");
}

#[test]
fn env_variable_supplies_default_zeros_path() {
    let out = Command::new(env!("CARGO_BIN_EXE_li-lab"))
        .args(["zeros", "validate"])
        .env("LI_LAB_ZEROS", "/nonexistent/from-env.txt")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("from-env"), "{err}");
}

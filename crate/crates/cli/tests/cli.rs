use std::process::{Command, Output};

fn domino(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_domino"))
        .args(args)
        .output()
        .unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = domino(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn table(text: &str) -> Vec<Vec<f64>> {
    text.lines()
        .skip(1)
        .filter(|l| !l.starts_with('#'))
        .map(|l| l.split(',').map(|f| f.parse().unwrap()).collect())
        .collect()
}

fn summary(text: &str, key: &str) -> String {
    let prefix = format!("# {key},");
    text.lines()
        .find_map(|l| l.strip_prefix(prefix.as_str()))
        .unwrap_or_else(|| panic!("no {key} in summary"))
        .to_string()
}

const GEOMETRY: [&str; 6] = ["--length", "1", "--spacing", "0.5", "--gravity", "9.81"];

#[test]
fn speed_reports_consistent_row() {
    let mut args = vec!["speed"];
    args.extend(GEOMETRY);
    let text = stdout(&args);
    assert!(text.starts_with("omega_limit,modulus,fall_time,speed,G\n"));
    let row = &table(&text)[0];
    assert!((row[0] - 5.5587089030685136).abs() < 1e-12);
    assert!((row[3] - 9.81f64.sqrt() * row[4]).abs() < 1e-12 * row[3]);
    assert!((row[3] - 0.5 / row[2]).abs() < 1e-12 * row[3]);
}

#[test]
fn mass_does_not_change_output() {
    let mut light = vec!["speed"];
    light.extend(GEOMETRY);
    let mut heavy = light.clone();
    heavy.extend(["--mass", "7"]);
    assert_eq!(domino(&light).stdout, domino(&heavy).stdout);

    let mut light = vec!["simulate", "--omega1", "0.4", "--max-rods", "40"];
    light.extend(GEOMETRY);
    let mut heavy = light.clone();
    heavy.extend(["--mass", "0.01"]);
    assert_eq!(domino(&light).stdout, domino(&heavy).stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(
        domino(&[
            "speed",
            "--length",
            "1",
            "--spacing",
            "1.5",
            "--gravity",
            "9.81"
        ])
        .status
        .code(),
        Some(2)
    );
    assert_eq!(domino(&["speed", "--length", "1"]).status.code(), Some(2));
    assert_eq!(domino(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(domino(&["curve", "--samples", "1"]).status.code(), Some(2));
    assert_eq!(
        domino(&["curve", "--min", "0.6", "--max", "0.4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(domino(&["curve", "--length", "2"]).status.code(), Some(2));
    assert_eq!(
        domino(&["asymptotics", "--regime", "wide", "--points", "0.3"])
            .status
            .code(),
        Some(2)
    );
    let mut args = vec!["simulate", "--omega1", "0"];
    args.extend(GEOMETRY);
    let out = domino(&args);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());
}

#[test]
fn default_curve_is_decreasing() {
    let rows = table(&stdout(&["curve"]));
    assert_eq!(rows.len(), 19);
    assert_eq!(rows[0][0], 0.05);
    assert_eq!(rows[18][0], 0.95);
    for pair in rows.windows(2) {
        assert!(pair[1][4] < pair[0][4]);
        assert!(pair[1][1] > pair[0][1]);
    }
}

#[test]
fn close_spacing_curve_follows_inverse_law() {
    let rows = table(&stdout(&[
        "curve",
        "--min",
        "0.005",
        "--max",
        "0.02",
        "--samples",
        "4",
    ]));
    assert_eq!(rows.len(), 4);
    for r in rows {
        assert!((r[0] * r[4] - 1.0).abs() < 0.01, "{r:?}");
    }
}

#[test]
fn curve_speed_column() {
    let text = stdout(&[
        "curve",
        "--length",
        "4",
        "--gravity",
        "9.81",
        "--samples",
        "3",
    ]);
    assert!(text.starts_with("d_over_l,beta1_rad,f_plus,k_modulus,G,v\n"));
    for r in table(&text) {
        assert!((r[5] - (4.0f64 * 9.81).sqrt() * r[4]).abs() < 1e-12 * r[5]);
    }
}

#[test]
fn simulation_from_fixed_point_stays_put() {
    let omega = stdout(&[
        "speed",
        "--length",
        "1",
        "--spacing",
        "0.5",
        "--gravity",
        "9.81",
    ])
    .lines()
    .nth(1)
    .unwrap()
    .split(',')
    .next()
    .unwrap()
    .to_string();
    let mut args = vec![
        "simulate",
        "--full",
        "--max-rods",
        "25",
        "--omega1",
        omega.as_str(),
    ];
    args.extend(GEOMETRY);
    let text = stdout(&args);
    assert!(text.starts_with("k,omega_i,omega_f,omega_b,T_k,t_cum,v_k\n"));
    let v: f64 = summary(&text, "closed_form_speed").parse().unwrap();
    let rows = table(&text);
    assert_eq!(rows.len(), 25);
    for r in rows {
        assert!((r[6] - v).abs() <= 1e-9 * v);
    }
    assert_eq!(summary(&text, "converged_at"), "1");
}

#[test]
fn slow_push_speeds_up() {
    let mut args = vec!["simulate", "--omega1", "0.1", "--max-rods", "50"];
    args.extend(GEOMETRY);
    let text = stdout(&args);
    let rows = table(&text);
    assert_eq!(rows.len(), 50);
    for (i, pair) in rows.windows(2).enumerate() {
        assert_eq!(pair[0][0], (i + 1) as f64);
        assert!(pair[1][6] > pair[0][6]);
        assert!(pair[1][5] > pair[0][5]);
        assert!(pair[0][3] < 0.0);
    }
    let v: f64 = summary(&text, "closed_form_speed").parse().unwrap();
    assert!(rows[49][6] < v);
}

#[test]
fn json_documents() {
    let doc: serde_json::Value =
        serde_json::from_str(&stdout(&["curve", "--format", "json", "--samples", "5"])).unwrap();
    assert_eq!(doc["meta"]["command"], "curve");
    assert_eq!(doc["meta"]["parameters"]["samples"], 5);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 5);
    assert!(doc["rows"][0]["G"].as_f64().unwrap() > doc["rows"][4]["G"].as_f64().unwrap());

    let mut args = vec![
        "simulate",
        "--format",
        "json",
        "--omega1",
        "1",
        "--max-rods",
        "10",
    ];
    args.extend(GEOMETRY);
    let doc: serde_json::Value = serde_json::from_str(&stdout(&args)).unwrap();
    assert_eq!(doc["rows"].as_array().unwrap().len(), 10);
    assert!(doc["summary"]["converged_at"].is_null());
    assert!(doc["summary"]["closed_form_speed"].as_f64().unwrap() > 0.0);

    let doc: serde_json::Value = serde_json::from_str(&stdout(&[
        "asymptotics",
        "--regime",
        "close",
        "--format",
        "json",
    ]))
    .unwrap();
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(
        rows[2]["relative_error"].as_f64().unwrap() < rows[0]["relative_error"].as_f64().unwrap()
    );
}

#[test]
fn asymptotics_csv() {
    let text = stdout(&["asymptotics", "--regime", "close", "--points", "0.1,0.01"]);
    assert!(text.starts_with("x,G_exact,G_asymptotic,relative_error\n"));
    let rows = table(&text);
    assert_eq!(rows.len(), 2);
    assert_eq!(rows[1][2], 100.0);
    assert!(rows[1][3] < 1e-4);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("curve.csv");
    let out = domino(&["curve", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read(&path).unwrap(), domino(&["curve"]).stdout);
}

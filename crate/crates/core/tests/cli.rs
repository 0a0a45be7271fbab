use std::path::Path;
use std::process::{Command, Output};

use fluctus::cli::{OutputRecord, QuantityValue};

fn fluctus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_fluctus"))
        .args(args)
        .env_remove("FLUCTUS_MATERIAL_PATH")
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Vec<OutputRecord> {
    let mut full = vec!["--format", "json"];
    full.extend_from_slice(args);
    let out = fluctus(&full);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

#[test]
fn equal_time_water_at_one_nanometre() {
    let recs = json(&[
        "correlator",
        "--material",
        "water",
        "--r",
        "1e-9",
        "--dt",
        "0",
    ]);
    assert_eq!(recs.len(), 1);
    assert!((recs[0].value + 3.60).abs() < 5e-3);
    assert_eq!(recs[0].unit, "kg²/m⁶");
    assert_eq!(recs[0].provenance, "closed-form");
}

#[test]
fn timelike_separation_is_positive() {
    let recs = json(&[
        "correlator",
        "--material",
        "water",
        "--r",
        "1e-9",
        "--dt",
        "1e-12",
    ]);
    assert!(recs[0].value > 0.0);
}

#[test]
fn on_cone_exits_2() {
    let out = fluctus(&[
        "correlator",
        "--material",
        "water",
        "--r",
        "1",
        "--dt",
        "6.7568e-4",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("sound cone"));
    assert!(out.stdout.is_empty());
}

#[test]
fn oracle_matches_closed_form() {
    let recs = json(&["correlator", "--r", "2e-9", "--dt", "5e-13", "--oracle"]);
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[1].provenance, "spectral-oracle");
    assert!(((recs[0].value - recs[1].value) / recs[0].value).abs() < 1e-6);
}

#[test]
fn sweep_output_keeps_input_order() {
    let recs = json(&["correlator", "--r", "1e-9..1e-8:7L"]);
    let rs: Vec<f64> = recs
        .iter()
        .map(|r| match r.inputs[1].value {
            QuantityValue::Number(x) => x,
            _ => panic!("r is numeric"),
        })
        .collect();
    assert_eq!(rs.len(), 7);
    assert!(rs.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(rs[0], 1e-9);
    assert_eq!(rs[6], 1e-8);
}

#[test]
fn boundary_shift_and_em_plate() {
    let recs = json(&["correlator", "--boundary", "1e-9"]);
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[0].formula, "boundary-shift-planar");
    assert!((recs[0].value + 0.2249364724241722).abs() < 1e-12);
    assert_eq!(recs[1].formula, "em-plate-shift");
    assert_eq!(recs[1].value, -recs[2].value);
}

#[test]
fn missing_separation_is_a_usage_error() {
    assert_eq!(fluctus(&["correlator"]).status.code(), Some(2));
}

#[test]
fn xsection_zero_point_backscatter() {
    let recs = json(&[
        "xsection",
        "--material",
        "water",
        "--lambda",
        "350e-9",
        "--theta",
        "180",
        "--pol",
        "perpendicular",
        "--kind",
        "zp",
    ]);
    assert!(((recs[0].value - 3.241685077436951e-6) / 3.241685077436951e-6).abs() < 1e-12);
    assert_eq!(recs[0].unit, "m²/sr");
}

#[test]
fn volume_multiplies_the_cross_section() {
    let base = &[
        "xsection", "--lambda", "532e-9", "--theta", "90", "--kind", "zp-exact",
    ];
    let one = json(base)[0].value;
    let mut args = base.to_vec();
    args.extend(["--volume", "1e-6"]);
    let small = json(&args)[0].value;
    assert!((small / one - 1e-6).abs() < 1e-18);
}

#[test]
fn thermal_total_needs_heat_capacity() {
    let out = fluctus(&[
        "xsection",
        "--material",
        "water",
        "--lambda",
        "350e-9",
        "--theta",
        "180",
        "--kind",
        "thermal-total",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("cp_j_kg_k"));
}

#[test]
fn crossed_polarization_is_zero_for_every_kind() {
    let mat = concat!(env!("CARGO_MANIFEST_DIR"), "/data/ethanol.mat");
    for kind in [
        "zp",
        "zp-exact",
        "zp-chain",
        "thermal-brillouin",
        "thermal-total",
    ] {
        let recs = json(&[
            "xsection",
            "--material",
            mat,
            "--lambda",
            "350e-9",
            "--theta",
            "10..180:5",
            "--pol",
            "crossed",
            "--kind",
            kind,
        ]);
        assert_eq!(recs.len(), 5);
        assert!(recs.iter().all(|r| r.value == 0.0), "{kind}");
    }
}

fn ratio(lambda: &str, t: &str) -> f64 {
    json(&[
        "ratio",
        "--material",
        "water",
        "--lambda",
        lambda,
        "--theta",
        "180",
        "--temperature",
        t,
    ])[0]
        .value
}

#[test]
fn ratio_and_its_scalings() {
    let r = ratio("350e-9", "295");
    assert!(((r - 4.3e-3) / 4.3e-3).abs() < 0.02);
    assert!(((ratio("700e-9", "295") / r) - 0.5).abs() < 1e-12);
    assert!(((ratio("350e-9", "590") / r) - 0.5).abs() < 1e-12);
}

#[test]
fn ratio_prints_a_percentage() {
    let recs = json(&["ratio", "--lambda", "350e-9", "--temperature", "295"]);
    assert_eq!(recs[1].unit, "%");
    assert!((recs[1].value - 100.0 * recs[0].value).abs() < 1e-15);
}

#[test]
fn verify_suites_exit_zero() {
    for suite in ["chain", "spectral", "lattice"] {
        let out = fluctus(&["verify", suite]);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{suite}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        let text = String::from_utf8_lossy(&out.stdout);
        assert!(text.contains("PASS") && !text.contains("FAIL"));
    }
}

#[test]
fn unknown_suite_is_usage_error() {
    assert_eq!(fluctus(&["verify", "everything"]).status.code(), Some(2));
}

#[test]
fn help_and_version_exit_zero() {
    for args in [&["--help"][..], &["--version"], &["xsection", "--help"]] {
        assert_eq!(fluctus(args).status.code(), Some(0));
    }
}

#[test]
fn bad_input_never_panics() {
    let cases: &[&[&str]] = &[
        &[],
        &["correlator", "--r", "abc"],
        &["correlator", "--r", "1..2"],
        &["correlator", "--r", "-1e-9"],
        &["correlator", "--r", "0", "--dt", "0"],
        &["correlator", "--boundary", "0"],
        &["correlator", "--material", "unobtainium", "--r", "1e-9"],
        &["xsection", "--theta", "90"],
        &[
            "xsection", "--lambda", "350e-9", "--omega", "1e15", "--theta", "90",
        ],
        &["xsection", "--lambda", "350e-9", "--theta", "0"],
        &["xsection", "--lambda", "350e-9", "--theta", "200"],
        &["xsection", "--lambda", "-1", "--theta", "90"],
        &[
            "xsection", "--lambda", "350e-9", "--theta", "90", "--pol", "circular",
        ],
        &[
            "xsection", "--lambda", "350e-9", "--theta", "90", "--volume", "0",
        ],
        &["ratio", "--lambda", "350e-9", "--temperature", "-3"],
        &["--format", "xml", "materials", "list"],
    ];
    for args in cases {
        let out = fluctus(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
        assert!(!stderr(&out).contains("panicked"), "{args:?}");
    }
}

#[test]
fn csv_output_round_trips() {
    let out = fluctus(&[
        "--format",
        "csv",
        "xsection",
        "--lambda",
        "350e-9",
        "--theta",
        "30..180:6",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(out.stdout.as_slice());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(
        &header[header.len() - 4..],
        ["value", "unit", "formula", "provenance"]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 6);

    let recs = json(&["xsection", "--lambda", "350e-9", "--theta", "30..180:6"]);
    let vi = header.iter().position(|h| h == "value").unwrap();
    for (row, rec) in rows.iter().zip(&recs) {
        assert_eq!(row[vi].parse::<f64>().unwrap(), rec.value);
    }
}

#[test]
fn json_has_fixed_keys() {
    let out = fluctus(&["--format", "json", "correlator", "--r", "1e-9"]);
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let obj = v[0].as_object().unwrap();
    let mut keys: Vec<&str> = obj.keys().map(String::as_str).collect();
    keys.sort();
    assert_eq!(keys, ["formula", "inputs", "provenance", "unit", "value"]);
}

#[test]
fn materials_list_and_show() {
    let out = fluctus(&["materials", "list"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("water"));

    let recs = json(&["materials", "show", "water"]);
    assert!(recs.iter().all(|r| !r.unit.is_empty()));
    assert!(recs.iter().any(|r| r.value == 1480.0 && r.unit == "m/s"));
}

#[test]
fn invalid_material_file_lists_violations() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.mat");
    std::fs::write(
        &bad,
        "name = bad\nrho0_kg_m3 = 1000\ncs_m_s = 1500\nrefractive_index = 0.5\ndepsilon_drho = 0.8\n",
    )
    .unwrap();
    let out = fluctus(&["materials", "show", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("eta ≥ 1"));
}

#[test]
fn material_search_path() {
    let dir = tempfile::tempdir().unwrap();
    let text =
        std::fs::read_to_string(Path::new(env!("CARGO_MANIFEST_DIR")).join("data/ethanol.mat"))
            .unwrap();
    std::fs::write(dir.path().join("ethanol.mat"), text).unwrap();

    let run = |args: &[&str]| {
        Command::new(env!("CARGO_BIN_EXE_fluctus"))
            .args(args)
            .env("FLUCTUS_MATERIAL_PATH", dir.path())
            .output()
            .unwrap()
    };
    let list = run(&["materials", "list"]);
    assert!(String::from_utf8_lossy(&list.stdout).contains("ethanol"));
    let out = run(&[
        "--format",
        "json",
        "ratio",
        "--material",
        "ethanol",
        "--lambda",
        "350e-9",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let recs: Vec<OutputRecord> = serde_json::from_slice(&out.stdout).unwrap();
    assert!(recs[0].value > 0.0);
}

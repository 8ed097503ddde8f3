use std::process::{Command, Output};

use motivic_core::formulas::punctual_series_smooth;
use motivic_core::{MClass, MSeries};
use serde_json::Value;

fn motivic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_motivic"))
        .args(args)
        .env_remove("MOTIVIC_WORK_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let o = motivic(args);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).unwrap()
}

#[test]
fn series_zeta_of_l() {
    let v = json(&[
        "series", "zeta", "--class", "L", "--order", "4", "--format", "json",
    ]);
    let s: MSeries = serde_json::from_value(v["series"].clone()).unwrap();
    for n in 0..=4 {
        assert_eq!(s.coeff(n), &MClass::l_pow(n as i64));
    }
}

#[test]
fn series_feit_fine_table_and_csv() {
    let o = motivic(&["series", "feit-fine", "--order", "3", "--q", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("L^2/(L - 1)"));
    assert!(text.contains("44/3"));
    let o = motivic(&[
        "series",
        "feit-fine",
        "--order",
        "2",
        "--q",
        "2",
        "--format",
        "csv",
    ]);
    let mut reader = csv::Reader::from_reader(o.stdout.as_slice());
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 3);
    assert_eq!(&rows[2][2], "44/3");
}

#[test]
fn series_quot_surface_json_values() {
    let v = json(&[
        "series",
        "quot-surface",
        "--r",
        "2",
        "--surface",
        "A2",
        "--order",
        "2",
        "--q",
        "2",
        "--format",
        "json",
    ]);
    assert_eq!(v["name"], "quot-surface");
    // L^2 (1 + L) at L = 2
    assert_eq!(v["values"]["2"][1], "12");
}

#[test]
fn series_compose_reads_singularities() {
    let p1 = punctual_series_smooth(1, 3).unwrap();
    let file = std::env::temp_dir().join(format!("motivic-sing-{}.json", std::process::id()));
    let body = serde_json::json!([{ "series": p1, "multiplicity": 1 }]);
    std::fs::write(&file, body.to_string()).unwrap();
    let v = json(&[
        "series",
        "compose",
        "--class",
        "L - 1",
        "--singularities",
        file.to_str().unwrap(),
        "--order",
        "3",
        "--format",
        "json",
    ]);
    std::fs::remove_file(&file).ok();
    let s: MSeries = serde_json::from_value(v["series"].clone()).unwrap();
    assert_eq!(s, motivic_core::formulas::coh_a1_series(3));
}

#[test]
fn verify_suites_pass() {
    for args in [
        vec!["verify", "euler", "--order", "6"],
        vec!["verify", "strata"],
        vec!["verify", "punctual-roundtrip", "--order", "4"],
        vec![
            "verify",
            "power-axioms",
            "--order",
            "5",
            "--seed",
            "42",
            "--instances",
            "10",
        ],
        vec!["verify", "length-two-stratum"],
    ] {
        let o = motivic(&args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
    let v = json(&["verify", "euler", "--order", "3", "--format", "json"]);
    assert_eq!(v["passed"], true);
    assert_eq!(
        v["reports"][0]["per_coefficient"].as_array().unwrap().len(),
        4
    );
    let v = json(&["verify", "length-two-stratum", "--format", "json"]);
    assert_eq!(v["inequality_holds"], true);
}

#[test]
fn count_json_schema() {
    let v = json(&[
        "count", "--space", "coh-a2", "--n", "2", "--q", "2", "--format", "json",
    ]);
    assert_eq!(v["raw"], "88");
    assert_eq!(v["group_order"], "6");
    assert_eq!(v["value"], "44/3");
    let v = json(&[
        "count", "--space", "quot-a1", "--r", "2", "--n", "1", "--q", "2,3", "--format", "json",
    ]);
    assert_eq!(v[0]["value"], "6/1");
    assert_eq!(v[0]["r"], 2);
}

#[test]
fn check_commands_pass() {
    for args in [
        vec!["check", "feit-fine", "--n-max", "2", "--q", "2,3"],
        vec![
            "check",
            "quot-curve",
            "--r",
            "1",
            "--n-max",
            "3",
            "--q",
            "2",
        ],
        vec![
            "check",
            "punctual-smooth",
            "--d",
            "2",
            "--n-max",
            "2",
            "--q",
            "2",
        ],
    ] {
        let o = motivic(&args);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn exit_codes() {
    assert_eq!(motivic(&["series", "nonsense"]).status.code(), Some(2));
    assert_eq!(
        motivic(&["series", "zeta", "--order", "2"]).status.code(),
        Some(2)
    );
    assert_eq!(
        motivic(&["series", "quot-surface", "--surface", "1/(L-1)"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        motivic(&["count", "--space", "coh-a2", "--n", "2", "--q", "4"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        motivic(&["count", "--space", "coh-a2", "--n", "3", "--q", "5"])
            .status
            .code(),
        Some(3)
    );
    let o = Command::new(env!("CARGO_BIN_EXE_motivic"))
        .args(["count", "--space", "coh-a2", "--n", "2", "--q", "2"])
        .env("MOTIVIC_WORK_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("256"));
}

#[test]
fn output_file() {
    let file = std::env::temp_dir().join(format!("motivic-out-{}.json", std::process::id()));
    let o = motivic(&[
        "series",
        "coh-a1",
        "--order",
        "2",
        "--format",
        "json",
        "--output",
        file.to_str().unwrap(),
    ]);
    assert!(o.status.success() && o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    std::fs::remove_file(&file).ok();
    assert_eq!(v["series"]["order"], 2);
}

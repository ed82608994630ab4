use std::path::PathBuf;
use std::process::{Command, Output};

use eiscomp::eis::{family_character, theta_character};
use serde_json::Value;

fn eiscomp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eiscomp"))
        .args(args)
        .env_remove("EISCOMP_DIGITS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("eiscomp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, contents).unwrap();
    p
}

#[test]
fn boundary_table_rows() {
    let o = eiscomp(&["boundary-table", "--k1", "2", "--k2", "0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 6);
    let top = rows.iter().find(|r| r["degree"] == 3).unwrap();
    assert_eq!(top["hodge_type"], serde_json::json!([4, 4]));
    assert_eq!(top["weight"], 8);
}

#[test]
fn non_dominant_weight_rejected() {
    let o = eiscomp(&["boundary-table", "--k1", "0", "--k2", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn weyl_table_has_six_rows() {
    let o = eiscomp(&["weyl", "table", "--k1", "3", "--k2", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v.as_array().unwrap().len(), 6);
    assert_eq!(v[0]["star"], serde_json::json!({"k1": 3, "k2": 1}));
}

#[test]
fn missing_disc_lists_admissible_fields() {
    let o = eiscomp(&["lfun", "eval", "--s", "2,0"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("-3, -4, -7, -8, -11, -19, -43, -67, -163"), "{err}");
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        &["lfun", "eval", "--disc", "-5", "--s", "2,0"][..],
        &["lfun", "eval", "--disc", "-4", "--s", "2,0", "--digits", "8"],
        &["lfun", "eval", "--disc", "-4", "--s", "abc"],
        &["lfun", "eval", "--disc", "-4", "--k", "1", "--s", "2,0", "--coeff-bound", "3"],
        &["classify", "--disc", "-3", "--k", "3"],
        &["classify", "--disc", "-4"],
        &["no-such-command"],
    ] {
        let o = eiscomp(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn selftest_passes() {
    let o = eiscomp(&["selftest"]);
    assert_eq!(o.status.code(), Some(0));
    let o = eiscomp(&["selftest", "--seed", "7", "--format", "md"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("| twisted action | 1200 | pass |"));
}

#[test]
fn dedekind_zeta_pole() {
    let o = eiscomp(&["lfun", "eval", "--disc", "-4", "--s", "1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert!(v["value"].is_null());
    assert_eq!(v["order"], -1);
    // residue of ζ_K at 1 for Q(i) is π/4
    let r: f64 = v["pole"]["residue"].as_str().unwrap().parse().unwrap();
    assert!((r - std::f64::consts::FRAC_PI_4).abs() < 1e-12);
}

#[test]
fn family_sign_and_value() {
    let o = eiscomp(&["lfun", "sign", "--disc", "-4", "--k", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let re: f64 = json(&o)["sign"][0].as_str().unwrap().parse().unwrap();
    assert!((re + 1.0).abs() < 1e-9);

    let o = eiscomp(&["lfun", "eval", "--disc", "-4", "--k", "1", "--s", "-1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["order"], 1);
}

#[test]
fn char_spec_file_matches_family() {
    let phi = family_character(-4, 2).unwrap();
    let spec = serde_json::to_string(&phi.to_spec()).unwrap();
    let p = tmp("phi.json", &spec);
    let p = p.to_str().unwrap();
    let from_file = eiscomp(&["classify", "--disc", "-4", "--char", p, "--k", "2"]);
    let from_k = eiscomp(&["classify", "--disc", "-4", "--k", "2"]);
    assert_eq!(from_file.status.code(), Some(0));
    assert_eq!(from_file.stdout, from_k.stdout);

    let wrong_field = eiscomp(&["classify", "--disc", "-3", "--char", p, "--k", "2"]);
    assert_eq!(wrong_field.status.code(), Some(2));
}

#[test]
fn classify_family_members() {
    for (d, k, class) in [("-4", "1", "np"), ("-4", "2", "np"), ("-3", "1", "np"), ("-4", "0", "p"), ("-3", "2", "p")] {
        let o = eiscomp(&["classify", "--disc", d, "--k", k]);
        assert_eq!(o.status.code(), Some(0), "{d} {k}");
        let v = json(&o);
        assert_eq!(v["class"], class, "{d} {k}");
        assert_eq!(v["hypotheses"]["shape"], true);
    }
}

#[test]
fn theta_character_is_type_checked() {
    let th = theta_character(-4, 1).unwrap();
    let good = tmp("theta.json", &serde_json::to_string(&th.to_spec()).unwrap());
    let o = eiscomp(&["classify", "--disc", "-4", "--k", "1", "--theta-char", good.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!json(&o)["dual_extension"].is_null());

    let bad = tmp("theta-bad.json", &serde_json::to_string(&family_character(-4, 1).unwrap().to_spec()).unwrap());
    let o = eiscomp(&["classify", "--disc", "-4", "--k", "1", "--theta-char", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["classify", "--disc", "-4", "--k", "1"][..],
        &["lfun", "eval", "--disc", "-3", "--k", "1", "--s", "0.5,1.5"],
        &["boundary-table", "--k1", "5", "--k2", "3", "--side", "minus"],
    ] {
        let a = eiscomp(args);
        let b = eiscomp(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn markdown_and_json_agree_numerically() {
    let j = eiscomp(&["classify", "--disc", "-4", "--k", "1"]);
    let m = eiscomp(&["classify", "--disc", "-4", "--k", "1", "--format", "md"]);
    let md = stdout(&m);
    let v = json(&j);
    let num = &v["numeric"];
    for key in ["l_value", "l_derivative", "sign"] {
        for part in num[key].as_array().unwrap() {
            let s = part.as_str().unwrap();
            assert!(md.contains(s), "{key} {s} missing from markdown");
        }
    }

    let j = eiscomp(&["lfun", "eval", "--disc", "-4", "--k", "2", "--s", "3,0.25"]);
    let m = eiscomp(&["lfun", "eval", "--disc", "-4", "--k", "2", "--s", "3,0.25", "--format", "md"]);
    let md = stdout(&m);
    let v = json(&j);
    for s in v["value"].as_array().unwrap().iter().chain(v["sign"].as_array().unwrap()) {
        assert!(md.contains(s.as_str().unwrap()));
    }
    assert!(md.contains(v["residual"].as_str().unwrap()));
}

#[test]
fn output_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("eiscomp-cli-out-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("cert.json");
    let o = eiscomp(&["certificate", "--disc", "-4", "--k", "1", "--output", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&p).unwrap()).unwrap();
    assert_eq!(v["H2pi"], serde_json::json!([3, 0]));
    assert_eq!(v["Iphi"], serde_json::json!([1, 3]));
}

#[test]
fn digits_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_eiscomp"))
        .args(["lfun", "eval", "--disc", "-4", "--s", "2,0"])
        .env("EISCOMP_DIGITS", "9")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

use std::process::{Command, Output};

use locoh_core::*;
use serde_json::Value;

fn locoh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_locoh")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

/// Second CSV column of a hilbert table.
fn csv_values(text: &str) -> Vec<u64> {
    text.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect()
}

fn json(o: &Output) -> Value {
    serde_json::from_str(&stdout(o)).unwrap()
}

#[test]
fn present_section3_is_c2() {
    let o = locoh(&["present", "--s", "2", "--d", "3", "--ideal", "2*X^2*V^2+2*X*Y*U*V+Y^2*U^2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "2*X^2,2*X*Y,Y^2,0\n0,2*X^2,2*X*Y,Y^2\n");
}

#[test]
fn present_singh_is_one_row() {
    let o = locoh(&["present", "--s", "3", "--d", "3", "--ideal", "X*U+Y*V+Z*W"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let row = out.lines().nth(1).unwrap();
    // one row holding X, Y, Z in some column order
    let mut entries: Vec<&str> = row.trim_matches(|c| c == '[' || c == ']').split(", ").collect();
    entries.sort();
    assert_eq!(entries, ["X", "Y", "Z"]);
}

#[test]
fn builtins_match_fixtures_at_d3() {
    for (name, fixture) in
        [("singh", include_str!("fixtures/singh_d3.csv")), ("section3", include_str!("fixtures/section3_d3.csv"))]
    {
        let o = locoh(&["present", "--builtin", name, "--d", "3", "--format", "csv"]);
        assert_eq!(o.status.code(), Some(0), "{name}");
        assert_eq!(stdout(&o), fixture, "{name}");
    }
}

#[test]
fn degree_below_s_is_an_input_error() {
    let o = locoh(&["present", "--s", "3", "--d", "2", "--ideal", "X*U+Y*V+Z*W"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("component is zero above end −s"));
}

#[test]
fn hilbert_singh() {
    let o = locoh(&["hilbert", "--builtin", "singh", "--field", "q", "--dmin", "3", "--dmax", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(csv_values(&stdout(&o)), [1, 6, 20, 50]);
}

#[test]
fn hilbert_section3() {
    let o =
        locoh(&["hilbert", "--builtin", "section3", "--field", "q", "--dmin", "2", "--dmax", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("d,value,stabilized_at,notes\n"));
    assert_eq!(csv_values(&out), [3, 8, 16, 24, 35]);
}

#[test]
fn hilbert_json_has_sorted_keys() {
    let o = locoh(&["hilbert", "--builtin", "singh", "--d", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["rows"][0]["value"], 6);
    let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    // pretty printing keeps the sorted order in the text too
    let text = stdout(&o);
    assert!(text.find("\"characteristic\"").unwrap() < text.find("\"generators\"").unwrap());
}

#[test]
fn fit_refutes_section3() {
    let o = locoh(&["fit", "--builtin", "section3", "--dmin", "2", "--dmax", "20"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("NOT reverse polynomial type"));
}

#[test]
fn fit_accepts_singh() {
    let o = locoh(&["fit", "--builtin", "singh", "--dmin", "3", "--dmax", "11", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["outcome"], "polynomial");
    assert_eq!(v["polynomial"]["text"], "r^4/12 + r^3/3 + 5*r^2/12 + r/6");
}

#[test]
fn fit_with_too_few_rows_is_an_input_error() {
    let o = locoh(&["fit", "--builtin", "singh", "--dmin", "3", "--dmax", "5"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn infinite_length_exits_3() {
    // content (X) in Q[X,Y] has infinite colength
    let o = locoh(&["hilbert", "--ideal", "X*U", "--m", "2", "--d", "1"]);
    assert_eq!(o.status.code(), Some(3));
    assert!(stderr(&o).contains("finite length"));
    // over ℤ the zero ideal leaves a free summand
    let o = locoh(&["hilbert", "--ideal", "0*U", "--field", "z", "--d", "2"]);
    assert_eq!(o.status.code(), Some(3));
    // while (2U^2) gives ℤ/2
    let o = locoh(&["hilbert", "--ideal", "2*U^2", "--field", "z", "--d", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "d,value,stabilized_at,notes\n2,1,,smith 2\n");
}

#[test]
fn input_errors_exit_2() {
    for args in [
        &["hilbert", "--ideal", "X*U +", "--d", "1"][..],
        &["hilbert", "--builtin", "singh", "--field", "p"],
        &["hilbert", "--builtin", "singh", "--p", "4"],
        &["hilbert", "--builtin", "remark16", "--d", "2"],
        &["hilbert", "--ideal", "U + V^2", "--d", "2"],
        &["hilbert", "--ideal", "X", "--d", "1"],
        &["hilbert", "--ideal", "X*U", "--field", "z", "--d", "1"],
        &["compare", "--p", "6"],
        &["present", "--builtin", "nope", "--d", "3"],
        &["present", "--d", "3"],
    ] {
        let o = locoh(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn parse_errors_carry_positions() {
    let o = locoh(&["present", "--ideal", "X*U + 3*", "--d", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1, column"));
}

#[test]
fn vanish_reports_both_routes() {
    let o = locoh(&["vanish", "--ideal", "U + X*V", "--dmin", "2", "--dmax", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["verdict"], "AllVanish");
    assert_eq!(v["rows"].as_array().unwrap().len(), 3);
    let o = locoh(&["vanish", "--builtin", "section3", "--dmin", "2", "--dmax", "3", "--format", "csv"]);
    assert_eq!(stdout(&o), "d,cokernel_zero,content_unit\n2,false,false\n3,false,false\n");
}

#[test]
fn compare_in_characteristic_two() {
    let o = locoh(&["compare", "--p", "2", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let hp: Vec<u64> = stdout(&o).lines().skip(1).map(|l| l.split(',').nth(2).unwrap().parse().unwrap()).collect();
    assert_eq!(hp, [1, 7, 20, 60, 119, 209]);
}

#[test]
fn tridiag_table() {
    let o = locoh(&["tridiag", "--n", "6", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,det\n1,2\n2,2\n3,0\n4,-4\n5,-8\n6,-8\n");
}

#[test]
fn content_of_remark16() {
    let o = locoh(&["content", "--builtin", "remark16", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["isUnit"], false);
    assert_eq!(v["isCofinite"], true);
    let mut gens: Vec<&str> = v["generators"].as_array().unwrap().iter().map(|g| g.as_str().unwrap()).collect();
    gens.sort();
    assert_eq!(gens, ["X", "Y"]);
}

#[test]
fn output_flag_writes_a_file() {
    let path = std::env::temp_dir().join(format!("locoh-cli-test-{}.csv", std::process::id()));
    let o = locoh(&["tridiag", "--n", "3", "--format", "csv", "--output", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), "n,det\n1,2\n2,2\n3,0\n");
    std::fs::remove_file(path).unwrap();
}

/// Every printed polynomial reparses to the polynomial it came from.
#[test]
fn printed_polynomials_round_trip() {
    let cases = [
        ("2*X^2*V^2+2*X*Y*U*V+Y^2*U^2", ScalarDomain::Rationals, 2, 3),
        ("-3/4*X*U^2 + 5*Y^2*V^2 - X*Y*U*V", ScalarDomain::Rationals, 2, 4),
        ("3*X*U + 4*Y*V + X*W", ScalarDomain::prime_field(5).unwrap(), 2, 4),
        ("X*U+Y*V+Z*W", ScalarDomain::Rationals, 3, 4),
    ];
    for (text, base, m, d) in cases {
        let ring = CoefficientRing::new(base, m);
        let (_, s) = locoh_core::parse::infer_arity(text).unwrap();
        let ideal = GradedIdeal::new(ring, s, parse_generators(text, ring, s).unwrap()).unwrap();
        let pm = presentation_matrix(&ideal, d).unwrap();
        let mut args = vec![
            "present".to_string(),
            "--ideal".into(),
            text.into(),
            "--m".into(),
            m.to_string(),
            "--d".into(),
            d.to_string(),
            "--format".into(),
            "csv".into(),
        ];
        if let Some(p) = base.modulus() {
            args.extend(["--p".into(), p.to_string()]);
        }
        let o = locoh(&args.iter().map(String::as_str).collect::<Vec<_>>());
        assert_eq!(o.status.code(), Some(0), "{text}");
        for (r, line) in stdout(&o).lines().enumerate() {
            for (c, cell) in line.split(',').enumerate() {
                assert_eq!(&parse_coefficient(cell, ring).unwrap(), pm.matrix().get(r, c), "{text} ({r}, {c})");
            }
        }
    }
    // generators printed by hilbert reparse too
    let o = locoh(&["hilbert", "--builtin", "section3", "--d", "2", "--format", "json"]);
    let printed = json(&o)["generators"][0].as_str().unwrap().to_string();
    let ideal = Builtin::Section3.ideal(ScalarDomain::Rationals);
    assert_eq!(parse_nested(&printed, ideal.ring(), 2).unwrap(), ideal.generators()[0]);
}

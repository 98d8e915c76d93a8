use std::process::{Command, Output};

fn polarcg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polarcg")).args(args).output().expect("run polarcg")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn stretched_coefficient_is_one() {
    let o = polarcg(&["cg", "--j1", "1/2", "--j2", "1/2", "--j3", "1", "--m1", "1/2", "--m2", "1/2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "1\n");
}

#[test]
fn threej_canonical_text() {
    let o = polarcg(&["threej", "--row", "1,1,0", "--m", "0,0,0"]);
    assert_eq!(stdout(&o), "-(1/1)*sqrt(1/3)\n");
}

#[test]
fn pipelines_agree_on_single_keys() {
    let args = ["cg", "--j1", "3/2", "--j2", "1", "--j3", "3/2", "--m1", "-1/2", "--m2", "1"];
    let oracle = stdout(&polarcg(&args));
    for p in ["hypergeometric", "gaunt"] {
        let mut a = args.to_vec();
        a.extend(["--pipeline", p]);
        assert_eq!(stdout(&polarcg(&a)), oracle, "{p}");
    }
}

#[test]
fn sixj_and_ninej() {
    assert_eq!(stdout(&polarcg(&["sixj", "--row", "1,1,1", "--row", "1,1,1"])), "1/6\n");
    let o = polarcg(&["ninej", "--row", "1/2,1/2,1", "--row", "1/2,1/2,1", "--row", "1,1,0"]);
    assert_eq!(o.status.code(), Some(0));
    let o = polarcg(&["sixj", "--row", "1,1,1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn decimal_and_json() {
    let o = polarcg(&["threej", "--row", "1,1,0", "--m", "0,0,0", "--decimal", "8"]);
    assert_eq!(stdout(&o), "-(1/1)*sqrt(1/3)\n-0.57735026\n");
    let o = polarcg(&["--format", "json", "threej", "--row", "1,1,0", "--m", "0,0,0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["value"], "-(1/1)*sqrt(1/3)");
    assert_eq!(v["value_squared"], "1/3");
}

#[test]
fn bad_input_exits_two_with_a_diagnostic() {
    let o = polarcg(&["cg", "--j1", "1", "--j2", "1", "--j3", "3", "--m1", "0", "--m2", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1);
    assert!(err.contains("triangle"));
    let o = polarcg(&["cg", "--j1", "1/3", "--j2", "1", "--j3", "1", "--m1", "0", "--m2", "0"]);
    assert_eq!(o.status.code(), Some(2));
    let o = polarcg(&["passage", "--j1", "1", "--m1", "1", "--j2", "1", "--m2", "1", "--j3", "1"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn budget_exits_three() {
    let o = polarcg(&["recouple", "--labels", "2,2,2,2,2,2,2,2,2", "--budget", "4"]);
    assert_eq!(o.status.code(), Some(3));
    let o = polarcg(&["gf-expand", "--which", "3j", "--degree", "12", "--budget", "10"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn passage_routes() {
    let base = ["passage", "--j1", "1", "--m1", "-1", "--j2", "1", "--m2", "0", "--j3", "1"];
    let mut abs = base.to_vec();
    abs.extend(["--route", "abs"]);
    let mut signed = base.to_vec();
    signed.extend(["--route", "signed"]);
    assert_eq!(stdout(&polarcg(&abs)), "1/2\n");
    assert_eq!(stdout(&polarcg(&signed)), "-(1/2)*sqrt(3/1)\n");
}

#[test]
fn gf_expand_dumps_json() {
    let o = polarcg(&["gf-expand", "--which", "cg", "--degree", "3", "--j3", "1", "--am1", "0", "--am2", "0"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["integral"], v["closed_form"]);
    let o = polarcg(&["gf-expand", "--which", "recoupling", "--labels", "1/2,1/2,0,0,1,0,1/2,1/2,1"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["first"]["vars"][0], "a1");
}

#[test]
fn tables_share_values_across_formats() {
    let csv = stdout(&polarcg(&["table", "--what", "threej", "--max-2j", "2", "--format", "csv"]));
    let json = polarcg(&["table", "--what", "threej", "--max-2j", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    let rows = v["rows"].as_array().unwrap();
    let csv_values: Vec<String> = csv.lines().skip(1).map(|l| l.split(',').nth(6).unwrap().to_string()).collect();
    let json_values: Vec<String> = rows.iter().map(|r| r["value"].as_str().unwrap().to_string()).collect();
    assert_eq!(csv_values, json_values);
    assert_eq!(csv.lines().next().unwrap(), "j1x2,j2x2,j3x2,m1x2,m2x2,m3x2,value,value_squared");
}

#[test]
fn single_row_table_at_zero() {
    let o = stdout(&polarcg(&["table", "--max-2j", "0"]));
    assert_eq!(o, "j1x2,j2x2,j3x2,m1x2,m2x2,m3x2,value,value_squared\n0,0,0,0,0,0,1,1\n");
}

#[test]
fn verify_suite_exit_codes() {
    let o = polarcg(&["verify", "symmetry", "--max-2j", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("[PASS]"));
    let o = polarcg(&["verify", "reconcile"]);
    assert_eq!(o.status.code(), Some(0));
}

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_semigroup-forge"))
        .args(args)
        .env_remove("SEMIGROUP_FORGE_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json_lines(o: &Output) -> Vec<serde_json::Value> {
    stdout(o).lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn show_draws_the_dyck_path() {
    let o = run(&["numsgp", "show", "--gens", "3,8", "--dyck"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("14 boxes"), "{s}");
    assert!(s.contains("genus:        7"));
    let svg = run(&["numsgp", "show", "--gens", "4,6,13", "--svg"]);
    assert!(stdout(&svg).contains("<svg"));
}

#[test]
fn list_emits_one_line_per_semigroup() {
    let o = run(&["numsgp", "list", "--genus", "4"]);
    assert!(o.status.success());
    let lines = json_lines(&o);
    assert_eq!(lines.len(), 7);
    assert!(lines.iter().all(|v| v["genus"] == 4));
    let outliers = json_lines(&run(&["numsgp", "list", "--genus", "7", "--outliers"]));
    assert_eq!(outliers.len(), 1);
    assert_eq!(outliers[0]["gens"], serde_json::json!([3, 8]));
}

#[test]
fn enumerate_and_diff() {
    let o = run(&["valsgp", "enumerate", "--genus", "2", "--branches", "2"]);
    assert!(o.status.success());
    assert_eq!(json_lines(&o).len(), 2);

    let ok = run(&["valsgp", "enumerate", "--genus", "3", "--branches", "2", "--diff-catalog"]);
    assert!(ok.status.success());
    assert_eq!(json_lines(&ok)[0]["extra"], serde_json::json!([]));

    // Three genus-4 classes are not in the built-in catalog.
    let diff = run(&["valsgp", "enumerate", "--genus", "4", "--branches", "2", "--diff-catalog"]);
    assert_eq!(diff.status.code(), Some(1));
    assert_eq!(json_lines(&diff)[0]["extra"].as_array().unwrap().len(), 3);
}

#[test]
fn check_and_generators() {
    let ok = run(&["valsgp", "check", "--elements", "(1,1),(2,2)"]);
    assert!(ok.status.success());
    assert_eq!(json_lines(&ok)[0]["genus"], 2);

    let bad = run(&["valsgp", "check", "--elements", "(1,1,1,1),(1,1,1,2),(1,1,1,4)"]);
    assert_eq!(bad.status.code(), Some(1));
    assert_eq!(json_lines(&bad)[0]["valid"], false);

    let g = run(&["valsgp", "generators", "--elements", "(1,2),(2,3)"]);
    assert!(g.status.success());
    assert_eq!(json_lines(&g)[0]["m"], 3);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&[]).status.code(), Some(2));
    assert_eq!(run(&["numsgp", "show", "--gens", "4,6"]).status.code(), Some(2));
    assert_eq!(run(&["numsgp", "show", "--gens", "x"]).status.code(), Some(2));
    assert_eq!(run(&["gapcond", "run", "--case", "5-7"]).status.code(), Some(2));
    assert_eq!(run(&["valsgp", "enumerate", "--genus", "5", "--branches", "2"]).status.code(), Some(2));
    assert_eq!(run(&["verify", "thm2", "--classify-genus", "9"]).status.code(), Some(2));
}

#[test]
fn gap_cases() {
    let o = run(&["gapcond", "run", "--case", "3-8"]);
    assert!(o.status.success());
    assert_eq!(json_lines(&o)[0]["case"], "3-8");
    // The second listed condition for <4,6,13> is implied by the first.
    assert_eq!(run(&["gapcond", "run", "--case", "4-6-13"]).status.code(), Some(1));
}

#[test]
fn ledgers() {
    let o = run(&["conditions", "ledger", "--case", "7", "--n", "5"]);
    assert!(o.status.success());
    assert_eq!(json_lines(&o)[0]["net"], 18);
    let all = run(&["conditions", "ledger"]);
    assert_eq!(json_lines(&all).len(), 8 * 10);
    let v = run(&["conditions", "verify", "--samples", "10"]);
    assert!(v.status.success(), "{}", stdout(&v));
}

#[test]
fn ramification_sweep_passes() {
    let o = run(&["ramif", "sweep", "--max-genus", "8"]);
    assert!(o.status.success());
    assert_eq!(json_lines(&o).len(), 8);
}

#[test]
fn output_is_deterministic() {
    let a = run(&["--jobs", "1", "valsgp", "enumerate", "--genus", "4", "--branches", "3"]);
    let b = run(&["--jobs", "4", "valsgp", "enumerate", "--genus", "4", "--branches", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let c = run(&["verify", "thm2", "--classify-genus", "2", "--samples", "5", "--seed", "9"]);
    let d = run(&["verify", "thm2", "--classify-genus", "2", "--samples", "5", "--seed", "9"]);
    assert_eq!(c.stdout, d.stdout);
    assert!(c.status.success());
}

#[test]
fn seed_from_environment_overrides_flag() {
    let args = ["conditions", "verify", "--samples", "5", "--seed", "1"];
    let env = Command::new(env!("CARGO_BIN_EXE_semigroup-forge"))
        .args(args)
        .env("SEMIGROUP_FORGE_SEED", "2")
        .output()
        .unwrap();
    let flag = run(&["conditions", "verify", "--samples", "5", "--seed", "2"]);
    assert_eq!(env.stdout, flag.stdout);
    assert_ne!(run(&args).stdout, flag.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_semigroup-forge"))
        .args(args)
        .env("SEMIGROUP_FORGE_SEED", "seven")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn reports() {
    let md = run(&["report", "--format", "md", "--max-genus", "6", "--classify-genus", "3", "--samples", "5"]);
    assert!(md.status.success());
    let s = stdout(&md);
    assert!(s.starts_with("# semigroup-forge report"));
    assert!(s.contains("| thm1 | census | pass |"));
    let js = run(&["report", "--max-genus", "6", "--classify-genus", "3", "--samples", "5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&js)).unwrap();
    assert_eq!(v["total"].as_u64().unwrap() as usize, v["checks"].as_array().unwrap().len());
}

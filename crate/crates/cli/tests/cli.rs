use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_amitsur")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> serde_json::Value {
    let mut a = args.to_vec();
    a.extend(["--format", "json"]);
    let o = run(&a);
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn cohomology_examples() {
    let o = run(&["cohomology", "--group", "klein", "--module", "trivialZ", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("Z/2 ⊕ Z/2"));
    let o = run(&["cohomology", "--group", "cyclic:4", "--module", "trivialZ", "--degree", "3"]);
    assert_eq!(stdout(&o).lines().next(), Some("0"));
}

#[test]
fn malformed_module_is_rejected() {
    let dir = std::env::temp_dir().join(format!("amitsur-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("bad.json");
    // a 2 × 2 action with determinant 2 is not invertible
    std::fs::write(
        &path,
        r#"{"group":{"builtin":"klein"},"generators":2,"action":{"sigma":[[2,0],[0,1]],"tau":[[1,0],[0,1]]}}"#,
    )
    .unwrap();
    let o = run(&["cohomology", "--group", "klein", "--module", path.to_str().unwrap(), "--degree", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(!o.stderr.is_empty());
    let o = run(&["cohomology", "--group", "klein", "--module", "/nonexistent/m.json", "--degree", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn klein_orders() {
    let v = json(&["amitsur", "--presentation", "klein-p1", "--degrees", "2..6"]);
    let orders: Vec<&str> = v["results"]["degrees"].as_array().unwrap().iter().map(|d| d["order"].as_str().unwrap()).collect();
    assert_eq!(orders, ["2", "1", "4", "2", "8"]);
}

#[test]
fn cyclic_example() {
    let v = json(&["amitsur", "--presentation", "cyclic:m=4,b=2", "--degrees", "2..5"]);
    let groups: Vec<&str> = v["results"]["degrees"].as_array().unwrap().iter().map(|d| d["group"].as_str().unwrap()).collect();
    assert_eq!(groups, ["Z/4", "0", "Z/4", "0"]);
    assert_eq!(run(&["beta", "--presentation", "cyclic:m=4,b=2", "--expect", "nonzero"]).status.code(), Some(0));
    assert_eq!(run(&["beta", "--presentation", "cyclic:m=4,b=2", "--expect", "zero"]).status.code(), Some(1));
}

#[test]
fn toric_example() {
    let v = json(&["amitsur", "--presentation", "toric-klein"]);
    for d in v["results"]["degrees"].as_array().unwrap() {
        assert_eq!(d["group"], "0");
    }
    let v = json(&["beta", "--presentation", "toric-klein"]);
    assert_eq!(v["results"]["nonzero"], true);
}

#[test]
fn verification_commands() {
    let o = run(&["verify-resolution"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("pass"));
    let v = json(&["dp2-verify"]);
    let checks = v["results"]["checks"].as_array().unwrap();
    assert_eq!(checks.len(), 5);
    assert!(checks.iter().all(|c| c["passed"] == true));
    let v = json(&["bogomolov-kernel", "--group", "m16", "--coeff", "trivialZ", "--degrees", "2..5"]);
    for d in v["results"]["degrees"].as_array().unwrap() {
        assert_eq!(d["kernel"], "0");
    }
    let v = json(&["bogomolov-kernel", "--coeff", "tns", "--degrees", "2"]);
    assert_eq!(v["results"]["degrees"][0]["kernel"], "Z/2");
}

#[test]
fn beta_refuses_torsion_pic() {
    // u = t² on P¹ minus {0, ∞}: Pic = Z ⊕ Z/2
    let dir = std::env::temp_dir().join(format!("amitsur-cli-pic-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("square.json");
    std::fs::write(
        &path,
        r#"{"schema":"presentation","name":"square","group":{"builtin":"cyclic","params":[2]},
            "divisors":{"labels":["0","inf"],"action":{"sigma":[1,0]}},
            "units":{"labels":["u"],"divisors":{"u":{"0":2,"inf":-2}}},
            "twists":{"sigma":{"u":{"monomial":[-1]}}}}"#,
    )
    .unwrap();
    let o = run(&["beta", "--presentation", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("beta undefined"));
    let o = run(&["amitsur", "--presentation", path.to_str().unwrap(), "--degrees", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(run(&["beta", "--presentation", "cyclic:m=1,b=2"]).status.code(), Some(2));
}

#[test]
fn json_is_deterministic() {
    let args = ["amitsur", "--presentation", "cyclic:m=3,b=2", "--degrees", "2..4", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = ["dp2-verify", "--format", "json"];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn json_carries_text_lines() {
    let text = stdout(&run(&["amitsur", "--presentation", "klein-p1", "--degrees", "2..3"]));
    let v = json(&["amitsur", "--presentation", "klein-p1", "--degrees", "2..3"]);
    for l in v["lines"].as_array().unwrap() {
        assert!(text.contains(l.as_str().unwrap()));
    }
    for n in v["notes"].as_array().unwrap() {
        assert!(text.contains(n.as_str().unwrap()));
    }
}

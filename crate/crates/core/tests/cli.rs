use serde_json::Value;
use std::path::PathBuf;
use std::process::{Command, Output};

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "examples", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn qsets(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsets")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.push("--json");
    let o = qsets(&all);
    let v = serde_json::from_slice(&o.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(&o)));
    (o.status.code().unwrap(), v)
}

fn values(v: &Value) -> Vec<String> {
    v["result"]["values"].as_array().unwrap().iter().map(|x| x["value"].as_str().unwrap().to_string()).collect()
}

#[test]
fn verify_lattice_builtins() {
    let (code, v) = json(&["verify-lattice", "--builtin", "mo2"]);
    assert_eq!(code, 0);
    assert_eq!(v["command"], "verify-lattice");
    assert_eq!(v["passed"], true);
    let kinds: Vec<&str> = v["result"]["material_kinds"].as_array().unwrap().iter().map(|k| k.as_str().unwrap()).collect();
    assert_eq!(kinds, ["R", "C", "S"]);
    assert_eq!(v["result"]["all_six_coincide"], false);

    let o = qsets(&["verify-lattice", "--builtin", "boolean:3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all six conditionals coincide"));
}

#[test]
fn verify_lattice_from_file() {
    let o = qsets(&["verify-lattice", "--lattice", &data("mo2.json")]);
    assert_eq!(o.status.code(), Some(0));
    let o = qsets(&["verify-lattice", "--lattice", &data("not_orthomodular.json")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("FAIL"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = std::env::temp_dir().join(format!("qsets-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, "{\"elements\": [\"0\", \"1\"], \"le\": [[\"0\", \"x\"]]}").unwrap();
    let o = qsets(&["verify-lattice", "--lattice", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let cfg = dir.join("cfg.json");
    std::fs::write(&cfg, "{\"seed\": 3, \"bogus\": 1}").unwrap();
    let o = qsets(&["--config", cfg.to_str().unwrap(), "suite", "--criterion", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("bogus"));

    assert_eq!(qsets(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(qsets(&["eval", "u = "]).status.code(), Some(2));
    assert_eq!(qsets(&["--builtin", "mo2", "--lattice", &data("mo2.json"), "verify-lattice"]).status.code(), Some(2));
    assert_eq!(qsets(&["suite", "--criterion", "13"]).status.code(), Some(2));
}

#[test]
fn eval_reflexivity_and_witness() {
    let (code, v) = json(&["eval", "u = u", "--bind", "u={#0:a}", "--interp", "all36"]);
    assert_eq!(code, 0);
    let vals = values(&v);
    assert_eq!(vals.len(), 36);
    assert!(vals.iter().all(|x| x == "1"));

    let (_, v) = json(&["eval", "--witness", "u = w"]);
    assert_eq!(values(&v), ["0"]);
    let (_, v) = json(&["eval", "--witness", "u = v & v = w"]);
    assert_eq!(values(&v), ["a"]);
}

#[test]
fn eval_internal_reals_agree_across_kinds() {
    let (code, v) = json(&[
        "eval",
        "--real",
        &format!("u={}", data("real_u.json")),
        "--real",
        &format!("v={}", data("real_v.json")),
        "--interp",
        "S,C,R",
        "u = v",
    ]);
    assert_eq!(code, 0);
    let vals = values(&v);
    assert_eq!(vals.len(), 3);
    assert_eq!(vals[0], vals[1]);
    assert_eq!(vals[0], vals[2]);
}

#[test]
fn counterexample_and_first_order() {
    let (code, v) = json(&["counterexample"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    let o = qsets(&["counterexample"]);
    let text = stdout(&o);
    assert!(text.contains("a <= 0  fails"));

    let (code, v) = json(&["first-order", "--interp", "S,C,R"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
    assert_eq!(qsets(&["first-order", "--interp", "K4"]).status.code(), Some(2));
}

#[test]
fn takeuti_de_morgan_fails_as_expected() {
    let o = qsets(&["demorgan", "--interp", "takeuti", "--samples", "1"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("I(K3,J5)"));
    assert!(text.contains("fails as expected"));
    let o = qsets(&["demorgan", "--interp", "S,C,R", "--samples", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("fails"));
}

#[test]
fn transfer_small() {
    let (code, v) = json(&["transfer", "--samples", "1"]);
    assert_eq!(code, 0);
    assert_eq!(v["passed"], true);
}

#[test]
fn takeuti_roundtrip() {
    let (code, v) = json(&["takeuti-roundtrip", "--samples", "10", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["seed"], 3);
    let o = qsets(&["takeuti-roundtrip", "--operator", &data("z_shift.json")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn order_compare_reflexive_and_spectral() {
    let z = data("z.json");
    let o = qsets(&["order-compare", &z, &z]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for k in ["S", "C", "R"] {
        assert!(text.contains(&format!("[X <= Y]_{k} rank 2 = I")), "{text}");
    }
    let o = qsets(&["order-compare", &z, &data("z_shift.json")]);
    assert!(stdout(&o).contains("spectral order X <= Y: true"));
    let o = qsets(&["order-compare", &z, &data("x_flip.json")]);
    assert!(stdout(&o).contains("spectral order X <= Y: false"));
}

#[test]
fn measure_random_states() {
    let o = qsets(&["measure", &data("z.json"), &data("x_flip.json"), "--random", "1000", "--seed", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for k in ["S", "C", "R"] {
        assert!(text.contains(&format!("kind {k}: biconditional held in 1000/1000 cases")), "{text}");
    }
    let o = qsets(&["measure", &data("z.json"), &data("x_flip.json"), "--state", &data("plus.json")]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn suite_subset_is_deterministic() {
    let args = ["suite", "--criterion", "3", "--criterion", "8", "--json", "--seed", "11"];
    let a = qsets(&args);
    let b = qsets(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let ids: Vec<u64> = v["result"]["criteria"].as_array().unwrap().iter().map(|c| c["id"].as_u64().unwrap()).collect();
    assert_eq!(ids, [3, 8]);
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("qsets-out-{}.json", std::process::id()));
    let o = qsets(&["verify-lattice", "--json", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "verify-lattice");
    std::fs::remove_file(path).ok();
}

use serde_json::Value;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qtspecials"))
        .args(args)
        .env_remove("QTSPECIALS_SEED")
        .output()
        .unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn binom_single_value() {
    let out = run(&["binom", "--lambda", "2,1", "--mu", "1,0", "--q", "1/2", "--t", "1/3"]);
    assert!(out.status.success());
    // (λ over e_1) = [2]_q + [1]_q / t = 3/2 + 3.
    assert_eq!(json(&out)["rows"][0]["value"], "9/2");
}

#[test]
fn verify_example_passes() {
    let out = run(&["verify", "--n", "2", "--bound", "3,3", "--points", "5", "--seed", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["all_passed"], true);
    for r in v["records"].as_array().unwrap() {
        if r.get("tolerance").is_none() {
            assert_eq!(r["residual"], "0/1", "{r}");
        }
    }
}

#[test]
fn verify_is_byte_stable_and_honours_seed_env() {
    let a = run(&["verify", "--bound", "2,1", "--points", "1", "--seed", "3"]);
    let b = run(&["verify", "--bound", "2,1", "--points", "1", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let c = Command::new(env!("CARGO_BIN_EXE_qtspecials"))
        .args(["verify", "--bound", "2,1", "--points", "1"])
        .env("QTSPECIALS_SEED", "3")
        .output()
        .unwrap();
    assert_eq!(a.stdout, c.stdout);
}

#[test]
fn catalan_alpha_limit() {
    let out = run(&["catalan", "--lambda", "1,1", "--alpha", "1"]);
    assert!(out.status.success());
    // Π_{i=1}^{n-1} (1 - q^2 t^{n-1-i}) / (1 - q t^{n-1-i}) → 2 at n = 2.
    assert_eq!(json(&out)["rows"][0]["value"], "2/1");
}

#[test]
fn classical_tables_in_csv() {
    let out = run(&["fibonacci", "--bound", "6", "--alpha", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let values: Vec<&str> = text.lines().skip(1).map(|l| l.rsplit(',').next().unwrap()).collect();
    assert_eq!(values, ["1/1", "1/1", "2/1", "3/1", "5/1", "8/1", "13/1"]);
    let out = run(&["stirling", "--bound", "4", "--kind", "2", "--alpha", "1", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("4,2,7/1") && text.contains("4,3,6/1"));
}

#[test]
fn errors_are_json_records_with_exit_one() {
    let cases: [(&[&str], &str); 3] = [
        (&["binom", "--lambda", "2,1", "--mu", "1,0", "--q", "1", "--t", "1/3"], "DegenerateParameters"),
        (&["binom", "--lambda", "2,x", "--mu", "1,0", "--q", "1/2", "--t", "1/3"], "ParseError"),
        (&["catalan", "--lambda", "1,0", "--alpha", "1"], "DegenerateParameters"),
    ];
    for (args, kind) in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert_eq!(json(&out)["error"]["kind"], kind);
    }
}

#[test]
fn density_and_sample() {
    let base = ["--lambda", "2,1", "--z", "1/5", "--q", "1/2", "--t", "1/3"];
    let out = run(&[&["density", "--family", "g"][..], &base].concat());
    let v = json(&out);
    assert_eq!(v["meta"]["total"], "1/1");
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);

    let out = run(&[&["sample", "--count", "20", "--seed", "9"][..], &base].concat());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 21);
    assert!(lines[..20].iter().all(|l| l["draw"].is_string()));
    assert_eq!(lines[20]["summary"]["summary"].as_array().unwrap().len(), 5);

    let out = run(&["sample", "--lambda", "2,1", "--z", "1/5", "--q", "3/2", "--t", "1/3"]);
    assert_eq!(json(&out)["error"]["kind"], "UnsupportedRegime");
}

#[test]
fn exp_and_out_file() {
    let dir = std::env::temp_dir().join(format!("qtspecials-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("exp.json");
    let out = run(&["exp", "--n", "2", "--z", "0", "--q", "1/2", "--t", "1/3", "--out", path.to_str().unwrap()]);
    assert!(out.status.success() && out.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    for row in v["rows"].as_array().unwrap() {
        assert_eq!(row["product"], "1/1");
        assert_eq!(row["series"], "1/1");
    }
    std::fs::remove_dir_all(dir).unwrap();
}

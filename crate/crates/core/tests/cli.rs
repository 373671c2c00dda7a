use std::process::Command;

use serde_json::Value;
use symcx::cli::run;

fn call(args: &str) -> (i32, Value) {
    let argv = std::iter::once("symcx").chain(args.split_whitespace());
    let (code, text) = run(argv, None);
    (code, serde_json::from_str(&text).unwrap_or(Value::String(text)))
}

#[test]
fn orbit_dim_example() {
    let (code, r) = call("orbit-dim --group gl3 --orbit 2,1");
    assert_eq!(code, 0);
    assert_eq!(r["result"]["value"], 4);
    assert_eq!(r["verdict"], Value::Null);
    assert_eq!(r["version"], "1");
}

#[test]
fn double_cosets_example() {
    let (code, r) = call("double-cosets --n 3 --p 2,1 --q 2,1");
    assert_eq!(code, 0);
    assert_eq!(r["result"]["value"], 2);
}

#[test]
fn verify_iv_example() {
    let (code, r) = call("verify --clause iv --group sl2 --subgroup torus");
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], "PASS");
    assert_eq!(r["result"]["interval"]["lower"], 0);
    assert_eq!(r["result"]["interval"]["upper"], 0);
    assert_eq!(r["primes_used"].as_array().unwrap().len(), 5);
}

#[test]
fn report_key_order() {
    let (_, text) = run(["symcx", "jordan-type", "--matrix", "[[0,1,0],[0,0,1],[0,0,0]]"], None);
    let keys: Vec<&str> = ["version", "command", "config_echo", "primes_used", "result", "certificates", "verdict", "elapsed_ms"]
        .into_iter()
        .collect();
    let positions: Vec<usize> = keys.iter().map(|k| text.find(&format!("\"{k}\"")).unwrap()).collect();
    assert!(positions.windows(2).all(|w| w[0] < w[1]), "{text}");
    let r: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["result"]["value"], serde_json::json!([3]));
}

#[test]
fn small_commands() {
    assert_eq!(call("richardson --p 2,1").1["result"]["value"], serde_json::json!([2, 1]));
    assert_eq!(call("sdim-linear --matrix [[0,1],[-1,0]]").1["result"]["value"], 1);
    assert_eq!(call("kks-rank --group gl3 --orbit 2,1").1["result"]["value"], 4);
    assert_eq!(call("complexity --group sl3 --subgroup torus").1["result"]["value"], 1);
    assert_eq!(
        call("generic-modality --group sl3 --subgroup torus --acting borel").1["result"]["value"],
        1
    );
    assert_eq!(call("c-orbit --orbit 2,1 --dim-intersection 1").1["result"]["value"], -1);
    assert_eq!(call("c-orbit --group sl2 --subgroup trivial --orbit 2").1["result"]["value"], 1);
    let (_, r) = call("sc-set --group sl3 --subgroup torus --orbit-set nilpotent_cone --primes 2");
    assert_eq!(r["result"]["interval"]["lower"], 1);
    assert_eq!(r["result"]["interval"]["upper"], 1);
    assert_eq!(call("orbital-variety --orbit 2,1").1["verdict"], "PASS");
    let (code, r) = call("question-evidence --group sl2 --subgroup torus --orbit 2 --primes 2");
    assert_eq!(code, 0);
    assert_eq!(r["verdict"], Value::Null);
}

#[test]
fn errors_exit_one_with_json() {
    for args in [
        "orbit-dim --orbit 2,x",
        "orbit-dim --group sl3 --orbit 2,2",
        "verify --clause v --group sl2 --subgroup torus",
        "verify --group sl2 --subgroup torus",
        "sc-orbit --group sl2 --subgroup torus --orbit 2 --primes 0",
        "sdim-linear --matrix [[0,1],[1,0]]",
        "jordan-type --matrix [[1,0],[0,1]]",
        "nonsense",
    ] {
        let (code, r) = call(args);
        assert_eq!(code, 1, "{args}");
        assert!(r["error"]["message"].is_string(), "{args}: {r}");
    }
}

#[test]
fn help_exits_zero() {
    let (code, text) = run(["symcx", "--help"], None);
    assert_eq!(code, 0);
    assert!(text.contains("sc-orbit"));
}

#[test]
fn config_file_round_trip_and_precedence() {
    let dir = std::env::temp_dir().join(format!("symcx-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (_, first) = run(["symcx", "sc-orbit", "--group", "sl3", "--subgroup", "borel", "--orbit", "3", "--primes", "2"], None);
    let r: Value = serde_json::from_str(&first).unwrap();
    let path = dir.join("cfg.json");
    std::fs::write(&path, serde_json::to_string(&r["config_echo"]).unwrap()).unwrap();
    let p = path.to_str().unwrap();
    let (code, again) = run(["symcx", "sc-orbit", "--config", p], None);
    assert_eq!(code, 0);
    assert_eq!(first, again);
    // flags beat the file, the environment beats both
    let (_, text) = run(["symcx", "sc-orbit", "--config", p, "--seed", "5"], None);
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap()["config_echo"]["sampling"]["seed"], 5);
    let (_, text) = run(["symcx", "sc-orbit", "--config", p, "--seed", "5"], Some("9"));
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap()["config_echo"]["sampling"]["seed"], 9);
    let (code, _) = run(["symcx", "orbit-dim", "--config", p], None);
    assert_eq!(code, 1);
    std::fs::write(&path, r#"{"command":"sc-orbit","extra":true}"#).unwrap();
    let (code, text) = run(["symcx", "sc-orbit", "--config", p], None);
    assert_eq!(code, 1);
    assert!(text.contains("extra"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic_and_timing_is_opt_in() {
    let args = ["symcx", "sc-set", "--group", "sl3", "--subgroup", "torus", "--seed", "11"];
    assert_eq!(run(args, None), run(args, None));
    let (_, text) = run(["symcx", "orbit-dim", "--orbit", "3", "--timing"], None);
    assert!(serde_json::from_str::<Value>(&text).unwrap()["elapsed_ms"].is_u64());
}

#[test]
fn binary_uses_seed_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_symcx"))
        .args(["sc-orbit", "--group", "sl2", "--subgroup", "torus", "--orbit", "2", "--primes", "1"])
        .env("SYMCX_SEED", "42")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["config_echo"]["sampling"]["seed"], 42);
    let bad = Command::new(env!("CARGO_BIN_EXE_symcx")).arg("orbit-dim").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

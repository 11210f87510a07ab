use std::path::PathBuf;
use std::process::{Command, Output};

use des_equiv::format::{parse_instance, Instance};
use des_equiv::problems::{validate_con, validate_dx, validate_obs};
use serde_json::Value;

fn instance(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("instances").join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_des-equiv")).args(args).output().unwrap()
}

fn run_on(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = instance(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    run(&args)
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("stdout is not JSON ({e}): {}", String::from_utf8_lossy(&out.stdout))
    })
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("des-equiv-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn validate_exit_codes() {
    assert_eq!(run_on("validate", "joint_observability.json", &[]).status.code(), Some(0));

    let fault = run_on("validate", "observable_fault.json", &[]);
    assert_eq!(fault.status.code(), Some(1));
    let text = String::from_utf8_lossy(&fault.stdout).to_string() + &String::from_utf8_lossy(&fault.stderr);
    assert!(text.contains("\"f\"") || text.contains(" f"), "{text}");

    let malformed = run_on("validate", "malformed.json", &[]);
    assert_eq!(malformed.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&malformed.stderr).contains("line"));

    assert_eq!(run(&["validate", "/nonexistent/instance.json"]).status.code(), Some(2));
}

#[test]
fn solve_reports_canonical_verdicts() {
    let out = run_on("solve", "joint_observability.json", &[]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "unsolvable");
    assert_eq!(v["witness"], serde_json::json!(["ab", "ba"]));

    let out = run_on("solve", "three_words.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "solvable");

    let out = run_on("solve", "three_words.json", &["--fusion", "conjunctive"]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "unsolvable");
    assert_eq!(v["witness"], serde_json::json!(["ab"]));

    let out = run_on("solve", "spec_equals_plant.json", &[]);
    assert_eq!(json(&out)["verdict"], "solvable");
}

#[test]
fn solve_reports_bounded_depth_on_infinite_plants() {
    let out = run_on("solve", "infinite_two_agents.json", &["--depth", "6"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["verdict"], "unknown_up_to_depth");
    assert_eq!(v["depth"], 6);
}

#[test]
fn solve_control_lists_events() {
    let out = run_on("solve", "blind_control.json", &[]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["verdict"], "unsolvable");
    assert_eq!(v["failing_event"], "b");
    assert_eq!(v["per_sigma"]["b"]["verdict"], "unsolvable");

    let out = run_on("solve", "control.json", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "solvable");
}

#[test]
fn reduce_obs_to_dx_adds_fault_with_zero_delay() {
    let out = run_on("reduce", "three_words.json", &["--to", "dx"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["class"], "dx");
    assert_eq!(v["fault"], "#f");
    assert_eq!(v["delay"], 0);
}

#[test]
fn reduce_con_to_obs_emits_one_instance_per_event() {
    let out = run_on("reduce", "control.json", &["--to", "obs"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let members = v.as_array().unwrap();
    assert_eq!(members.len(), 1);
    assert_eq!(members[0]["event"], "b");
    assert_eq!(members[0]["instance"]["class"], "obs");
}

#[test]
fn unsupported_reductions_suggest_composition() {
    let out = run_on("reduce", "diagnosis.json", &["--to", "con"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("reduce to obs, then to con"));
    let out = run_on("reduce", "control.json", &["--to", "dx"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("reduce to obs, then to dx"));
}

/// Every reduction output parses back and validates.
#[test]
fn reduce_outputs_are_closed_under_the_format() {
    let cases = [
        ("joint_observability.json", "dx"),
        ("three_words.json", "con"),
        ("diagnosis.json", "obs"),
        ("infinite_two_agents.json", "dx"),
        ("infinite_two_agents.json", "con"),
    ];
    for (file, to) in cases {
        let out = run_on("reduce", file, &["--to", to]);
        assert_eq!(out.status.code(), Some(0), "{file} -> {to}");
        let text = String::from_utf8(out.stdout).unwrap();
        let ok = match parse_instance(&text).unwrap() {
            Instance::Obs(o) => validate_obs(&o).is_ok(),
            Instance::Dx(d) => validate_dx(&d).is_ok(),
            Instance::Con(c) => validate_con(&c).is_ok(),
        };
        assert!(ok, "{file} -> {to} does not validate");
        let path = write_temp(&format!("{file}.{to}.json"), &text);
        assert_eq!(run(&["validate", path.to_str().unwrap()]).status.code(), Some(0));
    }
    let out = run_on("reduce", "control.json", &["--to", "obs"]);
    let members: Value = json(&out);
    for m in members.as_array().unwrap() {
        let text = serde_json::to_string(&m["instance"]).unwrap();
        let Instance::Obs(o) = parse_instance(&text).unwrap() else { panic!("class") };
        assert!(validate_obs(&o).is_ok());
    }
}

/// Solving a file and its reduction image gives the same verdict.
#[test]
fn solve_agrees_across_reductions() {
    let cases = [
        ("joint_observability.json", "dx"),
        ("three_words.json", "dx"),
        ("three_words.json", "con"),
        ("joint_observability.json", "con"),
        ("diagnosis.json", "obs"),
        ("hidden_fault.json", "obs"),
    ];
    for (file, to) in cases {
        let direct = json(&run_on("solve", file, &[]))["verdict"].clone();
        let out = run_on("reduce", file, &["--to", to]);
        let path = write_temp(&format!("solve-{file}.{to}.json"), &String::from_utf8(out.stdout).unwrap());
        let reduced = json(&run(&["solve", path.to_str().unwrap()]))["verdict"].clone();
        assert_eq!(direct, reduced, "{file} -> {to}");
    }
}

#[test]
fn roundtrip_reports_recovery() {
    let out = run_on("roundtrip", "recovery.json", &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json(&out);
    assert_eq!(v["ok"], true);
    assert_eq!(v["round_trip"]["plant_equivalent"], true);
    assert_eq!(v["round_trip"]["spec_equivalent"], true);
    let names: Vec<&str> = v["obligations"].as_array().unwrap().iter().map(|o| o["name"].as_str().unwrap()).collect();
    assert!(names.contains(&"recovery"));

    for file in ["joint_observability.json", "three_words.json", "infinite_two_agents.json"] {
        assert_eq!(run_on("roundtrip", file, &[]).status.code(), Some(0), "{file}");
    }

    let out = run_on("roundtrip", "recovery.json", &["--corrupt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("obligation"));
}

#[test]
fn oracle_command_matches_solver_and_enforces_budget() {
    for file in ["joint_observability.json", "three_words.json", "diagnosis.json", "hidden_fault.json", "blind_control.json"] {
        let solver = json(&run_on("solve", file, &[]))["verdict"].clone();
        let oracle = run_on("oracle", file, &[]);
        assert_eq!(json(&oracle)["verdict"], solver, "{file}");
    }
    let out = run_on("oracle", "three_words.json", &["--budget", "1"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run_on("oracle", "infinite_two_agents.json", &[]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn output_is_deterministic() {
    for (cmd, file, extra) in [
        ("solve", "joint_observability.json", vec![]),
        ("solve", "blind_control.json", vec![]),
        ("reduce", "control.json", vec!["--to", "obs"]),
        ("reduce", "three_words.json", vec!["--to", "con"]),
        ("roundtrip", "recovery.json", vec![]),
    ] {
        let a = run_on(cmd, file, &extra);
        let b = run_on(cmd, file, &extra);
        assert_eq!(a.stdout, b.stdout, "{cmd} {file}");
        assert_eq!(a.status.code(), b.status.code());
    }
}

#[test]
fn format_flag_and_usage_errors() {
    let path = instance("three_words.json");
    let out = run(&["--format", "json", "solve", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdict"], "solvable");
    assert_eq!(run(&["solve"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
}

//! Reading, solving, reducing and writing JSON instance files.
//!
//! Run with `cargo run --example instance_files [path]`.

use des_equiv::format::{parse_instance, to_json, Instance};
use des_equiv::reductions::obs_to_dx;
use des_equiv::solvers::{solve_con, solve_dx, solve_obs, DEFAULT_DEPTH};

const INLINE: &str = r#"{
    "class": "obs",
    "alphabet": ["a", "b"],
    "agents": [{ "observed": ["a"] }, { "observed": ["b"] }],
    "fusion": "unrestricted",
    "plant": { "words": [["a", "b"], ["b", "a"]] },
    "spec": { "words": [["a", "b"]] }
}"#;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path)?,
        None => INLINE.to_string(),
    };
    let instance = parse_instance(&text)?;
    let depth = Some(DEFAULT_DEPTH);
    let report = match &instance {
        Instance::Obs(o) => solve_obs(o, depth)?,
        Instance::Dx(d) => solve_dx(d, depth)?,
        Instance::Con(c) => solve_con(c, depth)?.overall,
    };
    println!("{} instance: {} via {}", instance.class().name(), report.verdict.name(), report.method);
    for w in &report.witness {
        println!("  witness {w}");
    }

    if let Instance::Obs(o) = &instance {
        let d = obs_to_dx(o)?;
        println!("\nthe same problem as a diagnosis file:\n{}", to_json(&Instance::Dx(d)));
    }

    match parse_instance("{ \"class\": \"obs\", \"alphabet\": [\"a\"] ") {
        Err(e) => println!("\nbroken input is reported at line {}, column {}: {}", e.line, e.column, e.message),
        Ok(_) => unreachable!("input is truncated"),
    }
    Ok(())
}

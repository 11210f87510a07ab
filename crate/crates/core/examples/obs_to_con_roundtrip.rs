//! Encoding an observation problem as a control problem and back.
//!
//! Run with `cargo run --example obs_to_con_roundtrip`.

use des_equiv::reductions::{con_to_obs, obs_to_con, verify_obs_to_con};
use des_equiv::solvers::{solve_con, solve_obs};
use des_equiv::{Alphabet, Automaton, FiniteLanguage, FusionRule, ObsInstance};

fn words(a: &Automaton) -> String {
    let w: Vec<String> = a.enumerate_upto(6).iter().map(|w| w.to_string()).collect();
    format!("{{{}}}", w.join(", "))
}

fn main() -> des_equiv::Result<()> {
    let sigma = Alphabet::from_names(&["a", "b"])?;
    let o = ObsInstance {
        plant: Automaton::from_words(&FiniteLanguage::parse(&sigma, &["a", "b", "a b"])?),
        spec: Automaton::from_words(&FiniteLanguage::parse(&sigma, &["a b"])?),
        observed: vec![Alphabet::from_names(&["a"])?, Alphabet::from_names(&["b"])?],
        fusion: FusionRule::Conjunctive,
    };
    let c = obs_to_con(&o)?;
    println!("L' = {}", words(&c.plant));
    println!("K' = {}", words(&c.spec));
    println!("agents control {:?}", c.controllable.iter().map(|a| a.to_string()).collect::<Vec<_>>());

    let report = verify_obs_to_con(&c, &o);
    for ob in &report.obligations {
        println!("  [{}] {}: {}", if ob.holds { "ok" } else { "FAIL" }, ob.name, ob.detail);
    }

    let members = con_to_obs(&c)?;
    let back = &members[0].instance;
    println!("back again: plant {}, spec {}", words(&back.plant), words(&back.spec));

    for fusion in FusionRule::ALL {
        let direct = solve_obs(&o.with_fusion(fusion), None)?;
        let via = solve_con(&c.with_fusion(fusion), None)?;
        println!("{fusion:<13} obs {:<11} con {}", direct.verdict.name(), via.overall.verdict.name());
    }
    Ok(())
}

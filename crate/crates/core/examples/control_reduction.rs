//! Control problems split into one observation problem per controllable event.
//!
//! Run with `cargo run --example control_reduction`.

use des_equiv::problems::is_controllable;
use des_equiv::reductions::{con_to_obs, control_sublanguages};
use des_equiv::solvers::solve_con;
use des_equiv::{Alphabet, Automaton, ConInstance, FiniteLanguage, FusionRule, Symbol};

fn pr(sigma: &Alphabet, words: &[&str]) -> des_equiv::Result<Automaton> {
    Ok(Automaton::from_words(&FiniteLanguage::parse(sigma, words)?).prefix_closure())
}

fn words(a: &Automaton) -> String {
    let w: Vec<String> = a.enumerate_upto(6).iter().map(|w| w.to_string()).collect();
    format!("{{{}}}", w.join(", "))
}

fn main() -> des_equiv::Result<()> {
    let sigma = Alphabet::from_names(&["a", "b"])?;
    let b = Symbol::new("b")?;
    let c = ConInstance {
        plant: pr(&sigma, &["a b", "b b"])?,
        spec: pr(&sigma, &["a b"])?,
        observed: vec![Alphabet::empty(), Alphabet::from_names(&["a"])?],
        controllable: vec![Alphabet::from_names(&["b"])?, Alphabet::from_names(&["b"])?],
        fusion: FusionRule::Disjunctive,
    };
    println!("L = {}, K = {}", words(&c.plant), words(&c.spec));
    println!("controllable with a uncontrollable: {}", is_controllable(&c.plant, &c.spec, &c.uncontrollable_events())?.is_none());

    let (l_b, k_b) = control_sublanguages(&c, &b)?;
    println!("L_b = {} (b is possible), K_b = {} (b is allowed)", words(&l_b), words(&k_b));

    for m in con_to_obs(&c)? {
        println!("event {}: agents {:?}, plant {}, spec {}", m.event, m.agents, words(&m.instance.plant), words(&m.instance.spec));
    }

    let r = solve_con(&c, None)?;
    println!("two agents, one sees a: {}", r.overall.verdict.name());

    let blind = ConInstance {
        observed: vec![Alphabet::empty()],
        controllable: vec![Alphabet::from_names(&["b"])?],
        ..c
    };
    let r = solve_con(&blind, None)?;
    let witness: Vec<String> = r.overall.witness.iter().map(|w| w.to_string()).collect();
    println!(
        "one blind agent: {} on event {} [{}]",
        r.overall.verdict.name(),
        r.failing_event.map(|e| e.to_string()).unwrap_or_default(),
        witness.join(", ")
    );
    Ok(())
}

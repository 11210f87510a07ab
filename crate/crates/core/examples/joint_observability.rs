//! Decentralized observation under the three fusion rules.
//!
//! Run with `cargo run --example joint_observability`.

use des_equiv::solvers::{solve_obs, synthesize_conjunctive};
use des_equiv::{Alphabet, Automaton, FiniteLanguage, FusionRule, ObsInstance};

fn lang(sigma: &Alphabet, words: &[&str]) -> des_equiv::Result<Automaton> {
    Ok(Automaton::from_words(&FiniteLanguage::parse(sigma, words)?))
}

fn report(title: &str, o: &ObsInstance) -> des_equiv::Result<()> {
    println!("{title}");
    for fusion in FusionRule::ALL {
        let r = solve_obs(&o.with_fusion(fusion), None)?;
        let witness: Vec<String> = r.witness.iter().map(|w| w.to_string()).collect();
        println!("  {fusion:<13} {:<12} [{}] via {}", r.verdict.name(), witness.join(", "), r.method);
    }
    Ok(())
}

fn main() -> des_equiv::Result<()> {
    let sigma = Alphabet::from_names(&["a", "b"])?;
    let agents = vec![Alphabet::from_names(&["a"])?, Alphabet::from_names(&["b"])?];

    // Each agent sees one letter; ab and ba look the same to both.
    let swapped = ObsInstance {
        plant: lang(&sigma, &["a b", "b a"])?,
        spec: lang(&sigma, &["a b"])?,
        observed: agents.clone(),
        fusion: FusionRule::Unrestricted,
    };
    report("L = {ab, ba}, K = {ab}", &swapped)?;

    let singles = ObsInstance {
        plant: lang(&sigma, &["a", "b", "a b"])?,
        spec: lang(&sigma, &["a", "b"])?,
        ..swapped.clone()
    };
    report("L = {a, b, ab}, K = {a, b}", &singles)?;

    let pair = ObsInstance { spec: lang(&sigma, &["a b"])?, ..singles };
    report("L = {a, b, ab}, K = {ab}", &pair)?;

    let observers = synthesize_conjunctive(&pair)?;
    println!("local observers for the conjunctive case:");
    for (i, f) in observers.iter().enumerate() {
        let accepted: Vec<String> = f.enumerate_upto(3).iter().map(|w| w.to_string()).collect();
        println!("  agent {i} says yes on {{{}}}", accepted.join(", "));
    }
    Ok(())
}

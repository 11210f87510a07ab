//! Diagnosis problems and their observation counterparts.
//!
//! Run with `cargo run --example diagnosis_reduction`.

use des_equiv::problems::positive_for_m_steps;
use des_equiv::reductions::{dx_to_obs, obs_to_dx};
use des_equiv::solvers::{check_dx_direct, solve_dx, solve_obs};
use des_equiv::{Alphabet, Automaton, DxInstance, FiniteLanguage, FusionRule, ObsInstance, Symbol};

fn words(a: &Automaton) -> String {
    let w: Vec<String> = a.enumerate_upto(6).iter().map(|w| w.to_string()).collect();
    format!("{{{}}}", w.join(", "))
}

fn main() -> des_equiv::Result<()> {
    let sigma = Alphabet::from_names(&["f", "a", "b"])?;
    let plant = Automaton::from_words(&FiniteLanguage::parse(&sigma, &["f a b", "b a"])?).prefix_closure();
    let d = DxInstance {
        plant,
        observed: vec![Alphabet::from_names(&["a", "b"])?],
        fault: Symbol::new("f")?,
        delay: 1,
        fusion: FusionRule::Unrestricted,
    };

    println!("plant {}", words(&d.plant));
    for delay in 0..4 {
        let flagged = positive_for_m_steps(&DxInstance { delay, ..d.clone() })?;
        println!("  must flag within {delay} steps: {}", words(&flagged));
    }

    let o = dx_to_obs(&d)?;
    println!("\nas an observation problem: K = {}", words(&o.spec));
    println!("solve_dx:        {}", solve_dx(&d, None)?.verdict.name());
    println!("direct checker:  {}", check_dx_direct(&d)?.verdict.name());

    let blind = DxInstance { observed: vec![Alphabet::from_names(&["a"])?], ..d.clone() };
    let r = solve_dx(&blind, None)?;
    let witness: Vec<String> = r.witness.iter().map(|w| w.to_string()).collect();
    println!("observing only a: {} [{}]", r.verdict.name(), witness.join(", "));

    // The other direction: flag exactly the strings of K, with no delay.
    let ab = Alphabet::from_names(&["a", "b"])?;
    let obs = ObsInstance {
        plant: Automaton::from_words(&FiniteLanguage::parse(&ab, &["a b", "b a"])?),
        spec: Automaton::from_words(&FiniteLanguage::parse(&ab, &["a b"])?),
        observed: vec![Alphabet::from_names(&["a"])?, Alphabet::from_names(&["b"])?],
        fusion: FusionRule::Unrestricted,
    };
    let back = obs_to_dx(&obs)?;
    println!("\nobs_to_dx plant {} with fault {} and delay {}", words(&back.plant), back.fault, back.delay);
    println!(
        "verdicts: obs {}, dx {}",
        solve_obs(&obs, None)?.verdict.name(),
        solve_dx(&back, None)?.verdict.name()
    );
    Ok(())
}

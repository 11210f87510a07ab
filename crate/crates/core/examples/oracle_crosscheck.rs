//! Random instances checked against the exhaustive oracle.
//!
//! Run with `cargo run --release --example oracle_crosscheck -- 500`.

use des_equiv::oracle::{oracle_solve_obs, DEFAULT_BUDGET};
use des_equiv::solvers::solve_obs;
use des_equiv::{Alphabet, Automaton, Error, FiniteLanguage, FusionRule, ObsInstance, Symbol, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

fn random_words(rng: &mut StdRng, sigma: &Alphabet) -> Vec<Word> {
    (0..rng.gen_range(1..=6))
        .map(|_| {
            let len = rng.gen_range(0..=3);
            Word::new((0..len).map(|_| sigma.get(rng.gen_range(0..sigma.len())).clone()).collect())
        })
        .collect()
}

fn subset(rng: &mut StdRng, sigma: &Alphabet) -> Alphabet {
    let picked: Vec<Symbol> = sigma.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
    Alphabet::new(picked).expect("subset of a valid alphabet")
}

fn main() -> des_equiv::Result<()> {
    let rounds: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(200);
    let mut rng = StdRng::seed_from_u64(7);
    let sigma = Alphabet::from_names(&["a", "b", "c"])?;
    let (mut agree, mut skipped) = (0, 0);
    for _ in 0..rounds {
        let words = random_words(&mut rng, &sigma);
        let spec_words: Vec<Word> = words.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect();
        let plant = FiniteLanguage::new(sigma.clone(), words)?;
        let spec = FiniteLanguage::new(sigma.clone(), spec_words)?;
        let observed: Vec<Alphabet> = (0..rng.gen_range(1..=3)).map(|_| subset(&mut rng, &sigma)).collect();
        let fusion = FusionRule::ALL[rng.gen_range(0..3)];
        let o = ObsInstance {
            plant: Automaton::from_words(&plant),
            spec: Automaton::from_words(&spec),
            observed: observed.clone(),
            fusion,
        };
        let oracle = match oracle_solve_obs(&plant, &spec, &observed, fusion, DEFAULT_BUDGET) {
            Ok(r) => r,
            Err(Error::OracleBudget { .. }) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        let solver = solve_obs(&o, None)?;
        if solver.verdict == oracle.verdict {
            agree += 1;
        } else {
            println!("disagreement on {o:?}: solver {:?}, oracle {:?}", solver.verdict, oracle.verdict);
        }
    }
    println!("{agree}/{} agree, {skipped} over the oracle budget", rounds - skipped);
    Ok(())
}

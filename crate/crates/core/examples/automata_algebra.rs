//! Regular-language operations on small automata.
//!
//! Run with `cargo run --example automata_algebra`.

use des_equiv::{Alphabet, Automaton, FiniteLanguage, Symbol};

fn show(label: &str, a: &Automaton) {
    let all = a.enumerate_upto(4);
    let words: Vec<String> = all.iter().take(8).map(|w| w.to_string()).collect();
    let tail = if a.is_finite() && all.len() <= 8 { "" } else { ", ..." };
    println!("{label:<24} {{{}{tail}}}", words.join(", "));
}

fn main() -> des_equiv::Result<()> {
    let sigma = Alphabet::from_names(&["a", "b"])?;
    let a = Symbol::new("a")?;
    let b = Symbol::new("b")?;

    // (ab)* as an explicit two-state automaton.
    let loop_ab = Automaton::from_transitions(
        sigma.clone(),
        &["even", "odd"],
        "even",
        &["even"],
        &[("even", a.clone(), "odd"), ("odd", b.clone(), "even")],
    )?;
    let words = Automaton::from_words(&FiniteLanguage::parse(&sigma, &["a b", "b a", "a b a b a"])?);

    show("(ab)*", &loop_ab);
    show("finite", &words);
    show("intersection", &loop_ab.intersect(&words)?);
    show("union", &loop_ab.union(&words)?);
    show("finite minus (ab)*", &words.difference(&loop_ab)?);
    show("prefix closure", &words.prefix_closure());

    let g = sigma.fresh("#g");
    show("finite . #g", &words.concat_letter(&g));

    let only_a = Alphabet::from_names(&["a"])?;
    let projected = loop_ab.project(&only_a)?;
    show("P_a((ab)*)", &projected);
    show("P_a^-1(P_a((ab)*))", &projected.inverse_project(&sigma)?);

    let minimal = loop_ab.union(&loop_ab)?.minimize();
    println!("\n(ab)* needs {} states after minimization", minimal.num_states());
    println!("(ab)* finite: {}, finite language finite: {}", loop_ab.is_finite(), words.is_finite());
    if let Some(w) = words.distinguishing_word(&loop_ab)? {
        println!("shortest word telling them apart: {w}");
    }
    Ok(())
}

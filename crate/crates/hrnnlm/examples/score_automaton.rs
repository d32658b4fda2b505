//! Score strings under the bundled probabilistic automata and audit how much
//! probability mass the first few string lengths carry.
//!
//! ```bash
//! cargo run --example score_automaton
//! ```

use hrnnlm::verify::{mass_report, Scorer};
use hrnnlm::wfsa::{fixtures, Symbol};

fn main() -> hrnnlm::Result<()> {
    for (name, a) in fixtures() {
        println!("== {name} ==");
        println!(
            "states {}, symbols {:?}, deterministic {}, probabilistic {}",
            a.n_states(),
            a.alphabet().names(),
            a.is_deterministic(),
            a.is_probabilistic(1e-9),
        );

        // A few short strings and their stringsums.
        let strings = ["", "a", "b", "a a", "a b a", "b b b"];
        for s in strings {
            let symbols: Vec<Symbol> = s
                .split_whitespace()
                .filter_map(|n| a.alphabet().get(n))
                .collect();
            if symbols.len() != s.split_whitespace().count() {
                continue; // symbol not in this fixture's alphabet
            }
            println!("  p({s:7}) = {:.6}", a.stringsum(&symbols)?);
        }

        // Total mass per length; a proper LM never exceeds 1.
        let report = mass_report(&a as &dyn Scorer, 8)?;
        let total = report.cumulative.last().unwrap();
        println!("  mass by length: {:?}", report
            .per_len
            .iter()
            .map(|m| (m * 1e4).round() / 1e4)
            .collect::<Vec<_>>());
        println!("  cumulative through length 8: {total:.6}\n");
    }
    Ok(())
}

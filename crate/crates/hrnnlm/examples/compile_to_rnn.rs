//! Compile a deterministic probabilistic automaton into a Heaviside Elman
//! RNN language model of width |Σ||Q| and verify weak equivalence by brute
//! force.
//!
//! ```bash
//! cargo run --example compile_to_rnn
//! ```

use hrnnlm::hrnn::Projection;
use hrnnlm::minsky::build_minsky;
use hrnnlm::verify::{brute_equiv, Scorer};
use hrnnlm::wfsa::{minsky_example, Symbol};

fn main() -> hrnnlm::Result<()> {
    let a = minsky_example();
    println!(
        "automaton: {} states over {:?}, {} transitions",
        a.n_states(),
        a.alphabet().names(),
        a.transitions().len()
    );

    for projection in [Projection::SoftmaxExt, Projection::Sparsemax] {
        let lm = build_minsky(&a, projection)?;
        println!("\n-- {} variant --", projection.name());
        println!("hidden width D = {} (one unit per state-symbol pair)", lm.d);

        // The hidden state walks the automaton: reading b from the start
        // state lands exactly on the unit for (q2, b).
        let h1 = lm.step(&lm.h0, Symbol(1))?;
        let active: Vec<usize> =
            h1.iter().enumerate().filter(|(_, &b)| b == 1).map(|(i, _)| i).collect();
        println!("after reading b the active unit is {active:?}");

        // String probabilities agree with the automaton's stringsums.
        let p = lm.score_string(&[Symbol(1)])?;
        println!("p(b) = {p} (stringsum {})", a.stringsum(&[Symbol(1)])?);

        let report = brute_equiv(&a as &dyn Scorer, &lm as &dyn Scorer, 8, 1e-9)?;
        println!(
            "brute-force equivalence over {} strings: pass = {}, max diff = {:.3e}",
            report.n_checked, report.pass, report.max_abs_diff
        );
    }
    Ok(())
}

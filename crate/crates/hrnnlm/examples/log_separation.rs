//! Rewrite a deterministic FSA so any ordered state pair carries at most one
//! symbol, the precondition for logarithmic symbol encodings.
//!
//! ```bash
//! cargo run --example log_separation
//! ```

use hrnnlm::separate::separate;
use hrnnlm::verify::for_each_string;
use hrnnlm::wfsa::{gen_a_n, Alphabet, Symbol, Wfsa};

fn main() -> hrnnlm::Result<()> {
    // The three-state family where all but one symbol funnel into the same
    // state: many parallel edges between one state pair, hence not
    // separable.
    let weighted = gen_a_n(6)?;
    println!(
        "family over {} symbols: log-separable = {}",
        weighted.alphabet().len(),
        weighted.is_log_separable()
    );

    // Separation is defined on the unweighted transition structure.
    let mut a = Wfsa::new(weighted.alphabet().clone(), weighted.n_states());
    a.set_initial(0, 1.0);
    for q in 0..weighted.n_states() {
        if weighted.final_weight(q) != 0.0 {
            a.set_final(q, 1.0);
        }
    }
    for t in weighted.transitions() {
        a.add_transition(t.src, t.sym, 1.0, t.dst);
    }

    let sep = separate(&a)?;
    println!(
        "separated: {} states (bound |Q||Σ|+1 = {}), log-separable = {}",
        sep.n_states(),
        a.n_states() * a.alphabet().len() + 1,
        sep.is_log_separable()
    );

    // The language is untouched.
    let mut all_agree = true;
    for len in 0..=4usize {
        for_each_string(a.alphabet().len(), len, |y| {
            all_agree &= a.accepts(y) == sep.accepts(y);
            Ok(())
        })?;
    }
    println!("membership agrees on every string up to length 4: {all_agree}");

    // A pair with two parallel symbols, before and after.
    let mut parallel = Wfsa::new(Alphabet::from_names(["a", "b"])?, 2);
    parallel.set_initial(0, 1.0);
    parallel.set_final(1, 1.0);
    parallel.add_transition(0, Symbol(0), 1.0, 1);
    parallel.add_transition(0, Symbol(1), 1.0, 1);
    let sep = separate(&parallel)?;
    println!(
        "\nparallel-edge pair: separable before = {}, after = {} ({} states)",
        parallel.is_log_separable(),
        sep.is_log_separable(),
        sep.n_states()
    );
    Ok(())
}

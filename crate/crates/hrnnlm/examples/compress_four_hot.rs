//! Encode an unweighted deterministic FSA in fourth-root space: four-hot
//! digit codes under a searched state permutation, non-decreasing matrix
//! covers, and equality-testing neuron pairs.
//!
//! ```bash
//! cargo run --example compress_four_hot
//! ```

use hrnnlm::compress::{build_indyk, build_indyk_with_perm, simulate_net, FourHotCode, NetCode};
use hrnnlm::verify::for_each_string;
use hrnnlm::wfsa::{gen_random_complete_fsa, Symbol};

fn main() -> hrnnlm::Result<()> {
    let a = gen_random_complete_fsa(23, 16, 2);
    let code = FourHotCode::identity(a.n_states());
    println!(
        "automaton: {} states over {:?}; four-hot radix r = {}",
        a.n_states(),
        a.alphabet().names(),
        code.r
    );
    println!("digits of state 5 under the identity permutation: {:?}", code.encode(5));

    // The permutation decides how cheaply the parent matrices decompose;
    // sample a few and keep the best.
    let identity = build_indyk_with_perm(&a, (0..a.n_states()).collect())?;
    let searched = build_indyk(&a, 7, 32)?;
    println!(
        "\nidentity permutation: {} units; best of 32 seeded tries: {} units",
        identity.size_report().total_units,
        searched.size_report().total_units,
    );
    if let NetCode::FourHot(best) = &searched.code {
        println!("winning permutation: {:?}", best.perm());
    }
    println!("\n{}", searched.size_report().render());

    let mut checked = 0usize;
    let mut agree = true;
    for len in 0..=6usize {
        for_each_string(a.alphabet().len(), len, |y| {
            let mut q = a.single_initial().unwrap();
            let mut want = vec![q];
            for &s in y {
                q = a.successor(q, s).unwrap().dst;
                want.push(q);
            }
            agree &= simulate_net(&searched, y)? == want;
            checked += 1;
            Ok(())
        })?;
    }
    println!("trajectories agree on all {checked} strings up to length 6: {agree}");

    // The tagged four-hot data vector decodes back to the automaton state.
    let states = simulate_net(&searched, &[Symbol(0), Symbol(1), Symbol(0)])?;
    println!("trajectory on \"{} {} {}\": {states:?}",
        a.alphabet().name(Symbol(0)),
        a.alphabet().name(Symbol(1)),
        a.alphabet().name(Symbol(0)));
    Ok(())
}

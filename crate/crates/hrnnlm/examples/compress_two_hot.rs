//! Encode an unweighted deterministic FSA in square-root space: two-hot
//! state codes, parent matrices decomposed into line matrices, and a layered
//! threshold network that replays the transition function.
//!
//! ```bash
//! cargo run --example compress_two_hot
//! ```

use hrnnlm::compress::{
    build_dewdney, ceil_sqrt, classify_line, line_cover, parent_matrix, simulate_net, StateCode,
    TwoHotCode,
};
use hrnnlm::verify::for_each_string;
use hrnnlm::wfsa::{gen_random_complete_fsa, Symbol};

fn main() -> hrnnlm::Result<()> {
    let a = gen_random_complete_fsa(11, 12, 2);
    let code = StateCode::TwoHot(TwoHotCode::new(a.n_states()));
    println!(
        "automaton: {} states, {} symbols; two-hot code over s = {}",
        a.n_states(),
        a.alphabet().len(),
        code.matrix_dim()
    );

    // Peek at one component-activating matrix and its line cover.
    let m = parent_matrix(&a, &code, 0, 0, Symbol(0))?;
    let cover = line_cover(&m);
    println!(
        "parent matrix (component 0 = 0, symbol {}): {} ones, covered by {} lines (bound {})",
        a.alphabet().name(Symbol(0)),
        m.popcount(),
        cover.len(),
        2 * ceil_sqrt(m.popcount()),
    );
    for part in &cover {
        println!("  line kind: {:?}, {} ones", classify_line(part).unwrap(), part.popcount());
    }

    // Build the full network and compare trajectories exhaustively.
    let net = build_dewdney(&a)?;
    println!("\n{}", net.size_report().render());

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
            agree &= simulate_net(&net, y)? == want;
            checked += 1;
            Ok(())
        })?;
    }
    println!("trajectories agree on all {checked} strings up to length 6: {agree}");
    Ok(())
}

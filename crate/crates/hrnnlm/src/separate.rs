//! Log-alphabet separation: rebuild a deterministic unweighted FSA so that
//! any ordered state pair is connected by at most one symbol.
//!
//! Every product state (q, y) remembers the symbol y that entered q; a fresh
//! initial state with no incoming transitions stands in for the original
//! initial state. Since the target (q', y') encodes its entering symbol,
//! two distinct symbols can never connect the same ordered pair. Unreachable
//! product states are pruned, which preserves determinism, separability, and
//! the accepted language while keeping outputs small.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::wfsa::{Symbol, Wfsa};

pub fn separate(a: &Wfsa) -> Result<Wfsa> {
    if !a.is_deterministic() {
        return Err(Error::Precondition("separation needs a deterministic input".into()));
    }
    let q_init = a.single_initial().expect("deterministic automaton has an initial state");
    let n_sym = a.alphabet().len();

    // State 0 is the fresh initial state; product states are interned on
    // first reach in breadth-first order.
    let mut ids: HashMap<(usize, Symbol), usize> = HashMap::new();
    let mut order: Vec<(usize, Symbol)> = Vec::new();
    let mut arcs: Vec<(usize, Symbol, usize)> = Vec::new();
    let intern = |pair: (usize, Symbol),
                      order: &mut Vec<(usize, Symbol)>,
                      ids: &mut HashMap<(usize, Symbol), usize>| {
        *ids.entry(pair).or_insert_with(|| {
            order.push(pair);
            order.len() // offset by 1 for the fresh initial state
        })
    };

    for t in a.arcs_from(q_init) {
        let dst = intern((t.dst, t.sym), &mut order, &mut ids);
        arcs.push((0, t.sym, dst));
    }
    let mut frontier = 0usize;
    while frontier < order.len() {
        let (q, _) = order[frontier];
        let src = frontier + 1;
        for t in a.arcs_from(q) {
            let dst = intern((t.dst, t.sym), &mut order, &mut ids);
            arcs.push((src, t.sym, dst));
        }
        frontier += 1;
    }

    let n_states = order.len() + 1;
    debug_assert!(n_states <= a.n_states() * n_sym + 1);
    let mut out = Wfsa::new(a.alphabet().clone(), n_states);
    out.set_initial(0, 1.0);
    if a.final_weight(q_init) != 0.0 {
        // Corner case: the original initial state accepts the empty string,
        // and nothing reaches the fresh initial state to do it for us.
        out.set_final(0, 1.0);
    }
    for (id, (q, _)) in order.iter().enumerate() {
        if a.final_weight(*q) != 0.0 {
            out.set_final(id + 1, 1.0);
        }
    }
    for (src, sym, dst) in arcs {
        out.add_transition(src, sym, 1.0, dst);
    }
    Ok(out)
}

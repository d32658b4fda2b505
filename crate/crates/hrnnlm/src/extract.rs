//! The converse direction: recover a weakly equivalent DPFSA from any
//! Heaviside Elman RNN LM.
//!
//! Every distinct reachable hidden vector becomes a state; the transition
//! weight on symbol y out of a state is the LM's conditional probability of y
//! there, and the final weight is the EOS probability. Only hidden states
//! reachable through positive-probability symbols are enumerated: unreachable
//! configurations carry no path mass, and zero-weight transitions contribute
//! nothing to any stringsum, so pruning both preserves weak equivalence.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::hrnn::HrnnLm;
use crate::wfsa::Wfsa;

/// Cap on reachable hidden states before extraction gives up; the theoretical
/// worst case is 2^D.
pub const DEFAULT_MAX_STATES: usize = 1 << 20;

pub fn extract_dpfsa(lm: &HrnnLm, max_states: usize) -> Result<Wfsa> {
    if max_states == 0 {
        return Err(Error::InvalidArgument("max_states must be at least 1".into()));
    }
    let mut ids: HashMap<Vec<u8>, usize> = HashMap::new();
    let mut order: Vec<Vec<u8>> = Vec::new();
    let mut arcs: Vec<(usize, u32, f64, usize)> = Vec::new();
    let mut finals: Vec<f64> = Vec::new();

    ids.insert(lm.h0.clone(), 0);
    order.push(lm.h0.clone());
    let mut frontier = 0usize;
    while frontier < order.len() {
        let h = order[frontier].clone();
        let dist = lm.next_dist(&h)?;
        finals.push(dist.eos());
        for y in lm.alphabet.symbols() {
            let w = dist.sym(y);
            if w == 0.0 {
                continue;
            }
            let h_next = lm.step(&h, y)?;
            let next_id = match ids.get(&h_next) {
                Some(&id) => id,
                None => {
                    let id = order.len();
                    if id >= max_states {
                        return Err(Error::BudgetExceeded { limit: max_states });
                    }
                    ids.insert(h_next.clone(), id);
                    order.push(h_next);
                    id
                }
            };
            arcs.push((frontier, y.0, w, next_id));
        }
        frontier += 1;
    }

    let mut out = Wfsa::new(lm.alphabet.clone(), order.len());
    out.set_initial(0, 1.0);
    for (q, rho) in finals.into_iter().enumerate() {
        out.set_final(q, rho);
    }
    for (src, sym, w, dst) in arcs {
        out.add_transition(src, crate::wfsa::Symbol(sym), w, dst);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hrnn::{ExtReal, Projection};
    use crate::minsky::build_minsky;
    use crate::verify::{brute_equiv, Scorer};
    use crate::wfsa::{example_fslm, Alphabet, Symbol, DEFAULT_PROB_TOL};

    #[test]
    fn roundtrip_example_fslm() {
        let a = example_fslm();
        let lm = build_minsky(&a, Projection::SoftmaxExt).unwrap();
        let back = extract_dpfsa(&lm, DEFAULT_MAX_STATES).unwrap();
        assert!(back.is_deterministic());
        assert!(back.is_probabilistic(DEFAULT_PROB_TOL));
        let report = brute_equiv(&a as &dyn Scorer, &back as &dyn Scorer, 8, 1e-9).unwrap();
        assert!(report.pass, "max diff {}", report.max_abs_diff);
        // Reachable one-hot states are a subset of Q x Σ.
        assert!(back.n_states() <= a.n_states() * a.alphabet().len());
    }

    #[test]
    fn constant_recurrence_has_one_state() {
        // D = 1, U = V = 0, b = 0, h0 = [0]: the zero vector maps to itself,
        // so the LM is a single state with the fixed h0 distribution on every
        // self-loop.
        let alphabet = Alphabet::from_names(["a"]).unwrap();
        let lm = HrnnLm::new(
            alphabet,
            1,
            vec![0.0],
            vec![0.0],
            vec![0.0],
            vec![0],
            vec![ExtReal::Finite(0.3), ExtReal::Finite(0.9)],
            Projection::SoftmaxExt,
        )
        .unwrap();
        let a = extract_dpfsa(&lm, DEFAULT_MAX_STATES).unwrap();
        assert_eq!(a.n_states(), 1);
        assert_eq!(a.transitions().len(), 1);
        assert_eq!(a.transitions()[0].dst, 0);
        let report = brute_equiv(&lm as &dyn Scorer, &a as &dyn Scorer, 8, 1e-9).unwrap();
        assert!(report.pass);
    }

    #[test]
    fn budget_guard_fires() {
        let a = example_fslm();
        let lm = build_minsky(&a, Projection::SoftmaxExt).unwrap();
        assert!(matches!(
            extract_dpfsa(&lm, 2),
            Err(Error::BudgetExceeded { limit: 2 })
        ));
    }

    #[test]
    fn extraction_only_visits_reachable_states() {
        // Compiled one-hot LMs have 2^D configurations but only a handful are
        // reachable; the budget of |Σ||Q| + 1 must never trip.
        let a = crate::wfsa::gen_random_dpfsa(11, 5, 3);
        let lm = build_minsky(&a, Projection::SoftmaxExt).unwrap();
        let bound = a.n_states() * a.alphabet().len() + 1;
        let back = extract_dpfsa(&lm, bound).unwrap();
        assert!(back.n_states() <= bound);
    }

    #[test]
    fn degenerate_distribution_surfaces() {
        let alphabet = Alphabet::from_names(["a"]).unwrap();
        let lm = HrnnLm::new(
            alphabet,
            1,
            vec![0.0],
            vec![0.0],
            vec![0.0],
            vec![1],
            vec![ExtReal::NegInf, ExtReal::NegInf],
            Projection::SoftmaxExt,
        )
        .unwrap();
        assert!(matches!(
            extract_dpfsa(&lm, 16),
            Err(Error::DegenerateDistribution)
        ));
        let _ = Symbol(0);
    }
}

//! Four-hot compressed encoding of a complete deterministic FSA into a
//! layered Heaviside network.
//!
//! Component-activating matrices are built over the four-hot code of a
//! permuted state set and covered by non-decreasing matrices, detected by
//! integer-equality neuron pairs. Per consumed symbol the pipeline runs five
//! affine+Heaviside sublayers:
//!   1. four-hot to two-hot conversion (pairwise conjunctions of the digit
//!      cells);
//!   2. the two strict-inequality neurons of every non-decreasing layer;
//!   3. conjunction of each neuron pair (the equality test);
//!   4. disjunction of each cover's layers into the 4|Σ|r candidate cells;
//!   5. conjunction with the input symbol's one-hot.
//!
//! The permutation determines how small the covers come out; existence of a
//! good one is probabilistic, so the builder samples seeded permutations and
//! keeps the cheapest network (ties to the earliest try).

use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::wfsa::Wfsa;

use super::binmat::nondecreasing_cover;
use super::codes::{parent_matrix, FourHotCode, StateCode};
use super::detect::detect_nondecreasing;
use super::net::{NetCode, Sublayer, ThresholdNet};

pub const DEFAULT_MAX_TRIES: usize = 64;

pub fn build_indyk(a: &Wfsa, seed: u64, max_tries: usize) -> Result<ThresholdNet> {
    if a.alphabet().is_empty() {
        return Err(Error::Precondition("automaton has an empty alphabet".into()));
    }
    if !a.is_deterministic() {
        return Err(Error::Precondition("input automaton is not deterministic".into()));
    }
    if !a.is_complete() {
        return Err(Error::Precondition(
            "four-hot compression needs a complete transition function".into(),
        ));
    }
    if max_tries == 0 {
        return Err(Error::InvalidArgument("need at least one permutation try".into()));
    }

    let n = a.n_states();
    let mut rng = SplitMix64::new(seed);
    let mut best: Option<(usize, ThresholdNet)> = None;
    for attempt in 0..max_tries {
        let perm: Vec<usize> = if attempt == 0 {
            (0..n).collect()
        } else {
            let mut p: Vec<usize> = (0..n).collect();
            rng.shuffle(&mut p);
            p
        };
        let net = build_indyk_with_perm(a, perm)?;
        let units = net.size_report().total_units;
        if best.as_ref().is_none_or(|(b, _)| units < *b) {
            best = Some((units, net));
        }
    }
    Ok(best.expect("at least one try").1)
}

/// Deterministic build for a fixed permutation of the state set.
pub fn build_indyk_with_perm(a: &Wfsa, perm: Vec<usize>) -> Result<ThresholdNet> {
    if !a.is_deterministic() || !a.is_complete() {
        return Err(Error::Precondition("needs a complete deterministic input".into()));
    }
    let n_sym = a.alphabet().len();
    let code = FourHotCode::new(a.n_states(), perm)?;
    let r = code.r;
    let s2 = r * r;
    let state_code = StateCode::FourHot(code.clone());
    let data_width = 4 * n_sym * r;

    // Non-decreasing covers of all 4|Σ|r component-activating matrices.
    let mut covers = Vec::with_capacity(data_width);
    for j in 0..4 {
        for y in a.alphabet().symbols() {
            for k in 0..r {
                let m = parent_matrix(a, &state_code, j, k, y)?;
                covers.push(nondecreasing_cover(&m));
            }
        }
    }

    // Layer 1: four-hot -> two-hot. First s2 units one-hot the high half of
    // perm(q) (digits 2 and 3), next s2 units the low half (digits 0 and 1).
    let cell = |j: usize, y: usize, k: usize| (j * n_sym + y) * r + k;
    let mut l1 = Sublayer::zeros(data_width, 2 * s2, false, n_sym);
    for v in 0..s2 {
        let (lo, hi) = (v % r, v / r);
        for y in 0..n_sym {
            *l1.w(v, cell(2, y, lo)) += 1;
            *l1.w(v, cell(3, y, hi)) += 1;
            *l1.w(s2 + v, cell(0, y, lo)) += 1;
            *l1.w(s2 + v, cell(1, y, hi)) += 1;
        }
        l1.bias[v] = -1;
        l1.bias[s2 + v] = -1;
    }

    // Layer 2: inequality neuron pairs for every non-decreasing layer.
    let n_layers: usize = covers.iter().map(|c| c.len()).sum();
    let mut l2 = Sublayer::zeros(l1.n_out, (2 * n_layers).max(1), false, n_sym);
    // Layer 3: the equality conjunctions.
    let mut l3 = Sublayer::zeros(l2.n_out, n_layers.max(1), false, n_sym);
    let mut pair_next = 0usize;
    let mut and_next = 0usize;
    let mut cell_units: Vec<Vec<usize>> = Vec::with_capacity(data_width);
    for cover in &covers {
        let mut units = Vec::with_capacity(cover.len());
        for layer in cover {
            let (ge, le) = detect_nondecreasing(layer)?;
            for (slot, neuron) in [(pair_next, &ge), (pair_next + 1, &le)] {
                for i in 0..s2 {
                    *l2.w(slot, i) = neuron.w_row[i];
                    *l2.w(slot, s2 + i) = neuron.w_col[i];
                }
                l2.bias[slot] = neuron.bias;
            }
            *l3.w(and_next, pair_next) = 1;
            *l3.w(and_next, pair_next + 1) = 1;
            l3.bias[and_next] = -1;
            units.push(and_next);
            pair_next += 2;
            and_next += 1;
        }
        cell_units.push(units);
    }

    // Layer 4: disjunction into candidate cells.
    let mut l4 = Sublayer::zeros(l3.n_out, data_width, false, n_sym);
    for (c, units) in cell_units.iter().enumerate() {
        for &u in units {
            *l4.w(c, u) = 1;
        }
    }

    // Layer 5: conjunction with the input symbol.
    let mut l5 = Sublayer::zeros(data_width, data_width, true, n_sym);
    for j in 0..4 {
        for y in 0..n_sym {
            for k in 0..r {
                let c = cell(j, y, k);
                *l5.w(c, c) = 1;
                *l5.sw(c, y, n_sym) = 1;
                l5.bias[c] = -1;
            }
        }
    }

    let init_state = a
        .single_initial()
        .ok_or_else(|| Error::Precondition("no unique initial state".into()))?;
    let finals = (0..a.n_states()).map(|q| a.final_weight(q) != 0.0).collect();

    Ok(ThresholdNet {
        alphabet: a.alphabet().clone(),
        n_states: a.n_states(),
        code: NetCode::FourHot(code),
        layers: vec![l1, l2, l3, l4, l5],
        init_state,
        finals,
        method: "indyk",
    })
}

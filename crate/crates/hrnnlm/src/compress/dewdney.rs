//! Two-hot compressed encoding of a complete deterministic FSA into a
//! layered Heaviside network.
//!
//! Per consumed symbol the pipeline runs four affine+Heaviside sublayers:
//!   1. transversal factor neurons and row/column line neurons, evaluated on
//!      the two-hot code of the current state;
//!   2. conjunction of the factor pairs into transversal activations
//!      (row/column activations pass through);
//!   3. disjunction of each cover's line activations into the 2|Σ|s
//!      candidate cells, one per (component, symbol, value);
//!   4. conjunction with the input symbol's one-hot, leaving the two-hot
//!      code of the successor state tagged by the symbol just read.

use crate::error::{Error, Result};
use crate::wfsa::Wfsa;

use super::binmat::line_cover;
use super::codes::{parent_matrix, StateCode, TwoHotCode};
use super::detect::{detect_line, LineDetector, Neuron};
use super::net::{NetCode, Sublayer, ThresholdNet};

/// Spread a pair-input neuron over the banded data layout: the row weights
/// go to every (component 0, y, k) cell and the column weights to every
/// (component 1, y, k) cell, so the neuron sees the two-hot code no matter
/// which symbol band is active.
fn expand_pair_neuron(
    layer: &mut Sublayer,
    out: usize,
    neuron: &Neuron,
    n_sym: usize,
    range: usize,
) {
    let cell = |j: usize, y: usize, k: usize| (j * n_sym + y) * range + k;
    for y in 0..n_sym {
        for k in 0..range {
            *layer.w(out, cell(0, y, k)) += neuron.w_row[k];
            *layer.w(out, cell(1, y, k)) += neuron.w_col[k];
        }
    }
    layer.bias[out] = neuron.bias;
}

pub fn build_dewdney(a: &Wfsa) -> Result<ThresholdNet> {
    if a.alphabet().is_empty() {
        return Err(Error::Precondition("automaton has an empty alphabet".into()));
    }
    if !a.is_deterministic() {
        return Err(Error::Precondition("input automaton is not deterministic".into()));
    }
    if !a.is_complete() {
        return Err(Error::Precondition(
            "two-hot compression needs a complete transition function".into(),
        ));
    }
    let n_sym = a.alphabet().len();
    let code = TwoHotCode::new(a.n_states());
    let s = code.s;
    let state_code = StateCode::TwoHot(code.clone());
    let data_width = 2 * n_sym * s;

    // Line covers of all 2|Σ|s component-activating matrices, with their
    // detectors.
    struct CellPlan {
        lines: Vec<LineDetector>,
    }
    let mut plans = Vec::with_capacity(data_width);
    for j in 0..2 {
        for y in a.alphabet().symbols() {
            for k in 0..s {
                let m = parent_matrix(a, &state_code, j, k, y)?;
                let lines = line_cover(&m)
                    .iter()
                    .map(detect_line)
                    .collect::<Result<Vec<_>>>()?;
                plans.push(CellPlan { lines });
            }
        }
    }

    // Layer 1: all factor/line neurons over the data sub-vector.
    let n_l1: usize = plans.iter().flat_map(|p| &p.lines).map(|d| d.n_neurons()).sum();
    let mut l1 = Sublayer::zeros(data_width, n_l1.max(1), false, n_sym);
    // Layer 2: one unit per line (conjoined factors or pass-through).
    let n_lines: usize = plans.iter().map(|p| p.lines.len()).sum();
    let mut l2 = Sublayer::zeros(l1.n_out, n_lines.max(1), false, n_sym);

    let mut l1_next = 0usize;
    let mut l2_next = 0usize;
    // Per candidate cell: the l2 unit indices of its cover's lines.
    let mut cell_lines: Vec<Vec<usize>> = Vec::with_capacity(data_width);
    for plan in &plans {
        let mut units = Vec::with_capacity(plan.lines.len());
        for det in &plan.lines {
            match det {
                LineDetector::Single(n) => {
                    expand_pair_neuron(&mut l1, l1_next, n, n_sym, s);
                    *l2.w(l2_next, l1_next) = 1;
                    l2.bias[l2_next] = 0;
                    l1_next += 1;
                }
                LineDetector::Pair(p, q) => {
                    expand_pair_neuron(&mut l1, l1_next, p, n_sym, s);
                    expand_pair_neuron(&mut l1, l1_next + 1, q, n_sym, s);
                    *l2.w(l2_next, l1_next) = 1;
                    *l2.w(l2_next, l1_next + 1) = 1;
                    l2.bias[l2_next] = -1;
                    l1_next += 2;
                }
            }
            units.push(l2_next);
            l2_next += 1;
        }
        cell_lines.push(units);
    }

    // Layer 3: disjunction of line activations into candidate cells.
    let mut l3 = Sublayer::zeros(l2.n_out, data_width, false, n_sym);
    for (cell, units) in cell_lines.iter().enumerate() {
        for &u in units {
            *l3.w(cell, u) = 1;
        }
    }

    // Layer 4: conjunction with the input symbol, per cell.
    let mut l4 = Sublayer::zeros(data_width, data_width, true, n_sym);
    for j in 0..2 {
        for y in 0..n_sym {
            for k in 0..s {
                let cell = (j * n_sym + y) * s + k;
                *l4.w(cell, cell) = 1;
                *l4.sw(cell, y, n_sym) = 1;
                l4.bias[cell] = -1;
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
        code: NetCode::TwoHot(code),
        layers: vec![l1, l2, l3, l4],
        init_state,
        finals,
        method: "dewdney",
    })
}

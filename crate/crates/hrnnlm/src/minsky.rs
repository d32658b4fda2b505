//! One-hot compilation of a DPFSA into a weakly equivalent Heaviside Elman
//! RNN language model of width |Σ||Q|.
//!
//! Each hidden unit stands for a (state, incoming-symbol) pair. The
//! recurrence matrix activates the representation of the current state's
//! children, the input matrix activates the states reachable by the symbol
//! just read, and the bias of -1 turns the Heaviside step into the
//! conjunction of the two, leaving exactly one unit on. The output matrix
//! carries the transition weights: probabilities directly for the sparsemax
//! variant, logs (with log 0 = -inf) for the softmax variant.

use crate::error::{Error, Result};
use crate::hrnn::{ExtReal, HrnnLm, Projection};
use crate::wfsa::{StateId, Symbol, Wfsa, DEFAULT_PROB_TOL};

/// Fixed layout of the (state, symbol) pair units: n(q, y) = q·|Σ| + m(y).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateSymbolOrdering {
    n_symbols: usize,
}

impl StateSymbolOrdering {
    pub fn new(n_symbols: usize) -> Self {
        assert!(n_symbols > 0);
        StateSymbolOrdering { n_symbols }
    }

    pub fn pair_index(&self, q: StateId, y: Symbol) -> usize {
        q * self.n_symbols + y.index()
    }

    pub fn decode(&self, idx: usize) -> (StateId, Symbol) {
        (idx / self.n_symbols, Symbol((idx % self.n_symbols) as u32))
    }

    pub fn sym_index(&self, y: Symbol) -> usize {
        y.index()
    }

    /// EOS comes after the alphabet in the output ordering.
    pub fn eos_index(&self) -> usize {
        self.n_symbols
    }
}

/// Weights and bias of a Heaviside neuron computing the conjunction of the
/// indexed bits: v_i = 1 on the set, bias -(m-1).
pub fn and_neuron(indices: &[usize], width: usize) -> Result<(Vec<f64>, f64)> {
    if indices.is_empty() {
        return Err(Error::InvalidArgument("conjunction of zero bits".into()));
    }
    if indices.iter().any(|&i| i >= width) {
        return Err(Error::InvalidArgument("index out of width".into()));
    }
    let mut w = vec![0.0; width];
    for &i in indices {
        w[i] = 1.0;
    }
    Ok((w, -((indices.len() - 1) as f64)))
}

/// Compile a deterministic probabilistic automaton into an RNN LM with
/// hidden width |Σ||Q|.
pub fn build_minsky(a: &Wfsa, projection: Projection) -> Result<HrnnLm> {
    if a.alphabet().is_empty() {
        return Err(Error::Precondition("automaton has an empty alphabet".into()));
    }
    if !a.is_deterministic() {
        return Err(Error::Precondition("input automaton is not deterministic".into()));
    }
    if !a.is_probabilistic(DEFAULT_PROB_TOL) {
        return Err(Error::Precondition("input automaton is not probabilistic".into()));
    }
    let n_sym = a.alphabet().len();
    let n_states = a.n_states();
    let ord = StateSymbolOrdering::new(n_sym);
    let d = n_states * n_sym;

    // U[n(q', y'), n(q, y)] = 1 iff q --y'--> q'. The column is free in y, so
    // each column repeats |Σ| times.
    let mut u = vec![0.0; d * d];
    for t in a.transitions() {
        let row = ord.pair_index(t.dst, t.sym);
        for y in a.alphabet().symbols() {
            let col = ord.pair_index(t.src, y);
            u[row * d + col] = 1.0;
        }
    }

    // V[n(q', y'), m(y')] = 1 iff q' is reachable via y' from some state.
    let mut v = vec![0.0; d * n_sym];
    for t in a.transitions() {
        let row = ord.pair_index(t.dst, t.sym);
        v[row * n_sym + ord.sym_index(t.sym)] = 1.0;
    }

    let bias = vec![-1.0; d];

    // h0 = onehot(initial state, symbol 0); the incoming symbol of the
    // initial state never matters, so index 0 is as good as any.
    let q_init = a.single_initial().expect("deterministic automaton has one initial state");
    let mut h0 = vec![0u8; d];
    h0[ord.pair_index(q_init, Symbol(0))] = 1;

    // E row m̄(y') at column n(q, y) holds w(q --y'--> ·); the EOS row holds
    // ρ(q). Sparsemax stores the probabilities, softmax their logs.
    let rows = n_sym + 1;
    let mut weights = vec![0.0; rows * d];
    for q in 0..n_states {
        for y in a.alphabet().symbols() {
            let col = ord.pair_index(q, y);
            for t in a.arcs_from(q) {
                weights[ord.sym_index(t.sym) * d + col] = t.weight;
            }
            weights[ord.eos_index() * d + col] = a.final_weight(q);
        }
    }
    let e: Vec<ExtReal> = match projection {
        Projection::Sparsemax => weights.into_iter().map(ExtReal::Finite).collect(),
        Projection::SoftmaxExt => weights.into_iter().map(ExtReal::ln_weight).collect(),
    };

    HrnnLm::new(a.alphabet().clone(), d, u, v, bias, h0, e, projection)
}

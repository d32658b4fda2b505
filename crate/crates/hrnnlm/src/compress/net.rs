//! Layered Heaviside threshold network produced by the compressed
//! constructions.
//!
//! One automaton step runs a fixed pipeline of affine+Heaviside sublayers.
//! The persistent vector between steps is the data sub-vector: one cell per
//! (code component, symbol, component value), holding the code of the
//! current state tagged by the symbol it was entered with. The input
//! symbol's one-hot is injected only at the final conjunction sublayer and
//! held constant across the pipeline; everything before it is the processing
//! sub-vector.
//!
//! The network is executed layer by layer rather than flattened into a
//! single square Elman recurrence. Flattening is possible (one Elman step
//! per sublayer, with the symbol one-hot latched across the pipeline) but is
//! not performed here.

use crate::error::{Error, Result};
use crate::verify::Scorer;
use crate::wfsa::{Alphabet, StateId, Symbol};

use super::codes::{FourHotCode, TwoHotCode};

/// One affine+Heaviside sublayer. `weights` is n_out x n_in row-major over
/// the previous activation; `sym_weights` (n_out x |Σ|), when present, adds
/// the latched input-symbol one-hot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublayer {
    pub n_in: usize,
    pub n_out: usize,
    pub weights: Vec<i64>,
    pub sym_weights: Option<Vec<i64>>,
    pub bias: Vec<i64>,
}

impl Sublayer {
    pub fn zeros(n_in: usize, n_out: usize, with_sym: bool, n_sym: usize) -> Self {
        Sublayer {
            n_in,
            n_out,
            weights: vec![0; n_out * n_in],
            sym_weights: with_sym.then(|| vec![0; n_out * n_sym]),
            bias: vec![0; n_out],
        }
    }

    pub fn w(&mut self, out: usize, inp: usize) -> &mut i64 {
        &mut self.weights[out * self.n_in + inp]
    }

    pub fn sw(&mut self, out: usize, sym: usize, n_sym: usize) -> &mut i64 {
        &mut self.sym_weights.as_mut().expect("symbol weights")[out * n_sym + sym]
    }

    fn apply(&self, x: &[u8], sym: Option<(usize, usize)>) -> Vec<u8> {
        let mut out = vec![0u8; self.n_out];
        for o in 0..self.n_out {
            let mut z = self.bias[o];
            let row = &self.weights[o * self.n_in..(o + 1) * self.n_in];
            for (i, &xi) in x.iter().enumerate() {
                if xi != 0 {
                    z += row[i];
                }
            }
            if let (Some(sw), Some((sym_idx, n_sym))) = (&self.sym_weights, sym) {
                z += sw[o * n_sym + sym_idx];
            }
            out[o] = u8::from(z > 0);
        }
        out
    }
}

/// Which compressed state code the data sub-vector carries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NetCode {
    TwoHot(TwoHotCode),
    FourHot(FourHotCode),
}

impl NetCode {
    pub fn n_components(&self) -> usize {
        match self {
            NetCode::TwoHot(_) => 2,
            NetCode::FourHot(_) => 4,
        }
    }

    pub fn component_range(&self) -> usize {
        match self {
            NetCode::TwoHot(c) => c.s,
            NetCode::FourHot(c) => c.r,
        }
    }

    pub fn component(&self, q: StateId, j: usize) -> usize {
        match self {
            NetCode::TwoHot(c) => {
                let (a, b) = c.encode(q);
                [a, b][j]
            }
            NetCode::FourHot(c) => c.encode(q)[j],
        }
    }

    pub fn decode(&self, digits: &[usize]) -> Option<StateId> {
        match self {
            NetCode::TwoHot(c) => c.decode(digits[0], digits[1]),
            NetCode::FourHot(c) => c.decode(&[digits[0], digits[1], digits[2], digits[3]]),
        }
    }
}

/// Layered Heaviside network simulating a deterministic FSA's transition
/// function, plus the acceptor data (initial state, final set) needed to
/// run it as a recognizer.
#[derive(Debug, Clone, PartialEq)]
pub struct ThresholdNet {
    pub alphabet: Alphabet,
    pub n_states: usize,
    pub code: NetCode,
    pub layers: Vec<Sublayer>,
    pub init_state: StateId,
    pub finals: Vec<bool>,
    pub method: &'static str,
}

impl ThresholdNet {
    /// Width of the persistent data sub-vector:
    /// components x |Σ| x component-range.
    pub fn data_width(&self) -> usize {
        self.code.n_components() * self.alphabet.len() * self.code.component_range()
    }

    /// Flat index of data cell (component, entering-symbol, value).
    pub fn cell(&self, j: usize, y: usize, k: usize) -> usize {
        (j * self.alphabet.len() + y) * self.code.component_range() + k
    }

    /// Code of the initial state, tagged with symbol 0 as the arbitrary
    /// entering symbol.
    pub fn data_init(&self) -> Vec<u8> {
        let mut data = vec![0u8; self.data_width()];
        for j in 0..self.code.n_components() {
            let k = self.code.component(self.init_state, j);
            data[self.cell(j, 0, k)] = 1;
        }
        data
    }

    /// Run the full sublayer pipeline for one consumed symbol.
    pub fn step_data(&self, data: &[u8], y: Symbol) -> Result<Vec<u8>> {
        if y.index() >= self.alphabet.len() {
            return Err(Error::UnknownSymbol(format!("#{}", y.0)));
        }
        if data.len() != self.data_width() {
            return Err(Error::ShapeMismatch("data sub-vector width".into()));
        }
        let mut x = data.to_vec();
        for layer in &self.layers {
            x = layer.apply(&x, Some((y.index(), self.alphabet.len())));
        }
        Ok(x)
    }

    /// Recover the automaton state held in a data sub-vector. Exactly one
    /// (symbol, value) cell must be set per component, all under the same
    /// entering symbol.
    pub fn decode_state(&self, data: &[u8]) -> Result<StateId> {
        let mut digits = Vec::with_capacity(self.code.n_components());
        let mut bands = std::collections::BTreeSet::new();
        for j in 0..self.code.n_components() {
            let mut hit: Option<(usize, usize)> = None;
            for y in 0..self.alphabet.len() {
                for k in 0..self.code.component_range() {
                    if data[self.cell(j, y, k)] != 0 {
                        if hit.is_some() {
                            return Err(Error::SimulationCorrupt(format!(
                                "component {j} has more than one active cell"
                            )));
                        }
                        hit = Some((y, k));
                    }
                }
            }
            let (y, k) = hit.ok_or_else(|| {
                Error::SimulationCorrupt(format!("component {j} has no active cell"))
            })?;
            bands.insert(y);
            digits.push(k);
        }
        if bands.len() != 1 {
            return Err(Error::SimulationCorrupt(
                "components tagged with different entering symbols".into(),
            ));
        }
        self.code
            .decode(&digits)
            .ok_or_else(|| Error::SimulationCorrupt("data cells decode to no state".into()))
    }

    /// State trajectory over a string: the initial state, then the state
    /// after each consumed symbol.
    pub fn simulate(&self, y: &[Symbol]) -> Result<Vec<StateId>> {
        let mut data = self.data_init();
        let mut states = vec![self.decode_state(&data)?];
        for &sym in y {
            data = self.step_data(&data, sym)?;
            states.push(self.decode_state(&data)?);
        }
        Ok(states)
    }

    pub fn size_report(&self) -> SizeReport {
        let data_cells = self.data_width();
        let total_units: usize = self.layers.iter().map(|l| l.n_out).sum();
        SizeReport {
            method: self.method,
            data_cells,
            processing_cells: total_units - 2 * data_cells,
            sublayers: self.layers.len(),
            total_units,
        }
    }
}

/// Runs the net over a string and reads off the state after every prefix.
pub fn simulate_net(net: &ThresholdNet, y: &[Symbol]) -> Result<Vec<StateId>> {
    net.simulate(y)
}

impl Scorer for ThresholdNet {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    /// 0/1 acceptance of the underlying FSA.
    fn score(&self, y: &[Symbol]) -> Result<f64> {
        let states = self.simulate(y)?;
        Ok(if self.finals[*states.last().unwrap()] { 1.0 } else { 0.0 })
    }
}

/// Unit counts of a compressed build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeReport {
    pub method: &'static str,
    pub data_cells: usize,
    pub processing_cells: usize,
    pub sublayers: usize,
    pub total_units: usize,
}

impl SizeReport {
    pub fn render(&self) -> String {
        format!(
            "method {}\ndata_cells {}\nprocessing_cells {}\nsublayers {}\ntotal_units {}\n",
            self.method, self.data_cells, self.processing_cells, self.sublayers, self.total_units
        )
    }
}

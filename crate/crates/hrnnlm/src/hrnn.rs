//! Heaviside Elman RNN language models.
//!
//! The hidden state follows h_t = H(U h_{t-1} + V r(y_t) + b) with the strict
//! step function H(x) = 1{x > 0}, so every hidden state is a 0/1 vector. The
//! output matrix `E` lives over the reals extended with -inf; projecting
//! `E h` with softmax (over extended reals) or sparsemax yields the
//! next-symbol distribution over the alphabet plus end-of-sequence.

use crate::error::{Error, Result};
use crate::wfsa::{Alphabet, Symbol};

/// Real number extended with negative infinity. Positive infinity is
/// deliberately unrepresentable: nothing here produces it and the file
/// formats reject it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    NegInf,
}

impl std::ops::Add for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
            _ => ExtReal::NegInf,
        }
    }
}

impl ExtReal {
    /// log of a nonnegative weight, with log 0 = -inf.
    pub fn ln_weight(w: f64) -> ExtReal {
        if w == 0.0 {
            ExtReal::NegInf
        } else {
            ExtReal::Finite(w.ln())
        }
    }

    pub fn exp(self) -> f64 {
        match self {
            ExtReal::Finite(x) => x.exp(),
            ExtReal::NegInf => 0.0,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(x) => Some(x),
            ExtReal::NegInf => None,
        }
    }
}

/// Probability vector over the alphabet plus EOS; entries sum to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplexVec(Vec<f64>);

impl SimplexVec {
    fn new(p: Vec<f64>) -> Self {
        debug_assert!(p.iter().all(|&x| x >= 0.0));
        debug_assert!((p.iter().sum::<f64>() - 1.0).abs() <= 1e-12);
        SimplexVec(p)
    }

    pub fn sym(&self, y: Symbol) -> f64 {
        self.0[y.index()]
    }

    /// EOS sits at the last index.
    pub fn eos(&self) -> f64 {
        *self.0.last().unwrap()
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Which simplex projection the LM applies to `E h`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Projection {
    SoftmaxExt,
    Sparsemax,
}

impl Projection {
    pub fn name(self) -> &'static str {
        match self {
            Projection::SoftmaxExt => "softmax",
            Projection::Sparsemax => "sparsemax",
        }
    }

    pub fn from_name(s: &str) -> Result<Self> {
        match s {
            "softmax" => Ok(Projection::SoftmaxExt),
            "sparsemax" => Ok(Projection::Sparsemax),
            other => Err(Error::InvalidArgument(format!(
                "unknown projection `{other}` (expected softmax or sparsemax)"
            ))),
        }
    }
}

/// Pre-activations within this distance of 0 count as 0 before thresholding,
/// guarding against float drift in compiled networks. Exact constructions
/// land in {-2,-1,0,1,2} so this never flips an intended activation.
pub const PREACT_TOL: f64 = 1e-9;

/// Heaviside Elman RNN language model.
///
/// `u` is D×D, `v` is D×R, `e` is (|Σ|+1)×D, all row-major. The symbol
/// representation is the one-hot embedding of width R = |Σ|. Row |Σ| of `e`
/// is the EOS row.
#[derive(Debug, Clone, PartialEq)]
pub struct HrnnLm {
    pub alphabet: Alphabet,
    pub d: usize,
    pub r: usize,
    pub u: Vec<f64>,
    pub v: Vec<f64>,
    pub bias: Vec<f64>,
    pub h0: Vec<u8>,
    pub e: Vec<ExtReal>,
    pub projection: Projection,
}

impl HrnnLm {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        alphabet: Alphabet,
        d: usize,
        u: Vec<f64>,
        v: Vec<f64>,
        bias: Vec<f64>,
        h0: Vec<u8>,
        e: Vec<ExtReal>,
        projection: Projection,
    ) -> Result<Self> {
        let r = alphabet.len();
        if u.len() != d * d {
            return Err(Error::ShapeMismatch(format!("U must be {d}x{d}")));
        }
        if v.len() != d * r {
            return Err(Error::ShapeMismatch(format!("V must be {d}x{r}")));
        }
        if bias.len() != d {
            return Err(Error::ShapeMismatch(format!("b must have length {d}")));
        }
        if h0.len() != d {
            return Err(Error::ShapeMismatch(format!("h0 must have length {d}")));
        }
        if h0.iter().any(|&x| x > 1) {
            return Err(Error::InvalidArgument("h0 must be a 0/1 vector".into()));
        }
        if e.len() != (r + 1) * d {
            return Err(Error::ShapeMismatch(format!("E must be {}x{d}", r + 1)));
        }
        Ok(HrnnLm { alphabet, d, r, u, v, bias, h0, e, projection })
    }

    pub fn eos_index(&self) -> usize {
        self.r
    }

    /// One Elman step: H(U h + V r(y) + b), elementwise strict Heaviside.
    pub fn step(&self, h: &[u8], y: Symbol) -> Result<Vec<u8>> {
        if h.len() != self.d {
            return Err(Error::ShapeMismatch(format!(
                "hidden state has length {}, expected {}",
                h.len(),
                self.d
            )));
        }
        if y.index() >= self.r {
            return Err(Error::UnknownSymbol(format!("#{}", y.0)));
        }
        let mut out = vec![0u8; self.d];
        for (row, slot) in out.iter_mut().enumerate() {
            let mut z = self.bias[row];
            let urow = &self.u[row * self.d..(row + 1) * self.d];
            for (i, &hi) in h.iter().enumerate() {
                if hi != 0 {
                    z += urow[i];
                }
            }
            z += self.v[row * self.r + y.index()];
            *slot = u8::from(z > PREACT_TOL);
        }
        Ok(out)
    }

    /// E h over extended reals; a one-hot h is a plain column lookup.
    fn logits(&self, h: &[u8]) -> Result<Vec<ExtReal>> {
        if h.len() != self.d {
            return Err(Error::ShapeMismatch(format!(
                "hidden state has length {}, expected {}",
                h.len(),
                self.d
            )));
        }
        let rows = self.r + 1;
        let mut out = vec![ExtReal::Finite(0.0); rows];
        for (row, slot) in out.iter_mut().enumerate() {
            let erow = &self.e[row * self.d..(row + 1) * self.d];
            let mut acc = ExtReal::Finite(0.0);
            for (i, &hi) in h.iter().enumerate() {
                if hi != 0 {
                    acc = acc + erow[i];
                }
            }
            // Positive infinity is unrepresentable by contract; a sum of
            // finite entries overflowing into it is rejected rather than
            // propagated.
            if let ExtReal::Finite(v) = acc {
                if !v.is_finite() {
                    return Err(Error::InvalidArgument("output logit overflow".into()));
                }
            }
            *slot = acc;
        }
        Ok(out)
    }

    /// Distribution over Σ plus EOS for the current hidden state.
    pub fn next_dist(&self, h: &[u8]) -> Result<SimplexVec> {
        let logits = self.logits(h)?;
        match self.projection {
            Projection::SoftmaxExt => softmax_ext(&logits),
            Projection::Sparsemax => {
                let finite: Vec<f64> = logits
                    .iter()
                    .map(|x| {
                        x.finite().ok_or_else(|| {
                            Error::InvalidArgument(
                                "sparsemax projection needs finite scores".into(),
                            )
                        })
                    })
                    .collect::<Result<_>>()?;
                Ok(sparsemax(&finite))
            }
        }
    }

    /// Locally normalized string probability: the product of per-step symbol
    /// probabilities times the EOS probability after the last symbol. A zero
    /// factor ends scoring immediately; in compiled automata this is exactly
    /// the off-support case, and not stepping into the dead configuration
    /// keeps extraction and scoring in agreement.
    pub fn score_string(&self, y: &[Symbol]) -> Result<f64> {
        let mut h = self.h0.clone();
        let mut p = 1.0;
        for &sym in y {
            if sym.index() >= self.r {
                return Err(Error::UnknownSymbol(format!("#{}", sym.0)));
            }
            let dist = self.next_dist(&h)?;
            let f = dist.sym(sym);
            if f == 0.0 {
                return Ok(0.0);
            }
            p *= f;
            h = self.step(&h, sym)?;
        }
        Ok(p * self.next_dist(&h)?.eos())
    }
}

/// exp-normalize over extended reals: -inf entries map to exactly 0.
pub fn softmax_ext(xs: &[ExtReal]) -> Result<SimplexVec> {
    let max = xs
        .iter()
        .filter_map(|x| x.finite())
        .fold(f64::NEG_INFINITY, f64::max);
    if max == f64::NEG_INFINITY {
        return Err(Error::DegenerateDistribution);
    }
    let exps: Vec<f64> = xs
        .iter()
        .map(|x| match x {
            ExtReal::Finite(v) => (v - max).exp(),
            ExtReal::NegInf => 0.0,
        })
        .collect();
    let z: f64 = exps.iter().sum();
    Ok(SimplexVec::new(exps.into_iter().map(|e| e / z).collect()))
}

/// Euclidean projection onto the probability simplex via sort and threshold.
/// Points already on the simplex come back unchanged; ties sort by value
/// descending then index ascending.
pub fn sparsemax(xs: &[f64]) -> SimplexVec {
    assert!(!xs.is_empty());
    assert!(xs.iter().all(|x| x.is_finite()), "sparsemax needs finite input");
    let mut order: Vec<usize> = (0..xs.len()).collect();
    order.sort_by(|&i, &j| xs[j].partial_cmp(&xs[i]).unwrap().then(i.cmp(&j)));

    let mut cumsum = 0.0;
    let mut k = 0usize;
    let mut tau = 0.0;
    for (rank, &idx) in order.iter().enumerate() {
        let z = xs[idx];
        let next_sum = cumsum + z;
        let candidate_tau = (next_sum - 1.0) / (rank + 1) as f64;
        if z - candidate_tau > 0.0 {
            cumsum = next_sum;
            k = rank + 1;
            tau = candidate_tau;
        } else {
            break;
        }
    }
    debug_assert!(k >= 1);
    let _ = k;
    SimplexVec::new(xs.iter().map(|&z| (z - tau).max(0.0)).collect())
}

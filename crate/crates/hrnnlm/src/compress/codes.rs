//! Compressed state encodings: the square-root two-hot code and the
//! permuted four-hot code, plus the component-activating parent matrices
//! built from them.

use crate::error::{Error, Result};
use crate::wfsa::{StateId, Symbol, Wfsa};

use super::binmat::{ceil_fourth_root, ceil_sqrt, BinMatrix};

/// Square-root state representation: q -> (q / s, q mod s) with
/// s = ceil(sqrt(|Q|)).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoHotCode {
    pub s: usize,
    pub n_states: usize,
}

impl TwoHotCode {
    pub fn new(n_states: usize) -> Self {
        assert!(n_states >= 1);
        TwoHotCode { s: ceil_sqrt(n_states).max(1), n_states }
    }

    pub fn encode(&self, q: StateId) -> (usize, usize) {
        (q / self.s, q % self.s)
    }

    pub fn decode(&self, phi0: usize, phi1: usize) -> Option<StateId> {
        let q = phi0 * self.s + phi1;
        (phi0 < self.s && phi1 < self.s && q < self.n_states).then_some(q)
    }
}

/// Four-hot state representation over radix r = ceil(|Q|^(1/4)), taken after
/// a permutation of the state set: component j of q is the j-th base-r digit
/// of perm(q).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FourHotCode {
    pub r: usize,
    pub n_states: usize,
    perm: Vec<usize>,
    inv: Vec<usize>,
}

impl FourHotCode {
    pub fn new(n_states: usize, perm: Vec<usize>) -> Result<Self> {
        if perm.len() != n_states {
            return Err(Error::InvalidArgument("permutation length must equal |Q|".into()));
        }
        let mut inv = vec![usize::MAX; n_states];
        for (q, &p) in perm.iter().enumerate() {
            if p >= n_states || inv[p] != usize::MAX {
                return Err(Error::InvalidArgument("not a permutation of the state set".into()));
            }
            inv[p] = q;
        }
        Ok(FourHotCode { r: ceil_fourth_root(n_states).max(1), n_states, perm, inv })
    }

    pub fn identity(n_states: usize) -> Self {
        FourHotCode::new(n_states, (0..n_states).collect()).expect("identity is a permutation")
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn encode(&self, q: StateId) -> [usize; 4] {
        let mut v = self.perm[q];
        let mut out = [0usize; 4];
        for slot in &mut out {
            *slot = v % self.r;
            v /= self.r;
        }
        out
    }

    pub fn decode(&self, digits: &[usize; 4]) -> Option<StateId> {
        if digits.iter().any(|&d| d >= self.r) {
            return None;
        }
        let mut v = 0usize;
        for &d in digits.iter().rev() {
            v = v * self.r + d;
        }
        (v < self.n_states).then(|| self.inv[v])
    }

    /// Two-hot coordinates over r^2, used by the detection layer: the low and
    /// high halves of perm(q) in base r^2.
    pub fn phi2(&self, q: StateId) -> (usize, usize) {
        let v = self.perm[q];
        let s2 = self.r * self.r;
        (v / s2, v % s2)
    }
}

/// Either compressed code; fixes the component count, component range, and
/// the dimension of the representation matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StateCode {
    TwoHot(TwoHotCode),
    FourHot(FourHotCode),
}

impl StateCode {
    pub fn n_components(&self) -> usize {
        match self {
            StateCode::TwoHot(_) => 2,
            StateCode::FourHot(_) => 4,
        }
    }

    /// Each component ranges over 0..component_range().
    pub fn component_range(&self) -> usize {
        match self {
            StateCode::TwoHot(c) => c.s,
            StateCode::FourHot(c) => c.r,
        }
    }

    /// Representation matrices are square of this dimension.
    pub fn matrix_dim(&self) -> usize {
        match self {
            StateCode::TwoHot(c) => c.s,
            StateCode::FourHot(c) => c.r * c.r,
        }
    }

    pub fn component(&self, q: StateId, j: usize) -> usize {
        match self {
            StateCode::TwoHot(c) => {
                let (a, b) = c.encode(q);
                [a, b][j]
            }
            StateCode::FourHot(c) => c.encode(q)[j],
        }
    }

    /// Matrix coordinates (row, column) of state q.
    pub fn phi2(&self, q: StateId) -> (usize, usize) {
        match self {
            StateCode::TwoHot(c) => c.encode(q),
            StateCode::FourHot(c) => c.phi2(q),
        }
    }
}

/// Component-activating matrix: the OR of the matrix representations of all
/// y-parents of the states whose j-th code component equals k. Entry
/// (phi2(q)) is set iff the y-successor of q lands in the selected set.
pub fn parent_matrix(a: &Wfsa, code: &StateCode, j: usize, k: usize, y: Symbol) -> Result<BinMatrix> {
    if j >= code.n_components() {
        return Err(Error::InvalidArgument(format!("component {j} out of range")));
    }
    if k >= code.component_range() {
        return Err(Error::InvalidArgument(format!("component value {k} out of range")));
    }
    let mut m = BinMatrix::zeros(code.matrix_dim());
    for t in a.transitions() {
        if t.sym == y && code.component(t.dst, j) == k {
            let (r, c) = code.phi2(t.src);
            m.set(r, c);
        }
    }
    Ok(m)
}

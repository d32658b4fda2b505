//! Threshold-neuron detectors for line and non-decreasing matrices.
//!
//! A detector reads the pair input e_{ij} (one-hot row index next to one-hot
//! column index) and fires exactly on the ones of its matrix. Row and column
//! matrices need a single neuron; transversals are the Hadamard product of a
//! lower- and an upper-triangular factor (after permutation), each detected
//! by one neuron and conjoined by a third; non-decreasing matrices are
//! detected by an integer equality test split into two strict inequalities.

use crate::error::{Error, Result};

use super::binmat::{validate_line, BinMatrix, LineKind};

/// One Heaviside unit over a pair input: fires iff
/// w_row[i] + w_col[j] + bias > 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Neuron {
    pub w_row: Vec<i64>,
    pub w_col: Vec<i64>,
    pub bias: i64,
}

impl Neuron {
    pub fn fires(&self, i: usize, j: usize) -> bool {
        self.w_row[i] + self.w_col[j] + self.bias > 0
    }
}

/// Detector for one line matrix: a single neuron, or two factor neurons
/// whose conjunction a downstream AND unit takes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LineDetector {
    Single(Neuron),
    Pair(Neuron, Neuron),
}

impl LineDetector {
    pub fn fires(&self, i: usize, j: usize) -> bool {
        match self {
            LineDetector::Single(n) => n.fires(i, j),
            LineDetector::Pair(a, b) => a.fires(i, j) && b.fires(i, j),
        }
    }

    pub fn n_neurons(&self) -> usize {
        match self {
            LineDetector::Single(_) => 1,
            LineDetector::Pair(..) => 2,
        }
    }
}

/// Single neuron firing exactly on the ones of the northwestern matrix with
/// (non-increasing) row profile `alpha`: w = (alpha | D .. 1), bias -D.
pub fn northwestern_neuron(alpha: &[i64]) -> Neuron {
    let d = alpha.len() as i64;
    Neuron {
        w_row: alpha.to_vec(),
        w_col: (0..alpha.len()).map(|j| d - j as i64).collect(),
        bias: -d,
    }
}

/// Build the detector for a line matrix; errors if the matrix has two ones
/// sharing a row and two sharing a column.
pub fn detect_line(m: &BinMatrix) -> Result<LineDetector> {
    let n = m.dim();
    match validate_line(m)? {
        LineKind::Row(i) => {
            // Permuted northwestern profile: the row weight counts the ones,
            // the k-th one's column gets weight D - k.
            let cols: Vec<usize> = m.row_ones(i).collect();
            let mut w_row = vec![0i64; n];
            w_row[i] = cols.len() as i64;
            let mut w_col = vec![0i64; n];
            for (k, &c) in cols.iter().enumerate() {
                w_col[c] = n as i64 - k as i64;
            }
            Ok(LineDetector::Single(Neuron { w_row, w_col, bias: -(n as i64) }))
        }
        LineKind::Column(j) => {
            let mut w_col = vec![0i64; n];
            w_col[j] = n as i64;
            let mut w_row = vec![0i64; n];
            for (i, w) in w_row.iter_mut().enumerate() {
                if m.get(i, j) {
                    *w = 1;
                }
            }
            Ok(LineDetector::Single(Neuron { w_row, w_col, bias: -(n as i64) }))
        }
        LineKind::Transversal => {
            // Complete the partial map row -> column into a permutation p.
            // The lower factor fires iff p(i) >= j, the upper factor iff
            // j >= p(i) and row i carries a one; the conjunction is exactly
            // the transversal. For the identity transversal these are the
            // lower- and upper-triangular factors.
            let mut p: Vec<Option<usize>> = vec![None; n];
            let mut used = vec![false; n];
            for (i, j) in m.iter_ones() {
                p[i] = Some(j);
                used[j] = true;
            }
            let mut free_cols = (0..n).filter(|&j| !used[j]);
            let perm: Vec<usize> = p
                .iter()
                .map(|slot| slot.unwrap_or_else(|| free_cols.next().expect("enough columns")))
                .collect();

            let lower = Neuron {
                w_row: perm.iter().map(|&c| c as i64).collect(),
                w_col: (0..n).map(|j| -(j as i64)).collect(),
                bias: 1,
            };
            let covered: Vec<bool> = (0..n).map(|i| m.rows_nonzero(i)).collect();
            let upper = Neuron {
                w_row: (0..n)
                    .map(|i| {
                        if covered[i] {
                            -(perm[i] as i64)
                        } else {
                            -(2 * n as i64 + 1)
                        }
                    })
                    .collect(),
                w_col: (0..n).map(|j| j as i64).collect(),
                bias: 1,
            };
            Ok(LineDetector::Pair(lower, upper))
        }
    }
}

impl BinMatrix {
    fn rows_nonzero(&self, i: usize) -> bool {
        self.row_ones(i).next().is_some()
    }
}

/// Equality-test pair for a non-decreasing matrix (at most one 1 per column,
/// rows non-decreasing over columns). Columns are grouped by target row;
/// group g gets column weight g and its row weight D - g, so
/// w_row[i] + w_col[j] = D exactly on the ones. The two neurons test the two
/// strict inequalities around the equality.
pub fn detect_nondecreasing(m: &BinMatrix) -> Result<(Neuron, Neuron)> {
    let n = m.dim();
    let mut f: Vec<Option<usize>> = vec![None; n];
    for (j, slot) in f.iter_mut().enumerate() {
        let rows: Vec<usize> = (0..n).filter(|&i| m.get(i, j)).collect();
        if rows.len() > 1 {
            return Err(Error::InvalidArgument(
                "non-decreasing matrix needs at most one 1 per column".into(),
            ));
        }
        *slot = rows.first().copied();
    }
    let mut last: Option<usize> = None;
    for row in f.iter().flatten() {
        if let Some(prev) = last {
            if *row < prev {
                return Err(Error::InvalidArgument(
                    "column -> row function must be non-decreasing".into(),
                ));
            }
        }
        last = Some(*row);
    }

    let mut w_row = vec![0i64; n];
    let mut w_col = vec![0i64; n];
    let mut group = 0i64;
    let mut group_row: Option<usize> = None;
    for j in 0..n {
        if let Some(i) = f[j] {
            if group_row != Some(i) {
                group += 1;
                group_row = Some(i);
                w_row[i] = n as i64 - group;
            }
            w_col[j] = group;
        }
    }

    let ge = Neuron { w_row: w_row.clone(), w_col: w_col.clone(), bias: -(n as i64) + 1 };
    let le = Neuron {
        w_row: w_row.iter().map(|&x| -x).collect(),
        w_col: w_col.iter().map(|&x| -x).collect(),
        bias: n as i64 + 1,
    };
    Ok((ge, le))
}

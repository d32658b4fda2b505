//! Dense square 0/1 matrices and their decompositions into detectable parts:
//! line covers (row / column / transversal matrices, via maximum-transversal
//! peeling and a König cover of the residue) and non-decreasing covers.

use crate::error::{Error, Result};

/// Square binary matrix, at most 64 columns, one u64 bitmask per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinMatrix {
    n: usize,
    rows: Vec<u64>,
    ones: usize,
}

impl BinMatrix {
    pub fn zeros(n: usize) -> Self {
        assert!(n <= 64, "matrix dimension capped at 64");
        BinMatrix { n, rows: vec![0; n], ones: 0 }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = BinMatrix::zeros(n);
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize) {
        if !self.get(i, j) {
            self.rows[i] |= 1 << j;
            self.ones += 1;
        }
    }

    pub fn clear(&mut self, i: usize, j: usize) {
        if self.get(i, j) {
            self.rows[i] &= !(1 << j);
            self.ones -= 1;
        }
    }

    /// Cached number of ones.
    pub fn popcount(&self) -> usize {
        self.ones
    }

    pub fn is_empty(&self) -> bool {
        self.ones == 0
    }

    pub fn or_assign(&mut self, other: &BinMatrix) {
        assert_eq!(self.n, other.n);
        for i in 0..self.n {
            self.rows[i] |= other.rows[i];
        }
        self.ones = self.rows.iter().map(|r| r.count_ones() as usize).sum();
    }

    /// Removes every one present in `other`.
    pub fn subtract(&mut self, other: &BinMatrix) {
        assert_eq!(self.n, other.n);
        for i in 0..self.n {
            self.rows[i] &= !other.rows[i];
        }
        self.ones = self.rows.iter().map(|r| r.count_ones() as usize).sum();
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| (0..self.n).filter_map(move |j| self.get(i, j).then_some((i, j))))
    }

    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.get(i, j))
    }
}

/// Shape of a line matrix. A matrix with at most one 1 overall is all three;
/// classification prefers the single-neuron kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LineKind {
    Row(usize),
    Column(usize),
    Transversal,
}

pub fn classify_line(m: &BinMatrix) -> Option<LineKind> {
    let rows_used: Vec<usize> = (0..m.dim()).filter(|&i| m.rows[i] != 0).collect();
    if rows_used.len() <= 1 {
        return Some(LineKind::Row(rows_used.first().copied().unwrap_or(0)));
    }
    let mut cols_used = Vec::new();
    for j in 0..m.dim() {
        if (0..m.dim()).any(|i| m.get(i, j)) {
            cols_used.push(j);
        }
    }
    if cols_used.len() <= 1 {
        return Some(LineKind::Column(cols_used.first().copied().unwrap_or(0)));
    }
    let transversal = (0..m.dim()).all(|i| m.rows[i].count_ones() <= 1)
        && cols_used.iter().all(|&j| (0..m.dim()).filter(|&i| m.get(i, j)).count() <= 1);
    transversal.then_some(LineKind::Transversal)
}

/// Maximum bipartite matching rows -> columns over the ones of `b`, by
/// augmenting paths. Rows are processed in increasing order and neighbor
/// columns tried in increasing order, so ties resolve to the lowest row
/// index.
fn max_matching(b: &BinMatrix) -> Vec<Option<usize>> {
    let n = b.dim();
    let mut col_of_row: Vec<Option<usize>> = vec![None; n];
    let mut row_of_col: Vec<Option<usize>> = vec![None; n];

    fn augment(
        b: &BinMatrix,
        r: usize,
        seen: &mut [bool],
        col_of_row: &mut [Option<usize>],
        row_of_col: &mut [Option<usize>],
    ) -> bool {
        for c in 0..b.dim() {
            if b.get(r, c) && !seen[c] {
                seen[c] = true;
                let free = match row_of_col[c] {
                    None => true,
                    Some(r2) => augment(b, r2, seen, col_of_row, row_of_col),
                };
                if free {
                    col_of_row[r] = Some(c);
                    row_of_col[c] = Some(r);
                    return true;
                }
            }
        }
        false
    }

    for r in 0..n {
        let mut seen = vec![false; n];
        augment(b, r, &mut seen, &mut col_of_row, &mut row_of_col);
    }
    col_of_row
}

/// Transversal of maximum cardinality: the matrix of a maximum bipartite
/// matching over the ones of `b`.
pub fn max_transversal(b: &BinMatrix) -> BinMatrix {
    let matching = max_matching(b);
    let mut t = BinMatrix::zeros(b.dim());
    for (r, c) in matching.iter().enumerate() {
        if let Some(c) = c {
            t.set(r, *c);
        }
    }
    t
}

/// König vertex cover of the ones of `b`, from a maximum matching: alternate
/// from unmatched rows (non-matching edge to a column, matching edge back to
/// a row); the cover is the unreached rows plus the reached columns. Returns
/// the corresponding row and column line matrices.
fn koenig_cover(b: &BinMatrix) -> Vec<BinMatrix> {
    let n = b.dim();
    let col_of_row = max_matching(b);
    let mut row_of_col: Vec<Option<usize>> = vec![None; n];
    for (r, c) in col_of_row.iter().enumerate() {
        if let Some(c) = c {
            row_of_col[*c] = Some(r);
        }
    }

    let mut row_reached = vec![false; n];
    let mut col_reached = vec![false; n];
    let mut stack: Vec<usize> = (0..n)
        .filter(|&r| b.rows[r] != 0 && col_of_row[r].is_none())
        .collect();
    for &r in &stack {
        row_reached[r] = true;
    }
    while let Some(r) = stack.pop() {
        for c in b.row_ones(r) {
            if Some(c) == col_of_row[r] || col_reached[c] {
                continue;
            }
            col_reached[c] = true;
            if let Some(r2) = row_of_col[c] {
                if !row_reached[r2] {
                    row_reached[r2] = true;
                    stack.push(r2);
                }
            }
        }
    }

    let mut cover = Vec::new();
    for r in 0..n {
        if b.rows[r] != 0 && col_of_row[r].is_some() && !row_reached[r] {
            let mut line = BinMatrix::zeros(n);
            for c in b.row_ones(r) {
                line.set(r, c);
            }
            cover.push(line);
        }
    }
    for (c, reached) in col_reached.iter().enumerate() {
        if *reached {
            let mut line = BinMatrix::zeros(n);
            for r in 0..n {
                if b.get(r, c) {
                    line.set(r, c);
                }
            }
            if !line.is_empty() {
                cover.push(line);
            }
        }
    }
    cover
}

/// Decompose `b` into at most 2·ceil(sqrt(popcount)) line matrices whose OR
/// is exactly `b`: peel maximum transversals greedily and, once the
/// transversal size drops to the 2N - i switch point, cover the residue with
/// the rows and columns of a König cover.
pub fn line_cover(b: &BinMatrix) -> Vec<BinMatrix> {
    if b.is_empty() {
        return Vec::new();
    }
    let n_bound = ceil_sqrt(b.popcount());
    let mut residue = b.clone();
    let mut cover = Vec::new();
    let mut i = 1usize;
    while !residue.is_empty() {
        let t = max_transversal(&residue);
        if t.popcount() as i64 <= 2 * n_bound as i64 - i as i64 {
            cover.extend(koenig_cover(&residue));
            return cover;
        }
        residue.subtract(&t);
        cover.push(t);
        i += 1;
    }
    cover
}

/// Decompose `b` into matrices with at most one 1 per column whose column ->
/// row functions are non-decreasing in column order. Greedy: scan columns
/// left to right, rows within a column bottom-up, and put each one into the
/// first layer that still has this column free and keeps the function
/// non-decreasing; open a new layer otherwise.
pub fn nondecreasing_cover(b: &BinMatrix) -> Vec<BinMatrix> {
    struct Layer {
        m: BinMatrix,
        last_col: Option<usize>,
        last_row: usize,
    }
    let mut layers: Vec<Layer> = Vec::new();
    for j in 0..b.dim() {
        for i in 0..b.dim() {
            if !b.get(i, j) {
                continue;
            }
            let slot = layers.iter_mut().find(|l| l.last_col != Some(j) && l.last_row <= i);
            match slot {
                Some(l) => {
                    l.m.set(i, j);
                    l.last_col = Some(j);
                    l.last_row = i;
                }
                None => {
                    let mut m = BinMatrix::zeros(b.dim());
                    m.set(i, j);
                    layers.push(Layer { m, last_col: Some(j), last_row: i });
                }
            }
        }
    }
    layers.into_iter().map(|l| l.m).collect()
}

pub fn ceil_sqrt(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let mut s = (n as f64).sqrt() as usize;
    while s * s < n {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= n {
        s -= 1;
    }
    s
}

/// Smallest r with r^4 >= n.
pub fn ceil_fourth_root(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).powf(0.25) as usize;
    while r.pow(4) < n {
        r += 1;
    }
    while r > 1 && (r - 1).pow(4) >= n {
        r -= 1;
    }
    r
}

/// Random matrix with roughly `ones` ones, for tests and size studies.
pub fn random_matrix(seed: u64, n: usize, ones: usize) -> BinMatrix {
    let mut rng = crate::rng::SplitMix64::new(seed);
    let mut m = BinMatrix::zeros(n);
    let mut guard = 0;
    while m.popcount() < ones && guard < 10_000 {
        m.set(rng.below(n), rng.below(n));
        guard += 1;
    }
    m
}

pub(crate) fn validate_line(m: &BinMatrix) -> Result<LineKind> {
    classify_line(m).ok_or_else(|| Error::InvalidArgument("matrix is not a line matrix".into()))
}

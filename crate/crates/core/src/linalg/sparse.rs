//! Column-sparse integer matrices and elimination-based invariants.

use super::dense::{invariant_factors, Matrix};
use super::int::Integer;

/// Column-major sparse matrix; each column is sorted by row with no zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    columns: Vec<Vec<(u32, i64)>>,
}

fn normalize(mut col: Vec<(u32, i64)>) -> Vec<(u32, i64)> {
    col.sort_unstable_by_key(|&(r, _)| r);
    let mut out: Vec<(u32, i64)> = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some((lr, lv)) if *lr == r => *lv += v,
            _ => out.push((r, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    out
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            columns: vec![Vec::new(); cols],
        }
    }

    /// Builds from per-column `(row, value)` lists; duplicates are summed.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Self {
        let columns: Vec<Vec<(u32, i64)>> = columns
            .into_iter()
            .map(|c| {
                assert!(c.iter().all(|&(r, _)| r < rows), "row out of range");
                normalize(c.into_iter().map(|(r, v)| (r as u32, v)).collect())
            })
            .collect();
        SparseMatrix {
            rows,
            cols: columns.len(),
            columns,
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_columns(n, (0..n).map(|i| vec![(i, 1)]).collect())
    }

    pub fn from_dense(m: &Matrix) -> Self {
        let columns = (0..m.cols())
            .map(|j| {
                (0..m.rows())
                    .filter_map(|i| {
                        let x = m.get(i, j);
                        (!x.is_zero()).then(|| (i, x.to_i64().expect("entry fits in i64")))
                    })
                    .collect()
            })
            .collect();
        Self::from_columns(m.rows(), columns)
    }

    pub fn to_dense(&self) -> Matrix {
        let mut m = Matrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                m.set(r as usize, j, Integer::from(v));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.columns[j].iter().map(|&(r, v)| (r as usize, v))
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.columns[j]
            .binary_search_by_key(&(i as u32), |&(r, _)| r)
            .map_or(0, |k| self.columns[j][k].1)
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                cols[r as usize].push((j, v));
            }
        }
        Self::from_columns(self.cols, cols)
    }

    /// `self · other`.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc = Vec::new();
                for &(k, b) in col {
                    for &(r, a) in &self.columns[k as usize] {
                        acc.push((r as usize, a * b));
                    }
                }
                acc
            })
            .collect();
        Self::from_columns(self.rows, columns)
    }

    pub fn scale(&self, s: i64) -> SparseMatrix {
        let columns = self
            .columns
            .iter()
            .map(|c| c.iter().map(|&(r, v)| (r as usize, v * s)).collect())
            .collect();
        Self::from_columns(self.rows, columns)
    }

    pub fn add(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(
            (self.rows, self.cols),
            (other.rows, other.cols),
            "dimension mismatch"
        );
        let columns = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.iter().chain(b).map(|&(r, v)| (r as usize, v)).collect())
            .collect();
        Self::from_columns(self.rows, columns)
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.rows, other.rows, "dimension mismatch");
        let mut columns = self.columns.clone();
        columns.extend(other.columns.iter().cloned());
        SparseMatrix {
            rows: self.rows,
            cols: columns.len(),
            columns,
        }
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &SparseMatrix) -> SparseMatrix {
        self.transpose().hstack(&other.transpose()).transpose()
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &SparseMatrix) -> SparseMatrix {
        let shift = self.rows;
        let mut columns: Vec<Vec<(usize, i64)>> = self
            .columns
            .iter()
            .map(|c| c.iter().map(|&(r, v)| (r as usize, v)).collect())
            .collect();
        columns.extend(
            other
                .columns
                .iter()
                .map(|c| c.iter().map(|&(r, v)| (r as usize + shift, v)).collect()),
        );
        Self::from_columns(self.rows + other.rows, columns)
    }

    pub fn apply(&self, x: &[Integer]) -> Vec<Integer> {
        assert_eq!(x.len(), self.cols, "dimension mismatch");
        let mut out = vec![Integer::ZERO; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            if x[j].is_zero() {
                continue;
            }
            for &(r, v) in col {
                out[r as usize] += &(&x[j] * &Integer::from(v));
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other` with index `(i, k) ↦ i·other.rows + k`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let mut columns = Vec::with_capacity(self.cols * other.cols);
        for a in &self.columns {
            for b in &other.columns {
                let mut col = Vec::with_capacity(a.len() * b.len());
                for &(i, x) in a {
                    for &(k, y) in b {
                        col.push((i as usize * other.rows + k as usize, x * y));
                    }
                }
                columns.push(col);
            }
        }
        Self::from_columns(self.rows * other.rows, columns)
    }
}

/// Rank and nontrivial invariant factors of an integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factors {
    pub rank: usize,
    /// Invariant factors greater than 1, in divisibility order.
    pub torsion: Vec<Integer>,
}

/// Column `dst − f·src` with overflow detection.
fn axpy(dst: &[(u32, i64)], f: i64, src: &[(u32, i64)]) -> Option<Vec<(u32, i64)>> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let take_dst = j == src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let take_src = i == dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if take_dst {
            out.push(dst[i]);
            i += 1;
        } else if take_src {
            out.push((src[j].0, src[j].1.checked_mul(f)?.checked_neg()?));
            j += 1;
        } else {
            let v = dst[i].1.checked_sub(src[j].1.checked_mul(f)?)?;
            if v != 0 {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Some(out)
}

/// Sparse elimination on unit pivots followed by a dense Smith normal form
/// of whatever remains.
pub fn integer_factors(m: &SparseMatrix) -> Factors {
    let mut cols = m.columns.clone();
    let mut alive = vec![true; m.cols];
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); m.rows];
    for (j, c) in cols.iter().enumerate() {
        for &(r, _) in c {
            row_cols[r as usize].push(j as u32);
        }
    }
    let mut order: Vec<usize> = (0..m.cols).collect();
    order.sort_by_key(|&j| cols[j].len());
    let mut rank = 0;
    'passes: loop {
        let mut progress = false;
        for &c in &order {
            if !alive[c] || cols[c].is_empty() {
                continue;
            }
            let Some(&(r, u)) = cols[c]
                .iter()
                .filter(|&&(_, v)| v == 1 || v == -1)
                .min_by_key(|&&(r, _)| row_cols[r as usize].len())
            else {
                continue;
            };
            let pivot_col = std::mem::take(&mut cols[c]);
            let others = std::mem::take(&mut row_cols[r as usize]);
            for &c2 in &others {
                let c2 = c2 as usize;
                if c2 == c || !alive[c2] {
                    continue;
                }
                let Ok(k) = cols[c2].binary_search_by_key(&r, |&(rr, _)| rr) else {
                    continue;
                };
                let f = cols[c2][k].1 * u;
                match axpy(&cols[c2], f, &pivot_col) {
                    Some(new) => {
                        for &(rr, _) in &new {
                            if cols[c2].binary_search_by_key(&rr, |&(x, _)| x).is_err() {
                                row_cols[rr as usize].push(c2 as u32);
                            }
                        }
                        cols[c2] = new;
                    }
                    None => {
                        cols[c] = pivot_col;
                        row_cols[r as usize] = others;
                        break 'passes;
                    }
                }
            }
            alive[c] = false;
            rank += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    // Dense residual. After an overflow the pivot in progress is still part of it.
    let residual: Vec<usize> = (0..m.cols)
        .filter(|&j| alive[j] && !cols[j].is_empty())
        .collect();
    let mut row_ids: Vec<u32> = residual
        .iter()
        .flat_map(|&j| cols[j].iter().map(|&(r, _)| r))
        .collect();
    row_ids.sort_unstable();
    row_ids.dedup();
    let mut dense = Matrix::zeros(row_ids.len(), residual.len());
    for (jj, &j) in residual.iter().enumerate() {
        for &(r, v) in &cols[j] {
            let ii = row_ids.binary_search(&r).expect("row collected");
            dense.set(ii, jj, Integer::from(v));
        }
    }
    let diag = invariant_factors(&dense);
    rank += diag.len();
    Factors {
        rank,
        torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (a as i128, p as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    debug_assert_eq!(r0, 1, "not invertible");
    s0.rem_euclid(p as i128) as u64
}

/// Rank over `ℤ/p` for a prime `p < 2³²`.
pub fn rank_mod(m: &SparseMatrix, p: u64) -> usize {
    assert!((2..1 << 32).contains(&p), "modulus out of range");
    let mut cols: Vec<Vec<(u32, u64)>> = m
        .columns
        .iter()
        .map(|c| {
            c.iter()
                .map(|&(r, v)| (r, v.rem_euclid(p as i64) as u64))
                .filter(|&(_, v)| v != 0)
                .collect()
        })
        .collect();
    let mut row_cols: Vec<Vec<u32>> = vec![Vec::new(); m.rows];
    for (j, c) in cols.iter().enumerate() {
        for &(r, _) in c {
            row_cols[r as usize].push(j as u32);
        }
    }
    let mut order: Vec<usize> = (0..m.cols).collect();
    order.sort_by_key(|&j| cols[j].len());
    let mut alive = vec![true; m.cols];
    let mut rank = 0;
    for &c in &order {
        if cols[c].is_empty() {
            continue;
        }
        let &(r, u) = cols[c]
            .iter()
            .min_by_key(|&&(r, _)| row_cols[r as usize].len())
            .expect("nonempty");
        let uinv = inv_mod(u, p);
        let pivot_col = std::mem::take(&mut cols[c]);
        alive[c] = false;
        for c2 in std::mem::take(&mut row_cols[r as usize]) {
            let c2 = c2 as usize;
            if !alive[c2] {
                continue;
            }
            let Ok(k) = cols[c2].binary_search_by_key(&r, |&(rr, _)| rr) else {
                continue;
            };
            let f = cols[c2][k].1 * uinv % p;
            let dst = std::mem::take(&mut cols[c2]);
            let mut out = Vec::with_capacity(dst.len() + pivot_col.len());
            let (mut i, mut j) = (0, 0);
            while i < dst.len() || j < pivot_col.len() {
                if j == pivot_col.len() || (i < dst.len() && dst[i].0 < pivot_col[j].0) {
                    out.push(dst[i]);
                    i += 1;
                } else if i == dst.len() || pivot_col[j].0 < dst[i].0 {
                    let v = (p - pivot_col[j].1 * f % p) % p;
                    if v != 0 {
                        row_cols[pivot_col[j].0 as usize].push(c2 as u32);
                        out.push((pivot_col[j].0, v));
                    }
                    j += 1;
                } else {
                    let v = (dst[i].1 + p - pivot_col[j].1 * f % p) % p;
                    if v != 0 {
                        out.push((dst[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
            cols[c2] = out;
        }
        rank += 1;
    }
    rank
}

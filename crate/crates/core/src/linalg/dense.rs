//! Dense integer matrices and the Smith normal form with transforms.

use std::fmt;

use super::int::Integer;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Integer>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Integer::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Integer::ONE);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> Integer) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Rows of small integers; all rows must have equal length.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(rows.len(), cols, |i, j| Integer::from(rows[i][j]))
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Integer>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
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

    pub fn get(&self, i: usize, j: usize) -> &Integer {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Integer) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Integer] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Integer> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Integer::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Integer]) -> Vec<Integer> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Integer::ZERO;
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect()
    }

    /// Columns `range` as a new matrix.
    pub fn columns(&self, range: std::ops::Range<usize>) -> Matrix {
        let start = range.start;
        Matrix::from_fn(self.rows, range.len(), |i, j| {
            self.get(i, start + j).clone()
        })
    }

    /// Rows `range` as a new matrix.
    pub fn rows_range(&self, range: std::ops::Range<usize>) -> Matrix {
        let start = range.start;
        Matrix::from_fn(range.len(), self.cols, |i, j| {
            self.get(start + i, j).clone()
        })
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "dimension mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows)
                .all(|i| (0..self.cols).all(|j| *self.get(i, j) == if i == j { 1 } else { 0 }))
    }

    /// Replaces rows `(t, i)` by `(x·r_t + y·r_i, c·r_t + d·r_i)`.
    fn combine_rows(&mut self, t: usize, i: usize, [x, y, c, d]: &[Integer; 4]) {
        for j in 0..self.cols {
            let (a, b) = (self.get(t, j), self.get(i, j));
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let nt = &(x * a) + &(y * b);
            let ni = &(c * a) + &(d * b);
            self.set(t, j, nt);
            self.set(i, j, ni);
        }
    }

    /// Replaces columns `(t, j)` by `(x·c_t + y·c_j, c·c_t + d·c_j)`.
    fn combine_columns(&mut self, t: usize, j: usize, [x, y, c, d]: &[Integer; 4]) {
        for i in 0..self.rows {
            let (a, b) = (self.get(i, t), self.get(i, j));
            if a.is_zero() && b.is_zero() {
                continue;
            }
            let nt = &(x * a) + &(y * b);
            let nj = &(c * a) + &(d * b);
            self.set(i, t, nt);
            self.set(i, j, nj);
        }
    }

    fn negate_row(&mut self, t: usize) {
        for j in 0..self.cols {
            let v = -self.get(t, j);
            self.set(t, j, v);
        }
    }

    fn negate_column(&mut self, t: usize) {
        for i in 0..self.rows {
            let v = -self.get(i, t);
            self.set(i, t, v);
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[Integer]> = (0..self.rows).map(|i| self.row(i)).collect();
        f.debug_list().entries(rows).finish()
    }
}

/// `D = U·M·V` with `D` diagonal, `d₁ | d₂ | …`, all `dᵢ ≥ 0`, and `U`, `V`
/// unimodular. Transforms and their inverses are present when requested.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: Matrix,
    /// The nonzero diagonal entries, in order.
    pub diagonal: Vec<Integer>,
    pub u: Option<Matrix>,
    pub u_inv: Option<Matrix>,
    pub v: Option<Matrix>,
    pub v_inv: Option<Matrix>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }
}

struct Work {
    a: Matrix,
    u: Option<Matrix>,
    u_inv: Option<Matrix>,
    v: Option<Matrix>,
    v_inv: Option<Matrix>,
}

/// `q` with `|x − q·p| ≤ |p|/2`.
fn nearest_quotient(x: &Integer, p: &Integer) -> Integer {
    let q = x.div_floor(p);
    let r = x - &(&q * p);
    if (&r + &r).abs() > p.abs() {
        q + Integer::ONE
    } else {
        q
    }
}

fn det2([x, y, c, d]: &[Integer; 4]) -> Integer {
    &(x * d) - &(y * c)
}

impl Work {
    fn row_op(&mut self, t: usize, i: usize, e: [Integer; 4]) {
        self.a.combine_rows(t, i, &e);
        if let Some(u) = &mut self.u {
            u.combine_rows(t, i, &e);
        }
        if let Some(ui) = &mut self.u_inv {
            let det = det2(&e);
            let [x, y, c, d] = &e;
            ui.combine_columns(t, i, &[&det * d, -(&det * c), -(&det * y), &det * x]);
        }
    }

    fn col_op(&mut self, t: usize, j: usize, f: [Integer; 4]) {
        self.a.combine_columns(t, j, &f);
        if let Some(v) = &mut self.v {
            v.combine_columns(t, j, &f);
        }
        if let Some(vi) = &mut self.v_inv {
            let det = det2(&f);
            let [x, y, c, d] = &f;
            vi.combine_rows(t, j, &[&det * d, -(&det * c), -(&det * y), &det * x]);
        }
    }

    fn swap_rows(&mut self, t: usize, i: usize) {
        if t != i {
            self.row_op(
                t,
                i,
                [Integer::ZERO, Integer::ONE, Integer::ONE, Integer::ZERO],
            );
        }
    }

    fn swap_cols(&mut self, t: usize, j: usize) {
        if t != j {
            self.col_op(
                t,
                j,
                [Integer::ZERO, Integer::ONE, Integer::ONE, Integer::ZERO],
            );
        }
    }

    fn negate_row(&mut self, t: usize) {
        self.a.negate_row(t);
        if let Some(u) = &mut self.u {
            u.negate_row(t);
        }
        if let Some(ui) = &mut self.u_inv {
            ui.negate_column(t);
        }
    }

    /// Entry of least absolute value in the trailing submatrix.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, Integer)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if x.is_unit() {
                    return Some((i, j));
                }
                let ax = x.abs();
                if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                    best = Some((i, j, ax));
                }
            }
        }
        best.map(|(i, j, _)| (i, j))
    }

    /// Zeroes column `t` below and row `t` right of the pivot. Each pass
    /// subtracts nearest-integer multiples of the pivot and then moves the
    /// smallest remainder onto the diagonal, so entries and transforms stay
    /// small.
    fn clear_cross(&mut self, t: usize) {
        loop {
            let p = self.a.get(t, t).clone();
            for i in t + 1..self.a.rows {
                let x = self.a.get(i, t);
                if !x.is_zero() {
                    let q = nearest_quotient(x, &p);
                    self.row_op(t, i, [Integer::ONE, Integer::ZERO, -q, Integer::ONE]);
                }
            }
            for j in t + 1..self.a.cols {
                let x = self.a.get(t, j);
                if !x.is_zero() {
                    let q = nearest_quotient(x, &p);
                    self.col_op(t, j, [Integer::ONE, Integer::ZERO, -q, Integer::ONE]);
                }
            }
            let in_col = (t + 1..self.a.rows)
                .filter(|&i| !self.a.get(i, t).is_zero())
                .min_by_key(|&i| self.a.get(i, t).abs());
            let in_row = (t + 1..self.a.cols)
                .filter(|&j| !self.a.get(t, j).is_zero())
                .min_by_key(|&j| self.a.get(t, j).abs());
            match (in_col, in_row) {
                (None, None) => return,
                (Some(i), None) => self.swap_rows(t, i),
                (None, Some(j)) => self.swap_cols(t, j),
                (Some(i), Some(j)) => {
                    if self.a.get(i, t).abs() <= self.a.get(t, j).abs() {
                        self.swap_rows(t, i);
                    } else {
                        self.swap_cols(t, j);
                    }
                }
            }
        }
    }

    fn run(mut self) -> Smith {
        let n = self.a.rows.min(self.a.cols);
        let mut t = 0;
        while t < n {
            let Some((pi, pj)) = self.pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            self.clear_cross(t);
            let p = self.a.get(t, t).clone();
            let offender = (t + 1..self.a.rows)
                .find(|&i| (t + 1..self.a.cols).any(|j| !p.divides(self.a.get(i, j))));
            if let Some(i) = offender {
                self.row_op(
                    t,
                    i,
                    [Integer::ONE, Integer::ONE, Integer::ZERO, Integer::ONE],
                );
                continue;
            }
            if p.is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        let diagonal = (0..t).map(|i| self.a.get(i, i).clone()).collect();
        Smith {
            d: self.a,
            diagonal,
            u: self.u,
            u_inv: self.u_inv,
            v: self.v,
            v_inv: self.v_inv,
        }
    }
}

/// Smith normal form with all four transforms.
pub fn smith(m: &Matrix) -> Smith {
    smith_with(m, true, true)
}

/// Smith normal form, keeping the left (`U`, `U⁻¹`) and right (`V`, `V⁻¹`)
/// transforms only when asked.
pub fn smith_with(m: &Matrix, left: bool, right: bool) -> Smith {
    Work {
        a: m.clone(),
        u: left.then(|| Matrix::identity(m.rows)),
        u_inv: left.then(|| Matrix::identity(m.rows)),
        v: right.then(|| Matrix::identity(m.cols)),
        v_inv: right.then(|| Matrix::identity(m.cols)),
    }
    .run()
}

/// Nonzero invariant factors `d₁ | d₂ | …`.
pub fn invariant_factors(m: &Matrix) -> Vec<Integer> {
    smith_with(m, false, false).diagonal
}

/// Columns spanning the integer kernel of `m`.
pub fn kernel(m: &Matrix) -> Matrix {
    let s = smith_with(m, false, true);
    let r = s.rank();
    s.v.expect("right transform requested").columns(r..m.cols)
}

/// An integer solution of `m·x = b`, if one exists.
pub fn solve(m: &Matrix, b: &[Integer]) -> Option<Vec<Integer>> {
    let s = smith(m);
    solve_with(&s, m.cols, b)
}

/// Solves `m·x = b` given a full Smith decomposition of `m`.
pub fn solve_with(s: &Smith, cols: usize, b: &[Integer]) -> Option<Vec<Integer>> {
    let ub = s.u.as_ref().expect("left transform").mul_vec(b);
    let r = s.rank();
    if ub[r..].iter().any(|x| !x.is_zero()) {
        return None;
    }
    let mut y = vec![Integer::ZERO; cols];
    for i in 0..r {
        if !s.diagonal[i].divides(&ub[i]) {
            return None;
        }
        y[i] = ub[i].div_floor(&s.diagonal[i]);
    }
    Some(s.v.as_ref().expect("right transform").mul_vec(&y))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Integer> {
        v.iter().map(|&x| Integer::from(x)).collect()
    }

    fn check(m: &Matrix) -> Smith {
        let s = smith(m);
        let (u, v) = (s.u.as_ref().unwrap(), s.v.as_ref().unwrap());
        assert_eq!(u.mul(m).mul(v), s.d);
        assert!(u.mul(s.u_inv.as_ref().unwrap()).is_identity());
        assert!(v.mul(s.v_inv.as_ref().unwrap()).is_identity());
        for w in s.diagonal.windows(2) {
            assert!(w[0].divides(&w[1]));
        }
        s
    }

    #[test]
    fn small_cases() {
        assert_eq!(check(&Matrix::identity(3)).diagonal, ints(&[1, 1, 1]));
        assert_eq!(
            check(&Matrix::from_rows(&[vec![1, 1], vec![1, -1]])).diagonal,
            ints(&[1, 2])
        );
        let m = Matrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(check(&m).diagonal, ints(&[2, 6, 12]));
        assert_eq!(
            check(&Matrix::from_rows(&[vec![2, 0], vec![0, 3]])).diagonal,
            ints(&[1, 6])
        );
        assert!(check(&Matrix::zeros(2, 3)).diagonal.is_empty());
        assert!(check(&Matrix::zeros(0, 3)).diagonal.is_empty());
    }

    #[test]
    fn kernel_and_solve() {
        let m = Matrix::from_rows(&[vec![1, 2, 3], vec![2, 4, 6]]);
        let k = kernel(&m);
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).is_zero());
        let x = solve(&m, &ints(&[5, 10])).unwrap();
        assert_eq!(m.mul_vec(&x), ints(&[5, 10]));
        assert!(solve(&m, &ints(&[1, 1])).is_none());
        let two = Matrix::from_rows(&[vec![2]]);
        assert!(solve(&two, &ints(&[3])).is_none());
    }
}

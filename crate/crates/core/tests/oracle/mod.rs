//! Independent brute-force references for the acceptance and property
//! tests. Nothing here calls the library's algorithms; spaces enter only
//! as their closure relation.

#![allow(clippy::needless_range_loop)]
#![allow(dead_code)]

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, Zero};

/// `rel[x][y]` iff `y ∈ c({x})`.
pub type Relation = Vec<Vec<bool>>;

pub fn relation_of(space: &closure_core::spaces::FiniteClosureSpace) -> Relation {
    let n = space.len();
    (0..n)
        .map(|x| (0..n).map(|y| space.adjacent(x, y)).collect())
        .collect()
}

pub fn big(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect()
}

/// Rank over ℚ by fraction-free elimination.
pub fn rational_rank(rows: &[Vec<BigInt>]) -> usize {
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        for r in rank + 1..m.len() {
            for k in c + 1..cols {
                let v = (&m[rank][c] * &m[r][k] - &m[r][c] * &m[rank][k]) / &prev;
                m[r][k] = v;
            }
            m[r][c] = BigInt::zero();
        }
        prev = m[rank][c].clone();
        rank += 1;
        if rank == m.len() {
            break;
        }
    }
    rank
}

/// Determinant by fraction-free elimination.
pub fn determinant(rows: &[Vec<BigInt>]) -> BigInt {
    let n = rows.len();
    let mut m = rows.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                m[i][j] = (&m[k][k] * &m[i][j] - &m[i][k] * &m[k][j]) / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        BigInt::one()
    } else {
        sign * &m[n - 1][n - 1]
    }
}

/// Diagonal of a Smith form by the textbook pivot-and-clear loop, then
/// normalized to a divisibility chain by pairwise gcd/lcm.
pub fn smith_diagonal(rows: &[Vec<BigInt>]) -> Vec<BigInt> {
    let mut m = rows.to_vec();
    let r = m.len();
    let c = m.first().map_or(0, Vec::len);
    let mut diag = Vec::new();
    let mut t = 0;
    while t < r.min(c) {
        // Smallest nonzero entry of the remaining block.
        let mut best: Option<(usize, usize)> = None;
        for i in t..r {
            for j in t..c {
                if !m[i][j].is_zero() && best.is_none_or(|(a, b)| m[i][j].abs() < m[a][b].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = m[t][t].clone();
            let mut dirty = false;
            for i in t + 1..r {
                let q = m[i][t].div_floor(&p);
                if !q.is_zero() {
                    for j in t..c {
                        let v = &m[t][j] * &q;
                        m[i][j] -= v;
                    }
                }
                if !m[i][t].is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..c {
                let q = m[t][j].div_floor(&p);
                if !q.is_zero() {
                    for row in m.iter_mut().skip(t) {
                        let v = &row[t] * &q;
                        row[j] -= v;
                    }
                }
                if !m[t][j].is_zero() {
                    dirty = true;
                }
            }
            if !dirty {
                break;
            }
            // Move the smallest nonzero entry of row/column t to the pivot.
            let mut best = (t, t);
            for i in t..r {
                if !m[i][t].is_zero() && m[i][t].abs() < m[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..c {
                if !m[t][j].is_zero() && m[t][j].abs() < m[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            m.swap(t, best.0);
            for row in m.iter_mut() {
                row.swap(t, best.1);
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    // gcd/lcm sweeps turn any diagonal into the divisibility chain.
    for i in 0..diag.len() {
        for j in i + 1..diag.len() {
            let g = diag[i].gcd(&diag[j]);
            let l = diag[i].lcm(&diag[j]);
            diag[i] = g;
            diag[j] = l;
        }
    }
    diag
}

/// Integral homology from dense boundary matrices: `boundaries[n]` maps
/// degree `n` to degree `n − 1` (`boundaries[0]` is ignored). Returns
/// `(betti, torsion)` for degrees `0..ranks.len() − 1`.
pub fn homology(ranks: &[usize], boundaries: &[Vec<Vec<i64>>]) -> Vec<(usize, Vec<BigInt>)> {
    let rank_of = |n: usize| -> usize {
        if n == 0 || n >= boundaries.len() || ranks[n] == 0 || ranks[n - 1] == 0 {
            0
        } else {
            rational_rank(&big(&boundaries[n]))
        }
    };
    (0..ranks.len().saturating_sub(1))
        .map(|n| {
            let betti = ranks[n] - rank_of(n) - rank_of(n + 1);
            let torsion = if ranks[n] == 0 || ranks[n + 1] == 0 {
                vec![]
            } else {
                smith_diagonal(&big(&boundaries[n + 1]))
                    .into_iter()
                    .filter(|d| !d.is_one())
                    .collect()
            };
            (betti, torsion)
        })
        .collect()
}

fn all_tuples(points: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..points).map(move |p| {
                    let mut t = t.clone();
                    t.push(p);
                    t
                })
            })
            .collect();
    }
    out
}

/// Whether `f` is continuous from the domain relation to `rel`.
fn continuous(domain: &Relation, rel: &Relation, f: &[usize]) -> bool {
    (0..f.len()).all(|a| (0..f.len()).all(|b| !domain[a][b] || rel[f[a]][f[b]]))
}

/// The standard simplex: indiscrete (`directed == false`) or `c(i) = {j ≥ i}`.
pub fn simplex_relation(n: usize, directed: bool) -> Relation {
    (0..=n)
        .map(|i| (0..=n).map(|j| !directed || j >= i).collect())
        .collect()
}

/// `{0,1}ⁿ` with the product (`boxed == false`) or inductive closure;
/// vertex `v` has coordinate `i` in bit `i`.
pub fn cube_relation(n: usize, directed: bool, boxed: bool) -> Relation {
    let reach = |a: usize, b: usize| !directed || a <= b;
    let size = 1usize << n;
    (0..size)
        .map(|v| {
            (0..size)
                .map(|w| {
                    let diff = v ^ w;
                    let coords_ok = (0..n).all(|i| reach(v >> i & 1, w >> i & 1));
                    if boxed {
                        coords_ok && diff.count_ones() <= 1
                    } else {
                        coords_ok
                    }
                })
                .collect()
        })
        .collect()
}

pub fn singular_cells(domain: &Relation, rel: &Relation) -> Vec<Vec<usize>> {
    all_tuples(rel.len(), domain.len())
        .into_iter()
        .filter(|f| continuous(domain, rel, f))
        .collect()
}

fn index_of(cells: &[Vec<usize>], c: &[usize]) -> Option<usize> {
    cells.iter().position(|x| x.as_slice() == c)
}

/// Normalized simplicial chains: non-degenerate simplices through
/// `top`, degenerate faces dropped. Returns ranks and boundaries.
pub fn simplicial_complex(
    rel: &Relation,
    directed: bool,
    top: usize,
) -> (Vec<usize>, Vec<Vec<Vec<i64>>>) {
    let cells: Vec<Vec<Vec<usize>>> = (0..=top)
        .map(|n| {
            singular_cells(&simplex_relation(n, directed), rel)
                .into_iter()
                .filter(|s| s.windows(2).all(|w| w[0] != w[1]))
                .collect()
        })
        .collect();
    let mut bds = vec![vec![]];
    for n in 1..=top {
        let mut d = vec![vec![0i64; cells[n].len()]; cells[n - 1].len()];
        for (k, s) in cells[n].iter().enumerate() {
            for i in 0..=n {
                let mut f = s.clone();
                f.remove(i);
                if let Some(r) = index_of(&cells[n - 1], &f) {
                    d[r][k] += if i % 2 == 0 { 1 } else { -1 };
                }
            }
        }
        bds.push(d);
    }
    (cells.iter().map(Vec::len).collect(), bds)
}

/// Face of a cube with coordinate `i` fixed to `e`.
fn cube_face(c: &[usize], n: usize, i: usize, e: usize) -> Vec<usize> {
    (0..1usize << (n - 1))
        .map(|w| {
            let low = w & ((1 << i) - 1);
            let high = (w >> i) << (i + 1);
            c[high | (e << i) | low]
        })
        .collect()
}

/// Homology of the normalized cubical complex `N_n = ⋂ᵢ ker d_{i,1}` with
/// `∂ = Σᵢ (−1)^{i+1} d_{i,0}`, computed inside the full cube chains.
pub fn cubical_homology(
    rel: &Relation,
    directed: bool,
    boxed: bool,
    top: usize,
) -> Vec<(usize, Vec<BigInt>)> {
    let cells: Vec<Vec<Vec<usize>>> = (0..=top)
        .map(|n| singular_cells(&cube_relation(n, directed, boxed), rel))
        .collect();
    // Face matrices d_{i,e}: C_n → C_{n−1}.
    let face = |n: usize, i: usize, e: usize| -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; cells[n].len()]; cells[n - 1].len()];
        for (k, c) in cells[n].iter().enumerate() {
            let f = cube_face(c, n, i, e);
            d[index_of(&cells[n - 1], &f).expect("faces are cubes")][k] = 1;
        }
        d
    };
    // Integer basis of N_n as columns in C_n coordinates.
    let normalized_basis: Vec<Vec<Vec<BigInt>>> = (0..=top)
        .map(|n| {
            let size = cells[n].len();
            if n == 0 {
                return (0..size)
                    .map(|k| (0..size).map(|j| BigInt::from(i64::from(j == k))).collect())
                    .collect();
            }
            let mut stacked: Vec<Vec<i64>> = Vec::new();
            for i in 0..n {
                stacked.extend(face(n, i, 1));
            }
            integer_kernel(&big(&stacked), size)
        })
        .collect();
    let boundary = |n: usize| -> Vec<Vec<i64>> {
        let mut d = vec![vec![0i64; cells[n].len()]; cells[n - 1].len()];
        for i in 0..n {
            let s = if i % 2 == 0 { -1 } else { 1 };
            for (r, row) in face(n, i, 0).iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    d[r][k] += s * v;
                }
            }
        }
        d
    };
    // ∂ restricted to N_n, still in C_{n−1} coordinates.
    let restricted: Vec<Vec<Vec<BigInt>>> = (0..=top)
        .map(|n| {
            if n == 0 {
                return vec![];
            }
            let d = big(&boundary(n));
            let basis = &normalized_basis[n];
            (0..cells[n - 1].len())
                .map(|r| {
                    basis
                        .iter()
                        .map(|col| col.iter().zip(&d[r]).map(|(a, b)| a * b).sum())
                        .collect()
                })
                .collect()
        })
        .collect();
    (0..top)
        .map(|n| {
            let dim = normalized_basis[n].len();
            let r_in = if n == 0 || dim == 0 {
                0
            } else {
                rational_rank(&restricted[n])
            };
            let out = &restricted[n + 1];
            let r_out = if out.is_empty() || normalized_basis[n + 1].is_empty() {
                0
            } else {
                rational_rank(out)
            };
            let torsion = if r_out == 0 {
                vec![]
            } else {
                smith_diagonal(out)
                    .into_iter()
                    .filter(|d| !d.is_one())
                    .collect()
            };
            (dim - r_in - r_out, torsion)
        })
        .collect()
}

/// A ℤ-basis of `{x ∈ ℤ^cols : M x = 0}` by column Hermite reduction of
/// `[M; I]`.
pub fn integer_kernel(m: &[Vec<BigInt>], cols: usize) -> Vec<Vec<BigInt>> {
    // Work on columns: each column is (M part, identity part).
    let rows = m.len();
    let mut columns: Vec<(Vec<BigInt>, Vec<BigInt>)> = (0..cols)
        .map(|k| {
            let top: Vec<BigInt> = (0..rows).map(|r| m[r][k].clone()).collect();
            let id: Vec<BigInt> = (0..cols).map(|j| BigInt::from(i64::from(j == k))).collect();
            (top, id)
        })
        .collect();
    let mut start = 0;
    for r in 0..rows {
        loop {
            let live: Vec<usize> = (start..columns.len())
                .filter(|&k| !columns[k].0[r].is_zero())
                .collect();
            if live.len() <= 1 {
                if let Some(&k) = live.first() {
                    columns.swap(start, k);
                    start += 1;
                }
                break;
            }
            let p = *live
                .iter()
                .min_by_key(|&&k| columns[k].0[r].abs())
                .expect("non-empty");
            for &k in &live {
                if k == p {
                    continue;
                }
                let q = columns[k].0[r].div_floor(&columns[p].0[r]);
                let (pt, pi) = columns[p].clone();
                for (a, b) in columns[k].0.iter_mut().zip(&pt) {
                    *a -= &q * b;
                }
                for (a, b) in columns[k].1.iter_mut().zip(&pi) {
                    *a -= &q * b;
                }
            }
        }
    }
    columns.into_iter().skip(start).map(|(_, id)| id).collect()
}

/// Simplicial homology of the clique complex of a graph, from oriented
/// simplices with increasing vertices.
pub fn clique_homology(rel: &Relation, top: usize) -> Vec<(usize, Vec<BigInt>)> {
    let n = rel.len();
    let adjacent = |a: usize, b: usize| rel[a][b] && rel[b][a];
    let mut cliques: Vec<Vec<Vec<usize>>> = vec![(0..n).map(|v| vec![v]).collect()];
    for k in 1..=top + 1 {
        let next: Vec<Vec<usize>> = cliques[k - 1]
            .iter()
            .flat_map(|c| {
                let last = *c.last().expect("non-empty");
                (last + 1..n)
                    .filter(|&v| c.iter().all(|&u| adjacent(u, v)))
                    .map(|v| {
                        let mut d = c.clone();
                        d.push(v);
                        d
                    })
                    .collect::<Vec<_>>()
            })
            .collect();
        cliques.push(next);
    }
    let mut bds = vec![vec![]];
    for k in 1..=top + 1 {
        let mut d = vec![vec![0i64; cliques[k].len()]; cliques[k - 1].len()];
        for (j, c) in cliques[k].iter().enumerate() {
            for i in 0..=k {
                let mut f = c.clone();
                f.remove(i);
                let r = index_of(&cliques[k - 1], &f).expect("faces of cliques are cliques");
                d[r][j] += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        bds.push(d);
    }
    let ranks: Vec<usize> = cliques.iter().map(Vec::len).collect();
    homology(&ranks, &bds)
}

/// Homology of the normalized simplicial complex through `top − 1`.
pub fn simplicial_homology(
    rel: &Relation,
    directed: bool,
    top: usize,
) -> Vec<(usize, Vec<BigInt>)> {
    let (ranks, bds) = simplicial_complex(rel, directed, top);
    homology(&ranks, &bds)
}

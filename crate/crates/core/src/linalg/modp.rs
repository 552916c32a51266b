//! Dense linear algebra over a prime field `ℤ/p`.

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut [Vec<u64>], cols: usize, p: u64) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else {
            continue;
        };
        rows.swap(r, k);
        let inv = pow_mod(rows[r][c], p - 2, p);
        for x in rows[r].iter_mut() {
            *x = *x * inv % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..cols {
                    rows[k][j] = (rows[k][j] + p - f * rows[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    pivots
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Rank of a matrix given by rows.
pub fn rank(rows: &[Vec<u64>], cols: usize, p: u64) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m, cols, p).len()
}

/// Basis of `{ x : M·x = 0 }` for `M` given by rows of length `cols`.
pub fn kernel(rows: &[Vec<u64>], cols: usize, p: u64) -> Vec<Vec<u64>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = (p - m[r][f]) % p;
            }
            v
        })
        .collect()
}

/// Whether `v` is a combination of the given vectors.
pub fn in_span(vectors: &[Vec<u64>], v: &[u64], p: u64) -> bool {
    let len = v.len();
    let base = rank(vectors, len, p);
    let mut ext = vectors.to_vec();
    ext.push(v.to_vec());
    rank(&ext, len, p) == base
}

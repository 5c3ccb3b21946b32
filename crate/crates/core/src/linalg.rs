//! Dense linear algebra over a prime field F_p.
//!
//! Vectors are `Vec<u64>` with entries reduced mod p. Everything that treats a
//! finite field or a torsion module as an F_p-vector space goes through here.

use crate::arith::{inv_mod, mul_mod, sub_mod};

/// Incremental row-echelon basis of a subspace of F_p^dim.
///
/// Rows are kept with a pivot column each; `reduce` brings any vector to its
/// normal form modulo the span and also reports the combination of inserted
/// vectors that was subtracted.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    p: u64,
    dim: usize,
    rows: Vec<Row>,
    inserted: usize,
}

#[derive(Clone, Debug)]
struct Row {
    pivot: usize,
    vec: Vec<u64>,
    // Expression of `vec` as a combination of inserted vectors.
    combo: Vec<u64>,
}

impl EchelonBasis {
    pub fn new(p: u64, dim: usize) -> Self {
        Self {
            p,
            dim,
            rows: Vec::new(),
            inserted: 0,
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn reduce_full(&self, v: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let p = self.p;
        let mut v = v.to_vec();
        let mut combo = vec![0u64; self.inserted];
        for row in &self.rows {
            let c = v[row.pivot];
            if c != 0 {
                for (x, &r) in v.iter_mut().zip(&row.vec) {
                    *x = sub_mod(*x, mul_mod(c, r, p), p);
                }
                for (x, &r) in combo.iter_mut().zip(&row.combo) {
                    *x = sub_mod(*x, mul_mod(c, r, p), p);
                }
            }
        }
        (v, combo)
    }

    /// True if `v` lies in the span.
    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce_full(v).0.iter().all(|&x| x == 0)
    }

    /// Inserts `v`; returns whether the rank grew. The vector is counted as
    /// inserted (for `solve`) only when it is independent.
    pub fn insert(&mut self, v: &[u64]) -> bool {
        debug_assert_eq!(v.len(), self.dim);
        let p = self.p;
        let (mut r, mut combo) = self.reduce_full(v);
        let Some(pivot) = r.iter().position(|&x| x != 0) else {
            return false;
        };
        for row in &mut self.rows {
            row.combo.push(0);
        }
        combo.push(1);
        let inv = inv_mod(r[pivot], p);
        for x in r.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for x in combo.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        // Keep the basis fully reduced so that every pivot column is a unit vector.
        for row in &mut self.rows {
            let c = row.vec[pivot];
            if c != 0 {
                for (x, &y) in row.vec.iter_mut().zip(&r) {
                    *x = sub_mod(*x, mul_mod(c, y, p), p);
                }
                for (x, &y) in row.combo.iter_mut().zip(&combo) {
                    *x = sub_mod(*x, mul_mod(c, y, p), p);
                }
            }
        }
        self.rows.push(Row {
            pivot,
            vec: r,
            combo,
        });
        self.inserted += 1;
        true
    }

    /// Coefficients `c` with `v = Σ c_i · (i-th independent inserted vector)`,
    /// or `None` if `v` is outside the span.
    pub fn solve(&self, v: &[u64]) -> Option<Vec<u64>> {
        let p = self.p;
        let (rest, _) = self.reduce_full(v);
        if rest.iter().any(|&x| x != 0) {
            return None;
        }
        let mut out = vec![0u64; self.inserted];
        for row in &self.rows {
            let c = v[row.pivot];
            // Fully reduced rows: the coordinate on a pivot column is read directly.
            if c != 0 {
                for (x, &r) in out.iter_mut().zip(&row.combo) {
                    *x = crate::arith::add_mod(*x, mul_mod(c, r, p), p);
                }
            }
        }
        Some(out)
    }
}

/// Kernel of the linear map whose columns are `cols` (each of length `rows`).
/// Returns a basis of {x ∈ F_p^{cols.len()} : Σ x_j cols[j] = 0}.
pub fn nullspace(p: u64, rows: usize, cols: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let ncols = cols.len();
    // Row-reduce the matrix M (rows × ncols).
    let mut m: Vec<Vec<u64>> = (0..rows)
        .map(|i| cols.iter().map(|c| c[i] % p).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = inv_mod(m[r][c], p);
        for x in m[r].iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let (top, rest) = if i < r {
                    let (a, b) = m.split_at_mut(r);
                    (&mut a[i], &b[0])
                } else {
                    let (a, b) = m.split_at_mut(i);
                    (&mut b[0], &a[r])
                };
                for (x, &y) in top.iter_mut().zip(rest.iter()) {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0u64; ncols];
            v[f] = 1;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = sub_mod(0, m[row][f], p);
            }
            v
        })
        .collect()
}

/// Rank of the span of `vecs`.
pub fn rank(p: u64, dim: usize, vecs: &[Vec<u64>]) -> usize {
    let mut b = EchelonBasis::new(p, dim);
    for v in vecs {
        b.insert(v);
    }
    b.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_rank_one_map() {
        // columns (1,1), (1,1), (0,0) over F_2 : kernel dimension 2
        let cols = vec![vec![1, 1], vec![1, 1], vec![0, 0]];
        let ker = nullspace(2, 2, &cols);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            let s: Vec<u64> = (0..2)
                .map(|i| (0..3).map(|j| v[j] * cols[j][i]).sum::<u64>() % 2)
                .collect();
            assert_eq!(s, vec![0, 0]);
        }
    }

    #[test]
    fn solve_recovers_combination() {
        let p = 5;
        let a = vec![1, 2, 3];
        let b = vec![0, 1, 4];
        let mut eb = EchelonBasis::new(p, 3);
        assert!(eb.insert(&a));
        assert!(eb.insert(&b));
        assert!(!eb.insert(&[2, 4, 1]));
        // v = 3a + 2b
        let v: Vec<u64> = (0..3).map(|i| (3 * a[i] + 2 * b[i]) % p).collect();
        assert_eq!(eb.solve(&v), Some(vec![3, 2]));
        assert_eq!(eb.solve(&[0, 0, 1]), None);
    }
}

//! Exact linear algebra over a prime field: ranks, kernels and solves.
//!
//! Matrices act on column vectors. Boundary maps `C_p -> C_{p-1}` are stored
//! with `dim C_{p-1}` rows and `dim C_p` columns.

use std::collections::BTreeMap;

use crate::field::PrimeField;

/// Above this many rows or columns, [`rank`] switches to sparse elimination.
pub const DEFAULT_SPARSE_THRESHOLD: usize = 512;

/// Row-major sparse matrix; each row is sorted by column with no zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<(usize, u64)>>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn from_triplets(field: PrimeField, rows: usize, cols: usize, triplets: impl IntoIterator<Item = (usize, usize, u64)>) -> Self {
        let mut acc: Vec<BTreeMap<usize, u64>> = vec![BTreeMap::new(); rows];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r},{c}) outside {rows}x{cols}");
            let e = acc[r].entry(c).or_insert(0);
            *e = field.add(*e, v % field.modulus());
        }
        let data = acc
            .into_iter()
            .map(|row| row.into_iter().filter(|&(_, v)| v != 0).collect())
            .collect();
        SparseMatrix { rows, cols, data }
    }

    pub fn from_dense(field: PrimeField, dense: &[Vec<u64>], cols: usize) -> Self {
        let trip = dense
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, &v)| (r, c, v)));
        Self::from_triplets(field, dense.len(), cols, trip)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[(usize, u64)] {
        &self.data[r]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0; self.cols]; self.rows];
        for (r, row) in self.data.iter().enumerate() {
            for &(c, v) in row {
                out[r][c] = v;
            }
        }
        out
    }

    pub fn mul_vec(&self, field: PrimeField, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.cols);
        self.data
            .iter()
            .map(|row| row.iter().fold(0, |acc, &(c, v)| field.add(acc, field.mul(v, x[c]))))
            .collect()
    }

    /// `self * other`.
    pub fn mul(&self, field: PrimeField, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows);
        let mut trip = Vec::new();
        for (r, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, u64> = BTreeMap::new();
            for &(k, a) in row {
                for &(c, b) in &other.data[k] {
                    let e = acc.entry(c).or_insert(0);
                    *e = field.add(*e, field.mul(a, b));
                }
            }
            trip.extend(acc.into_iter().map(|(c, v)| (r, c, v)));
        }
        SparseMatrix::from_triplets(field, self.rows, other.cols, trip)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }
}

/// Rank, choosing dense elimination for small matrices.
pub fn rank(field: PrimeField, m: &SparseMatrix) -> usize {
    rank_with_threshold(field, m, DEFAULT_SPARSE_THRESHOLD)
}

pub fn rank_with_threshold(field: PrimeField, m: &SparseMatrix, threshold: usize) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    if m.rows.max(m.cols) > threshold {
        rank_sparse(field, m)
    } else {
        rank_dense(field, m.to_dense(), m.cols)
    }
}

pub fn rank_dense(field: PrimeField, mut a: Vec<Vec<u64>>, cols: usize) -> usize {
    rref_in_place(field, &mut a, cols).len()
}

/// Rank by leading-term elimination on sparse rows.
pub fn rank_sparse(field: PrimeField, m: &SparseMatrix) -> usize {
    let mut pivots: BTreeMap<usize, Vec<(usize, u64)>> = BTreeMap::new();
    for row in &m.data {
        let mut cur = row.clone();
        while let Some(&(lead, coeff)) = cur.first() {
            match pivots.get(&lead) {
                Some(p) => cur = axpy(field, &cur, field.neg(coeff), p),
                None => {
                    let inv = field.inv(coeff);
                    for e in &mut cur {
                        e.1 = field.mul(e.1, inv);
                    }
                    pivots.insert(lead, cur);
                    break;
                }
            }
        }
    }
    pivots.len()
}

// x + s*y on sorted sparse rows
fn axpy(field: PrimeField, x: &[(usize, u64)], s: u64, y: &[(usize, u64)]) -> Vec<(usize, u64)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i]);
            i += 1;
        } else if take_y {
            let v = field.mul(s, y[j].1);
            if v != 0 {
                out.push((y[j].0, v));
            }
            j += 1;
        } else {
            let v = field.add(x[i].1, field.mul(s, y[j].1));
            if v != 0 {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Reduced row echelon form in place; returns the pivot columns.
fn rref_in_place(field: PrimeField, a: &mut [Vec<u64>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == a.len() {
            break;
        }
        let Some(p) = (r..a.len()).find(|&i| a[i][c] != 0) else { continue };
        a.swap(r, p);
        let inv = field.inv(a[r][c]);
        for v in a[r].iter_mut() {
            *v = field.mul(*v, inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot_row) {
                    *v = field.sub(*v, field.mul(f, pv));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A basis of `{x : m x = 0}`.
pub fn kernel_basis(field: PrimeField, m: &SparseMatrix) -> Vec<Vec<u64>> {
    let mut a = m.to_dense();
    let pivots = rref_in_place(field, &mut a, m.cols);
    let is_pivot: Vec<bool> = (0..m.cols).map(|c| pivots.contains(&c)).collect();
    let mut basis = Vec::new();
    for free in (0..m.cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0; m.cols];
        v[free] = 1;
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = field.neg(a[r][free]);
        }
        basis.push(v);
    }
    basis
}

/// Some `x` with `m x = b`, or `None` if the system is inconsistent.
pub fn solve(field: PrimeField, m: &SparseMatrix, b: &[u64]) -> Option<Vec<u64>> {
    assert_eq!(b.len(), m.rows);
    let mut a = m.to_dense();
    for (row, &bv) in a.iter_mut().zip(b) {
        row.push(bv);
    }
    let pivots = rref_in_place(field, &mut a, m.cols + 1);
    if pivots.last() == Some(&m.cols) {
        return None;
    }
    let mut x = vec![0; m.cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = a[r][m.cols];
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(q: u64) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    #[test]
    fn small_ranks() {
        let q = f(7);
        let m = SparseMatrix::from_dense(q, &[vec![1, 2, 3], vec![2, 4, 6], vec![0, 1, 1]], 3);
        assert_eq!(rank(q, &m), 2);
        assert_eq!(rank_sparse(q, &m), 2);
        assert_eq!(rank(q, &SparseMatrix::zeros(0, 4)), 0);
        assert_eq!(rank(q, &SparseMatrix::zeros(3, 3)), 0);
    }

    #[test]
    fn characteristic_matters() {
        // det = 2, singular only mod 2
        let rows = vec![vec![1, 1], vec![1, 3]];
        assert_eq!(rank(f(2), &SparseMatrix::from_dense(f(2), &rows, 2)), 1);
        assert_eq!(rank(f(3), &SparseMatrix::from_dense(f(3), &rows, 2)), 2);
    }

    #[test]
    fn kernel_and_solve() {
        let q = f(32003);
        let m = SparseMatrix::from_dense(q, &[vec![1, 1, 0], vec![0, 1, 1]], 3);
        let k = kernel_basis(q, &m);
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(q, &k[0]).iter().all(|&v| v == 0));
        let x = solve(q, &m, &[3, 5]).unwrap();
        assert_eq!(m.mul_vec(q, &x), vec![3, 5]);
        let m2 = SparseMatrix::from_dense(q, &[vec![1, 1], vec![1, 1]], 2);
        assert!(solve(q, &m2, &[1, 2]).is_none());
    }

    fn arb_matrix() -> impl Strategy<Value = (u64, usize, usize, Vec<u64>)> {
        (prop::sample::select(vec![2u64, 3, 5, 32003]), 1usize..12, 1usize..12).prop_flat_map(|(q, r, c)| {
            (Just(q), Just(r), Just(c), prop::collection::vec(0u64..q.min(4), r * c))
        })
    }

    proptest! {
        #[test]
        fn dense_and_sparse_rank_agree((q, _r, c, vals) in arb_matrix()) {
            let field = f(q);
            let dense: Vec<Vec<u64>> = vals.chunks(c).map(|ch| ch.to_vec()).collect();
            let m = SparseMatrix::from_dense(field, &dense, c);
            let rd = rank_dense(field, dense, c);
            prop_assert_eq!(rd, rank_sparse(field, &m));
            prop_assert_eq!(rd, rank_with_threshold(field, &m, 0));
            let ker = kernel_basis(field, &m);
            prop_assert_eq!(ker.len() + rd, c);
            for v in &ker {
                prop_assert!(m.mul_vec(field, v).iter().all(|&x| x == 0));
            }
        }

        #[test]
        fn solve_recovers_image((q, r, c, vals) in arb_matrix(), seed in 0u64..1000) {
            let field = f(q);
            let dense: Vec<Vec<u64>> = vals.chunks(c).map(|ch| ch.to_vec()).collect();
            let m = SparseMatrix::from_dense(field, &dense, c);
            let x: Vec<u64> = (0..c as u64).map(|i| (seed * 31 + i * 7) % q).collect();
            let b = m.mul_vec(field, &x);
            let y = solve(field, &m, &b).expect("b is in the image");
            prop_assert_eq!(m.mul_vec(field, &y), b);
            let _ = r;
        }
    }
}

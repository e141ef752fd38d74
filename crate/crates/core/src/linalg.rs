//! Exact linear algebra over `Field`: row reduction, rank, kernels.

use std::collections::BTreeMap;

use crate::field::{Field, Scalar};

/// Row-reduce in place to reduced row echelon form; returns pivot columns.
pub fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (v, pv) in row.iter_mut().zip(&pivot) {
                    *v = &*v - &(&f * pv);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    rref(&mut rows.to_vec()).len()
}

/// Basis of `{v : M v = 0}` for `M` given by rows with `ncols` columns.
/// One vector per free column, with a 1 in that column.
pub fn kernel(rows: &[Vec<Scalar>], ncols: usize, field: Field) -> Vec<Vec<Scalar>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let mut out = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![field.zero(); ncols];
        v[free] = field.one();
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = -&row[free];
        }
        out.push(v);
    }
    out
}

/// Incremental echelon basis of sparse vectors indexed by an ordered key.
#[derive(Debug, Clone)]
pub struct SparseEchelon<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, Scalar>>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Adds `v` to the span; true iff it was independent of the rows so far.
    pub fn insert(&mut self, mut v: BTreeMap<K, Scalar>) -> bool {
        v.retain(|_, c| !c.is_zero());
        while let Some((k, c)) = v.last_key_value().map(|(k, c)| (k.clone(), c.clone())) {
            let Some(row) = self.rows.get(&k) else {
                let inv = c.inv();
                for x in v.values_mut() {
                    *x = &*x * &inv;
                }
                self.rows.insert(k, v);
                return true;
            };
            for (rk, rc) in row {
                let d = &c * rc;
                let e = v.entry(rk.clone()).or_insert_with(|| c.field().zero());
                *e = &*e - &d;
                if e.is_zero() {
                    v.remove(rk);
                }
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mat(field: Field, rows: &[&[i64]]) -> Vec<Vec<Scalar>> {
        rows.iter()
            .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
            .collect()
    }

    #[test]
    fn rank_and_kernel_small() {
        let f2 = Field::Prime(2);
        let m = mat(f2, &[&[1, 0, 1], &[0, 1, 1]]);
        assert_eq!(rank(&m), 2);
        let k = kernel(&m, 3, f2);
        assert_eq!(k, mat(f2, &[&[1, 1, 1]]));
        let q = Field::Rational;
        let m = mat(q, &[&[1, 2], &[2, 4]]);
        assert_eq!(rank(&m), 1);
        assert_eq!(kernel(&m, 2, q), mat(q, &[&[-2, 1]]));
        assert_eq!(kernel(&[], 2, q).len(), 2);
    }

    #[test]
    fn sparse_echelon_tracks_rank() {
        let f = Field::Prime(3);
        let mut e = SparseEchelon::new();
        let v = |pairs: &[(u8, i64)]| pairs.iter().map(|&(k, c)| (k, f.from_i64(c))).collect();
        assert!(e.insert(v(&[(1, 1), (2, 1)])));
        assert!(e.insert(v(&[(2, 2)])));
        assert!(!e.insert(v(&[(1, 2)])));
        assert!(!e.insert(v(&[])));
        assert_eq!(e.rank(), 2);
    }

    proptest! {
        #[test]
        fn kernel_vectors_are_annihilated(entries in proptest::collection::vec(-3i64..=3, 12)) {
            for field in [Field::Prime(5), Field::Rational] {
                let rows: Vec<Vec<Scalar>> = entries.chunks(4)
                    .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                    .collect();
                let k = kernel(&rows, 4, field);
                prop_assert_eq!(k.len() + rank(&rows), 4);
                for v in &k {
                    for r in &rows {
                        let dot = r.iter().zip(v).fold(field.zero(), |acc, (a, b)| &acc + &(a * b));
                        prop_assert!(dot.is_zero());
                    }
                }
                let mut e = SparseEchelon::new();
                for r in &rows {
                    e.insert(r.iter().cloned().enumerate().collect());
                }
                prop_assert_eq!(e.rank(), rank(&rows));
            }
        }
    }
}

//! Exact linear algebra over the rationals.
//!
//! Rows are sparse (`column -> value`); elimination keeps an echelon basis
//! keyed by pivot column, so rank queries on a few hundred rows with
//! thousands of columns stay cheap.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::Rational;

pub type SparseRow = BTreeMap<usize, Rational>;

/// Incremental row echelon form. Each stored row has a leading 1 at its
/// pivot column and no entries at earlier pivot columns.
#[derive(Debug, Default, Clone)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseRow>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the stored basis. Returns `true` when it was
    /// linearly independent and has been added.
    pub fn insert(&mut self, row: SparseRow) -> bool {
        let reduced = self.reduce(row);
        let Some((&pivot, lead)) = reduced.iter().next() else {
            return false;
        };
        let lead = lead.clone();
        let normalized: SparseRow = reduced.into_iter().map(|(c, v)| (c, v / &lead)).collect();
        self.rows.insert(pivot, normalized);
        true
    }

    pub fn contains(&self, row: SparseRow) -> bool {
        self.reduce(row).is_empty()
    }

    fn reduce(&self, mut row: SparseRow) -> SparseRow {
        row.retain(|_, v| !v.is_zero());
        let mut cursor = 0usize;
        loop {
            let next = row.range(cursor..).find(|(c, _)| self.rows.contains_key(c)).map(|(c, v)| (*c, v.clone()));
            let Some((col, factor)) = next else { break };
            let basis = &self.rows[&col];
            for (c, v) in basis {
                let entry = row.entry(*c).or_insert_with(Rational::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    row.remove(c);
                }
            }
            cursor = col + 1;
        }
        row
    }
}

pub fn rank(rows: impl IntoIterator<Item = SparseRow>) -> usize {
    let mut ech = Echelon::new();
    for r in rows {
        ech.insert(r);
    }
    ech.rank()
}

/// Rank of a dense matrix given row by row.
pub fn dense_rank(matrix: &[Vec<Rational>]) -> usize {
    rank(matrix.iter().map(|row| {
        row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())).collect()
    }))
}

/// Basis of the right kernel `{ v : A v = 0 }` of a dense `rows x cols` matrix.
pub fn kernel(matrix: &[Vec<Rational>], cols: usize) -> Vec<Vec<Rational>> {
    let mut a: Vec<Vec<Rational>> = matrix.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut prow = 0;
    for col in 0..cols {
        if prow >= a.len() {
            break;
        }
        let Some(found) = (prow..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(found, prow);
        let lead = a[prow][col].clone();
        for v in a[prow].iter_mut() {
            *v = &*v / &lead;
        }
        for r in 0..a.len() {
            if r == prow || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            let pivot_row = a[prow].clone();
            for (v, p) in a[r].iter_mut().zip(pivot_row.iter()) {
                *v -= &factor * p;
            }
        }
        pivots.push(col);
        prow += 1;
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Rational::zero(); cols];
            v[fc] = Rational::from_integer(1.into());
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][fc].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn dense(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect()
    }

    #[test]
    fn rank_of_small_matrices() {
        assert_eq!(dense_rank(&dense(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(dense_rank(&dense(&[&[1, 0, 1], &[0, 1, 1], &[1, 1, 2]])), 2);
        assert_eq!(dense_rank(&dense(&[&[0, 0], &[0, 0]])), 0);
        assert_eq!(dense_rank(&dense(&[&[1, 0], &[0, 1]])), 2);
    }

    #[test]
    fn kernel_vectors_are_annihilated() {
        let m = dense(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        let k = kernel(&m, 3);
        assert_eq!(k.len(), 1);
        for v in &k {
            for row in &m {
                let dot: Rational = row.iter().zip(v).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
        assert_eq!(kernel(&dense(&[&[0, 0]]), 2).len(), 2);
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new();
        let r1: SparseRow = [(0, int(1)), (3, int(2))].into_iter().collect();
        let r2: SparseRow = [(3, int(1)), (5, int(1))].into_iter().collect();
        assert!(e.insert(r1.clone()));
        assert!(e.insert(r2));
        let combo: SparseRow = [(0, int(2)), (3, int(5)), (5, int(1))].into_iter().collect();
        assert!(e.contains(combo.clone()));
        assert!(!e.insert(combo));
        assert_eq!(e.rank(), 2);
    }
}

//! Incremental sparse row echelon form for large linear systems.

use std::collections::BTreeMap;

use super::field;
use super::matrix::Vector;

/// A sparse row: strictly increasing column indices with nonzero values.
pub type SparseRow = Vec<(usize, u32)>;

/// Rows are reduced as they arrive; the leading entry of every stored row is 1.
#[derive(Clone, Debug)]
pub struct SparseEchelon {
    p: u32,
    ncols: usize,
    pivots: BTreeMap<usize, (SparseRow, u32)>,
    inconsistent: bool,
}

/// `a - c * b` on sorted sparse rows.
fn axpy(p: u32, a: &[(usize, u32)], c: u32, b: &[(usize, u32)]) -> SparseRow {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let take_a = j == b.len() || (i < a.len() && a[i].0 < b[j].0);
        let take_b = i == a.len() || (j < b.len() && b[j].0 < a[i].0);
        if take_a {
            out.push(a[i]);
            i += 1;
        } else if take_b {
            out.push((b[j].0, field::neg(p, field::mul(p, c, b[j].1))));
            j += 1;
        } else {
            let v = field::sub(p, a[i].1, field::mul(p, c, b[j].1));
            if v != 0 {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

impl SparseEchelon {
    pub fn new(p: u32, ncols: usize) -> Self {
        Self { p, ncols, pivots: BTreeMap::new(), inconsistent: false }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// True once some equation reduced to `0 = c` with `c != 0`.
    pub fn is_inconsistent(&self) -> bool {
        self.inconsistent
    }

    /// Adds the equation `row . x = rhs`. Entries may be unsorted or repeated.
    /// Returns whether the rank grew.
    pub fn push(&mut self, row: impl IntoIterator<Item = (usize, u32)>, rhs: u32) -> bool {
        let p = self.p;
        let mut acc: BTreeMap<usize, u32> = BTreeMap::new();
        for (c, v) in row {
            debug_assert!(c < self.ncols);
            let e = acc.entry(c).or_insert(0);
            *e = field::add(p, *e, v % p);
        }
        let mut r: SparseRow = acc.into_iter().filter(|&(_, v)| v != 0).collect();
        let mut b = rhs % p;
        while let Some(&(lead, coef)) = r.first() {
            match self.pivots.get(&lead) {
                Some((prow, prhs)) => {
                    r = axpy(p, &r, coef, prow);
                    b = field::sub(p, b, field::mul(p, coef, *prhs));
                }
                None => {
                    let iv = field::inv(p, coef);
                    for e in r.iter_mut() {
                        e.1 = field::mul(p, e.1, iv);
                    }
                    self.pivots.insert(lead, (r, field::mul(p, b, iv)));
                    return true;
                }
            }
        }
        if b != 0 {
            self.inconsistent = true;
        }
        false
    }

    fn back_substitute(&self, x: &mut [u32], with_rhs: bool) {
        let p = self.p;
        for (&c, (row, rhs)) in self.pivots.iter().rev() {
            let mut v = if with_rhs { *rhs } else { 0 };
            for &(j, a) in &row[1..] {
                if x[j] != 0 {
                    v = field::sub(p, v, field::mul(p, a, x[j]));
                }
            }
            x[c] = v;
        }
    }

    /// A particular solution with every free variable set to zero.
    pub fn solve(&self) -> Option<Vector> {
        if self.inconsistent {
            return None;
        }
        let mut x = vec![0; self.ncols];
        self.back_substitute(&mut x, true);
        Some(x)
    }

    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.pivots.contains_key(c)).collect()
    }

    /// Basis of the homogeneous solution space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        self.free_columns()
            .into_iter()
            .map(|f| {
                let mut x = vec![0; self.ncols];
                x[f] = 1;
                self.back_substitute(&mut x, false);
                x
            })
            .collect()
    }

    /// Whether `row` lies in the span of the rows pushed so far (ignoring right-hand sides).
    pub fn contains(&self, row: &[(usize, u32)]) -> bool {
        let mut probe = Self { pivots: self.pivots.clone(), ..Self::new(self.p, self.ncols) };
        !probe.push(row.iter().copied(), 0)
    }
}

/// Convert a dense vector to sparse form.
pub fn to_sparse(v: &[u32]) -> SparseRow {
    v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, &x)| (i, x)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::PrimeFieldMatrix;

    #[test]
    fn agrees_with_dense() {
        let m = PrimeFieldMatrix::from_rows(7, &[&[1, 2, 3, 4], &[2, 4, 6, 1], &[0, 0, 0, 3], &[3, 6, 9, 5]]);
        let mut e = SparseEchelon::new(7, 4);
        for r in 0..4 {
            e.push(to_sparse(m.row(r)), 0);
        }
        assert_eq!(e.rank(), m.rank());
        let k = e.kernel_basis();
        assert_eq!(k.len(), 4 - m.rank());
        for v in k {
            assert!(m.mul_vec(&v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn inconsistency() {
        let mut e = SparseEchelon::new(5, 2);
        e.push([(0, 1), (1, 1)], 1);
        e.push([(0, 2), (1, 2)], 3);
        assert!(e.is_inconsistent());
        assert!(e.solve().is_none());
        let mut e = SparseEchelon::new(5, 2);
        e.push([(0, 1), (1, 1)], 1);
        e.push([(1, 1)], 4);
        let x = e.solve().unwrap();
        assert_eq!((x[0] + x[1]) % 5, 1);
        assert_eq!(x[1], 4);
    }
}

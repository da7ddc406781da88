//! Sparse vectors and an incremental reduced row echelon form.
//!
//! Every linear system in the crate ends up here: hom spaces between
//! projectives, homotopy quotients, ideal closures. Pivots are always the
//! leftmost nonzero column, so bases come out the same on every run.

use super::Rational;

/// Sorted `(column, value)` pairs with no explicit zeros.
pub type SparseVec = Vec<(usize, Rational)>;

pub fn sparse_from_dense(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::ZERO; len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn sparse_get(v: &SparseVec, col: usize) -> Option<&Rational> {
    v.binary_search_by_key(&col, |(c, _)| *c).ok().map(|i| &v[i].1)
}

/// `a + factor * b`.
pub fn sparse_axpy(a: &SparseVec, factor: &Rational, b: &SparseVec) -> SparseVec {
    if factor.is_zero() {
        return a.clone();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i].clone());
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push((b[j].0, factor * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + &(factor * &b[j].1);
            if !v.is_zero() {
                out.push((a[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

pub fn sparse_scale(a: &SparseVec, factor: &Rational) -> SparseVec {
    if factor.is_zero() {
        return Vec::new();
    }
    a.iter().map(|(c, x)| (*c, x * factor)).collect()
}

/// Accumulates `(column, value)` contributions into a sorted sparse vector.
pub fn sparse_collect(mut entries: Vec<(usize, Rational)>) -> SparseVec {
    entries.sort_by_key(|(c, _)| *c);
    let mut out: SparseVec = Vec::with_capacity(entries.len());
    for (c, v) in entries {
        match out.last_mut() {
            Some((lc, lv)) if *lc == c => *lv += &v,
            _ => out.push((c, v)),
        }
    }
    out.retain(|(_, v)| !v.is_zero());
    out
}

/// Reduced row echelon form built one row at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    ncols: usize,
    rows: Vec<SparseVec>,
    pivots: Vec<usize>,
    row_of_pivot: Vec<usize>,
}

const NONE: usize = usize::MAX;

impl Echelon {
    pub fn new(ncols: usize) -> Self {
        Echelon {
            ncols,
            rows: Vec::new(),
            pivots: Vec::new(),
            row_of_pivot: vec![NONE; ncols],
        }
    }

    pub fn from_rows<I: IntoIterator<Item = SparseVec>>(ncols: usize, rows: I) -> Self {
        let mut e = Echelon::new(ncols);
        for r in rows {
            e.insert(r);
        }
        e
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, col: usize) -> bool {
        self.row_of_pivot[col] != NONE
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    /// Row whose pivot is `col`, if any.
    pub fn pivot_row(&self, col: usize) -> Option<&SparseVec> {
        match self.row_of_pivot[col] {
            NONE => None,
            r => Some(&self.rows[r]),
        }
    }

    /// Remainder of `v` after eliminating all pivot columns.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut out = v.clone();
        for (c, x) in v {
            let r = self.row_of_pivot[*c];
            if r != NONE {
                // `out` still holds the original value at `c`: RREF rows vanish
                // on every other pivot column.
                out = sparse_axpy(&out, &-x, &self.rows[r]);
            }
        }
        out
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v` to the row space; returns the new pivot column if the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> Option<usize> {
        let mut r = self.reduce(&v);
        if r.is_empty() {
            return None;
        }
        let q = r[0].0;
        let inv = r[0].1.recip();
        if !inv.is_one() {
            r = sparse_scale(&r, &inv);
        }
        for row in self.rows.iter_mut() {
            if let Some(x) = sparse_get(row, q) {
                let f = -x;
                *row = sparse_axpy(row, &f, &r);
            }
        }
        self.row_of_pivot[q] = self.rows.len();
        self.rows.push(r);
        self.pivots.push(q);
        Some(q)
    }

    /// Non-pivot columns in increasing order.
    pub fn free_columns(&self) -> Vec<usize> {
        (0..self.ncols).filter(|c| !self.is_pivot(*c)).collect()
    }

    /// Null space of the inserted rows. Vector `k` carries a 1 in the `k`-th
    /// free column and 0 in every other free column.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let free = self.free_columns();
        let mut index = vec![NONE; self.ncols];
        for (k, f) in free.iter().enumerate() {
            index[*f] = k;
        }
        let mut out: Vec<Vec<(usize, Rational)>> = free.iter().map(|f| vec![(*f, Rational::ONE)]).collect();
        for (row, p) in self.rows.iter().zip(&self.pivots) {
            for (c, x) in row {
                if c != p {
                    out[index[*c]].push((*p, -x));
                }
            }
        }
        out.into_iter()
            .map(|mut v| {
                v.sort_by_key(|(c, _)| *c);
                v
            })
            .collect()
    }

    /// Row-space basis in pivot order, each as a dense vector.
    pub fn dense_rows(&self) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| sparse_to_dense(r, self.ncols)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn echelon_kernel_annihilates() {
        let rows = vec![
            sparse_from_dense(&[q(1), q(2), q(3), q(4)]),
            sparse_from_dense(&[q(2), q(4), q(7), q(1)]),
            sparse_from_dense(&[q(3), q(6), q(10), q(5)]),
        ];
        let e = Echelon::from_rows(4, rows.clone());
        assert_eq!(e.rank(), 2);
        let ker = e.kernel();
        assert_eq!(ker.len(), 2);
        for k in &ker {
            let kd = sparse_to_dense(k, 4);
            for r in &rows {
                let rd = sparse_to_dense(r, 4);
                let dot: Rational = rd.iter().zip(&kd).map(|(a, b)| a * b).sum();
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn reduce_and_contains() {
        let e = Echelon::from_rows(3, vec![sparse_from_dense(&[q(1), q(1), q(0)])]);
        assert!(e.contains(&sparse_from_dense(&[q(3), q(3), q(0)])));
        assert!(!e.contains(&sparse_from_dense(&[q(1), q(0), q(0)])));
        assert_eq!(e.reduce(&sparse_from_dense(&[q(1), q(0), q(0)])), vec![(1, q(-1))]);
    }

    #[test]
    fn collect_merges_duplicates() {
        let v = sparse_collect(vec![(3, q(1)), (1, q(2)), (3, q(-1)), (1, q(1))]);
        assert_eq!(v, vec![(1, q(3))]);
    }
}

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum IntMatrixError {
    #[error("matrix is not unimodular (determinant {0})")]
    NotUnimodular(BigInt),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
}

/// Dense integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flat_map(|r| r.iter().map(|x| BigInt::from(*x))).collect(),
        }
    }

    /// Matrix whose columns are the given integer vectors.
    pub fn from_columns(nrows: usize, cols: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = BigInt::from(*x);
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

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let p = a * &other[(k, j)];
                    out[(i, j)] += p;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * &v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn to_rational(&self) -> RatMatrix {
        RatMatrix::from_vec(
            self.rows,
            self.cols,
            self.data.iter().map(|x| Rational::from_bigint(x.clone())).collect(),
        )
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt, IntMatrixError> {
        if self.rows != self.cols {
            return Err(IntMatrixError::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                match (k + 1..n).find(|&i| !a[(i, k)].is_zero()) {
                    Some(i) => {
                        a.swap_rows(k, i);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * a[(n - 1, n - 1)].clone())
    }

    /// Exact inverse of a unimodular matrix.
    pub fn int_inverse(&self) -> Result<IntMatrix, IntMatrixError> {
        let d = self.det()?;
        if d.abs() != BigInt::one() {
            return Err(IntMatrixError::NotUnimodular(d));
        }
        let inv = self.to_rational().inverse().expect("unit determinant");
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(i, j)] = inv[(i, j)].to_bigint().expect("integral inverse");
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * f;
            self[(dst, j)] += v;
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * f;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -&self[(r, j)];
            self[(r, j)] = v;
        }
    }

    /// Smith normal form `(U, D, V)` with `U * self * V = D`.
    pub fn smith_normal_form(&self) -> SmithForm {
        let (m, n) = (self.rows, self.cols);
        let mut d = self.clone();
        let mut u = IntMatrix::identity(m);
        let mut v = IntMatrix::identity(n);
        for t in 0..m.min(n) {
            loop {
                // Smallest nonzero entry of the trailing block becomes the pivot.
                let mut best: Option<(usize, usize)> = None;
                for i in t..m {
                    for j in t..n {
                        if !d[(i, j)].is_zero()
                            && best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs())
                        {
                            best = Some((i, j));
                        }
                    }
                }
                let Some((pi, pj)) = best else {
                    return SmithForm::finish(u, d, v);
                };
                d.swap_rows(t, pi);
                u.swap_rows(t, pi);
                d.swap_cols(t, pj);
                v.swap_cols(t, pj);

                let mut clean = true;
                for i in t + 1..m {
                    if d[(i, t)].is_zero() {
                        continue;
                    }
                    let q = -d[(i, t)].div_floor(&d[(t, t)]);
                    d.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                    if !d[(i, t)].is_zero() {
                        clean = false;
                    }
                }
                for j in t + 1..n {
                    if d[(t, j)].is_zero() {
                        continue;
                    }
                    let q = -d[(t, j)].div_floor(&d[(t, t)]);
                    d.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                    if !d[(t, j)].is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    continue;
                }
                // Divisibility: fold any offending row into the pivot row.
                let p = d[(t, t)].clone();
                let bad = (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&p)));
                match bad {
                    Some(i) => {
                        let one = BigInt::one();
                        d.add_row(t, i, &one);
                        u.add_row(t, i, &one);
                    }
                    None => break,
                }
            }
            if d[(t, t)].is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
        }
        SmithForm::finish(u, d, v)
    }
}

/// Result of [`IntMatrix::smith_normal_form`].
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    fn finish(mut u: IntMatrix, mut d: IntMatrix, v: IntMatrix) -> Self {
        for t in 0..d.rows.min(d.cols) {
            if d[(t, t)].is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
        }
        SmithForm { u, d, v }
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }

    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| *x > BigInt::one()).collect()
    }
}

impl Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i).iter().map(|x| x.to_string()).collect::<Vec<_>>())?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn diag(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|x| BigInt::from(*x)).collect()
    }

    #[test]
    fn snf_examples() {
        let s = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]).smith_normal_form();
        assert_eq!(s.diagonal(), diag(&[2, 4]));
        assert_eq!(IntMatrix::identity(3).smith_normal_form().diagonal(), diag(&[1, 1, 1]));
        assert_eq!(IntMatrix::zeros(2, 2).smith_normal_form().diagonal(), diag(&[0, 0]));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(IntMatrix::identity(2).int_inverse().unwrap(), IntMatrix::identity(2));
        assert_eq!(
            IntMatrix::from_i64(&[&[1, 1], &[0, 1]]).int_inverse().unwrap(),
            IntMatrix::from_i64(&[&[1, -1], &[0, 1]])
        );
        assert_eq!(
            IntMatrix::from_i64(&[&[2, 0], &[0, 1]]).int_inverse(),
            Err(IntMatrixError::NotUnimodular(BigInt::from(2)))
        );
    }

    #[test]
    fn det_matches_hand_values() {
        assert_eq!(IntMatrix::from_i64(&[&[0, 1], &[1, 0]]).det().unwrap(), BigInt::from(-1));
        assert_eq!(IntMatrix::from_i64(&[&[2, 4], &[6, 8]]).det().unwrap(), BigInt::from(-8));
        assert_eq!(
            IntMatrix::from_i64(&[&[0, 0, 1], &[0, 2, 0], &[3, 0, 0]]).det().unwrap(),
            BigInt::from(-6)
        );
    }

    fn int_matrix() -> impl Strategy<Value = IntMatrix> {
        (1usize..5, 1usize..5).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-6i64..7, r * c).prop_map(move |d| IntMatrix {
                rows: r,
                cols: c,
                data: d.into_iter().map(BigInt::from).collect(),
            })
        })
    }

    proptest! {
        #[test]
        fn snf_invariants(m in int_matrix()) {
            let s = m.smith_normal_form();
            prop_assert_eq!(s.u.mul(&m).mul(&s.v), s.d.clone());
            prop_assert!(s.d.is_diagonal());
            prop_assert_eq!(s.u.det().unwrap().abs(), BigInt::one());
            prop_assert_eq!(s.v.det().unwrap().abs(), BigInt::one());
            let dg = s.diagonal();
            for w in dg.windows(2) {
                prop_assert!(!w[0].is_negative());
                if !w[0].is_zero() {
                    prop_assert!(w[1].is_multiple_of(&w[0]));
                } else {
                    prop_assert!(w[1].is_zero());
                }
            }
            prop_assert_eq!(s.rank(), m.to_rational().rank());
        }
    }
}

use std::fmt;
use std::ops::{Index, IndexMut};

use super::sparse::{sparse_from_dense, sparse_to_dense, Echelon};
use super::Rational;

/// Dense row-major matrix over the rationals.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            data: vec![Rational::ZERO; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::ONE;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Rational>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count does not match shape");
        RatMatrix { rows, cols, data }
    }

    /// Panics if the rows are ragged.
    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RatMatrix {
            rows: rows.len(),
            cols,
            data: rows.iter().flatten().cloned().collect(),
        }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|x| Rational::from_int(*x)).collect())
            .collect();
        Self::from_rows(&rows)
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(nrows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows);
            for (i, x) in c.iter().enumerate() {
                m[(i, j)] = x.clone();
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

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> RatMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).filter(|(a, _)| !a.is_zero()).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * s).collect(),
        }
    }

    pub fn trace(&self) -> Rational {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)].clone()).sum()
    }

    /// Row-major entries.
    pub fn data(&self) -> &[Rational] {
        &self.data
    }

    pub fn echelon(&self) -> Echelon {
        Echelon::from_rows(self.cols, (0..self.rows).map(|i| sparse_from_dense(self.row(i))))
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Basis of the right null space. Vectors are taken from the reduced
    /// echelon form (one per free column, in column order) and scaled so their
    /// first nonzero entry is 1.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        self.echelon()
            .kernel()
            .into_iter()
            .map(|k| {
                let lead = k[0].1.recip();
                sparse_to_dense(&k, self.cols).iter().map(|x| x * &lead).collect()
            })
            .collect()
    }

    /// One particular solution of `self * x = b` plus the null-space basis,
    /// or `None` if the system is inconsistent.
    pub fn solve(&self, b: &[Rational]) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
        assert_eq!(b.len(), self.rows, "right-hand side has the wrong length");
        let n = self.cols;
        let mut e = Echelon::new(n + 1);
        for i in 0..self.rows {
            let mut row = sparse_from_dense(self.row(i));
            if !b[i].is_zero() {
                row.push((n, b[i].clone()));
            }
            e.insert(row);
        }
        if e.is_pivot(n) {
            return None;
        }
        let mut x = vec![Rational::ZERO; n];
        for (row, p) in e.rows().iter().zip(e.pivots()) {
            if let Some((c, v)) = row.last() {
                if *c == n {
                    x[*p] = v.clone();
                }
            }
        }
        Some((x, self.kernel_basis()))
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<RatMatrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut e = Echelon::new(2 * n);
        for i in 0..n {
            let mut row = sparse_from_dense(self.row(i));
            row.push((n + i, Rational::ONE));
            e.insert(row);
        }
        if (0..n).any(|c| !e.is_pivot(c)) {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for c in 0..n {
            let row = e.pivot_row(c).expect("pivot");
            for (j, v) in row {
                if *j >= n {
                    inv[(c, j - n)] = v.clone();
                }
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:?}", self.row(i))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|x| Rational::from_int(*x)).collect()
    }

    #[test]
    fn kernel_examples() {
        let m = RatMatrix::from_i64(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.kernel_basis(), vec![v(&[1, -1])]);
        assert!(RatMatrix::identity(3).kernel_basis().is_empty());
        let z = RatMatrix::zeros(2, 3);
        assert_eq!(z.kernel_basis(), vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]);
    }

    #[test]
    fn solve_examples() {
        let (x, k) = RatMatrix::identity(2).solve(&v(&[2, 3])).unwrap();
        assert_eq!(x, v(&[2, 3]));
        assert!(k.is_empty());
        let (x, k) = RatMatrix::from_i64(&[&[1, 1]]).solve(&v(&[5])).unwrap();
        assert_eq!(x, v(&[5, 0]));
        assert_eq!(k, vec![v(&[1, -1])]);
        assert!(RatMatrix::from_i64(&[&[0]]).solve(&v(&[1])).is_none());
    }

    #[test]
    fn inverse_round_trip() {
        let m = RatMatrix::from_i64(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), RatMatrix::identity(2));
        assert!(RatMatrix::from_i64(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    fn small_matrix() -> impl Strategy<Value = RatMatrix> {
        (1usize..5, 1usize..6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(-3i64..4, r * c)
                .prop_map(move |d| RatMatrix::from_vec(r, c, d.into_iter().map(Rational::from_int).collect()))
        })
    }

    proptest! {
        #[test]
        fn kernel_is_annihilated_and_has_right_size(m in small_matrix()) {
            let ker = m.kernel_basis();
            prop_assert_eq!(ker.len(), m.cols() - m.rank());
            for k in &ker {
                prop_assert!(m.mul_vec(k).iter().all(Rational::is_zero));
            }
        }

        #[test]
        fn particular_solution_reproduces_rhs(m in small_matrix(), seed in proptest::collection::vec(-3i64..4, 6)) {
            let x0: Vec<Rational> = seed.iter().take(m.cols()).map(|x| Rational::from_int(*x)).collect();
            let b = m.mul_vec(&x0);
            let (x, _) = m.solve(&b).expect("consistent by construction");
            prop_assert_eq!(m.mul_vec(&x), b);
        }
    }
}

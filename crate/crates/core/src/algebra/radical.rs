//! Abstract finite dimensional algebras given by structure constants, with
//! the Jacobson radical computed from the trace form (valid in
//! characteristic zero).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::poly::minimal_polynomial;
use crate::linalg::sparse::{sparse_from_dense, sparse_to_dense, Echelon};
use crate::linalg::{RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SemisimpleError {
    #[error("could not split the semisimple quotient after {0} random elements")]
    IdempotentSearchExhausted(usize),
    #[error("matrices are not closed under multiplication")]
    NotClosed,
}

/// `basis_i * basis_j = sum_k table[i][j][k] basis_k`.
#[derive(Debug, Clone)]
pub struct FiniteAlgebra {
    dim: usize,
    table: Vec<Vec<Vec<Rational>>>,
}

impl FiniteAlgebra {
    pub fn new(dim: usize, table: Vec<Vec<Vec<Rational>>>) -> Self {
        assert_eq!(table.len(), dim);
        FiniteAlgebra { dim, table }
    }

    /// Structure constants of the span of `basis`, which must be linearly
    /// independent and closed under products.
    pub fn from_matrices(basis: &[RatMatrix]) -> Result<Self, SemisimpleError> {
        let dim = basis.len();
        if dim == 0 {
            return Ok(FiniteAlgebra { dim, table: vec![] });
        }
        let len = basis[0].rows() * basis[0].cols();
        // Tag columns record the combination, so coordinates can be read back.
        let mut ech = Echelon::new(len + dim);
        for (i, b) in basis.iter().enumerate() {
            let mut row = sparse_from_dense(b.data());
            row.push((len + i, Rational::ONE));
            ech.insert(row);
        }
        let coords = |m: &RatMatrix| -> Result<Vec<Rational>, SemisimpleError> {
            let r = ech.reduce(&sparse_from_dense(m.data()));
            if r.iter().any(|(c, _)| *c < len) {
                return Err(SemisimpleError::NotClosed);
            }
            // m - sum c_i b_i reduces to -sum c_i tag_i.
            let mut out = vec![Rational::ZERO; dim];
            for (c, v) in r {
                out[c - len] = -v;
            }
            Ok(out)
        };
        let mut table = vec![vec![Vec::new(); dim]; dim];
        for i in 0..dim {
            for j in 0..dim {
                table[i][j] = coords(&basis[i].mul(&basis[j]))?;
            }
        }
        Ok(FiniteAlgebra { dim, table })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mul(&self, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::ZERO; self.dim];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let xy = x * y;
                for (k, c) in self.table[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&xy * c);
                    }
                }
            }
        }
        out
    }

    /// Matrix of left multiplication by `a`.
    pub fn left_mul_matrix(&self, a: &[Rational]) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.dim, self.dim);
        for j in 0..self.dim {
            let mut e = vec![Rational::ZERO; self.dim];
            e[j] = Rational::ONE;
            let col = self.mul(a, &e);
            for (i, v) in col.into_iter().enumerate() {
                m[(i, j)] = v;
            }
        }
        m
    }

    /// Basis of the Jacobson radical: the kernel of `(a, b) ↦ tr(L_{ab})`.
    pub fn radical(&self) -> Vec<Vec<Rational>> {
        let d = self.dim;
        // tr(L_{b_m}) = sum_k coefficient of b_k in b_m b_k
        let tr: Vec<Rational> = (0..d).map(|m| (0..d).map(|k| self.table[m][k][k].clone()).sum()).collect();
        let mut form = RatMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                form[(i, j)] = self.table[i][j].iter().zip(&tr).map(|(c, t)| c * t).sum();
            }
        }
        form.kernel_basis()
    }

    /// Number of simple factors of `A / rad A`, assuming every factor is a
    /// full matrix algebra over the rationals. Fails (rather than guessing)
    /// if random central elements never exhibit that.
    pub fn count_simple_components(&self, seed: u64) -> Result<usize, SemisimpleError> {
        let rad = self.radical();
        let d = self.dim;
        let rad_ech = Echelon::from_rows(d, rad.iter().map(|v| sparse_from_dense(v)));
        let comp: Vec<usize> = rad_ech.free_columns();
        let s = comp.len();
        if s == 0 {
            return Ok(0);
        }
        // Quotient algebra on the standard vectors of the complement.
        let embed = |k: usize| {
            let mut v = vec![Rational::ZERO; d];
            v[comp[k]] = Rational::ONE;
            v
        };
        let project = |v: &[Rational]| -> Vec<Rational> {
            let r = sparse_to_dense(&rad_ech.reduce(&sparse_from_dense(v)), d);
            comp.iter().map(|c| r[*c].clone()).collect()
        };
        let mut table = vec![vec![Vec::new(); s]; s];
        for i in 0..s {
            for j in 0..s {
                table[i][j] = project(&self.mul(&embed(i), &embed(j)));
            }
        }
        let quot = FiniteAlgebra { dim: s, table };
        // Center: z with z b_j = b_j z for all j.
        let mut eqs = Vec::new();
        for j in 0..s {
            // rows indexed by output coordinate k, columns by z coordinate i
            let mut m = RatMatrix::zeros(s, s);
            for i in 0..s {
                for k in 0..s {
                    m[(k, i)] = &quot.table[i][j][k] - &quot.table[j][i][k];
                }
            }
            for k in 0..s {
                eqs.push(m.row(k).to_vec());
            }
        }
        let center = RatMatrix::from_rows(&eqs).kernel_basis();
        let zdim = center.len();
        if zdim == 1 {
            return Ok(1);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        const TRIES: usize = 64;
        for _ in 0..TRIES {
            let coeffs: Vec<i64> = (0..zdim).map(|_| rng.gen_range(-4..=4)).collect();
            let z: Vec<Rational> = (0..s)
                .map(|k| center.iter().zip(&coeffs).map(|(c, x)| &c[k] * &Rational::from_int(*x)).sum())
                .collect();
            // Action of z on the center by multiplication.
            let act_cols: Vec<Vec<Rational>> = center.iter().map(|c| quot.mul(&z, c)).collect();
            let basis_m = RatMatrix::from_columns(s, &center);
            let mut m = RatMatrix::zeros(zdim, zdim);
            for (j, col) in act_cols.iter().enumerate() {
                let (x, _) = basis_m.solve(col).expect("center is closed under multiplication");
                for i in 0..zdim {
                    m[(i, j)] = x[i].clone();
                }
            }
            let mp = minimal_polynomial(&m);
            if mp.degree() != Some(zdim) {
                continue;
            }
            if let Some(roots) = mp.rational_roots() {
                if roots.len() == zdim {
                    return Ok(zdim);
                }
            }
        }
        Err(SemisimpleError::IdempotentSearchExhausted(TRIES))
    }
}

/// Radical of an abstract algebra, as coordinate vectors.
pub fn radical_of_endo(alg: &FiniteAlgebra) -> Vec<Vec<Rational>> {
    alg.radical()
}

/// Radical of a multiplication-closed matrix algebra, as matrices.
pub fn radical_of_matrix_algebra(basis: &[RatMatrix]) -> Result<Vec<RatMatrix>, SemisimpleError> {
    let alg = FiniteAlgebra::from_matrices(basis)?;
    Ok(alg
        .radical()
        .iter()
        .map(|c| {
            let mut acc = RatMatrix::zeros(basis[0].rows(), basis[0].cols());
            for (b, x) in basis.iter().zip(c) {
                acc = acc.add(&b.scale(x));
            }
            acc
        })
        .collect())
}

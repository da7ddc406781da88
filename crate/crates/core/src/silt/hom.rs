//! Morphisms in the homotopy category between two-term complexes.
//!
//! `Hom_K(X, Y)` is computed as chain maps modulo null-homotopic ones.
//! `Hom_K(X, Y[1])` reduces to `Hom(X^{-1}, Y^0)` modulo
//! `{h_0 d_X + d_Y h_1}`; higher shifts vanish because the degrees of `X`
//! and `Y[k]` do not overlap once `k ≥ 2`.

use crate::algebra::{BoundQuiverAlgebra, FiniteAlgebra};
use crate::linalg::sparse::{sparse_collect, sparse_to_dense, Echelon, SparseVec};
use crate::linalg::Rational;
use crate::proj::{entry_offsets, ProjMap};

use super::complex::{ChainMap, TwoTermComplex};

fn unit(len: usize, k: usize) -> Vec<Rational> {
    let mut v = vec![Rational::ZERO; len];
    v[k] = Rational::ONE;
    v
}

fn push_block(out: &mut Vec<(usize, Rational)>, base: usize, v: Vec<Rational>, sign: bool) {
    for (i, x) in v.into_iter().enumerate() {
        if !x.is_zero() {
            out.push((base + i, if sign { x } else { -x }));
        }
    }
}

/// A basis of `Hom_K(X, Y)` with the data needed to take coordinates.
#[derive(Debug, Clone)]
pub struct HomK {
    x1: Vec<usize>,
    x0: Vec<usize>,
    y1: Vec<usize>,
    y0: Vec<usize>,
    n1: usize,
    homotopies: Echelon,
    free_b: Vec<usize>,
    kernel_free: Vec<usize>,
    pub basis: Vec<ChainMap>,
}

impl HomK {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    fn flatten(&self, f: &ChainMap) -> SparseVec {
        let mut v: SparseVec = Vec::new();
        for (i, x) in f.f1.coords().into_iter().enumerate() {
            if !x.is_zero() {
                v.push((i, x));
            }
        }
        for (i, x) in f.f0.coords().into_iter().enumerate() {
            if !x.is_zero() {
                v.push((self.n1 + i, x));
            }
        }
        v
    }

    /// Coordinates of the homotopy class of a chain map in [`HomK::basis`].
    pub fn coords(&self, f: &ChainMap) -> Vec<Rational> {
        let r = self.homotopies.reduce(&self.flatten(f));
        let total = self.homotopies.ncols();
        let dense = sparse_to_dense(&r, total);
        self.kernel_free.iter().map(|&k| dense[self.free_b[k]].clone()).collect()
    }

    pub fn is_null_homotopic(&self, f: &ChainMap) -> bool {
        self.coords(f).iter().all(Rational::is_zero)
    }

    pub fn combine(&self, alg: &BoundQuiverAlgebra, c: &[Rational]) -> ChainMap {
        let mut acc = ChainMap {
            f1: ProjMap::zero(alg, &self.x1, &self.y1),
            f0: ProjMap::zero(alg, &self.x0, &self.y0),
        };
        for (b, x) in self.basis.iter().zip(c) {
            if !x.is_zero() {
                acc = acc.add(&b.scale(x));
            }
        }
        acc
    }
}

/// `Hom_K(X, Y)`.
pub fn hom_k0(alg: &BoundQuiverAlgebra, x: &TwoTermComplex, y: &TwoTermComplex) -> HomK {
    let (x1, x0, y1, y0) = (&x.d.src, &x.d.dst, &y.d.src, &y.d.dst);
    let (dx, dy) = (&x.d.ent, &y.d.ent);
    let (o1, n1) = entry_offsets(alg, x1, y1);
    let (o0, n0) = entry_offsets(alg, x0, y0);
    let (ow, nw) = entry_offsets(alg, x1, y0);
    let total = n1 + n0;

    // Null-homotopic maps (h d_X, d_Y h) for h: X^0 → Y^{-1}.
    let mut homotopies = Echelon::new(total);
    for (r, &xr) in x0.iter().enumerate() {
        for (c, &yc) in y1.iter().enumerate() {
            let len = alg.block_dim(yc, xr);
            for k in 0..len {
                let h = unit(len, k);
                let mut v = Vec::new();
                for (r2, &xr2) in x1.iter().enumerate() {
                    let p = alg.block_mul(yc, xr, xr2, &h, &dx[r2][r]);
                    push_block(&mut v, o1[r2][c], p, true);
                }
                for (c2, &yc2) in y0.iter().enumerate() {
                    let p = alg.block_mul(yc2, yc, xr, &dy[c][c2], &h);
                    push_block(&mut v, n1 + o0[r][c2], p, true);
                }
                let v = sparse_collect(v);
                if !v.is_empty() {
                    homotopies.insert(v);
                }
            }
        }
    }
    let free_b = homotopies.free_columns();
    let pos: std::collections::HashMap<usize, usize> = free_b.iter().enumerate().map(|(i, &c)| (c, i)).collect();

    // Chain condition d_Y f1 - f0 d_X = 0, restricted to the free columns.
    // Column images first, then transposed into equation rows.
    let mut rows: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); nw];
    let mut add_col = |col: usize, img: Vec<(usize, Rational)>| {
        for (w, v) in img {
            rows[w].push((col, v));
        }
    };
    for (r, &xr) in x1.iter().enumerate() {
        for (c, &yc) in y1.iter().enumerate() {
            let len = alg.block_dim(yc, xr);
            for k in 0..len {
                let Some(&col) = pos.get(&(o1[r][c] + k)) else { continue };
                let f = unit(len, k);
                let mut img = Vec::new();
                for (c2, &yc2) in y0.iter().enumerate() {
                    push_block(&mut img, ow[r][c2], alg.block_mul(yc2, yc, xr, &dy[c][c2], &f), true);
                }
                add_col(col, img);
            }
        }
    }
    for (r, &xr) in x0.iter().enumerate() {
        for (c, &yc) in y0.iter().enumerate() {
            let len = alg.block_dim(yc, xr);
            for k in 0..len {
                let Some(&col) = pos.get(&(n1 + o0[r][c] + k)) else { continue };
                let f = unit(len, k);
                let mut img = Vec::new();
                for (r2, &xr2) in x1.iter().enumerate() {
                    push_block(&mut img, ow[r2][c], alg.block_mul(yc, xr, xr2, &f, &dx[r2][r]), false);
                }
                add_col(col, img);
            }
        }
    }
    let eqs = Echelon::from_rows(free_b.len(), rows.into_iter().map(sparse_collect).filter(|r| !r.is_empty()));
    let kernel_free = eqs.free_columns();
    let basis = eqs
        .kernel()
        .into_iter()
        .map(|kv| {
            let mut full = vec![Rational::ZERO; total];
            for (i, v) in kv {
                full[free_b[i]] = v;
            }
            ChainMap {
                f1: ProjMap::from_coords(alg, x1, y1, &full[..n1]),
                f0: ProjMap::from_coords(alg, x0, y0, &full[n1..]),
            }
        })
        .collect();
    HomK {
        x1: x1.clone(),
        x0: x0.clone(),
        y1: y1.clone(),
        y0: y0.clone(),
        n1,
        homotopies,
        free_b,
        kernel_free,
        basis,
    }
}

/// Echelon of `{h_0 d_X + d_Y h_1}` inside `Hom(X^{-1}, Y^0)`; stops early
/// once it fills the space when `stop_when_full` is set.
fn shift_image(alg: &BoundQuiverAlgebra, x: &TwoTermComplex, y: &TwoTermComplex, stop_when_full: bool) -> Echelon {
    let (x1, x0, y1, y0) = (&x.d.src, &x.d.dst, &y.d.src, &y.d.dst);
    let (dx, dy) = (&x.d.ent, &y.d.ent);
    let (ow, nw) = entry_offsets(alg, x1, y0);
    let mut ech = Echelon::new(nw);
    if nw == 0 {
        return ech;
    }
    for (r, &xr) in x0.iter().enumerate() {
        for (c, &yc) in y0.iter().enumerate() {
            let len = alg.block_dim(yc, xr);
            for k in 0..len {
                let h = unit(len, k);
                let mut v = Vec::new();
                for (r2, &xr2) in x1.iter().enumerate() {
                    push_block(&mut v, ow[r2][c], alg.block_mul(yc, xr, xr2, &h, &dx[r2][r]), true);
                }
                let v = sparse_collect(v);
                if !v.is_empty() {
                    ech.insert(v);
                    if stop_when_full && ech.rank() == nw {
                        return ech;
                    }
                }
            }
        }
    }
    for (r, &xr) in x1.iter().enumerate() {
        for (c, &yc) in y1.iter().enumerate() {
            let len = alg.block_dim(yc, xr);
            for k in 0..len {
                let h = unit(len, k);
                let mut v = Vec::new();
                for (c2, &yc2) in y0.iter().enumerate() {
                    push_block(&mut v, ow[r][c2], alg.block_mul(yc2, yc, xr, &dy[c][c2], &h), true);
                }
                let v = sparse_collect(v);
                if !v.is_empty() {
                    ech.insert(v);
                    if stop_when_full && ech.rank() == nw {
                        return ech;
                    }
                }
            }
        }
    }
    ech
}

/// `Hom_K(X, Y[1]) = 0`.
pub fn ext_vanishes(alg: &BoundQuiverAlgebra, x: &TwoTermComplex, y: &TwoTermComplex) -> bool {
    let ech = shift_image(alg, x, y, true);
    ech.rank() == ech.ncols()
}

/// `dim Hom_K(X, Y[1])`.
pub fn hom_k1_dim(alg: &BoundQuiverAlgebra, x: &TwoTermComplex, y: &TwoTermComplex) -> usize {
    let ech = shift_image(alg, x, y, false);
    ech.ncols() - ech.rank()
}

/// A basis of `Hom_K(X, Y[shift])`. For `shift = 1` a map is recorded with
/// `f1: X^{-1} → Y^0 = (Y[1])^{-1}` and an empty `f0`.
pub fn hom_k(alg: &BoundQuiverAlgebra, x: &TwoTermComplex, y: &TwoTermComplex, shift: u32) -> Vec<ChainMap> {
    match shift {
        0 => hom_k0(alg, x, y).basis,
        1 => {
            let ech = shift_image(alg, x, y, false);
            ech.free_columns()
                .into_iter()
                .map(|c| {
                    let mut v = vec![Rational::ZERO; ech.ncols()];
                    v[c] = Rational::ONE;
                    ChainMap {
                        f1: ProjMap::from_coords(alg, &x.d.src, &y.d.dst, &v),
                        f0: ProjMap::zero(alg, &x.d.dst, &[]),
                    }
                })
                .collect()
        }
        _ => Vec::new(),
    }
}

/// `End_K(X)` with structure constants `b_i b_j = b_i ∘ b_j`.
pub fn end_k(alg: &BoundQuiverAlgebra, x: &TwoTermComplex) -> (HomK, FiniteAlgebra) {
    let h = hom_k0(alg, x, x);
    let d = h.dim();
    let table = (0..d)
        .map(|i| (0..d).map(|j| h.coords(&h.basis[j].then(alg, &h.basis[i]))).collect())
        .collect();
    (h, FiniteAlgebra::new(d, table))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::example;

    fn arrow_complex(alg: &BoundQuiverAlgebra) -> TwoTermComplex {
        let mut d = ProjMap::zero(alg, &[1], &[0]);
        d.ent[0][0] = alg.unit_vector(2);
        TwoTermComplex::new(d)
    }

    #[test]
    fn stalk_homs_are_projective_homs() {
        let alg = example("a3-rel").unwrap();
        for i in 0..3 {
            for j in 0..3 {
                let (pi, pj) = (TwoTermComplex::stalk(&alg, &[i]), TwoTermComplex::stalk(&alg, &[j]));
                assert_eq!(hom_k0(&alg, &pi, &pj).dim(), alg.hom_space(i, j).len());
            }
        }
    }

    #[test]
    fn shifted_homs_vanish_where_expected() {
        let alg = example("a2-path").unwrap();
        let a = TwoTermComplex::stalk(&alg, &[0, 1]);
        let a1 = TwoTermComplex::shifted(&alg, &[0, 1]);
        assert!(hom_k(&alg, &a, &a1, 2).is_empty());
        assert!(ext_vanishes(&alg, &a, &a));
        // Hom_K(A[1], A[1][1]) = Hom(A, A) ≠ 0 would need degree -1 to degree 0;
        // A[1] has no degree-0 term, so it vanishes too.
        assert!(ext_vanishes(&alg, &a1, &a1));
        // Hom_K(A[1], A[1]) ≅ Hom(A, A).
        assert_eq!(hom_k0(&alg, &a1, &a1).dim(), 3);
        // Hom_K(A[1], A) via shift one is Hom(A, A) itself.
        assert_eq!(hom_k1_dim(&alg, &a1, &a), 3);
        let s = arrow_complex(&alg);
        assert!(ext_vanishes(&alg, &s, &s));
        assert!(hom_k(&alg, &s, &s, 1).is_empty());
    }

    #[test]
    fn null_homotopic_maps_are_quotiented() {
        let alg = example("a2-path").unwrap();
        let s = arrow_complex(&alg);
        let h = hom_k0(&alg, &s, &s);
        assert_eq!(h.dim(), 1);
        // The identity has coordinate 1 on the unique basis element.
        let id = ChainMap::identity(&alg, &s);
        let c = h.coords(&id);
        assert_eq!(c.len(), 1);
        assert!(!c[0].is_zero());
        let (_, e) = end_k(&alg, &s);
        assert_eq!(e.radical().len(), 0);
        // No homotopy can kill these since Hom(P1, P2) = 0.
        let p1 = TwoTermComplex::stalk(&alg, &[0]);
        assert_eq!(hom_k0(&alg, &p1, &s).dim(), 1);
        let p2s = TwoTermComplex::shifted(&alg, &[1]);
        assert_eq!(hom_k0(&alg, &s, &p2s).dim(), 1);
        // A map P2[1] → (P2 → P1) would need a·f1 = 0.
        assert_eq!(hom_k0(&alg, &p2s, &s).dim(), 0);
    }
}

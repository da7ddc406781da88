//! Maps between direct sums of indecomposable projectives.
//!
//! A map `⊕_r P_{src[r]} → ⊕_c P_{dst[c]}` is a matrix whose `(r, c)` entry
//! lies in `Hom(P_{src[r]}, P_{dst[c]}) = e_{dst[c]} A e_{src[r]}`, stored in
//! the local coordinates of that block.

use serde::{Deserialize, Serialize};

use crate::algebra::BoundQuiverAlgebra;
use crate::linalg::{RatMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProjMap {
    pub src: Vec<usize>,
    pub dst: Vec<usize>,
    pub ent: Vec<Vec<Vec<Rational>>>,
}

/// Offsets of the summands of `⊕ P_{tops[c]}` inside its space at vertex `j`.
pub fn offsets(alg: &BoundQuiverAlgebra, tops: &[usize], j: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(tops.len() + 1);
    let mut acc = 0;
    for &c in tops {
        out.push(acc);
        acc += alg.block_dim(c, j);
    }
    out.push(acc);
    out
}

/// Start of each entry's coordinates in [`ProjMap::coords`] order, and the
/// total length.
pub fn entry_offsets(alg: &BoundQuiverAlgebra, src: &[usize], dst: &[usize]) -> (Vec<Vec<usize>>, usize) {
    let mut acc = 0;
    let offs = src
        .iter()
        .map(|&r| {
            dst.iter()
                .map(|&c| {
                    let o = acc;
                    acc += alg.block_dim(c, r);
                    o
                })
                .collect()
        })
        .collect();
    (offs, acc)
}

impl ProjMap {
    pub fn zero(alg: &BoundQuiverAlgebra, src: &[usize], dst: &[usize]) -> Self {
        let ent = src
            .iter()
            .map(|&r| dst.iter().map(|&c| vec![Rational::ZERO; alg.block_dim(c, r)]).collect())
            .collect();
        ProjMap {
            src: src.to_vec(),
            dst: dst.to_vec(),
            ent,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.ent.iter().flatten().flatten().all(Rational::is_zero)
    }

    /// `g ∘ self`.
    pub fn then(&self, alg: &BoundQuiverAlgebra, g: &ProjMap) -> ProjMap {
        assert_eq!(self.dst, g.src, "maps do not compose");
        let mut out = ProjMap::zero(alg, &self.src, &g.dst);
        for (r, &u) in self.src.iter().enumerate() {
            for (c, &v) in self.dst.iter().enumerate() {
                let f = &self.ent[r][c];
                if f.iter().all(Rational::is_zero) {
                    continue;
                }
                for (c2, &w) in g.dst.iter().enumerate() {
                    let p = alg.block_mul(w, v, u, &g.ent[c][c2], f);
                    for (o, x) in out.ent[r][c2].iter_mut().zip(p) {
                        *o += &x;
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, o: &ProjMap) -> ProjMap {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &ProjMap) -> ProjMap {
        self.zip(o, |a, b| a - b)
    }

    pub fn scale(&self, s: &Rational) -> ProjMap {
        ProjMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            ent: self
                .ent
                .iter()
                .map(|row| row.iter().map(|e| e.iter().map(|x| x * s).collect()).collect())
                .collect(),
        }
    }

    fn zip(&self, o: &ProjMap, f: impl Fn(&Rational, &Rational) -> Rational) -> ProjMap {
        assert!(self.src == o.src && self.dst == o.dst, "shape mismatch");
        ProjMap {
            src: self.src.clone(),
            dst: self.dst.clone(),
            ent: self
                .ent
                .iter()
                .zip(&o.ent)
                .map(|(ra, rb)| {
                    ra.iter()
                        .zip(rb)
                        .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
                        .collect()
                })
                .collect(),
        }
    }

    /// An entry whose `e_u` coefficient is nonzero, i.e. an isomorphism
    /// `P_u → P_u` up to radical terms.
    pub fn unit_entry(&self) -> Option<(usize, usize)> {
        for (r, &u) in self.src.iter().enumerate() {
            for (c, &v) in self.dst.iter().enumerate() {
                if u == v && !self.ent[r][c][0].is_zero() {
                    return Some((r, c));
                }
            }
        }
        None
    }

    /// Linear map on the vertex-`j` spaces, in the coordinates given by
    /// [`offsets`].
    pub fn at_vertex(&self, alg: &BoundQuiverAlgebra, j: usize) -> RatMatrix {
        let so = offsets(alg, &self.src, j);
        let do_ = offsets(alg, &self.dst, j);
        let mut m = RatMatrix::zeros(do_[self.dst.len()], so[self.src.len()]);
        for (r, &u) in self.src.iter().enumerate() {
            for k in 0..alg.block_dim(u, j) {
                let mut x = vec![Rational::ZERO; alg.block_dim(u, j)];
                x[k] = Rational::ONE;
                for (c, &v) in self.dst.iter().enumerate() {
                    let y = alg.block_mul(v, u, j, &self.ent[r][c], &x);
                    for (i, val) in y.into_iter().enumerate() {
                        m[(do_[c] + i, so[r] + k)] = val;
                    }
                }
            }
        }
        m
    }

    /// Keeps the listed source summands.
    pub fn select_src(&self, keep: &[usize]) -> ProjMap {
        ProjMap {
            src: keep.iter().map(|&r| self.src[r]).collect(),
            dst: self.dst.clone(),
            ent: keep.iter().map(|&r| self.ent[r].clone()).collect(),
        }
    }

    /// Keeps the listed target summands.
    pub fn select_dst(&self, keep: &[usize]) -> ProjMap {
        ProjMap {
            src: self.src.clone(),
            dst: keep.iter().map(|&c| self.dst[c]).collect(),
            ent: self.ent.iter().map(|row| keep.iter().map(|&c| row[c].clone()).collect()).collect(),
        }
    }

    /// `[self | o]`: same source, targets concatenated.
    pub fn hcat(&self, o: &ProjMap) -> ProjMap {
        assert_eq!(self.src, o.src);
        ProjMap {
            src: self.src.clone(),
            dst: self.dst.iter().chain(&o.dst).copied().collect(),
            ent: self
                .ent
                .iter()
                .zip(&o.ent)
                .map(|(a, b)| a.iter().chain(b).cloned().collect())
                .collect(),
        }
    }

    /// `[self; o]`: same target, sources concatenated.
    pub fn vcat(&self, o: &ProjMap) -> ProjMap {
        assert_eq!(self.dst, o.dst);
        ProjMap {
            src: self.src.iter().chain(&o.src).copied().collect(),
            dst: self.dst.clone(),
            ent: self.ent.iter().chain(&o.ent).cloned().collect(),
        }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, alg: &BoundQuiverAlgebra, o: &ProjMap) -> ProjMap {
        let src: Vec<usize> = self.src.iter().chain(&o.src).copied().collect();
        let dst: Vec<usize> = self.dst.iter().chain(&o.dst).copied().collect();
        let mut out = ProjMap::zero(alg, &src, &dst);
        for (r, row) in self.ent.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                out.ent[r][c] = e.clone();
            }
        }
        let (r0, c0) = (self.src.len(), self.dst.len());
        for (r, row) in o.ent.iter().enumerate() {
            for (c, e) in row.iter().enumerate() {
                out.ent[r0 + r][c0 + c] = e.clone();
            }
        }
        out
    }

    /// The identity of `⊕ P_{tops}`.
    pub fn identity(alg: &BoundQuiverAlgebra, tops: &[usize]) -> ProjMap {
        let mut out = ProjMap::zero(alg, tops, tops);
        for i in 0..tops.len() {
            out.ent[i][i][0] = Rational::ONE;
        }
        out
    }

    /// Number of scalar coordinates.
    pub fn coord_len(alg: &BoundQuiverAlgebra, src: &[usize], dst: &[usize]) -> usize {
        src.iter().map(|&r| dst.iter().map(|&c| alg.block_dim(c, r)).sum::<usize>()).sum()
    }

    /// Flattened coordinates, row by row.
    pub fn coords(&self) -> Vec<Rational> {
        self.ent.iter().flatten().flatten().cloned().collect()
    }

    pub fn from_coords(alg: &BoundQuiverAlgebra, src: &[usize], dst: &[usize], v: &[Rational]) -> ProjMap {
        let mut out = ProjMap::zero(alg, src, dst);
        let mut k = 0;
        for row in out.ent.iter_mut() {
            for e in row.iter_mut() {
                for x in e.iter_mut() {
                    *x = v[k].clone();
                    k += 1;
                }
            }
        }
        assert_eq!(k, v.len());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::example;

    #[test]
    fn composition_follows_path_order() {
        let alg = example("a3-rel").unwrap();
        // x: P2 → P1 and y: P3 → P2; x ∘ y corresponds to the path xy = 0.
        let mut x = ProjMap::zero(&alg, &[1], &[0]);
        x.ent[0][0] = alg.unit_vector(3);
        let mut y = ProjMap::zero(&alg, &[2], &[1]);
        y.ent[0][0] = alg.unit_vector(4);
        assert!(y.then(&alg, &x).is_zero());
        let a2 = example("a2-path").unwrap();
        let mut a = ProjMap::zero(&a2, &[1], &[0]);
        a.ent[0][0] = a2.unit_vector(2);
        let id = ProjMap::identity(&a2, &[0]);
        assert_eq!(a.then(&a2, &id), a);
        // At vertex 2 the map P2 → P1 sends e_2 to a.
        let m = a.at_vertex(&a2, 1);
        assert_eq!((m.rows(), m.cols()), (1, 1));
        assert_eq!(m[(0, 0)], Rational::ONE);
    }

    #[test]
    fn coordinates_round_trip() {
        let alg = example("sym-local").unwrap();
        let src = [0, 1];
        let dst = [1, 1, 0];
        let n = ProjMap::coord_len(&alg, &src, &dst);
        let v: Vec<Rational> = (0..n as i64).map(Rational::from_int).collect();
        let f = ProjMap::from_coords(&alg, &src, &dst, &v);
        assert_eq!(f.coords(), v);
    }
}

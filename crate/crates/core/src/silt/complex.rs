//! Bounded complexes of projectives, Gaussian elimination and cones.
//!
//! Shift convention, fixed here for the whole crate: `(X[1])^k = X^{k+1}`
//! with differential `-d_X`. Cones use `cone(f)^k = X^{k+1} ⊕ Y^k` with
//! differential `[[-d_X, f], [0, d_Y]]`.

use serde::{Deserialize, Serialize};

use crate::algebra::BoundQuiverAlgebra;
use crate::linalg::Rational;
use crate::proj::ProjMap;

/// A complex `P^{-1} → P^0`; the differential's source is degree `-1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TwoTermComplex {
    pub d: ProjMap,
}

/// A degree-wise chain map between two-term complexes (or into a shift;
/// see [`crate::silt::hom_k`]).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainMap {
    pub f1: ProjMap,
    pub f0: ProjMap,
}

impl ChainMap {
    /// `g ∘ self`.
    pub fn then(&self, alg: &BoundQuiverAlgebra, g: &ChainMap) -> ChainMap {
        ChainMap {
            f1: self.f1.then(alg, &g.f1),
            f0: self.f0.then(alg, &g.f0),
        }
    }

    pub fn add(&self, o: &ChainMap) -> ChainMap {
        ChainMap {
            f1: self.f1.add(&o.f1),
            f0: self.f0.add(&o.f0),
        }
    }

    pub fn scale(&self, s: &Rational) -> ChainMap {
        ChainMap {
            f1: self.f1.scale(s),
            f0: self.f0.scale(s),
        }
    }

    pub fn zero(alg: &BoundQuiverAlgebra, x: &TwoTermComplex, y: &TwoTermComplex) -> ChainMap {
        ChainMap {
            f1: ProjMap::zero(alg, &x.d.src, &y.d.src),
            f0: ProjMap::zero(alg, &x.d.dst, &y.d.dst),
        }
    }

    pub fn identity(alg: &BoundQuiverAlgebra, x: &TwoTermComplex) -> ChainMap {
        ChainMap {
            f1: ProjMap::identity(alg, &x.d.src),
            f0: ProjMap::identity(alg, &x.d.dst),
        }
    }

    /// Components placed side by side: `X → Y_1 ⊕ Y_2`.
    pub fn hcat(&self, o: &ChainMap) -> ChainMap {
        ChainMap {
            f1: self.f1.hcat(&o.f1),
            f0: self.f0.hcat(&o.f0),
        }
    }

    /// `X_1 ⊕ X_2 → Y`.
    pub fn vcat(&self, o: &ChainMap) -> ChainMap {
        ChainMap {
            f1: self.f1.vcat(&o.f1),
            f0: self.f0.vcat(&o.f0),
        }
    }
}

impl TwoTermComplex {
    pub fn new(d: ProjMap) -> Self {
        TwoTermComplex { d }
    }

    /// `0 → ⊕ P_{tops}`.
    pub fn stalk(alg: &BoundQuiverAlgebra, tops: &[usize]) -> Self {
        TwoTermComplex {
            d: ProjMap::zero(alg, &[], tops),
        }
    }

    /// `⊕ P_{tops} → 0`, the stalk shifted into degree `-1`.
    pub fn shifted(alg: &BoundQuiverAlgebra, tops: &[usize]) -> Self {
        TwoTermComplex {
            d: ProjMap::zero(alg, tops, &[]),
        }
    }

    pub fn zero(alg: &BoundQuiverAlgebra) -> Self {
        Self::stalk(alg, &[])
    }

    pub fn is_zero(&self) -> bool {
        self.d.src.is_empty() && self.d.dst.is_empty()
    }

    /// No differential entry has a nonzero idempotent component.
    pub fn is_minimal(&self) -> bool {
        self.d.unit_entry().is_none()
    }

    /// Multiplicities of `P_u` in degrees `-1` and `0`.
    pub fn multiplicities(&self, n: usize) -> (Vec<usize>, Vec<usize>) {
        let mut m1 = vec![0; n];
        let mut m0 = vec![0; n];
        for &u in &self.d.src {
            m1[u] += 1;
        }
        for &u in &self.d.dst {
            m0[u] += 1;
        }
        (m1, m0)
    }

    /// Class in `K_0(proj A)`: degree-0 multiplicities minus degree-`-1` ones.
    pub fn g_vector(&self, n: usize) -> Vec<i64> {
        let (m1, m0) = self.multiplicities(n);
        m0.iter().zip(&m1).map(|(a, b)| *a as i64 - *b as i64).collect()
    }

    pub fn direct_sum(&self, alg: &BoundQuiverAlgebra, o: &TwoTermComplex) -> Self {
        TwoTermComplex {
            d: self.d.direct_sum(alg, &o.d),
        }
    }

    pub fn minimize(&self, alg: &BoundQuiverAlgebra) -> Self {
        Complex::from_two_term(self)
            .minimize(alg)
            .into_two_term(alg)
            .expect("minimizing a two-term complex keeps it two-term")
    }

    pub fn to_complex(&self) -> Complex {
        Complex::from_two_term(self)
    }
}

/// `C^{lo} → C^{lo+1} → ...`, with `diffs[k]: terms[k] → terms[k+1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    pub lo: i32,
    pub terms: Vec<Vec<usize>>,
    pub diffs: Vec<ProjMap>,
}

impl Complex {
    pub fn from_two_term(x: &TwoTermComplex) -> Self {
        Complex {
            lo: -1,
            terms: vec![x.d.src.clone(), x.d.dst.clone()],
            diffs: vec![x.d.clone()],
        }
    }

    /// Degrees with a nonzero term.
    pub fn support(&self) -> Vec<i32> {
        self.terms
            .iter()
            .enumerate()
            .filter(|(_, t)| !t.is_empty())
            .map(|(k, _)| self.lo + k as i32)
            .collect()
    }

    /// Repeatedly cancels invertible entries `P_u → P_u`; the result is
    /// homotopy equivalent with every differential entry radical.
    pub fn minimize(mut self, alg: &BoundQuiverAlgebra) -> Self {
        loop {
            let hit = self
                .diffs
                .iter()
                .enumerate()
                .find_map(|(k, d)| d.unit_entry().map(|(i, j)| (k, i, j)));
            match hit {
                Some((k, i, j)) => self.eliminate(alg, k, i, j),
                None => return self,
            }
        }
    }

    fn eliminate(&mut self, alg: &BoundQuiverAlgebra, k: usize, i: usize, j: usize) {
        let d = &self.diffs[k];
        let u = d.src[i];
        let phi_inv = alg.local_inverse(u, &d.ent[i][j]).expect("unit entry");
        let rows: Vec<usize> = (0..d.src.len()).filter(|&r| r != i).collect();
        let cols: Vec<usize> = (0..d.dst.len()).filter(|&c| c != j).collect();
        let mut nd = d.select_src(&rows).select_dst(&cols);
        for (ri, &r) in rows.iter().enumerate() {
            let g = &d.ent[r][j];
            if g.iter().all(Rational::is_zero) {
                continue;
            }
            let rv = d.src[r];
            // D → P_j → P_i → E through γ, φ^{-1}, δ.
            let t = alg.block_mul(u, u, rv, &phi_inv, g);
            for (ci, &c) in cols.iter().enumerate() {
                let delta = &d.ent[i][c];
                if delta.iter().all(Rational::is_zero) {
                    continue;
                }
                let p = alg.block_mul(d.dst[c], u, rv, delta, &t);
                for (o, x) in nd.ent[ri][ci].iter_mut().zip(p) {
                    *o -= &x;
                }
            }
        }
        self.diffs[k] = nd;
        if k > 0 {
            let keep: Vec<usize> = (0..self.diffs[k - 1].dst.len()).filter(|&c| c != i).collect();
            self.diffs[k - 1] = self.diffs[k - 1].select_dst(&keep);
        }
        if k + 1 < self.diffs.len() {
            let keep: Vec<usize> = (0..self.diffs[k + 1].src.len()).filter(|&r| r != j).collect();
            self.diffs[k + 1] = self.diffs[k + 1].select_src(&keep);
        }
        self.terms[k].remove(i);
        self.terms[k + 1].remove(j);
    }

    /// The part in degrees `-1, 0`, if nothing else survives.
    pub fn into_two_term(self, alg: &BoundQuiverAlgebra) -> Option<TwoTermComplex> {
        if self.support().iter().any(|&deg| deg != -1 && deg != 0) {
            return None;
        }
        let idx = |deg: i32| usize::try_from(deg - self.lo).ok().filter(|&k| k < self.terms.len());
        let d = match idx(-1) {
            Some(k) if k < self.diffs.len() => self.diffs[k].clone(),
            _ => {
                let t1 = idx(-1).map(|k| self.terms[k].clone()).unwrap_or_default();
                let t0 = idx(0).map(|k| self.terms[k].clone()).unwrap_or_default();
                ProjMap::zero(alg, &t1, &t0)
            }
        };
        Some(TwoTermComplex { d })
    }
}

/// `cone(f)` for `f: X → Y` between two-term complexes, in degrees `-2..0`.
pub fn cone(x: &TwoTermComplex, y: &TwoTermComplex, f: &ChainMap) -> Complex {
    let minus_dx = x.d.scale(&-Rational::ONE);
    Complex {
        lo: -2,
        terms: vec![
            x.d.src.clone(),
            x.d.dst.iter().chain(&y.d.src).copied().collect(),
            y.d.dst.clone(),
        ],
        diffs: vec![minus_dx.hcat(&f.f1), f.f0.vcat(&y.d)],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::example;

    #[test]
    fn minimization_examples() {
        let alg = example("a2-path").unwrap();
        let id = TwoTermComplex::new(ProjMap::identity(&alg, &[0]));
        assert!(id.minimize(&alg).is_zero());
        let mut arrow = ProjMap::zero(&alg, &[1], &[0]);
        arrow.ent[0][0] = alg.unit_vector(2);
        let s = TwoTermComplex::new(arrow);
        assert_eq!(s.minimize(&alg), s);
        let sum = id.direct_sum(&alg, &TwoTermComplex::stalk(&alg, &[1]));
        assert_eq!(sum.minimize(&alg), TwoTermComplex::stalk(&alg, &[1]));
    }

    #[test]
    fn elimination_updates_the_remaining_entry() {
        // P2 ⊕ P2 → P1 ⊕ P2 with [[a, 1], [a, 1]] reduces to the zero map
        // P2 → P1, i.e. P1 ⊕ P2[1].
        let alg = example("a2-path").unwrap();
        let mut d = ProjMap::zero(&alg, &[1, 1], &[0, 1]);
        for r in 0..2 {
            d.ent[r][0] = alg.unit_vector(2);
            d.ent[r][1] = vec![Rational::ONE];
        }
        let m = TwoTermComplex::new(d).minimize(&alg);
        assert_eq!((m.d.src.as_slice(), m.d.dst.as_slice()), (&[1][..], &[0][..]));
        assert!(m.d.is_zero());
    }

    #[test]
    fn g_vectors() {
        let alg = example("a3-rel").unwrap();
        assert_eq!(TwoTermComplex::stalk(&alg, &[2]).g_vector(3), [0, 0, 1]);
        assert_eq!(TwoTermComplex::shifted(&alg, &[0]).g_vector(3), [-1, 0, 0]);
        let mut d = ProjMap::zero(&alg, &[1], &[0]);
        d.ent[0][0] = alg.unit_vector(3);
        assert_eq!(TwoTermComplex::new(d).g_vector(3), [1, -1, 0]);
    }

    #[test]
    fn cone_of_identity_is_contractible() {
        let alg = example("a2-path").unwrap();
        let mut arrow = ProjMap::zero(&alg, &[1], &[0]);
        arrow.ent[0][0] = alg.unit_vector(2);
        let x = TwoTermComplex::new(arrow);
        let c = cone(&x, &x, &ChainMap::identity(&alg, &x)).minimize(&alg);
        assert!(c.support().is_empty());
    }
}

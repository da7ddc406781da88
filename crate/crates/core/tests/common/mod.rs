//! Brute-force reference enumerator for two-term silting objects.
//!
//! Works straight from the algebra's structure constants. It shares no code
//! with the library's homotopy machinery: Ext vanishing is decided by one
//! dense rank computation per pair of complexes.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use twosilt::algebra::BoundQuiverAlgebra;
use twosilt::linalg::{RatMatrix, Rational};

/// Sparse algebra element in global basis coordinates.
pub type Elem = BTreeMap<usize, Rational>;

/// `x · y` (paths compose left to right).
pub fn mul(alg: &BoundQuiverAlgebra, x: &Elem, y: &Elem) -> Elem {
    let mut out = Elem::new();
    for (i, a) in x {
        for (j, b) in y {
            for (k, c) in alg.mul_basis(*i, *j) {
                *out.entry(k).or_insert(Rational::ZERO) += &(&(a * b) * &c);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn path(i: usize) -> Elem {
    Elem::from([(i, Rational::ONE)])
}

/// `P(src) → P(dst)` with `d[r][c] ∈ e_{dst[c]} A e_{src[r]}`.
#[derive(Debug, Clone)]
pub struct Cx {
    pub src: Vec<usize>,
    pub dst: Vec<usize>,
    pub d: Vec<Vec<Elem>>,
}

impl Cx {
    pub fn g_vector(&self, n: usize) -> Vec<i64> {
        let mut g = vec![0; n];
        self.dst.iter().for_each(|&v| g[v] += 1);
        self.src.iter().for_each(|&v| g[v] -= 1);
        g
    }
}

/// `Hom(X, Y[1]) = 0`: every map `X^{-1} → Y^0` is `h0 ∘ d_X + d_Y ∘ h1`.
pub fn ext_vanishes(alg: &BoundQuiverAlgebra, x: &Cx, y: &Cx) -> bool {
    let mut col = BTreeMap::new();
    for u in 0..x.src.len() {
        for w in 0..y.dst.len() {
            for &p in alg.block(y.dst[w], x.src[u]) {
                let k = col.len();
                col.insert((u, w, p), k);
            }
        }
    }
    if col.is_empty() {
        return true;
    }
    let mut rows = Vec::new();
    let mut push = |entries: Vec<((usize, usize), Elem)>| {
        let mut row = vec![Rational::ZERO; col.len()];
        for ((u, w), e) in entries {
            for (p, c) in e {
                row[col[&(u, w, p)]] += &c;
            }
        }
        rows.push(row);
    };
    // h0 with a single entry p: X^0[v] → Y^0[w]
    for v in 0..x.dst.len() {
        for w in 0..y.dst.len() {
            for &p in alg.block(y.dst[w], x.dst[v]) {
                push((0..x.src.len()).map(|u| ((u, w), mul(alg, &path(p), &x.d[u][v]))).collect());
            }
        }
    }
    // h1 with a single entry q: X^{-1}[u] → Y^{-1}[u2]
    for u in 0..x.src.len() {
        for u2 in 0..y.src.len() {
            for &q in alg.block(y.src[u2], x.src[u]) {
                push((0..y.dst.len()).map(|w| ((u, w), mul(alg, &y.d[u2][w], &path(q)))).collect());
            }
        }
    }
    !rows.is_empty() && RatMatrix::from_rows(&rows).rank() == col.len()
}

/// Every `g ∈ {-2..2}^n`, smallest total multiplicity first.
fn candidate_gvectors(n: usize) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|g: Vec<i64>| {
                (-2..=2).map(move |x| {
                    let mut h = g.clone();
                    h.push(x);
                    h
                })
            })
            .collect();
    }
    out.retain(|g| g.iter().any(|&x| x != 0));
    out.sort_by_key(|g| (g.iter().map(|x| x.abs()).sum::<i64>(), g.clone()));
    out
}

/// First presilting minimal complex with g-vector `g`, trying every
/// differential whose entries are 0/1 combinations of radical paths.
fn find_presilting(alg: &BoundQuiverAlgebra, g: &[i64]) -> Option<Cx> {
    let mut src = vec![];
    let mut dst = vec![];
    for (v, &x) in g.iter().enumerate() {
        let m = x.unsigned_abs() as usize;
        if x < 0 {
            src.extend(std::iter::repeat_n(v, m));
        } else {
            dst.extend(std::iter::repeat_n(v, m));
        }
    }
    let mut slots = vec![];
    for (r, &s) in src.iter().enumerate() {
        for (c, &t) in dst.iter().enumerate() {
            slots.extend(alg.block(t, s).iter().map(|&p| (r, c, p)));
        }
    }
    assert!(slots.len() <= 20, "too many differential slots for brute force: {}", slots.len());
    for mask in 0u64..1 << slots.len() {
        let mut d = vec![vec![Elem::new(); dst.len()]; src.len()];
        for (bit, &(r, c, p)) in slots.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                d[r][c].insert(p, Rational::ONE);
            }
        }
        let x = Cx { src: src.clone(), dst: dst.clone(), d };
        if ext_vanishes(alg, &x, &x) {
            return Some(x);
        }
    }
    None
}

/// Indecomposable presilting complexes, one per g-vector.
///
/// Presilting complexes are determined by their g-vector, so `X` splits
/// exactly when `g(X) = g(X1) + g(X2)` for found `X1, X2` with `X1 ⊕ X2`
/// presilting.
pub fn indecomposable_presilting(alg: &BoundQuiverAlgebra) -> Vec<(Vec<i64>, Cx)> {
    let n = alg.num_vertices();
    for v in 0..n {
        assert_eq!(alg.block_dim(v, v), 1, "oracle assumes no oriented cycles");
    }
    let found: Vec<(Vec<i64>, Cx)> =
        candidate_gvectors(n).into_iter().filter_map(|g| find_presilting(alg, &g).map(|x| (g, x))).collect();
    let compatible = |a: &Cx, b: &Cx| ext_vanishes(alg, a, b) && ext_vanishes(alg, b, a);
    found
        .iter()
        .filter(|(g, _)| {
            !found.iter().any(|(g1, x1)| {
                found.iter().any(|(g2, x2)| {
                    g1.iter().zip(g2).zip(g.iter()).all(|((a, b), c)| a + b == *c) && compatible(x1, x2)
                })
            })
        })
        .cloned()
        .collect()
}

/// All silting objects as sorted g-vector lists: `n` pairwise compatible
/// indecomposables.
pub fn silting_keys(alg: &BoundQuiverAlgebra) -> BTreeSet<Vec<Vec<i64>>> {
    let n = alg.num_vertices();
    let ind = indecomposable_presilting(alg);
    let m = ind.len();
    let compat: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| ext_vanishes(alg, &ind[i].1, &ind[j].1)).collect())
        .collect();
    let mut out = BTreeSet::new();
    let mut stack = vec![(Vec::<usize>::new(), 0usize)];
    while let Some((chosen, next)) = stack.pop() {
        if chosen.len() == n {
            let mut key: Vec<Vec<i64>> = chosen.iter().map(|&i| ind[i].0.clone()).collect();
            key.sort();
            out.insert(key);
            continue;
        }
        for j in next..m {
            if chosen.iter().all(|&i| compat[i][j] && compat[j][i]) {
                let mut c = chosen.clone();
                c.push(j);
                stack.push((c, j + 1));
            }
        }
    }
    out
}

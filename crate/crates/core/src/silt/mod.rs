//! Two-term complexes of projectives: presilting and silting tests,
//! g-vectors, approximations, mutation and the silting order.

mod complex;
mod hom;

use std::collections::HashMap;
use std::sync::Mutex;

use crate::algebra::{BoundQuiverAlgebra, SemisimpleError};
use crate::linalg::sparse::{sparse_from_dense, Echelon};
use crate::linalg::IntMatrix;

pub use complex::{cone, ChainMap, Complex, TwoTermComplex};
pub use hom::{end_k, ext_vanishes, hom_k, hom_k0, hom_k1_dim, HomK};

pub type GVector = Vec<i64>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SiltError {
    #[error("mutation at summand {index} failed: {reason}")]
    MutationFailed { index: usize, reason: String },
    #[error("no silting object in the pool contains the given summands")]
    EmptyPool,
    #[error("the exploration did not finish, so the pool may be incomplete")]
    NotFinite,
    #[error("{0} is not a direct summand")]
    NotASummand(String),
    #[error(transparent)]
    Semisimple(#[from] SemisimpleError),
}

/// Columns are g-vectors of the summands, sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GMatrix(pub Vec<GVector>);

impl GMatrix {
    pub fn from_columns(mut cols: Vec<GVector>) -> Self {
        cols.sort();
        GMatrix(cols)
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn to_int(&self) -> IntMatrix {
        let n = self.0.first().map_or(0, Vec::len);
        IntMatrix::from_columns(n, &self.0)
    }

    /// No coordinate takes both a strictly positive and a strictly negative
    /// value across the columns.
    pub fn is_sign_coherent(&self) -> bool {
        let n = self.0.first().map_or(0, Vec::len);
        (0..n).all(|i| !(self.0.iter().any(|g| g[i] > 0) && self.0.iter().any(|g| g[i] < 0)))
    }
}

/// A basic two-term silting (or presilting) object, kept as its
/// indecomposable summands sorted by g-vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiltingObject {
    pub summands: Vec<TwoTermComplex>,
    gvecs: Vec<GVector>,
}

impl SiltingObject {
    pub fn new(n: usize, mut summands: Vec<TwoTermComplex>) -> Self {
        summands.sort_by_key(|s| s.g_vector(n));
        let gvecs = summands.iter().map(|s| s.g_vector(n)).collect();
        SiltingObject { summands, gvecs }
    }

    /// `A = ⊕ P_i` in degree 0.
    pub fn algebra(alg: &BoundQuiverAlgebra) -> Self {
        let n = alg.num_vertices();
        Self::new(n, (0..n).map(|i| TwoTermComplex::stalk(alg, &[i])).collect())
    }

    /// `A[1]`.
    pub fn shifted_algebra(alg: &BoundQuiverAlgebra) -> Self {
        let n = alg.num_vertices();
        Self::new(n, (0..n).map(|i| TwoTermComplex::shifted(alg, &[i])).collect())
    }

    pub fn gvectors(&self) -> &[GVector] {
        &self.gvecs
    }

    pub fn gmatrix(&self) -> GMatrix {
        GMatrix(self.gvecs.clone())
    }

    /// Canonical identity: the sorted g-vector columns.
    pub fn key(&self) -> Vec<GVector> {
        self.gvecs.clone()
    }

    pub fn total(&self, alg: &BoundQuiverAlgebra) -> TwoTermComplex {
        self.summands
            .iter()
            .fold(TwoTermComplex::zero(alg), |acc, s| acc.direct_sum(alg, s))
    }
}

/// Memoizes `Hom_K(X, Y[1]) = 0` for indecomposable presilting complexes,
/// which are determined up to isomorphism by their g-vectors.
#[derive(Debug, Default)]
pub struct ExtCache {
    map: Mutex<HashMap<(GVector, GVector), bool>>,
}

impl ExtCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn vanishes(&self, alg: &BoundQuiverAlgebra, x: &TwoTermComplex, y: &TwoTermComplex) -> bool {
        let n = alg.num_vertices();
        let key = (x.g_vector(n), y.g_vector(n));
        if let Some(v) = self.map.lock().expect("cache lock").get(&key) {
            return *v;
        }
        let v = ext_vanishes(alg, x, y);
        self.map.lock().expect("cache lock").insert(key, v);
        v
    }

    pub fn len(&self) -> usize {
        self.map.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// `Hom_K(M, M[1]) = 0`; the higher shifts vanish for degree reasons.
pub fn is_presilting(alg: &BoundQuiverAlgebra, m: &TwoTermComplex) -> bool {
    ext_vanishes(alg, m, m)
}

/// Number of simple factors of `End_K(M)/rad`, i.e. of pairwise
/// non-isomorphic indecomposable summands.
pub fn count_summands(alg: &BoundQuiverAlgebra, m: &TwoTermComplex, seed: u64) -> Result<usize, SiltError> {
    if m.is_zero() {
        return Ok(0);
    }
    let (_, e) = end_k(alg, m);
    Ok(e.count_simple_components(seed)?)
}

/// `End_K(M)/rad` is one dimensional.
pub fn is_indecomposable(alg: &BoundQuiverAlgebra, m: &TwoTermComplex) -> bool {
    if m.is_zero() {
        return false;
    }
    let (_, e) = end_k(alg, m);
    e.dim() - e.radical().len() == 1
}

pub fn is_two_term_silting(alg: &BoundQuiverAlgebra, m: &TwoTermComplex, seed: u64) -> Result<bool, SiltError> {
    let m = m.minimize(alg);
    if !is_presilting(alg, &m) {
        return Ok(false);
    }
    Ok(count_summands(alg, &m, seed)? == alg.num_vertices())
}

/// `rad End_K(X)` as chain maps.
fn radical_endos(alg: &BoundQuiverAlgebra, x: &TwoTermComplex) -> Vec<ChainMap> {
    let (h, e) = end_k(alg, x);
    e.radical().iter().map(|c| h.combine(alg, c)).collect()
}

/// A section `X → Z` and retraction `Z → X` whose composite is invertible,
/// if `X` (indecomposable) is a summand of `Z`.
fn find_split(alg: &BoundQuiverAlgebra, z: &TwoTermComplex, x: &TwoTermComplex) -> Option<(ChainMap, ChainMap)> {
    let (endx, e) = end_k(alg, x);
    let rad = Echelon::from_rows(e.dim(), e.radical().iter().map(|v| sparse_from_dense(v)));
    let to_x = hom_k0(alg, z, x);
    let from_x = hom_k0(alg, x, z);
    for b in &from_x.basis {
        for a in &to_x.basis {
            let c = endx.coords(&b.then(alg, a));
            if !rad.contains(&sparse_from_dense(&c)) {
                return Some((b.clone(), a.clone()));
            }
        }
    }
    None
}

/// Removes one copy of the indecomposable `X` from `Z`: with a split
/// section `s: X → Z`, the complement is the minimized cone of `s`.
pub fn split_off(alg: &BoundQuiverAlgebra, z: &TwoTermComplex, x: &TwoTermComplex) -> Result<TwoTermComplex, SiltError> {
    let (s, _) = find_split(alg, z, x).ok_or_else(|| SiltError::NotASummand(format!("{:?}", x.g_vector(alg.num_vertices()))))?;
    Ok(cone(x, z, &s)
        .minimize(alg)
        .into_two_term(alg)
        .expect("the cone of a split monomorphism is two-term"))
}

pub fn summand_multiplicity(alg: &BoundQuiverAlgebra, z: &TwoTermComplex, x: &TwoTermComplex) -> usize {
    let mut z = z.minimize(alg);
    let mut count = 0;
    while let Ok(rest) = split_off(alg, &z, x) {
        count += 1;
        z = rest;
    }
    count
}

/// A minimal left `add U`-approximation `X → U'` as the map together with
/// its target. `us` must be pairwise non-isomorphic indecomposables.
pub fn left_approximation(
    alg: &BoundQuiverAlgebra,
    x: &TwoTermComplex,
    us: &[TwoTermComplex],
) -> (ChainMap, TwoTermComplex) {
    let homs: Vec<HomK> = us.iter().map(|u| hom_k0(alg, x, u)).collect();
    let mut target = TwoTermComplex::zero(alg);
    let mut map = ChainMap::zero(alg, x, &target);
    for (j, uj) in us.iter().enumerate() {
        let hj = &homs[j];
        if hj.dim() == 0 {
            continue;
        }
        // Maps X → U_j factoring through a radical map of add U.
        let mut rad = Echelon::new(hj.dim());
        for (l, ul) in us.iter().enumerate() {
            if l == j || homs[l].dim() == 0 {
                continue;
            }
            let between = hom_k0(alg, ul, uj);
            for f in &homs[l].basis {
                for g in &between.basis {
                    rad.insert(sparse_from_dense(&hj.coords(&f.then(alg, g))));
                }
            }
        }
        for r in radical_endos(alg, uj) {
            for f in &hj.basis {
                rad.insert(sparse_from_dense(&hj.coords(&f.then(alg, &r))));
            }
        }
        for k in rad.free_columns() {
            map = map.hcat(&hj.basis[k]);
            target = target.direct_sum(alg, uj);
        }
    }
    (map, target)
}

/// A minimal right `add U`-approximation `U' → X`.
pub fn right_approximation(
    alg: &BoundQuiverAlgebra,
    x: &TwoTermComplex,
    us: &[TwoTermComplex],
) -> (ChainMap, TwoTermComplex) {
    let homs: Vec<HomK> = us.iter().map(|u| hom_k0(alg, u, x)).collect();
    let mut source = TwoTermComplex::zero(alg);
    let mut map = ChainMap::zero(alg, &source, x);
    for (j, uj) in us.iter().enumerate() {
        let hj = &homs[j];
        if hj.dim() == 0 {
            continue;
        }
        let mut rad = Echelon::new(hj.dim());
        for (l, ul) in us.iter().enumerate() {
            if l == j || homs[l].dim() == 0 {
                continue;
            }
            let between = hom_k0(alg, uj, ul);
            for g in &between.basis {
                for f in &homs[l].basis {
                    rad.insert(sparse_from_dense(&hj.coords(&g.then(alg, f))));
                }
            }
        }
        for r in radical_endos(alg, uj) {
            for f in &hj.basis {
                rad.insert(sparse_from_dense(&hj.coords(&r.then(alg, f))));
            }
        }
        for k in rad.free_columns() {
            map = map.vcat(&hj.basis[k]);
            source = source.direct_sum(alg, uj);
        }
    }
    (map, source)
}

/// Replaces the `k`-th summand of a basic two-term silting object by its
/// unique exchange partner. The left-approximation triangle is tried first
/// and the right one when its cone leaves the two-term range.
pub fn mutate(
    alg: &BoundQuiverAlgebra,
    m: &SiltingObject,
    k: usize,
    cache: &ExtCache,
) -> Result<SiltingObject, SiltError> {
    let n = alg.num_vertices();
    let fail = |reason: String| SiltError::MutationFailed { index: k, reason };
    let x = &m.summands[k];
    let others: Vec<TwoTermComplex> = m
        .summands
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != k)
        .map(|(_, s)| s.clone())
        .collect();

    let (f, target) = left_approximation(alg, x, &others);
    let left = cone(x, &target, &f).minimize(alg).into_two_term(alg);
    let y = match left {
        Some(y) if !y.is_zero() => y,
        _ => {
            let (g, source) = right_approximation(alg, x, &others);
            let mut c = cone(&source, x, &g);
            c.lo = -1;
            c.minimize(alg)
                .into_two_term(alg)
                .filter(|y| !y.is_zero())
                .ok_or_else(|| fail("neither approximation triangle stays two-term".into()))?
        }
    };

    let gy = y.g_vector(n);
    if gy == x.g_vector(n) {
        return Err(fail("exchange partner has the same g-vector".into()));
    }
    if others.iter().any(|o| o.g_vector(n) == gy) {
        return Err(fail("exchange partner repeats a remaining summand".into()));
    }
    if !cache.vanishes(alg, &y, &y) {
        return Err(fail(format!("new summand {gy:?} is not presilting")));
    }
    for o in &others {
        if !cache.vanishes(alg, &y, o) || !cache.vanishes(alg, o, &y) {
            return Err(fail(format!("new summand {gy:?} is not compatible with {:?}", o.g_vector(n))));
        }
    }
    let mut summands = others;
    summands.push(y);
    Ok(SiltingObject::new(n, summands))
}

/// `M ≥ N` iff `Hom_K(M, N[1]) = 0`.
pub fn order_geq(alg: &BoundQuiverAlgebra, m: &SiltingObject, n: &SiltingObject, cache: &ExtCache) -> bool {
    m.summands
        .iter()
        .all(|a| n.summands.iter().all(|b| cache.vanishes(alg, a, b)))
}

/// Full check with an explicit indecomposability and isomorphism audit of
/// the summands, for validation runs.
pub fn validate_object(alg: &BoundQuiverAlgebra, m: &SiltingObject, seed: u64) -> Result<(), String> {
    for s in &m.summands {
        if !s.is_minimal() {
            return Err(format!("summand {:?} is not minimal", s.g_vector(alg.num_vertices())));
        }
        if !is_indecomposable(alg, s) {
            return Err(format!("summand {:?} is not indecomposable", s.g_vector(alg.num_vertices())));
        }
    }
    match is_two_term_silting(alg, &m.total(alg), seed) {
        Ok(true) => Ok(()),
        Ok(false) => Err("object is not silting".into()),
        Err(e) => Err(e.to_string()),
    }
}

/// Two indecomposables are isomorphic iff the composition pairing reaches
/// outside the radical of `End_K(X)`.
pub fn isomorphic_indecomposables(alg: &BoundQuiverAlgebra, x: &TwoTermComplex, y: &TwoTermComplex) -> bool {
    find_split(alg, y, x).is_some()
}

/// Order-maximal member of the pool containing all of `u` (given as
/// indecomposable summands).
pub fn bongartz_complete<'a>(
    alg: &BoundQuiverAlgebra,
    u: &[TwoTermComplex],
    pool: &'a [SiltingObject],
    complete: bool,
    cache: &ExtCache,
) -> Result<&'a SiltingObject, SiltError> {
    if !complete {
        return Err(SiltError::NotFinite);
    }
    let n = alg.num_vertices();
    let want: Vec<GVector> = u.iter().map(|x| x.g_vector(n)).collect();
    let cands: Vec<&SiltingObject> = pool
        .iter()
        .filter(|t| want.iter().all(|g| t.gvectors().contains(g)))
        .collect();
    let top: Vec<&SiltingObject> = cands
        .iter()
        .filter(|t| cands.iter().all(|o| order_geq(alg, t, o, cache)))
        .copied()
        .collect();
    match top.as_slice() {
        [one] => Ok(one),
        [] if cands.is_empty() => Err(SiltError::EmptyPool),
        _ => Err(SiltError::EmptyPool),
    }
}

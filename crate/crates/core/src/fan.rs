//! Silting objects as simplicial cones spanned by their g-vectors, with
//! exact membership, pairwise intersection and order-versus-cone probes.

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::BoundQuiverAlgebra;
use crate::explore::MutationGraph;
use crate::linalg::{RatMatrix, Rational};
use crate::silt::{
    cone, left_approximation, order_geq, right_approximation, ExtCache, GMatrix, GVector, SiltingObject,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Membership {
    Inside,
    Boundary,
    Outside,
}

/// A simplicial cone with `n` linearly independent integer generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cone {
    pub generators: GMatrix,
    /// Rows of the inverse of the generator matrix; normal `i` pairs to
    /// `δ_ij` with generator `j`.
    pub normals: Vec<Vec<Rational>>,
    pub unimodular: bool,
}

fn rat(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_int(x)).collect()
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::ZERO, |acc, (x, y)| &acc + &(x * y))
}

impl Cone {
    /// `None` if the generators are linearly dependent.
    pub fn new(generators: GMatrix) -> Option<Self> {
        let n = generators.n();
        let g = RatMatrix::from_columns(n, &generators.0.iter().map(|c| rat(c)).collect::<Vec<_>>());
        let inv = g.inverse()?;
        let normals = (0..n).map(|i| inv.row(i).to_vec()).collect();
        let unimodular = generators.to_int().det().is_ok_and(|d| d == 1.into() || d == (-1).into());
        Some(Cone { generators, normals, unimodular })
    }

    pub fn of(m: &SiltingObject) -> Self {
        Cone::new(m.gmatrix()).expect("g-vectors of a silting object form a basis")
    }

    pub fn n(&self) -> usize {
        self.normals.len()
    }

    /// Coordinates of `x` in the generator basis.
    pub fn coordinates(&self, x: &[Rational]) -> Vec<Rational> {
        self.normals.iter().map(|nu| dot(nu, x)).collect()
    }
}

pub fn membership(c: &Cone, x: &[Rational]) -> Membership {
    let p = c.coordinates(x);
    if p.iter().any(|v| v < &Rational::ZERO) {
        Membership::Outside
    } else if p.iter().all(|v| v > &Rational::ZERO) {
        Membership::Inside
    } else {
        Membership::Boundary
    }
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(m: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            cur.push(i);
            go(m, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(m, k, 0, &mut cur, &mut out);
    out
}

/// Scales a nonzero vector so its first nonzero entry is `±1`.
fn normalize(v: Vec<Rational>) -> Vec<Rational> {
    let s = v.iter().find(|x| !x.is_zero()).expect("nonzero").clone();
    let s = if s < Rational::ZERO { -s } else { s };
    v.iter().map(|x| x / &s).collect()
}

/// Extreme rays of `{x : ⟨ν, x⟩ ≥ 0}` for a pointed cone given by normals.
pub fn extreme_rays(n: usize, normals: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut rays: Vec<Vec<Rational>> = Vec::new();
    for sub in combinations(normals.len(), n - 1) {
        let ker = if sub.is_empty() {
            (0..n)
                .map(|i| {
                    let mut v = vec![Rational::ZERO; n];
                    v[i] = Rational::ONE;
                    v
                })
                .collect()
        } else {
            RatMatrix::from_rows(&sub.iter().map(|&i| normals[i].clone()).collect::<Vec<_>>()).kernel_basis()
        };
        if ker.len() != 1 {
            continue;
        }
        let r = normalize(ker[0].clone());
        for cand in [r.clone(), r.iter().map(|x| -x).collect()] {
            if normals.iter().all(|nu| dot(nu, &cand) >= Rational::ZERO) && !rays.contains(&cand) {
                rays.push(cand);
            }
        }
    }
    rays.sort();
    rays
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionReport {
    pub common: Vec<GVector>,
    pub rays: Vec<Vec<Rational>>,
    /// A ray of the intersection outside the cone of the common summands,
    /// or a common summand outside the intersection.
    pub witness: Option<Vec<Rational>>,
}

impl IntersectionReport {
    pub fn passes(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks that the two cones meet exactly in the cone spanned by their
/// common summands.
pub fn cone_intersection_check(m: &SiltingObject, n: &SiltingObject) -> IntersectionReport {
    let (cm, cn) = (Cone::of(m), Cone::of(n));
    let dim = cm.n();
    let common: Vec<GVector> = m.gvectors().iter().filter(|g| n.gvectors().contains(g)).cloned().collect();
    let normals: Vec<Vec<Rational>> = cm.normals.iter().chain(&cn.normals).cloned().collect();
    let rays = extreme_rays(dim, &normals);
    // A point lies in C(common) iff its coordinates in M's basis vanish off
    // the common columns and are nonnegative.
    let in_common = |x: &[Rational]| {
        cm.coordinates(x).iter().zip(m.gvectors()).all(|(c, g)| {
            if common.contains(g) {
                c >= &Rational::ZERO
            } else {
                c.is_zero()
            }
        })
    };
    let mut witness = rays.iter().find(|r| !in_common(r)).cloned();
    if witness.is_none() {
        witness = common
            .iter()
            .map(|g| rat(g))
            .find(|g| membership(&cm, g) == Membership::Outside || membership(&cn, g) == Membership::Outside);
    }
    IntersectionReport { common, rays, witness }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub samples: usize,
    pub covered: usize,
    /// Samples strictly inside one cone and not outside another.
    pub interior_overlaps: usize,
}

impl CoverageReport {
    pub fn full(&self) -> bool {
        self.covered == self.samples && self.interior_overlaps == 0
    }
}

/// Seeded random nonzero integer vectors with entries in `[-range, range]`.
pub fn sample_points(n: usize, samples: usize, seed: u64, range: i64) -> Vec<Vec<Rational>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(samples);
    while out.len() < samples {
        let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-range..=range)).collect();
        if v.iter().any(|&x| x != 0) {
            out.push(rat(&v));
        }
    }
    out
}

pub fn fan_coverage_sample(g: &MutationGraph, samples: usize, seed: u64) -> CoverageReport {
    let cones: Vec<Cone> = g.sorted().iter().map(|&i| Cone::of(&g.nodes[i])).collect();
    let pts = sample_points(g.n, samples, seed, 1000);
    let per: Vec<(bool, bool)> = pts
        .par_iter()
        .map(|x| {
            let ms: Vec<Membership> = cones.iter().map(|c| membership(c, x)).collect();
            let hits = ms.iter().filter(|&&m| m != Membership::Outside).count();
            let inside = ms.contains(&Membership::Inside);
            (hits > 0, inside && hits > 1)
        })
        .collect();
    CoverageReport {
        samples,
        covered: per.iter().filter(|p| p.0).count(),
        interior_overlaps: per.iter().filter(|p| p.1).count(),
    }
}

/// Sums of coordinates of all discovered g-vectors, as `(min, max)`.
pub fn gvector_sum_range(g: &MutationGraph) -> Option<(i64, i64)> {
    let sums: Vec<i64> = g
        .nodes
        .iter()
        .flat_map(|m| m.gvectors().iter().map(|v| v.iter().sum::<i64>()))
        .collect();
    Some((*sums.iter().min()?, *sums.iter().max()?))
}

/// Whether `y` is a nonnegative combination of `gens`, by testing every
/// basis drawn from them.
pub fn in_conic_hull(y: &[Rational], gens: &[Vec<Rational>]) -> bool {
    let n = y.len();
    if y.iter().all(Rational::is_zero) {
        return true;
    }
    combinations(gens.len(), n).into_iter().any(|sub| {
        let cols: Vec<Vec<Rational>> = sub.iter().map(|&i| gens[i].clone()).collect();
        RatMatrix::from_columns(n, &cols)
            .inverse()
            .is_some_and(|inv| inv.mul_vec(y).iter().all(|c| c >= &Rational::ZERO))
    })
}

/// Result of the cone-theoretic order conditions for a pair `(M, N)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProbeRecord {
    /// Witness for `N ∈ (add M) * (add ΣA)`.
    pub c1_witness: bool,
    /// `C(N) ⊂ C(M) + C(A[1])`.
    pub c2: bool,
    /// `M ≥ N`; the fourth condition is reported equal to it.
    pub c3: bool,
    pub c4: bool,
    /// Witness for `M ∈ (add A) * (add N)`.
    pub c5_witness: bool,
    /// `C(M) ⊂ C(N) + C(A)`.
    pub c6: bool,
    pub c7: bool,
    /// Proved implications that failed.
    pub violations: Vec<String>,
}

impl ProbeRecord {
    /// `M ≥ N` holds but a stronger condition was not confirmed.
    pub fn converse_gaps(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if self.c3 && !self.c2 {
            out.push("3 without 2");
        }
        if self.c3 && !self.c1_witness {
            out.push("3 without 1-witness");
        }
        if self.c3 && !self.c6 {
            out.push("7 without 6");
        }
        if self.c3 && !self.c5_witness {
            out.push("7 without 5-witness");
        }
        out
    }
}

pub fn order_cone_probe(alg: &BoundQuiverAlgebra, m: &SiltingObject, n: &SiltingObject, cache: &ExtCache) -> ProbeRecord {
    let dim = alg.num_vertices();
    let unit = |i: usize, s: i64| {
        let mut v = vec![Rational::ZERO; dim];
        v[i] = Rational::from_int(s);
        v
    };
    let gm: Vec<Vec<Rational>> = m.gvectors().iter().map(|g| rat(g)).collect();
    let gn: Vec<Vec<Rational>> = n.gvectors().iter().map(|g| rat(g)).collect();

    let c2 = {
        let gens: Vec<Vec<Rational>> = gm.iter().cloned().chain((0..dim).map(|i| unit(i, -1))).collect();
        gn.iter().all(|y| in_conic_hull(y, &gens))
    };
    let c6 = {
        let gens: Vec<Vec<Rational>> = gn.iter().cloned().chain((0..dim).map(|i| unit(i, 1))).collect();
        gm.iter().all(|y| in_conic_hull(y, &gens))
    };
    let c3 = order_geq(alg, m, n, cache);

    let only_degree = |c: crate::silt::Complex, deg: i32| c.minimize(alg).support().iter().all(|&d| d == deg);
    // Triangle M' → N → ΣS' → ΣM' with M' → N a minimal right approximation.
    let c1_witness = n.summands.iter().all(|y| {
        let (g, src) = right_approximation(alg, y, &m.summands);
        only_degree(cone(&src, y, &g), -1)
    });
    // Triangle S' → M' → N' → ΣS' with M' → N' a minimal left approximation.
    let c5_witness = m.summands.iter().all(|x| {
        let (f, tgt) = left_approximation(alg, x, &n.summands);
        only_degree(cone(x, &tgt, &f), -1)
    });

    let mut violations = Vec::new();
    if c1_witness && !c2 {
        violations.push("1 => 2".to_string());
    }
    if c2 && !c3 {
        violations.push("2 => 3".to_string());
    }
    if c5_witness && !c6 {
        violations.push("5 => 6".to_string());
    }
    if c6 && !c3 {
        violations.push("6 => 7".to_string());
    }
    ProbeRecord { c1_witness, c2, c3, c4: c3, c5_witness, c6, c7: c3, violations }
}

#[derive(Debug, Clone, Serialize)]
pub struct FanDump {
    pub n: usize,
    /// Generator matrices, one list of columns per cone, in key order.
    pub cones: Vec<Vec<GVector>>,
}

pub fn fan_json(g: &MutationGraph) -> String {
    let dump = FanDump {
        n: g.n,
        cones: g.sorted().iter().map(|&i| g.nodes[i].key()).collect(),
    };
    serde_json::to_string_pretty(&dump).expect("fan serializes")
}

/// OFF text of the unit-sphere cross-section for three vertices: one
/// point per ray and one triangle per cone.
pub fn fan_off(g: &MutationGraph) -> Option<String> {
    if g.n != 3 {
        return None;
    }
    let mut rays: Vec<GVector> = g.nodes.iter().flat_map(|m| m.gvectors().iter().cloned()).collect();
    rays.sort();
    rays.dedup();
    let mut s = String::from("OFF\n");
    let _ = writeln!(s, "{} {} 0", rays.len(), g.len());
    for r in &rays {
        let len = (r.iter().map(|&x| (x * x) as f64).sum::<f64>()).sqrt();
        let _ = writeln!(s, "{:.6} {:.6} {:.6}", r[0] as f64 / len, r[1] as f64 / len, r[2] as f64 / len);
    }
    for &i in &g.sorted() {
        let idx: Vec<String> = g.nodes[i]
            .gvectors()
            .iter()
            .map(|v| rays.binary_search(v).expect("ray listed").to_string())
            .collect();
        let _ = writeln!(s, "3 {}", idx.join(" "));
    }
    Some(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::explore::{explore, ExploreOptions};
    use crate::io::example;

    fn r(v: &[i64]) -> Vec<Rational> {
        rat(v)
    }

    #[test]
    fn membership_in_the_positive_orthant() {
        let c = Cone::new(GMatrix::from_columns(vec![vec![1, 0], vec![0, 1]])).unwrap();
        assert!(c.unimodular);
        assert_eq!(membership(&c, &r(&[1, 1])), Membership::Inside);
        assert_eq!(membership(&c, &r(&[1, 0])), Membership::Boundary);
        assert_eq!(membership(&c, &r(&[-1, 0])), Membership::Outside);
        for (i, nu) in c.normals.iter().enumerate() {
            for (j, g) in c.generators.0.iter().enumerate() {
                let want = if i == j { Rational::ONE } else { Rational::ZERO };
                assert_eq!(dot(nu, &rat(g)), want);
            }
        }
    }

    #[test]
    fn pentagon_intersections() {
        let alg = example("a2-path").unwrap();
        let g = explore(&alg, &ExploreOptions::default()).unwrap();
        let a = &g.nodes[g.top(&alg).unwrap()];
        let bottom = &g.nodes[g.bottom(&alg).unwrap()];
        let rep = cone_intersection_check(a, a);
        assert!(rep.passes());
        assert_eq!(rep.rays.len(), 2);
        let other = &g.nodes[g.node(&vec![vec![1, -1], vec![1, 0]]).unwrap()];
        let rep = cone_intersection_check(a, other);
        assert!(rep.passes());
        assert_eq!(rep.rays, vec![r(&[1, 0])]);
        let rep = cone_intersection_check(a, bottom);
        assert!(rep.passes());
        assert!(rep.rays.is_empty() && rep.common.is_empty());
        for x in &g.nodes {
            for y in &g.nodes {
                assert!(cone_intersection_check(x, y).passes());
            }
        }
        assert!(fan_coverage_sample(&g, 1000, 0).full());
    }

    #[test]
    fn probe_over_the_pentagon() {
        let alg = example("a2-path").unwrap();
        let g = explore(&alg, &ExploreOptions::default()).unwrap();
        let (top, bottom) = (g.top(&alg).unwrap(), g.bottom(&alg).unwrap());
        let p = order_cone_probe(&alg, &g.nodes[top], &g.nodes[bottom], &g.cache);
        assert!(p.c2 && p.c3 && p.c6);
        let same = order_cone_probe(&alg, &g.nodes[top], &g.nodes[top], &g.cache);
        assert!(same.c1_witness && same.c2 && same.c3 && same.c5_witness && same.c6);
        for x in &g.nodes {
            for y in &g.nodes {
                assert!(order_cone_probe(&alg, x, y, &g.cache).violations.is_empty());
            }
        }
    }

    #[test]
    fn off_export_for_three_vertices() {
        let alg = example("a3-rel").unwrap();
        let g = explore(&alg, &ExploreOptions::default()).unwrap();
        let off = fan_off(&g).unwrap();
        assert!(off.starts_with("OFF\n8 12 0\n"));
        assert!(fan_coverage_sample(&g, 500, 3).full());
        assert!(fan_json(&g).contains("\"cones\""));
    }

    #[test]
    fn conic_hull() {
        let gens = vec![r(&[1, 0]), r(&[1, 1])];
        assert!(in_conic_hull(&r(&[2, 1]), &gens));
        assert!(!in_conic_hull(&r(&[0, 1]), &gens));
        assert!(in_conic_hull(&r(&[0, 0]), &gens));
    }
}

//! The simplicial complex whose vertices are indecomposable two-term
//! presilting complexes and whose maximal faces are silting objects.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::explore::{MutationGraph, Verdict};
use crate::linalg::{IntMatrix, RatMatrix, Rational};
use crate::silt::GVector;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeltaError {
    #[error("the exploration did not terminate, so the complex would be partial")]
    NotFinite,
    #[error("maximal face {face:?} has {size} vertices instead of {n}")]
    Impure { face: Vec<usize>, size: usize, n: usize },
    #[error("face {face:?} lies in {count} maximal faces instead of 2")]
    Branching { face: Vec<usize>, count: usize },
    #[error("shelling fails at position {position}: face {face:?} meets the earlier faces badly")]
    ShellingFailed { position: usize, face: Vec<usize> },
    #[error("the silting order contains a cycle")]
    CyclicOrder,
}

/// Vertices are sorted g-vectors; each maximal face is a sorted list of
/// vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialComplex {
    pub n: usize,
    pub vertices: Vec<GVector>,
    pub max_faces: Vec<Vec<usize>>,
}

/// Every subset of a silting object's summands is presilting, so the
/// downward closure of the maximal faces needs no further check.
pub fn build_delta(g: &MutationGraph) -> Result<(SimplicialComplex, Vec<usize>), DeltaError> {
    if g.verdict != Verdict::Finite {
        return Err(DeltaError::NotFinite);
    }
    let order = g.sorted();
    let verts: BTreeSet<GVector> = g.nodes.iter().flat_map(|m| m.gvectors().iter().cloned()).collect();
    let vertices: Vec<GVector> = verts.into_iter().collect();
    let pos: BTreeMap<&GVector, usize> = vertices.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let max_faces = order
        .iter()
        .map(|&i| {
            let mut f: Vec<usize> = g.nodes[i].gvectors().iter().map(|v| pos[v]).collect();
            f.sort_unstable();
            f
        })
        .collect();
    Ok((SimplicialComplex { n: g.n, vertices, max_faces }, order))
}

fn subsets_of_size(face: &[usize], k: usize, out: &mut Vec<Vec<usize>>) {
    fn go(face: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..face.len() {
            if face.len() - i < k - cur.len() {
                break;
            }
            cur.push(face[i]);
            go(face, k, i + 1, cur, out);
            cur.pop();
        }
    }
    go(face, k, 0, &mut Vec::new(), out);
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().filter(|x| b.binary_search(x).is_ok()).copied().collect()
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

impl SimplicialComplex {
    pub fn without_face(&self, i: usize) -> Self {
        let mut c = self.clone();
        c.max_faces.remove(i);
        c
    }

    /// Faces of each size `0..=n` (size 0 is the empty face).
    pub fn faces(&self) -> Vec<Vec<Vec<usize>>> {
        let mut by_size = vec![BTreeSet::new(); self.n + 1];
        for f in &self.max_faces {
            for k in 0..=f.len().min(self.n) {
                let mut out = Vec::new();
                subsets_of_size(f, k, &mut out);
                by_size[k].extend(out);
            }
        }
        by_size.into_iter().map(|s| s.into_iter().collect()).collect()
    }

    /// Face counts `f_{-1}, f_0, ..., f_{n-1}`.
    pub fn face_counts(&self) -> Vec<usize> {
        self.faces().iter().map(Vec::len).collect()
    }

    /// Containing maximal faces of each face of size `k`.
    fn star_counts(&self, k: usize) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut m: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (i, f) in self.max_faces.iter().enumerate() {
            let mut out = Vec::new();
            subsets_of_size(f, k, &mut out);
            for s in out {
                m.entry(s).or_default().push(i);
            }
        }
        m
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex serializes")
    }
}

/// All maximal faces have `n` vertices and every face with `n - 1`
/// vertices lies in exactly two of them.
pub fn check_pure_nonbranching(d: &SimplicialComplex) -> Result<(), DeltaError> {
    for f in &d.max_faces {
        if f.len() != d.n {
            return Err(DeltaError::Impure { face: f.clone(), size: f.len(), n: d.n });
        }
    }
    if d.n == 0 {
        return Ok(());
    }
    for (face, star) in d.star_counts(d.n - 1) {
        if star.len() != 2 {
            return Err(DeltaError::Branching { face, count: star.len() });
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Homology {
    pub euler: i64,
    /// `f_{-1}, f_0, ..., f_{n-1}`.
    pub face_counts: Vec<usize>,
    /// Reduced Betti numbers in degrees `0..n`.
    pub betti: Vec<usize>,
    /// Torsion coefficients of reduced homology in degrees `0..n`.
    #[serde(serialize_with = "torsion_as_strings")]
    pub torsion: Vec<Vec<BigInt>>,
}

fn torsion_as_strings<S: serde::Serializer>(t: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    let v: Vec<Vec<String>> = t.iter().map(|d| d.iter().map(BigInt::to_string).collect()).collect();
    v.serialize(s)
}

impl Homology {
    /// Reduced homology of the `(n-1)`-sphere.
    pub fn is_sphere(&self) -> bool {
        let k = self.betti.len();
        k > 0
            && self.betti[..k - 1].iter().all(|&b| b == 0)
            && self.betti[k - 1] == 1
            && self.torsion.iter().all(Vec::is_empty)
    }
}

/// Euler characteristic and reduced integral homology through boundary
/// matrices (the augmentation included) and Smith normal form.
pub fn euler_and_homology(d: &SimplicialComplex) -> Homology {
    let faces = d.faces();
    let counts: Vec<usize> = faces.iter().map(Vec::len).collect();
    let euler: i64 = counts
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| if k % 2 == 1 { c as i64 } else { -(c as i64) })
        .sum();
    // boundary[k]: faces of size k+1 → faces of size k, for k = 0..n-1.
    let index: Vec<BTreeMap<&Vec<usize>, usize>> = faces
        .iter()
        .map(|fs| fs.iter().enumerate().map(|(i, f)| (f, i)).collect())
        .collect();
    let snf: Vec<(usize, Vec<BigInt>)> = (0..d.n)
        .map(|k| {
            let mut m = IntMatrix::zeros(faces[k].len(), faces[k + 1].len());
            for (j, f) in faces[k + 1].iter().enumerate() {
                for drop in 0..f.len() {
                    let mut g = f.clone();
                    g.remove(drop);
                    let sign = if drop % 2 == 0 { 1 } else { -1 };
                    m[(index[k][&g], j)] = BigInt::from(sign);
                }
            }
            let s = m.smith_normal_form();
            (s.rank(), s.torsion())
        })
        .collect();
    let mut betti = Vec::with_capacity(d.n);
    let mut torsion = Vec::with_capacity(d.n);
    for k in 0..d.n {
        // Chains of dimension k are faces of size k+1.
        let ck = counts[k + 1];
        let out_rank = snf[k].0;
        let (in_rank, tors) = if k + 1 < d.n { (snf[k + 1].0, snf[k + 1].1.clone()) } else { (0, Vec::new()) };
        betti.push(ck - out_rank - in_rank);
        torsion.push(tors);
    }
    Homology { euler, face_counts: counts, betti, torsion }
}

/// Maximal faces in an order extending the silting order from the bottom,
/// ties broken by canonical key. `face_node[i]` is the graph node of face `i`.
pub fn shelling_from_order(
    d: &SimplicialComplex,
    g: &MutationGraph,
    face_node: &[usize],
) -> Result<Vec<usize>, DeltaError> {
    let mut face_of = vec![usize::MAX; g.len()];
    for (f, &v) in face_node.iter().enumerate() {
        face_of[v] = f;
    }
    let mut indeg = vec![0usize; d.max_faces.len()];
    let mut up = vec![Vec::new(); d.max_faces.len()];
    for a in &g.hasse {
        // `from ≥ to`, so `to` comes first.
        let (lo, hi) = (face_of[a.to], face_of[a.from]);
        indeg[hi] += 1;
        up[lo].push(hi);
    }
    // Face indices already follow key order.
    let mut ready: BTreeSet<usize> = (0..indeg.len()).filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(indeg.len());
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &w in &up[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                ready.insert(w);
            }
        }
    }
    if order.len() != indeg.len() {
        return Err(DeltaError::CyclicOrder);
    }
    check_shelling(d, &order)?;
    Ok(order)
}

/// Each face after the first meets the union of the earlier ones in a
/// nonempty complex that is pure of dimension `n - 2`.
pub fn check_shelling(d: &SimplicialComplex, order: &[usize]) -> Result<(), DeltaError> {
    for j in 1..order.len() {
        let a = &d.max_faces[order[j]];
        let meets: Vec<Vec<usize>> = order[..j].iter().map(|&b| intersect(a, &d.max_faces[b])).collect();
        let facets: Vec<&Vec<usize>> = meets.iter().filter(|m| m.len() + 1 == a.len()).collect();
        let ok = !facets.is_empty() && meets.iter().all(|m| facets.iter().any(|f| is_subset(m, f)));
        if !ok {
            return Err(DeltaError::ShellingFailed { position: j, face: a.clone() });
        }
    }
    Ok(())
}

/// Maximal faces joined along codimension-one faces, with the ring of
/// maximal faces around each codimension-two face.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualGraph {
    pub nodes: usize,
    pub edges: Vec<(usize, usize)>,
    /// The codimension-two face and the maximal faces around it, in cyclic
    /// order when they form a single cycle.
    pub polygons: Vec<(Vec<usize>, Vec<usize>)>,
    /// Codimension-two faces whose maximal faces do not form one cycle.
    pub broken: Vec<Vec<usize>>,
}

pub fn dual_graph(d: &SimplicialComplex) -> DualGraph {
    let mut edges = BTreeSet::new();
    if d.n >= 1 {
        for star in d.star_counts(d.n - 1).values() {
            for (i, &a) in star.iter().enumerate() {
                for &b in &star[i + 1..] {
                    edges.insert((a.min(b), a.max(b)));
                }
            }
        }
    }
    let mut polygons = Vec::new();
    let mut broken = Vec::new();
    if d.n >= 2 {
        for (face, star) in d.star_counts(d.n - 2) {
            match ring(&star, &edges) {
                Some(r) => polygons.push((face, r)),
                None => broken.push(face),
            }
        }
    }
    DualGraph {
        nodes: d.max_faces.len(),
        edges: edges.into_iter().collect(),
        polygons,
        broken,
    }
}

/// The members of `star` in cycle order, if the dual edges among them form
/// a single cycle.
fn ring(star: &[usize], edges: &BTreeSet<(usize, usize)>) -> Option<Vec<usize>> {
    if star.len() < 3 {
        return None;
    }
    let nbrs = |v: usize| -> Vec<usize> {
        star.iter()
            .copied()
            .filter(|&w| w != v && edges.contains(&(v.min(w), v.max(w))))
            .collect()
    };
    if star.iter().any(|&v| nbrs(v).len() != 2) {
        return None;
    }
    let mut r = vec![star[0]];
    let mut prev = star[0];
    let mut cur = nbrs(star[0])[0];
    while cur != star[0] {
        r.push(cur);
        let nx = nbrs(cur).into_iter().find(|&w| w != prev)?;
        prev = cur;
        cur = nx;
        if r.len() > star.len() {
            return None;
        }
    }
    (r.len() == star.len()).then_some(r)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Rank2Report {
    pub connected: bool,
    pub cycle_rank: usize,
    pub polygon_rank: usize,
    pub broken_polygons: usize,
}

impl Rank2Report {
    pub fn passes(&self) -> bool {
        self.connected && self.broken_polygons == 0 && self.polygon_rank == self.cycle_rank
    }
}

/// Polygon boundaries span the cycle space of the dual graph.
pub fn rank2_cycle_check(dg: &DualGraph) -> Rank2Report {
    let mut parent: Vec<usize> = (0..dg.nodes).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut comps = dg.nodes;
    for &(a, b) in &dg.edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
            comps -= 1;
        }
    }
    let cycle_rank = (dg.edges.len() + comps).saturating_sub(dg.nodes);
    let eidx: BTreeMap<(usize, usize), usize> = dg.edges.iter().enumerate().map(|(i, &e)| (e, i)).collect();
    let rows: Vec<Vec<Rational>> = dg
        .polygons
        .iter()
        .map(|(_, r)| {
            let mut v = vec![Rational::ZERO; dg.edges.len()];
            for i in 0..r.len() {
                let (a, b) = (r[i], r[(i + 1) % r.len()]);
                let e = eidx[&(a.min(b), a.max(b))];
                v[e] = if a < b { &v[e] + &Rational::ONE } else { &v[e] - &Rational::ONE };
            }
            v
        })
        .collect();
    let polygon_rank = if rows.is_empty() { 0 } else { RatMatrix::from_rows(&rows).rank() };
    Rank2Report {
        connected: comps <= 1,
        cycle_rank,
        polygon_rank,
        broken_polygons: dg.broken.len(),
    }
}

/// DOT text of the dual exchange graph.
pub fn dual_dot(d: &SimplicialComplex, dg: &DualGraph) -> String {
    let mut s = String::from("graph dual {\n");
    for (i, f) in d.max_faces.iter().enumerate() {
        let label: Vec<String> = f
            .iter()
            .map(|&v| format!("({})", d.vertices[v].iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
            .collect();
        let _ = writeln!(s, "  f{i} [label=\"{}\"];", label.join(" "));
    }
    for (a, b) in &dg.edges {
        let _ = writeln!(s, "  f{a} -- f{b};");
    }
    s.push_str("}\n");
    s
}

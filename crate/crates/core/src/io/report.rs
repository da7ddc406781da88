//! Named structural checks over an explored graph, collected into a
//! [`RunReport`].

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::BoundQuiverAlgebra;
use crate::delta::{
    build_delta, check_pure_nonbranching, dual_graph, euler_and_homology, rank2_cycle_check, shelling_from_order,
    Homology,
};
use crate::explore::{explore, longest_path_stats, ExploreOptions, MutationGraph, Start, Verdict};
use crate::fan::{cone_intersection_check, fan_coverage_sample, order_cone_probe};
use crate::linalg::IntMatrix;
use crate::rep::{count_indec_summands, fac_contains, h0_pair, is_tau_rigid_pair, TauRigidPair};
use crate::silt::{mutate, order_geq};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, detail: impl Into<String>) -> Self {
        CheckResult { name: name.to_string(), passed, detail: detail.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraSummary {
    pub name: String,
    pub dim: usize,
    pub n: usize,
    pub loewy_length: usize,
}

impl AlgebraSummary {
    pub fn of(name: &str, alg: &BoundQuiverAlgebra) -> Self {
        AlgebraSummary {
            name: name.to_string(),
            dim: alg.dim(),
            n: alg.num_vertices(),
            loewy_length: alg.loewy_length(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaStats {
    pub vertices: usize,
    pub max_faces: usize,
    pub homology: Homology,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub algebra: AlgebraSummary,
    pub verdict: Verdict,
    pub nodes: usize,
    pub edges: usize,
    pub hasse_arrows: usize,
    pub ell: Option<usize>,
    pub delta: Option<DeltaStats>,
    pub checks: Vec<CheckResult>,
    /// Left out of serialized reports so they stay byte-identical.
    #[serde(skip)]
    pub timing_ms: u128,
}

impl RunReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn first_failure<T>(items: impl IntoIterator<Item = (T, bool)>) -> Option<T> {
    items.into_iter().find(|(_, ok)| !ok).map(|(t, _)| t)
}

/// `G(S, M)` is unimodular with `G(S, M) G(M, S) = 1`, and
/// `G(S, L) = G(S, M) G(M, L)` on sampled triples.
pub fn check_g_identities(g: &MutationGraph, seed: u64) -> CheckResult {
    let n = g.n;
    let id = IntMatrix::identity(n);
    let mats: Vec<IntMatrix> = g.nodes.iter().map(|m| m.gmatrix().to_int()).collect();
    let mut invs = Vec::with_capacity(mats.len());
    for (i, m) in mats.iter().enumerate() {
        match m.int_inverse() {
            Ok(inv) if m.mul(&inv) == id && inv.mul(m) == id => invs.push(inv),
            _ => return CheckResult::new("g-identities", false, format!("G-matrix of {:?} is not unimodular", g.nodes[i].key())),
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let triples = 200.min(g.len().pow(3));
    for _ in 0..triples {
        let (a, b, c) = (rng.gen_range(0..g.len()), rng.gen_range(0..g.len()), rng.gen_range(0..g.len()));
        let gab = invs[a].mul(&mats[b]);
        let gbc = invs[b].mul(&mats[c]);
        let gac = invs[a].mul(&mats[c]);
        if gab.mul(&gbc) != gac || mats[a].mul(&gac) != mats[c] {
            return CheckResult::new("g-identities", false, format!("transitivity fails on {a}, {b}, {c}"));
        }
    }
    CheckResult::new("g-identities", true, format!("{} matrices, {triples} triples", mats.len()))
}

pub fn check_sign_coherence(g: &MutationGraph) -> CheckResult {
    match first_failure(g.nodes.iter().map(|m| (m.key(), m.gmatrix().is_sign_coherent()))) {
        Some(k) => CheckResult::new("sign-coherence", false, format!("{k:?}")),
        None => CheckResult::new("sign-coherence", true, format!("{} G-matrices", g.len())),
    }
}

/// Mutating back along every edge returns the other endpoint.
pub fn check_mutation_involution(alg: &BoundQuiverAlgebra, g: &MutationGraph) -> CheckResult {
    let bad = g.edges.par_iter().find_any(|e| {
        let ab = mutate(alg, &g.nodes[e.a], e.label_a, &g.cache);
        let ba = mutate(alg, &g.nodes[e.b], e.label_b, &g.cache);
        !matches!((ab, ba), (Ok(x), Ok(y)) if x.key() == g.nodes[e.b].key() && y.key() == g.nodes[e.a].key())
    });
    match bad {
        Some(e) => CheckResult::new("mutation-involution", false, format!("edge {} - {}", e.a, e.b)),
        None => CheckResult::new("mutation-involution", true, format!("{} edges", g.edges.len())),
    }
}

pub fn check_regularity(g: &MutationGraph) -> CheckResult {
    let bad = g.irregular_nodes();
    match bad.first() {
        Some(&i) => CheckResult::new("n-regularity", false, format!("{:?} has degree {}", g.nodes[i].key(), g.degree(i))),
        None => CheckResult::new("n-regularity", true, format!("degree {} everywhere", g.n)),
    }
}

pub fn check_source_sink(alg: &BoundQuiverAlgebra, g: &MutationGraph) -> CheckResult {
    let ok = g.unoriented.is_empty()
        && g.top(alg).is_some_and(|t| g.sources() == [t])
        && g.bottom(alg).is_some_and(|b| g.sinks() == [b]);
    CheckResult::new(
        "unique-source-sink",
        ok,
        format!("{} sources, {} sinks, {} unoriented edges", g.sources().len(), g.sinks().len(), g.unoriented.len()),
    )
}

pub fn check_path_bound(alg: &BoundQuiverAlgebra, g: &MutationGraph) -> (CheckResult, Option<usize>) {
    match longest_path_stats(alg, g) {
        Ok(s) => (
            CheckResult::new("path-length-bound", s.holds, format!("{} nodes, ell = {}, bound {}", g.len(), s.ell, s.bound)),
            Some(s.ell),
        ),
        Err(e) => (CheckResult::new("path-length-bound", false, e.to_string()), None),
    }
}

/// `H⁰` of every node gives a τ-rigid pair `(M, P)` with `|M| + |P| = n`.
pub fn h0_pairs(alg: &BoundQuiverAlgebra, g: &MutationGraph) -> Vec<Result<TauRigidPair, String>> {
    g.sorted()
        .par_iter()
        .map(|&i| h0_pair(alg, &g.nodes[i].total(alg)).map_err(|e| e.to_string()))
        .collect()
}

pub fn check_h0_bridge(alg: &BoundQuiverAlgebra, g: &MutationGraph, pairs: &[Result<TauRigidPair, String>], seed: u64) -> CheckResult {
    let order = g.sorted();
    for (&i, p) in order.iter().zip(pairs) {
        let key = g.nodes[i].key();
        let p = match p {
            Ok(p) => p,
            Err(e) => return CheckResult::new("h0-bridge", false, format!("{key:?}: {e}")),
        };
        let (ok, _) = is_tau_rigid_pair(alg, &p.module, &p.support);
        if !ok {
            return CheckResult::new("h0-bridge", false, format!("{key:?}: not a tau-rigid pair"));
        }
        let m = match count_indec_summands(alg, &p.module, seed) {
            Ok(m) => m,
            Err(e) => return CheckResult::new("h0-bridge", false, format!("{key:?}: {e}")),
        };
        let mut sup = p.support.clone();
        sup.sort_unstable();
        sup.dedup();
        if m + sup.len() != g.n {
            return CheckResult::new("h0-bridge", false, format!("{key:?}: |M| + |P| = {} + {}", m, sup.len()));
        }
    }
    CheckResult::new("h0-bridge", true, format!("{} support tau-tilting pairs", pairs.len()))
}

/// `M ≥ N` iff `H⁰(N) ∈ Fac H⁰(M)`, on all ordered pairs.
pub fn check_fac_order(alg: &BoundQuiverAlgebra, g: &MutationGraph, pairs: &[Result<TauRigidPair, String>]) -> CheckResult {
    let order = g.sorted();
    let mods: Vec<_> = match pairs.iter().map(|p| p.as_ref().map(|p| &p.module)).collect::<Result<Vec<_>, _>>() {
        Ok(m) => m,
        Err(e) => return CheckResult::new("fac-order", false, e.clone()),
    };
    let jobs: Vec<(usize, usize)> = (0..order.len()).flat_map(|a| (0..order.len()).map(move |b| (a, b))).collect();
    let bad = jobs.par_iter().find_first(|&&(a, b)| {
        order_geq(alg, &g.nodes[order[a]], &g.nodes[order[b]], &g.cache) != fac_contains(alg, mods[a], mods[b])
    });
    match bad {
        Some(&(a, b)) => CheckResult::new(
            "fac-order",
            false,
            format!("{:?} vs {:?}", g.nodes[order[a]].key(), g.nodes[order[b]].key()),
        ),
        None => CheckResult::new("fac-order", true, format!("{} ordered pairs", jobs.len())),
    }
}

pub fn check_cone_intersections(g: &MutationGraph) -> CheckResult {
    let jobs: Vec<(usize, usize)> = (0..g.len()).flat_map(|a| (a..g.len()).map(move |b| (a, b))).collect();
    let bad = jobs
        .par_iter()
        .find_first(|&&(a, b)| !cone_intersection_check(&g.nodes[a], &g.nodes[b]).passes());
    match bad {
        Some(&(a, b)) => CheckResult::new("cone-intersection", false, format!("{:?} vs {:?}", g.nodes[a].key(), g.nodes[b].key())),
        None => CheckResult::new("cone-intersection", true, format!("{} pairs", jobs.len())),
    }
}

pub fn check_fan_coverage(g: &MutationGraph, seed: u64) -> CheckResult {
    let r = fan_coverage_sample(g, 1000, seed);
    CheckResult::new(
        "fan-coverage",
        r.full(),
        format!("{}/{} covered, {} interior overlaps", r.covered, r.samples, r.interior_overlaps),
    )
}

/// Probe over all ordered pairs; returns the check and the converse-gap
/// count.
pub fn check_order_cone_probe(alg: &BoundQuiverAlgebra, g: &MutationGraph) -> (CheckResult, usize) {
    let order = g.sorted();
    let jobs: Vec<(usize, usize)> = order.iter().flat_map(|&a| order.iter().map(move |&b| (a, b))).collect();
    let recs: Vec<_> = jobs
        .par_iter()
        .map(|&(a, b)| order_cone_probe(alg, &g.nodes[a], &g.nodes[b], &g.cache))
        .collect();
    let violations: usize = recs.iter().map(|r| r.violations.len()).sum();
    let gaps: usize = recs.iter().map(|r| r.converse_gaps().len()).sum();
    (
        CheckResult::new(
            "order-cone-probe",
            violations == 0,
            format!("{} pairs, {violations} violations, {gaps} unconfirmed converses", jobs.len()),
        ),
        gaps,
    )
}

pub fn check_both_starts(alg: &BoundQuiverAlgebra, g: &MutationGraph, budget: usize) -> CheckResult {
    let other = match g.start {
        Start::Algebra => Start::Shifted,
        Start::Shifted => Start::Algebra,
    };
    match explore(alg, &ExploreOptions { start: other, budget, ..Default::default() }) {
        Ok(h) if h.verdict == Verdict::Finite && h.keys() == g.keys() => CheckResult::new("both-starts", true, format!("{} nodes", h.len())),
        Ok(h) => CheckResult::new("both-starts", false, format!("{:?} with {} nodes", h.verdict, h.len())),
        Err(e) => CheckResult::new("both-starts", false, e.to_string()),
    }
}

/// Checks on the simplicial complex; `None` stats when it cannot be built.
pub fn delta_checks(g: &MutationGraph) -> (Vec<CheckResult>, Option<DeltaStats>) {
    let (d, face_node) = match build_delta(g) {
        Ok(x) => x,
        Err(e) => return (vec![CheckResult::new("delta", false, e.to_string())], None),
    };
    let mut out = Vec::new();
    out.push(match check_pure_nonbranching(&d) {
        Ok(()) => CheckResult::new("pure-nonbranching", true, format!("{} max faces of size {}", d.max_faces.len(), d.n)),
        Err(e) => CheckResult::new("pure-nonbranching", false, e.to_string()),
    });
    let h = euler_and_homology(&d);
    let want = if d.n % 2 == 1 { 2 } else { 0 };
    out.push(CheckResult::new("euler", h.euler == want, format!("chi = {}", h.euler)));
    out.push(CheckResult::new("sphere-homology", h.is_sphere(), format!("reduced betti {:?}", h.betti)));
    out.push(if d.n < 2 {
        CheckResult::new("shelling", true, "not applicable below two vertices")
    } else {
        match shelling_from_order(&d, g, &face_node) {
            Ok(o) => CheckResult::new("shelling", true, format!("{} faces", o.len())),
            Err(e) => CheckResult::new("shelling", false, e.to_string()),
        }
    });
    let r = rank2_cycle_check(&dual_graph(&d));
    out.push(CheckResult::new(
        "rank2-cycles",
        r.passes(),
        format!("cycle rank {}, polygon rank {}", r.cycle_rank, r.polygon_rank),
    ));
    let stats = DeltaStats { vertices: d.vertices.len(), max_faces: d.max_faces.len(), homology: h };
    (out, Some(stats))
}

/// All checks that make sense for the graph's verdict.
pub fn full_report(name: &str, alg: &BoundQuiverAlgebra, g: &MutationGraph, budget: usize, seed: u64) -> RunReport {
    let mut checks = vec![check_g_identities(g, seed), check_sign_coherence(g), check_mutation_involution(alg, g)];
    let pairs = h0_pairs(alg, g);
    checks.push(check_h0_bridge(alg, g, &pairs, seed));
    let mut ell = None;
    let mut delta = None;
    if g.verdict == Verdict::Finite {
        checks.push(check_regularity(g));
        checks.push(check_source_sink(alg, g));
        let (c, l) = check_path_bound(alg, g);
        checks.push(c);
        ell = l;
        checks.push(check_fac_order(alg, g, &pairs));
        checks.push(check_cone_intersections(g));
        checks.push(check_fan_coverage(g, seed));
        checks.push(check_order_cone_probe(alg, g).0);
        checks.push(check_both_starts(alg, g, budget));
        let (dc, ds) = delta_checks(g);
        checks.extend(dc);
        delta = ds;
    }
    RunReport {
        algebra: AlgebraSummary::of(name, alg),
        verdict: g.verdict,
        nodes: g.len(),
        edges: g.edges.len(),
        hasse_arrows: g.hasse.len(),
        ell,
        delta,
        checks,
        timing_ms: 0,
    }
}

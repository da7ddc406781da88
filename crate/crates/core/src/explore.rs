//! Breadth-first exploration of the mutation graph of two-term silting
//! objects, with Hasse orientation and a finiteness verdict.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::BoundQuiverAlgebra;
use crate::silt::{
    isomorphic_indecomposables, mutate, order_geq, validate_object, ExtCache, GVector, SiltError, SiltingObject,
    TwoTermComplex,
};

pub type Key = Vec<GVector>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Start {
    Algebra,
    Shifted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Finite,
    BudgetExhausted,
}

#[derive(Debug, Clone)]
pub struct ExploreOptions {
    pub start: Start,
    /// Maximum number of nodes.
    pub budget: usize,
    /// Nodes at this distance from the start are recorded but not expanded.
    pub max_depth: Option<usize>,
    pub validate: bool,
    pub parallel: bool,
    pub seed: u64,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions {
            start: Start::Algebra,
            budget: 10_000,
            max_depth: None,
            validate: false,
            parallel: true,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExploreError {
    #[error(transparent)]
    Mutation(#[from] SiltError),
    #[error("validation failed at {key:?}: {message}")]
    Validation { key: Key, message: String },
    #[error("the exploration did not terminate, so the graph is partial")]
    NotFinite,
    #[error("the graph does not contain the stalk complex A")]
    MissingRoot,
}

/// A mutation between nodes `a < b`; `label_a` is the index of the
/// exchanged summand in `a`, `label_b` the one in `b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub label_a: usize,
    pub label_b: usize,
}

/// An arrow `from → to` of the Hasse quiver, labelled by the exchanged
/// summand's index in `from`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub label: usize,
}

#[derive(Debug)]
pub struct MutationGraph {
    pub n: usize,
    pub start: Start,
    pub nodes: Vec<SiltingObject>,
    pub depth: Vec<usize>,
    pub expanded: Vec<bool>,
    pub index: BTreeMap<Key, usize>,
    pub edges: Vec<Edge>,
    pub hasse: Vec<Arrow>,
    /// Edges whose endpoints compare in neither direction.
    pub unoriented: Vec<Edge>,
    pub verdict: Verdict,
    pub cache: ExtCache,
}

fn exchanged_index(from: &SiltingObject, to: &SiltingObject) -> usize {
    to.gvectors()
        .iter()
        .position(|g| !from.gvectors().contains(g))
        .expect("mutation changes one summand")
}

pub fn explore(alg: &BoundQuiverAlgebra, opts: &ExploreOptions) -> Result<MutationGraph, ExploreError> {
    let n = alg.num_vertices();
    let root = match opts.start {
        Start::Algebra => SiltingObject::algebra(alg),
        Start::Shifted => SiltingObject::shifted_algebra(alg),
    };
    let mut g = MutationGraph {
        n,
        start: opts.start,
        nodes: vec![root.clone()],
        depth: vec![0],
        expanded: vec![false],
        index: BTreeMap::from([(root.key(), 0)]),
        edges: Vec::new(),
        hasse: Vec::new(),
        unoriented: Vec::new(),
        verdict: Verdict::Finite,
        cache: ExtCache::new(),
    };
    let mut seen_summands: HashMap<GVector, TwoTermComplex> = HashMap::new();
    if opts.validate {
        validate_new(alg, &g, &[0], &mut seen_summands, opts.seed)?;
    }
    let mut edge_set: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut frontier = vec![0usize];
    let mut complete = true;

    while !frontier.is_empty() {
        let d = g.depth[frontier[0]];
        if opts.max_depth.is_some_and(|m| d >= m) {
            complete = false;
            break;
        }
        let jobs: Vec<(usize, usize)> = frontier.iter().flat_map(|&i| (0..n).map(move |k| (i, k))).collect();
        let run = |&(i, k): &(usize, usize)| mutate(alg, &g.nodes[i], k, &g.cache);
        let results: Vec<Result<SiltingObject, SiltError>> = if opts.parallel {
            jobs.par_iter().map(run).collect()
        } else {
            jobs.iter().map(run).collect()
        };

        let mut next = Vec::new();
        for (&(i, k), res) in jobs.iter().zip(results) {
            let m = res?;
            let key = m.key();
            let j = match g.index.get(&key) {
                Some(&j) => j,
                None => {
                    if g.nodes.len() >= opts.budget {
                        complete = false;
                        continue;
                    }
                    let j = g.nodes.len();
                    g.index.insert(key, j);
                    g.nodes.push(m);
                    g.depth.push(d + 1);
                    g.expanded.push(false);
                    next.push(j);
                    j
                }
            };
            let (a, b) = (i.min(j), i.max(j));
            if edge_set.insert((a, b)) {
                let (la, lb) = if a == i { (k, exchanged_index(&g.nodes[i], &g.nodes[j])) } else { (exchanged_index(&g.nodes[i], &g.nodes[j]), k) };
                g.edges.push(Edge { a, b, label_a: la, label_b: lb });
            }
        }
        for &i in &frontier {
            g.expanded[i] = true;
        }
        if opts.validate {
            validate_new(alg, &g, &next, &mut seen_summands, opts.seed)?;
        }
        next.sort_by(|&x, &y| g.nodes[x].key().cmp(&g.nodes[y].key()));
        frontier = next;
    }
    g.verdict = if complete { Verdict::Finite } else { Verdict::BudgetExhausted };
    g.edges.sort();
    orient(alg, &mut g, opts.parallel);
    Ok(g)
}

fn validate_new(
    alg: &BoundQuiverAlgebra,
    g: &MutationGraph,
    fresh: &[usize],
    seen: &mut HashMap<GVector, TwoTermComplex>,
    seed: u64,
) -> Result<(), ExploreError> {
    for &i in fresh {
        let m = &g.nodes[i];
        let fail = |message: String| ExploreError::Validation { key: m.key(), message };
        validate_object(alg, m, seed).map_err(fail)?;
        for (s, gv) in m.summands.iter().zip(m.gvectors()) {
            match seen.get(gv) {
                Some(prev) if !isomorphic_indecomposables(alg, prev, s) => {
                    return Err(fail(format!("two non-isomorphic summands share g-vector {gv:?}")));
                }
                Some(_) => {}
                None => {
                    seen.insert(gv.clone(), s.clone());
                }
            }
        }
    }
    Ok(())
}

fn orient(alg: &BoundQuiverAlgebra, g: &mut MutationGraph, parallel: bool) {
    let cmp = |e: &Edge| {
        if order_geq(alg, &g.nodes[e.a], &g.nodes[e.b], &g.cache) {
            Some(Arrow { from: e.a, to: e.b, label: e.label_a })
        } else if order_geq(alg, &g.nodes[e.b], &g.nodes[e.a], &g.cache) {
            Some(Arrow { from: e.b, to: e.a, label: e.label_b })
        } else {
            None
        }
    };
    let arrows: Vec<Option<Arrow>> = if parallel {
        g.edges.par_iter().map(cmp).collect()
    } else {
        g.edges.iter().map(cmp).collect()
    };
    for (e, a) in g.edges.clone().into_iter().zip(arrows) {
        match a {
            Some(a) => g.hasse.push(a),
            None => g.unoriented.push(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathStats {
    /// Longest directed path from `A` in the Hasse quiver.
    pub ell: usize,
    /// `1 + n + ... + n^ell`.
    pub bound: u128,
    pub holds: bool,
}

impl MutationGraph {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn keys(&self) -> Vec<Key> {
        self.index.keys().cloned().collect()
    }

    /// Node indices in canonical key order.
    pub fn sorted(&self) -> Vec<usize> {
        self.index.values().copied().collect()
    }

    pub fn node(&self, key: &Key) -> Option<usize> {
        self.index.get(key).copied()
    }

    pub fn top(&self, alg: &BoundQuiverAlgebra) -> Option<usize> {
        self.node(&SiltingObject::algebra(alg).key())
    }

    pub fn bottom(&self, alg: &BoundQuiverAlgebra) -> Option<usize> {
        self.node(&SiltingObject::shifted_algebra(alg).key())
    }

    /// Number of edges beyond a spanning tree; zero iff the explored part
    /// is a tree.
    pub fn merges(&self) -> usize {
        (self.edges.len() + 1).saturating_sub(self.nodes.len())
    }

    pub fn degree(&self, i: usize) -> usize {
        self.edges.iter().filter(|e| e.a == i || e.b == i).count()
    }

    /// Fully expanded nodes with a degree other than `n`.
    pub fn irregular_nodes(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.expanded[i] && self.degree(i) != self.n)
            .collect()
    }

    pub fn sources(&self) -> Vec<usize> {
        let mut has_in = vec![false; self.len()];
        for a in &self.hasse {
            has_in[a.to] = true;
        }
        self.sorted().into_iter().filter(|&i| !has_in[i]).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        let mut has_out = vec![false; self.len()];
        for a in &self.hasse {
            has_out[a.from] = true;
        }
        self.sorted().into_iter().filter(|&i| !has_out[i]).collect()
    }

    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.len()];
        for e in &self.edges {
            adj[e.a].push(e.b);
            adj[e.b].push(e.a);
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Nodes in an order compatible with the Hasse arrows, ties broken by
    /// canonical key. `None` if the arrows contain a cycle.
    pub fn linear_extension(&self) -> Option<Vec<usize>> {
        let mut indeg = vec![0usize; self.len()];
        let mut out = vec![Vec::new(); self.len()];
        for a in &self.hasse {
            indeg[a.to] += 1;
            out[a.from].push(a.to);
        }
        let keys: Vec<Key> = self.nodes.iter().map(SiltingObject::key).collect();
        let mut ready: BTreeSet<(&Key, usize)> = (0..self.len()).filter(|&i| indeg[i] == 0).map(|i| (&keys[i], i)).collect();
        let mut order = Vec::with_capacity(self.len());
        while let Some(first) = ready.pop_first() {
            let v = first.1;
            order.push(v);
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.insert((&keys[w], w));
                }
            }
        }
        (order.len() == self.len()).then_some(order)
    }

    pub fn to_dump(&self) -> GraphDump {
        let order = self.sorted();
        let mut pos = vec![0; self.len()];
        for (p, &i) in order.iter().enumerate() {
            pos[i] = p;
        }
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (pos[e.a], pos[e.b]);
                if a < b {
                    Edge { a, b, label_a: e.label_a, label_b: e.label_b }
                } else {
                    Edge { a: b, b: a, label_a: e.label_b, label_b: e.label_a }
                }
            })
            .collect();
        edges.sort();
        let mut hasse: Vec<Arrow> = self
            .hasse
            .iter()
            .map(|a| Arrow { from: pos[a.from], to: pos[a.to], label: a.label })
            .collect();
        hasse.sort();
        GraphDump {
            n: self.n,
            start: self.start,
            verdict: self.verdict,
            nodes: order
                .iter()
                .map(|&i| NodeDump {
                    gmatrix: self.nodes[i].key(),
                    depth: self.depth[i],
                    summands: self.nodes[i].summands.clone(),
                })
                .collect(),
            edges,
            hasse,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_dump()).expect("graph serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeDump {
    pub gmatrix: Key,
    pub depth: usize,
    pub summands: Vec<TwoTermComplex>,
}

/// Serialized graph; nodes are listed in canonical key order and edges
/// refer to positions in that list.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDump {
    pub n: usize,
    pub start: Start,
    pub verdict: Verdict,
    pub nodes: Vec<NodeDump>,
    pub edges: Vec<Edge>,
    pub hasse: Vec<Arrow>,
}

impl GraphDump {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Canonical keys recomputed from the stored complexes.
    pub fn recomputed_keys(&self) -> Vec<Key> {
        self.nodes
            .iter()
            .map(|nd| {
                let mut k: Key = nd.summands.iter().map(|s| s.g_vector(self.n)).collect();
                k.sort();
                k
            })
            .collect()
    }
}

fn key_label(k: &Key) -> String {
    k.iter()
        .map(|g| format!("({})", g.iter().map(i64::to_string).collect::<Vec<_>>().join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

/// DOT text of the Hasse quiver; nodes are numbered in key order.
pub fn hasse_dot(g: &MutationGraph) -> String {
    let d = g.to_dump();
    let mut s = String::from("digraph hasse {\n  rankdir=TB;\n");
    for (i, nd) in d.nodes.iter().enumerate() {
        let _ = writeln!(s, "  n{i} [label=\"{}\"];", key_label(&nd.gmatrix));
    }
    for a in &d.hasse {
        let _ = writeln!(s, "  n{} -> n{} [label=\"{}\"];", a.from, a.to, a.label);
    }
    s.push_str("}\n");
    s
}

pub fn longest_path_stats(alg: &BoundQuiverAlgebra, g: &MutationGraph) -> Result<PathStats, ExploreError> {
    if g.verdict != Verdict::Finite {
        return Err(ExploreError::NotFinite);
    }
    let top = g.top(alg).ok_or(ExploreError::MissingRoot)?;
    let order = g.linear_extension().ok_or(ExploreError::NotFinite)?;
    let mut out = vec![Vec::new(); g.len()];
    for a in &g.hasse {
        out[a.from].push(a.to);
    }
    let mut dist: Vec<Option<usize>> = vec![None; g.len()];
    dist[top] = Some(0);
    for v in order {
        if let Some(dv) = dist[v] {
            for &w in &out[v] {
                dist[w] = Some(dist[w].map_or(dv + 1, |x| x.max(dv + 1)));
            }
        }
    }
    let ell = dist.iter().flatten().copied().max().unwrap_or(0);
    let n = g.n as u128;
    let mut bound: u128 = 0;
    let mut p: u128 = 1;
    for _ in 0..=ell {
        bound = bound.saturating_add(p);
        p = p.saturating_mul(n);
    }
    Ok(PathStats { ell, bound, holds: (g.len() as u128) <= bound })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::example;

    fn finite(name: &str) -> (BoundQuiverAlgebra, MutationGraph) {
        let alg = example(name).unwrap();
        let g = explore(&alg, &ExploreOptions { budget: 100, ..Default::default() }).unwrap();
        assert_eq!(g.verdict, Verdict::Finite);
        (alg, g)
    }

    #[test]
    fn pentagon() {
        let (alg, g) = finite("a2-path");
        assert_eq!(g.len(), 5);
        assert_eq!(g.edges.len(), 5);
        assert!(g.unoriented.is_empty());
        assert_eq!(g.sources(), vec![g.top(&alg).unwrap()]);
        assert_eq!(g.sinks(), vec![g.bottom(&alg).unwrap()]);
        assert!(g.irregular_nodes().is_empty());
        let st = longest_path_stats(&alg, &g).unwrap();
        assert_eq!((st.ell, st.bound), (3, 15));
        assert!(st.holds);
    }

    #[test]
    fn one_simple_has_two_nodes() {
        let (alg, g) = finite("one-simple");
        assert_eq!(g.len(), 2);
        assert_eq!(g.hasse.len(), 1);
        assert_eq!(longest_path_stats(&alg, &g).unwrap().ell, 1);
        let dot = hasse_dot(&g);
        assert!(dot.contains("n1 -> n0"), "{dot}");
    }

    #[test]
    fn a3_with_relation() {
        let (_, g) = finite("a3-rel");
        assert_eq!(g.len(), 12);
        let verts: BTreeSet<&GVector> = g.nodes.iter().flat_map(|m| m.gvectors()).collect();
        assert_eq!(verts.len(), 8);
        assert!(g.irregular_nodes().is_empty());
    }

    #[test]
    fn both_starts_agree() {
        let alg = example("preproj-a2").unwrap();
        let opts = ExploreOptions { budget: 100, ..Default::default() };
        let a = explore(&alg, &opts).unwrap();
        let b = explore(&alg, &ExploreOptions { start: Start::Shifted, ..opts }).unwrap();
        assert_eq!(a.keys(), b.keys());
        assert_eq!(a.len(), 6);
    }

    #[test]
    fn budget_and_depth_limits() {
        let alg = example("a2-path").unwrap();
        let g = explore(&alg, &ExploreOptions { budget: 3, ..Default::default() }).unwrap();
        assert_eq!(g.verdict, Verdict::BudgetExhausted);
        assert_eq!(g.len(), 3);
        let g = explore(&alg, &ExploreOptions { max_depth: Some(1), ..Default::default() }).unwrap();
        assert_eq!(g.verdict, Verdict::BudgetExhausted);
        assert_eq!(g.len(), 3);
        assert!(longest_path_stats(&alg, &g).is_err());
    }

    #[test]
    fn deterministic_and_round_trips() {
        let alg = example("a3-rel").unwrap();
        let opts = ExploreOptions { budget: 100, validate: true, ..Default::default() };
        let a = explore(&alg, &opts).unwrap();
        let b = explore(&alg, &ExploreOptions { parallel: false, ..opts }).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(hasse_dot(&a), hasse_dot(&b));
        let back = GraphDump::from_json(&a.to_json()).unwrap();
        assert_eq!(back.recomputed_keys(), a.keys());
        assert_eq!(back, a.to_dump());
    }
}

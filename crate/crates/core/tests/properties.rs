mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use twosilt::algebra::BoundQuiverAlgebra;
use twosilt::explore::{explore, ExploreOptions, GraphDump, MutationGraph};
use twosilt::io::example;
use twosilt::linalg::Rational;
use twosilt::proj::ProjMap;
use twosilt::silt::{ext_vanishes, is_presilting, mutate, ExtCache, GMatrix, TwoTermComplex};

const ALGEBRAS: [&str; 4] = ["a2-path", "a3-rel", "preproj-a2", "sym-local"];

fn algebra(i: usize) -> &'static BoundQuiverAlgebra {
    static ALGS: OnceLock<Vec<BoundQuiverAlgebra>> = OnceLock::new();
    &ALGS.get_or_init(|| ALGEBRAS.iter().map(|n| example(n).unwrap()).collect())[i]
}

fn finite_graph(i: usize) -> &'static MutationGraph {
    static GRAPHS: OnceLock<Vec<MutationGraph>> = OnceLock::new();
    &GRAPHS.get_or_init(|| {
        (0..3).map(|i| explore(algebra(i), &ExploreOptions::default()).unwrap()).collect()
    })[i]
}

/// A complex on algebra `a` with small random tops and entries in -2..=2.
fn complex(a: usize) -> impl Strategy<Value = TwoTermComplex> {
    let n = algebra(a).num_vertices();
    (prop::collection::vec(0..n, 0..3), prop::collection::vec(0..n, 0..3), prop::collection::vec(-2i64..=2, 64))
        .prop_map(move |(src, dst, coeffs)| {
            let alg = algebra(a);
            let len = ProjMap::coord_len(alg, &src, &dst);
            let v: Vec<Rational> = (0..len).map(|i| Rational::from(coeffs[i % coeffs.len()])).collect();
            TwoTermComplex::new(ProjMap::from_coords(alg, &src, &dst, &v))
        })
}

fn to_oracle(alg: &BoundQuiverAlgebra, x: &TwoTermComplex) -> common::Cx {
    let d = &x.d;
    let ent = (0..d.src.len())
        .map(|r| {
            (0..d.dst.len())
                .map(|c| {
                    let block = alg.block(d.dst[c], d.src[r]);
                    d.ent[r][c]
                        .iter()
                        .enumerate()
                        .filter(|(_, v)| !v.is_zero())
                        .map(|(k, v)| (block[k], v.clone()))
                        .collect()
                })
                .collect()
        })
        .collect();
    common::Cx { src: d.src.clone(), dst: d.dst.clone(), d: ent }
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn g_vector_is_additive((a, x, y) in (0..4usize).prop_flat_map(|a| (Just(a), complex(a), complex(a)))) {
        let alg = algebra(a);
        let n = alg.num_vertices();
        prop_assert_eq!(x.direct_sum(alg, &y).g_vector(n), add(&x.g_vector(n), &y.g_vector(n)));
    }

    #[test]
    fn minimize_is_idempotent_and_keeps_class((a, x) in (0..4usize).prop_flat_map(|a| (Just(a), complex(a)))) {
        let alg = algebra(a);
        let n = alg.num_vertices();
        let m = x.minimize(alg);
        prop_assert!(m.is_minimal());
        prop_assert_eq!(m.g_vector(n), x.g_vector(n));
        prop_assert_eq!(m.minimize(alg).multiplicities(n), m.multiplicities(n));
        prop_assert_eq!(is_presilting(alg, &m), is_presilting(alg, &x));
    }

    #[test]
    fn ext_agrees_with_reference((a, x, y) in (0..4usize).prop_flat_map(|a| (Just(a), complex(a), complex(a)))) {
        let alg = algebra(a);
        prop_assert_eq!(
            ext_vanishes(alg, &x, &y),
            common::ext_vanishes(alg, &to_oracle(alg, &x), &to_oracle(alg, &y))
        );
    }

    #[test]
    fn ext_is_additive((a, x, y, z) in (0..4usize).prop_flat_map(|a| (Just(a), complex(a), complex(a), complex(a)))) {
        let alg = algebra(a);
        let xy = x.direct_sum(alg, &y);
        prop_assert_eq!(ext_vanishes(alg, &xy, &z), ext_vanishes(alg, &x, &z) && ext_vanishes(alg, &y, &z));
        prop_assert_eq!(ext_vanishes(alg, &z, &xy), ext_vanishes(alg, &z, &x) && ext_vanishes(alg, &z, &y));
    }

    #[test]
    fn mutation_is_an_involution(a in 0..3usize, pick in any::<prop::sample::Index>(), k in 0..3usize) {
        let alg = algebra(a);
        let g = finite_graph(a);
        let m = &g.nodes[pick.index(g.len())];
        let k = k % m.summands.len();
        let cache = ExtCache::new();
        let m2 = mutate(alg, m, k, &cache).unwrap();
        let new = m2.gvectors().iter().position(|v| !m.gvectors().contains(v)).unwrap();
        let back = mutate(alg, &m2, new, &cache).unwrap();
        prop_assert_eq!(back.key(), m.key());
        prop_assert!(g.index.contains_key(&m2.key()));
    }

    #[test]
    fn complex_json_round_trip((a, x) in (0..4usize).prop_flat_map(|a| (Just(a), complex(a)))) {
        let _ = a;
        let text = serde_json::to_string(&x).unwrap();
        let back: TwoTermComplex = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, x);
    }
}

#[test]
fn every_node_is_sign_coherent() {
    let jac = example("jacobian-b").unwrap();
    let jg = explore(&jac, &ExploreOptions { max_depth: Some(3), ..Default::default() }).unwrap();
    let sym = explore(algebra(3), &ExploreOptions { budget: 12, ..Default::default() }).unwrap();
    for g in [finite_graph(0), finite_graph(1), finite_graph(2), &jg, &sym] {
        for m in &g.nodes {
            assert!(GMatrix::from_columns(m.gvectors().to_vec()).is_sign_coherent(), "{:?}", m.key());
        }
    }
}

#[test]
fn graph_json_round_trip() {
    for i in 0..3 {
        let g = finite_graph(i);
        let text = g.to_json();
        let dump = GraphDump::from_json(&text).unwrap();
        assert_eq!(dump.recomputed_keys(), g.keys());
        assert_eq!(serde_json::to_string_pretty(&dump).unwrap(), text);
    }
}

#[test]
fn exploration_is_deterministic() {
    for name in ["a3-rel", "preproj-a2", "jacobian-b"] {
        let alg = example(name).unwrap();
        let opts = ExploreOptions { max_depth: Some(3), ..Default::default() };
        let par = explore(&alg, &opts).unwrap().to_json();
        let again = explore(&alg, &opts).unwrap().to_json();
        let serial = explore(&alg, &ExploreOptions { parallel: false, ..opts }).unwrap().to_json();
        assert_eq!(par, again, "{name}");
        assert_eq!(par, serial, "{name}");
    }
}

mod common;

use std::collections::BTreeSet;

use twosilt::explore::{explore, ExploreOptions};
use twosilt::io::example;

fn explorer_keys(name: &str) -> BTreeSet<Vec<Vec<i64>>> {
    let alg = example(name).unwrap();
    explore(&alg, &ExploreOptions::default()).unwrap().keys().into_iter().collect()
}

#[test]
fn oracle_pentagon_by_hand() {
    let alg = example("a2-path").unwrap();
    let ind: BTreeSet<Vec<i64>> = common::indecomposable_presilting(&alg).into_iter().map(|(g, _)| g).collect();
    let expect: BTreeSet<Vec<i64>> =
        [[1, 0], [0, 1], [-1, 0], [0, -1], [1, -1]].iter().map(|g| g.to_vec()).collect();
    assert_eq!(ind, expect);
    assert_eq!(common::silting_keys(&alg).len(), 5);
}

#[test]
fn oracle_agrees_with_explorer() {
    for name in ["a2-path", "a3-rel", "preproj-a2", "one-simple"] {
        let alg = example(name).unwrap();
        assert_eq!(common::silting_keys(&alg), explorer_keys(name), "{name}");
    }
}

#[test]
fn oracle_ext_matches_library_on_indecomposables() {
    use twosilt::linalg::Rational;
    use twosilt::proj::ProjMap;
    use twosilt::silt::{ext_vanishes, TwoTermComplex};
    for name in ["a3-rel", "preproj-a2"] {
        let alg = example(name).unwrap();
        let ind = common::indecomposable_presilting(&alg);
        let lift = |x: &common::Cx| {
            let ent = (0..x.src.len())
                .map(|r| {
                    (0..x.dst.len())
                        .map(|c| {
                            let mut v = vec![Rational::ZERO; alg.block_dim(x.dst[c], x.src[r])];
                            for (p, k) in &x.d[r][c] {
                                v[alg.local_index(*p)] = k.clone();
                            }
                            v
                        })
                        .collect()
                })
                .collect();
            TwoTermComplex::new(ProjMap { src: x.src.clone(), dst: x.dst.clone(), ent })
        };
        for (_, x) in &ind {
            for (_, y) in &ind {
                assert_eq!(
                    common::ext_vanishes(&alg, x, y),
                    ext_vanishes(&alg, &lift(x), &lift(y)),
                    "{name}: {:?} vs {:?}",
                    x.g_vector(alg.num_vertices()),
                    y.g_vector(alg.num_vertices())
                );
            }
        }
    }
}

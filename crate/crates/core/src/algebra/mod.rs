//! Bound quiver algebras `KQ/I` over the rationals.
//!
//! Conventions used everywhere in the crate:
//! - paths are written left to right, so `ab` means "first `a`, then `b`";
//! - modules are right modules and `P_i = e_i A`;
//! - `Hom(P_i, P_j) = e_j A e_i`, a path `b` from `j` to `i` acting by left
//!   multiplication, and `f_c ∘ f_b = f_{cb}`.

mod radical;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::sparse::{sparse_collect, SparseVec};
use crate::linalg::{Echelon, Rational};

pub use radical::{radical_of_endo, radical_of_matrix_algebra, FiniteAlgebra, SemisimpleError};

/// Above this many paths the truncated path space is considered too big.
const MAX_PATHS: usize = 400_000;
const DEFAULT_MAX_LEN: usize = 32;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error("no vanishing path length found up to {0}; the algebra looks infinite dimensional")]
    NotFiniteDimensional(usize),
    #[error("multiplication table is not associative on basis triple ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<(String, String, String)>) -> Result<Self, AlgebraError> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.clone(), i).is_some() {
                return Err(AlgebraError::InvalidQuiver(format!("duplicate vertex {v:?}")));
            }
        }
        if vertices.is_empty() {
            return Err(AlgebraError::InvalidQuiver("no vertices".into()));
        }
        let mut names = HashMap::new();
        let mut out = Vec::new();
        for (name, s, t) in arrows {
            if names.insert(name.clone(), ()).is_some() {
                return Err(AlgebraError::InvalidQuiver(format!("duplicate arrow {name:?}")));
            }
            let lookup = |v: &String| {
                index
                    .get(v)
                    .copied()
                    .ok_or_else(|| AlgebraError::InvalidQuiver(format!("arrow {name:?} uses unknown vertex {v:?}")))
            };
            out.push(Arrow {
                source: lookup(&s)?,
                target: lookup(&t)?,
                name,
            });
        }
        Ok(Quiver { vertices, arrows: out })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }
}

/// A linear combination of parallel paths, each of length at least two.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    pub terms: Vec<(Rational, Vec<usize>)>,
}

impl Relation {
    /// Builds a relation from arrow names.
    pub fn from_names(q: &Quiver, terms: &[(Rational, Vec<&str>)]) -> Result<Self, AlgebraError> {
        let terms = terms
            .iter()
            .map(|(c, p)| {
                let path = p
                    .iter()
                    .map(|n| {
                        q.arrow_index(n)
                            .ok_or_else(|| AlgebraError::InvalidRelation(format!("unknown arrow {n:?}")))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Ok((c.clone(), path))
            })
            .collect::<Result<Vec<_>, AlgebraError>>()?;
        Ok(Relation { terms })
    }

    fn validate(&self, q: &Quiver) -> Result<(usize, usize), AlgebraError> {
        let mut ends = None;
        for (_, p) in &self.terms {
            if p.len() < 2 {
                return Err(AlgebraError::InvalidRelation(
                    "relations must be combinations of paths of length at least 2".into(),
                ));
            }
            for w in p.windows(2) {
                if q.arrows[w[0]].target != q.arrows[w[1]].source {
                    return Err(AlgebraError::InvalidRelation(format!(
                        "arrows {} and {} do not compose",
                        q.arrows[w[0]].name, q.arrows[w[1]].name
                    )));
                }
            }
            let e = (q.arrows[p[0]].source, q.arrows[p[p.len() - 1]].target);
            match ends {
                None => ends = Some(e),
                Some(x) if x != e => {
                    return Err(AlgebraError::InvalidRelation(
                        "paths in one relation must share source and target".into(),
                    ))
                }
                _ => {}
            }
        }
        ends.ok_or_else(|| AlgebraError::InvalidRelation("empty relation".into()))
    }
}

/// A residue path representing one basis vector of the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisPath {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl BasisPath {
    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// Structure constants of block products `e_w A e_v × e_v A e_u → e_w A e_u`
/// in local block coordinates.
type BlockTable = Vec<(u32, u32, u32, Rational)>;

#[derive(Debug, Clone)]
pub struct BoundQuiverAlgebra {
    quiver: Quiver,
    relations: Vec<Relation>,
    basis: Vec<BasisPath>,
    /// `blocks[s][t]`: global indices of basis paths from `s` to `t`.
    blocks: Vec<Vec<Vec<usize>>>,
    local: Vec<usize>,
    /// Products of basis elements in global coordinates.
    products: HashMap<(usize, usize), SparseVec>,
    block_mul: Vec<BlockTable>,
    loewy: usize,
    arrow_basis: Vec<usize>,
}

/// Truncated path space: all paths of length at most `max`.
struct PathSpace {
    paths: Vec<BasisPath>,
    index: HashMap<BasisPath, usize>,
}

impl PathSpace {
    fn new(q: &Quiver, max: usize) -> Result<Self, AlgebraError> {
        let mut paths: Vec<BasisPath> = (0..q.num_vertices())
            .map(|v| BasisPath {
                source: v,
                target: v,
                arrows: vec![],
            })
            .collect();
        let mut frontier = paths.clone();
        for _ in 0..max {
            let mut next = Vec::new();
            for p in &frontier {
                for (ai, a) in q.arrows.iter().enumerate() {
                    if a.source == p.target {
                        let mut arrows = p.arrows.clone();
                        arrows.push(ai);
                        next.push(BasisPath {
                            source: p.source,
                            target: a.target,
                            arrows,
                        });
                    }
                }
            }
            paths.extend(next.iter().cloned());
            if paths.len() > MAX_PATHS {
                return Err(AlgebraError::NotFiniteDimensional(max));
            }
            frontier = next;
        }
        // Longest paths first so the echelon pivots eliminate long paths and
        // short paths survive as basis representatives.
        paths.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let index = paths.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        Ok(PathSpace { paths, index })
    }

    fn column(&self, p: &BasisPath) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Concatenation `a·b` as a column, if composable and short enough.
    fn concat(&self, a: &BasisPath, b: &BasisPath) -> Option<usize> {
        if a.target != b.source {
            return None;
        }
        let mut arrows = a.arrows.clone();
        arrows.extend_from_slice(&b.arrows);
        self.column(&BasisPath {
            source: a.source,
            target: b.target,
            arrows,
        })
    }
}

fn arrow_path(q: &Quiver, a: usize) -> BasisPath {
    BasisPath {
        source: q.arrows[a].source,
        target: q.arrows[a].target,
        arrows: vec![a],
    }
}

/// Span of `I + R^{max+1}` inside the paths of length at most `max`.
fn ideal_closure(q: &Quiver, rels: &[Relation], space: &PathSpace) -> Echelon {
    let n = space.paths.len();
    let mut ech = Echelon::new(n);
    let mut queue: Vec<SparseVec> = rels
        .iter()
        .map(|r| {
            sparse_collect(
                r.terms
                    .iter()
                    .filter_map(|(c, p)| {
                        let bp = BasisPath {
                            source: q.arrows[p[0]].source,
                            target: q.arrows[p[p.len() - 1]].target,
                            arrows: p.clone(),
                        };
                        space.column(&bp).map(|col| (col, c.clone()))
                    })
                    .collect(),
            )
        })
        .collect();
    let arrows: Vec<BasisPath> = (0..q.arrows.len()).map(|a| arrow_path(q, a)).collect();
    while let Some(v) = queue.pop() {
        if v.is_empty() || ech.insert(v.clone()).is_none() {
            continue;
        }
        // Multiples of a vector already in the span are in the span of the
        // multiples queued earlier, so only rank-raising vectors spawn work.
        for a in &arrows {
            let left = v
                .iter()
                .filter_map(|(c, x)| space.concat(a, &space.paths[*c]).map(|k| (k, x.clone())))
                .collect();
            let right = v
                .iter()
                .filter_map(|(c, x)| space.concat(&space.paths[*c], a).map(|k| (k, x.clone())))
                .collect();
            queue.push(sparse_collect(left));
            queue.push(sparse_collect(right));
        }
    }
    ech
}

impl BoundQuiverAlgebra {
    /// Computes a residue-path basis and multiplication table of `KQ/I`.
    ///
    /// For each candidate Loewy length `L` the ideal is closed inside the
    /// paths of length at most `L`; the first `L` whose whole length stratum
    /// lies in the ideal is taken. For an admissible ideal this stratum then
    /// vanishes in `KQ/I`.
    pub fn build(quiver: Quiver, relations: Vec<Relation>, max_len: Option<usize>) -> Result<Self, AlgebraError> {
        for r in &relations {
            r.validate(&quiver)?;
        }
        let max_len = max_len.unwrap_or(DEFAULT_MAX_LEN);
        for l in 1..=max_len {
            let space = PathSpace::new(&quiver, l)?;
            let ech = ideal_closure(&quiver, &relations, &space);
            let stratum_vanishes = space
                .paths
                .iter()
                .enumerate()
                .filter(|(_, p)| p.len() == l)
                .all(|(c, _)| ech.contains(&vec![(c, Rational::ONE)]));
            if stratum_vanishes {
                let alg = Self::from_closure(quiver, relations, &space, &ech, l);
                alg.check_associativity()?;
                return Ok(alg);
            }
        }
        Err(AlgebraError::NotFiniteDimensional(max_len))
    }

    fn from_closure(quiver: Quiver, relations: Vec<Relation>, space: &PathSpace, ech: &Echelon, loewy: usize) -> Self {
        let mut basis: Vec<BasisPath> = space
            .paths
            .iter()
            .enumerate()
            .filter(|(c, _)| !ech.is_pivot(*c))
            .map(|(_, p)| p.clone())
            .collect();
        basis.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let col_to_basis: HashMap<usize, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, p)| (space.column(p).expect("basis path is a column"), i))
            .collect();

        let n = quiver.num_vertices();
        let mut blocks = vec![vec![Vec::new(); n]; n];
        let mut local = vec![0; basis.len()];
        for (i, p) in basis.iter().enumerate() {
            local[i] = blocks[p.source][p.target].len();
            blocks[p.source][p.target].push(i);
        }

        let mut products = HashMap::new();
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                if a.target != b.source {
                    continue;
                }
                let Some(col) = space.concat(a, b) else {
                    continue;
                };
                let nf = ech.reduce(&vec![(col, Rational::ONE)]);
                let v: SparseVec = sparse_collect(nf.into_iter().map(|(c, x)| (col_to_basis[&c], x)).collect());
                if !v.is_empty() {
                    products.insert((i, j), v);
                }
            }
        }

        let mut block_mul = vec![Vec::new(); n * n * n];
        for ((i, j), v) in &products {
            let (w, vv, u) = (basis[*i].source, basis[*i].target, basis[*j].target);
            let slot = &mut block_mul[(w * n + vv) * n + u];
            for (k, x) in v {
                slot.push((local[*i] as u32, local[*j] as u32, local[*k] as u32, x.clone()));
            }
        }
        for t in block_mul.iter_mut() {
            t.sort_by_key(|(a, b, c, _)| (*a, *b, *c));
        }

        let arrow_basis = (0..quiver.arrows.len())
            .map(|a| {
                basis
                    .iter()
                    .position(|p| p.arrows == [a])
                    .expect("arrows survive an admissible ideal")
            })
            .collect();
        BoundQuiverAlgebra {
            quiver,
            relations,
            basis,
            blocks,
            local,
            products,
            block_mul,
            loewy,
            arrow_basis,
        }
    }

    fn check_associativity(&self) -> Result<(), AlgebraError> {
        let d = self.dim();
        let triples: Vec<(usize, usize, usize)> = if d <= 40 {
            let mut t = Vec::new();
            for a in 0..d {
                for b in 0..d {
                    for c in 0..d {
                        t.push((a, b, c));
                    }
                }
            }
            t
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            (0..4000).map(|_| (rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d))).collect()
        };
        for (a, b, c) in triples {
            let ab = self.mul_basis(a, b);
            let left = self.mul_sparse_right(&ab, c);
            let bc = self.mul_basis(b, c);
            let right = self.mul_sparse_left(a, &bc);
            if left != right {
                return Err(AlgebraError::NotAssociative(a, b, c));
            }
        }
        Ok(())
    }

    fn mul_sparse_right(&self, v: &SparseVec, c: usize) -> SparseVec {
        sparse_collect(
            v.iter()
                .flat_map(|(i, x)| self.mul_basis(*i, c).into_iter().map(move |(k, y)| (k, x * &y)))
                .collect(),
        )
    }

    fn mul_sparse_left(&self, a: usize, v: &SparseVec) -> SparseVec {
        sparse_collect(
            v.iter()
                .flat_map(|(i, x)| self.mul_basis(a, *i).into_iter().map(move |(k, y)| (k, x * &y)))
                .collect(),
        )
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    /// Number of vertices, i.e. of simples and of indecomposable projectives.
    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[BasisPath] {
        &self.basis
    }

    /// Smallest `L` with every path of length `L` zero.
    pub fn loewy_length(&self) -> usize {
        self.loewy
    }

    /// Global basis indices of `e_s A e_t`.
    pub fn block(&self, s: usize, t: usize) -> &[usize] {
        &self.blocks[s][t]
    }

    pub fn block_dim(&self, s: usize, t: usize) -> usize {
        self.blocks[s][t].len()
    }

    /// Position of a basis element inside its block.
    pub fn local_index(&self, global: usize) -> usize {
        self.local[global]
    }

    /// Global index of the idempotent `e_v`.
    pub fn idempotent(&self, v: usize) -> usize {
        v
    }

    /// Global basis index of an arrow.
    pub fn arrow_basis(&self, a: usize) -> usize {
        self.arrow_basis[a]
    }

    /// Product of two basis elements in global coordinates.
    pub fn mul_basis(&self, i: usize, j: usize) -> SparseVec {
        self.products.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Basis of `Hom(P_i, P_j) = e_j A e_i`, as global basis indices.
    pub fn hom_space(&self, i: usize, j: usize) -> &[usize] {
        self.block(j, i)
    }

    /// Product of `a ∈ e_w A e_v` and `b ∈ e_v A e_u` in block coordinates.
    pub fn block_mul(&self, w: usize, v: usize, u: usize, a: &[Rational], b: &[Rational]) -> Vec<Rational> {
        let n = self.num_vertices();
        let mut out = vec![Rational::ZERO; self.blocks[w][u].len()];
        if a.iter().all(Rational::is_zero) || b.iter().all(Rational::is_zero) {
            return out;
        }
        for (i, j, k, c) in &self.block_mul[(w * n + v) * n + u] {
            let (x, y) = (&a[*i as usize], &b[*j as usize]);
            if x.is_zero() || y.is_zero() {
                continue;
            }
            out[*k as usize] += &(&(x * y) * c);
        }
        out
    }

    /// Structure constants for one block triple: `(i, j, k, c)` means
    /// `basis_i * basis_j` has coefficient `c` on `basis_k` (local indices).
    pub fn block_table(&self, w: usize, v: usize, u: usize) -> &[(u32, u32, u32, Rational)] {
        let n = self.num_vertices();
        &self.block_mul[(w * n + v) * n + u]
    }

    /// Pretty form of a basis path, `e_1` for idempotents.
    pub fn path_name(&self, i: usize) -> String {
        let p = &self.basis[i];
        if p.arrows.is_empty() {
            format!("e_{}", self.quiver.vertices[p.source])
        } else {
            p.arrows.iter().map(|a| self.quiver.arrows[*a].name.as_str()).collect::<Vec<_>>().join("")
        }
    }

    /// Block element of a single basis path, as block coordinates.
    pub fn unit_vector(&self, global: usize) -> Vec<Rational> {
        let p = &self.basis[global];
        let mut v = vec![Rational::ZERO; self.block_dim(p.source, p.target)];
        v[self.local[global]] = Rational::ONE;
        v
    }

    /// Inverse of a unit `a ∈ e_v A e_v` (nonzero coefficient on `e_v`).
    pub fn local_inverse(&self, v: usize, a: &[Rational]) -> Option<Vec<Rational>> {
        let lam = &a[0];
        if lam.is_zero() {
            return None;
        }
        // a = lam (e + r) with r radical; (e + r)^{-1} = sum (-r)^k.
        let inv_lam = lam.recip();
        let mut neg_r: Vec<Rational> = a.iter().map(|x| -(x * &inv_lam)).collect();
        neg_r[0] = Rational::ZERO;
        let mut sum = vec![Rational::ZERO; a.len()];
        sum[0] = Rational::ONE;
        let mut term = sum.clone();
        for _ in 0..self.loewy {
            term = self.block_mul(v, v, v, &term, &neg_r);
            if term.iter().all(Rational::is_zero) {
                break;
            }
            for (s, t) in sum.iter_mut().zip(&term) {
                *s += t;
            }
        }
        Some(sum.iter().map(|x| x * &inv_lam).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(vs: &[&str], arrows: &[(&str, &str, &str)]) -> Quiver {
        Quiver::new(
            vs.iter().map(|s| s.to_string()).collect(),
            arrows
                .iter()
                .map(|(a, s, t)| (a.to_string(), s.to_string(), t.to_string()))
                .collect(),
        )
        .unwrap()
    }

    fn one() -> Rational {
        Rational::ONE
    }

    #[test]
    fn a2_path_algebra() {
        let alg = BoundQuiverAlgebra::build(q(&["1", "2"], &[("a", "1", "2")]), vec![], None).unwrap();
        assert_eq!(alg.dim(), 3);
        assert_eq!(alg.hom_space(1, 0).len(), 1);
        assert_eq!(alg.hom_space(0, 1).len(), 0);
        assert_eq!(alg.loewy_length(), 2);
    }

    #[test]
    fn a3_with_zero_relation() {
        let quiver = q(&["1", "2", "3"], &[("x", "1", "2"), ("y", "2", "3")]);
        let rel = Relation::from_names(&quiver, &[(one(), vec!["x", "y"])]).unwrap();
        let alg = BoundQuiverAlgebra::build(quiver, vec![rel], None).unwrap();
        assert_eq!(alg.dim(), 5);
        let names: Vec<String> = (0..5).map(|i| alg.path_name(i)).collect();
        assert_eq!(names, ["e_1", "e_2", "e_3", "x", "y"]);
        // Hom(P_2, P_1) = e_1 A e_2 holds x.
        assert_eq!(alg.hom_space(1, 0), &[3]);
    }

    #[test]
    fn symmetric_local_algebra_has_dim_8() {
        let quiver = q(
            &["1", "2"],
            &[("x1", "1", "2"), ("y1", "1", "2"), ("x2", "2", "1"), ("y2", "2", "1")],
        );
        let m = -one();
        let rels = [
            vec![(one(), vec!["x1", "y2"]), (m.clone(), vec!["y1", "x2"])],
            vec![(one(), vec!["x2", "y1"]), (m.clone(), vec!["y2", "x1"])],
            vec![(one(), vec!["x1", "x2"])],
            vec![(one(), vec!["x2", "x1"])],
            vec![(one(), vec!["y1", "y2"])],
            vec![(one(), vec!["y2", "y1"])],
        ];
        let rels = rels.iter().map(|r| Relation::from_names(&quiver, r).unwrap()).collect();
        let alg = BoundQuiverAlgebra::build(quiver, rels, None).unwrap();
        assert_eq!(alg.dim(), 8);
        assert_eq!(alg.loewy_length(), 3);
        // dim A = sum of dim e_i A e_j
        let total: usize = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| alg.block_dim(i, j)).sum();
        assert_eq!(total, 8);
    }

    #[test]
    fn rejects_bad_relations() {
        let quiver = q(&["1", "2"], &[("a", "1", "2")]);
        assert!(matches!(
            Relation::from_names(&quiver, &[(one(), vec!["b"])]),
            Err(AlgebraError::InvalidRelation(_))
        ));
        let short = Relation::from_names(&quiver, &[(one(), vec!["a"])]).unwrap();
        assert!(matches!(
            BoundQuiverAlgebra::build(quiver.clone(), vec![short], None),
            Err(AlgebraError::InvalidRelation(_))
        ));
        assert!(Quiver::new(vec!["1".into(), "1".into()], vec![]).is_err());
    }

    #[test]
    fn free_loop_is_not_finite() {
        let quiver = q(&["1"], &[("a", "1", "1")]);
        assert_eq!(
            BoundQuiverAlgebra::build(quiver, vec![], Some(6)).unwrap_err(),
            AlgebraError::NotFiniteDimensional(6)
        );
    }

    #[test]
    fn loop_with_power_relation() {
        let quiver = q(&["1"], &[("a", "1", "1")]);
        let rel = Relation::from_names(&quiver, &[(one(), vec!["a", "a", "a"])]).unwrap();
        let alg = BoundQuiverAlgebra::build(quiver, vec![rel], None).unwrap();
        assert_eq!(alg.dim(), 3);
        // (e - a)^{-1} = e + a + a^2
        let inv = alg.local_inverse(0, &[one(), -one(), Rational::ZERO]).unwrap();
        assert_eq!(inv, vec![one(), one(), one()]);
    }
}

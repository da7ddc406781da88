//! Finite dimensional right modules as quiver representations.
//!
//! The arrow `α: s → t` acts by a `dims[t] × dims[s]` matrix sending
//! `m ∈ M_s` to `m·α ∈ M_t`, so a path acts by the product of its arrow
//! matrices taken right to left.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{BoundQuiverAlgebra, FiniteAlgebra, SemisimpleError};
use crate::linalg::sparse::{sparse_from_dense, sparse_to_dense, Echelon, SparseVec};
use crate::linalg::{RatMatrix, Rational};
use crate::proj::{offsets, ProjMap};
use crate::silt::TwoTermComplex;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RepError {
    #[error("arrow {0} has a matrix of the wrong shape")]
    Shape(String),
    #[error("relation {0} does not vanish on the representation")]
    RelationFails(usize),
    #[error("differential has an invertible entry at ({0}, {1})")]
    NotMinimal(usize, usize),
    #[error(transparent)]
    Semisimple(#[from] SemisimpleError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    dims: Vec<usize>,
    maps: Vec<RatMatrix>,
}

/// A module homomorphism, one matrix per vertex.
pub type RepMap = Vec<RatMatrix>;

impl Representation {
    pub fn new(alg: &BoundQuiverAlgebra, dims: Vec<usize>, maps: Vec<RatMatrix>) -> Result<Self, RepError> {
        let q = alg.quiver();
        if maps.len() != q.arrows().len() || dims.len() != q.num_vertices() {
            return Err(RepError::Shape("(count)".into()));
        }
        for (a, m) in q.arrows().iter().zip(&maps) {
            if m.rows() != dims[a.target] || m.cols() != dims[a.source] {
                return Err(RepError::Shape(a.name.clone()));
            }
        }
        let rep = Representation { dims, maps };
        for (i, rel) in alg.relations().iter().enumerate() {
            let (s, t) = {
                let p = &rel.terms[0].1;
                (q.arrows()[p[0]].source, q.arrows()[p[p.len() - 1]].target)
            };
            let mut acc = RatMatrix::zeros(rep.dims[t], rep.dims[s]);
            for (c, p) in &rel.terms {
                acc = acc.add(&rep.path_matrix(s, p).scale(c));
            }
            if !acc.is_zero() {
                return Err(RepError::RelationFails(i));
            }
        }
        Ok(rep)
    }

    pub fn zero(alg: &BoundQuiverAlgebra) -> Self {
        Representation {
            dims: vec![0; alg.num_vertices()],
            maps: alg.quiver().arrows().iter().map(|_| RatMatrix::zeros(0, 0)).collect(),
        }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn map(&self, arrow: usize) -> &RatMatrix {
        &self.maps[arrow]
    }

    /// Matrix of a path starting at `s`.
    pub fn path_matrix(&self, s: usize, path: &[usize]) -> RatMatrix {
        let mut m = RatMatrix::identity(self.dims[s]);
        for &a in path {
            m = self.maps[a].mul(&m);
        }
        m
    }

    fn act_basis(&self, alg: &BoundQuiverAlgebra, v: &[Rational], basis_elt: usize) -> Vec<Rational> {
        let p = &alg.basis()[basis_elt];
        let mut out = v.to_vec();
        for &a in &p.arrows {
            out = self.maps[a].mul_vec(&out);
        }
        out
    }

    pub fn simple(alg: &BoundQuiverAlgebra, i: usize) -> Self {
        let mut dims = vec![0; alg.num_vertices()];
        dims[i] = 1;
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .map(|a| RatMatrix::zeros(dims[a.target], dims[a.source]))
            .collect();
        Representation { dims, maps }
    }

    /// `⊕ P_{tops[c]}`, with vertex spaces in [`offsets`] coordinates.
    pub fn projective_sum(alg: &BoundQuiverAlgebra, tops: &[usize]) -> Self {
        let n = alg.num_vertices();
        let dims: Vec<usize> = (0..n).map(|j| offsets(alg, tops, j)[tops.len()]).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let (j, k) = (a.source, a.target);
                let alpha = alg.unit_vector(alg.arrow_basis(ai));
                let (oj, ok) = (offsets(alg, tops, j), offsets(alg, tops, k));
                let mut m = RatMatrix::zeros(dims[k], dims[j]);
                for (c, &u) in tops.iter().enumerate() {
                    for x in 0..alg.block_dim(u, j) {
                        let mut xv = vec![Rational::ZERO; alg.block_dim(u, j)];
                        xv[x] = Rational::ONE;
                        for (y, val) in alg.block_mul(u, j, k, &xv, &alpha).into_iter().enumerate() {
                            m[(ok[c] + y, oj[c] + x)] = val;
                        }
                    }
                }
                m
            })
            .collect();
        Representation { dims, maps }
    }

    pub fn projective(alg: &BoundQuiverAlgebra, i: usize) -> Self {
        Self::projective_sum(alg, &[i])
    }

    /// `⊕ I_{socs[c]}` with `I_i = D(A e_i)`; at vertex `j` the dual basis of
    /// `e_j A e_i`.
    pub fn injective_sum(alg: &BoundQuiverAlgebra, socs: &[usize]) -> Self {
        let n = alg.num_vertices();
        let off = |j: usize| injective_offsets(alg, socs, j);
        let dims: Vec<usize> = (0..n).map(|j| off(j)[socs.len()]).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let (j, k) = (a.source, a.target);
                let alpha = alg.unit_vector(alg.arrow_basis(ai));
                let (oj, ok) = (off(j), off(k));
                let mut m = RatMatrix::zeros(dims[k], dims[j]);
                for (c, &i) in socs.iter().enumerate() {
                    // (φ_m · α)(y) = φ_m(α y)
                    for y in 0..alg.block_dim(k, i) {
                        let mut yv = vec![Rational::ZERO; alg.block_dim(k, i)];
                        yv[y] = Rational::ONE;
                        for (mm, val) in alg.block_mul(j, k, i, &alpha, &yv).into_iter().enumerate() {
                            m[(ok[c] + y, oj[c] + mm)] = val;
                        }
                    }
                }
                m
            })
            .collect();
        Representation { dims, maps }
    }

    pub fn injective(alg: &BoundQuiverAlgebra, i: usize) -> Self {
        Self::injective_sum(alg, &[i])
    }

    pub fn direct_sum(&self, o: &Representation) -> Self {
        let dims = self.dims.iter().zip(&o.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&o.maps)
            .map(|(a, b)| {
                let mut m = RatMatrix::zeros(a.rows() + b.rows(), a.cols() + b.cols());
                for i in 0..a.rows() {
                    for j in 0..a.cols() {
                        m[(i, j)] = a[(i, j)].clone();
                    }
                }
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        m[(a.rows() + i, a.cols() + j)] = b[(i, j)].clone();
                    }
                }
                m
            })
            .collect();
        Representation { dims, maps }
    }

    /// Submodule spanned at each vertex by the given independent vectors,
    /// which must form an invariant family.
    pub fn subrep(&self, alg: &BoundQuiverAlgebra, bases: &[Vec<Vec<Rational>>]) -> Self {
        let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let target = RatMatrix::from_columns(self.dims[a.target], &bases[a.target]);
                let mut m = RatMatrix::zeros(dims[a.target], dims[a.source]);
                for (col, b) in bases[a.source].iter().enumerate() {
                    let img = self.maps[ai].mul_vec(b);
                    let (x, _) = target.solve(&img).expect("subspaces are not invariant");
                    for (row, v) in x.into_iter().enumerate() {
                        m[(row, col)] = v;
                    }
                }
                m
            })
            .collect();
        Representation { dims, maps }
    }

    /// Quotient by an invariant family of subspaces, together with the
    /// projection matrices.
    pub fn quotient(&self, alg: &BoundQuiverAlgebra, sub: &[Vec<Vec<Rational>>]) -> (Self, RepMap) {
        let n = self.dims.len();
        let echs: Vec<Echelon> = (0..n)
            .map(|j| Echelon::from_rows(self.dims[j], sub[j].iter().map(|v| sparse_from_dense(v))))
            .collect();
        let free: Vec<Vec<usize>> = echs.iter().map(Echelon::free_columns).collect();
        let proj: RepMap = (0..n)
            .map(|j| {
                let mut p = RatMatrix::zeros(free[j].len(), self.dims[j]);
                for c in 0..self.dims[j] {
                    let r = sparse_to_dense(&echs[j].reduce(&vec![(c, Rational::ONE)]), self.dims[j]);
                    for (i, f) in free[j].iter().enumerate() {
                        p[(i, c)] = r[*f].clone();
                    }
                }
                p
            })
            .collect();
        let dims: Vec<usize> = free.iter().map(Vec::len).collect();
        let maps = alg
            .quiver()
            .arrows()
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                let mut m = RatMatrix::zeros(dims[a.target], dims[a.source]);
                for (col, f) in free[a.source].iter().enumerate() {
                    let mut e = vec![Rational::ZERO; self.dims[a.source]];
                    e[*f] = Rational::ONE;
                    let img = proj[a.target].mul_vec(&self.maps[ai].mul_vec(&e));
                    for (row, v) in img.into_iter().enumerate() {
                        m[(row, col)] = v;
                    }
                }
                m
            })
            .collect();
        (Representation { dims, maps }, proj)
    }

    /// `rad M` at vertex `j`: the sum of the images of arrows ending there.
    pub fn radical_at(&self, alg: &BoundQuiverAlgebra, j: usize) -> Echelon {
        let mut e = Echelon::new(self.dims[j]);
        for (ai, a) in alg.quiver().arrows().iter().enumerate() {
            if a.target != j {
                continue;
            }
            for c in 0..self.dims[a.source] {
                e.insert(sparse_from_dense(&self.maps[ai].column(c)));
            }
        }
        e
    }

    /// Vectors whose classes form a basis of `top M = M / rad M`, as
    /// `(vertex, vector)`.
    pub fn top_generators(&self, alg: &BoundQuiverAlgebra) -> Vec<(usize, Vec<Rational>)> {
        let mut out = Vec::new();
        for j in 0..self.dims.len() {
            for f in self.radical_at(alg, j).free_columns() {
                let mut e = vec![Rational::ZERO; self.dims[j]];
                e[f] = Rational::ONE;
                out.push((j, e));
            }
        }
        out
    }

    /// Block-diagonal matrix of an endomorphism, used for algebra structure.
    fn flatten_map(&self, f: &RepMap) -> RatMatrix {
        let d = self.dim();
        let mut m = RatMatrix::zeros(d, d);
        let mut o = 0;
        for (j, fj) in f.iter().enumerate() {
            for r in 0..self.dims[j] {
                for c in 0..self.dims[j] {
                    m[(o + r, o + c)] = fj[(r, c)].clone();
                }
            }
            o += self.dims[j];
        }
        m
    }
}

fn injective_offsets(alg: &BoundQuiverAlgebra, socs: &[usize], j: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(socs.len() + 1);
    let mut acc = 0;
    for &i in socs {
        out.push(acc);
        acc += alg.block_dim(j, i);
    }
    out.push(acc);
    out
}

/// Basis of `Hom_A(M, N)`, from one kernel computation over all vertex
/// matrices at once.
pub fn hom_rep(alg: &BoundQuiverAlgebra, m: &Representation, n: &Representation) -> Vec<RepMap> {
    let nv = m.dims.len();
    let mut off = vec![0; nv + 1];
    for j in 0..nv {
        off[j + 1] = off[j] + n.dims[j] * m.dims[j];
    }
    let var = |j: usize, r: usize, c: usize| off[j] + r * m.dims[j] + c;
    let total = off[nv];
    let mut ech = Echelon::new(total);
    for (ai, a) in alg.quiver().arrows().iter().enumerate() {
        let (j, k) = (a.source, a.target);
        let (ma, na) = (&m.maps[ai], &n.maps[ai]);
        // (N_α F_j - F_k M_α)[r][c] = 0
        for r in 0..n.dims[k] {
            for c in 0..m.dims[j] {
                let mut row: SparseVec = Vec::new();
                for l in 0..n.dims[j] {
                    if !na[(r, l)].is_zero() {
                        row.push((var(j, l, c), na[(r, l)].clone()));
                    }
                }
                for l in 0..m.dims[k] {
                    if !ma[(l, c)].is_zero() {
                        row.push((var(k, r, l), -&ma[(l, c)]));
                    }
                }
                let row = crate::linalg::sparse::sparse_collect(row);
                if !row.is_empty() {
                    ech.insert(row);
                }
            }
        }
    }
    ech.kernel()
        .into_iter()
        .map(|v| {
            let v = sparse_to_dense(&v, total);
            (0..nv)
                .map(|j| {
                    let mut f = RatMatrix::zeros(n.dims[j], m.dims[j]);
                    for r in 0..n.dims[j] {
                        for c in 0..m.dims[j] {
                            f[(r, c)] = v[var(j, r, c)].clone();
                        }
                    }
                    f
                })
                .collect()
        })
        .collect()
}

/// A minimal projective presentation `P1 → P0 → M → 0`.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub d: ProjMap,
    /// Images in `M` of the generators of `P0`.
    pub generators: Vec<(usize, Vec<Rational>)>,
}

/// Projective cover followed by the projective cover of its kernel.
pub fn min_projective_presentation(alg: &BoundQuiverAlgebra, m: &Representation) -> Presentation {
    let gens = m.top_generators(alg);
    let p0: Vec<usize> = gens.iter().map(|(v, _)| *v).collect();
    let p0rep = Representation::projective_sum(alg, &p0);
    let nv = alg.num_vertices();
    // π at vertex j sends the basis path x of the c-th summand to m_c · x.
    let kernels: Vec<Vec<Vec<Rational>>> = (0..nv)
        .map(|j| {
            let mut cols = Vec::new();
            for (u, g) in &gens {
                for &x in alg.block(*u, j) {
                    cols.push(m.act_basis(alg, g, x));
                }
            }
            RatMatrix::from_columns(m.dims[j], &cols).kernel_basis()
        })
        .collect();
    let k = p0rep.subrep(alg, &kernels);
    let kgens = k.top_generators(alg);
    let p1: Vec<usize> = kgens.iter().map(|(v, _)| *v).collect();
    let mut d = ProjMap::zero(alg, &p1, &p0);
    for (r, (u, coeffs)) in kgens.iter().enumerate() {
        let mut amb = vec![Rational::ZERO; p0rep.dims[*u]];
        for (b, x) in kernels[*u].iter().zip(coeffs) {
            for (a, y) in amb.iter_mut().zip(b) {
                *a += &(x * y);
            }
        }
        let off = offsets(alg, &p0, *u);
        for c in 0..p0.len() {
            d.ent[r][c] = amb[off[c]..off[c + 1]].to_vec();
        }
    }
    debug_assert!(d.unit_entry().is_none(), "kernel of a projective cover lies in the radical");
    Presentation { d, generators: gens }
}

/// Cokernel of a map of projectives, as a representation.
pub fn cokernel(alg: &BoundQuiverAlgebra, d: &ProjMap) -> Representation {
    let p0 = Representation::projective_sum(alg, &d.dst);
    let images: Vec<Vec<Vec<Rational>>> = (0..alg.num_vertices())
        .map(|j| {
            let m = d.at_vertex(alg, j);
            (0..m.cols()).map(|c| m.column(c)).collect()
        })
        .collect();
    p0.quotient(alg, &images).0
}

/// `ν(d): ⊕ I_{src} → ⊕ I_{dst}` at vertex `j`.
fn nakayama_at(alg: &BoundQuiverAlgebra, d: &ProjMap, j: usize) -> RatMatrix {
    let so = injective_offsets(alg, &d.src, j);
    let to = injective_offsets(alg, &d.dst, j);
    let mut m = RatMatrix::zeros(to[d.dst.len()], so[d.src.len()]);
    for (r, &u) in d.src.iter().enumerate() {
        for (c, &v) in d.dst.iter().enumerate() {
            let b = &d.ent[r][c];
            if b.iter().all(Rational::is_zero) {
                continue;
            }
            // entry (y, y') = coefficient of y' in y·b, y ∈ e_j A e_v, y' ∈ e_j A e_u
            for y in 0..alg.block_dim(j, v) {
                let mut yv = vec![Rational::ZERO; alg.block_dim(j, v)];
                yv[y] = Rational::ONE;
                for (yp, val) in alg.block_mul(j, v, u, &yv, b).into_iter().enumerate() {
                    m[(to[c] + y, so[r] + yp)] = val;
                }
            }
        }
    }
    m
}

/// Auslander–Reiten translate, as the kernel of `ν P1 → ν P0` for the
/// minimal presentation.
pub fn tau(alg: &BoundQuiverAlgebra, m: &Representation) -> Representation {
    if m.is_zero() {
        return Representation::zero(alg);
    }
    let pres = min_projective_presentation(alg, m);
    if pres.d.src.is_empty() {
        return Representation::zero(alg);
    }
    let inj = Representation::injective_sum(alg, &pres.d.src);
    let kernels: Vec<Vec<Vec<Rational>>> =
        (0..alg.num_vertices()).map(|j| nakayama_at(alg, &pres.d, j).kernel_basis()).collect();
    inj.subrep(alg, &kernels)
}

/// Trace of `M` in `N` has full dimension at every vertex.
pub fn fac_contains(alg: &BoundQuiverAlgebra, m: &Representation, n: &Representation) -> bool {
    let homs = hom_rep(alg, m, n);
    (0..n.dims.len()).all(|j| {
        let mut e = Echelon::new(n.dims[j]);
        for f in &homs {
            for c in 0..f[j].cols() {
                e.insert(sparse_from_dense(&f[j].column(c)));
                if e.rank() == n.dims[j] {
                    return true;
                }
            }
        }
        e.rank() == n.dims[j]
    })
}

/// Per-vertex trace subspaces (as echelon row bases).
pub fn trace(alg: &BoundQuiverAlgebra, m: &Representation, n: &Representation) -> Vec<Vec<Vec<Rational>>> {
    let homs = hom_rep(alg, m, n);
    (0..n.dims.len())
        .map(|j| {
            let mut e = Echelon::new(n.dims[j]);
            for f in &homs {
                for c in 0..f[j].cols() {
                    e.insert(sparse_from_dense(&f[j].column(c)));
                }
            }
            e.dense_rows()
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauRigidPair {
    pub module: Representation,
    /// Vertices `u` of the summands `P_u` of `P`, with repetition.
    pub support: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RigidityWitness {
    /// A nonzero map `M → τM`.
    HomToTau(RepMap),
    /// `Hom(P_u, M) = M e_u` is nonzero.
    Support(usize),
}

/// `(ok, witness)`; the witness is present exactly when the check fails.
pub fn is_tau_rigid_pair(
    alg: &BoundQuiverAlgebra,
    m: &Representation,
    support: &[usize],
) -> (bool, Option<RigidityWitness>) {
    if let Some(&u) = support.iter().find(|&&u| m.dims[u] > 0) {
        return (false, Some(RigidityWitness::Support(u)));
    }
    let t = tau(alg, m);
    if let Some(f) = hom_rep(alg, m, &t).into_iter().next() {
        return (false, Some(RigidityWitness::HomToTau(f)));
    }
    (true, None)
}

/// `H⁰` of a minimal two-term complex, together with the projectives
/// appearing as shifted summands.
pub fn h0_pair(alg: &BoundQuiverAlgebra, c: &TwoTermComplex) -> Result<TauRigidPair, RepError> {
    if let Some((r, col)) = c.d.unit_entry() {
        return Err(RepError::NotMinimal(r, col));
    }
    let module = cokernel(alg, &c.d);
    let mut support = Vec::new();
    for u in 0..alg.num_vertices() {
        let copies: Vec<usize> = (0..c.d.src.len()).filter(|&r| c.d.src[r] == u).collect();
        if copies.is_empty() {
            continue;
        }
        // A kernel vector with a nonzero e_u coordinate generates a copy of
        // P_u on which the differential vanishes.
        let off = offsets(alg, &c.d.src, u);
        let proj: Vec<usize> = copies.iter().map(|&r| off[r]).collect();
        let ker = c.d.at_vertex(alg, u).kernel_basis();
        let rows: Vec<Vec<Rational>> = ker.iter().map(|v| proj.iter().map(|&i| v[i].clone()).collect()).collect();
        let rank = if rows.is_empty() { 0 } else { RatMatrix::from_rows(&rows).rank() };
        support.extend(std::iter::repeat_n(u, rank));
    }
    Ok(TauRigidPair { module, support })
}

fn endo_algebra(alg: &BoundQuiverAlgebra, m: &Representation) -> Result<FiniteAlgebra, SemisimpleError> {
    let basis: Vec<RatMatrix> = hom_rep(alg, m, m).iter().map(|f| m.flatten_map(f)).collect();
    FiniteAlgebra::from_matrices(&basis)
}

/// Number of pairwise non-isomorphic indecomposable summands, read off as
/// the number of simple factors of `End(M)/rad`.
pub fn count_indec_summands(alg: &BoundQuiverAlgebra, m: &Representation, seed: u64) -> Result<usize, RepError> {
    if m.is_zero() {
        return Ok(0);
    }
    Ok(endo_algebra(alg, m)?.count_simple_components(seed)?)
}

/// `End(M)/rad` is one dimensional.
pub fn is_indecomposable(alg: &BoundQuiverAlgebra, m: &Representation) -> bool {
    if m.is_zero() {
        return false;
    }
    match endo_algebra(alg, m) {
        Ok(e) => e.dim() - e.radical().len() == 1,
        Err(_) => false,
    }
}

/// Looks for an invertible element of `Hom(M, N)` among random
/// combinations of a basis. A generic element is invertible when any is.
pub fn is_isomorphic(alg: &BoundQuiverAlgebra, m: &Representation, n: &Representation, seed: u64) -> bool {
    if m.dims != n.dims {
        return false;
    }
    if m.is_zero() {
        return true;
    }
    let homs = hom_rep(alg, m, n);
    if homs.is_empty() {
        return false;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..4 {
        let coeffs: Vec<Rational> = homs.iter().map(|_| Rational::from_int(rng.gen_range(-1000..=1000))).collect();
        let ok = (0..m.dims.len()).all(|j| {
            let mut f = RatMatrix::zeros(n.dims[j], m.dims[j]);
            for (h, c) in homs.iter().zip(&coeffs) {
                f = f.add(&h[j].scale(c));
            }
            f.rank() == m.dims[j]
        });
        if ok {
            return true;
        }
    }
    false
}

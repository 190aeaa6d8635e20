//! Right modules over a path algebra, stored as quiver representations.
//!
//! For an arrow `a: i -> j` the right action of `a` is a linear map
//! `M_j -> M_i` (from the target space to the source space). With this
//! convention `Hom(P_i, M) ≅ M_i` for the projective `P_i = e_i A`.

mod abelian;
mod hom;
mod projective;

use std::fmt;
use std::sync::Arc;

use crate::linalg::{Rat, RatMatrix};
use crate::path_algebra::{Path, PathAlgebra};

pub use abelian::{direct_sum, from_sum, into_sum, Biproduct, Cokernel, Image, Kernel};
pub use hom::hom_space;
pub use projective::{projective_cover, ProjSum};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("expected {expected} dimensions, got {got}")]
    DimCount { expected: usize, got: usize },
    #[error("arrow `{arrow}`: expected a {rows}x{cols} matrix, got {got_rows}x{got_cols}")]
    ArrowShape {
        arrow: String,
        rows: usize,
        cols: usize,
        got_rows: usize,
        got_cols: usize,
    },
    #[error("relation {0} does not vanish on the representation")]
    RelationViolated(usize),
    #[error("modules live over different algebras")]
    AlgebraMismatch,
    #[error("vertex {0}: block has the wrong shape")]
    BlockShape(usize),
    #[error("map is not a module homomorphism (arrow `{0}` square does not commute)")]
    NotNatural(String),
    #[error("maps are not composable")]
    NotComposable,
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
}

struct RepData {
    alg: Arc<PathAlgebra>,
    dims: Vec<usize>,
    arrows: Vec<RatMatrix>,
}

/// A finite-dimensional right module: one vector space per vertex and one
/// matrix per arrow. Cheap to clone.
#[derive(Clone)]
pub struct Rep(Arc<RepData>);

impl Rep {
    /// Builds a representation, checking matrix shapes and relations.
    pub fn new(
        alg: &Arc<PathAlgebra>,
        dims: Vec<usize>,
        arrows: Vec<RatMatrix>,
    ) -> Result<Rep, ModuleError> {
        let rep = Rep::new_unchecked(alg, dims, arrows)?;
        for (k, rel) in alg.relations().iter().enumerate() {
            let mut total: Option<RatMatrix> = None;
            for (c, names) in &rel.terms {
                let mut idx = Vec::new();
                for n in names {
                    idx.push(
                        alg.quiver()
                            .arrow_index(n)
                            .ok_or_else(|| ModuleError::UnknownArrow(n.clone()))?,
                    );
                }
                let m = rep.act_arrows(&idx).scale(c);
                total = Some(match total {
                    None => m,
                    Some(t) => t.add(&m),
                });
            }
            if total.is_some_and(|t| !t.is_zero()) {
                return Err(ModuleError::RelationViolated(k));
            }
        }
        Ok(rep)
    }

    /// Shape checks only; callers constructing submodules and quotients of
    /// valid modules use this to skip the relation check.
    pub(crate) fn new_unchecked(
        alg: &Arc<PathAlgebra>,
        dims: Vec<usize>,
        arrows: Vec<RatMatrix>,
    ) -> Result<Rep, ModuleError> {
        let q = alg.quiver();
        if dims.len() != q.vertex_count {
            return Err(ModuleError::DimCount {
                expected: q.vertex_count,
                got: dims.len(),
            });
        }
        if arrows.len() != q.arrows.len() {
            return Err(ModuleError::DimCount {
                expected: q.arrows.len(),
                got: arrows.len(),
            });
        }
        for (a, m) in q.arrows.iter().zip(&arrows) {
            let (rows, cols) = (dims[a.source - 1], dims[a.target - 1]);
            if m.shape() != (rows, cols) {
                return Err(ModuleError::ArrowShape {
                    arrow: a.name.clone(),
                    rows,
                    cols,
                    got_rows: m.rows(),
                    got_cols: m.cols(),
                });
            }
        }
        Ok(Rep(Arc::new(RepData {
            alg: Arc::clone(alg),
            dims,
            arrows,
        })))
    }

    pub fn zero(alg: &Arc<PathAlgebra>) -> Rep {
        let n = alg.vertex_count();
        Rep::new_unchecked(
            alg,
            vec![0; n],
            alg.quiver().arrows.iter().map(|_| RatMatrix::zeros(0, 0)).collect(),
        )
        .expect("zero module is well-formed")
    }

    /// The simple module at vertex `i`.
    pub fn simple(alg: &Arc<PathAlgebra>, i: usize) -> Rep {
        alg.check_vertex(i).expect("vertex in range");
        let dims: Vec<usize> = (1..=alg.vertex_count()).map(|v| usize::from(v == i)).collect();
        let arrows = alg
            .quiver()
            .arrows
            .iter()
            .map(|a| RatMatrix::zeros(dims[a.source - 1], dims[a.target - 1]))
            .collect();
        Rep::new_unchecked(alg, dims, arrows).expect("simple module is well-formed")
    }

    /// The indecomposable projective `P_i = e_i A`; at vertex `j` its basis is
    /// the basis paths from `j` to `i`.
    pub fn projective(alg: &Arc<PathAlgebra>, i: usize) -> Rep {
        projective::projective(alg, i)
    }

    pub fn algebra(&self) -> &Arc<PathAlgebra> {
        &self.0.alg
    }

    pub fn same_algebra(&self, other: &Rep) -> bool {
        Arc::ptr_eq(&self.0.alg, &other.0.alg) || *self.0.alg == *other.0.alg
    }

    pub fn dims(&self) -> &[usize] {
        &self.0.dims
    }

    /// Dimension at vertex `v` (1-based).
    pub fn dim_at(&self, v: usize) -> usize {
        self.0.dims[v - 1]
    }

    pub fn total_dim(&self) -> usize {
        self.0.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn arrow_maps(&self) -> &[RatMatrix] {
        &self.0.arrows
    }

    pub fn arrow_map(&self, a: usize) -> &RatMatrix {
        &self.0.arrows[a]
    }

    /// Action of a composable arrow sequence (traversal order) as a matrix
    /// from the space at its target to the space at its source.
    pub fn act_arrows(&self, arrows: &[usize]) -> RatMatrix {
        match arrows.split_first() {
            None => panic!("act_arrows needs at least one arrow"),
            Some((&first, rest)) => {
                let mut m = self.0.arrows[first].clone();
                for &a in rest {
                    m = m.mul(&self.0.arrows[a]);
                }
                m
            }
        }
    }

    /// Action of a path (identity for a trivial path).
    pub fn act_path(&self, p: &Path) -> RatMatrix {
        if p.is_trivial() {
            RatMatrix::identity(self.dim_at(p.source))
        } else {
            self.act_arrows(&p.arrows)
        }
    }

    /// Structural equality: same algebra, dimensions and matrices.
    pub fn same_as(&self, other: &Rep) -> bool {
        self.same_algebra(other) && self.0.dims == other.0.dims && self.0.arrows == other.0.arrows
    }
}

impl PartialEq for Rep {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Rep {}

impl fmt::Debug for Rep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Rep{:?}", self.0.dims)
    }
}

/// A module homomorphism given by one block per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct RepMap {
    source: Rep,
    target: Rep,
    blocks: Vec<RatMatrix>,
}

impl RepMap {
    /// Checks block shapes and commutativity with every arrow.
    pub fn new(source: &Rep, target: &Rep, blocks: Vec<RatMatrix>) -> Result<RepMap, ModuleError> {
        let f = RepMap::new_unchecked(source, target, blocks)?;
        if let Some(a) = f.naturality_failure() {
            return Err(ModuleError::NotNatural(a));
        }
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: &Rep,
        target: &Rep,
        blocks: Vec<RatMatrix>,
    ) -> Result<RepMap, ModuleError> {
        if !source.same_algebra(target) {
            return Err(ModuleError::AlgebraMismatch);
        }
        if blocks.len() != source.dims().len() {
            return Err(ModuleError::DimCount {
                expected: source.dims().len(),
                got: blocks.len(),
            });
        }
        for (v, b) in blocks.iter().enumerate() {
            if b.shape() != (target.dims()[v], source.dims()[v]) {
                return Err(ModuleError::BlockShape(v + 1));
            }
        }
        Ok(RepMap {
            source: source.clone(),
            target: target.clone(),
            blocks,
        })
    }

    /// Name of the first arrow whose square fails to commute.
    pub fn naturality_failure(&self) -> Option<String> {
        let q = self.source.algebra().quiver();
        for (ai, a) in q.arrows.iter().enumerate() {
            let lhs = self.blocks[a.source - 1].mul(self.source.arrow_map(ai));
            let rhs = self.target.arrow_map(ai).mul(&self.blocks[a.target - 1]);
            if lhs != rhs {
                return Some(a.name.clone());
            }
        }
        None
    }

    pub fn is_natural(&self) -> bool {
        self.naturality_failure().is_none()
    }

    pub fn identity(m: &Rep) -> RepMap {
        RepMap {
            source: m.clone(),
            target: m.clone(),
            blocks: m.dims().iter().map(|&d| RatMatrix::identity(d)).collect(),
        }
    }

    pub fn zero(source: &Rep, target: &Rep) -> RepMap {
        RepMap {
            source: source.clone(),
            target: target.clone(),
            blocks: source
                .dims()
                .iter()
                .zip(target.dims())
                .map(|(&s, &t)| RatMatrix::zeros(t, s))
                .collect(),
        }
    }

    pub fn source(&self) -> &Rep {
        &self.source
    }

    pub fn target(&self) -> &Rep {
        &self.target
    }

    pub fn blocks(&self) -> &[RatMatrix] {
        &self.blocks
    }

    /// Block at vertex `v` (1-based).
    pub fn block(&self, v: usize) -> &RatMatrix {
        &self.blocks[v - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(RatMatrix::is_zero)
    }

    /// `self ∘ g` (first `g`, then `self`).
    pub fn after(&self, g: &RepMap) -> RepMap {
        assert!(
            g.target.dims() == self.source.dims(),
            "composition of incompatible maps"
        );
        RepMap {
            source: g.source.clone(),
            target: self.target.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&g.blocks)
                .map(|(a, b)| a.mul(b))
                .collect(),
        }
    }

    /// `g ∘ self` (first `self`, then `g`).
    pub fn then(&self, g: &RepMap) -> RepMap {
        g.after(self)
    }

    pub fn add(&self, other: &RepMap) -> RepMap {
        assert_eq!(self.source.dims(), other.source.dims(), "sum of maps: source mismatch");
        assert_eq!(self.target.dims(), other.target.dims(), "sum of maps: target mismatch");
        RepMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self
                .blocks
                .iter()
                .zip(&other.blocks)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &RepMap) -> RepMap {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, c: &Rat) -> RepMap {
        RepMap {
            source: self.source.clone(),
            target: self.target.clone(),
            blocks: self.blocks.iter().map(|b| b.scale(c)).collect(),
        }
    }

    pub fn neg(&self) -> RepMap {
        self.scale(&-Rat::one())
    }

    /// Same blocks viewed between other (structurally equal) endpoints.
    pub fn with_endpoints(&self, source: &Rep, target: &Rep) -> RepMap {
        assert_eq!(source.dims(), self.source.dims());
        assert_eq!(target.dims(), self.target.dims());
        RepMap {
            source: source.clone(),
            target: target.clone(),
            blocks: self.blocks.clone(),
        }
    }

    pub fn is_injective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.blocks.iter().all(|b| b.rank() == b.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.blocks
            .iter()
            .all(|b| b.rows() == b.cols() && b.rank() == b.rows())
    }

    /// Blockwise inverse of an isomorphism.
    pub fn inverse(&self) -> Option<RepMap> {
        if !self.is_iso() {
            return None;
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                b.solve(&RatMatrix::identity(b.rows()))
                    .expect("invertible block")
                    .particular
            })
            .collect();
        Some(RepMap {
            source: self.target.clone(),
            target: self.source.clone(),
            blocks,
        })
    }

    /// All blocks flattened column-major per vertex; used as coordinates.
    pub fn flatten(&self) -> Vec<Rat> {
        let mut out = Vec::new();
        for b in &self.blocks {
            for j in 0..b.cols() {
                for i in 0..b.rows() {
                    out.push(b[(i, j)].clone());
                }
            }
        }
        out
    }

    /// Inverse of [`RepMap::flatten`].
    pub fn unflatten(source: &Rep, target: &Rep, v: &[Rat]) -> RepMap {
        let mut blocks = Vec::new();
        let mut k = 0;
        for (&s, &t) in source.dims().iter().zip(target.dims()) {
            let mut b = RatMatrix::zeros(t, s);
            for j in 0..s {
                for i in 0..t {
                    b[(i, j)] = v[k].clone();
                    k += 1;
                }
            }
            blocks.push(b);
        }
        assert_eq!(k, v.len(), "coordinate vector length mismatch");
        RepMap {
            source: source.clone(),
            target: target.clone(),
            blocks,
        }
    }
}

impl fmt::Debug for RepMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RepMap({:?} -> {:?}; {:?})", self.source, self.target, self.blocks)
    }
}

/// Finds an explicit isomorphism `M -> N` if one exists among a few
/// deterministic generic combinations of a Hom basis.
///
/// Over an infinite field the isomorphisms form a dense open subset of
/// `Hom(M, N)`, so a generic combination succeeds whenever `M ≅ N`.
pub fn find_isomorphism(m: &Rep, n: &Rep) -> Option<RepMap> {
    if m.dims() != n.dims() {
        return None;
    }
    let basis = hom_space(m, n).ok()?;
    if basis.is_empty() {
        return if m.is_zero() { Some(RepMap::zero(m, n)) } else { None };
    }
    const PRIMES: [i64; 12] = [1, 2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];
    for shift in 0..PRIMES.len() {
        let mut f = RepMap::zero(m, n);
        for (k, b) in basis.iter().enumerate() {
            let c = PRIMES[(k + shift) % PRIMES.len()] * (1 + (k as i64 * shift as i64) % 5);
            f = f.add(&b.scale(&Rat::from_int(c)));
        }
        if f.is_iso() {
            return Some(f);
        }
    }
    None
}

/// The filtration piece `F^k V = ⊕_{j ≤ k} V_j` with its inclusion into `V`.
///
/// Right actions move from higher to lower vertices, so the low-vertex part
/// is a submodule.
pub fn filtration_step(v: &Rep, k: usize) -> (Rep, RepMap) {
    let alg = v.algebra();
    let n = alg.vertex_count();
    assert!(k <= n, "filtration level {k} exceeds vertex count {n}");
    let dims: Vec<usize> = (1..=n).map(|j| if j <= k { v.dim_at(j) } else { 0 }).collect();
    let arrows = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            if a.target <= k {
                v.arrow_map(ai).clone()
            } else {
                RatMatrix::zeros(dims[a.source - 1], 0)
            }
        })
        .collect();
    let sub = Rep::new_unchecked(alg, dims.clone(), arrows).expect("filtration piece shape");
    let blocks = (1..=n)
        .map(|j| {
            if j <= k {
                RatMatrix::identity(v.dim_at(j))
            } else {
                RatMatrix::zeros(v.dim_at(j), 0)
            }
        })
        .collect();
    let inc = RepMap::new_unchecked(&sub, v, blocks).expect("inclusion shape");
    (sub, inc)
}

#[cfg(test)]
mod tests;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::complex::{sign_of, Cx, CxMap};
use super::resolution::Resolution;
use crate::linalg::{Rat, RatMatrix};
use crate::modules::{ProjSum, Rep, RepMap};

/// One block of a Hom-complex cochain: the component `P^k -> Y^{k+n}`.
#[derive(Clone, Copy, Debug)]
struct Block {
    k: i64,
    offset: usize,
    len: usize,
}

/// The complex `Hom^•(P(X), Y)` with `D f = d_Y f - (-1)^n f d_P`.
///
/// A cochain of degree `n` is stored by the generator values of its
/// components `P^k -> Y^{k+n}` (one vector of `Y_v` per summand `P_v`).
pub struct HomComplex {
    res: Arc<Resolution>,
    source: Cx,
    target: Cx,
}

impl HomComplex {
    pub fn new(source: &Cx, target: &Cx) -> HomComplex {
        HomComplex {
            res: source.resolution(),
            source: source.clone(),
            target: target.clone(),
        }
    }

    pub fn source(&self) -> &Cx {
        &self.source
    }

    pub fn target(&self) -> &Cx {
        &self.target
    }

    pub fn resolution(&self) -> &Arc<Resolution> {
        &self.res
    }

    /// Degrees where the complex can be nonzero.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let (plo, phi) = self.res.complex().range()?;
        let (ylo, yhi) = self.target.range()?;
        Some((ylo - phi, yhi - plo))
    }

    fn layout(&self, n: i64) -> Vec<Block> {
        let mut out = Vec::new();
        let mut offset = 0;
        for (k, sum) in self.res.sums() {
            let len = sum.hom_dim(&self.target.term(k + n));
            if len > 0 {
                out.push(Block { k, offset, len });
                offset += len;
            }
        }
        out
    }

    pub fn dim(&self, n: i64) -> usize {
        self.layout(n).iter().map(|b| b.len).sum()
    }

    /// Matrix of `D: Hom^n -> Hom^{n+1}`.
    pub fn differential(&self, n: i64) -> RatMatrix {
        let src = self.layout(n);
        let tgt = self.layout(n + 1);
        let rows: usize = tgt.iter().map(|b| b.len).sum();
        let cols: usize = src.iter().map(|b| b.len).sum();
        let mut m = RatMatrix::zeros(rows, cols);
        let find = |k: i64| tgt.iter().find(|b| b.k == k).copied();
        let s = -sign_of(n);
        for b in &src {
            let sum = self.res.sum(b.k).expect("layout blocks have summands");
            if let Some(t) = find(b.k) {
                let l = postcompose_block(sum, &self.target.diff(b.k + n));
                m.set_block(t.offset, b.offset, &l);
            }
            if let Some(t) = find(b.k - 1) {
                let prev = self.res.sum(b.k - 1).expect("layout blocks have summands");
                let r = precompose_block(
                    &self.res.complex().diff(b.k - 1),
                    prev,
                    sum,
                    &self.target.term(b.k + n),
                );
                m.set_block(t.offset, b.offset, &r.scale(&s));
            }
        }
        m
    }

    /// Components `P^k -> Y^{k+n}` of a cochain.
    pub fn cochain(&self, n: i64, coords: &[Rat]) -> CxMap {
        let layout = self.layout(n);
        assert_eq!(
            coords.len(),
            layout.iter().map(|b| b.len).sum::<usize>(),
            "cochain length"
        );
        let comps = layout
            .iter()
            .map(|b| {
                let sum = self.res.sum(b.k).expect("summands");
                let y = self.target.term(b.k + n);
                (b.k, sum.map_from_coordinates(&y, &coords[b.offset..b.offset + b.len]))
            })
            .collect();
        CxMap::from_comps(self.res.complex(), &self.target, n, comps)
    }

    /// Coordinates of a graded map `P -> Y` of degree `n`.
    pub fn coordinates(&self, f: &CxMap) -> Vec<Rat> {
        let n = f.degree();
        let mut out = Vec::with_capacity(self.dim(n));
        for b in self.layout(n) {
            let sum = self.res.sum(b.k).expect("summands");
            out.extend(sum.coordinates(&f.comp(b.k)));
        }
        out
    }

    /// Matrix of `f ↦ g ∘ f` from `Hom^n(P, self.target)` to
    /// `Hom^{n+d}(P, other.target)` for a graded map `g` of degree `d`.
    pub fn postcompose_matrix(&self, other: &HomComplex, n: i64, g: &CxMap) -> RatMatrix {
        let d = g.degree();
        let src = self.layout(n);
        let tgt = other.layout(n + d);
        let rows: usize = tgt.iter().map(|b| b.len).sum();
        let cols: usize = src.iter().map(|b| b.len).sum();
        let mut m = RatMatrix::zeros(rows, cols);
        for b in &src {
            if let Some(t) = tgt.iter().find(|t| t.k == b.k) {
                let sum = self.res.sum(b.k).expect("summands");
                m.set_block(t.offset, b.offset, &postcompose_block(sum, &g.comp(b.k + n)));
            }
        }
        m
    }

    /// All cohomology groups `H^n` in the degree range.
    pub fn cohomology_dims(&self) -> BTreeMap<i64, usize> {
        let Some((lo, hi)) = self.degree_range() else {
            return BTreeMap::new();
        };
        let mut ranks = BTreeMap::new();
        for n in (lo - 1)..=hi {
            ranks.insert(n, self.differential(n).rank());
        }
        (lo..=hi)
            .map(|n| (n, self.dim(n) - ranks[&n] - ranks[&(n - 1)]))
            .filter(|&(_, d)| d > 0)
            .collect()
    }
}

/// Block diagonal of `g_v` over the summands `P_v`.
fn postcompose_block(sum: &ProjSum, g: &RepMap) -> RatMatrix {
    let mut m = RatMatrix::zeros(0, 0);
    for &v in sum.labels() {
        m = m.block_diag(g.block(v));
    }
    m
}

/// Matrix of `f ↦ f ∘ d` from `Hom(P^k, Y)` to `Hom(P^{k-1}, Y)`, where
/// `d: P^{k-1} -> P^k`.
fn precompose_block(d: &RepMap, prev: &ProjSum, sum: &ProjSum, y: &Rep) -> RatMatrix {
    let alg = y.algebra();
    let values = prev.generator_values(d);
    let mut rows = Vec::new();
    for (&j, w) in prev.labels().iter().zip(&values) {
        // w lists coordinates in P^k_j: summands in order, paths j -> label
        let mut row_block = RatMatrix::zeros(y.dim_at(j), 0);
        let mut pos = 0;
        for &i in sum.labels() {
            let mut acc = RatMatrix::zeros(y.dim_at(j), y.dim_at(i));
            for p in alg.paths_between(j, i) {
                let c = &w[pos];
                if !c.is_zero() {
                    acc = acc.add(&y.act_path(&alg.basis()[p]).scale(c));
                }
                pos += 1;
            }
            row_block = row_block.hstack(&acc);
        }
        debug_assert_eq!(pos, w.len());
        rows.push(row_block);
    }
    let cols = sum.hom_dim(y);
    rows.into_iter()
        .fold(RatMatrix::zeros(0, cols), |acc, r| acc.vstack(&r))
}

/// `Hom_{D^b}(X, Y[n]) = H^n(Hom^•(P(X), Y))` with a chosen basis of
/// cocycle representatives.
pub struct DerivedHom {
    complex: Arc<HomComplex>,
    n: i64,
    reps: Vec<Vec<Rat>>,
    solver: RatMatrix,
    boundary_rank: usize,
}

impl DerivedHom {
    pub fn new(complex: &Arc<HomComplex>, n: i64) -> Arc<DerivedHom> {
        let d = complex.differential(n);
        let prev = complex.differential(n - 1);
        let bounds = prev.select_columns(&prev.independent_columns());
        let cycles = d.kernel_basis();
        let chosen = bounds.extend_basis(&cycles);
        let reps_m = cycles.select_columns(&chosen);
        let solver = bounds.hstack(&reps_m);
        Arc::new(DerivedHom {
            complex: Arc::clone(complex),
            n,
            reps: reps_m.columns().collect(),
            boundary_rank: bounds.cols(),
            solver,
        })
    }

    pub fn source(&self) -> &Cx {
        self.complex.source()
    }

    pub fn target(&self) -> &Cx {
        self.complex.target()
    }

    pub fn shift(&self) -> i64 {
        self.n
    }

    pub fn complex(&self) -> &Arc<HomComplex> {
        &self.complex
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    /// Coordinates of a cocycle; `None` if the vector is not a cocycle.
    pub fn try_coordinates(&self, cocycle: &[Rat]) -> Option<Vec<Rat>> {
        let sol = self
            .solver
            .solve(&RatMatrix::column_vector(cocycle.to_vec()))?;
        Some(sol.particular.column(0)[self.boundary_rank..].to_vec())
    }

    pub fn coordinates(&self, cocycle: &[Rat]) -> Vec<Rat> {
        self.try_coordinates(cocycle)
            .expect("vector is a cocycle of the Hom complex")
    }

    /// A cocycle representing the class with the given coordinates.
    pub fn representative(&self, coords: &[Rat]) -> Vec<Rat> {
        assert_eq!(coords.len(), self.dim(), "class coordinate length");
        let mut out = vec![Rat::zero(); self.complex.dim(self.n)];
        for (c, r) in coords.iter().zip(&self.reps) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.iter_mut().zip(r) {
                *o += &(c * x);
            }
        }
        out
    }

    pub fn class(self: &Arc<Self>, coords: Vec<Rat>) -> DClass {
        assert_eq!(coords.len(), self.dim(), "class coordinate length");
        DClass {
            hom: Arc::clone(self),
            coords,
        }
    }

    pub fn zero_class(self: &Arc<Self>) -> DClass {
        self.class(vec![Rat::zero(); self.dim()])
    }

    pub fn basis(self: &Arc<Self>) -> Vec<DClass> {
        (0..self.dim())
            .map(|i| {
                let mut c = vec![Rat::zero(); self.dim()];
                c[i] = Rat::one();
                self.class(c)
            })
            .collect()
    }

    /// Class of a cocycle `P(X) -> Y` of degree `n`.
    pub fn class_of_cochain(self: &Arc<Self>, f: &CxMap) -> DClass {
        assert_eq!(f.degree(), self.n, "cochain degree");
        let coords = self.coordinates(&self.complex.coordinates(f));
        self.class(coords)
    }

    /// Class of a cocycle `X -> Y` of degree `n` (a chain map `X -> Y[n]`),
    /// composed with the resolution of `X`.
    pub fn class_of_map(self: &Arc<Self>, f: &CxMap) -> DClass {
        let res = self.complex.resolution();
        let g = f.with_endpoints(self.source(), self.target()).after(res.quasi());
        self.class_of_cochain(&g)
    }
}

impl fmt::Debug for DerivedHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Hom({:?}, {:?}[{}]) dim {}",
            self.source(),
            self.target(),
            self.n,
            self.dim()
        )
    }
}

/// `Hom_{D^b}(X, Y[n])` for one `n`.
pub fn derived_hom(x: &Cx, y: &Cx, n: i64) -> Arc<DerivedHom> {
    DerivedHom::new(&Arc::new(HomComplex::new(x, y)), n)
}

/// `dim Hom(X, Y[n])` for every `n` with a nonzero group.
pub fn derived_hom_dims(x: &Cx, y: &Cx) -> BTreeMap<i64, usize> {
    HomComplex::new(x, y).cohomology_dims()
}

/// An element of `Hom_{D^b}(X, Y[n])` in the basis of its [`DerivedHom`].
#[derive(Clone)]
pub struct DClass {
    hom: Arc<DerivedHom>,
    coords: Vec<Rat>,
}

impl DClass {
    pub fn hom(&self) -> &Arc<DerivedHom> {
        &self.hom
    }

    pub fn coordinates(&self) -> &[Rat] {
        &self.coords
    }

    pub fn shift(&self) -> i64 {
        self.hom.n
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Rat::is_zero)
    }

    pub fn add(&self, other: &DClass) -> DClass {
        assert!(Arc::ptr_eq(&self.hom, &other.hom), "sum of classes in different groups");
        let coords = self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect();
        self.hom.class(coords)
    }

    pub fn scale(&self, c: &Rat) -> DClass {
        self.hom.class(self.coords.iter().map(|a| a * c).collect())
    }

    /// A cocycle `P(X) -> Y` of degree `n` representing the class.
    pub fn representative(&self) -> CxMap {
        self.hom
            .complex
            .cochain(self.hom.n, &self.hom.representative(&self.coords))
    }

    /// The same class expressed in another basis of the same group.
    pub fn in_group(&self, other: &Arc<DerivedHom>) -> DClass {
        assert_eq!(self.hom.n, other.n, "regrouping across degrees");
        other.class_of_cochain(&self.representative().with_endpoints(
            other.complex.res.complex(),
            other.target(),
        ))
    }

    /// `next ∘ self` in `target`, for `self: X -> Y[n]`, `next: Y -> Z[m]`
    /// and `target = Hom(X, Z[n+m])`.
    pub fn then_into(&self, next: &DClass, target: &Arc<DerivedHom>) -> DClass {
        let lifted = lift_to_resolution(self, next.hom.complex.resolution());
        let b = next.representative();
        let comp = b.after(&lifted).with_endpoints(target.complex.res.complex(), target.target());
        target.class_of_cochain(&comp)
    }

    /// `next ∘ self`, computing the target group.
    pub fn then(&self, next: &DClass) -> DClass {
        let target = derived_hom(self.hom.source(), next.hom.target(), self.hom.n + next.hom.n);
        self.then_into(next, &target)
    }
}

impl fmt::Debug for DClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} in {:?}", self.coords, self.hom)
    }
}

/// Solves `D a' = 0`, `q ∘ a' - D h = a` for a cocycle `a ∈ Hom^n(P, W)`
/// and a quasi-isomorphism `q: V -> W`; returns `a' ∈ Hom^n(P, V)`.
fn lift_through_quasi(
    over_w: &HomComplex,
    over_v: &HomComplex,
    q: &CxMap,
    n: i64,
    a: &[Rat],
) -> Vec<Rat> {
    let dv = over_v.differential(n);
    let qm = over_v.postcompose_matrix(over_w, n, q);
    let dw = over_w.differential(n - 1);
    let top = dv.hstack(&RatMatrix::zeros(dv.rows(), dw.cols()));
    let bottom = qm.hstack(&dw.neg());
    let system = top.vstack(&bottom);
    let mut rhs = vec![Rat::zero(); dv.rows()];
    rhs.extend_from_slice(a);
    let sol = system
        .solve(&RatMatrix::column_vector(rhs))
        .expect("a quasi-isomorphism admits lifts from projective complexes");
    sol.particular.column(0)[..dv.cols()].to_vec()
}

/// Lifts `α: X -> Y[n]` to a cocycle `P(X) -> P(Y)` of degree `n`.
fn lift_to_resolution(alpha: &DClass, res_y: &Arc<Resolution>) -> CxMap {
    let over_y = &alpha.hom.complex;
    let over_py = HomComplex {
        res: Arc::clone(&over_y.res),
        source: over_y.source.clone(),
        target: res_y.complex().clone(),
    };
    let n = alpha.hom.n;
    let a = alpha.hom.representative(&alpha.coords);
    let quasi = res_y.quasi().with_endpoints(res_y.complex(), over_y.target());
    let coords = lift_through_quasi(over_y, &over_py, &quasi, n, &a);
    over_py.cochain(n, &coords)
}

/// The class of the roof `B <-q- C -p-> W` in `Hom(B, W[d])`, where `q` is a
/// quasi-isomorphism and `p` a cocycle of degree `d`.
pub fn roof_class(q: &CxMap, p: &CxMap) -> DClass {
    assert_eq!(q.degree(), 0);
    let b = q.target();
    let target = derived_hom(b, p.target(), p.degree());
    let over_b = HomComplex::new(b, b);
    let over_c = HomComplex::new(b, q.source());
    let res = over_b.resolution();
    let pi = res.quasi().with_endpoints(res.complex(), b);
    let a = over_b.coordinates(&pi);
    let g = lift_through_quasi(&over_b, &over_c, q, 0, &a);
    let g = over_c.cochain(0, &g);
    let comp = p
        .after(&g)
        .with_endpoints(target.complex.res.complex(), target.target());
    target.class_of_cochain(&comp)
}

/// Identity class in `Hom(X, X)`.
pub fn identity_class(x: &Cx) -> DClass {
    let h = derived_hom(x, x, 0);
    let id = CxMap::identity(x);
    h.class_of_map(&id)
}

/// Graded maps between the resolutions are plain cochains; exposed for
/// callers that assemble classes from explicit components.
pub fn class_from_components(hom: &Arc<DerivedHom>, comps: BTreeMap<i64, RepMap>) -> DClass {
    let f = CxMap::from_comps(hom.complex.res.complex(), hom.target(), hom.n, comps);
    hom.class_of_cochain(&f)
}

//! Exceptional sequences, semiorthogonal projections and glued
//! t-structures.
//!
//! A t-structure is described by an [`AisleSpec`]: the standard one, the
//! one generated by pairwise orthogonal exceptional objects (all Homs
//! between distinct generators vanish), or a gluing `T_2^{≤0} * T_1^{≤0}[1]`
//! along `⟨T_1, T_2⟩` where `T_2` is generated by the right-hand generators.

use std::collections::BTreeMap;

use crate::derived::{cone, derived_hom, derived_hom_dims, truncate_std, Cx, CxMap};
use crate::linalg::{Rat, RatMatrix};
use crate::path_algebra::PathAlgebra;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GlueError {
    #[error("empty sequence")]
    Empty,
    #[error("object {index} is not exceptional: dim Hom(E, E[{shift}]) = {dim}")]
    NotExceptional { index: usize, shift: i64, dim: usize },
    #[error("order violated: dim Hom(E_{i}, E_{j}[{shift}]) = {dim} with {i} > {j}")]
    Order { i: usize, j: usize, shift: i64, dim: usize },
    #[error("not strong: dim Hom(E_{i}, E_{j}[{shift}]) = {dim}")]
    NotStrong { i: usize, j: usize, shift: i64, dim: usize },
    #[error("not compatible: dim Hom(G{left}, H{right}[{shift}]) = {dim} with {shift} < 0")]
    Incompatible { left: usize, right: usize, shift: i64, dim: usize },
    #[error("the {0} aisle has no finite generator description")]
    Unsupported(&'static str),
}

/// Half-width of the shift window: outside `[-w, w]` every Hom vanishes
/// for objects built from at most `len` exceptional pieces.
pub fn default_window(alg: &PathAlgebra, len: usize) -> i64 {
    (alg.vertex_count() + len + 2) as i64
}

/// Nonzero `dim Hom(X, Y[n])` for `|n| <= window`.
pub fn hom_profile(x: &Cx, y: &Cx, window: i64) -> BTreeMap<i64, usize> {
    derived_hom_dims(x, y)
        .into_iter()
        .filter(|(n, d)| *d > 0 && n.abs() <= window)
        .collect()
}

#[derive(Clone, Debug)]
pub struct ExcObject {
    pub object: Cx,
    pub window: i64,
}

/// `Hom(E, E[n])` is `K` for `n = 0` and zero otherwise.
pub fn check_exceptional(e: &Cx, window: i64) -> Result<ExcObject, GlueError> {
    check_exceptional_at(e, 1, window)
}

fn check_exceptional_at(e: &Cx, index: usize, window: i64) -> Result<ExcObject, GlueError> {
    let dims = hom_profile(e, e, window);
    if let Some((&shift, &dim)) = dims.iter().find(|(n, d)| (**n, **d) != (0, 1)) {
        return Err(GlueError::NotExceptional { index, shift, dim });
    }
    if !dims.contains_key(&0) {
        return Err(GlueError::NotExceptional { index, shift: 0, dim: 0 });
    }
    Ok(ExcObject {
        object: e.clone(),
        window,
    })
}

/// A checked exceptional sequence with its Hom table.
#[derive(Clone, Debug)]
pub struct ExcSequence {
    objects: Vec<Cx>,
    strong: bool,
    window: i64,
    table: BTreeMap<(usize, usize, i64), usize>,
}

impl ExcSequence {
    pub fn objects(&self) -> &[Cx] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn is_strong(&self) -> bool {
        self.strong
    }

    pub fn window(&self) -> i64 {
        self.window
    }

    /// Nonzero entries `(i, j, n) -> dim Hom(E_i, E_j[n])`, 1-based.
    pub fn table(&self) -> &BTreeMap<(usize, usize, i64), usize> {
        &self.table
    }

    pub fn hom(&self, i: usize, j: usize, n: i64) -> usize {
        self.table.get(&(i, j, n)).copied().unwrap_or(0)
    }
}

/// Checks each object, the one-way vanishing `Hom(E_i, E_j[*]) = 0` for
/// `i > j` and, when `strong` is requested, vanishing in nonzero shifts.
pub fn check_sequence(es: &[Cx], strong: bool, window: i64) -> Result<ExcSequence, GlueError> {
    if es.is_empty() {
        return Err(GlueError::Empty);
    }
    let mut table = BTreeMap::new();
    for (a, x) in es.iter().enumerate() {
        for (b, y) in es.iter().enumerate() {
            for (n, d) in hom_profile(x, y, window) {
                table.insert((a + 1, b + 1, n), d);
            }
        }
    }
    for (i, e) in es.iter().enumerate() {
        check_exceptional_at(e, i + 1, window)?;
    }
    if let Some((&(i, j, shift), &dim)) = table.iter().find(|((i, j, _), _)| i > j) {
        return Err(GlueError::Order { i, j, shift, dim });
    }
    let violation = table.iter().find(|((_, _, n), _)| *n != 0);
    if strong {
        if let Some((&(i, j, shift), &dim)) = violation {
            return Err(GlueError::NotStrong { i, j, shift, dim });
        }
    }
    Ok(ExcSequence {
        objects: es.to_vec(),
        strong: violation.is_none(),
        window,
        table,
    })
}

/// The evaluation map `⊕ G[-n] ⊗ Hom(G, X[n]) -> X` over the generators,
/// restricted to the shifts accepted by `keep`.
#[derive(Clone, Debug)]
pub struct Evaluation {
    pub sum: Cx,
    pub map: CxMap,
    /// `(generator index, n)` for each summand `G[-n]`, in order.
    pub summands: Vec<(usize, i64)>,
}

pub fn evaluate(gens: &[Cx], x: &Cx, keep: impl Fn(i64) -> bool) -> Evaluation {
    let mut parts = Vec::new();
    let mut maps = Vec::new();
    let mut summands = Vec::new();
    for (gi, g) in gens.iter().enumerate() {
        for (n, _) in derived_hom_dims(g, x) {
            if !keep(n) {
                continue;
            }
            let h = derived_hom(g, x, n);
            for c in h.basis() {
                let rep = c.representative();
                let src = rep.source().shift(-n);
                maps.push(rep.as_chain_map().shift(-n).with_endpoints(&src, x));
                parts.push(src);
                summands.push((gi, n));
            }
        }
    }
    if parts.is_empty() {
        let z = Cx::zero(x.algebra());
        return Evaluation {
            map: CxMap::zero(&z, x, 0),
            sum: z,
            summands,
        };
    }
    let sum = Cx::direct_sum(&parts);
    let mut map = CxMap::zero(&sum.sum, x, 0);
    for (f, p) in maps.iter().zip(&sum.projections) {
        map = map.add(&f.after(p));
    }
    Evaluation {
        sum: sum.sum,
        map,
        summands,
    }
}

/// Components of `X` along `⟨E_1, ..., E_m⟩`, peeled off from the last
/// object: `X_m = X`, `σ_k = ev(E_k, X_k)`, `X_{k-1} = C(σ_k -> X_k)`.
/// Entry `k - 1` is the component in `⟨E_k⟩`.
pub fn sod_components(x: &Cx, es: &[Cx]) -> Vec<Cx> {
    let mut out = vec![Cx::zero(x.algebra()); es.len()];
    let mut cur = x.clone();
    for (k, e) in es.iter().enumerate().rev() {
        let ev = evaluate(std::slice::from_ref(e), &cur, |_| true);
        out[k] = ev.sum;
        cur = cone(&ev.map).cone;
    }
    out
}

/// The component of `X` in `T_k = ⟨E_k⟩`, `k` 1-based.
pub fn sod_project(x: &Cx, es: &ExcSequence, k: usize) -> Cx {
    assert!((1..=es.len()).contains(&k), "component index out of range");
    sod_components(x, es.objects())[k - 1].clone()
}

/// A t-structure, described by its aisle `T^{≤0}`.
#[derive(Clone, Debug)]
pub enum AisleSpec {
    /// `H^i = 0` for `i > cut`.
    Standard { cut: i64 },
    /// Generated under extensions by `G[ℓ]`, `ℓ >= 0`, for pairwise
    /// orthogonal exceptional `G`; membership is decided for objects of the
    /// subcategory they generate.
    AddGenerated { generators: Vec<Cx> },
    /// `right^{≤0} * left^{≤0}[1]` along `⟨left, right⟩`; `right` must be
    /// [`AisleSpec::AddGenerated`].
    Glued { left: Box<AisleSpec>, right: Box<AisleSpec> },
}

/// The heart as the extension closure of finitely many generators.
#[derive(Clone, Debug)]
pub struct HeartDesc {
    pub generators: Vec<Cx>,
    pub provenance: String,
}

/// `X -> X` split as `lower -> X -> upper` with `lower` in the aisle and
/// `upper` in the co-aisle.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub lower: Cx,
    pub upper: Cx,
    pub inclusion: CxMap,
    pub projection: CxMap,
}

impl AisleSpec {
    pub fn point(e: &Cx) -> AisleSpec {
        AisleSpec::AddGenerated {
            generators: vec![e.clone()],
        }
    }

    fn right_generators(&self) -> &[Cx] {
        match self {
            AisleSpec::Glued { right, .. } => match right.as_ref() {
                AisleSpec::AddGenerated { generators } => generators,
                _ => panic!("the right side of a gluing must be generated by exceptional objects"),
            },
            _ => unreachable!(),
        }
    }

    /// Membership in `T^{≤0}`.
    pub fn contains(&self, x: &Cx) -> bool {
        self.member(x, true)
    }

    /// Membership in `T^{≥1}`.
    pub fn co_contains(&self, x: &Cx) -> bool {
        self.member(x, false)
    }

    fn member(&self, x: &Cx, aisle: bool) -> bool {
        match self {
            AisleSpec::Standard { cut } => x
                .cohomology_dims()
                .iter()
                .all(|(i, _)| if aisle { i <= cut } else { i > cut }),
            AisleSpec::AddGenerated { generators } => generators.iter().all(|g| {
                derived_hom_dims(g, x)
                    .keys()
                    .all(|&n| if aisle { n <= 0 } else { n >= 1 })
            }),
            AisleSpec::Glued { left, right } => {
                let ev = evaluate(self.right_generators(), x, |_| true);
                let rest = cone(&ev.map).cone.shift(-1);
                right.member(&ev.sum, aisle) && left.member(&rest, aisle)
            }
        }
    }

    /// Heart generators; `None` for the standard t-structure.
    pub fn heart(&self) -> Option<HeartDesc> {
        match self {
            AisleSpec::Standard { .. } => None,
            AisleSpec::AddGenerated { generators } => Some(HeartDesc {
                generators: generators.clone(),
                provenance: "generated".into(),
            }),
            AisleSpec::Glued { left, right } => {
                let l = left.heart()?;
                let r = right.heart()?;
                let mut generators: Vec<Cx> = l.generators.iter().map(|g| g.shift(1)).collect();
                generators.extend(r.generators);
                Some(HeartDesc {
                    generators,
                    provenance: format!("glued({}, {})", l.provenance, r.provenance),
                })
            }
        }
    }

    /// The truncation triangle of `X`.
    pub fn truncate(&self, x: &Cx) -> Truncation {
        match self {
            AisleSpec::Standard { cut } => {
                let t = truncate_std(x, *cut);
                Truncation {
                    lower: t.lower,
                    upper: t.upper,
                    inclusion: t.inclusion,
                    projection: t.projection,
                }
            }
            AisleSpec::AddGenerated { generators } => {
                let ev = evaluate(generators, x, |n| n <= 0);
                let c = cone(&ev.map);
                Truncation {
                    lower: ev.sum,
                    upper: c.cone,
                    inclusion: ev.map,
                    projection: c.inclusion,
                }
            }
            AisleSpec::Glued { left, .. } => truncate_glued(x, left, self.right_generators()),
        }
    }
}

/// Splits off the `T_2^{≤0}` part, moves `T_1^{≤0}[1]` past `T_2^{≥1}`
/// (they are orthogonal by compatibility) and takes the cocone of what
/// remains.
fn truncate_glued(x: &Cx, left: &AisleSpec, gens: &[Cx]) -> Truncation {
    let low = evaluate(gens, x, |n| n <= 0);
    let cu = cone(&low.map);
    let xp = cu.cone.clone();

    let full = evaluate(gens, &xp, |_| true);
    let cf = cone(&full.map);
    let c = cf.cone.clone();
    let x1 = c.shift(-1);
    let t1 = left.truncate(&x1);
    let s = t1.lower.shift(1);
    let w = t1.inclusion.shift(1).with_endpoints(&s, &c);

    let into_xp = derived_hom(&s, &xp, 0);
    let into_c = derived_hom(&s, &c, 0);
    let target = into_c.class_of_map(&w);
    let cols: Vec<Vec<Rat>> = into_xp
        .basis()
        .iter()
        .map(|b| {
            let pushed = cf.inclusion.after(&b.representative());
            into_c.class_of_cochain(&pushed).coordinates().to_vec()
        })
        .collect();
    let lift = if cols.is_empty() {
        Vec::new()
    } else {
        RatMatrix::from_columns(into_c.dim(), &cols)
            .solve(&RatMatrix::column_vector(target.coordinates().to_vec()))
            .expect("the obstruction vanishes by compatibility")
            .particular
            .column(0)
    };
    let v = into_xp.class(lift).representative();

    let cv = cone(&v);
    let upper = cv.cone.clone();
    let h = cv.inclusion.after(&cu.inclusion);
    let ch = cone(&h);
    let lower = ch.cone.shift(-1);
    let inclusion = ch.projection.shift(-1).as_chain_map().with_endpoints(&lower, x);
    Truncation {
        lower,
        upper,
        inclusion,
        projection: h,
    }
}

/// Witness of the compatibility test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compatibility {
    pub compatible: bool,
    /// `(left generator, right generator, n, dim Hom(G, H[n]))` with `n < 0`.
    pub witness: Option<(usize, usize, i64, usize)>,
}

/// `Hom(T_1^{≤0}, T_2^{≥1}) = 0`, reduced to `Hom(G, H[n]) = 0` for `n < 0`
/// over heart generators `G` of the left and `H` of the right side.
pub fn compatible(a1: &AisleSpec, a2: &AisleSpec) -> Result<Compatibility, GlueError> {
    let h1 = a1.heart().ok_or(GlueError::Unsupported("left"))?;
    let h2 = a2.heart().ok_or(GlueError::Unsupported("right"))?;
    for (a, g) in h1.generators.iter().enumerate() {
        for (b, h) in h2.generators.iter().enumerate() {
            if let Some((&n, &d)) = derived_hom_dims(g, h).iter().find(|(n, _)| **n < 0) {
                return Ok(Compatibility {
                    compatible: false,
                    witness: Some((a, b, n, d)),
                });
            }
        }
    }
    Ok(Compatibility {
        compatible: true,
        witness: None,
    })
}

#[derive(Clone, Debug)]
pub struct Gluing {
    pub aisle: AisleSpec,
    pub heart: HeartDesc,
}

/// Gluing of compatible aisles along `⟨T_1, T_2⟩`.
pub fn glue(a1: &AisleSpec, a2: &AisleSpec) -> Result<Gluing, GlueError> {
    if !matches!(a2, AisleSpec::AddGenerated { .. }) {
        return Err(GlueError::Unsupported("right"));
    }
    let c = compatible(a1, a2)?;
    if let Some((left, right, shift, dim)) = c.witness {
        return Err(GlueError::Incompatible {
            left,
            right,
            shift,
            dim,
        });
    }
    let aisle = AisleSpec::Glued {
        left: Box::new(a1.clone()),
        right: Box::new(a2.clone()),
    };
    let heart = aisle.heart().expect("both sides have generators");
    Ok(Gluing { aisle, heart })
}

/// Iterated pairwise gluing of the point t-structures of `⟨E_1, ..., E_m⟩`;
/// entry `k` glues the first `k + 1` objects.
pub fn glue_sequence(es: &ExcSequence) -> Result<Vec<Gluing>, GlueError> {
    let objs = es.objects();
    let mut acc = AisleSpec::point(&objs[0]);
    let mut out = Vec::new();
    for e in &objs[1..] {
        let g = glue(&acc, &AisleSpec::point(e))?;
        acc = g.aisle.clone();
        out.push(g);
    }
    Ok(out)
}

/// The n-fold condition `Hom(T_i^{≤0}[k-i-1], T_k^{≥1}) = 0` for `k > i`
/// with point aisles, i.e. `Hom(E_i, E_k[s]) = 0` for `s <= i - k`.
/// Returns the first violation `(i, k, s, dim)`.
pub fn nfold_violation(es: &ExcSequence) -> Option<(usize, usize, i64, usize)> {
    es.table()
        .iter()
        .find(|((i, k, s), _)| k > i && *s <= *i as i64 - *k as i64)
        .map(|(&(i, k, s), &d)| (i, k, s, d))
}

/// `sup {n : Hom(G_a, G_b[n]) != 0}` over generator pairs; `None` for the
/// zero heart.
pub fn heart_dim(h: &HeartDesc, window: i64) -> Option<i64> {
    cross_sup(&h.generators, &h.generators, window).map(|(_, _, n)| n)
}

/// `sup {m : Hom(A_1, A_2[m]) != 0}`, or `-1` when every cross Hom vanishes.
pub fn rdim(h1: &HeartDesc, h2: &HeartDesc, window: i64) -> i64 {
    cross_sup(&h1.generators, &h2.generators, window).map_or(-1, |(_, _, n)| n)
}

fn cross_sup(xs: &[Cx], ys: &[Cx], window: i64) -> Option<(usize, usize, i64)> {
    let mut best: Option<(usize, usize, i64)> = None;
    for (a, x) in xs.iter().enumerate() {
        for (b, y) in ys.iter().enumerate() {
            if let Some((&n, _)) = hom_profile(x, y, window).iter().next_back() {
                if best.is_none_or(|(_, _, m)| n > m) {
                    best = Some((a, b, n));
                }
            }
        }
    }
    best
}

/// Both sides of `dim A = max{dim A_1, dim A_2, rdim(A_1, A_2) + 1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimFormula {
    pub lhs: i64,
    pub dim1: Option<i64>,
    pub dim2: Option<i64>,
    pub rdim: i64,
    pub rhs: i64,
    /// Generator pair of the glued heart realising `lhs`.
    pub witness: Option<(usize, usize)>,
    pub window: i64,
}

impl DimFormula {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

pub fn check_dim_formula(h1: &HeartDesc, h2: &HeartDesc, glued: &HeartDesc, window: i64) -> DimFormula {
    let dim1 = heart_dim(h1, window);
    let dim2 = heart_dim(h2, window);
    let r = rdim(h1, h2, window);
    let rhs = [dim1, dim2, Some(r + 1)].into_iter().flatten().max().expect("nonempty");
    let sup = cross_sup(&glued.generators, &glued.generators, window);
    DimFormula {
        lhs: sup.map_or(-1, |(_, _, n)| n),
        dim1,
        dim2,
        rdim: r,
        rhs,
        witness: sup.map(|(a, b, _)| (a, b)),
        window,
    }
}

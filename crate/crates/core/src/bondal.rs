//! `End(⊕ E_i)` for a strong exceptional sequence, its presentation as a
//! path algebra and the functor `X ↦ Hom(⊕ E_i, X)`.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::derived::{derived_hom, derived_hom_dims, identity_class, Cx, DClass, DerivedHom};
use crate::glue::ExcSequence;
use crate::linalg::{Rat, RatMatrix};
use crate::modules::{find_isomorphism, hom_space, ModuleError, Rep, RepMap};
use crate::path_algebra::{AlgebraError, PathAlgebra, Quiver, Relation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BondalError {
    #[error("the sequence is not strong")]
    NotStrong,
    #[error("End(E_{index}) has dimension {dim}, expected 1")]
    Diagonal { index: usize, dim: usize },
    #[error("recovered presentation is invalid: {0}")]
    Presentation(#[from] AlgebraError),
    #[error("recovered algebra has dimension {got}, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("path evaluation is not an algebra isomorphism")]
    NotIsomorphic,
    #[error("Hom(E_{index}, X[{shift}]) is nonzero")]
    OutsideScope { index: usize, shift: i64 },
    #[error(transparent)]
    Module(#[from] ModuleError),
}

/// `End(⊕ E_i)` on the basis `∪ basis Hom(E_i, E_j)`, multiplied in
/// diagrammatic order: `x·y = y ∘ x`, so that products match path
/// concatenation.
pub struct EndAlgebra {
    objects: Vec<Cx>,
    homs: BTreeMap<(usize, usize), Arc<DerivedHom>>,
    /// `(i, j, k)`: the `k`-th basis class of `Hom(E_i, E_j)`, 1-based `i, j`.
    basis: Vec<(usize, usize, usize)>,
    offsets: BTreeMap<(usize, usize), usize>,
    constants: Vec<Vec<Vec<Rat>>>,
}

pub fn end_algebra(es: &ExcSequence) -> Result<EndAlgebra, BondalError> {
    if !es.is_strong() {
        return Err(BondalError::NotStrong);
    }
    let objects = es.objects().to_vec();
    let m = objects.len();
    let mut homs = BTreeMap::new();
    let mut basis = Vec::new();
    let mut offsets = BTreeMap::new();
    for i in 1..=m {
        for j in 1..=m {
            let h = derived_hom(&objects[i - 1], &objects[j - 1], 0);
            if h.dim() == 0 {
                continue;
            }
            offsets.insert((i, j), basis.len());
            basis.extend((0..h.dim()).map(|k| (i, j, k)));
            homs.insert((i, j), h);
        }
    }
    let d = basis.len();
    let mut constants = vec![vec![vec![Rat::zero(); d]; d]; d];
    for (x, &(i, j, kx)) in basis.iter().enumerate() {
        for (y, &(j2, l, ky)) in basis.iter().enumerate() {
            if j != j2 {
                continue;
            }
            let Some(target) = homs.get(&(i, l)) else {
                continue;
            };
            let cx = homs[&(i, j)].basis()[kx].clone();
            let cy = homs[&(j, l)].basis()[ky].clone();
            let prod = cx.then_into(&cy, target);
            let off = offsets[&(i, l)];
            for (k, c) in prod.coordinates().iter().enumerate() {
                constants[x][y][off + k] = c.clone();
            }
        }
    }
    Ok(EndAlgebra {
        objects,
        homs,
        basis,
        offsets,
        constants,
    })
}

impl EndAlgebra {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn objects(&self) -> &[Cx] {
        &self.objects
    }

    pub fn basis(&self) -> &[(usize, usize, usize)] {
        &self.basis
    }

    /// `Hom(E_i, E_j)`, if nonzero.
    pub fn hom(&self, i: usize, j: usize) -> Option<&Arc<DerivedHom>> {
        self.homs.get(&(i, j))
    }

    /// Coefficients of `basis[x]·basis[y]`.
    pub fn mult(&self, x: usize, y: usize) -> &[Rat] {
        &self.constants[x][y]
    }

    pub fn multiply(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (x, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (y, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                let ab = a * b;
                for (k, c) in self.constants[x][y].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&ab * c);
                    }
                }
            }
        }
        out
    }

    /// Embeds coordinates of `Hom(E_i, E_j)` into the combined basis.
    pub fn embed(&self, i: usize, j: usize, coords: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        if let Some(&off) = self.offsets.get(&(i, j)) {
            for (k, c) in coords.iter().enumerate() {
                out[off + k] = c.clone();
            }
        }
        out
    }

    /// The `Hom(E_i, E_j)` block of a combined coordinate vector.
    pub fn block(&self, i: usize, j: usize, v: &[Rat]) -> Vec<Rat> {
        match (self.offsets.get(&(i, j)), self.homs.get(&(i, j))) {
            (Some(&off), Some(h)) => v[off..off + h.dim()].to_vec(),
            _ => Vec::new(),
        }
    }

    /// `Σ id_{E_i}`.
    pub fn unit(&self) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (i, e) in self.objects.iter().enumerate() {
            if let Some(h) = self.homs.get(&(i + 1, i + 1)) {
                let id = identity_class(e).in_group(h);
                for (a, b) in out.iter_mut().zip(self.embed(i + 1, i + 1, id.coordinates())) {
                    *a += &b;
                }
            }
        }
        out
    }

    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        let unit = |i: usize| {
            let mut v = vec![Rat::zero(); d];
            v[i] = Rat::one();
            v
        };
        (0..d).all(|x| {
            (0..d).all(|y| {
                (0..d).all(|z| {
                    self.multiply(&self.constants[x][y], &unit(z))
                        == self.multiply(&unit(x), &self.constants[y][z])
                })
            })
        })
    }

    pub fn unit_is_neutral(&self) -> bool {
        let u = self.unit();
        (0..self.dim()).all(|x| {
            let mut v = vec![Rat::zero(); self.dim()];
            v[x] = Rat::one();
            self.multiply(&u, &v) == v && self.multiply(&v, &u) == v
        })
    }
}

/// A quiver with relations whose path algebra is isomorphic to the
/// endomorphism algebra, with the isomorphism on bases.
pub struct QuiverPresentation {
    pub algebra: Arc<PathAlgebra>,
    /// Element of `Hom(E_i, E_j)` chosen for each arrow, in arrow order.
    pub arrow_values: Vec<Vec<Rat>>,
    /// Column `p` holds the image of basis path `p` in the combined basis.
    pub certificate: RatMatrix,
}

fn arrow_name(i: usize, j: usize, t: usize, count: usize) -> String {
    if count == 1 {
        format!("x{i}_{j}")
    } else {
        format!("x{i}_{j}_{}", t + 1)
    }
}

/// All paths of length at least two, as arrow index lists.
fn long_paths(q: &Quiver) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<usize>> = (0..q.arrows.len()).map(|a| vec![a]).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            let end = q.arrows[*p.last().expect("nonempty")].target;
            for (b, arrow) in q.arrows.iter().enumerate() {
                if arrow.source == end {
                    let mut np = p.clone();
                    np.push(b);
                    next.push(np);
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

/// Arrows `i -> j` span a complement of `rad²` in `Hom(E_i, E_j)`;
/// relations are the kernel of path evaluation, pair by pair.
pub fn quiver_presentation(ea: &EndAlgebra) -> Result<QuiverPresentation, BondalError> {
    let m = ea.objects.len();
    for i in 1..=m {
        let dim = ea.hom(i, i).map_or(0, |h| h.dim());
        if dim != 1 {
            return Err(BondalError::Diagonal { index: i, dim });
        }
    }
    let mut arrows: Vec<(String, usize, usize)> = Vec::new();
    let mut arrow_values = Vec::new();
    for i in 1..=m {
        for j in (i + 1)..=m {
            let Some(h) = ea.hom(i, j) else { continue };
            let mut squares: Vec<Vec<Rat>> = Vec::new();
            for k in (i + 1)..j {
                let (Some(hik), Some(hkj)) = (ea.hom(i, k), ea.hom(k, j)) else {
                    continue;
                };
                for x in hik.basis() {
                    for y in hkj.basis() {
                        squares.push(x.then_into(&y, h).coordinates().to_vec());
                    }
                }
            }
            let span = if squares.is_empty() {
                RatMatrix::zeros(h.dim(), 0)
            } else {
                RatMatrix::from_columns(h.dim(), &squares)
            };
            let chosen = span.extend_basis(&RatMatrix::identity(h.dim()));
            for (t, &c) in chosen.iter().enumerate() {
                arrows.push((arrow_name(i, j, t, chosen.len()), i, j));
                let mut v = vec![Rat::zero(); h.dim()];
                v[c] = Rat::one();
                arrow_values.push(ea.embed(i, j, &v));
            }
        }
    }
    let refs: Vec<(&str, usize, usize)> = arrows.iter().map(|(n, s, t)| (n.as_str(), *s, *t)).collect();
    let quiver = Quiver::new(m, &refs);

    let value = |p: &[usize]| {
        p.iter()
            .skip(1)
            .fold(arrow_values[p[0]].clone(), |acc, &a| ea.multiply(&acc, &arrow_values[a]))
    };
    let mut groups: BTreeMap<(usize, usize), Vec<Vec<usize>>> = BTreeMap::new();
    for p in long_paths(&quiver) {
        let s = quiver.arrows[p[0]].source;
        let t = quiver.arrows[*p.last().expect("nonempty")].target;
        groups.entry((s, t)).or_default().push(p);
    }
    let mut relations = Vec::new();
    for ((s, t), paths) in &groups {
        let rows = ea.hom(*s, *t).map_or(0, |h| h.dim());
        let cols: Vec<Vec<Rat>> = paths.iter().map(|p| ea.block(*s, *t, &value(p))).collect();
        let kernel = if rows == 0 {
            RatMatrix::identity(paths.len())
        } else {
            RatMatrix::from_columns(rows, &cols).kernel_basis()
        };
        for v in kernel.columns() {
            let terms: Vec<(Rat, Vec<&str>)> = v
                .iter()
                .zip(paths)
                .filter(|(c, _)| !c.is_zero())
                .map(|(c, p)| (c.clone(), p.iter().map(|&a| arrows[a].0.as_str()).collect()))
                .collect();
            relations.push(Relation::new(terms));
        }
    }
    let algebra = Arc::new(PathAlgebra::build(quiver, relations)?);
    if algebra.dim() != ea.dim() {
        return Err(BondalError::DimensionMismatch {
            expected: ea.dim(),
            got: algebra.dim(),
        });
    }

    let mut images: Vec<Vec<Rat>> = Vec::new();
    for p in algebra.basis() {
        if p.is_trivial() {
            let h = ea.hom(p.source, p.source).expect("diagonal is nonzero");
            let id = identity_class(&ea.objects[p.source - 1]).in_group(h);
            images.push(ea.embed(p.source, p.source, id.coordinates()));
        } else {
            images.push(value(&p.arrows));
        }
    }
    let certificate = RatMatrix::from_columns(ea.dim(), &images);
    if certificate.rank() != ea.dim() {
        return Err(BondalError::NotIsomorphic);
    }
    for x in 0..algebra.dim() {
        for y in 0..algebra.dim() {
            // `mult(x, y)` is `y` followed by `x`.
            let prod = algebra.mult(x, y);
            let mut lhs = vec![Rat::zero(); ea.dim()];
            for (k, c) in prod.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                for (o, v) in lhs.iter_mut().zip(&images[k]) {
                    *o += &(c * v);
                }
            }
            if lhs != ea.multiply(&images[y], &images[x]) {
                return Err(BondalError::NotIsomorphic);
            }
        }
    }
    Ok(QuiverPresentation {
        algebra,
        arrow_values,
        certificate,
    })
}

/// `Φ(X)` together with the Hom groups that index its vertex spaces.
#[derive(Clone)]
pub struct FunctorImage {
    pub object: Cx,
    pub module: Rep,
    groups: Vec<Arc<DerivedHom>>,
}

/// `Φ(X)` with `G_i Φ(X) = Hom(E_i, X)`; an arrow `a: i -> j` acts by
/// `φ ↦ φ ∘ a`.
pub fn module_functor(ea: &EndAlgebra, pres: &QuiverPresentation, x: &Cx) -> Result<FunctorImage, BondalError> {
    let mut groups = Vec::new();
    for (i, e) in ea.objects.iter().enumerate() {
        if let Some(&shift) = derived_hom_dims(e, x).keys().find(|&&n| n != 0) {
            return Err(BondalError::OutsideScope { index: i + 1, shift });
        }
        groups.push(derived_hom(e, x, 0));
    }
    let quiver = pres.algebra.quiver();
    let mut matrices = Vec::new();
    for (arrow, value) in quiver.arrows.iter().zip(&pres.arrow_values) {
        let (i, j) = (arrow.source, arrow.target);
        let hij = ea.hom(i, j).expect("arrows live in nonzero Hom spaces");
        let a = hij.class(ea.block(i, j, value));
        let (src, tgt) = (&groups[j - 1], &groups[i - 1]);
        let cols: Vec<Vec<Rat>> = src
            .basis()
            .iter()
            .map(|phi| a.then_into(phi, tgt).coordinates().to_vec())
            .collect();
        matrices.push(if cols.is_empty() {
            RatMatrix::zeros(tgt.dim(), 0)
        } else {
            RatMatrix::from_columns(tgt.dim(), &cols)
        });
    }
    let dims = groups.iter().map(|g| g.dim()).collect();
    let module = Rep::new(&pres.algebra, dims, matrices)?;
    Ok(FunctorImage {
        object: x.clone(),
        module,
        groups,
    })
}

/// `Φ(f)` for `f ∈ Hom(X, Y)`: postcomposition at every vertex.
pub fn functor_on_map(src: &FunctorImage, tgt: &FunctorImage, f: &DClass) -> RepMap {
    let blocks = src
        .groups
        .iter()
        .zip(&tgt.groups)
        .map(|(gx, gy)| {
            let cols: Vec<Vec<Rat>> = gx
                .basis()
                .iter()
                .map(|phi| phi.then_into(f, gy).coordinates().to_vec())
                .collect();
            if cols.is_empty() {
                RatMatrix::zeros(gy.dim(), 0)
            } else {
                RatMatrix::from_columns(gy.dim(), &cols)
            }
        })
        .collect();
    RepMap::new(&src.module, &tgt.module, blocks).expect("postcomposition is natural")
}

/// `Φ(E_i) ≅ P_i` with an explicit isomorphism for every `i`.
pub fn projective_certificates(ea: &EndAlgebra, pres: &QuiverPresentation) -> Result<Vec<RepMap>, BondalError> {
    let mut out = Vec::new();
    for (i, e) in ea.objects.iter().enumerate() {
        let img = module_functor(ea, pres, e)?;
        let p = Rep::projective(&pres.algebra, i + 1);
        out.push(find_isomorphism(&img.module, &p).ok_or(BondalError::NotIsomorphic)?);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCheck {
    pub derived_dim: usize,
    pub module_dim: usize,
    pub rank: usize,
}

impl PairCheck {
    pub fn ok(&self) -> bool {
        self.derived_dim == self.module_dim && self.rank == self.derived_dim
    }
}

/// Compares `Hom(X, Y)` with `Hom(Φ X, Φ Y)` through `Φ` on explicit bases.
pub fn faithful_full_check(
    ea: &EndAlgebra,
    pres: &QuiverPresentation,
    pairs: &[(Cx, Cx)],
) -> Result<Vec<PairCheck>, BondalError> {
    let mut out = Vec::new();
    for (x, y) in pairs {
        let fx = module_functor(ea, pres, x)?;
        let fy = module_functor(ea, pres, y)?;
        let h = derived_hom(x, y, 0);
        let module_dim = hom_space(&fx.module, &fy.module)?.len();
        let images: Vec<Vec<Rat>> = h.basis().iter().map(|f| flatten(&functor_on_map(&fx, &fy, f))).collect();
        let rank = match images.first() {
            None => 0,
            Some(v) => RatMatrix::from_columns(v.len(), &images).rank(),
        };
        out.push(PairCheck {
            derived_dim: h.dim(),
            module_dim,
            rank,
        });
    }
    Ok(out)
}

fn flatten(f: &RepMap) -> Vec<Rat> {
    f.blocks().iter().flat_map(|b| b.entries().iter().cloned()).collect()
}

//! Finite ordered quivers with admissible relations and the finite-dimensional
//! algebra `KQ/<S>` they present.
//!
//! Vertices are numbered `1..=n`. A path is stored by its arrow indices in
//! traversal order, so `[a, b]` means "first `a`, then `b`". The product of
//! basis elements follows the composition convention: `q * p` is the path
//! "`p` then `q`", nonzero only when `s(q) = t(p)`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use crate::linalg::{Rat, RatMatrix};

type Combination = Vec<(Rat, Path)>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error("quiver must have at least one vertex")]
    NoVertices,
    #[error("arrow `{name}` has endpoint {vertex} outside 1..={n}")]
    VertexOutOfRange { name: String, vertex: usize, n: usize },
    #[error("duplicate arrow name `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{name}` {from}->{to} is a loop; cyclic quivers are not supported")]
    Loop { name: String, from: usize, to: usize },
    #[error("arrow `{name}` {from}->{to} violates the vertex order (need source < target)")]
    Unordered { name: String, from: usize, to: usize },
    #[error("relation {index} is empty")]
    EmptyRelation { index: usize },
    #[error("relation {index} mentions unknown arrow `{name}`")]
    UnknownArrow { index: usize, name: String },
    #[error("relation {index}: path {path:?} is not composable")]
    NotComposable { index: usize, path: Vec<String> },
    #[error("relation {index}: path {path:?} has length < 2 (relations must be admissible)")]
    NotAdmissible { index: usize, path: Vec<String> },
    #[error("relation {index}: paths are not parallel")]
    NotParallel { index: usize },
    #[error("vertex {vertex} outside 1..={n}")]
    BadVertex { vertex: usize, n: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Quiver {
    pub vertex_count: usize,
    pub arrows: Vec<Arrow>,
}

impl Quiver {
    pub fn new(vertex_count: usize, arrows: &[(&str, usize, usize)]) -> Self {
        Quiver {
            vertex_count,
            arrows: arrows
                .iter()
                .map(|&(n, s, t)| Arrow {
                    name: n.to_string(),
                    source: s,
                    target: t,
                })
                .collect(),
        }
    }

    pub fn arrow_index(&self, name: &str) -> Option<usize> {
        self.arrows.iter().position(|a| a.name == name)
    }

    /// Same vertices, every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver {
            vertex_count: self.vertex_count,
            arrows: self
                .arrows
                .iter()
                .map(|a| Arrow {
                    name: a.name.clone(),
                    source: a.target,
                    target: a.source,
                })
                .collect(),
        }
    }

    /// Checks vertex ranges, unique names and the strict order `s(a) < t(a)`.
    pub fn validate_ordered(&self) -> Result<(), AlgebraError> {
        if self.vertex_count == 0 {
            return Err(AlgebraError::NoVertices);
        }
        let mut seen = HashSet::new();
        for a in &self.arrows {
            for v in [a.source, a.target] {
                if v == 0 || v > self.vertex_count {
                    return Err(AlgebraError::VertexOutOfRange {
                        name: a.name.clone(),
                        vertex: v,
                        n: self.vertex_count,
                    });
                }
            }
            if !seen.insert(a.name.as_str()) {
                return Err(AlgebraError::DuplicateArrow(a.name.clone()));
            }
            if a.source == a.target {
                return Err(AlgebraError::Loop {
                    name: a.name.clone(),
                    from: a.source,
                    to: a.target,
                });
            }
            if a.source > a.target {
                return Err(AlgebraError::Unordered {
                    name: a.name.clone(),
                    from: a.source,
                    to: a.target,
                });
            }
        }
        Ok(())
    }
}

/// A linear combination of parallel paths, each given by arrow names in
/// traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub terms: Vec<(Rat, Vec<String>)>,
}

impl Relation {
    pub fn new(terms: Vec<(Rat, Vec<&str>)>) -> Self {
        Relation {
            terms: terms
                .into_iter()
                .map(|(c, p)| (c, p.into_iter().map(str::to_string).collect()))
                .collect(),
        }
    }

    /// A single path set to zero.
    pub fn monomial(path: &[&str]) -> Self {
        Relation::new(vec![(Rat::one(), path.to_vec())])
    }

    /// The relation on the opposite quiver: every path read backwards.
    pub fn opposite(&self) -> Relation {
        Relation {
            terms: self
                .terms
                .iter()
                .map(|(c, p)| (c.clone(), p.iter().rev().cloned().collect()))
                .collect(),
        }
    }
}

/// A path of the quiver; length-zero paths are the vertex idempotents.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            source: v,
            target: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }

    /// `self` followed by `next`; caller guarantees `self.target == next.source`.
    pub fn then(&self, next: &Path) -> Path {
        debug_assert_eq!(self.target, next.source);
        let mut arrows = self.arrows.clone();
        arrows.extend_from_slice(&next.arrows);
        Path {
            source: self.source,
            target: next.target,
            arrows,
        }
    }
}

/// `KQ/<S>` with a basis of residue paths and a full multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct PathAlgebra {
    quiver: Quiver,
    relations: Vec<Relation>,
    basis: Vec<Path>,
    /// `mult[x][y]` is the coefficient vector of `basis[x] * basis[y]`.
    mult: Vec<Vec<Vec<Rat>>>,
    index: HashMap<Path, usize>,
}

/// Sorting key making the lexicographically largest path of a given length
/// the leading term; longer paths dominate shorter ones.
fn leading_key<'a>(q: &'a Quiver, p: &Path) -> (usize, Vec<&'a str>) {
    (p.len(), p.arrows.iter().map(|&a| q.arrows[a].name.as_str()).collect())
}

fn enumerate_paths(q: &Quiver) -> Vec<Path> {
    let mut out: Vec<Path> = (1..=q.vertex_count).map(Path::trivial).collect();
    let mut frontier = out.clone();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for p in &frontier {
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == p.target {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path {
                        source: p.source,
                        target: a.target,
                        arrows,
                    });
                }
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

impl PathAlgebra {
    /// Validates the quiver and relations and computes a residue basis.
    ///
    /// The ideal is computed exactly as the span of `u * r * v` for every
    /// relation `r` and paths `u, v`; within each `(source, target)` block the
    /// leading paths of the row-reduced ideal are discarded and the remaining
    /// paths form the basis.
    pub fn build(quiver: Quiver, relations: Vec<Relation>) -> Result<PathAlgebra, AlgebraError> {
        quiver.validate_ordered()?;
        let mut rel_paths: Vec<Vec<(Rat, Path)>> = Vec::new();
        for (index, r) in relations.iter().enumerate() {
            if r.terms.is_empty() {
                return Err(AlgebraError::EmptyRelation { index });
            }
            let mut terms = Vec::new();
            for (c, names) in &r.terms {
                let mut arrows = Vec::new();
                for n in names {
                    let a = quiver.arrow_index(n).ok_or_else(|| AlgebraError::UnknownArrow {
                        index,
                        name: n.clone(),
                    })?;
                    arrows.push(a);
                }
                if arrows.len() < 2 {
                    return Err(AlgebraError::NotAdmissible {
                        index,
                        path: names.clone(),
                    });
                }
                if arrows
                    .windows(2)
                    .any(|w| quiver.arrows[w[0]].target != quiver.arrows[w[1]].source)
                {
                    return Err(AlgebraError::NotComposable {
                        index,
                        path: names.clone(),
                    });
                }
                let p = Path {
                    source: quiver.arrows[arrows[0]].source,
                    target: quiver.arrows[*arrows.last().unwrap()].target,
                    arrows,
                };
                terms.push((c.clone(), p));
            }
            let (s, t) = (terms[0].1.source, terms[0].1.target);
            if terms.iter().any(|(_, p)| p.source != s || p.target != t) {
                return Err(AlgebraError::NotParallel { index });
            }
            rel_paths.push(terms);
        }

        let all_paths = enumerate_paths(&quiver);
        let mut blocks: BTreeMap<(usize, usize), Vec<Path>> = BTreeMap::new();
        for p in &all_paths {
            blocks.entry((p.source, p.target)).or_default().push(p.clone());
        }
        for ps in blocks.values_mut() {
            // Descending: largest (leading) path first.
            ps.sort_by(|a, b| leading_key(&quiver, b).cmp(&leading_key(&quiver, a)));
        }

        // Ideal generators per block.
        let mut generators: BTreeMap<(usize, usize), Vec<Combination>> = BTreeMap::new();
        for r in &rel_paths {
            let (rs, rt) = (r[0].1.source, r[0].1.target);
            let before: Vec<&Path> = all_paths.iter().filter(|v| v.target == rs).collect();
            let after: Vec<&Path> = all_paths.iter().filter(|u| u.source == rt).collect();
            for v in &before {
                for u in &after {
                    let g: Vec<(Rat, Path)> =
                        r.iter().map(|(c, p)| (c.clone(), v.then(p).then(u))).collect();
                    generators.entry((v.source, u.target)).or_default().push(g);
                }
            }
        }

        // Per block: normal paths and the reduction of every path.
        let mut reductions: HashMap<Path, Vec<(Rat, Path)>> = HashMap::new();
        let mut basis = Vec::new();
        for (key, ps) in &blocks {
            let pos: HashMap<&Path, usize> = ps.iter().enumerate().map(|(i, p)| (p, i)).collect();
            let gens = generators.get(key).map(Vec::as_slice).unwrap_or(&[]);
            let mut m = RatMatrix::zeros(gens.len(), ps.len());
            for (gi, g) in gens.iter().enumerate() {
                for (c, p) in g {
                    let j = pos[p];
                    m[(gi, j)] = &m[(gi, j)] + c;
                }
            }
            let (r, pivots) = m.rref();
            let normal: Vec<usize> = (0..ps.len()).filter(|j| !pivots.contains(j)).collect();
            for &j in &normal {
                basis.push(ps[j].clone());
                reductions.insert(ps[j].clone(), vec![(Rat::one(), ps[j].clone())]);
            }
            for (row, &pc) in pivots.iter().enumerate() {
                let red = normal
                    .iter()
                    .filter(|&&j| !r[(row, j)].is_zero())
                    .map(|&j| (-&r[(row, j)], ps[j].clone()))
                    .collect();
                reductions.insert(ps[pc].clone(), red);
            }
        }
        basis.sort_by(|a, b| {
            (a.len(), a.source, a.target, leading_key(&quiver, a).1).cmp(&(
                b.len(),
                b.source,
                b.target,
                leading_key(&quiver, b).1,
            ))
        });
        let index: HashMap<Path, usize> =
            basis.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();

        let dim = basis.len();
        let mut mult = vec![vec![vec![Rat::zero(); dim]; dim]; dim];
        for (x, px) in basis.iter().enumerate() {
            for (y, py) in basis.iter().enumerate() {
                if px.source != py.target {
                    continue;
                }
                let prod = py.then(px);
                for (c, p) in &reductions[&prod] {
                    let k = index[p];
                    mult[x][y][k] = &mult[x][y][k] + c;
                }
            }
        }

        Ok(PathAlgebra {
            quiver,
            relations,
            basis,
            mult,
            index,
        })
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Path] {
        &self.basis
    }

    pub fn basis_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Coefficients of `basis[x] * basis[y]`.
    pub fn mult(&self, x: usize, y: usize) -> &[Rat] {
        &self.mult[x][y]
    }

    /// Product of two elements given as coefficient vectors over the basis.
    pub fn multiply(&self, x: &[Rat], y: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.mult[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &(&ab * c);
                    }
                }
            }
        }
        out
    }

    pub fn check_vertex(&self, i: usize) -> Result<(), AlgebraError> {
        if i == 0 || i > self.vertex_count() {
            return Err(AlgebraError::BadVertex {
                vertex: i,
                n: self.vertex_count(),
            });
        }
        Ok(())
    }

    /// Basis index of the trivial path `e_i`.
    pub fn idempotent(&self, i: usize) -> Result<usize, AlgebraError> {
        self.check_vertex(i)?;
        Ok(self.index[&Path::trivial(i)])
    }

    /// Basis paths from `i` to `j`, i.e. a basis of `e_j A e_i ≅ Hom(P_i, P_j)`.
    pub fn paths_between(&self, i: usize, j: usize) -> Vec<usize> {
        self.basis
            .iter()
            .enumerate()
            .filter(|(_, p)| p.source == i && p.target == j)
            .map(|(k, _)| k)
            .collect()
    }

    /// Arrow names of a basis path, in traversal order.
    pub fn path_names(&self, p: &Path) -> Vec<String> {
        p.arrows
            .iter()
            .map(|&a| self.quiver.arrows[a].name.clone())
            .collect()
    }

    pub fn path_label(&self, p: &Path) -> String {
        if p.is_trivial() {
            format!("e{}", p.source)
        } else {
            self.path_names(p).join("")
        }
    }

    /// Exhaustive associativity check on basis triples.
    pub fn is_associative(&self) -> bool {
        let d = self.dim();
        let unit = |i: usize| {
            let mut v = vec![Rat::zero(); d];
            v[i] = Rat::one();
            v
        };
        for x in 0..d {
            for y in 0..d {
                let xy = self.mult[x][y].clone();
                for z in 0..d {
                    let left = self.multiply(&xy, &unit(z));
                    let right = self.multiply(&unit(x), &self.mult[y][z]);
                    if left != right {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The sum of the vertex idempotents as a coefficient vector.
    pub fn unit(&self) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); self.dim()];
        for i in 1..=self.vertex_count() {
            v[self.index[&Path::trivial(i)]] = Rat::one();
        }
        v
    }

    /// Evaluates a relation in the basis; zero for every defining relation.
    pub fn evaluate(&self, r: &Relation) -> Option<Vec<Rat>> {
        let mut out = vec![Rat::zero(); self.dim()];
        for (c, names) in &r.terms {
            let mut acc = None::<Vec<Rat>>;
            for n in names {
                let a = self.quiver.arrow_index(n)?;
                let arrow = &self.quiver.arrows[a];
                let p = Path {
                    source: arrow.source,
                    target: arrow.target,
                    arrows: vec![a],
                };
                let mut v = vec![Rat::zero(); self.dim()];
                v[self.index[&p]] = Rat::one();
                // traversal order: next arrow multiplies on the left
                acc = Some(match acc {
                    None => v,
                    Some(prev) => self.multiply(&v, &prev),
                });
            }
            for (k, x) in acc?.into_iter().enumerate() {
                out[k] += &(c * &x);
            }
        }
        Some(out)
    }
}

impl fmt::Debug for PathAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.basis.iter().map(|p| self.path_label(p)).collect();
        f.debug_struct("PathAlgebra")
            .field("vertices", &self.quiver.vertex_count)
            .field("arrows", &self.quiver.arrows)
            .field("basis", &labels)
            .finish()
    }
}

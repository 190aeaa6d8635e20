use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::resolution::Resolution;
use super::DerivedError;
use crate::linalg::Rat;
use crate::modules::{direct_sum, Biproduct, Kernel, Rep, RepMap};
use crate::path_algebra::PathAlgebra;

struct CxData {
    alg: Arc<PathAlgebra>,
    lo: i64,
    terms: Vec<Rep>,
    // diffs[i]: terms[i] -> terms[i + 1]
    diffs: Vec<RepMap>,
    resolution: OnceLock<Arc<Resolution>>,
}

/// A bounded cochain complex of modules. Terms outside the stored window are
/// zero; zero terms at both ends are trimmed on construction.
#[derive(Clone)]
pub struct Cx(Arc<CxData>);

fn sign(k: i64) -> Rat {
    if k.rem_euclid(2) == 0 {
        Rat::one()
    } else {
        -Rat::one()
    }
}

pub(crate) fn sign_of(k: i64) -> Rat {
    sign(k)
}

impl Cx {
    /// Unchecked assembly: `diffs[i]` must map `terms[i]` to `terms[i+1]`.
    pub(crate) fn assemble(
        alg: &Arc<PathAlgebra>,
        lo: i64,
        mut terms: Vec<Rep>,
        mut diffs: Vec<RepMap>,
    ) -> Cx {
        debug_assert_eq!(diffs.len() + 1, terms.len().max(1));
        let mut lo = lo;
        while terms.first().is_some_and(Rep::is_zero) {
            terms.remove(0);
            if !diffs.is_empty() {
                diffs.remove(0);
            }
            lo += 1;
        }
        while terms.last().is_some_and(Rep::is_zero) {
            terms.pop();
            diffs.pop();
        }
        if terms.is_empty() {
            lo = 0;
            diffs.clear();
        }
        Cx(Arc::new(CxData {
            alg: Arc::clone(alg),
            lo,
            terms,
            diffs,
            resolution: OnceLock::new(),
        }))
    }

    pub fn zero(alg: &Arc<PathAlgebra>) -> Cx {
        Cx::assemble(alg, 0, Vec::new(), Vec::new())
    }

    /// A module placed in degree 0.
    pub fn module(m: Rep) -> Cx {
        let alg = Arc::clone(m.algebra());
        Cx::assemble(&alg, 0, vec![m], Vec::new())
    }

    /// Builds a complex from sparse terms and differentials (missing ones are
    /// zero), checking shapes and `d ∘ d = 0`.
    pub fn from_parts(
        alg: &Arc<PathAlgebra>,
        terms: BTreeMap<i64, Rep>,
        diffs: BTreeMap<i64, RepMap>,
    ) -> Result<Cx, String> {
        let zero = Rep::zero(alg);
        let (Some(&lo), Some(&hi)) = (terms.keys().next(), terms.keys().next_back()) else {
            if diffs.values().any(|d| !d.is_zero()) {
                return Err("differential without terms".into());
            }
            return Ok(Cx::zero(alg));
        };
        for (&k, d) in &diffs {
            let s = terms.get(&k).unwrap_or(&zero);
            let t = terms.get(&(k + 1)).unwrap_or(&zero);
            if d.source().dims() != s.dims() || d.target().dims() != t.dims() {
                return Err(format!("differential {k} does not match the terms"));
            }
        }
        let reps: Vec<Rep> = (lo..=hi).map(|k| terms.get(&k).unwrap_or(&zero).clone()).collect();
        let ds: Vec<RepMap> = (lo..hi)
            .map(|k| {
                let (s, t) = (&reps[(k - lo) as usize], &reps[(k - lo + 1) as usize]);
                match diffs.get(&k) {
                    Some(d) => d.with_endpoints(s, t),
                    None => RepMap::zero(s, t),
                }
            })
            .collect();
        for (i, pair) in ds.windows(2).enumerate() {
            if !pair[1].after(&pair[0]).is_zero() {
                return Err(format!("d∘d is nonzero at degree {}", lo + i as i64));
            }
        }
        Ok(Cx::assemble(alg, lo, reps, ds))
    }

    pub fn algebra(&self) -> &Arc<PathAlgebra> {
        &self.0.alg
    }

    pub fn is_zero(&self) -> bool {
        self.0.terms.is_empty()
    }

    /// Lowest and highest nonzero degree.
    pub fn range(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            None
        } else {
            Some((self.0.lo, self.0.lo + self.0.terms.len() as i64 - 1))
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        let (lo, hi) = self.range().unwrap_or((0, -1));
        lo..=hi
    }

    pub fn term(&self, k: i64) -> Rep {
        self.term_ref(k)
            .cloned()
            .unwrap_or_else(|| Rep::zero(&self.0.alg))
    }

    pub(crate) fn term_ref(&self, k: i64) -> Option<&Rep> {
        let i = k - self.0.lo;
        if i < 0 {
            return None;
        }
        self.0.terms.get(i as usize)
    }

    /// The differential out of degree `k`.
    pub fn diff(&self, k: i64) -> RepMap {
        let i = k - self.0.lo;
        if i >= 0 && (i as usize) < self.0.diffs.len() {
            return self.0.diffs[i as usize].clone();
        }
        RepMap::zero(&self.term(k), &self.term(k + 1))
    }

    pub fn total_dim(&self) -> usize {
        self.0.terms.iter().map(Rep::total_dim).sum()
    }

    /// `X[k]`: terms move to degree `i - k`, differentials pick up `(-1)^k`.
    pub fn shift(&self, k: i64) -> Cx {
        if k == 0 {
            return self.clone();
        }
        let s = sign(k);
        let diffs = self.0.diffs.iter().map(|d| d.scale(&s)).collect();
        Cx::assemble(&self.0.alg, self.0.lo - k, self.0.terms.clone(), diffs)
    }

    /// The module if the complex is a single term in degree 0.
    pub fn as_module(&self) -> Option<Rep> {
        match self.range() {
            None => Some(Rep::zero(&self.0.alg)),
            Some((0, 0)) => Some(self.0.terms[0].clone()),
            _ => None,
        }
    }

    pub fn cohomology(&self, i: i64) -> Cohomology {
        let z = self.diff(i).kernel();
        let b = self
            .diff(i - 1)
            .lift_through_mono(&z.inclusion)
            .expect("boundaries are cycles");
        let c = b.cokernel();
        Cohomology {
            module: c.module,
            cycles: z,
            projection: c.projection,
        }
    }

    /// `(degree, H^degree)` for every degree with nonzero cohomology.
    pub fn cohomology_dims(&self) -> Vec<(i64, Vec<usize>)> {
        self.degrees()
            .filter_map(|i| {
                let h = self.cohomology(i).module;
                (!h.is_zero()).then(|| (i, h.dims().to_vec()))
            })
            .collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|i| self.cohomology(i).module.is_zero())
    }

    /// Direct sum with the canonical injections and projections.
    pub fn direct_sum(parts: &[Cx]) -> CxSum {
        let alg = Arc::clone(parts.first().expect("nonempty direct sum").algebra());
        let lo = parts.iter().filter_map(|p| p.range().map(|r| r.0)).min().unwrap_or(0);
        let hi = parts.iter().filter_map(|p| p.range().map(|r| r.1)).max().unwrap_or(-1);
        let sums: Vec<Biproduct> = (lo..=hi)
            .map(|k| direct_sum(&parts.iter().map(|p| p.term(k)).collect::<Vec<_>>()))
            .collect();
        let diffs = (lo..hi)
            .map(|k| {
                let (s, t) = (&sums[(k - lo) as usize], &sums[(k - lo + 1) as usize]);
                let mut acc = RepMap::zero(&s.sum, &t.sum);
                for (i, p) in parts.iter().enumerate() {
                    acc = acc.add(&t.injections[i].after(&p.diff(k)).after(&s.projections[i]));
                }
                acc
            })
            .collect();
        let terms = sums.iter().map(|b| b.sum.clone()).collect();
        let sum = Cx::assemble(&alg, lo, terms, diffs);
        let injections = parts
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let comps = (lo..=hi)
                    .map(|k| (k, sums[(k - lo) as usize].injections[i].clone()))
                    .collect();
                CxMap::from_comps(p, &sum, 0, comps)
            })
            .collect();
        let projections = parts
            .iter()
            .enumerate()
            .map(|(i, p)| {
                let comps = (lo..=hi)
                    .map(|k| (k, sums[(k - lo) as usize].projections[i].clone()))
                    .collect();
                CxMap::from_comps(&sum, p, 0, comps)
            })
            .collect();
        CxSum {
            sum,
            injections,
            projections,
        }
    }

    /// Structural equality of terms and differentials.
    pub fn same_as(&self, other: &Cx) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.lo == other.0.lo
                && self.0.terms == other.0.terms
                && self.0.diffs.len() == other.0.diffs.len()
                && self
                    .0
                    .diffs
                    .iter()
                    .zip(&other.0.diffs)
                    .all(|(a, b)| a.blocks() == b.blocks()))
    }

    /// Projective resolution, computed once per complex and shared by clones.
    pub fn resolution(&self) -> Arc<Resolution> {
        Arc::clone(
            self.0
                .resolution
                .get_or_init(|| Arc::new(Resolution::compute(self))),
        )
    }
}

impl fmt::Debug for Cx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cx[")?;
        for (i, t) in self.0.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " -> ")?;
            }
            write!(f, "{}:{:?}", self.0.lo + i as i64, t.dims())?;
        }
        write!(f, "]")
    }
}

/// `H^i = ker d^i / im d^{i-1}` with its presentation data.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub module: Rep,
    pub cycles: Kernel,
    /// Cycles onto cohomology.
    pub projection: RepMap,
}

#[derive(Clone, Debug)]
pub struct CxSum {
    pub sum: Cx,
    pub injections: Vec<CxMap>,
    pub projections: Vec<CxMap>,
}

/// A graded map of complexes of some degree `d`: components
/// `f^k: X^k -> Y^{k+d}`. It is a cocycle of the Hom complex when
/// `d_Y f = (-1)^d f d_X`; for `d = 0` that is an ordinary chain map, and a
/// cocycle of degree `d` is the same thing as a chain map `X -> Y[d]`.
#[derive(Clone)]
pub struct CxMap {
    source: Cx,
    target: Cx,
    degree: i64,
    comps: BTreeMap<i64, RepMap>,
}

impl CxMap {
    pub(crate) fn from_comps(
        source: &Cx,
        target: &Cx,
        degree: i64,
        comps: BTreeMap<i64, RepMap>,
    ) -> CxMap {
        let comps = comps
            .into_iter()
            .filter(|(k, f)| {
                source.term_ref(*k).is_some() && target.term_ref(k + degree).is_some() && !f.is_zero()
            })
            .map(|(k, f)| (k, f.with_endpoints(&source.term(k), &target.term(k + degree))))
            .collect();
        CxMap {
            source: source.clone(),
            target: target.clone(),
            degree,
            comps,
        }
    }

    /// Checked constructor for degree-0 chain maps.
    pub fn new(source: &Cx, target: &Cx, comps: BTreeMap<i64, RepMap>) -> Result<CxMap, DerivedError> {
        Self::graded(source, target, 0, comps)
    }

    /// Checked constructor for cocycles of any degree.
    pub fn graded(
        source: &Cx,
        target: &Cx,
        degree: i64,
        comps: BTreeMap<i64, RepMap>,
    ) -> Result<CxMap, DerivedError> {
        for (&k, f) in &comps {
            if f.source().dims() != source.term(k).dims()
                || f.target().dims() != target.term(k + degree).dims()
            {
                return Err(DerivedError::ComponentShape(k));
            }
            if !f.is_natural() {
                return Err(DerivedError::NotNatural(k));
            }
        }
        let f = CxMap::from_comps(source, target, degree, comps);
        match f.cocycle_failure() {
            Some(k) => Err(DerivedError::NotChainMap(k)),
            None => Ok(f),
        }
    }

    pub fn zero(source: &Cx, target: &Cx, degree: i64) -> CxMap {
        CxMap::from_comps(source, target, degree, BTreeMap::new())
    }

    pub fn identity(x: &Cx) -> CxMap {
        let comps = x.degrees().map(|k| (k, RepMap::identity(&x.term(k)))).collect();
        CxMap::from_comps(x, x, 0, comps)
    }

    pub fn source(&self) -> &Cx {
        &self.source
    }

    pub fn target(&self) -> &Cx {
        &self.target
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn comp(&self, k: i64) -> RepMap {
        match self.comps.get(&k) {
            Some(f) => f.clone(),
            None => RepMap::zero(&self.source.term(k), &self.target.term(k + self.degree)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(RepMap::is_zero)
    }

    /// `D f = d_Y f - (-1)^d f d_X` as a graded map of degree `d + 1`.
    pub fn differential(&self) -> CxMap {
        let s = sign(self.degree);
        let mut comps = BTreeMap::new();
        let lo = self.source.range().map_or(0, |r| r.0) - 1;
        let hi = self.source.range().map_or(-1, |r| r.1);
        for k in lo..=hi {
            let a = self.target.diff(k + self.degree).after(&self.comp(k));
            let b = self.comp(k + 1).after(&self.source.diff(k)).scale(&s);
            comps.insert(k, a.sub(&b));
        }
        CxMap::from_comps(&self.source, &self.target, self.degree + 1, comps)
    }

    /// First degree where the cocycle condition fails.
    pub fn cocycle_failure(&self) -> Option<i64> {
        let d = self.differential();
        d.comps.iter().find(|(_, f)| !f.is_zero()).map(|(&k, _)| k)
    }

    pub fn is_cocycle(&self) -> bool {
        self.cocycle_failure().is_none()
    }

    /// `self ∘ g`: components `self^{k+|g|} ∘ g^k`.
    pub fn after(&self, g: &CxMap) -> CxMap {
        let comps = g
            .comps
            .iter()
            .map(|(&k, gk)| (k, self.comp(k + g.degree).after(gk)))
            .collect();
        CxMap::from_comps(&g.source, &self.target, g.degree + self.degree, comps)
    }

    pub fn add(&self, other: &CxMap) -> CxMap {
        assert_eq!(self.degree, other.degree, "sum of maps of different degrees");
        let mut comps = self.comps.clone();
        for (&k, f) in &other.comps {
            let v = match comps.get(&k) {
                Some(e) => e.add(f),
                None => f.clone(),
            };
            comps.insert(k, v);
        }
        CxMap::from_comps(&self.source, &self.target, self.degree, comps)
    }

    pub fn scale(&self, c: &Rat) -> CxMap {
        let comps = self.comps.iter().map(|(&k, f)| (k, f.scale(c))).collect();
        CxMap::from_comps(&self.source, &self.target, self.degree, comps)
    }

    pub fn neg(&self) -> CxMap {
        self.scale(&-Rat::one())
    }

    pub fn sub(&self, other: &CxMap) -> CxMap {
        self.add(&other.neg())
    }

    /// `f[s]: X[s] -> Y[s]` with components `f^{k+s}`.
    pub fn shift(&self, s: i64) -> CxMap {
        let src = self.source.shift(s);
        let tgt = self.target.shift(s);
        let comps = self.comps.iter().map(|(&k, f)| (k - s, f.clone())).collect();
        CxMap::from_comps(&src, &tgt, self.degree, comps)
    }

    /// The same components viewed between other (termwise equal) endpoints.
    pub fn with_endpoints(&self, source: &Cx, target: &Cx) -> CxMap {
        CxMap::from_comps(source, target, self.degree, self.comps.clone())
    }

    /// The degree-0 chain map `X -> Y[d]` with the same components.
    pub fn as_chain_map(&self) -> CxMap {
        let tgt = self.target.shift(self.degree);
        CxMap::from_comps(&self.source, &tgt, 0, self.comps.clone())
    }

    /// Induced map `H^i(X) -> H^{i+d}(Y)`.
    pub fn on_cohomology(&self, i: i64) -> RepMap {
        let hx = self.source.cohomology(i);
        let hy = self.target.cohomology(i + self.degree);
        let into_y = self
            .comp(i)
            .after(&hx.cycles.inclusion)
            .lift_through_mono(&hy.cycles.inclusion)
            .expect("cycles map to cycles");
        hy.projection
            .after(&into_y)
            .descend_through_epi(&hx.projection)
            .expect("boundaries map to boundaries")
    }

    pub fn is_quasi_iso(&self) -> bool {
        assert_eq!(self.degree, 0, "quasi-isomorphisms have degree 0");
        cone(self).cone.is_acyclic()
    }

    pub fn components(&self) -> impl Iterator<Item = (i64, &RepMap)> {
        self.comps.iter().map(|(&k, f)| (k, f))
    }
}

impl fmt::Debug for CxMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "CxMap({:?} -> {:?}, degree {})",
            self.source, self.target, self.degree
        )
    }
}

/// The mapping cone `C^i = X^{i+1} ⊕ Y^i` of a chain map `f: X -> Y` with
/// `d = [[-d_X, 0], [f, d_Y]]`, together with the triangle maps.
#[derive(Clone, Debug)]
pub struct Cone {
    pub cone: Cx,
    /// `Y -> C(f)`.
    pub inclusion: CxMap,
    /// `C(f) -> X` of degree 1, i.e. the chain map `C(f) -> X[1]`.
    pub projection: CxMap,
}

pub fn cone(f: &CxMap) -> Cone {
    assert_eq!(f.degree, 0, "cone of a degree-0 chain map");
    let x = &f.source;
    let y = &f.target;
    let alg = x.algebra();
    let lo = x
        .range()
        .map(|r| r.0 - 1)
        .into_iter()
        .chain(y.range().map(|r| r.0))
        .min()
        .unwrap_or(0);
    let hi = x
        .range()
        .map(|r| r.1 - 1)
        .into_iter()
        .chain(y.range().map(|r| r.1))
        .max()
        .unwrap_or(-1);
    let sums: Vec<Biproduct> = (lo..=hi)
        .map(|i| direct_sum(&[x.term(i + 1), y.term(i)]))
        .collect();
    let diffs = (lo..hi)
        .map(|i| {
            let (s, t) = (&sums[(i - lo) as usize], &sums[(i - lo + 1) as usize]);
            let px = &s.projections[0];
            let py = &s.projections[1];
            let ix = &t.injections[0];
            let iy = &t.injections[1];
            let dx = x.diff(i + 1).with_endpoints(px.target(), ix.source());
            let fx = f.comp(i + 1).with_endpoints(px.target(), iy.source());
            let dy = y.diff(i).with_endpoints(py.target(), iy.source());
            ix.after(&dx.neg()).after(px)
                .add(&iy.after(&fx).after(px))
                .add(&iy.after(&dy).after(py))
        })
        .collect();
    let terms = sums.iter().map(|b| b.sum.clone()).collect();
    let c = Cx::assemble(alg, lo, terms, diffs);
    let inc = (lo..=hi)
        .map(|i| (i, sums[(i - lo) as usize].injections[1].clone()))
        .collect();
    let proj = (lo..=hi)
        .map(|i| (i, sums[(i - lo) as usize].projections[0].clone()))
        .collect();
    Cone {
        inclusion: CxMap::from_comps(y, &c, 0, inc),
        projection: CxMap::from_comps(&c, x, 1, proj),
        cone: c,
    }
}

/// Smart truncation `τ≤l X -> X -> τ≥l+1 X`.
#[derive(Clone, Debug)]
pub struct StdTruncation {
    pub lower: Cx,
    pub upper: Cx,
    pub inclusion: CxMap,
    pub projection: CxMap,
}

/// `τ≤l X = [.. X^{l-1} -> Z^l]` and `τ≥l+1 X = [X^{l+1}/im d^l -> X^{l+2} ..]`.
pub fn truncate_std(x: &Cx, level: i64) -> StdTruncation {
    let alg = x.algebra();
    let (lo, hi) = x.range().unwrap_or((level, level));
    let z = x.diff(level).kernel();
    // lower part
    let mut lterms = Vec::new();
    let mut ldiffs = Vec::new();
    let llo = lo.min(level);
    for k in llo..=level {
        lterms.push(if k == level { z.module.clone() } else { x.term(k) });
        if k < level {
            let d = if k + 1 == level {
                x.diff(k)
                    .lift_through_mono(&z.inclusion)
                    .expect("d∘d = 0 lands in the cycles")
            } else {
                x.diff(k)
            };
            ldiffs.push(d);
        }
    }
    let lower = Cx::assemble(alg, llo, lterms, ldiffs);
    let inc = (llo..=level)
        .map(|k| {
            let f = if k == level {
                z.inclusion.clone()
            } else {
                RepMap::identity(&x.term(k))
            };
            (k, f)
        })
        .collect();
    let inclusion = CxMap::from_comps(&lower, x, 0, inc);
    // upper part
    let q = x.diff(level).cokernel();
    let uhi = hi.max(level + 1);
    let mut uterms = Vec::new();
    let mut udiffs = Vec::new();
    for k in (level + 1)..=uhi {
        uterms.push(if k == level + 1 { q.module.clone() } else { x.term(k) });
        if k < uhi {
            let d = if k == level + 1 {
                x.diff(k)
                    .descend_through_epi(&q.projection)
                    .expect("d∘d = 0 vanishes on boundaries")
            } else {
                x.diff(k)
            };
            udiffs.push(d);
        }
    }
    let upper = Cx::assemble(alg, level + 1, uterms, udiffs);
    let proj = ((level + 1)..=uhi)
        .map(|k| {
            let f = if k == level + 1 {
                q.projection.clone()
            } else {
                RepMap::identity(&x.term(k))
            };
            (k, f)
        })
        .collect();
    let projection = CxMap::from_comps(x, &upper, 0, proj);
    StdTruncation {
        lower,
        upper,
        inclusion,
        projection,
    }
}

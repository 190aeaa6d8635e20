use std::collections::BTreeMap;

use super::complex::{cone, Cx, CxMap};
use super::hom::{roof_class, DClass};
use super::DerivedError;
use crate::modules::{Rep, RepMap};

/// `0 -> A -> B -> C -> 0` in `mod-A`.
#[derive(Clone, Debug)]
pub struct ShortExact {
    pub left: Rep,
    pub middle: Rep,
    pub right: Rep,
    pub mono: RepMap,
    pub epi: RepMap,
}

impl ShortExact {
    /// Checks exactness by ranks at every vertex.
    pub fn new(mono: RepMap, epi: RepMap) -> Result<ShortExact, DerivedError> {
        if mono.target().dims() != epi.source().dims() {
            return Err(DerivedError::NotExact("maps are not composable".into()));
        }
        if !mono.is_natural() || !epi.is_natural() {
            return Err(DerivedError::NotExact("a map is not a module homomorphism".into()));
        }
        if !mono.is_injective() {
            return Err(DerivedError::NotExact("first map is not injective".into()));
        }
        if !epi.is_surjective() {
            return Err(DerivedError::NotExact("second map is not surjective".into()));
        }
        if !epi.after(&mono).is_zero() {
            return Err(DerivedError::NotExact("composite is nonzero".into()));
        }
        let left = mono.source().clone();
        let middle = mono.target().clone();
        let right = epi.target().clone();
        if left.total_dim() + right.total_dim() != middle.total_dim() {
            return Err(DerivedError::NotExact("not exact in the middle".into()));
        }
        let epi = epi.with_endpoints(&middle, &right);
        Ok(ShortExact {
            left,
            middle,
            right,
            mono,
            epi,
        })
    }

    pub fn same_as(&self, other: &ShortExact) -> bool {
        self.left == other.left
            && self.middle == other.middle
            && self.right == other.right
            && self.mono.blocks() == other.mono.blocks()
            && self.epi.blocks() == other.epi.blocks()
    }
}

/// A distinguished triangle `X -f-> Y -g-> Z -h-> X[1]` where `f`, `g` are
/// chain maps and `h` is a class in `Hom(Z, X[1])`.
#[derive(Clone, Debug)]
pub struct Triangle {
    pub x: Cx,
    pub y: Cx,
    pub z: Cx,
    pub f: CxMap,
    pub g: CxMap,
    pub h: DClass,
}

impl Triangle {
    /// The standard triangle `X -> Y -> C(f) -> X[1]` of a chain map.
    pub fn of_cone(f: &CxMap) -> Triangle {
        let c = cone(f);
        let q = CxMap::identity(&c.cone);
        Triangle {
            x: f.source().clone(),
            y: f.target().clone(),
            z: c.cone.clone(),
            f: f.clone(),
            g: c.inclusion,
            h: roof_class(&q, &c.projection),
        }
    }
}

fn module_map(x: &Cx, y: &Cx, f: &CxMap, hx: &Rep, hy: &Rep) -> RepMap {
    if x.as_module().is_some() && y.as_module().is_some() {
        return f.comp(0).with_endpoints(hx, hy);
    }
    f.on_cohomology(0).with_endpoints(hx, hy)
}

fn heart_object(x: &Cx) -> Option<Rep> {
    if let Some(m) = x.as_module() {
        return Some(m);
    }
    let dims = x.cohomology_dims();
    if dims.iter().all(|(i, _)| *i == 0) {
        Some(x.cohomology(0).module)
    } else {
        None
    }
}

/// The triangle `A -> B -> C -> A[1]` of a short exact sequence; the
/// connecting class comes from the roof `C <- C(i) -> A[1]`.
pub fn ses_to_triangle(s: &ShortExact) -> Triangle {
    let (a, b, c) = (
        Cx::module(s.left.clone()),
        Cx::module(s.middle.clone()),
        Cx::module(s.right.clone()),
    );
    let f = CxMap::from_comps(&a, &b, 0, BTreeMap::from([(0, s.mono.clone())]));
    let g = CxMap::from_comps(&b, &c, 0, BTreeMap::from([(0, s.epi.clone())]));
    let cn = cone(&f);
    // C(f)^0 = 0 ⊕ B, and the comparison map is the epimorphism there
    let back = cn.inclusion.comp(0).inverse().expect("C(f)^0 is B");
    let q = CxMap::from_comps(&cn.cone, &c, 0, BTreeMap::from([(0, s.epi.after(&back))]));
    Triangle {
        x: a,
        y: b,
        z: c,
        f,
        g,
        h: roof_class(&q, &cn.projection),
    }
}

/// Recovers the short exact sequence of a triangle whose vertices lie in
/// the standard heart; `None` when some vertex has cohomology outside
/// degree 0.
pub fn triangle_to_ses(t: &Triangle) -> Option<ShortExact> {
    let hx = heart_object(&t.x)?;
    let hy = heart_object(&t.y)?;
    let hz = heart_object(&t.z)?;
    let f = module_map(&t.x, &t.y, &t.f, &hx, &hy);
    let g = module_map(&t.y, &t.z, &t.g, &hy, &hz);
    ShortExact::new(f, g).ok()
}

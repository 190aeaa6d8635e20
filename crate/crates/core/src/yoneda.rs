//! Yoneda n-extensions and their comparison with derived Hom.
//!
//! An n-extension `0 -> B -> X_1 -> ... -> X_n -> A -> 0` is sent to the
//! composite of the connecting classes of its short exact pieces, an
//! element of `Hom(A, B[n])`. Classes of extensions are compared through
//! this image.

use std::sync::Arc;

use crate::derived::{derived_hom, ses_to_triangle, Cx, DClass, DerivedHom, ShortExact};
use crate::linalg::{Rat, RatMatrix};
use crate::modules::{direct_sum, from_sum, into_sum, Rep, RepMap};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum YonedaError {
    #[error("an n-extension needs n >= 1 middle terms")]
    Empty,
    #[error("maps {0} and {1} are not composable")]
    NotComposable(usize, usize),
    #[error("map {0} is not a module homomorphism")]
    NotNatural(usize),
    #[error("sequence is not exact at position {0}")]
    NotExact(usize),
    #[error("endpoint mismatch: {0}")]
    Mismatch(&'static str),
    #[error("class endpoints must be modules in degree 0")]
    NotModules,
    #[error("class does not lie in the image of the comparison map")]
    NotInImage,
}

/// `0 -> B -> X_1 -> ... -> X_n -> A -> 0` with maps `ξ_0, ..., ξ_n`.
#[derive(Clone, Debug)]
pub struct YExt {
    maps: Vec<RepMap>,
}

fn exact_at(f: &RepMap, g: &RepMap) -> bool {
    if !g.after(f).is_zero() {
        return false;
    }
    f.blocks()
        .iter()
        .zip(g.blocks())
        .zip(f.target().dims())
        .all(|((a, b), &d)| a.rank() + b.rank() == d)
}

impl YExt {
    /// Validates composability, naturality and exactness at every spot.
    pub fn new(maps: Vec<RepMap>) -> Result<YExt, YonedaError> {
        if maps.len() < 2 {
            return Err(YonedaError::Empty);
        }
        for (i, m) in maps.iter().enumerate() {
            if !m.is_natural() {
                return Err(YonedaError::NotNatural(i));
            }
        }
        for i in 1..maps.len() {
            if maps[i - 1].target() != maps[i].source() {
                return Err(YonedaError::NotComposable(i - 1, i));
            }
        }
        if !maps[0].is_injective() {
            return Err(YonedaError::NotExact(0));
        }
        for i in 1..maps.len() {
            if !exact_at(&maps[i - 1], &maps[i]) {
                return Err(YonedaError::NotExact(i));
            }
        }
        if !maps[maps.len() - 1].is_surjective() {
            return Err(YonedaError::NotExact(maps.len()));
        }
        Ok(YExt { maps })
    }

    /// The split class: `B -> B ⊕ A -> A` for `n = 1`, otherwise
    /// `B = B -> 0 -> ... -> 0 -> A = A`.
    pub fn split(a: &Rep, b: &Rep, n: usize) -> YExt {
        assert!(n >= 1);
        if n == 1 {
            let s = b.direct_sum(a);
            return YExt {
                maps: vec![s.injections[0].clone(), s.projections[1].clone()],
            };
        }
        let z = Rep::zero(b.algebra());
        let mut middle = vec![b.clone()];
        middle.resize(n - 1, z);
        middle.push(a.clone());
        let mut maps = vec![RepMap::identity(b)];
        for w in middle.windows(2) {
            maps.push(RepMap::zero(&w[0], &w[1]));
        }
        maps.push(RepMap::identity(a));
        YExt { maps }
    }

    pub fn n(&self) -> usize {
        self.maps.len() - 1
    }

    /// `B`.
    pub fn left(&self) -> &Rep {
        self.maps[0].source()
    }

    /// `A`.
    pub fn right(&self) -> &Rep {
        self.maps[self.n()].target()
    }

    /// `X_1, ..., X_n`.
    pub fn middle(&self) -> Vec<Rep> {
        self.maps[..self.n()].iter().map(|m| m.target().clone()).collect()
    }

    /// `ξ_0, ..., ξ_n`.
    pub fn maps(&self) -> &[RepMap] {
        &self.maps
    }

    /// The short exact pieces `0 -> C_{i-1} -> X_i -> C_i -> 0` with
    /// `C_0 = B`, `C_n = A` and `C_i = im ξ_i` in between.
    pub fn pieces(&self) -> Vec<ShortExact> {
        let n = self.n();
        let mut out = Vec::with_capacity(n);
        let mut mono = self.maps[0].clone();
        for i in 1..=n {
            let (epi, next) = if i == n {
                (self.maps[n].clone(), None)
            } else {
                let im = self.maps[i].image();
                (im.epi, Some(im.mono))
            };
            out.push(ShortExact::new(mono.clone(), epi.clone()).expect("pieces of an exact sequence"));
            if let Some(m) = next {
                // the next piece starts from C_i sitting inside X_{i+1}
                mono = m;
            }
        }
        out
    }
}

/// `g·X`: replaces `0 -> B -> X_1` by `0 -> C -> coker(B -> C ⊕ X_1)`.
pub fn pushout(g: &RepMap, x: &YExt) -> Result<YExt, YonedaError> {
    if g.source() != x.left() {
        return Err(YonedaError::Mismatch("pushout map source is not the left end"));
    }
    let (xi0, xi1) = (&x.maps[0], &x.maps[1]);
    let sum = direct_sum(&[g.target().clone(), xi0.target().clone()]);
    let m = into_sum(&sum, &[g.neg(), xi0.clone()], x.left());
    let q = m.cokernel();
    let new0 = q.projection.after(&sum.injections[0]);
    let outgoing = from_sum(&sum, &[RepMap::zero(g.target(), xi1.target()), xi1.clone()], xi1.target());
    let new1 = outgoing
        .descend_through_epi(&q.projection)
        .expect("outgoing map vanishes on the pushout relations");
    let mut maps = vec![new0, new1];
    maps.extend_from_slice(&x.maps[2..]);
    YExt::new(maps)
}

/// `X·h`: replaces `X_n -> A -> 0` by `ker(X_n ⊕ D -> A) -> D -> 0`.
pub fn pullback(x: &YExt, h: &RepMap) -> Result<YExt, YonedaError> {
    if h.target() != x.right() {
        return Err(YonedaError::Mismatch("pullback map target is not the right end"));
    }
    let n = x.n();
    let (prev, last) = (&x.maps[n - 1], &x.maps[n]);
    let sum = direct_sum(&[last.source().clone(), h.source().clone()]);
    let m = from_sum(&sum, &[last.clone(), h.neg()], x.right());
    let k = m.kernel();
    let new_last = sum.projections[1].after(&k.inclusion);
    let incoming = into_sum(&sum, &[prev.clone(), RepMap::zero(prev.source(), h.source())], prev.source());
    let new_prev = incoming
        .lift_through_mono(&k.inclusion)
        .expect("incoming map lands in the pullback");
    let mut maps = x.maps[..n - 1].to_vec();
    maps.push(new_prev);
    maps.push(new_last);
    YExt::new(maps)
}

fn termwise_sum(x: &YExt, y: &YExt) -> YExt {
    let mut maps = Vec::with_capacity(x.maps.len());
    for (f, g) in x.maps.iter().zip(&y.maps) {
        let s = direct_sum(&[f.source().clone(), g.source().clone()]);
        let t = direct_sum(&[f.target().clone(), g.target().clone()]);
        let m = into_sum(
            &t,
            &[f.after(&s.projections[0]), g.after(&s.projections[1])],
            &s.sum,
        );
        maps.push(m);
    }
    YExt::new(maps).expect("direct sum of exact sequences is exact")
}

/// `∇_B · (X ⊕ Y) · Δ_A`.
pub fn baer_sum(x: &YExt, y: &YExt) -> Result<YExt, YonedaError> {
    if x.n() != y.n() || x.left() != y.left() || x.right() != y.right() {
        return Err(YonedaError::Mismatch("Baer sum needs equal length and endpoints"));
    }
    let (a, b) = (x.right(), x.left());
    let s = termwise_sum(x, y);
    let bb = direct_sum(&[b.clone(), b.clone()]);
    let codiag = from_sum(&bb, &[RepMap::identity(b), RepMap::identity(b)], b).with_endpoints(s.left(), b);
    let aa = direct_sum(&[a.clone(), a.clone()]);
    let diag = into_sum(&aa, &[RepMap::identity(a), RepMap::identity(a)], a).with_endpoints(a, s.right());
    pullback(&pushout(&codiag, &s)?, &diag)
}

/// For `x: 0 -> B -> ... -> A -> 0` and `y: 0 -> C -> ... -> B -> 0`, the
/// concatenation `0 -> C -> ... -> Y_m -> X_1 -> ... -> A -> 0`.
pub fn yoneda_product(x: &YExt, y: &YExt) -> Result<YExt, YonedaError> {
    if y.right() != x.left() {
        return Err(YonedaError::Mismatch("product needs the right end of the second to be the left end of the first"));
    }
    let m = y.n();
    let mut maps = y.maps[..m].to_vec();
    maps.push(x.maps[0].after(&y.maps[m]));
    maps.extend_from_slice(&x.maps[1..]);
    YExt::new(maps)
}

/// The class in `Hom(A, B[n])` obtained by composing the connecting maps
/// `A -> C_{n-1}[1] -> ... -> B[n]` of the pieces.
pub fn f_map(x: &YExt) -> DClass {
    let group = derived_hom(&Cx::module(x.right().clone()), &Cx::module(x.left().clone()), x.n() as i64);
    f_map_into(x, &group)
}

/// [`f_map`] expressed in a given basis of `Hom(A, B[n])`.
pub fn f_map_into(x: &YExt, group: &Arc<DerivedHom>) -> DClass {
    let pieces = x.pieces();
    let mut acc: Option<DClass> = None;
    for piece in pieces.iter().rev() {
        let h = ses_to_triangle(piece).h;
        acc = Some(match acc {
            None => h,
            Some(a) => a.then(&h),
        });
    }
    acc.expect("at least one piece").in_group(group)
}

/// An n-extension with `f_map = c`, built by pushing the truncated
/// projective resolution `0 -> Ω -> P^{-n+1} -> ... -> P^0 -> A -> 0`
/// out along the map `Ω -> B` induced by a representative of `c`.
pub fn splice_from_class(c: &DClass) -> Result<YExt, YonedaError> {
    let hom = c.hom();
    let n = hom.shift();
    if n < 1 {
        return Err(YonedaError::Empty);
    }
    let (Some(a), Some(b)) = (hom.source().as_module(), hom.target().as_module()) else {
        return Err(YonedaError::NotModules);
    };
    let ax = Cx::module(a.clone());
    let res = ax.resolution();
    let p = res.complex();
    let rep = c.representative();
    let phi = rep.comp(-n).with_endpoints(&p.term(-n), &b);

    // Ω = ker(P^{-n+1} -> P^{-n+2}), or ker(P^0 -> A) when n = 1
    let out_of_top = if n == 1 {
        res.quasi().comp(0).with_endpoints(&p.term(0), &a)
    } else {
        p.diff(-n + 1)
    };
    let omega = out_of_top.kernel();
    let onto = p
        .diff(-n)
        .lift_through_mono(&omega.inclusion)
        .expect("the resolution is exact");
    let phi_bar = phi
        .scale(&splice_sign(n))
        .descend_through_epi(&onto)
        .ok_or(YonedaError::NotInImage)?;

    let mut maps = vec![omega.inclusion.clone()];
    for k in (-n + 1)..0 {
        maps.push(p.diff(k));
    }
    maps.push(res.quasi().comp(0).with_endpoints(&p.term(0), &a));
    let unit = YExt::new(maps).expect("truncated resolution is exact");
    pushout(&phi_bar, &unit)
}

/// The connecting-map composite of the truncated resolution differs from
/// the class of `P^{-n} -> Ω` by this sign.
fn splice_sign(n: i64) -> Rat {
    if (n * (n - 1) / 2) % 2 == 0 {
        Rat::one()
    } else {
        Rat::from_int(-1)
    }
}

/// Span of all composites `A -> G[1] -> B[n]` over the generators, inside
/// `group = Hom(A, B[n])`, as columns of coordinates.
pub fn factorization_image(group: &Arc<DerivedHom>, generators: &[Cx]) -> RatMatrix {
    let n = group.shift();
    let (a, b) = (group.source(), group.target());
    let mut cols: Vec<Vec<Rat>> = Vec::new();
    for g in generators {
        let first = derived_hom(a, g, 1);
        if first.dim() == 0 {
            continue;
        }
        let second = derived_hom(g, b, n - 1);
        if second.dim() == 0 {
            continue;
        }
        for h in first.basis() {
            for k in second.basis() {
                cols.push(h.then_into(&k, group).coordinates().to_vec());
            }
        }
    }
    if cols.is_empty() {
        return RatMatrix::zeros(group.dim(), 0);
    }
    RatMatrix::from_columns(group.dim(), &cols)
}

/// Whether `c: A -> B[n]` is a sum of composites through `G[1]` for heart
/// generators `G`.
pub fn factors_through(c: &DClass, generators: &[Cx]) -> bool {
    if c.is_zero() {
        return true;
    }
    let span = factorization_image(c.hom(), generators);
    span.spans(&RatMatrix::column_vector(c.coordinates().to_vec()))
}

use std::collections::BTreeMap;

use super::complex::{Cx, CxMap};
use crate::linalg::{Rat, RatMatrix};
use crate::modules::{direct_sum, projective_cover, ProjSum, Rep, RepMap};

/// A quasi-isomorphism `P -> X` from a bounded complex of projectives.
///
/// Built from the top degree down: at degree `k` the new term `P^k` is a
/// minimal projective cover of the cycles of the partial cone modulo the
/// image of `X^{k-1}`, so the cone of `P -> X` is exact in degree `k`.
#[derive(Debug)]
pub struct Resolution {
    sums: BTreeMap<i64, ProjSum>,
    complex: Cx,
    quasi: CxMap,
}

impl Resolution {
    pub(crate) fn compute(x: &Cx) -> Resolution {
        let alg = x.algebra();
        let Some((xlo, xhi)) = x.range() else {
            let z = Cx::zero(alg);
            return Resolution {
                sums: BTreeMap::new(),
                quasi: CxMap::zero(&z, x, 0),
                complex: z,
            };
        };
        let bound = xlo - alg.vertex_count() as i64 - 2;
        let mut sums: BTreeMap<i64, ProjSum> = BTreeMap::new();
        let mut d_p: BTreeMap<i64, RepMap> = BTreeMap::new();
        let mut phi: BTreeMap<i64, RepMap> = BTreeMap::new();
        let empty = ProjSum::new(alg, Vec::new());
        let mut k = xhi;
        loop {
            assert!(k >= bound, "projective resolution did not terminate");
            let p_next = sums.get(&(k + 1)).unwrap_or(&empty).module().clone();
            let p_next2 = sums.get(&(k + 2)).unwrap_or(&empty).module().clone();
            let xk = x.term(k);
            let src = direct_sum(&[p_next.clone(), xk.clone()]);
            let tgt = direct_sum(&[p_next2.clone(), x.term(k + 1)]);
            let dp = d_p
                .get(&(k + 1))
                .cloned()
                .unwrap_or_else(|| RepMap::zero(&p_next, &p_next2));
            let ph = phi
                .get(&(k + 1))
                .cloned()
                .unwrap_or_else(|| RepMap::zero(&p_next, &x.term(k + 1)));
            let (sp, sx) = (&src.projections[0], &src.projections[1]);
            let (tp, tx) = (&tgt.injections[0], &tgt.injections[1]);
            let d_cone = tp
                .after(&dp.neg())
                .after(sp)
                .add(&tx.after(&ph).after(sp))
                .add(&tx.after(&x.diff(k)).after(sx));
            let z = d_cone.kernel();
            let from_x = src.injections[1]
                .after(&x.diff(k - 1))
                .lift_through_mono(&z.inclusion)
                .expect("image of X^{k-1} consists of cycles");
            let q = from_x.cokernel();
            if k < xlo && q.module.is_zero() {
                break;
            }
            let (cover, epi) = projective_cover(&q.module);
            let lifts: Vec<Vec<Rat>> = cover
                .labels()
                .iter()
                .zip(cover.generator_values(&epi))
                .map(|(&v, u)| {
                    q.projection
                        .block(v)
                        .solve(&RatMatrix::column_vector(u))
                        .expect("projection onto the quotient is surjective")
                        .particular
                        .column(0)
                })
                .collect();
            let psi = z
                .inclusion
                .after(&cover.map_from_generators(&z.module, &lifts));
            d_p.insert(k, sp.after(&psi).neg().with_endpoints(cover.module(), &p_next));
            phi.insert(k, sx.after(&psi).with_endpoints(cover.module(), &xk));
            sums.insert(k, cover);
            k -= 1;
        }
        let lo = k + 1;
        let terms: Vec<Rep> = (lo..=xhi)
            .map(|j| sums.get(&j).unwrap_or(&empty).module().clone())
            .collect();
        let diffs: Vec<RepMap> = (lo..xhi)
            .map(|j| {
                d_p.get(&j).cloned().unwrap_or_else(|| {
                    RepMap::zero(&terms[(j - lo) as usize], &terms[(j - lo + 1) as usize])
                })
            })
            .collect();
        let complex = Cx::assemble(alg, lo, terms, diffs);
        sums.retain(|_, s| !s.is_empty());
        let quasi = CxMap::from_comps(&complex, x, 0, phi);
        Resolution {
            sums,
            complex,
            quasi,
        }
    }

    /// The projective complex `P`.
    pub fn complex(&self) -> &Cx {
        &self.complex
    }

    /// The quasi-isomorphism `P -> X`.
    pub fn quasi(&self) -> &CxMap {
        &self.quasi
    }

    /// The summand labels of `P^k`, if nonzero.
    pub fn sum(&self, k: i64) -> Option<&ProjSum> {
        self.sums.get(&k)
    }

    pub fn sums(&self) -> impl Iterator<Item = (i64, &ProjSum)> {
        self.sums.iter().map(|(&k, s)| (k, s))
    }

    /// Number of nonzero terms minus one.
    pub fn length(&self) -> usize {
        self.complex.range().map_or(0, |(lo, hi)| (hi - lo) as usize)
    }
}

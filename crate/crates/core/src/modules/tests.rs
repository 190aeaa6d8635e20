use std::sync::Arc;

use super::*;
use crate::path_algebra::{PathAlgebra, Quiver, Relation};

fn a2() -> Arc<PathAlgebra> {
    Arc::new(PathAlgebra::build(Quiver::new(2, &[("a", 1, 2)]), vec![]).unwrap())
}

fn kronecker() -> Arc<PathAlgebra> {
    Arc::new(PathAlgebra::build(Quiver::new(2, &[("a", 1, 2), ("b", 1, 2)]), vec![]).unwrap())
}

fn a3_rel() -> Arc<PathAlgebra> {
    Arc::new(
        PathAlgebra::build(
            Quiver::new(3, &[("a", 1, 2), ("b", 2, 3)]),
            vec![Relation::monomial(&["a", "b"])],
        )
        .unwrap(),
    )
}

fn square() -> Arc<PathAlgebra> {
    Arc::new(
        PathAlgebra::build(
            Quiver::new(4, &[("a", 1, 2), ("b", 1, 3), ("c", 2, 4), ("d", 3, 4)]),
            vec![Relation::new(vec![
                (Rat::one(), vec!["a", "c"]),
                (Rat::from_int(-1), vec!["b", "d"]),
            ])],
        )
        .unwrap(),
    )
}

fn all() -> Vec<Arc<PathAlgebra>> {
    vec![a2(), kronecker(), a3_rel(), square()]
}

#[test]
fn projective_dims() {
    let a = a2();
    assert_eq!(Rep::projective(&a, 1).dims(), &[1, 0]);
    assert!(Rep::projective(&a, 1).same_as(&Rep::simple(&a, 1)));
    assert_eq!(Rep::projective(&a, 2).dims(), &[1, 1]);
    assert_eq!(Rep::projective(&kronecker(), 2).dims(), &[2, 1]);
}

#[test]
fn simple_dims_and_disjoint_support() {
    assert_eq!(Rep::simple(&a2(), 1).dims(), &[1, 0]);
    let a = a3_rel();
    assert_eq!(Rep::simple(&a, 2).dims(), &[0, 1, 0]);
    assert!(hom_space(&Rep::simple(&a, 1), &Rep::simple(&a, 2)).unwrap().is_empty());
}

#[test]
fn hom_dims() {
    let k = kronecker();
    assert_eq!(hom_space(&Rep::projective(&k, 1), &Rep::projective(&k, 2)).unwrap().len(), 2);
    let a = a2();
    assert!(hom_space(&Rep::projective(&a, 2), &Rep::projective(&a, 1)).unwrap().is_empty());
}

#[test]
fn hom_projective_matches_vertex_dimension() {
    for alg in all() {
        let n = alg.vertex_count();
        let mut mods: Vec<Rep> = Vec::new();
        for i in 1..=n {
            mods.push(Rep::simple(&alg, i));
            mods.push(Rep::projective(&alg, i));
        }
        for m in &mods {
            for i in 1..=n {
                let p = Rep::projective(&alg, i);
                assert_eq!(hom_space(&p, m).unwrap().len(), m.dim_at(i));
            }
            let id = RepMap::identity(m);
            assert!(id.is_natural());
        }
    }
}

#[test]
fn hom_of_regular_module_is_algebra_dim() {
    for alg in all() {
        let parts: Vec<Rep> = (1..=alg.vertex_count()).map(|i| Rep::projective(&alg, i)).collect();
        let reg = direct_sum(&parts).sum;
        assert_eq!(hom_space(&reg, &reg).unwrap().len(), alg.dim());
    }
}

#[test]
fn hom_basis_maps_are_natural() {
    let k = kronecker();
    let p2 = Rep::projective(&k, 2);
    for f in hom_space(&p2, &p2).unwrap() {
        assert!(f.is_natural());
    }
}

#[test]
fn algebra_mismatch_is_rejected() {
    assert!(matches!(
        hom_space(&Rep::simple(&a2(), 1), &Rep::simple(&kronecker(), 1)),
        Err(ModuleError::AlgebraMismatch)
    ));
}

#[test]
fn kernel_of_identity_and_image_of_zero() {
    let k = kronecker();
    let p = Rep::projective(&k, 2);
    assert!(RepMap::identity(&p).kernel().module.is_zero());
    assert!(RepMap::zero(&p, &p).image().module.is_zero());
}

#[test]
fn kernel_of_top_projection_is_radical() {
    let a = a2();
    let p2 = Rep::projective(&a, 2);
    let s2 = Rep::simple(&a, 2);
    let (cover, epi) = projective_cover(&s2);
    assert_eq!(cover.labels(), &[2]);
    assert!(cover.module().same_as(&p2));
    let k = epi.kernel();
    let (f1, _) = filtration_step(&p2, 1);
    assert!(find_isomorphism(&k.module, &f1).is_some());
    assert!(epi.after(&k.inclusion).is_zero());
}

#[test]
fn rank_bookkeeping_on_random_maps() {
    let k = kronecker();
    let p2 = Rep::projective(&k, 2);
    let m = p2.direct_sum(&Rep::simple(&k, 1)).sum;
    let basis = hom_space(&m, &p2).unwrap();
    let mut f = RepMap::zero(&m, &p2);
    for (i, b) in basis.iter().enumerate() {
        f = f.add(&b.scale(&Rat::from_int(i as i64 - 1)));
    }
    let ker = f.kernel();
    let im = f.image();
    let coker = f.cokernel();
    for v in 1..=2 {
        assert_eq!(m.dim_at(v), ker.module.dim_at(v) + im.module.dim_at(v));
        assert_eq!(p2.dim_at(v), im.module.dim_at(v) + coker.module.dim_at(v));
    }
    assert!(im.mono.after(&im.epi).sub(&f).is_zero());
    assert!(coker.projection.after(&f).is_zero());
    assert!(im.mono.is_injective() && im.epi.is_surjective());
    assert!(coker.projection.is_natural() && ker.inclusion.is_natural());
}

#[test]
fn direct_sum_identities() {
    let a = a2();
    let bp = Rep::projective(&a, 1).direct_sum(&Rep::projective(&a, 2));
    assert_eq!(bp.sum.dims(), &[2, 1]);
    for (i, inj) in bp.injections.iter().enumerate() {
        for (j, proj) in bp.projections.iter().enumerate() {
            let c = proj.after(inj);
            if i == j {
                assert!(c.sub(&RepMap::identity(inj.source())).is_zero());
            } else {
                assert!(c.is_zero());
            }
        }
    }
    let m = Rep::projective(&a, 2);
    let z = m.direct_sum(&Rep::zero(&a)).sum;
    assert!(find_isomorphism(&m, &z).is_some());
}

#[test]
fn filtration_examples() {
    let a = a2();
    let (f1, inc) = filtration_step(&Rep::projective(&a, 2), 1);
    assert!(f1.same_as(&Rep::simple(&a, 1)));
    assert!(inc.is_natural() && inc.is_injective());
    let k = kronecker();
    let (f1, _) = filtration_step(&Rep::projective(&k, 2), 1);
    let s1 = Rep::simple(&k, 1);
    assert!(find_isomorphism(&f1, &s1.direct_sum(&s1).sum).is_some());
    let p = Rep::projective(&k, 2);
    let (top, _) = filtration_step(&p, 2);
    assert!(top.same_as(&p));
}

#[test]
fn filtration_quotients_are_semisimple() {
    for alg in all() {
        let n = alg.vertex_count();
        for i in 1..=n {
            let p = Rep::projective(&alg, i);
            for k in 1..=n {
                let (lower, _) = filtration_step(&p, k - 1);
                let (upper, inc) = filtration_step(&p, k);
                let sub = inc.lift_through_mono(&inc).unwrap();
                assert!(sub.is_iso());
                let (_, low_inc) = filtration_step(&upper, k - 1);
                let q = low_inc.cokernel().module;
                assert_eq!(lower.total_dim() + q.total_dim(), upper.total_dim());
                let expected: Vec<usize> =
                    (1..=n).map(|j| if j == k { p.dim_at(k) } else { 0 }).collect();
                assert_eq!(q.dims(), &expected[..]);
                assert!(q.arrow_maps().iter().all(RatMatrix::is_zero));
            }
        }
    }
}

#[test]
fn projective_cover_is_surjective_and_minimal() {
    for alg in all() {
        for i in 1..=alg.vertex_count() {
            for m in [Rep::simple(&alg, i), Rep::projective(&alg, i)] {
                let (cover, epi) = projective_cover(&m);
                assert!(epi.is_surjective() && epi.is_natural());
                assert_eq!(cover.labels(), &[i]);
            }
        }
    }
}

#[test]
fn projective_sum_coordinates_round_trip() {
    let alg = square();
    let ps = ProjSum::new(&alg, vec![4, 2, 4]);
    let target = Rep::projective(&alg, 4);
    let len = ps.hom_dim(&target);
    assert_eq!(len, 3);
    let coords: Vec<Rat> = (0..len).map(|k| Rat::from_int(k as i64 + 2)).collect();
    let f = ps.map_from_coordinates(&target, &coords);
    assert!(f.is_natural());
    assert_eq!(ps.coordinates(&f), coords);
}

#[test]
fn relation_violation_is_rejected() {
    let alg = a3_rel();
    let one = RatMatrix::identity(1);
    let err = Rep::new(&alg, vec![1, 1, 1], vec![one.clone(), one]).unwrap_err();
    assert!(matches!(err, ModuleError::RelationViolated(0)));
}

#[test]
fn flatten_round_trip() {
    let k = kronecker();
    let p = Rep::projective(&k, 2);
    for f in hom_space(&p, &p).unwrap() {
        let g = RepMap::unflatten(&p, &p, &f.flatten());
        assert!(g.sub(&f).is_zero());
    }
}

mod common;

use common::*;
use heartglue::bondal::{end_algebra, functor_on_map, module_functor, quiver_presentation};
use heartglue::derived::{cone, derived_hom, derived_hom_dims, Cx, CxMap};
use heartglue::glue::{check_sequence, glue_sequence, hom_profile};
use heartglue::linalg::RatMatrix;
use heartglue::modules::{filtration_step, hom_space};
use heartglue::yoneda::{baer_sum, f_map_into, pullback, pushout, splice_from_class};
use proptest::prelude::*;

const NAMES: [&str; 5] = ["a2", "a3", "a3_rel", "kronecker", "square"];

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 24,
        ..ProptestConfig::default()
    }
}

fn module_map(m: &heartglue::modules::RepMap) -> CxMap {
    let (x, y) = (Cx::module(m.source().clone()), Cx::module(m.target().clone()));
    CxMap::new(&x, &y, [(0, m.clone())].into_iter().collect()).unwrap()
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn hom_from_projective_is_the_vertex_space(alg in 0..5usize, seed in any::<u64>()) {
        let a = algebra(NAMES[alg]);
        let m = random_module(&mut rng(seed), &a);
        for i in 1..=a.vertex_count() {
            prop_assert_eq!(hom_space(&projective(&a, i), &m).unwrap().len(), m.dim_at(i));
        }
    }

    #[test]
    fn filtration_quotients_are_concentrated(alg in 0..5usize, seed in any::<u64>()) {
        let a = algebra(NAMES[alg]);
        let m = random_module(&mut rng(seed), &a);
        for k in 1..=a.vertex_count() {
            let (lower, _) = filtration_step(&m, k - 1);
            let (upper, inc) = filtration_step(&m, k);
            prop_assert!(inc.is_natural() && inc.is_injective());
            let q = lower_into(&lower, &upper).cokernel().module;
            let expected: Vec<usize> = (1..=a.vertex_count()).map(|v| if v == k { m.dim_at(k) } else { 0 }).collect();
            prop_assert_eq!(q.dims(), &expected[..]);
            prop_assert!(q.arrow_maps().iter().all(RatMatrix::is_zero));
        }
    }

    #[test]
    fn cone_sequences_are_exact(alg in 0..5usize, seed in any::<u64>()) {
        let a = algebra(NAMES[alg]);
        let mut r = rng(seed);
        let (m, n) = (random_nonzero_module(&mut r, &a), random_nonzero_module(&mut r, &a));
        let f = module_map(&random_map(&mut r, &m, &n));
        let c = cone(&f);
        // H(X) -> H(Y) -> H(C) -> H(X[1])
        for i in -2..=1 {
            let fy = f.on_cohomology(i);
            let gc = c.inclusion.on_cohomology(i);
            prop_assert!(gc.after(&fy).is_zero());
            let ker: usize = gc.blocks().iter().map(|b| b.cols() - b.rank()).sum();
            let img: usize = fy.blocks().iter().map(RatMatrix::rank).sum();
            prop_assert_eq!(ker, img);
            let h = c.projection.as_chain_map().on_cohomology(i);
            let ker: usize = h.blocks().iter().map(|b| b.cols() - b.rank()).sum();
            let img: usize = gc.blocks().iter().map(RatMatrix::rank).sum();
            prop_assert_eq!(ker, img);
        }
    }

    #[test]
    fn ext_vanishing(alg in 0..5usize, seed in any::<u64>()) {
        let a = algebra(NAMES[alg]);
        let mut r = rng(seed);
        let (m, n) = (Cx::module(random_module(&mut r, &a)), Cx::module(random_module(&mut r, &a)));
        let dims = derived_hom_dims(&m, &n);
        prop_assert!(dims.keys().all(|&k| (0..a.vertex_count() as i64).contains(&k)));
        for i in 1..=a.vertex_count() {
            let d = derived_hom_dims(&Cx::module(projective(&a, i)), &n);
            prop_assert!(d.keys().all(|&k| k == 0));
        }
    }

    #[test]
    fn hom_is_invariant_under_resolution(alg in 0..5usize, seed in any::<u64>()) {
        let a = algebra(NAMES[alg]);
        let mut r = rng(seed);
        let (m, n) = (Cx::module(random_module(&mut r, &a)), Cx::module(random_module(&mut r, &a)));
        let res = m.resolution().complex().clone();
        prop_assert_eq!(derived_hom_dims(&m, &n), derived_hom_dims(&res, &n));
        prop_assert_eq!(hom_profile(&m, &n, 5), hom_profile(&m.shift(2), &n.shift(2), 5));
    }

    #[test]
    fn extensions_form_a_group_and_are_natural(alg in 0..5usize, seed in any::<u64>()) {
        let a = algebra(NAMES[alg]);
        let mut r = rng(seed);
        let (x, y) = (random_nonzero_module(&mut r, &a), random_nonzero_module(&mut r, &a));
        let (xc, yc) = (Cx::module(x.clone()), Cx::module(y.clone()));
        for n in 1..=2 {
            let group = derived_hom(&xc, &yc, n);
            if group.dim() == 0 {
                continue;
            }
            let c1 = group.class(random_vector(&mut r, group.dim()));
            let c2 = group.class(random_vector(&mut r, group.dim()));
            let (e1, e2) = (splice_from_class(&c1).unwrap(), splice_from_class(&c2).unwrap());
            prop_assert_eq!(f_map_into(&e1, &group).coordinates().to_vec(), c1.coordinates().to_vec());
            let s = baer_sum(&e1, &e2).unwrap();
            prop_assert_eq!(f_map_into(&s, &group).coordinates().to_vec(), c1.add(&c2).coordinates().to_vec());

            // pushout along g: Y -> Y', pullback along h: X' -> X
            let y2 = random_nonzero_module(&mut r, &a);
            let g = random_map(&mut r, &y, &y2);
            let y2c = Cx::module(y2);
            let target = derived_hom(&xc, &y2c, n);
            let gc = derived_hom(&yc, &y2c, 0).class_of_map(&module_map(&g));
            let pushed = pushout(&g, &e1).unwrap();
            prop_assert_eq!(f_map_into(&pushed, &target).coordinates().to_vec(), c1.then_into(&gc, &target).coordinates().to_vec());

            let x2 = random_nonzero_module(&mut r, &a);
            let h = random_map(&mut r, &x2, &x);
            let x2c = Cx::module(x2);
            let target = derived_hom(&x2c, &yc, n);
            let hc = derived_hom(&x2c, &xc, 0).class_of_map(&module_map(&h));
            let pulled = pullback(&e1, &h).unwrap();
            prop_assert_eq!(f_map_into(&pulled, &target).coordinates().to_vec(), hc.then_into(&c1, &target).coordinates().to_vec());
        }
    }

    #[test]
    fn glued_aisles_are_closed_under_shift(alg in 0..5usize, seed in any::<u64>()) {
        let a = algebra(NAMES[alg]);
        let mut r = rng(seed);
        let seq = check_sequence(&projectives(&a), true, 6).unwrap();
        let aisle = glue_sequence(&seq).unwrap().pop().unwrap().aisle;
        for _ in 0..3 {
            let x = random_object(&mut r, &a);
            let t = aisle.truncate(&x);
            prop_assert!(aisle.contains(&t.lower.shift(1)));
            prop_assert!(aisle.co_contains(&t.upper.shift(-1)));
            prop_assert_eq!(derived_hom(&t.lower, &t.upper, 0).dim(), 0);
            if aisle.contains(&x) {
                prop_assert!(aisle.contains(&x.shift(1)));
            }
        }
    }

    #[test]
    fn functor_is_additive(seed in any::<u64>()) {
        let k = algebra("kronecker");
        let mut r = rng(seed);
        let seq = check_sequence(&projectives(&k), true, 6).unwrap();
        let ea = end_algebra(&seq).unwrap();
        let pres = quiver_presentation(&ea).unwrap();
        let (x, y) = (Cx::module(random_nonzero_module(&mut r, &k)), Cx::module(random_nonzero_module(&mut r, &k)));
        let h = derived_hom(&x, &y, 0);
        prop_assume!(h.dim() > 0);
        let (fx, fy) = (module_functor(&ea, &pres, &x).unwrap(), module_functor(&ea, &pres, &y).unwrap());
        let f = h.class(random_vector(&mut r, h.dim()));
        let g = h.class(random_vector(&mut r, h.dim()));
        let lhs = functor_on_map(&fx, &fy, &f.add(&g));
        let rhs = functor_on_map(&fx, &fy, &f).add(&functor_on_map(&fx, &fy, &g));
        prop_assert_eq!(lhs.blocks(), rhs.blocks());
    }
}

fn lower_into(
    lower: &heartglue::modules::Rep,
    upper: &heartglue::modules::Rep,
) -> heartglue::modules::RepMap {
    let blocks = lower
        .dims()
        .iter()
        .zip(upper.dims())
        .map(|(&l, &u)| {
            let mut m = RatMatrix::zeros(u, l);
            for i in 0..l {
                m.set_block(i, i, &RatMatrix::identity(1));
            }
            m
        })
        .collect();
    heartglue::modules::RepMap::new(lower, upper, blocks).unwrap()
}

#[test]
fn glued_hearts_have_no_negative_homs_and_the_shift_pattern() {
    for name in NAMES {
        let a = algebra(name);
        let es = projectives(&a);
        let m = es.len() as i64;
        let seq = check_sequence(&es, true, 6).unwrap();
        let heart = glue_sequence(&seq).unwrap().pop().unwrap().heart;
        for (i, g) in heart.generators.iter().enumerate() {
            assert_eq!(g.cohomology_dims(), es[i].shift(m - 1 - i as i64).cohomology_dims(), "{name}");
            for h in &heart.generators {
                assert!(hom_profile(g, h, 6).keys().all(|&n| n >= 0), "{name}");
            }
        }
    }
}

#[test]
fn end_algebra_dimension_is_the_upper_triangle() {
    for name in NAMES {
        let a = algebra(name);
        let es = projectives(&a);
        let ea = end_algebra(&check_sequence(&es, true, 6).unwrap()).unwrap();
        let mut total = 0;
        for (i, x) in es.iter().enumerate() {
            for (j, y) in es.iter().enumerate() {
                let d = derived_hom(x, y, 0).dim();
                if i > j {
                    assert_eq!(d, 0);
                }
                total += d;
            }
        }
        assert_eq!(ea.dim(), total);
    }
}

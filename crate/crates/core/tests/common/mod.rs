//! Seeded generators shared by the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use heartglue::corpus::{self, CorpusEntry};
use heartglue::derived::{cone, Cx, CxMap, ShortExact};
use heartglue::linalg::Rat;
use heartglue::modules::{hom_space, ProjSum, Rep, RepMap};
use heartglue::path_algebra::PathAlgebra;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn corpus() -> Vec<CorpusEntry> {
    corpus::load_corpus().expect("bundled corpus loads")
}

pub fn algebra(name: &str) -> Arc<PathAlgebra> {
    corpus::load(name).expect("bundled corpus member")
}

pub fn simple(a: &Arc<PathAlgebra>, i: usize) -> Rep {
    Rep::simple(a, i)
}

pub fn projective(a: &Arc<PathAlgebra>, i: usize) -> Rep {
    Rep::projective(a, i)
}

pub fn projectives(a: &Arc<PathAlgebra>) -> Vec<Cx> {
    (1..=a.vertex_count()).map(|i| Cx::module(projective(a, i))).collect()
}

fn small(rng: &mut ChaCha8Rng) -> Rat {
    Rat::from_int(rng.gen_range(-2..=2))
}

pub fn random_vector(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rat> {
    (0..len).map(|_| small(rng)).collect()
}

/// Random nonzero vector.
pub fn random_nonzero(rng: &mut ChaCha8Rng, len: usize) -> Vec<Rat> {
    loop {
        let v = random_vector(rng, len);
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

fn random_labels(rng: &mut ChaCha8Rng, n: usize, lo: usize, hi: usize) -> Vec<usize> {
    let k = rng.gen_range(lo..=hi);
    let mut v: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=n)).collect();
    v.sort_unstable();
    v
}

/// The cokernel of a random map between sums of projectives.
pub fn random_module(rng: &mut ChaCha8Rng, a: &Arc<PathAlgebra>) -> Rep {
    let n = a.vertex_count();
    let target = ProjSum::new(a, random_labels(rng, n, 1, 2));
    let source = ProjSum::new(a, random_labels(rng, n, 0, 2));
    let values: Vec<Vec<Rat>> = source
        .labels()
        .iter()
        .map(|&i| random_vector(rng, target.module().dim_at(i)))
        .collect();
    let f = source.map_from_generators(target.module(), &values);
    f.cokernel().module
}

/// A random module that is not zero.
pub fn random_nonzero_module(rng: &mut ChaCha8Rng, a: &Arc<PathAlgebra>) -> Rep {
    loop {
        let m = random_module(rng, a);
        if !m.is_zero() {
            return m;
        }
    }
}

pub fn random_map(rng: &mut ChaCha8Rng, m: &Rep, n: &Rep) -> RepMap {
    let basis = hom_space(m, n).expect("same algebra");
    let mut f = RepMap::zero(m, n);
    for b in &basis {
        f = f.add(&b.scale(&small(rng)));
    }
    f
}

/// Short exact sequences `0 -> ker f -> M -> im f -> 0` and
/// `0 -> im f -> N -> coker f -> 0` for a random `f: M -> N`.
pub fn random_ses(rng: &mut ChaCha8Rng, a: &Arc<PathAlgebra>) -> ShortExact {
    let m = random_nonzero_module(rng, a);
    let n = random_nonzero_module(rng, a);
    let f = random_map(rng, &m, &n);
    let im = f.image();
    if rng.gen_bool(0.5) {
        let k = f.kernel();
        ShortExact::new(k.inclusion, im.epi).expect("kernel and image are exact")
    } else {
        let c = f.cokernel();
        ShortExact::new(im.mono, c.projection).expect("image and cokernel are exact")
    }
}

/// Shifted modules and two-term cones of random maps.
pub fn random_object(rng: &mut ChaCha8Rng, a: &Arc<PathAlgebra>) -> Cx {
    let shift = rng.gen_range(-1..=1);
    if rng.gen_bool(0.5) {
        return Cx::module(random_nonzero_module(rng, a)).shift(shift);
    }
    let m = random_nonzero_module(rng, a);
    let n = random_nonzero_module(rng, a);
    let f = random_map(rng, &m, &n);
    let (mx, nx) = (Cx::module(m), Cx::module(n));
    let g = CxMap::new(&mx, &nx, [(0, f)].into_iter().collect()).expect("a module map is a chain map");
    cone(&g).cone.shift(shift)
}

pub fn pick<'a, T>(rng: &mut ChaCha8Rng, xs: &'a [T]) -> &'a T {
    xs.choose(rng).expect("nonempty")
}

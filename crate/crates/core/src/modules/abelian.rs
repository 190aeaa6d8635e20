//! Kernels, cokernels, images and finite biproducts in `mod-A`.

use super::{Rep, RepMap};
use crate::linalg::RatMatrix;

#[derive(Clone, Debug)]
pub struct Kernel {
    pub module: Rep,
    pub inclusion: RepMap,
}

#[derive(Clone, Debug)]
pub struct Cokernel {
    pub module: Rep,
    pub projection: RepMap,
}

/// Epi-mono factorization `f = mono ∘ epi` through the image.
#[derive(Clone, Debug)]
pub struct Image {
    pub module: Rep,
    pub epi: RepMap,
    pub mono: RepMap,
}

/// A direct sum with its canonical injections and projections.
#[derive(Clone, Debug)]
pub struct Biproduct {
    pub sum: Rep,
    pub injections: Vec<RepMap>,
    pub projections: Vec<RepMap>,
}

/// Unique `X` with `basis * X = target`, for `basis` of full column rank.
fn coords_in(basis: &RatMatrix, target: &RatMatrix) -> RatMatrix {
    basis
        .solve(target)
        .expect("target lies in the span of a submodule basis")
        .particular
}

/// Submodule spanned per vertex by the columns of `bases`, which must be
/// stable under the action; returns the submodule and its inclusion.
fn submodule(n: &Rep, bases: Vec<RatMatrix>) -> (Rep, RepMap) {
    let alg = n.algebra();
    let arrows = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            coords_in(&bases[a.source - 1], &n.arrow_map(ai).mul(&bases[a.target - 1]))
        })
        .collect();
    let dims = bases.iter().map(RatMatrix::cols).collect();
    let sub = Rep::new_unchecked(alg, dims, arrows).expect("submodule shape");
    let inc = RepMap::new_unchecked(&sub, n, bases).expect("inclusion shape");
    (sub, inc)
}

impl RepMap {
    pub fn kernel(&self) -> Kernel {
        let bases = self.blocks().iter().map(RatMatrix::kernel_basis).collect();
        let (module, inclusion) = submodule(self.source(), bases);
        Kernel { module, inclusion }
    }

    pub fn image(&self) -> Image {
        let bases: Vec<RatMatrix> = self
            .blocks()
            .iter()
            .map(|b| b.select_columns(&b.independent_columns()))
            .collect();
        let epi_blocks = bases
            .iter()
            .zip(self.blocks())
            .map(|(i, f)| coords_in(i, f))
            .collect();
        let (module, mono) = submodule(self.target(), bases);
        let epi = RepMap::new_unchecked(self.source(), &module, epi_blocks).expect("epi shape");
        Image { module, epi, mono }
    }

    pub fn cokernel(&self) -> Cokernel {
        let n = self.target();
        let alg = n.algebra();
        let mut complements = Vec::new();
        let mut projections = Vec::new();
        for b in self.blocks() {
            let img = b.select_columns(&b.independent_columns());
            let id = RatMatrix::identity(b.rows());
            let extra = img.extend_basis(&id);
            let comp = id.select_columns(&extra);
            let full = img.hstack(&comp);
            let inv = coords_in(&full, &RatMatrix::identity(b.rows()));
            let proj = inv.block(img.cols(), 0, comp.cols(), b.rows());
            complements.push(comp);
            projections.push(proj);
        }
        let arrows = alg
            .quiver()
            .arrows
            .iter()
            .enumerate()
            .map(|(ai, a)| {
                projections[a.source - 1]
                    .mul(n.arrow_map(ai))
                    .mul(&complements[a.target - 1])
            })
            .collect();
        let dims = complements.iter().map(RatMatrix::cols).collect();
        let module = Rep::new_unchecked(alg, dims, arrows).expect("cokernel shape");
        let projection = RepMap::new_unchecked(n, &module, projections).expect("projection shape");
        Cokernel { module, projection }
    }

    /// `h` with `mono ∘ h = self`, if the image of `self` lies in that of `mono`.
    pub fn lift_through_mono(&self, mono: &RepMap) -> Option<RepMap> {
        let mut blocks = Vec::new();
        for (m, f) in mono.blocks().iter().zip(self.blocks()) {
            blocks.push(m.solve(f)?.particular);
        }
        RepMap::new_unchecked(self.source(), mono.source(), blocks).ok()
    }

    /// `h` with `h ∘ epi = self`, if `self` vanishes on the kernel of `epi`.
    pub fn descend_through_epi(&self, epi: &RepMap) -> Option<RepMap> {
        let mut blocks = Vec::new();
        for (e, f) in epi.blocks().iter().zip(self.blocks()) {
            blocks.push(e.transpose().solve(&f.transpose())?.particular.transpose());
        }
        RepMap::new_unchecked(epi.target(), self.target(), blocks).ok()
    }
}

/// Direct sum of a nonempty list of modules.
pub fn direct_sum(parts: &[Rep]) -> Biproduct {
    let first = parts.first().expect("direct sum of at least one module");
    let alg = first.algebra();
    let n = alg.vertex_count();
    let dims: Vec<usize> = (0..n).map(|v| parts.iter().map(|p| p.dims()[v]).sum()).collect();
    let arrows = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, _)| {
            parts
                .iter()
                .skip(1)
                .fold(parts[0].arrow_map(ai).clone(), |acc, p| acc.block_diag(p.arrow_map(ai)))
        })
        .collect();
    let sum = Rep::new_unchecked(alg, dims.clone(), arrows).expect("direct sum shape");
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offsets = vec![0usize; n];
    for p in parts {
        let mut inj = Vec::new();
        let mut proj = Vec::new();
        for v in 0..n {
            let d = p.dims()[v];
            let mut i = RatMatrix::zeros(dims[v], d);
            i.set_block(offsets[v], 0, &RatMatrix::identity(d));
            proj.push(i.transpose());
            inj.push(i);
            offsets[v] += d;
        }
        injections.push(RepMap::new_unchecked(p, &sum, inj).expect("injection shape"));
        projections.push(RepMap::new_unchecked(&sum, p, proj).expect("projection shape"));
    }
    Biproduct {
        sum,
        injections,
        projections,
    }
}

impl Rep {
    pub fn direct_sum(&self, other: &Rep) -> Biproduct {
        direct_sum(&[self.clone(), other.clone()])
    }
}

/// The map `⊕ sources -> target` with the given components.
pub fn from_sum(sum: &Biproduct, components: &[RepMap], target: &Rep) -> RepMap {
    let mut acc = RepMap::zero(&sum.sum, target);
    for (p, c) in sum.projections.iter().zip(components) {
        acc = acc.add(&c.after(p));
    }
    acc
}

/// The map `source -> ⊕ targets` with the given components.
pub fn into_sum(sum: &Biproduct, components: &[RepMap], source: &Rep) -> RepMap {
    let mut acc = RepMap::zero(source, &sum.sum);
    for (i, c) in sum.injections.iter().zip(components) {
        acc = acc.add(&i.after(c));
    }
    acc
}

use std::sync::Arc;

use super::abelian::direct_sum;
use super::{Rep, RepMap};
use crate::linalg::{Rat, RatMatrix};
use crate::path_algebra::{Path, PathAlgebra};

pub(super) fn projective(alg: &Arc<PathAlgebra>, i: usize) -> Rep {
    alg.check_vertex(i).expect("vertex in range");
    let n = alg.vertex_count();
    // basis of G_j P_i: paths j -> i
    let at: Vec<Vec<usize>> = (1..=n).map(|j| alg.paths_between(j, i)).collect();
    let dims = at.iter().map(Vec::len).collect();
    let arrows = alg
        .quiver()
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let arrow = alg
                .basis_index(&Path {
                    source: a.source,
                    target: a.target,
                    arrows: vec![ai],
                })
                .expect("arrows are basis elements for admissible relations");
            let rows = &at[a.source - 1];
            let cols = &at[a.target - 1];
            let mut m = RatMatrix::zeros(rows.len(), cols.len());
            for (c, &p) in cols.iter().enumerate() {
                let prod = alg.mult(p, arrow);
                for (r, &q) in rows.iter().enumerate() {
                    m[(r, c)] = prod[q].clone();
                }
            }
            m
        })
        .collect();
    Rep::new_unchecked(alg, dims, arrows).expect("projective shape")
}

/// A finite direct sum `⊕_s P_{labels[s]}` of indecomposable projectives,
/// remembering where each summand's generator `e_i` sits.
///
/// By Yoneda, a map out of a projective sum is the same as a choice of one
/// vector `v_s ∈ N_{labels[s]}` per summand.
#[derive(Clone, Debug)]
pub struct ProjSum {
    labels: Vec<usize>,
    module: Rep,
    generator_rows: Vec<usize>,
}

impl ProjSum {
    pub fn new(alg: &Arc<PathAlgebra>, labels: Vec<usize>) -> ProjSum {
        let module = if labels.is_empty() {
            Rep::zero(alg)
        } else {
            let parts: Vec<Rep> = labels.iter().map(|&i| Rep::projective(alg, i)).collect();
            direct_sum(&parts).sum
        };
        let mut offset = vec![0usize; alg.vertex_count()];
        let mut generator_rows = Vec::with_capacity(labels.len());
        for &i in &labels {
            // e_i is the only basis path at vertex i in P_i.
            generator_rows.push(offset[i - 1]);
            for (j, off) in offset.iter_mut().enumerate() {
                *off += alg.paths_between(j + 1, i).len();
            }
        }
        ProjSum {
            labels,
            module,
            generator_rows,
        }
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn module(&self) -> &Rep {
        &self.module
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// The unique map sending the generator of summand `s` to `values[s]`.
    pub fn map_from_generators(&self, target: &Rep, values: &[Vec<Rat>]) -> RepMap {
        assert_eq!(values.len(), self.labels.len(), "one value per summand");
        let alg = self.module.algebra();
        let n = alg.vertex_count();
        let mut blocks = Vec::with_capacity(n);
        for j in 1..=n {
            let mut cols: Vec<Vec<Rat>> = Vec::new();
            for (&i, v) in self.labels.iter().zip(values) {
                debug_assert_eq!(v.len(), target.dim_at(i));
                for p in alg.paths_between(j, i) {
                    let path = &alg.basis()[p];
                    let img = target.act_path(path).mul(&RatMatrix::column_vector(v.clone()));
                    cols.push(img.column(0));
                }
            }
            blocks.push(RatMatrix::from_columns(target.dim_at(j), &cols));
        }
        RepMap::new_unchecked(&self.module, target, blocks).expect("map from projective shape")
    }

    /// Images of the summand generators under `f`.
    pub fn generator_values(&self, f: &RepMap) -> Vec<Vec<Rat>> {
        self.labels
            .iter()
            .zip(&self.generator_rows)
            .map(|(&i, &row)| f.block(i).column(row))
            .collect()
    }

    /// Coordinates of `Hom(self, target)` in generator form: the concatenation
    /// of `target_{labels[s]}` over summands.
    pub fn hom_dim(&self, target: &Rep) -> usize {
        self.labels.iter().map(|&i| target.dim_at(i)).sum()
    }

    /// Flattened generator values of `f`.
    pub fn coordinates(&self, f: &RepMap) -> Vec<Rat> {
        self.generator_values(f).into_iter().flatten().collect()
    }

    /// Inverse of [`ProjSum::coordinates`].
    pub fn map_from_coordinates(&self, target: &Rep, coords: &[Rat]) -> RepMap {
        let mut values = Vec::with_capacity(self.labels.len());
        let mut k = 0;
        for &i in &self.labels {
            let d = target.dim_at(i);
            values.push(coords[k..k + d].to_vec());
            k += d;
        }
        assert_eq!(k, coords.len(), "coordinate length mismatch");
        self.map_from_generators(target, &values)
    }
}

/// A minimal projective cover `P -> M`: one summand `P_v` for each basis
/// vector of a complement of `rad(M)_v` in `M_v`.
pub fn projective_cover(m: &Rep) -> (ProjSum, RepMap) {
    let alg = m.algebra();
    let q = alg.quiver();
    let mut labels = Vec::new();
    let mut values = Vec::new();
    for v in 1..=alg.vertex_count() {
        let d = m.dim_at(v);
        let mut rad = RatMatrix::zeros(d, 0);
        for (ai, a) in q.arrows.iter().enumerate() {
            if a.source == v {
                rad = rad.hstack(m.arrow_map(ai));
            }
        }
        let rad = rad.select_columns(&rad.independent_columns());
        let id = RatMatrix::identity(d);
        for c in rad.extend_basis(&id) {
            labels.push(v);
            values.push(id.column(c));
        }
    }
    let cover = ProjSum::new(alg, labels);
    let epi = cover.map_from_generators(m, &values);
    (cover, epi)
}

use super::{ModuleError, Rep, RepMap};
use crate::linalg::{Rat, RatMatrix};

/// Offsets of each vertex block in the flattened coordinates of a map `m -> n`.
fn block_offsets(m: &Rep, n: &Rep) -> (Vec<usize>, usize) {
    let mut offsets = Vec::with_capacity(m.dims().len());
    let mut total = 0;
    for (&s, &t) in m.dims().iter().zip(n.dims()) {
        offsets.push(total);
        total += s * t;
    }
    (offsets, total)
}

/// Matrix of the intertwining equations `f_s · M(a) = N(a) · f_t` acting on
/// flattened block coordinates.
pub(crate) fn intertwiner_system(m: &Rep, n: &Rep) -> RatMatrix {
    let q = m.algebra().quiver();
    let (offsets, unknowns) = block_offsets(m, n);
    let eq_count: usize = q
        .arrows
        .iter()
        .map(|a| n.dim_at(a.source) * m.dim_at(a.target))
        .sum();
    let mut sys = RatMatrix::zeros(eq_count, unknowns);
    let mut row = 0;
    for (ai, a) in q.arrows.iter().enumerate() {
        let (s, t) = (a.source, a.target);
        let (ns, nt, ms, mt) = (n.dim_at(s), n.dim_at(t), m.dim_at(s), m.dim_at(t));
        let ma = m.arrow_map(ai);
        let na = n.arrow_map(ai);
        // f_s is ns x ms, stored column-major at offsets[s-1]
        let fs = |r: usize, k: usize| offsets[s - 1] + k * ns + r;
        let ft = |k: usize, c: usize| offsets[t - 1] + c * nt + k;
        for r in 0..ns {
            for c in 0..mt {
                for k in 0..ms {
                    let x = &ma[(k, c)];
                    if !x.is_zero() {
                        sys[(row, fs(r, k))] += x;
                    }
                }
                for k in 0..nt {
                    let x = &na[(r, k)];
                    if !x.is_zero() {
                        sys[(row, ft(k, c))] -= x;
                    }
                }
                row += 1;
            }
        }
    }
    sys
}

/// A basis of `Hom_A(m, n)`, obtained from the kernel of the full
/// intertwiner system.
pub fn hom_space(m: &Rep, n: &Rep) -> Result<Vec<RepMap>, ModuleError> {
    if !m.same_algebra(n) {
        return Err(ModuleError::AlgebraMismatch);
    }
    let k = intertwiner_system(m, n).kernel_basis();
    Ok((0..k.cols())
        .map(|j| {
            let col: Vec<Rat> = k.column(j);
            RepMap::unflatten(m, n, &col)
        })
        .collect())
}

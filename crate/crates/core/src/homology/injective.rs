use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::linalg::Mat;
use crate::repcat::{cokernel, dualize, kernel, socle, Rep, RepMap};

use super::pathmatrix::{injective_sum, PathMatrix};

/// An injective envelope `M -> ⊕ I(v)`, one summand per socle dimension.
#[derive(Clone, Debug)]
pub struct InjectiveHull<S> {
    pub hull: Rep<S>,
    pub embedding: RepMap<S>,
    /// Vertex of each summand, in order.
    pub vertices: Vec<usize>,
}

/// Builds the envelope from functionals `ξ` on `M_v` restricting to a basis
/// of the dual of the socle: `m ∈ M_u ↦ Σ_{p: u ⇝ v} ξ(M_p m) p`.
pub fn injective_hull<S: Scalar>(m: &Rep<S>) -> Result<InjectiveHull<S>> {
    let w = m.window();
    let (soc, inc) = socle(m)?;
    let mut vertices = Vec::new();
    let mut functionals = Vec::new();
    for v in 0..w.vertex_count() {
        let basis = inc.comp(v);
        if basis.cols() == 0 {
            continue;
        }
        let xi = basis
            .solve_left(&Mat::identity(basis.cols()))?
            .ok_or_else(|| ArsError::Internal("socle basis is not independent".into()))?;
        for k in 0..soc.dim(v) {
            vertices.push(v);
            functionals.push(xi.block(k, 0, 1, m.dim(v)));
        }
    }
    let hull = injective_sum(w, &vertices)?;
    let comps = (0..w.vertex_count())
        .map(|u| {
            let mut comp = Mat::zeros(hull.dim(u), m.dim(u));
            let mut row = 0;
            for (&v, xi) in vertices.iter().zip(&functionals) {
                for p in w.paths_between(u, v) {
                    comp.set_block(row, 0, &(xi * &m.path_action(p)));
                    row += 1;
                }
            }
            comp
        })
        .collect();
    let embedding = RepMap::new(m.clone(), hull.clone(), comps)?;
    Ok(InjectiveHull {
        hull,
        embedding,
        vertices,
    })
}

/// A minimal injective copresentation `0 -> M -> I0 -> I1`.
#[derive(Clone, Debug)]
pub struct InjectiveCopresentation<S> {
    pub rep: Rep<S>,
    pub i0: InjectiveHull<S>,
    pub i1_vertices: Vec<usize>,
    /// `I0 -> I1` as a map of representations.
    pub d0: RepMap<S>,
    /// `I0 -> I1` as a matrix over the dual algebra, rows indexed by `I1`.
    pub matrix: PathMatrix<S>,
}

pub fn min_inj_copres<S: Scalar>(m: &Rep<S>) -> Result<InjectiveCopresentation<S>> {
    let i0 = injective_hull(m)?;
    let (c, pi) = cokernel(&i0.embedding)?;
    let i1 = injective_hull(&c)?;
    let d0 = i1.embedding.compose(&pi)?;
    let matrix = PathMatrix::from_injective_map(&d0, &i1.vertices, &i0.vertices)?;
    Ok(InjectiveCopresentation {
        rep: m.clone(),
        i0,
        i1_vertices: i1.vertices,
        d0,
        matrix,
    })
}

/// The comodule transpose: the kernel of the starred copresentation matrix,
/// a map between injectives over the opposite window.
pub fn transpose_comodule<S: Scalar>(m: &Rep<S>) -> Result<Rep<S>> {
    let copres = min_inj_copres(m)?;
    let starred = copres.matrix.star().to_injective_map()?;
    Ok(kernel(&starred)?.0)
}

pub fn is_injective<S: Scalar>(m: &Rep<S>) -> Result<bool> {
    Ok(injective_hull(m)?.hull.total_dim() == m.total_dim())
}

/// `D Tr` computed on the comodule side, back over the window of `m`.
pub(crate) fn dual_transpose_comodule<S: Scalar>(m: &Rep<S>) -> Result<Rep<S>> {
    dualize(&transpose_comodule(m)?).rewindow(m.window())
}

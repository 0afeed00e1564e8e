use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::linalg::{Mat, Quotient};
use crate::repcat::{cokernel, kernel, Rep, RepMap};

use super::pathmatrix::{projective_sum, PathMatrix};

/// A projective cover `⊕ P(v) -> M`, one summand per top dimension.
#[derive(Clone, Debug)]
pub struct ProjectiveCover<S> {
    pub cover: Rep<S>,
    pub projection: RepMap<S>,
    pub vertices: Vec<usize>,
}

/// The top `M_v / Σ_{a: u -> v} im M_a` at every vertex, as a quotient.
pub fn top<S: Scalar>(m: &Rep<S>) -> Result<Vec<Quotient<S>>> {
    let w = m.window();
    (0..w.vertex_count())
        .map(|v| {
            let incoming: Vec<Mat<S>> = w.quiver().incoming(v).map(|a| m.mat(a).clone()).collect();
            Ok(Quotient::new(&Mat::hstack_all(m.dim(v), &incoming)?))
        })
        .collect()
}

/// Lifts `g` of a basis of the top; `x: v ⇝ u` in `P(v)` maps to `M_x g`.
pub fn projective_cover<S: Scalar>(m: &Rep<S>) -> Result<ProjectiveCover<S>> {
    let w = m.window();
    let mut vertices = Vec::new();
    let mut generators = Vec::new();
    for (v, q) in top(m)?.into_iter().enumerate() {
        for k in 0..q.dim() {
            vertices.push(v);
            generators.push(q.lifts().block(0, k, m.dim(v), 1));
        }
    }
    let cover = projective_sum(w, &vertices)?;
    let comps = (0..w.vertex_count())
        .map(|u| {
            let mut comp = Mat::zeros(m.dim(u), cover.dim(u));
            let mut col = 0;
            for (&v, g) in vertices.iter().zip(&generators) {
                for x in w.paths_between(v, u) {
                    comp.set_block(0, col, &(&m.path_action(x) * g));
                    col += 1;
                }
            }
            comp
        })
        .collect();
    let projection = RepMap::new(cover.clone(), m.clone(), comps)?;
    if !projection.is_surjective() {
        return Err(ArsError::Internal("top lifts do not generate".into()));
    }
    Ok(ProjectiveCover {
        cover,
        projection,
        vertices,
    })
}

/// A minimal projective presentation `P1 -> P0 -> M -> 0`.
#[derive(Clone, Debug)]
pub struct ProjectivePresentation<S> {
    pub rep: Rep<S>,
    pub p0: ProjectiveCover<S>,
    pub p1_vertices: Vec<usize>,
    /// `P1 -> P0` as a map of representations.
    pub d1: RepMap<S>,
    /// `P1 -> P0` over the dual algebra, rows indexed by `P0`.
    pub matrix: PathMatrix<S>,
    /// The first syzygy with its inclusion into `P0`.
    pub syzygy: (Rep<S>, RepMap<S>),
}

pub fn min_proj_pres<S: Scalar>(m: &Rep<S>) -> Result<ProjectivePresentation<S>> {
    let p0 = projective_cover(m)?;
    let (omega, inc) = kernel(&p0.projection)?;
    let p1 = projective_cover(&omega)?;
    let d1 = inc.compose(&p1.projection)?;
    let matrix = PathMatrix::from_projective_map(&d1, &p0.vertices, &p1.vertices)?;
    Ok(ProjectivePresentation {
        rep: m.clone(),
        p0,
        p1_vertices: p1.vertices,
        d1,
        matrix,
        syzygy: (omega, inc),
    })
}

/// The module transpose: the cokernel of the starred presentation matrix,
/// a map between projectives over the opposite window.
pub fn transpose_module<S: Scalar>(m: &Rep<S>) -> Result<Rep<S>> {
    let pres = min_proj_pres(m)?;
    let starred = pres.matrix.star().to_projective_map()?;
    Ok(cokernel(&starred)?.0)
}

pub fn is_projective<S: Scalar>(m: &Rep<S>) -> Result<bool> {
    Ok(projective_cover(m)?.cover.total_dim() == m.total_dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::{Quiver, Window, WindowRef};
    use crate::repcat::{dualize, is_iso, projective_at};
    use crate::F32003;

    fn a4() -> WindowRef {
        Window::full(Quiver::linear_a(4)).unwrap()
    }

    fn thin(w: &WindowRef, vs: &[&str]) -> Rep<F32003> {
        Rep::thin(w.clone(), vs).unwrap()
    }

    #[test]
    fn covers_and_presentations() {
        let w = a4();
        let m = thin(&w, &["2", "3"]);
        let c = projective_cover(&m).unwrap();
        assert_eq!(c.vertices, vec![1]);
        assert!(is_projective(&projective_at::<F32003>(&w, "2").unwrap()).unwrap());
        assert!(!is_projective(&m).unwrap());
        let p = min_proj_pres(&m).unwrap();
        assert_eq!(p.p1_vertices, vec![3]);
        assert!(p.matrix.is_radical());
        assert!(p.p0.projection.compose(&p.d1).unwrap().is_zero());
    }

    #[test]
    fn module_transpose_matches_translate() {
        // tr D(V23) lands back over the window and is V12.
        let w = a4();
        let d = dualize(&thin(&w, &["2", "3"]));
        let t = transpose_module(&d).unwrap().rewindow(&w).unwrap();
        assert!(is_iso(&t, &thin(&w, &["1", "2"])).unwrap());
        assert!(transpose_module(&projective_at::<F32003>(&w, "1").unwrap()).unwrap().is_zero());
    }
}

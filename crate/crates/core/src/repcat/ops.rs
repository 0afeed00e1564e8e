use crate::coalg::WindowRef;
use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::linalg::{Mat, Quotient};

use super::{Rep, RepMap};

/// The subrepresentation spanned vertexwise by the columns of `bases`
/// (assumed independent), with its inclusion.
pub fn sub_rep<S: Scalar>(m: &Rep<S>, bases: Vec<Mat<S>>) -> Result<(Rep<S>, RepMap<S>)> {
    let w = m.window();
    let dims: Vec<usize> = bases.iter().map(Mat::cols).collect();
    let mut mats = Vec::with_capacity(w.arrow_count());
    for (a, arrow) in w.quiver().arrows().iter().enumerate() {
        let moved = m.mat(a) * &bases[arrow.source];
        let x = bases[arrow.target].solve(&moved)?.ok_or_else(|| {
            ArsError::InvalidRep(format!(
                "subspace is not closed under arrow `{}`",
                arrow.label
            ))
        })?;
        mats.push(x);
    }
    let sub = Rep::new_unchecked(w.clone(), dims, mats);
    let inclusion = RepMap::new_unchecked(sub.clone(), m.clone(), bases);
    Ok((sub, inclusion))
}

/// The quotient of `m` by the subrepresentation spanned by `bases`, with the
/// projection.
pub fn quotient_rep<S: Scalar>(m: &Rep<S>, bases: &[Mat<S>]) -> Result<(Rep<S>, RepMap<S>)> {
    let w = m.window();
    let quotients: Vec<Quotient<S>> = bases.iter().map(Quotient::new).collect();
    let dims: Vec<usize> = quotients.iter().map(Quotient::dim).collect();
    let mut mats = Vec::with_capacity(w.arrow_count());
    for (a, arrow) in w.quiver().arrows().iter().enumerate() {
        let moved_sub = m.mat(a) * quotients[arrow.source].sub_basis();
        if !quotients[arrow.target].project(&moved_sub).is_zero() {
            return Err(ArsError::InvalidRep(format!(
                "subspace is not closed under arrow `{}`",
                arrow.label
            )));
        }
        let lifted = m.mat(a) * quotients[arrow.source].lifts();
        mats.push(quotients[arrow.target].project(&lifted));
    }
    let q = Rep::new_unchecked(w.clone(), dims, mats);
    let projection = RepMap::new_unchecked(
        m.clone(),
        q.clone(),
        quotients.iter().map(Quotient::projection).collect(),
    );
    Ok((q, projection))
}

pub fn kernel<S: Scalar>(f: &RepMap<S>) -> Result<(Rep<S>, RepMap<S>)> {
    sub_rep(f.source(), f.comps().iter().map(Mat::kernel_basis).collect())
}

pub fn image<S: Scalar>(f: &RepMap<S>) -> Result<(Rep<S>, RepMap<S>)> {
    sub_rep(f.target(), f.comps().iter().map(Mat::image_basis).collect())
}

pub fn cokernel<S: Scalar>(f: &RepMap<S>) -> Result<(Rep<S>, RepMap<S>)> {
    let images: Vec<Mat<S>> = f.comps().iter().map(Mat::image_basis).collect();
    quotient_rep(f.target(), &images)
}

/// A direct sum with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSum<S> {
    pub rep: Rep<S>,
    pub injections: Vec<RepMap<S>>,
    pub projections: Vec<RepMap<S>>,
}

pub fn direct_sum<S: Scalar>(parts: &[Rep<S>]) -> Result<DirectSum<S>> {
    let first = parts
        .first()
        .ok_or_else(|| ArsError::InvalidRep("direct sum of no summands".into()))?;
    for p in parts {
        first.same_window(p)?;
    }
    let w = first.window().clone();
    let nv = w.vertex_count();
    let dims: Vec<usize> = (0..nv)
        .map(|v| parts.iter().map(|p| p.dim(v)).sum())
        .collect();
    let mats = (0..w.arrow_count())
        .map(|a| Mat::block_diagonal(&parts.iter().map(|p| p.mat(a).clone()).collect::<Vec<_>>()))
        .collect();
    let rep = Rep::new_unchecked(w, dims.clone(), mats);
    let mut offsets = vec![0usize; nv];
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    for p in parts {
        let mut inj = Vec::with_capacity(nv);
        let mut proj = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut i = Mat::zeros(dims[v], p.dim(v));
            i.set_block(offsets[v], 0, &Mat::identity(p.dim(v)));
            proj.push(i.transpose());
            inj.push(i);
            offsets[v] += p.dim(v);
        }
        injections.push(RepMap::new_unchecked(p.clone(), rep.clone(), inj));
        projections.push(RepMap::new_unchecked(rep.clone(), p.clone(), proj));
    }
    Ok(DirectSum {
        rep,
        injections,
        projections,
    })
}

/// The socle: at each vertex the common kernel of the outgoing arrows.
pub fn socle<S: Scalar>(m: &Rep<S>) -> Result<(Rep<S>, RepMap<S>)> {
    let w = m.window();
    let bases = (0..w.vertex_count())
        .map(|v| {
            let outgoing: Vec<Mat<S>> = w.quiver().outgoing(v).map(|a| m.mat(a).clone()).collect();
            Mat::vstack_all(m.dim(v), &outgoing).map(|stack| stack.kernel_basis())
        })
        .collect::<Result<_>>()?;
    sub_rep(m, bases)
}

/// The indecomposable injective with socle `S(v)`: basis the paths ending at
/// `v`, an arrow acting by cancelling itself off the front of a path.
pub fn injective_at<S: Scalar>(window: &WindowRef, v: &str) -> Result<Rep<S>> {
    let target = window.vertex(v)?;
    let bases: Vec<Vec<usize>> = (0..window.vertex_count())
        .map(|u| window.paths_between(u, target))
        .collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut mats = Vec::with_capacity(window.arrow_count());
    for (a, arrow) in window.quiver().arrows().iter().enumerate() {
        let mut m = Mat::zeros(dims[arrow.target], dims[arrow.source]);
        for (j, &q) in bases[arrow.source].iter().enumerate() {
            let path = window.path(q);
            if path.arrows.first() == Some(&a) {
                let rest = crate::coalg::Path {
                    start: arrow.target,
                    end: path.end,
                    arrows: path.arrows[1..].to_vec(),
                };
                let r = window.path_index(&rest).expect("suffix of a window path");
                let i = bases[arrow.target]
                    .iter()
                    .position(|&x| x == r)
                    .expect("suffix ends at v");
                m[(i, j)] = S::one();
            }
        }
        mats.push(m);
    }
    Rep::new(window.clone(), dims, mats)
}

/// The indecomposable projective with top `S(v)`: basis the paths starting
/// at `v`, an arrow acting by appending itself when the result stays in the
/// window.
pub fn projective_at<S: Scalar>(window: &WindowRef, v: &str) -> Result<Rep<S>> {
    let source = window.vertex(v)?;
    let bases: Vec<Vec<usize>> = (0..window.vertex_count())
        .map(|u| window.paths_between(source, u))
        .collect();
    let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
    let mut mats = Vec::with_capacity(window.arrow_count());
    for (a, arrow) in window.quiver().arrows().iter().enumerate() {
        let mut m = Mat::zeros(dims[arrow.target], dims[arrow.source]);
        let Some(a_path) = window.arrow_path(a) else {
            mats.push(m);
            continue;
        };
        for (j, &x) in bases[arrow.source].iter().enumerate() {
            if let Some(r) = window.concat(x, a_path) {
                let i = bases[arrow.target]
                    .iter()
                    .position(|&y| y == r)
                    .expect("extension starts at v");
                m[(i, j)] = S::one();
            }
        }
        mats.push(m);
    }
    Rep::new(window.clone(), dims, mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::{Quiver, Window};
    use crate::repcat::is_iso;
    use crate::F32003;

    fn a4() -> WindowRef {
        Window::full(Quiver::linear_a(4)).unwrap()
    }

    fn thin(w: &WindowRef, vs: &[&str]) -> Rep<F32003> {
        Rep::thin(w.clone(), vs).unwrap()
    }

    #[test]
    fn kernel_image_cokernel() {
        let w = a4();
        let v13 = thin(&w, &["1", "2", "3"]);
        let (k, _) = kernel(&RepMap::identity(&v13)).unwrap();
        assert!(k.is_zero());
        let v23 = thin(&w, &["2", "3"]);
        let inc = &crate::repcat::hom_basis(&v23, &v13).unwrap()[0];
        assert!(inc.is_injective());
        let (c, p) = cokernel(inc).unwrap();
        c.validate().unwrap();
        p.validate().unwrap();
        assert!(is_iso(&c, &thin(&w, &["1"])).unwrap());
        let (im, _) = image(inc).unwrap();
        assert!(is_iso(&im, &v23).unwrap());
        let sum = direct_sum(&[thin(&w, &["1"]), thin(&w, &["2"])]).unwrap();
        assert_eq!(sum.rep.dims(), &[1, 1, 0, 0]);
        for (i, p) in sum.injections.iter().zip(&sum.projections) {
            i.validate().unwrap();
            p.validate().unwrap();
            assert!(p.compose(i).unwrap().is_iso());
        }
    }

    #[test]
    fn socles() {
        let w = a4();
        let (s, _) = socle(&thin(&w, &["2", "3"])).unwrap();
        assert_eq!(s.dims(), &[0, 0, 1, 0]);
        let (s, _) = socle(&thin(&w, &["2"])).unwrap();
        assert_eq!(s.dims(), &[0, 1, 0, 0]);
        let i3 = injective_at::<F32003>(&w, "3").unwrap();
        let (s, _) = socle(&i3).unwrap();
        assert_eq!(s.dims(), &[0, 0, 1, 0]);
    }

    #[test]
    fn injectives_and_projectives() {
        let w = a4();
        assert_eq!(injective_at::<F32003>(&w, "3").unwrap().dims(), &[1, 1, 1, 0]);
        assert!(is_iso(&injective_at::<F32003>(&w, "3").unwrap(), &thin(&w, &["1", "2", "3"])).unwrap());
        assert_eq!(projective_at::<F32003>(&w, "2").unwrap().dims(), &[0, 1, 1, 1]);
        let d = Window::full(Quiver::d_infinity_truncated(3)).unwrap();
        let i1 = injective_at::<F32003>(&d, "1").unwrap();
        assert_eq!(i1.dims(), &[1, 1, 1, 0, 0]);
        let flat = Window::new(Quiver::linear_a(3), 0);
        for v in ["1", "2", "3"] {
            let i = injective_at::<F32003>(&flat, v).unwrap();
            assert_eq!(i, Rep::simple(flat.clone(), v).unwrap());
        }
        let lp = Window::new(Quiver::single_loop(), 3);
        assert_eq!(injective_at::<F32003>(&lp, "v").unwrap().total_dim(), 4);
        assert_eq!(projective_at::<F32003>(&lp, "v").unwrap().total_dim(), 4);
    }
}

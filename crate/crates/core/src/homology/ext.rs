use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::linalg::{Mat, Quotient};
use crate::repcat::{
    cokernel, direct_sum, hom_dim, kernel, EndAlgebra, HomSpace, Rep, RepMap, ShortExact,
};

use super::injective::injective_hull;
use super::projective::{projective_cover, ProjectiveCover};

/// `Ext¹(C, A)` as `Hom(Ω, A)` modulo maps extending over the projective
/// cover `P0` of `C`, where `Ω = ker(P0 -> C)`.
#[derive(Clone, Debug)]
pub struct Ext1<S> {
    c: Rep<S>,
    a: Rep<S>,
    cover: ProjectiveCover<S>,
    omega: Rep<S>,
    inclusion: RepMap<S>,
    homs: HomSpace<S>,
    quotient: Quotient<S>,
}

pub fn ext1<S: Scalar>(c: &Rep<S>, a: &Rep<S>) -> Result<Ext1<S>> {
    if **c.window() != **a.window() {
        return Err(ArsError::WindowMismatch("Ext between different windows".into()));
    }
    let cover = projective_cover(c)?;
    let (omega, inclusion) = kernel(&cover.projection)?;
    let homs = HomSpace::new(&omega, a)?;
    let restricted = HomSpace::new(&cover.cover, a)?
        .basis()
        .iter()
        .map(|h| {
            let r = h.compose(&inclusion)?;
            homs.coordinates(&r)?
                .ok_or_else(|| ArsError::Internal("restriction outside Hom(Ω, A)".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let sub = coordinate_columns(homs.dim(), restricted)?;
    let quotient = Quotient::new(&sub);
    Ok(Ext1 {
        c: c.clone(),
        a: a.clone(),
        cover,
        omega,
        inclusion,
        homs,
        quotient,
    })
}

fn coordinate_columns<S: Scalar>(rows: usize, cols: Vec<Vec<S>>) -> Result<Mat<S>> {
    let n = cols.len();
    Ok(Mat::from_vec(n, rows, cols.into_iter().flatten().collect())?.transpose())
}

impl<S: Scalar> Ext1<S> {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }

    pub fn c(&self) -> &Rep<S> {
        &self.c
    }

    pub fn a(&self) -> &Rep<S> {
        &self.a
    }

    pub fn syzygy(&self) -> &Rep<S> {
        &self.omega
    }

    /// A map `Ω -> A` representing the class with the given coordinates.
    pub fn representative(&self, coeffs: &[S]) -> Result<RepMap<S>> {
        if coeffs.len() != self.dim() {
            return Err(ArsError::DimensionMismatch(format!(
                "{} coordinates for an Ext group of dimension {}",
                coeffs.len(),
                self.dim()
            )));
        }
        let hom_coords = self.quotient.lifts() * &Mat::column_vector(coeffs.to_vec());
        Ok(self.homs.combination(&hom_coords.column(0)))
    }

    /// Coordinates of the class of `φ: Ω -> A`.
    pub fn class_of(&self, phi: &RepMap<S>) -> Result<Vec<S>> {
        let coords = self
            .homs
            .coordinates(phi)?
            .ok_or_else(|| ArsError::InvalidMap("not a map from the syzygy".into()))?;
        Ok(self.quotient.project(&Mat::column_vector(coords)).column(0))
    }

    /// The right action of an endomorphism `r` of `C`, as a matrix on Ext
    /// coordinates: lift `r` to the cover, restrict to `Ω`, precompose.
    pub fn end_action(&self, r: &RepMap<S>) -> Result<Mat<S>> {
        let p0 = &self.cover.cover;
        let pi = &self.cover.projection;
        let target = r.compose(pi)?.flatten();
        let space = HomSpace::new(p0, p0)?;
        let images = space
            .basis()
            .iter()
            .map(|b| Ok(pi.compose(b)?.flatten()))
            .collect::<Result<Vec<_>>>()?;
        let system = coordinate_columns(target.len(), images)?;
        let x = system
            .solve(&Mat::column_vector(target))?
            .ok_or_else(|| ArsError::Internal("endomorphism does not lift".into()))?;
        let lift = space.combination(&x.column(0));
        let comps = (0..self.omega.dims().len())
            .map(|v| {
                let moved = lift.comp(v) * self.inclusion.comp(v);
                self.inclusion
                    .comp(v)
                    .solve(&moved)?
                    .ok_or_else(|| ArsError::Internal("lift does not preserve Ω".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let restricted = RepMap::new(self.omega.clone(), self.omega.clone(), comps)?;
        let mut out = Mat::zeros(self.dim(), self.dim());
        for k in 0..self.dim() {
            let mut e = vec![S::zero(); self.dim()];
            e[k] = S::one();
            let moved = self.representative(&e)?.compose(&restricted)?;
            for (i, x) in self.class_of(&moved)?.into_iter().enumerate() {
                out[(i, k)] = x;
            }
        }
        Ok(out)
    }

    /// Classes killed by the radical of `End(C)`, as columns of coordinates.
    pub fn socle(&self, end: &EndAlgebra<S>) -> Result<Mat<S>> {
        let actions = end
            .radical()
            .iter()
            .map(|r| self.end_action(r))
            .collect::<Result<Vec<_>>>()?;
        Ok(Mat::vstack_all(self.dim(), &actions)?.kernel_basis())
    }

    /// The extension `0 -> A -> B -> C -> 0` of a class, as the pushout of
    /// `0 -> Ω -> P0 -> C -> 0` along its representative.
    pub fn realize(&self, coeffs: &[S]) -> Result<ShortExact<S>> {
        let phi = self.representative(coeffs)?;
        let sum = direct_sum(&[self.a.clone(), self.cover.cover.clone()])?;
        let minus = S::zero() - S::one();
        let glue = RepMap::into_sum(&[phi, self.inclusion.scale(&minus)], &sum.rep)?;
        let (b, q) = cokernel(&glue)?;
        let f = q.compose(&sum.injections[0])?;
        let h = self.cover.projection.compose(&sum.projections[1])?;
        let comps = (0..b.dims().len())
            .map(|v| {
                q.comp(v)
                    .solve_left(h.comp(v))?
                    .ok_or_else(|| ArsError::Internal("pushout map does not factor".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let g = RepMap::new(b, self.c.clone(), comps)?;
        ShortExact::new(f, g)
    }
}

/// `dim Ext¹(C, A)` from an injective envelope `A -> I`:
/// `dim Hom(C, I/A) - dim Hom(C, I) + dim Hom(C, A)`.
pub fn ext1_dim_injective<S: Scalar>(c: &Rep<S>, a: &Rep<S>) -> Result<usize> {
    let hull = injective_hull(a)?;
    let (q, _) = cokernel(&hull.embedding)?;
    Ok(hom_dim(c, &q)? + hom_dim(c, a)? - hom_dim(c, &hull.hull)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::{Quiver, Window, WindowRef};
    use crate::repcat::{end_algebra, injective_at, is_iso};
    use crate::F32003;

    fn a4() -> WindowRef {
        Window::full(Quiver::linear_a(4)).unwrap()
    }

    fn thin(w: &WindowRef, vs: &[&str]) -> Rep<F32003> {
        Rep::thin(w.clone(), vs).unwrap()
    }

    #[test]
    fn ext_dimensions_agree() {
        let w = a4();
        let reps = [
            thin(&w, &["1", "2"]),
            thin(&w, &["2", "3"]),
            thin(&w, &["2"]),
            thin(&w, &["1", "2", "3"]),
            thin(&w, &["3", "4"]),
        ];
        for c in &reps {
            for a in &reps {
                assert_eq!(
                    ext1(c, a).unwrap().dim(),
                    ext1_dim_injective(c, a).unwrap(),
                    "{c:?} {a:?}"
                );
            }
        }
        assert_eq!(ext1(&reps[0], &reps[1]).unwrap().dim(), 1);
        let i3 = injective_at::<F32003>(&w, "3").unwrap();
        assert_eq!(ext1(&reps[0], &i3).unwrap().dim(), 0);
    }

    #[test]
    fn realization_of_the_generator() {
        let w = a4();
        let c = thin(&w, &["1", "2"]);
        let a = thin(&w, &["2", "3"]);
        let e = ext1(&c, &a).unwrap();
        let seq = e.realize(&[F32003::from_i64(1)]).unwrap();
        assert!(!seq.is_split().unwrap());
        assert_eq!(seq.b().dims(), &[1, 2, 1, 0]);
        let split = e.realize(&[F32003::from_i64(0)]).unwrap();
        assert!(split.is_split().unwrap());
        let end = end_algebra(&c).unwrap();
        assert_eq!(e.socle(&end).unwrap().cols(), 1);
        let middle = crate::repcat::direct_sum(&[thin(&w, &["1", "2", "3"]), thin(&w, &["2"])]).unwrap();
        assert!(is_iso(seq.b(), &middle.rep).unwrap());
    }
}

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{ArsError, Result};
use crate::field::{random_scalar, Scalar};
use crate::linalg::Mat;
use crate::poly;

use super::{direct_sum, hom_basis, sub_rep, HomSpace, Rep, RepMap};

const SEED: u64 = 0x5eed_a4a4;
const ISO_TRIALS: usize = 20;
const SPLIT_TRIALS: usize = 64;

/// `End(M)` with a basis of its Jacobson radical.
#[derive(Clone, Debug)]
pub struct EndAlgebra<S> {
    space: HomSpace<S>,
    radical: Vec<RepMap<S>>,
}

impl<S: Scalar> EndAlgebra<S> {
    pub fn rep(&self) -> &Rep<S> {
        self.space.source()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn basis(&self) -> &[RepMap<S>] {
        self.space.basis()
    }

    pub fn radical(&self) -> &[RepMap<S>] {
        &self.radical
    }

    pub fn radical_dim(&self) -> usize {
        self.radical.len()
    }

    /// A nonzero representation is indecomposable iff its endomorphism
    /// algebra is local, i.e. `End/rad` is one-dimensional over a split
    /// base field.
    pub fn is_local(&self) -> bool {
        self.dim() == self.radical_dim() + 1
    }

    /// Coordinates of `basis[i] ∘ basis[j]`.
    pub fn product(&self, i: usize, j: usize) -> Result<Vec<S>> {
        let b = self.space.basis();
        let p = b[i].compose(&b[j])?;
        self.space
            .coordinates(&p)?
            .ok_or_else(|| ArsError::Internal("End(M) not closed under composition".into()))
    }

    /// Coordinates of an endomorphism.
    pub fn coordinates(&self, f: &RepMap<S>) -> Result<Option<Vec<S>>> {
        self.space.coordinates(f)
    }

    pub fn space(&self) -> &HomSpace<S> {
        &self.space
    }
}

fn check_characteristic<S: Scalar>(dim: usize) -> Result<()> {
    let p = S::characteristic();
    if p != 0 && p <= dim as u64 {
        return Err(ArsError::CharacteristicTooSmall {
            characteristic: p,
            dim,
        });
    }
    Ok(())
}

/// `End(M)` and its radical, the kernel of the trace form
/// `(φ, ψ) ↦ tr(φψ)` on `M`. The form detects the radical when the
/// characteristic exceeds `dim M`.
pub fn end_algebra<S: Scalar>(m: &Rep<S>) -> Result<EndAlgebra<S>> {
    check_characteristic::<S>(m.total_dim())?;
    let space = HomSpace::new(m, m)?;
    let n = space.dim();
    let basis = space.basis();
    let mut gram = Mat::zeros(n, n);
    for i in 0..n {
        for j in i..n {
            let mut t = S::zero();
            for (a, b) in basis[i].comps().iter().zip(basis[j].comps()) {
                let prod = a * b;
                for k in 0..prod.rows() {
                    t = t + prod[(k, k)].clone();
                }
            }
            gram[(i, j)] = t.clone();
            gram[(j, i)] = t;
        }
    }
    let rad = gram.kernel_basis();
    let radical = (0..rad.cols())
        .map(|j| space.combination(&rad.column(j)))
        .collect();
    Ok(EndAlgebra { space, radical })
}

/// One indecomposable summand found by [`decompose`], with its inclusion.
#[derive(Clone, Debug)]
pub struct Piece<S> {
    pub rep: Rep<S>,
    pub inclusion: RepMap<S>,
}

/// An isomorphism class of summands with its multiplicity.
#[derive(Clone, Debug)]
pub struct Summand<S> {
    pub rep: Rep<S>,
    pub multiplicity: usize,
}

#[derive(Clone, Debug)]
pub struct Decomposition<S> {
    pub pieces: Vec<Piece<S>>,
    pub summands: Vec<Summand<S>>,
}

impl<S: Scalar> Decomposition<S> {
    pub fn is_indecomposable(&self) -> bool {
        self.pieces.len() == 1
    }

    /// Number of indecomposable summands counted with multiplicity.
    pub fn len(&self) -> usize {
        self.pieces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    /// The isomorphism `⊕ pieces -> M` assembled from the inclusions.
    pub fn isomorphism(&self) -> Result<RepMap<S>> {
        let reps: Vec<Rep<S>> = self.pieces.iter().map(|p| p.rep.clone()).collect();
        let sum = direct_sum(&reps)?;
        let incl: Vec<RepMap<S>> = self.pieces.iter().map(|p| p.inclusion.clone()).collect();
        RepMap::from_sum(&incl, &sum.rep)
    }
}

/// Krull-Schmidt decomposition by Fitting's lemma: an endomorphism `φ` with
/// an eigenvalue `λ` whose minimal polynomial is not a power of `x - λ`
/// splits `M = ker (φ-λ)^N ⊕ im (φ-λ)^N`. Requires a prime field.
pub fn decompose<S: Scalar>(m: &Rep<S>) -> Result<Decomposition<S>> {
    if S::characteristic() == 0 {
        return Err(ArsError::UnsupportedField(
            "decomposition needs a prime field; got the rationals".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut pieces = Vec::new();
    let mut work = vec![(m.clone(), RepMap::identity(m))];
    while let Some((x, incl)) = work.pop() {
        if x.is_zero() {
            continue;
        }
        let end = end_algebra(&x)?;
        if end.is_local() {
            pieces.push(Piece { rep: x, inclusion: incl });
            continue;
        }
        let (k, i) = split(&x, &end, &mut rng)?;
        for bases in [k, i] {
            let (sub, j) = sub_rep(&x, bases)?;
            work.push((sub, incl.compose(&j)?));
        }
    }
    pieces.sort_by_key(|p| (p.rep.total_dim(), p.rep.dims().to_vec()));
    let mut summands: Vec<Summand<S>> = Vec::new();
    for p in &pieces {
        let mut found = false;
        for s in summands.iter_mut() {
            if is_iso(&s.rep, &p.rep)? {
                s.multiplicity += 1;
                found = true;
                break;
            }
        }
        if !found {
            summands.push(Summand {
                rep: p.rep.clone(),
                multiplicity: 1,
            });
        }
    }
    Ok(Decomposition { pieces, summands })
}

type Split<S> = (Vec<Mat<S>>, Vec<Mat<S>>);

fn split<S: Scalar>(x: &Rep<S>, end: &EndAlgebra<S>, rng: &mut ChaCha8Rng) -> Result<Split<S>> {
    let basis = end.basis();
    let n = x.total_dim();
    let candidates = basis.len() + SPLIT_TRIALS;
    for t in 0..candidates {
        let phi = if t < basis.len() {
            basis[t].clone()
        } else {
            let coeffs: Vec<S> = (0..basis.len()).map(|_| random_scalar(rng)).collect();
            end.space().combination(&coeffs)
        };
        let minpoly = phi.total_matrix().minimal_polynomial()?;
        let deg = poly::degree(&minpoly).unwrap_or(0);
        for lambda in poly::roots(&minpoly, rng) {
            if poly::root_multiplicity(&minpoly, &lambda) == deg {
                continue;
            }
            let mut ker = Vec::with_capacity(x.dims().len());
            let mut img = Vec::with_capacity(x.dims().len());
            for (v, c) in phi.comps().iter().enumerate() {
                let d = x.dim(v);
                let shifted = c - &Mat::identity(d).scale(&lambda);
                let power = shifted.pow(n as u64)?;
                ker.push(power.kernel_basis());
                img.push(power.image_basis());
            }
            return Ok((ker, img));
        }
    }
    Err(ArsError::DecompositionFailed(format!(
        "End has dimension {} with radical {}, but no splitting endomorphism was found",
        end.dim(),
        end.radical_dim()
    )))
}

/// Some isomorphism `X -> Y`, searched among the basis of `Hom(X, Y)` and
/// random combinations of it.
pub fn find_iso<S: Scalar>(x: &Rep<S>, y: &Rep<S>) -> Result<Option<RepMap<S>>> {
    x.same_window(y)?;
    if x.dims() != y.dims() {
        return Ok(None);
    }
    let homs = hom_basis(x, y)?;
    if homs.is_empty() {
        return Ok(if x.is_zero() {
            Some(RepMap::zero(x, y))
        } else {
            None
        });
    }
    if homs.len() != hom_basis(y, y)?.len() || homs.len() != hom_basis(y, x)?.len() {
        return Ok(None);
    }
    if let Some(f) = homs.iter().find(|f| f.is_iso()) {
        return Ok(Some(f.clone()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..ISO_TRIALS {
        let coeffs: Vec<S> = (0..homs.len()).map(|_| random_scalar(&mut rng)).collect();
        let f = RepMap::combination(x, y, &homs, &coeffs);
        if f.is_iso() {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

pub fn is_iso<S: Scalar>(x: &Rep<S>, y: &Rep<S>) -> Result<bool> {
    Ok(find_iso(x, y)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::{Quiver, Window, WindowRef};
    use crate::repcat::injective_at;
    use crate::{Rational, F32003};

    fn a4() -> WindowRef {
        Window::full(Quiver::linear_a(4)).unwrap()
    }

    fn loop_module(n: usize, maxlen: usize) -> Rep<F32003> {
        let w = Window::new(Quiver::single_loop(), maxlen);
        let mut shift = Mat::zeros(n, n);
        for i in 1..n {
            shift[(i, i - 1)] = F32003::from_i64(1);
        }
        Rep::new(w, vec![n], vec![shift]).unwrap()
    }

    #[test]
    fn endomorphism_algebras() {
        let w = a4();
        let s = Rep::<F32003>::simple(w.clone(), "2").unwrap();
        let e = end_algebra(&s).unwrap();
        assert_eq!((e.dim(), e.radical_dim()), (1, 0));
        let v13 = Rep::<F32003>::thin(w.clone(), &["1", "2", "3"]).unwrap();
        let e = end_algebra(&v13).unwrap();
        assert_eq!((e.dim(), e.radical_dim()), (1, 0));
        let e = end_algebra(&loop_module(2, 3)).unwrap();
        assert_eq!((e.dim(), e.radical_dim()), (2, 1));
        assert_eq!(e.product(0, 0).unwrap().len(), 2);
    }

    #[test]
    fn decompositions() {
        let w = a4();
        let v13 = Rep::<F32003>::thin(w.clone(), &["1", "2", "3"]).unwrap();
        let v22 = Rep::<F32003>::thin(w.clone(), &["2"]).unwrap();
        let sum = direct_sum(&[v13.clone(), v22.clone()]).unwrap().rep;
        let d = decompose(&sum).unwrap();
        assert_eq!(d.len(), 2);
        assert!(d.isomorphism().unwrap().is_iso());
        let v23 = Rep::<F32003>::thin(w.clone(), &["2", "3"]).unwrap();
        assert!(decompose(&v23).unwrap().is_indecomposable());
        let i3 = injective_at::<F32003>(&w, "3").unwrap();
        assert!(decompose(&i3).unwrap().is_indecomposable());
        let twice = direct_sum(&[v23.clone(), v23.clone(), v22]).unwrap().rep;
        let d = decompose(&twice).unwrap();
        assert_eq!(d.len(), 3);
        assert_eq!(d.summands.len(), 2);
        assert!(d.summands.iter().any(|s| s.multiplicity == 2 && is_iso(&s.rep, &v23).unwrap()));
    }

    #[test]
    fn decomposing_loop_modules() {
        let v2 = loop_module(2, 3);
        let v1 = {
            let w = v2.window().clone();
            Rep::new(w, vec![1], vec![Mat::zeros(1, 1)]).unwrap()
        };
        let sum = direct_sum(&[v2.clone(), v1.clone(), v2.clone()]).unwrap().rep;
        let d = decompose(&sum).unwrap();
        assert_eq!(d.len(), 3);
        assert!(d.isomorphism().unwrap().is_iso());
    }

    #[test]
    fn rationals_are_rejected() {
        let w = a4();
        let s = Rep::<Rational>::simple(w, "1").unwrap();
        assert!(matches!(decompose(&s), Err(ArsError::UnsupportedField(_))));
    }

    #[test]
    fn iso_search() {
        let w = a4();
        let v23 = Rep::<F32003>::thin(w.clone(), &["2", "3"]).unwrap();
        let mut scaled = v23.mats().to_vec();
        scaled[1] = Mat::from_i64(&[&[7]]);
        let v23b = Rep::new(w.clone(), v23.dims().to_vec(), scaled).unwrap();
        assert!(v23 != v23b);
        assert!(is_iso(&v23, &v23b).unwrap());
        let s2s3 = direct_sum(&[
            Rep::simple(w.clone(), "2").unwrap(),
            Rep::simple(w.clone(), "3").unwrap(),
        ])
        .unwrap()
        .rep;
        assert!(!is_iso(&v23, &s2s3).unwrap());
    }
}

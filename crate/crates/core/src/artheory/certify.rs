use serde::Serialize;

use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::linalg::Mat;
use crate::repcat::{dualize, dualize_map, end_algebra, find_iso, hom_basis, HomSpace, Rep, RepMap, ShortExact};

/// Which half of the almost split property is tested.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Every non-retraction `X -> C` lifts to `B`.
    Right,
    /// Every non-section `A -> X` extends to `B`.
    Left,
}

/// A test object and a map that fails to lift (or extend).
#[derive(Clone, Debug)]
pub struct Witness<S> {
    pub index: usize,
    pub object: Rep<S>,
    pub map: RepMap<S>,
}

#[derive(Clone, Debug)]
pub struct Verdict<S> {
    pub direction: Direction,
    pub tested: usize,
    pub lifting: bool,
    pub non_split: bool,
    pub witness: Option<Witness<S>>,
}

impl<S> Verdict<S> {
    pub fn pass(&self) -> bool {
        self.lifting && self.non_split
    }
}

/// `0 -> DC -> DB -> DA -> 0` over the opposite window.
pub fn dualize_sequence<S: Scalar>(seq: &ShortExact<S>) -> Result<ShortExact<S>> {
    let f = dualize_map(seq.g());
    let g = dualize_map(seq.f());
    let w = f.source().window().clone();
    ShortExact::new(f, g.rewindow(&w)?)
}

/// For each indecomposable `X` in the test set, checks that `Hom(X, B) ->
/// Hom(X, C)` hits every map that is not a retraction: all of `Hom(X, C)`
/// when `X ≇ C`, and `rad End(C) ∘ φ` for an isomorphism `φ: X -> C`.
pub fn is_right_almost_split<S: Scalar>(seq: &ShortExact<S>, testset: &[Rep<S>]) -> Result<Verdict<S>> {
    let c = seq.c();
    let rad_c = end_algebra(c)?.radical().to_vec();
    let mut witness = None;
    for (index, x) in testset.iter().enumerate() {
        let x = x.rewindow(seq.window())?;
        if !end_algebra(&x)?.is_local() {
            return Err(ArsError::Decomposable(format!("test object {index}")));
        }
        let space = HomSpace::new(&x, c)?;
        if space.dim() == 0 {
            continue;
        }
        let lifted = hom_basis(&x, seq.b())?
            .iter()
            .map(|h| coords(&space, &seq.g().compose(h)?))
            .collect::<Result<Vec<_>>>()?;
        let required: Vec<RepMap<S>> = match find_iso(&x, c)? {
            Some(phi) => rad_c.iter().map(|r| r.compose(&phi)).collect::<Result<_>>()?,
            None => space.basis().to_vec(),
        };
        let image = columns(space.dim(), lifted)?;
        for map in required {
            let v = Mat::column_vector(coords(&space, &map)?);
            if !image.column_space_contains(&v) {
                witness = Some(Witness {
                    index,
                    object: x.clone(),
                    map,
                });
                break;
            }
        }
        if witness.is_some() {
            break;
        }
    }
    Ok(Verdict {
        direction: Direction::Right,
        tested: testset.len(),
        lifting: witness.is_none(),
        non_split: !seq.is_split()?,
        witness,
    })
}

/// The dual check: every non-section `A -> X` extends along `f`, tested as
/// the right-hand check of the dual sequence against the dual test set.
pub fn is_left_almost_split<S: Scalar>(seq: &ShortExact<S>, testset: &[Rep<S>]) -> Result<Verdict<S>> {
    let dual = dualize_sequence(seq)?;
    let duals: Vec<Rep<S>> = testset.iter().map(dualize).collect();
    let v = is_right_almost_split(&dual, &duals)?;
    let witness = match v.witness {
        Some(w) => {
            let object = testset[w.index].rewindow(seq.window())?;
            let map = dualize_map(&w.map).rewindow(seq.window())?;
            Some(Witness {
                index: w.index,
                object,
                map,
            })
        }
        None => None,
    };
    Ok(Verdict {
        direction: Direction::Left,
        tested: v.tested,
        lifting: v.lifting,
        non_split: v.non_split,
        witness,
    })
}

fn coords<S: Scalar>(space: &HomSpace<S>, map: &RepMap<S>) -> Result<Vec<S>> {
    space
        .coordinates(map)?
        .ok_or_else(|| ArsError::Internal("map outside its Hom space".into()))
}

fn columns<S: Scalar>(rows: usize, cols: Vec<Vec<S>>) -> Result<Mat<S>> {
    let n = cols.len();
    Ok(Mat::from_vec(n, rows, cols.into_iter().flatten().collect())?.transpose())
}

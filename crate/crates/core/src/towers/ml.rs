use serde::Serialize;

use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::linalg::Mat;
use crate::repcat::{cotensor_window, decompose, is_iso, HomSpace, Rep, RepMap, ShortExact};

use super::chain::WindowChain;

/// `A -f-> B -g-> C` of plain vector spaces, dimensions read off the
/// matrix shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSeq<S> {
    pub f: Mat<S>,
    pub g: Mat<S>,
}

impl<S: Scalar> LinearSeq<S> {
    pub fn new(f: Mat<S>, g: Mat<S>) -> Result<Self> {
        if f.rows() != g.cols() {
            return Err(ArsError::DimensionMismatch("f and g are not composable".into()));
        }
        Ok(LinearSeq { f, g })
    }

    pub fn dims(&self) -> [usize; 3] {
        [self.f.cols(), self.f.rows(), self.g.rows()]
    }

    /// `0 -> A -> B -> C -> 0` exact.
    pub fn is_exact(&self) -> bool {
        let [a, b, c] = self.dims();
        (&self.g * &self.f).is_zero()
            && self.f.rank() == a
            && self.g.rank() == c
            && a + c == b
    }
}

/// An inverse system of linear sequences; `maps[i]` runs from level `i + 1`
/// to level `i` on all three terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearTower<S> {
    pub levels: Vec<LinearSeq<S>>,
    pub maps: Vec<[Mat<S>; 3]>,
}

impl<S: Scalar> LinearTower<S> {
    pub fn new(levels: Vec<LinearSeq<S>>, maps: Vec<[Mat<S>; 3]>) -> Result<Self> {
        if levels.is_empty() || maps.len() + 1 != levels.len() {
            return Err(ArsError::Precondition(
                "a tower needs one connecting map between consecutive levels".into(),
            ));
        }
        for (i, [a, b, c]) in maps.iter().enumerate() {
            let (hi, lo) = (&levels[i + 1], &levels[i]);
            let (dh, dl) = (hi.dims(), lo.dims());
            for (k, m) in [a, b, c].into_iter().enumerate() {
                if m.shape() != (dl[k], dh[k]) {
                    return Err(ArsError::DimensionMismatch(format!(
                        "connecting map {i}, term {k}: shape {:?}",
                        m.shape()
                    )));
                }
            }
            if &(b * &hi.f) != &(&lo.f * a) {
                return Err(ArsError::NonCommuting(format!("connecting map {i}, left square")));
            }
            if &(c * &hi.g) != &(&lo.g * b) {
                return Err(ArsError::NonCommuting(format!("connecting map {i}, right square")));
            }
        }
        Ok(LinearTower { levels, maps })
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Composite `level j -> level i` on term `k`, for `j >= i`.
    fn composite(&self, k: usize, i: usize, j: usize) -> Mat<S> {
        let mut acc = Mat::identity(self.levels[j].dims()[k]);
        for l in (i..j).rev() {
            acc = &self.maps[l][k] * &acc;
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MlLevel {
    pub dims: [usize; 3],
    pub stable_dims: [usize; 3],
    /// Smallest `j` with `Im(level j -> level i)` equal to the deepest image
    /// available, per term.
    pub stable_depth: [usize; 3],
    pub level_exact: bool,
    /// `S_i(C) ⊆ g_i(S_i(B))`.
    pub lifts: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MlReport {
    pub levels: Vec<MlLevel>,
    /// Stable dimensions at the deepest level whose images were seen to
    /// stabilize.
    pub limit_dims: [usize; 3],
    pub exact: bool,
}

impl MlReport {
    pub fn verdict(&self) -> &'static str {
        if self.exact {
            "exact"
        } else {
            "not exact"
        }
    }
}

/// Stable images and exactness of the inverse limit. With exact levels the
/// limit is left exact; it is right exact when every stable image of `C` is
/// hit by the stable image of `B`, since the kernels are finite-dimensional
/// and hence satisfy the Mittag-Leffler condition.
pub fn ml_check<S: Scalar>(t: &LinearTower<S>) -> Result<MlReport> {
    let n = t.len();
    let mut levels = Vec::with_capacity(n);
    let mut limit_level = 0;
    for i in 0..n {
        let mut stable = Vec::with_capacity(3);
        let mut depth = [i; 3];
        for (k, d) in depth.iter_mut().enumerate() {
            let deepest = t.composite(k, i, n - 1).image_basis();
            let mut j = i;
            while j < n - 1 && t.composite(k, i, j).rank() != deepest.cols() {
                j += 1;
            }
            *d = j;
            stable.push(deepest);
        }
        let lvl = &t.levels[i];
        let hit = &lvl.g * &stable[1];
        let lifts = hit.column_space_contains(&stable[2]);
        if depth.iter().all(|&d| d < n - 1) {
            limit_level = i;
        }
        levels.push(MlLevel {
            dims: lvl.dims(),
            stable_dims: [stable[0].cols(), stable[1].cols(), stable[2].cols()],
            stable_depth: depth,
            level_exact: lvl.is_exact(),
            lifts,
        });
    }
    let exact = levels.iter().all(|l| l.level_exact && l.lifts);
    Ok(MlReport {
        limit_dims: levels[limit_level].stable_dims,
        levels,
        exact,
    })
}

/// `Hom(X_i, d)` for the truncations `X_i = X□w_i` along a chain, with the
/// restriction maps `Hom(X_{i+1}, d) -> Hom(X_i, d)`. `X` and `d` live over
/// the last window. Levels where `X_i` has a summand isomorphic to `C` are
/// rejected: the identity of `C` does not lift, so such a level is not exact.
pub fn hom_tower<S: Scalar>(x: &Rep<S>, d: &ShortExact<S>, chain: &WindowChain) -> Result<LinearTower<S>> {
    let w = chain.last();
    let x = x.rewindow(w)?;
    let d = d.rewindow(w)?;
    let mut subs: Vec<RepMap<S>> = Vec::with_capacity(chain.len());
    for wi in &chain.windows {
        subs.push(cotensor_window(&x, wi)?.inclusion);
    }
    for (i, inc) in subs.iter().enumerate() {
        for s in decompose(inc.source())?.summands {
            if is_iso(&s.rep, d.c())? {
                return Err(ArsError::Precondition(format!(
                    "the truncation at level {i} has a summand isomorphic to the end term"
                )));
            }
        }
    }
    let spaces = subs
        .iter()
        .map(|inc| {
            let xi = inc.source();
            Ok([
                HomSpace::new(xi, d.a())?,
                HomSpace::new(xi, d.b())?,
                HomSpace::new(xi, d.c())?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let induced = |space: &HomSpace<S>, target: &HomSpace<S>, post: Option<&RepMap<S>>, pre: Option<&RepMap<S>>| -> Result<Mat<S>> {
        let mut m = Mat::zeros(target.dim(), space.dim());
        for (j, h) in space.basis().iter().enumerate() {
            let mut h = h.clone();
            if let Some(p) = pre {
                h = h.compose(p)?;
            }
            if let Some(p) = post {
                h = p.compose(&h)?;
            }
            let coords = target
                .coordinates(&h)?
                .ok_or_else(|| ArsError::Internal("induced map leaves its Hom space".into()))?;
            for (i, c) in coords.into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        Ok(m)
    };
    let levels = spaces
        .iter()
        .map(|[a, b, c]| LinearSeq::new(induced(a, b, Some(d.f()), None)?, induced(b, c, Some(d.g()), None)?))
        .collect::<Result<Vec<_>>>()?;
    let mut maps = Vec::with_capacity(chain.len().saturating_sub(1));
    for i in 0..chain.len().saturating_sub(1) {
        // X_i ⊆ X_{i+1}: the inclusion of sub-representations of X.
        let (small, big) = (&subs[i], &subs[i + 1]);
        let comps = (0..small.comps().len())
            .map(|v| {
                big.comp(v)
                    .solve(small.comp(v))?
                    .ok_or_else(|| ArsError::Internal("truncations are not nested".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let step = RepMap::new(small.source().clone(), big.source().clone(), comps)?;
        let m: Vec<Mat<S>> = (0..3)
            .map(|k| induced(&spaces[i + 1][k], &spaces[i][k], None, Some(&step)))
            .collect::<Result<_>>()?;
        maps.push([m[0].clone(), m[1].clone(), m[2].clone()]);
    }
    LinearTower::new(levels, maps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::F32003;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn m(rows: &[&[i64]]) -> Mat<F32003> {
        Mat::from_i64(rows)
    }

    fn standard() -> LinearSeq<F32003> {
        LinearSeq::new(m(&[&[1], &[0]]), m(&[&[0, 1]])).unwrap()
    }

    #[test]
    fn constant_tower() {
        let id = |n| Mat::<F32003>::identity(n);
        let t = LinearTower::new(vec![standard(); 3], vec![[id(1), id(2), id(1)]; 2]).unwrap();
        let r = ml_check(&t).unwrap();
        assert!(r.exact);
        assert_eq!(r.limit_dims, [1, 2, 1]);
    }

    #[test]
    fn zero_connecting_map() {
        let id = |n| Mat::<F32003>::identity(n);
        let z = |a, b| Mat::<F32003>::zeros(a, b);
        let t = LinearTower::new(
            vec![standard(); 3],
            vec![[z(1, 1), z(2, 2), z(1, 1)], [id(1), id(2), id(1)]],
        )
        .unwrap();
        let r = ml_check(&t).unwrap();
        assert_eq!(r.levels[0].stable_dims, [0, 0, 0]);
        assert_eq!(r.levels[1].stable_dims, [1, 2, 1]);
        assert!(r.exact);
    }

    #[test]
    fn non_commuting_rejected() {
        let id = |n| Mat::<F32003>::identity(n);
        let swap = m(&[&[0, 1], &[1, 0]]);
        let err = LinearTower::new(vec![standard(); 2], vec![[id(1), swap, id(1)]]).unwrap_err();
        assert!(matches!(err, ArsError::NonCommuting(_)));
    }

    #[test]
    fn random_towers_are_exact() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..5 {
            let t = super::super::random_linear_tower::<F32003, _>(&mut rng, 4, 3);
            assert!(ml_check(&t).unwrap().exact);
            let _ = rng.gen::<u8>();
        }
    }
}

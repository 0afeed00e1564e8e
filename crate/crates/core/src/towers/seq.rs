use serde::{Deserialize, Serialize};

use crate::artheory::{almost_split_sequence, dualize_sequence};
use crate::coalg::WindowRef;
use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::homology::is_projective;
use crate::linalg::Mat;
use crate::repcat::{cotensor_window, dualize_map, hom_basis, Rep, RepMap, ShortExact, Truncation};

use super::chain::WindowChain;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TowerDirection {
    /// Connecting maps run from level `i` to level `i + 1`.
    Forward,
    /// Connecting maps run from level `i + 1` to level `i`.
    Inverse,
}

/// A morphism of short exact sequences: three maps making both squares
/// commute.
#[derive(Clone, Debug)]
pub struct SeqMap<S> {
    pub a: RepMap<S>,
    pub b: RepMap<S>,
    pub c: RepMap<S>,
}

impl<S: Scalar> SeqMap<S> {
    /// Checks `b f = f' a` and `c g = g' b`.
    pub fn new(src: &ShortExact<S>, tgt: &ShortExact<S>, a: RepMap<S>, b: RepMap<S>, c: RepMap<S>) -> Result<Self> {
        let left = b.compose(src.f())?.sub(&tgt.f().compose(&a)?)?;
        if !left.is_zero() {
            return Err(ArsError::NonCommuting("left square".into()));
        }
        let right = c.compose(src.g())?.sub(&tgt.g().compose(&b)?)?;
        if !right.is_zero() {
            return Err(ArsError::NonCommuting("right square".into()));
        }
        Ok(SeqMap { a, b, c })
    }

    pub fn compose(&self, inner: &SeqMap<S>) -> Result<Self> {
        Ok(SeqMap {
            a: self.a.compose(&inner.a)?,
            b: self.b.compose(&inner.b)?,
            c: self.c.compose(&inner.c)?,
        })
    }

    pub fn rewindow(&self, w: &WindowRef) -> Result<Self> {
        Ok(SeqMap {
            a: self.a.rewindow(w)?,
            b: self.b.rewindow(w)?,
            c: self.c.rewindow(w)?,
        })
    }

    pub fn is_iso(&self) -> bool {
        self.a.is_iso() && self.b.is_iso() && self.c.is_iso()
    }
}

/// Short exact sequences over a chain of windows with connecting maps.
/// Each connecting map lives over the larger of its two windows, the
/// level from the smaller window transported there.
#[derive(Clone, Debug)]
pub struct SeqTower<S> {
    pub direction: TowerDirection,
    pub windows: Vec<WindowRef>,
    pub levels: Vec<ShortExact<S>>,
    pub connecting: Vec<SeqMap<S>>,
}

impl<S: Scalar> SeqTower<S> {
    /// Checks level windows, map endpoints and commutativity.
    pub fn new(
        direction: TowerDirection,
        levels: Vec<ShortExact<S>>,
        connecting: Vec<SeqMap<S>>,
    ) -> Result<Self> {
        if levels.is_empty() || connecting.len() + 1 != levels.len() {
            return Err(ArsError::Precondition(
                "a tower needs one connecting map between consecutive levels".into(),
            ));
        }
        let windows: Vec<WindowRef> = levels.iter().map(|l| l.window().clone()).collect();
        for (i, m) in connecting.iter().enumerate() {
            let big = &windows[i + 1];
            let (src, tgt) = match direction {
                TowerDirection::Forward => (levels[i].rewindow(big)?, levels[i + 1].clone()),
                TowerDirection::Inverse => (levels[i + 1].clone(), levels[i].rewindow(big)?),
            };
            SeqMap::new(&src, &tgt, m.a.clone(), m.b.clone(), m.c.clone())
                .map_err(|e| ArsError::NonCommuting(format!("connecting map {i}: {e}")))?;
        }
        Ok(SeqTower {
            direction,
            windows,
            levels,
            connecting,
        })
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Composite of the forward connecting maps from level `i` to level
    /// `j >= i`, over window `j`.
    pub fn forward_map(&self, i: usize, j: usize) -> Result<SeqMap<S>> {
        if self.direction != TowerDirection::Forward || i > j || j >= self.len() {
            return Err(ArsError::Precondition("bad forward range".into()));
        }
        let w = &self.windows[j];
        let level = self.levels[i].rewindow(w)?;
        let mut acc = SeqMap {
            a: RepMap::identity(level.a()),
            b: RepMap::identity(level.b()),
            c: RepMap::identity(level.c()),
        };
        for k in i..j {
            acc = self.connecting[k].rewindow(w)?.compose(&acc)?;
        }
        Ok(acc)
    }

    /// Per level, the total dimensions of the three terms.
    pub fn profile(&self) -> Vec<[usize; 3]> {
        self.levels
            .iter()
            .map(|l| [l.a().total_dim(), l.b().total_dim(), l.c().total_dim()])
            .collect()
    }
}

fn restrict_map<S: Scalar>(f: &RepMap<S>, src: &Truncation<S>, tgt: &Truncation<S>, inner: &WindowRef) -> Result<RepMap<S>> {
    let comps = (0..f.comps().len())
        .map(|v| {
            let moved = f.comp(v) * src.inclusion.comp(v);
            tgt.inclusion
                .comp(v)
                .solve(&moved)?
                .ok_or_else(|| ArsError::Internal("map leaves the truncation".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    RepMap::new(src.inclusion.source().clone(), tgt.inclusion.source().clone(), comps)?.rewindow(inner)
}

/// `d□w'`: every term truncated to `w'`, re-verified exact.
pub fn restrict_sequence<S: Scalar>(d: &ShortExact<S>, inner: &WindowRef) -> Result<ShortExact<S>> {
    let ta = cotensor_window(d.a(), inner)?;
    let tb = cotensor_window(d.b(), inner)?;
    let tc = cotensor_window(d.c(), inner)?;
    if tc.rep.total_dim() != d.c().total_dim() {
        return Err(ArsError::Precondition(
            "the window does not contain the coefficient space of the end term".into(),
        ));
    }
    let f = restrict_map(d.f(), &ta, &tb, inner)?;
    let g = restrict_map(d.g(), &tb, &tc, inner)?;
    if !g.is_surjective() {
        return Err(ArsError::Precondition(
            "the truncated middle term does not map onto the end term".into(),
        ));
    }
    ShortExact::new(f, g)
}

/// Almost split sequences ending at `C` over every window of the chain,
/// connected by lifting `g_i` through `g_{i+1}` (the first solution of the
/// linear system) with the identity on `C`.
pub fn build_ass_tower<S: Scalar>(c: &Rep<S>, chain: &WindowChain) -> Result<SeqTower<S>> {
    let mut levels = Vec::with_capacity(chain.len());
    for (i, w) in chain.windows.iter().enumerate() {
        let ci = c.rewindow(w).map_err(|e| {
            ArsError::Precondition(format!("C does not live over window {i}: {e}"))
        })?;
        if is_projective(&ci)? {
            return Err(ArsError::Projective(format!("C is projective over window {i}")));
        }
        levels.push(almost_split_sequence(&ci)?.sequence);
    }
    let mut connecting = Vec::with_capacity(levels.len().saturating_sub(1));
    for i in 0..levels.len().saturating_sub(1) {
        let big = &chain.windows[i + 1];
        let src = levels[i].rewindow(big)?;
        let tgt = &levels[i + 1];
        let b = lift_through(src.g(), tgt.g())?
            .ok_or_else(|| ArsError::Internal(format!("g_{i} does not lift to level {}", i + 1)))?;
        let a_comps = (0..src.a().dims().len())
            .map(|v| {
                let moved = b.comp(v) * src.f().comp(v);
                tgt.f()
                    .comp(v)
                    .solve(&moved)?
                    .ok_or_else(|| ArsError::Internal("lift leaves the image of f".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        let a = RepMap::new(src.a().clone(), tgt.a().clone(), a_comps)?;
        let c_map = RepMap::new(
            src.c().clone(),
            tgt.c().clone(),
            RepMap::identity(src.c()).comps().to_vec(),
        )?;
        connecting.push(SeqMap::new(&src, tgt, a, b, c_map)?);
    }
    SeqTower::new(TowerDirection::Forward, levels, connecting)
}

/// Some `h` with `target ∘ h = map`, from a basis of `Hom(source(map), source(target))`.
pub fn lift_through<S: Scalar>(map: &RepMap<S>, target: &RepMap<S>) -> Result<Option<RepMap<S>>> {
    let homs = hom_basis(map.source(), target.source())?;
    let images = homs
        .iter()
        .map(|h| Ok(target.compose(h)?.flatten()))
        .collect::<Result<Vec<_>>>()?;
    let rhs = map.flatten();
    let n = homs.len();
    let system = Mat::from_vec(n, rhs.len(), images.into_iter().flatten().collect())?.transpose();
    Ok(system
        .solve(&Mat::column_vector(rhs))?
        .map(|x| RepMap::combination(map.source(), target.source(), &homs, &x.column(0))))
}

/// Outcome of [`colimit`].
#[derive(Clone, Debug)]
pub enum Colimit<S> {
    /// Connecting maps are isomorphisms from `level` on; the colimit is
    /// that level's sequence.
    Stabilized { level: usize, sequence: ShortExact<S> },
    NotStabilized { profile: Vec<[usize; 3]> },
}

#[derive(Clone, Debug, Serialize)]
pub struct ColimitReport {
    pub stabilized_at: Option<usize>,
    pub profile: Vec<[usize; 3]>,
}

impl<S: Scalar> Colimit<S> {
    pub fn sequence(&self) -> Option<&ShortExact<S>> {
        match self {
            Colimit::Stabilized { sequence, .. } => Some(sequence),
            Colimit::NotStabilized { .. } => None,
        }
    }
}

/// The colimit of a forward tower, when its connecting maps become
/// isomorphisms within the available prefix. A single-level tower counts as
/// stabilized at 0.
pub fn colimit<S: Scalar>(t: &SeqTower<S>) -> Result<Colimit<S>> {
    if t.direction != TowerDirection::Forward {
        return Err(ArsError::Precondition("colimit needs a forward tower".into()));
    }
    let mut level = t.connecting.len();
    while level > 0 && t.connecting[level - 1].is_iso() {
        level -= 1;
    }
    if level < t.connecting.len() || t.len() == 1 {
        Ok(Colimit::Stabilized {
            level,
            sequence: t.levels[level].clone(),
        })
    } else {
        Ok(Colimit::NotStabilized { profile: t.profile() })
    }
}

pub fn colimit_report<S: Scalar>(t: &SeqTower<S>) -> Result<ColimitReport> {
    let level = match colimit(t)? {
        Colimit::Stabilized { level, .. } => Some(level),
        Colimit::NotStabilized { .. } => None,
    };
    Ok(ColimitReport {
        stabilized_at: level,
        profile: t.profile(),
    })
}

/// Levelwise dual of a forward tower: an inverse tower over the opposite
/// windows, connecting maps transposed.
pub fn dual_tower<S: Scalar>(t: &SeqTower<S>) -> Result<SeqTower<S>> {
    if t.direction != TowerDirection::Forward {
        return Err(ArsError::Precondition("dual_tower needs a forward tower".into()));
    }
    let levels = t
        .levels
        .iter()
        .map(dualize_sequence)
        .collect::<Result<Vec<_>>>()?;
    let connecting = t
        .connecting
        .iter()
        .enumerate()
        .map(|(i, m)| {
            let w = levels[i + 1].window().clone();
            Ok(SeqMap {
                a: dualize_map(&m.c).rewindow(&w)?,
                b: dualize_map(&m.b).rewindow(&w)?,
                c: dualize_map(&m.a).rewindow(&w)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    SeqTower::new(TowerDirection::Inverse, levels, connecting)
}

/// A candidate section `σ: C_level -> B_target` for the colimit.
#[derive(Clone, Debug)]
pub struct ConeMap<S> {
    pub level: usize,
    pub target: usize,
    pub map: RepMap<S>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConeVerdict {
    pub pass: bool,
    pub failure: Option<String>,
}

/// Checks that the cone induces a section of the colimit sequence:
/// `g_j σ_i` is the structure map `C_i -> C_j`, and consecutive `σ`s agree
/// after pushing into a common later level.
pub fn split_limit_check<S: Scalar>(t: &SeqTower<S>, cone: &[ConeMap<S>]) -> Result<ConeVerdict> {
    let fail = |msg: String| Ok(ConeVerdict { pass: false, failure: Some(msg) });
    if cone.is_empty() {
        return fail("empty cone".into());
    }
    for (k, s) in cone.iter().enumerate() {
        if s.target < s.level || s.target >= t.len() {
            return fail(format!("cone map {k} has a bad target level"));
        }
        if k > 0 && (s.level != cone[k - 1].level + 1 || s.target < cone[k - 1].target) {
            return fail(format!("cone map {k} does not follow map {}", k - 1));
        }
        let gamma = t.forward_map(s.level, s.target)?.c;
        let g = t.levels[s.target].g();
        let composite = match g.compose(&s.map) {
            Ok(m) => m,
            Err(e) => return fail(format!("cone map {k} does not compose: {e}")),
        };
        if composite.comps() != gamma.comps() {
            return fail(format!("cone map {k}: g σ differs from the structure map"));
        }
    }
    for k in 1..cone.len() {
        let (s0, s1) = (&cone[k - 1], &cone[k]);
        let mut agreed = false;
        for later in s1.target..t.len() {
            let w = &t.windows[later];
            let lhs = t.forward_map(s0.target, later)?.b.compose(&s0.map.rewindow(w)?)?;
            let step = t.forward_map(s0.level, s1.level)?.c.rewindow(w)?;
            let rhs = t
                .forward_map(s1.target, later)?
                .b
                .compose(&s1.map.rewindow(w)?)?
                .compose(&step)?;
            if lhs.comps() == rhs.comps() {
                agreed = true;
                break;
            }
        }
        if !agreed {
            return fail(format!("cone maps {} and {k} do not commute", k - 1));
        }
    }
    Ok(ConeVerdict { pass: true, failure: None })
}

/// Solves for a cone `σ_i: C_i -> B_{i+1}` over the whole prefix; `None`
/// when the linear conditions have no solution.
pub fn find_cone<S: Scalar>(t: &SeqTower<S>) -> Result<Option<Vec<ConeMap<S>>>> {
    if t.direction != TowerDirection::Forward || t.len() < 2 {
        return Ok(None);
    }
    let n = t.len() - 1;
    let mut bases = Vec::with_capacity(n);
    let mut offsets = Vec::with_capacity(n + 1);
    let mut total = 0;
    for i in 0..n {
        let w = &t.windows[i + 1];
        let ci = t.levels[i].c().rewindow(w)?;
        let basis = hom_basis(&ci, t.levels[i + 1].b())?;
        offsets.push(total);
        total += basis.len();
        bases.push((ci, basis));
    }
    offsets.push(total);
    let mut rows: Vec<(Vec<S>, S)> = Vec::new();
    // g_{i+1} σ_i = connecting c_i
    for i in 0..n {
        let gamma = t.connecting[i].c.flatten();
        let images: Vec<Vec<S>> = bases[i]
            .1
            .iter()
            .map(|h| Ok(t.levels[i + 1].g().compose(h)?.flatten()))
            .collect::<Result<_>>()?;
        for (r, target) in gamma.into_iter().enumerate() {
            let mut row = vec![S::zero(); total];
            for (k, img) in images.iter().enumerate() {
                row[offsets[i] + k] = img[r].clone();
            }
            rows.push((row, target));
        }
    }
    // b_{i+1} σ_i = σ_{i+1} c_i, over window i + 2
    for i in 0..n.saturating_sub(1) {
        let w = &t.windows[i + 2];
        let b = &t.connecting[i + 1].b;
        let c = &t.connecting[i].c.rewindow(w)?;
        let lhs: Vec<Vec<S>> = bases[i]
            .1
            .iter()
            .map(|h| Ok(b.compose(&h.rewindow(w)?)?.flatten()))
            .collect::<Result<_>>()?;
        let rhs: Vec<Vec<S>> = bases[i + 1]
            .1
            .iter()
            .map(|h| Ok(h.compose(c)?.flatten()))
            .collect::<Result<_>>()?;
        let len = lhs.first().or(rhs.first()).map_or(0, Vec::len);
        for r in 0..len {
            let mut row = vec![S::zero(); total];
            for (k, x) in lhs.iter().enumerate() {
                row[offsets[i] + k] = x[r].clone();
            }
            for (k, x) in rhs.iter().enumerate() {
                row[offsets[i + 1] + k] = S::zero() - x[r].clone();
            }
            rows.push((row, S::zero()));
        }
    }
    let m = rows.len();
    let system = Mat::from_vec(m, total, rows.iter().flat_map(|(r, _)| r.clone()).collect())?;
    let rhs = Mat::column_vector(rows.into_iter().map(|(_, b)| b).collect());
    let Some(x) = system.solve(&rhs)? else {
        return Ok(None);
    };
    let x = x.column(0);
    let cone = (0..n)
        .map(|i| {
            let (ci, basis) = &bases[i];
            ConeMap {
                level: i,
                target: i + 1,
                map: RepMap::combination(ci, t.levels[i + 1].b(), basis, &x[offsets[i]..offsets[i + 1]]),
            }
        })
        .collect();
    Ok(Some(cone))
}

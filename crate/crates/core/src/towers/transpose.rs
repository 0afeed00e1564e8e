use serde::Serialize;

use crate::coalg::WindowRef;
use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::homology::{is_injective, transpose_comodule};
use crate::repcat::{cotensor_window, decompose, direct_sum, dualize, dualize_map, find_iso, is_iso, Rep, RepMap};

use super::chain::WindowChain;
use super::seq::TowerDirection;

/// Representations along a chain with connecting maps, each over the larger
/// of its two windows.
#[derive(Clone, Debug)]
pub struct RepTower<S> {
    pub direction: TowerDirection,
    pub levels: Vec<Rep<S>>,
    pub maps: Vec<RepMap<S>>,
}

impl<S: Scalar> RepTower<S> {
    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn total_dims(&self) -> Vec<usize> {
        self.levels.iter().map(Rep::total_dim).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TransposeLevel {
    pub vertices: usize,
    pub dims: Vec<usize>,
    pub total: usize,
    /// `Tr` over this window agrees with the truncation of `Tr` over the
    /// last window.
    pub truncation_agrees: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TransposeReport {
    pub levels: Vec<TransposeLevel>,
    /// First level from which `Tr` no longer changes, if any within the
    /// prefix. A one-level chain never counts as stabilized.
    pub stabilized_at: Option<usize>,
}

/// How the two sides of `Tr_{w'} M ≅ Tr_w M □ w'^op` compare.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TruncationMatch {
    Exact,
    /// Isomorphic once injective summands are removed from both sides.
    UpToInjectives,
    Differs,
}

impl TruncationMatch {
    pub fn holds(self) -> bool {
        self != TruncationMatch::Differs
    }
}

/// The non-injective part of `m`.
fn strip_injectives<S: Scalar>(m: &Rep<S>) -> Result<Rep<S>> {
    let mut parts = Vec::new();
    for s in decompose(m)?.summands {
        if !is_injective(&s.rep)? {
            parts.extend(std::iter::repeat(s.rep).take(s.multiplicity));
        }
    }
    if parts.is_empty() {
        return Ok(Rep::zero(m.window().clone()));
    }
    Ok(direct_sum(&parts)?.rep)
}

/// Compares `Tr_{w'} M` with `Tr_w M □ w'^op` for `w' ⊆ w`, with `m` over `w`.
pub fn truncation_check<S: Scalar>(m: &Rep<S>, inner: &WindowRef) -> Result<TruncationMatch> {
    let outer_tr = transpose_comodule(m)?;
    let inner_tr = transpose_comodule(&m.rewindow(inner)?)?;
    let truncated = cotensor_window(&outer_tr, &inner.opposite())?.rep;
    if truncated.dims() == inner_tr.dims() && is_iso(&truncated, &inner_tr)? {
        return Ok(TruncationMatch::Exact);
    }
    let (a, b) = (strip_injectives(&truncated)?, strip_injectives(&inner_tr)?);
    if a.dims() == b.dims() && is_iso(&a, &b)? {
        Ok(TruncationMatch::UpToInjectives)
    } else {
        Ok(TruncationMatch::Differs)
    }
}

/// `Tr M` over every window of the chain with the inclusions
/// `Tr_i ≅ Tr_{i+1} □ w_i^op ⊆ Tr_{i+1}`.
pub fn transpose_tower<S: Scalar>(m: &Rep<S>, chain: &WindowChain) -> Result<(TransposeReport, RepTower<S>)> {
    let mut levels = Vec::with_capacity(chain.len());
    for (i, w) in chain.windows.iter().enumerate() {
        let mi = m.rewindow(w).map_err(|e| {
            ArsError::Precondition(format!("M does not live over window {i}: {e}"))
        })?;
        levels.push(transpose_comodule(&mi)?);
    }
    let last = levels.last().expect("nonempty chain").clone();
    let mut report = Vec::with_capacity(levels.len());
    for (i, (w, tr)) in chain.windows.iter().zip(&levels).enumerate() {
        let agrees = if i + 1 == levels.len() {
            true
        } else {
            let t = cotensor_window(&last, &w.opposite())?.rep;
            t.dims() == tr.dims() && is_iso(&t, tr)?
        };
        report.push(TransposeLevel {
            vertices: w.vertex_count(),
            dims: tr.dims().to_vec(),
            total: tr.total_dim(),
            truncation_agrees: agrees,
        });
    }
    let mut maps = Vec::with_capacity(levels.len().saturating_sub(1));
    let mut stable_from = levels.len() - 1;
    for i in 0..levels.len().saturating_sub(1) {
        let big = levels[i + 1].window().clone();
        let t = cotensor_window(&levels[i + 1], &chain.windows[i].opposite())?;
        let iso = find_iso(&levels[i], &t.rep)?
            .ok_or_else(|| ArsError::Internal(format!("Tr over window {i} is not a truncation")))?;
        let iso = iso.rewindow(&big)?;
        let map = RepMap::new(
            levels[i].rewindow(&big)?,
            levels[i + 1].clone(),
            t.inclusion.compose(&iso)?.comps().to_vec(),
        )?;
        maps.push(map);
    }
    while stable_from > 0 && maps[stable_from - 1].is_iso() {
        stable_from -= 1;
    }
    let stabilized_at = (levels.len() > 1 && stable_from < levels.len() - 1).then_some(stable_from);
    Ok((
        TransposeReport {
            levels: report,
            stabilized_at,
        },
        RepTower {
            direction: TowerDirection::Forward,
            levels,
            maps,
        },
    ))
}

/// Levelwise dual of a forward tower: the inverse system of duals with the
/// transposed connecting maps.
pub fn dual_rep_tower<S: Scalar>(t: &RepTower<S>) -> Result<RepTower<S>> {
    let direction = match t.direction {
        TowerDirection::Forward => TowerDirection::Inverse,
        TowerDirection::Inverse => TowerDirection::Forward,
    };
    let levels: Vec<Rep<S>> = t.levels.iter().map(dualize).collect();
    let maps = t
        .maps
        .iter()
        .enumerate()
        .map(|(i, m)| dualize_map(m).rewindow(levels[i + 1].window()))
        .collect::<Result<Vec<_>>>()?;
    Ok(RepTower {
        direction,
        levels,
        maps,
    })
}

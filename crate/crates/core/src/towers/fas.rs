use serde::Serialize;

use crate::artheory::{is_left_almost_split, is_right_almost_split, knit, Direction};
use crate::coalg::WindowRef;
use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::repcat::{Rep, RepMap, ShortExact};

/// Dimension cap for the knitted test set; `max_dim` filters below it.
pub const KNIT_CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FasWitness {
    pub index: usize,
    pub object: Vec<usize>,
    /// Vertex-indexed matrices of the offending map, row-major.
    pub map: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FasCertificate {
    pub direction: Direction,
    pub window_vertices: usize,
    pub window_maxlen: usize,
    pub max_dim: usize,
    pub tested: usize,
    pub lifting: bool,
    pub non_split: bool,
    pub pass: bool,
    pub witness: Option<FasWitness>,
    /// A section of `g` when the sequence splits.
    pub section: Option<Vec<Vec<Vec<String>>>>,
}

/// Finitely almost split relative to the indecomposables of `window` of
/// dimension at most `max_dim`, or to an explicit list. The sequence and the
/// test objects are compared over the larger of the two windows.
pub fn certify_fas<S: Scalar>(
    seq: &ShortExact<S>,
    direction: Direction,
    window: &WindowRef,
    max_dim: usize,
    testset: Option<&[Rep<S>]>,
) -> Result<FasCertificate> {
    let objects: Vec<Rep<S>> = match testset {
        Some(list) => list.iter().filter(|x| x.total_dim() <= max_dim).cloned().collect(),
        None => {
            let q = knit::<S>(window, KNIT_CAP.max(max_dim))?;
            if !q.complete {
                return Err(ArsError::BudgetExceeded(format!(
                    "knitting stopped after {} nodes",
                    q.len()
                )));
            }
            q.nodes.into_iter().filter(|x| x.total_dim() <= max_dim).collect()
        }
    };
    let (seq, objects) = if window.is_sub_window_of(seq.window()) {
        let w = seq.window().clone();
        let objects = objects.iter().map(|x| x.rewindow(&w)).collect::<Result<Vec<_>>>()?;
        (seq.clone(), objects)
    } else if seq.window().is_sub_window_of(window) {
        (seq.rewindow(window)?, objects)
    } else {
        return Err(ArsError::NotSubWindow(
            "the test window and the sequence window are not nested".into(),
        ));
    };
    let verdict = match direction {
        Direction::Right => is_right_almost_split(&seq, &objects)?,
        Direction::Left => is_left_almost_split(&seq, &objects)?,
    };
    let witness = verdict.witness.as_ref().map(|w| FasWitness {
        index: w.index,
        object: w.object.dims().to_vec(),
        map: matrices(&w.map),
    });
    let section = if verdict.non_split {
        None
    } else {
        seq.section()?.map(|s| matrices(&s))
    };
    Ok(FasCertificate {
        direction,
        window_vertices: window.vertex_count(),
        window_maxlen: window.maxlen(),
        max_dim,
        tested: verdict.tested,
        lifting: verdict.lifting,
        non_split: verdict.non_split,
        pass: verdict.pass(),
        witness,
        section,
    })
}

fn matrices<S: Scalar>(f: &RepMap<S>) -> Vec<Vec<Vec<String>>> {
    f.comps()
        .iter()
        .map(|m| (0..m.rows()).map(|r| m.row(r).iter().map(Scalar::to_text).collect()).collect())
        .collect()
}

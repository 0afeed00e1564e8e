//! The tower of almost split sequences `d_n` over the one-loop quiver, whose
//! colimit splits although no level does.

use crate::coalg::{Quiver, Window, WindowRef};
use crate::error::Result;
use crate::field::Scalar;
use crate::linalg::Mat;
use crate::repcat::{direct_sum, Rep, RepMap, ShortExact};

use super::seq::{ConeMap, SeqMap, SeqTower, TowerDirection};

/// `k[x]/x^n` over the loop window of length bound `maxlen`.
pub fn loop_module<S: Scalar>(n: usize, w: &WindowRef) -> Result<Rep<S>> {
    let mut shift = Mat::zeros(n, n);
    for i in 1..n {
        shift[(i, i - 1)] = S::one();
    }
    Rep::new(w.clone(), vec![n], vec![shift])
}

/// `V_n -> V_{n+1}`, `x^k ↦ x^{k+1}`.
fn iota<S: Scalar>(n: usize, w: &WindowRef) -> Result<RepMap<S>> {
    let mut m = Mat::zeros(n + 1, n);
    for k in 0..n {
        m[(k + 1, k)] = S::one();
    }
    RepMap::new(loop_module(n, w)?, loop_module(n + 1, w)?, vec![m])
}

/// `V_{n+1} -> V_n`, `x^k ↦ x^k`.
fn pi<S: Scalar>(n: usize, w: &WindowRef) -> Result<RepMap<S>> {
    let mut m = Mat::zeros(n, n + 1);
    for k in 0..n {
        m[(k, k)] = S::one();
    }
    RepMap::new(loop_module(n + 1, w)?, loop_module(n, w)?, vec![m])
}

/// `d_n: 0 -> V_n -(π, ι)-> V_{n-1} ⊕ V_{n+1} -(ι, -π)-> V_n -> 0` over the
/// loop window of length bound `n + 1`.
pub fn loop_sequence<S: Scalar>(n: usize) -> Result<ShortExact<S>> {
    let w = Window::new(Quiver::single_loop(), n + 1);
    let sum = direct_sum(&[loop_module(n - 1, &w)?, loop_module(n + 1, &w)?])?;
    let f = RepMap::into_sum(&[pi(n - 1, &w)?, iota(n, &w)?], &sum.rep)?;
    let minus = S::zero() - S::one();
    let g = RepMap::from_sum(&[iota(n - 1, &w)?, pi(n, &w)?.scale(&minus)], &sum.rep)?;
    ShortExact::new(f, g)
}

/// `d_first, ..., d_{first+count-1}` connected by the inclusions `ι`.
pub fn loop_tower<S: Scalar>(first: usize, count: usize) -> Result<SeqTower<S>> {
    let levels = (first..first + count)
        .map(loop_sequence)
        .collect::<Result<Vec<_>>>()?;
    let mut connecting = Vec::new();
    for (i, n) in (first..first + count - 1).enumerate() {
        let w = levels[i + 1].window().clone();
        let src = levels[i].rewindow(&w)?;
        let b = Mat::block_diagonal(&[iota::<S>(n - 1, &w)?.comp(0).clone(), iota::<S>(n + 1, &w)?.comp(0).clone()]);
        let a = RepMap::new(src.a().clone(), levels[i + 1].a().clone(), iota::<S>(n, &w)?.comps().to_vec())?;
        let b = RepMap::new(src.b().clone(), levels[i + 1].b().clone(), vec![b])?;
        let c = RepMap::new(src.c().clone(), levels[i + 1].c().clone(), iota::<S>(n, &w)?.comps().to_vec())?;
        connecting.push(SeqMap::new(&src, &levels[i + 1], a, b, c)?);
    }
    SeqTower::new(TowerDirection::Forward, levels, connecting)
}

/// `σ_n = (id, 0): V_n -> V_n ⊕ V_{n+2} = B_{n+1}` for every level but the
/// last.
pub fn loop_cone<S: Scalar>(t: &SeqTower<S>) -> Result<Vec<ConeMap<S>>> {
    (0..t.len() - 1)
        .map(|i| {
            let w = &t.windows[i + 1];
            let c = t.levels[i].c().rewindow(w)?;
            let b = t.levels[i + 1].b();
            let n = c.total_dim();
            let mut m = Mat::zeros(b.total_dim(), n);
            m.set_block(0, 0, &Mat::identity(n));
            Ok(ConeMap {
                level: i,
                target: i + 1,
                map: RepMap::new(c, b.clone(), vec![m])?,
            })
        })
        .collect()
}

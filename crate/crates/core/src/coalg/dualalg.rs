//! The dual algebra of a window: the truncated path algebra with product
//! dual to deconcatenation, so that `p · q` is the concatenation `pq`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::linalg::Mat;
use crate::repcat::Rep;

use super::window::{Window, WindowRef};

#[derive(Clone, Debug)]
pub struct DualAlg {
    window: WindowRef,
    table: Vec<Vec<Option<usize>>>,
}

/// The vertex idempotent `e_v`: the functional dual to the trivial path at
/// `v`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Idem {
    pub vertex: String,
}

impl Idem {
    pub fn new(vertex: impl Into<String>) -> Self {
        Idem {
            vertex: vertex.into(),
        }
    }
}

impl DualAlg {
    pub fn new(window: WindowRef) -> Self {
        let n = window.dim();
        let table = (0..n)
            .map(|p| (0..n).map(|q| window.concat(p, q)).collect())
            .collect();
        DualAlg { window, table }
    }

    pub fn window(&self) -> &WindowRef {
        &self.window
    }

    pub fn dim(&self) -> usize {
        self.window.dim()
    }

    /// Product of two basis elements.
    pub fn basis_product(&self, p: usize, q: usize) -> Option<usize> {
        self.table[p][q]
    }

    pub fn multiply<S: Scalar>(&self, a: &[S], b: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.dim()];
        for (p, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (q, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                if let Some(r) = self.table[p][q] {
                    out[r] = out[r].clone() + x.clone() * y.clone();
                }
            }
        }
        out
    }

    pub fn basis_element<S: Scalar>(&self, p: usize) -> Vec<S> {
        let mut v = vec![S::zero(); self.dim()];
        v[p] = S::one();
        v
    }

    pub fn idempotent<S: Scalar>(&self, e: &Idem) -> Result<Vec<S>> {
        let v = self.window.vertex(&e.vertex)?;
        Ok(self.basis_element(self.window.trivial_path(v)))
    }

    /// The sum of all vertex idempotents.
    pub fn unit<S: Scalar>(&self) -> Vec<S> {
        let mut u = vec![S::zero(); self.dim()];
        for v in 0..self.window.vertex_count() {
            u[self.window.trivial_path(v)] = S::one();
        }
        u
    }

    /// Basis of the left ideal `R e_v`: the paths ending at `v`.
    pub fn left_ideal_basis(&self, e: &Idem) -> Result<Vec<usize>> {
        let v = self.window.vertex(&e.vertex)?;
        Ok(self.window.paths_to(v))
    }

    /// Basis of the right ideal `e_v R`: the paths starting at `v`.
    pub fn right_ideal_basis(&self, e: &Idem) -> Result<Vec<usize>> {
        let v = self.window.vertex(&e.vertex)?;
        Ok(self.window.paths_from(v))
    }

    /// The left ideal `R e_v` as a module over the dual algebra, presented as
    /// a representation of the opposite window. At vertex `u` its basis is
    /// the paths `u ⇝ v`; the reversed arrow `a` acts by left
    /// multiplication `q ↦ a q`, read off the multiplication table.
    ///
    /// This is the dual of the injective `e_v ⇀ Λ`; see
    /// [`crate::repcat::injective_at`].
    pub fn dual_of_injective<S: Scalar>(&self, e: &Idem) -> Result<Rep<S>> {
        let w = &self.window;
        let v = w.vertex(&e.vertex)?;
        let opposite = w.opposite();
        let bases: Vec<Vec<usize>> = (0..w.vertex_count())
            .map(|u| w.paths_between(u, v))
            .collect();
        let dims: Vec<usize> = bases.iter().map(Vec::len).collect();
        let mut mats = Vec::with_capacity(w.arrow_count());
        for (a, arrow) in w.quiver().arrows().iter().enumerate() {
            // In the opposite window arrow `a` runs target -> source.
            let (from, to) = (arrow.target, arrow.source);
            let a_path = w.arrow_path(a);
            let mut m = Mat::zeros(dims[to], dims[from]);
            if let Some(a_path) = a_path {
                for (j, &q) in bases[from].iter().enumerate() {
                    if let Some(r) = self.table[a_path][q] {
                        let i = bases[to]
                            .iter()
                            .position(|&x| x == r)
                            .ok_or_else(|| ArsError::Internal("product left the ideal".into()))?;
                        m[(i, j)] = S::one();
                    }
                }
            }
            mats.push(m);
        }
        Rep::new(opposite, dims, mats)
    }
}

/// Which side an injective lives on: ours (the representations of the
/// window's quiver) or the opposite one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        }
    }
}

/// A direct sum of indecomposable injectives, recorded by its vertex
/// multiset.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InjectiveSum {
    pub side: Side,
    pub vertices: Vec<String>,
}

/// The star functor on injectives: `(Γ e)* ≅ e Γ`. Keeps the vertex multiset
/// and flips the side.
pub fn star_injective(inj: &InjectiveSum, window: &Window) -> Result<InjectiveSum> {
    for v in &inj.vertices {
        window.vertex(v)?;
    }
    Ok(InjectiveSum {
        side: inj.side.flip(),
        vertices: inj.vertices.clone(),
    })
}

/// Convenience: the dual algebra of a freshly built window.
pub fn dual_algebra(window: &WindowRef) -> DualAlg {
    DualAlg::new(Arc::clone(window))
}

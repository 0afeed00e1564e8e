//! Finite-dimensional comodules over a window, presented as nilpotent
//! quiver representations.

mod decompose;
mod hom;
mod ops;
mod truncate;

use std::fmt;
use std::sync::Arc;

use crate::coalg::{Window, WindowRef};
use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::linalg::Mat;

pub use decompose::{
    decompose, end_algebra, find_iso, is_iso, Decomposition, EndAlgebra, Piece, Summand,
};
pub use hom::{hom_basis, hom_dim, HomSpace};
pub use ops::{
    cokernel, direct_sum, image, injective_at, kernel, projective_at, quotient_rep, socle,
    sub_rep, DirectSum,
};
pub use truncate::{
    cotensor, cotensor_window, dual_perp_dim, dualize, dualize_map, tensor_over_dual,
    TensorOverDual, Truncation,
};

/// A representation: a vector space `k^dims[v]` at every vertex and a
/// `dims[target] x dims[source]` matrix on every arrow.
#[derive(Clone, PartialEq, Eq)]
pub struct Rep<S> {
    window: WindowRef,
    dims: Vec<usize>,
    mats: Vec<Mat<S>>,
}

impl<S: fmt::Debug> fmt::Debug for Rep<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self
            .dims
            .iter()
            .enumerate()
            .map(|(v, d)| format!("{}:{d}", self.window.vertex_label(v)))
            .collect();
        write!(f, "Rep[{}]", dims.join(" "))?;
        for (a, m) in self.mats.iter().enumerate() {
            if m.rows() * m.cols() > 0 {
                write!(f, " {}={m:?}", self.window.arrow_label(a))?;
            }
        }
        Ok(())
    }
}

impl<S: Scalar> Rep<S> {
    /// Checks shapes and that every composite of `maxlen + 1` arrows
    /// vanishes.
    pub fn new(window: WindowRef, dims: Vec<usize>, mats: Vec<Mat<S>>) -> Result<Self> {
        let rep = Rep { window, dims, mats };
        rep.validate()?;
        Ok(rep)
    }

    pub(crate) fn new_unchecked(window: WindowRef, dims: Vec<usize>, mats: Vec<Mat<S>>) -> Self {
        Rep { window, dims, mats }
    }

    /// Builds a representation from labelled dimensions and matrices;
    /// anything unnamed is zero.
    pub fn from_labels(
        window: WindowRef,
        dims: &[(&str, usize)],
        mats: Vec<(&str, Mat<S>)>,
    ) -> Result<Self> {
        let mut d = vec![0; window.vertex_count()];
        for (v, n) in dims {
            d[window.vertex(v)?] = *n;
        }
        let mut m: Vec<Mat<S>> = window
            .quiver()
            .arrows()
            .iter()
            .map(|a| Mat::zeros(d[a.target], d[a.source]))
            .collect();
        for (a, mat) in mats {
            m[window.quiver().arrow(a)?] = mat;
        }
        Rep::new(window, d, m)
    }

    pub fn zero(window: WindowRef) -> Self {
        let n = window.vertex_count();
        let mats = vec![Mat::zeros(0, 0); window.arrow_count()];
        Rep {
            window,
            dims: vec![0; n],
            mats,
        }
    }

    pub fn simple(window: WindowRef, v: &str) -> Result<Self> {
        Rep::thin(window, &[v])
    }

    /// One-dimensional at each listed vertex, identity on every arrow between
    /// two distinct listed vertices. Interval modules are of this form.
    pub fn thin<L: AsRef<str>>(window: WindowRef, vertices: &[L]) -> Result<Self> {
        let mut dims = vec![0; window.vertex_count()];
        for v in vertices {
            dims[window.vertex(v.as_ref())?] = 1;
        }
        let mats = window
            .quiver()
            .arrows()
            .iter()
            .map(|a| {
                if a.source != a.target && dims[a.source] == 1 && dims[a.target] == 1 {
                    Mat::identity(1)
                } else {
                    Mat::zeros(dims[a.target], dims[a.source])
                }
            })
            .collect();
        Rep::new(window, dims, mats)
    }

    pub fn window(&self) -> &WindowRef {
        &self.window
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn dim_at(&self, v: &str) -> Result<usize> {
        Ok(self.dims[self.window.vertex(v)?])
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn mats(&self) -> &[Mat<S>] {
        &self.mats
    }

    pub fn mat(&self, a: usize) -> &Mat<S> {
        &self.mats[a]
    }

    pub fn mat_at(&self, arrow: &str) -> Result<&Mat<S>> {
        Ok(&self.mats[self.window.quiver().arrow(arrow)?])
    }

    /// `(vertex label, dimension)` pairs in vertex order.
    pub fn dim_vector(&self) -> Vec<(String, usize)> {
        self.dims
            .iter()
            .enumerate()
            .map(|(v, &d)| (self.window.vertex_label(v).to_string(), d))
            .collect()
    }

    /// The action of a path: the product of its arrow matrices.
    pub fn path_action(&self, path: usize) -> Mat<S> {
        let p = self.window.path(path);
        let mut acc = Mat::identity(self.dims[p.start]);
        for &a in &p.arrows {
            acc = &self.mats[a] * &acc;
        }
        acc
    }

    pub fn validate(&self) -> Result<()> {
        let w = &self.window;
        if self.dims.len() != w.vertex_count() || self.mats.len() != w.arrow_count() {
            return Err(ArsError::InvalidRep(format!(
                "expected {} dimensions and {} matrices, got {} and {}",
                w.vertex_count(),
                w.arrow_count(),
                self.dims.len(),
                self.mats.len()
            )));
        }
        for (a, arrow) in w.quiver().arrows().iter().enumerate() {
            let expected = (self.dims[arrow.target], self.dims[arrow.source]);
            if self.mats[a].shape() != expected {
                return Err(ArsError::InvalidRep(format!(
                    "matrix on `{}` is {:?}, expected {:?}",
                    arrow.label,
                    self.mats[a].shape(),
                    expected
                )));
            }
        }
        // Image of all walks of length k, vertex by vertex.
        let mut images: Vec<Mat<S>> = self.dims.iter().map(|&d| Mat::identity(d)).collect();
        for _ in 0..=w.maxlen() {
            let mut next: Vec<Mat<S>> = self.dims.iter().map(|&d| Mat::zeros(d, 0)).collect();
            for (a, arrow) in w.quiver().arrows().iter().enumerate() {
                let moved = &self.mats[a] * &images[arrow.source];
                next[arrow.target] = next[arrow.target].hstack(&moved)?.image_basis();
            }
            images = next;
        }
        if let Some(v) = images.iter().position(|m| m.cols() > 0) {
            let walk = w
                .walks(w.maxlen() + 1)
                .into_iter()
                .find(|walk| {
                    let arrows = w.quiver().arrows();
                    if arrows[*walk.last().expect("nonempty walk")].target != v {
                        return false;
                    }
                    let mut acc = Mat::identity(self.dims[arrows[walk[0]].source]);
                    for &a in walk {
                        acc = &self.mats[a] * &acc;
                    }
                    !acc.is_zero()
                })
                .map(|walk| {
                    walk.iter()
                        .map(|&a| w.arrow_label(a))
                        .collect::<Vec<_>>()
                        .join("*")
                })
                .unwrap_or_default();
            return Err(ArsError::InvalidRep(format!(
                "composite {walk} of length {} is nonzero; not a comodule over the window",
                w.maxlen() + 1
            )));
        }
        Ok(())
    }

    /// Paths of the window acting nontrivially: a basis of the coefficient
    /// space.
    pub fn coefficient_paths(&self) -> Vec<usize> {
        (0..self.window.dim())
            .filter(|&p| {
                let path = self.window.path(p);
                self.dims[path.start] > 0 && !self.path_action(p).is_zero()
            })
            .collect()
    }

    /// Whether the coefficient space lies in the span of the paths of `w`.
    pub fn coefficients_within(&self, w: &Window) -> bool {
        self.coefficient_paths()
            .into_iter()
            .all(|p| self.window.translate_path(p, w).is_some())
    }

    /// The same data read over another window. Fails if some nonzero
    /// ingredient has no counterpart there or the result is not a comodule
    /// over it.
    pub fn rewindow(&self, target: &WindowRef) -> Result<Self> {
        let src = &self.window;
        if Arc::ptr_eq(src, target) || **src == **target {
            return Ok(Rep {
                window: Arc::clone(target),
                dims: self.dims.clone(),
                mats: self.mats.clone(),
            });
        }
        let mut dims = vec![0; target.vertex_count()];
        for (v, &d) in self.dims.iter().enumerate() {
            match target.vertex(src.vertex_label(v)) {
                Ok(t) => dims[t] = d,
                Err(_) if d == 0 => {}
                Err(e) => return Err(e),
            }
        }
        let mut mats: Vec<Mat<S>> = target
            .quiver()
            .arrows()
            .iter()
            .map(|a| Mat::zeros(dims[a.target], dims[a.source]))
            .collect();
        for (a, m) in self.mats.iter().enumerate() {
            match target.quiver().arrow(src.arrow_label(a)) {
                Ok(t) => {
                    let ta = &target.quiver().arrows()[t];
                    let sa = &src.quiver().arrows()[a];
                    if target.vertex_label(ta.source) != src.vertex_label(sa.source)
                        || target.vertex_label(ta.target) != src.vertex_label(sa.target)
                    {
                        return Err(ArsError::WindowMismatch(format!(
                            "arrow `{}` has different endpoints",
                            src.arrow_label(a)
                        )));
                    }
                    mats[t] = m.clone();
                }
                Err(_) if m.is_zero() => {}
                Err(e) => return Err(e),
            }
        }
        Rep::new(Arc::clone(target), dims, mats)
    }

    /// Vertex-indexed offsets into the concatenated total space.
    pub fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.dims.len() + 1);
        let mut acc = 0;
        out.push(0);
        for d in &self.dims {
            acc += d;
            out.push(acc);
        }
        out
    }

    pub(crate) fn same_window(&self, other: &Rep<S>) -> Result<()> {
        if Arc::ptr_eq(&self.window, &other.window) || *self.window == *other.window {
            Ok(())
        } else {
            Err(ArsError::WindowMismatch(format!(
                "{:?} vs {:?}",
                self.window, other.window
            )))
        }
    }
}

/// A morphism of representations, one matrix per vertex.
#[derive(Clone, PartialEq, Eq)]
pub struct RepMap<S> {
    source: Rep<S>,
    target: Rep<S>,
    comps: Vec<Mat<S>>,
}

impl<S: fmt::Debug> fmt::Debug for RepMap<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RepMap{{")?;
        for (v, m) in self.comps.iter().enumerate() {
            if m.rows() > 0 && m.cols() > 0 {
                write!(f, " {}={m:?}", self.source.window.vertex_label(v))?;
            }
        }
        write!(f, " }}")
    }
}

impl<S: Scalar> RepMap<S> {
    /// Checks shapes and the intertwining relation on every arrow.
    pub fn new(source: Rep<S>, target: Rep<S>, comps: Vec<Mat<S>>) -> Result<Self> {
        source.same_window(&target)?;
        let map = RepMap {
            source,
            target,
            comps,
        };
        map.validate()?;
        Ok(map)
    }

    pub(crate) fn new_unchecked(source: Rep<S>, target: Rep<S>, comps: Vec<Mat<S>>) -> Self {
        RepMap {
            source,
            target,
            comps,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let w = &self.source.window;
        if self.comps.len() != w.vertex_count() {
            return Err(ArsError::InvalidMap("wrong number of components".into()));
        }
        for (v, m) in self.comps.iter().enumerate() {
            if m.shape() != (self.target.dims[v], self.source.dims[v]) {
                return Err(ArsError::InvalidMap(format!(
                    "component at `{}` has shape {:?}, expected {:?}",
                    w.vertex_label(v),
                    m.shape(),
                    (self.target.dims[v], self.source.dims[v])
                )));
            }
        }
        for (a, arrow) in w.quiver().arrows().iter().enumerate() {
            let lhs = &self.target.mats[a] * &self.comps[arrow.source];
            let rhs = &self.comps[arrow.target] * &self.source.mats[a];
            if lhs != rhs {
                return Err(ArsError::InvalidMap(format!(
                    "square at arrow `{}` does not commute",
                    arrow.label
                )));
            }
        }
        Ok(())
    }

    pub fn identity(rep: &Rep<S>) -> Self {
        RepMap {
            source: rep.clone(),
            target: rep.clone(),
            comps: rep.dims.iter().map(|&d| Mat::identity(d)).collect(),
        }
    }

    pub fn zero(source: &Rep<S>, target: &Rep<S>) -> Self {
        RepMap {
            source: source.clone(),
            target: target.clone(),
            comps: source
                .dims
                .iter()
                .zip(&target.dims)
                .map(|(&s, &t)| Mat::zeros(t, s))
                .collect(),
        }
    }

    pub fn source(&self) -> &Rep<S> {
        &self.source
    }

    pub fn target(&self) -> &Rep<S> {
        &self.target
    }

    pub fn comps(&self) -> &[Mat<S>] {
        &self.comps
    }

    pub fn comp(&self, v: usize) -> &Mat<S> {
        &self.comps[v]
    }

    /// `self ∘ inner`.
    pub fn compose(&self, inner: &RepMap<S>) -> Result<Self> {
        if inner.target.dims != self.source.dims {
            return Err(ArsError::DimensionMismatch("maps are not composable".into()));
        }
        inner.target.same_window(&self.source)?;
        let comps = self
            .comps
            .iter()
            .zip(&inner.comps)
            .map(|(a, b)| a.try_mul(b))
            .collect::<Result<_>>()?;
        Ok(RepMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            comps,
        })
    }

    pub fn add(&self, other: &RepMap<S>) -> Result<Self> {
        self.zip_with(other, |a, b| a.try_add(b))
    }

    pub fn sub(&self, other: &RepMap<S>) -> Result<Self> {
        self.zip_with(other, |a, b| a.try_sub(b))
    }

    fn zip_with(
        &self,
        other: &RepMap<S>,
        op: impl Fn(&Mat<S>, &Mat<S>) -> Result<Mat<S>>,
    ) -> Result<Self> {
        if self.source.dims != other.source.dims || self.target.dims != other.target.dims {
            return Err(ArsError::DimensionMismatch("maps have different shapes".into()));
        }
        let comps = self
            .comps
            .iter()
            .zip(&other.comps)
            .map(|(a, b)| op(a, b))
            .collect::<Result<_>>()?;
        Ok(RepMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps,
        })
    }

    pub fn scale(&self, s: &S) -> Self {
        RepMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|m| m.scale(s)).collect(),
        }
    }

    /// Linear combination `Σ c_i maps_i`; all maps share source and target.
    pub fn combination(source: &Rep<S>, target: &Rep<S>, maps: &[RepMap<S>], coeffs: &[S]) -> Self {
        let mut out = RepMap::zero(source, target);
        for (m, c) in maps.iter().zip(coeffs) {
            if c.is_zero() {
                continue;
            }
            for (o, x) in out.comps.iter_mut().zip(&m.comps) {
                *o = &*o + &x.scale(c);
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Mat::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.comps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.comps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_iso(&self) -> bool {
        self.comps.iter().all(Mat::is_invertible)
    }

    pub fn inverse(&self) -> Option<Self> {
        let comps = self
            .comps
            .iter()
            .map(Mat::inverse)
            .collect::<Option<Vec<_>>>()?;
        Some(RepMap {
            source: self.target.clone(),
            target: self.source.clone(),
            comps,
        })
    }

    /// Concatenation of the row-major entries of all components.
    pub fn flatten(&self) -> Vec<S> {
        self.comps.iter().flat_map(|m| m.flatten()).collect()
    }

    /// Inverse of [`RepMap::flatten`]; does not check intertwining.
    pub(crate) fn from_flat(source: &Rep<S>, target: &Rep<S>, flat: &[S]) -> Self {
        let mut comps = Vec::with_capacity(source.dims.len());
        let mut at = 0;
        for (&s, &t) in source.dims.iter().zip(&target.dims) {
            let n = s * t;
            comps.push(Mat::from_vec(t, s, flat[at..at + n].to_vec()).expect("sized slice"));
            at += n;
        }
        RepMap {
            source: source.clone(),
            target: target.clone(),
            comps,
        }
    }

    /// Block-diagonal matrix of all components: the map on total spaces.
    pub fn total_matrix(&self) -> Mat<S> {
        Mat::block_diagonal(&self.comps)
    }

    /// The map `X -> ⊕ Y_i` with the given components; `target` must be the
    /// direct sum of the targets in order.
    pub fn into_sum(maps: &[RepMap<S>], target: &Rep<S>) -> Result<Self> {
        let source = maps
            .first()
            .map(|m| m.source.clone())
            .ok_or_else(|| ArsError::InvalidMap("empty list of maps".into()))?;
        let comps = (0..source.dims.len())
            .map(|v| {
                Mat::vstack_all(
                    source.dims[v],
                    &maps.iter().map(|m| m.comps[v].clone()).collect::<Vec<_>>(),
                )
            })
            .collect::<Result<_>>()?;
        RepMap::new(source, target.clone(), comps)
    }

    /// The map `⊕ Y_i -> X` with the given components; `source` must be the
    /// direct sum of the sources in order.
    pub fn from_sum(maps: &[RepMap<S>], source: &Rep<S>) -> Result<Self> {
        let target = maps
            .first()
            .map(|m| m.target.clone())
            .ok_or_else(|| ArsError::InvalidMap("empty list of maps".into()))?;
        let comps = (0..target.dims.len())
            .map(|v| {
                Mat::hstack_all(
                    target.dims[v],
                    &maps.iter().map(|m| m.comps[v].clone()).collect::<Vec<_>>(),
                )
            })
            .collect::<Result<_>>()?;
        RepMap::new(source.clone(), target, comps)
    }

    /// The same components between the rewindowed source and target.
    pub fn rewindow(&self, window: &WindowRef) -> Result<Self> {
        let source = self.source.rewindow(window)?;
        let target = self.target.rewindow(window)?;
        let mut comps: Vec<Mat<S>> = source
            .dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| Mat::zeros(t, s))
            .collect();
        for (v, m) in self.comps.iter().enumerate() {
            if let Ok(t) = window.vertex(self.source.window.vertex_label(v)) {
                comps[t] = m.clone();
            } else if m.rows() * m.cols() > 0 {
                return Err(ArsError::WindowMismatch(format!(
                    "vertex `{}` missing",
                    self.source.window.vertex_label(v)
                )));
            }
        }
        RepMap::new(source, target, comps)
    }
}

/// A verified short exact sequence `0 -> A -f-> B -g-> C -> 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortExact<S> {
    f: RepMap<S>,
    g: RepMap<S>,
}

impl<S: Scalar> ShortExact<S> {
    pub fn new(f: RepMap<S>, g: RepMap<S>) -> Result<Self> {
        if f.target != g.source {
            return Err(ArsError::NotExact("f and g are not composable".into()));
        }
        if !f.is_injective() {
            return Err(ArsError::NotExact("f is not injective".into()));
        }
        if !g.is_surjective() {
            return Err(ArsError::NotExact("g is not surjective".into()));
        }
        for v in 0..f.comps.len() {
            let gf = &g.comps[v] * &f.comps[v];
            let b = f.target.dims[v];
            if !gf.is_zero() || f.comps[v].rank() + g.comps[v].rank() != b {
                return Err(ArsError::NotExact(format!(
                    "not exact in the middle at `{}`",
                    f.source.window.vertex_label(v)
                )));
            }
        }
        Ok(ShortExact { f, g })
    }

    /// `0 -> A -> A ⊕ C -> C -> 0`.
    pub fn split(a: &Rep<S>, c: &Rep<S>) -> Result<Self> {
        let sum = direct_sum(&[a.clone(), c.clone()])?;
        ShortExact::new(sum.injections[0].clone(), sum.projections[1].clone())
    }

    pub fn a(&self) -> &Rep<S> {
        &self.f.source
    }

    pub fn b(&self) -> &Rep<S> {
        &self.f.target
    }

    pub fn c(&self) -> &Rep<S> {
        &self.g.target
    }

    pub fn f(&self) -> &RepMap<S> {
        &self.f
    }

    pub fn g(&self) -> &RepMap<S> {
        &self.g
    }

    pub fn window(&self) -> &WindowRef {
        self.f.source.window()
    }

    /// Splits iff `g` has a section.
    pub fn is_split(&self) -> Result<bool> {
        Ok(self.section()?.is_some())
    }

    /// Some `s: C -> B` with `g ∘ s = id`.
    pub fn section(&self) -> Result<Option<RepMap<S>>> {
        let homs = hom_basis(self.c(), self.b())?;
        let composites: Vec<Vec<S>> = homs
            .iter()
            .map(|h| self.g.compose(h).map(|m| m.flatten()))
            .collect::<Result<_>>()?;
        let target = RepMap::identity(self.c()).flatten();
        let n = target.len();
        let system = Mat::from_vec(
            composites.len(),
            n,
            composites.into_iter().flatten().collect(),
        )?
        .transpose();
        let Some(x) = system.solve(&Mat::column_vector(target))? else {
            return Ok(None);
        };
        let coeffs: Vec<S> = (0..homs.len()).map(|i| x[(i, 0)].clone()).collect();
        Ok(Some(RepMap::combination(self.c(), self.b(), &homs, &coeffs)))
    }

    /// Every term rewindowed.
    pub fn rewindow(&self, window: &WindowRef) -> Result<Self> {
        ShortExact::new(self.f.rewindow(window)?, self.g.rewindow(window)?)
    }
}

//! Maps between direct sums of indecomposable injectives (or projectives)
//! encoded as matrices over the dual algebra.
//!
//! The entry in row `w`, column `v` is a combination of paths `w ⇝ v`. On
//! injectives the path `p` acts `I(v) -> I(w)` by cutting `p` off the end of
//! a path; on projectives it acts `P(v) -> P(w)` by `x ↦ p x`. Either way
//! composition is matrix multiplication with concatenation of entries.

use std::fmt;

use crate::coalg::{Path, WindowRef};
use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::linalg::Mat;
use crate::repcat::{direct_sum, injective_at, projective_at, Rep, RepMap};

#[derive(Clone, PartialEq, Eq)]
pub struct PathMatrix<S> {
    window: WindowRef,
    rows: Vec<usize>,
    cols: Vec<usize>,
    // Row-major; each entry is a coefficient vector over the path basis.
    entries: Vec<Vec<S>>,
}

impl<S: fmt::Debug> fmt::Debug for PathMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PathMatrix")
            .field("rows", &self.rows)
            .field("cols", &self.cols)
            .field("entries", &self.entries)
            .finish()
    }
}

impl<S: Scalar> fmt::Display for PathMatrix<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl<S: Scalar> PathMatrix<S> {
    pub fn zero(window: WindowRef, rows: Vec<usize>, cols: Vec<usize>) -> Self {
        let n = window.dim();
        let entries = vec![vec![S::zero(); n]; rows.len() * cols.len()];
        PathMatrix {
            window,
            rows,
            cols,
            entries,
        }
    }

    /// Vertex-indexed identity.
    pub fn identity(window: WindowRef, vertices: Vec<usize>) -> Self {
        let mut m = Self::zero(window, vertices.clone(), vertices.clone());
        for (i, &v) in vertices.iter().enumerate() {
            let e = m.window.trivial_path(v);
            m.entries[i * vertices.len() + i][e] = S::one();
        }
        m
    }

    pub fn window(&self) -> &WindowRef {
        &self.window
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    pub fn row_labels(&self) -> Vec<String> {
        self.rows.iter().map(|&v| self.window.vertex_label(v).to_string()).collect()
    }

    pub fn col_labels(&self) -> Vec<String> {
        self.cols.iter().map(|&v| self.window.vertex_label(v).to_string()).collect()
    }

    pub fn entry(&self, i: usize, j: usize) -> &[S] {
        &self.entries[i * self.cols.len() + j]
    }

    /// Adds `coeff · path` to entry `(i, j)`.
    pub fn add_term(&mut self, i: usize, j: usize, path: usize, coeff: S) -> Result<()> {
        let p = self.window.path(path);
        if p.start != self.rows[i] || p.end != self.cols[j] {
            return Err(ArsError::InvalidMap(format!(
                "path {} does not run from row vertex to column vertex",
                self.window.path_name(path)
            )));
        }
        let k = i * self.cols.len() + j;
        self.entries[k][path] = self.entries[k][path].clone() + coeff;
        Ok(())
    }

    /// Product in the dual algebra: `(self · rhs)_{ik} = Σ_j self_{ij} rhs_{jk}`.
    pub fn mul(&self, rhs: &PathMatrix<S>) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(ArsError::DimensionMismatch(
                "path matrices are not composable".into(),
            ));
        }
        let mut out = Self::zero(self.window.clone(), self.rows.clone(), rhs.cols.clone());
        for i in 0..self.rows.len() {
            for k in 0..rhs.cols.len() {
                let mut acc = vec![S::zero(); self.window.dim()];
                for j in 0..self.cols.len() {
                    for (p, x) in self.entry(i, j).iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (q, y) in rhs.entry(j, k).iter().enumerate() {
                            if y.is_zero() {
                                continue;
                            }
                            if let Some(r) = self.window.concat(p, q) {
                                acc[r] = acc[r].clone() + x.clone() * y.clone();
                            }
                        }
                    }
                }
                out.entries[i * rhs.cols.len() + k] = acc;
            }
        }
        Ok(out)
    }

    /// Transposes and reverses every path, over the opposite window.
    pub fn star(&self) -> Self {
        let op = self.window.opposite();
        let mut out = Self::zero(op.clone(), self.cols.clone(), self.rows.clone());
        for i in 0..self.rows.len() {
            for j in 0..self.cols.len() {
                for (p, x) in self.entry(i, j).iter().enumerate() {
                    if !x.is_zero() {
                        let r = self.window.reverse_path(p, &op);
                        out.entries[j * self.rows.len() + i][r] = x.clone();
                    }
                }
            }
        }
        out
    }

    /// Whether no entry has a component on a trivial path.
    pub fn is_radical(&self) -> bool {
        self.entries.iter().all(|e| {
            e.iter()
                .enumerate()
                .all(|(p, x)| x.is_zero() || !self.window.path(p).is_trivial())
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.iter().all(|x| x.is_zero()))
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 0..self.rows.len() {
            let cells: Vec<String> = (0..self.cols.len())
                .map(|j| {
                    let terms: Vec<String> = self
                        .entry(i, j)
                        .iter()
                        .enumerate()
                        .filter(|(_, x)| !x.is_zero())
                        .map(|(p, x)| {
                            if x.is_one() {
                                self.window.path_name(p)
                            } else {
                                format!("{x}{}", self.window.path_name(p))
                            }
                        })
                        .collect();
                    if terms.is_empty() {
                        "0".to_string()
                    } else {
                        terms.join("+")
                    }
                })
                .collect();
            out.push('[');
            out.push_str(&cells.join(", "));
            out.push_str("]\n");
        }
        out
    }

    /// `⊕_{cols} I(v) -> ⊕_{rows} I(w)`.
    pub fn to_injective_map(&self) -> Result<RepMap<S>> {
        let source = injective_sum(&self.window, &self.cols)?;
        let target = injective_sum(&self.window, &self.rows)?;
        self.realize(source, target, Kind::Injective)
    }

    /// `⊕_{cols} P(v) -> ⊕_{rows} P(w)`.
    pub fn to_projective_map(&self) -> Result<RepMap<S>> {
        let source = projective_sum(&self.window, &self.cols)?;
        let target = projective_sum(&self.window, &self.rows)?;
        self.realize(source, target, Kind::Projective)
    }

    fn realize(&self, source: Rep<S>, target: Rep<S>, kind: Kind) -> Result<RepMap<S>> {
        let w = &self.window;
        let mut comps = Vec::with_capacity(w.vertex_count());
        for x in 0..w.vertex_count() {
            let src_blocks = blocks(w, &self.cols, x, kind);
            let tgt_blocks = blocks(w, &self.rows, x, kind);
            let mut m_t: Mat<S> = Mat::zeros(target.dim(x), source.dim(x));
            for (j, (src_off, src_paths)) in src_blocks.iter().enumerate() {
                for (col, &q) in src_paths.iter().enumerate() {
                    for (i, (tgt_off, tgt_paths)) in tgt_blocks.iter().enumerate() {
                        for (p, c) in self.entry(i, j).iter().enumerate() {
                            if c.is_zero() {
                                continue;
                            }
                            let image = match kind {
                                Kind::Injective => strip_suffix(w, q, p),
                                Kind::Projective => w.concat(p, q),
                            };
                            if let Some(r) = image {
                                let row = tgt_paths
                                    .iter()
                                    .position(|&t| t == r)
                                    .ok_or_else(|| ArsError::Internal("image outside block".into()))?;
                                let (rr, cc) = (tgt_off + row, src_off + col);
                                m_t[(rr, cc)] = m_t[(rr, cc)].clone() + c.clone();
                            }
                        }
                    }
                }
            }
            comps.push(m_t);
        }
        RepMap::new(source, target, comps)
    }

    /// Reads off the matrix of a map between sums of injectives at the given
    /// vertices: the coefficient of `p: w ⇝ v` is the coefficient of the
    /// trivial path `e_w` in the image of the basis path `p`.
    pub fn from_injective_map(map: &RepMap<S>, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let w = map.source().window().clone();
        let mut out = Self::zero(w.clone(), rows.to_vec(), cols.to_vec());
        for (i, &r) in rows.iter().enumerate() {
            let tgt_blocks = blocks(&w, rows, r, Kind::Injective);
            let (tgt_off, tgt_paths) = &tgt_blocks[i];
            let e = w.trivial_path(r);
            let e_row = tgt_off + tgt_paths.iter().position(|&t| t == e).expect("trivial path");
            let src_blocks = blocks(&w, cols, r, Kind::Injective);
            for (j, (src_off, src_paths)) in src_blocks.iter().enumerate() {
                for (col, &p) in src_paths.iter().enumerate() {
                    let c = map.comp(r)[(e_row, src_off + col)].clone();
                    if !c.is_zero() {
                        out.add_term(i, j, p, c)?;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reads off the matrix of a map between sums of projectives at the
    /// given vertices from the images of the generators.
    pub fn from_projective_map(map: &RepMap<S>, rows: &[usize], cols: &[usize]) -> Result<Self> {
        let w = map.source().window().clone();
        let mut out = Self::zero(w.clone(), rows.to_vec(), cols.to_vec());
        for (j, &c) in cols.iter().enumerate() {
            let src_blocks = blocks(&w, cols, c, Kind::Projective);
            let (src_off, src_paths) = &src_blocks[j];
            let e = w.trivial_path(c);
            let e_col = src_off + src_paths.iter().position(|&t| t == e).expect("trivial path");
            let tgt_blocks = blocks(&w, rows, c, Kind::Projective);
            for (i, (tgt_off, tgt_paths)) in tgt_blocks.iter().enumerate() {
                for (row, &p) in tgt_paths.iter().enumerate() {
                    let x = map.comp(c)[(tgt_off + row, e_col)].clone();
                    if !x.is_zero() {
                        out.add_term(i, j, p, x)?;
                    }
                }
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Injective,
    Projective,
}

/// For each summand vertex, its offset at vertex `x` and the basis paths
/// there: paths `x ⇝ v` for injectives, `v ⇝ x` for projectives.
fn blocks(w: &WindowRef, vertices: &[usize], x: usize, kind: Kind) -> Vec<(usize, Vec<usize>)> {
    let mut off = 0;
    vertices
        .iter()
        .map(|&v| {
            let paths = match kind {
                Kind::Injective => w.paths_between(x, v),
                Kind::Projective => w.paths_between(v, x),
            };
            let out = (off, paths);
            off += out.1.len();
            out
        })
        .collect()
}

/// `r` with `q = r p`, if `p` is a suffix of `q`.
fn strip_suffix(w: &WindowRef, q: usize, p: usize) -> Option<usize> {
    let (qp, pp) = (w.path(q), w.path(p));
    if pp.len() > qp.len() || pp.end != qp.end {
        return None;
    }
    let k = qp.len() - pp.len();
    if qp.arrows[k..] != pp.arrows[..] {
        return None;
    }
    w.path_index(&Path {
        start: qp.start,
        end: pp.start,
        arrows: qp.arrows[..k].to_vec(),
    })
}

/// `⊕ I(v)` over the listed vertices, in order.
pub fn injective_sum<S: Scalar>(w: &WindowRef, vertices: &[usize]) -> Result<Rep<S>> {
    let parts = vertices
        .iter()
        .map(|&v| injective_at(w, w.vertex_label(v)))
        .collect::<Result<Vec<_>>>()?;
    sum_or_zero(w, parts)
}

/// `⊕ P(v)` over the listed vertices, in order.
pub fn projective_sum<S: Scalar>(w: &WindowRef, vertices: &[usize]) -> Result<Rep<S>> {
    let parts = vertices
        .iter()
        .map(|&v| projective_at(w, w.vertex_label(v)))
        .collect::<Result<Vec<_>>>()?;
    sum_or_zero(w, parts)
}

fn sum_or_zero<S: Scalar>(w: &WindowRef, parts: Vec<Rep<S>>) -> Result<Rep<S>> {
    if parts.is_empty() {
        Ok(Rep::zero(w.clone()))
    } else {
        Ok(direct_sum(&parts)?.rep)
    }
}

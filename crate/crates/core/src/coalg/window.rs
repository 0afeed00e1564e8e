use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{ArsError, Result};

use super::quiver::Quiver;

/// A path in a window: a vertex when `arrows` is empty, otherwise the arrows
/// traversed left to right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

impl Path {
    pub fn trivial(v: usize) -> Self {
        Path {
            start: v,
            end: v,
            arrows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

/// The subcoalgebra of a path coalgebra spanned by the paths of length at
/// most `maxlen` in a finite quiver. Its linear dual is the truncated path
/// algebra.
#[derive(Clone)]
pub struct Window {
    quiver: Quiver,
    maxlen: usize,
    paths: Vec<Path>,
    index: HashMap<Path, usize>,
}

pub type WindowRef = Arc<Window>;

impl PartialEq for Window {
    fn eq(&self, other: &Self) -> bool {
        self.maxlen == other.maxlen && self.quiver == other.quiver
    }
}

impl Eq for Window {}

impl fmt::Debug for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Window({} vertices, {} arrows, maxlen {})",
            self.quiver.vertex_count(),
            self.quiver.arrow_count(),
            self.maxlen
        )
    }
}

/// One `(prefix, suffix)` splitting of a path, as path indices.
pub type Splitting = (usize, usize);

impl Window {
    pub fn new(quiver: Quiver, maxlen: usize) -> WindowRef {
        let paths = enumerate(&quiver, maxlen);
        let index = paths
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        Arc::new(Window {
            quiver,
            maxlen,
            paths,
            index,
        })
    }

    /// All paths of an acyclic quiver.
    pub fn full(quiver: Quiver) -> Result<WindowRef> {
        let maxlen = quiver.longest_path().ok_or_else(|| {
            ArsError::InvalidQuiver(
                "quiver has an oriented cycle; give an explicit path-length bound".into(),
            )
        })?;
        Ok(Window::new(quiver, maxlen))
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn maxlen(&self) -> usize {
        self.maxlen
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertex_count()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrow_count()
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.quiver.vertex(label)
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        self.quiver.vertex_label(v)
    }

    pub fn arrow_label(&self, a: usize) -> &str {
        self.quiver.arrow_label(a)
    }

    /// The path basis ordered by length, then lexicographically.
    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn dim(&self) -> usize {
        self.paths.len()
    }

    pub fn path(&self, i: usize) -> &Path {
        &self.paths[i]
    }

    pub fn path_index(&self, p: &Path) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn trivial_path(&self, v: usize) -> usize {
        self.index[&Path::trivial(v)]
    }

    pub fn arrow_path(&self, a: usize) -> Option<usize> {
        let arrow = &self.quiver.arrows()[a];
        self.path_index(&Path {
            start: arrow.source,
            end: arrow.target,
            arrows: vec![a],
        })
    }

    /// Human-readable name: the vertex label for trivial paths, arrow labels
    /// joined by `*` otherwise.
    pub fn path_name(&self, i: usize) -> String {
        let p = &self.paths[i];
        if p.is_trivial() {
            format!("e{}", self.vertex_label(p.start))
        } else {
            p.arrows
                .iter()
                .map(|&a| self.arrow_label(a))
                .collect::<Vec<_>>()
                .join("*")
        }
    }

    /// Concatenation `p` then `q`, if composable and within the length bound.
    pub fn concat(&self, p: usize, q: usize) -> Option<usize> {
        let (p, q) = (&self.paths[p], &self.paths[q]);
        if p.end != q.start || p.len() + q.len() > self.maxlen {
            return None;
        }
        let mut arrows = p.arrows.clone();
        arrows.extend_from_slice(&q.arrows);
        self.path_index(&Path {
            start: p.start,
            end: q.end,
            arrows,
        })
    }

    /// Deconcatenation: every `(prefix, suffix)` with `prefix * suffix = p`,
    /// the trivial splittings included, ordered by prefix length.
    pub fn comult(&self, p: usize) -> Result<Vec<Splitting>> {
        let path = self
            .paths
            .get(p)
            .ok_or_else(|| ArsError::PathNotInWindow(format!("index {p}")))?;
        let mut out = Vec::with_capacity(path.len() + 1);
        let mut vertex = path.start;
        for k in 0..=path.len() {
            let prefix = Path {
                start: path.start,
                end: vertex,
                arrows: path.arrows[..k].to_vec(),
            };
            let suffix = Path {
                start: vertex,
                end: path.end,
                arrows: path.arrows[k..].to_vec(),
            };
            out.push((self.index[&prefix], self.index[&suffix]));
            if k < path.len() {
                vertex = self.quiver.arrows()[path.arrows[k]].target;
            }
        }
        Ok(out)
    }

    pub fn comult_labels(&self, start: &str, arrows: &[&str]) -> Result<Vec<Splitting>> {
        let p = self.find_path(start, arrows)?;
        self.comult(p)
    }

    /// Looks up a path given by labels.
    pub fn find_path(&self, start: &str, arrows: &[&str]) -> Result<usize> {
        let start_v = self.vertex(start)?;
        let mut end = start_v;
        let mut ids = Vec::with_capacity(arrows.len());
        for label in arrows {
            let a = self.quiver.arrow(label)?;
            let arrow = &self.quiver.arrows()[a];
            if arrow.source != end {
                return Err(ArsError::PathNotInWindow(format!(
                    "arrow `{label}` does not continue the path"
                )));
            }
            end = arrow.target;
            ids.push(a);
        }
        self.path_index(&Path {
            start: start_v,
            end,
            arrows: ids,
        })
        .ok_or_else(|| ArsError::PathNotInWindow(format!("{start}:{}", arrows.join("*"))))
    }

    /// The path as labels, usable to look it up in another window.
    pub fn path_labels(&self, i: usize) -> (String, Vec<String>) {
        let p = &self.paths[i];
        (
            self.vertex_label(p.start).to_string(),
            p.arrows
                .iter()
                .map(|&a| self.arrow_label(a).to_string())
                .collect(),
        )
    }

    /// Index of the same path in another window, if it lies there.
    pub fn translate_path(&self, i: usize, other: &Window) -> Option<usize> {
        let (start, arrows) = self.path_labels(i);
        let arrows: Vec<&str> = arrows.iter().map(String::as_str).collect();
        other.find_path(&start, &arrows).ok()
    }

    /// Paths from `u` to `v`, in basis order.
    pub fn paths_between(&self, u: usize, v: usize) -> Vec<usize> {
        (0..self.paths.len())
            .filter(|&i| self.paths[i].start == u && self.paths[i].end == v)
            .collect()
    }

    pub fn paths_from(&self, u: usize) -> Vec<usize> {
        (0..self.paths.len())
            .filter(|&i| self.paths[i].start == u)
            .collect()
    }

    pub fn paths_to(&self, v: usize) -> Vec<usize> {
        (0..self.paths.len())
            .filter(|&i| self.paths[i].end == v)
            .collect()
    }

    /// Same vertices, reversed arrows, same length bound.
    pub fn opposite(&self) -> WindowRef {
        Window::new(self.quiver.opposite(), self.maxlen)
    }

    /// Index in `opposite` of the reversal of path `i`.
    pub fn reverse_path(&self, i: usize, opposite: &Window) -> usize {
        let p = &self.paths[i];
        let rev = Path {
            start: p.end,
            end: p.start,
            arrows: p.arrows.iter().rev().copied().collect(),
        };
        opposite
            .path_index(&rev)
            .expect("reversed path lies in the opposite window")
    }

    pub fn is_sub_window_of(&self, other: &Window) -> bool {
        self.maxlen <= other.maxlen && self.quiver.is_subquiver_of(&other.quiver)
    }

    /// The window on the full subquiver spanned by `labels`, bounded by
    /// `maxlen`. Fails unless it is contained in `self`.
    pub fn sub_window<I, L>(&self, labels: I, maxlen: usize) -> Result<WindowRef>
    where
        I: IntoIterator<Item = L>,
        L: AsRef<str>,
    {
        if maxlen > self.maxlen {
            return Err(ArsError::NotSubWindow(format!(
                "maxlen {maxlen} exceeds {}",
                self.maxlen
            )));
        }
        Ok(Window::new(self.quiver.full_subquiver(labels)?, maxlen))
    }

    /// Maps vertex indices of `self` to those of a containing window.
    pub fn vertex_map(&self, outer: &Window) -> Result<Vec<usize>> {
        (0..self.vertex_count())
            .map(|v| outer.vertex(self.vertex_label(v)))
            .collect()
    }

    /// Maps arrow indices of `self` to those of a containing window.
    pub fn arrow_map(&self, outer: &Window) -> Result<Vec<usize>> {
        (0..self.arrow_count())
            .map(|a| outer.quiver.arrow(self.arrow_label(a)))
            .collect()
    }

    /// `Λ ↼ e_v`: the span of paths starting at `v`.
    pub fn hit_right(&self, v: &str) -> Result<PathSpan> {
        let v = self.vertex(v)?;
        Ok(PathSpan {
            paths: self.paths_from(v),
        })
    }

    /// `e_v ⇀ Λ`: the span of paths ending at `v`.
    pub fn hit_left(&self, v: &str) -> Result<PathSpan> {
        let v = self.vertex(v)?;
        Ok(PathSpan {
            paths: self.paths_to(v),
        })
    }

    /// All walks of exactly `len` arrows, as arrow sequences.
    pub fn walks(&self, len: usize) -> Vec<Vec<usize>> {
        let mut current: Vec<Vec<usize>> = vec![Vec::new()];
        for step in 0..len {
            let mut next = Vec::new();
            for w in &current {
                for (a, arrow) in self.quiver.arrows().iter().enumerate() {
                    let ok = step == 0
                        || self.quiver.arrows()[*w.last().expect("nonempty")].target
                            == arrow.source;
                    if ok {
                        let mut w2 = w.clone();
                        w2.push(a);
                        next.push(w2);
                    }
                }
            }
            current = next;
        }
        current
    }
}

/// A coordinate subspace of a window, spanned by some of its paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSpan {
    pub paths: Vec<usize>,
}

impl PathSpan {
    pub fn dim(&self) -> usize {
        self.paths.len()
    }
}

fn enumerate(quiver: &Quiver, maxlen: usize) -> Vec<Path> {
    let mut out: Vec<Path> = (0..quiver.vertex_count()).map(Path::trivial).collect();
    let mut frontier = out.clone();
    for _ in 0..maxlen {
        let mut next = Vec::new();
        for p in &frontier {
            for a in quiver.outgoing(p.end) {
                let mut arrows = p.arrows.clone();
                arrows.push(a);
                next.push(Path {
                    start: p.start,
                    end: quiver.arrows()[a].target,
                    arrows,
                });
            }
        }
        next.sort_by(|x, y| (x.start, &x.arrows).cmp(&(y.start, &y.arrows)));
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}

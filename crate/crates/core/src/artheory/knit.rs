use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::coalg::WindowRef;
use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::homology::is_projective;
use crate::repcat::{decompose, injective_at, is_iso, Rep, ShortExact};

use super::ass::almost_split_sequence;

/// Default cap on the number of nodes.
pub const NODE_CAP: usize = 200;

/// The Auslander-Reiten quiver of a window, possibly cut off by a budget.
#[derive(Clone, Debug)]
pub struct ArQuiver<S> {
    pub window: WindowRef,
    pub nodes: Vec<Rep<S>>,
    /// Irreducible-map multiplicities `(from, to) -> count`.
    pub edges: BTreeMap<(usize, usize), usize>,
    /// `C -> τC` for non-projective nodes.
    pub translate: BTreeMap<usize, usize>,
    /// The almost split sequence ending at each non-projective node.
    pub sequences: BTreeMap<usize, ShortExact<S>>,
    pub complete: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct ArQuiverSummary {
    pub complete: bool,
    pub nodes: Vec<Vec<usize>>,
    pub edges: Vec<(usize, usize, usize)>,
    pub translate: Vec<(usize, usize)>,
}

impl<S: Scalar> ArQuiver<S> {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Index of the node isomorphic to `m`.
    pub fn find(&self, m: &Rep<S>) -> Result<Option<usize>> {
        find_node(&self.nodes, m)
    }

    pub fn summary(&self) -> ArQuiverSummary {
        ArQuiverSummary {
            complete: self.complete,
            nodes: self.nodes.iter().map(|n| n.dims().to_vec()).collect(),
            edges: self.edges.iter().map(|(&(a, b), &m)| (a, b, m)).collect(),
            translate: self.translate.iter().map(|(&c, &a)| (c, a)).collect(),
        }
    }

    /// A node label: its dimension vector.
    pub fn label(&self, i: usize) -> String {
        let dims = self.nodes[i].dims();
        if dims.iter().all(|&d| d < 10) {
            dims.iter().map(usize::to_string).collect()
        } else {
            dims.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
        }
    }

    /// Graphviz source; translates are dashed.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph ar {\n  rankdir=LR;\n");
        if !self.complete {
            out.push_str("  label=\"incomplete\";\n");
        }
        for i in 0..self.nodes.len() {
            let _ = writeln!(out, "  n{i} [label=\"{}\"];", self.label(i));
        }
        for (&(a, b), &m) in &self.edges {
            if m == 1 {
                let _ = writeln!(out, "  n{a} -> n{b};");
            } else {
                let _ = writeln!(out, "  n{a} -> n{b} [label=\"{m}\"];");
            }
        }
        for (&c, &a) in &self.translate {
            let _ = writeln!(out, "  n{c} -> n{a} [style=dashed, constraint=false];");
        }
        out.push_str("}\n");
        out
    }
}

fn find_node<S: Scalar>(nodes: &[Rep<S>], m: &Rep<S>) -> Result<Option<usize>> {
    for (i, n) in nodes.iter().enumerate() {
        if n.dims() == m.dims() && is_iso(n, m)? {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

/// Knits the AR quiver from the indecomposable injectives and the simples:
/// every non-projective node gets its almost split sequence, whose left term and
/// middle summands join the worklist. Stops with `complete = false` when a
/// new node exceeds `max_dim` or the node count exceeds `node_cap`.
pub fn knit_with_cap<S: Scalar>(window: &WindowRef, max_dim: usize, node_cap: usize) -> Result<ArQuiver<S>> {
    let mut q = ArQuiver {
        window: window.clone(),
        nodes: Vec::new(),
        edges: BTreeMap::new(),
        translate: BTreeMap::new(),
        sequences: BTreeMap::new(),
        complete: true,
    };
    let mut queue = VecDeque::new();
    for v in 0..window.vertex_count() {
        let label = window.vertex_label(v);
        for seed in [injective_at(window, label)?, Rep::simple(window.clone(), label)?] {
            let before = q.nodes.len();
            if let Some(i) = insert(&mut q, seed, max_dim, node_cap)? {
                if i >= before {
                    queue.push_back(i);
                }
            }
        }
    }
    while let Some(c) = queue.pop_front() {
        if !q.complete {
            break;
        }
        let node = q.nodes[c].clone();
        if is_projective(&node)? {
            continue;
        }
        let cert = almost_split_sequence(&node)?;
        let seq = cert.sequence;
        let left = seq.a().clone();
        let before = q.nodes.len();
        let Some(a) = insert(&mut q, left, max_dim, node_cap)? else {
            break;
        };
        if a >= before {
            queue.push_back(a);
        }
        q.translate.insert(c, a);
        for s in decompose(seq.b())?.summands {
            let before = q.nodes.len();
            let Some(x) = insert(&mut q, s.rep, max_dim, node_cap)? else {
                break;
            };
            if x >= before {
                queue.push_back(x);
            }
            *q.edges.entry((a, x)).or_default() = s.multiplicity;
            *q.edges.entry((x, c)).or_default() = s.multiplicity;
        }
        q.sequences.insert(c, seq);
    }
    Ok(q)
}

pub fn knit<S: Scalar>(window: &WindowRef, max_dim: usize) -> Result<ArQuiver<S>> {
    knit_with_cap(window, max_dim, NODE_CAP)
}

/// Index of `m` among the nodes, adding it if new. `None` (and the
/// incomplete flag) when the budget is exceeded.
fn insert<S: Scalar>(q: &mut ArQuiver<S>, m: Rep<S>, max_dim: usize, cap: usize) -> Result<Option<usize>> {
    if m.is_zero() {
        return Err(ArsError::Internal("zero representation in the AR quiver".into()));
    }
    if let Some(i) = find_node(&q.nodes, &m)? {
        return Ok(Some(i));
    }
    if m.total_dim() > max_dim || q.nodes.len() >= cap {
        q.complete = false;
        return Ok(None);
    }
    q.nodes.push(m);
    Ok(Some(q.nodes.len() - 1))
}

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{ArsError, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite directed multigraph with labelled vertices and arrows.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    #[serde(skip)]
    vertex_index: HashMap<String, usize>,
    #[serde(skip)]
    arrow_index: HashMap<String, usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    pub fn new<V, A, L, S, T>(vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: Into<String>,
        A: IntoIterator<Item = (L, S, T)>,
        L: Into<String>,
        S: AsRef<str>,
        T: AsRef<str>,
    {
        let vertices: Vec<String> = vertices.into_iter().map(Into::into).collect();
        let mut vertex_index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if vertex_index.insert(v.clone(), i).is_some() {
                return Err(ArsError::InvalidQuiver(format!("duplicate vertex `{v}`")));
            }
        }
        let mut out = Quiver {
            vertices,
            arrows: Vec::new(),
            vertex_index,
            arrow_index: HashMap::new(),
        };
        for (label, s, t) in arrows {
            let source = out.vertex(s.as_ref())?;
            let target = out.vertex(t.as_ref())?;
            out.push_arrow(label.into(), source, target)?;
        }
        Ok(out)
    }

    fn push_arrow(&mut self, label: String, source: usize, target: usize) -> Result<()> {
        if self.arrow_index.contains_key(&label) || self.vertex_index.contains_key(&label) {
            return Err(ArsError::InvalidQuiver(format!("duplicate label `{label}`")));
        }
        self.arrow_index.insert(label.clone(), self.arrows.len());
        self.arrows.push(Arrow {
            label,
            source,
            target,
        });
        Ok(())
    }

    /// Rebuilds the lookup tables, e.g. after deserialization.
    pub fn reindex(mut self) -> Result<Self> {
        let arrows = std::mem::take(&mut self.arrows);
        let vertices = std::mem::take(&mut self.vertices);
        let labels: Vec<_> = arrows
            .iter()
            .map(|a| (a.label.clone(), vertices[a.source].clone(), vertices[a.target].clone()))
            .collect();
        Quiver::new(vertices, labels)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn vertex(&self, label: &str) -> Result<usize> {
        self.vertex_index
            .get(label)
            .copied()
            .ok_or_else(|| ArsError::UnknownVertex(label.to_string()))
    }

    pub fn arrow(&self, label: &str) -> Result<usize> {
        self.arrow_index
            .get(label)
            .copied()
            .ok_or_else(|| ArsError::UnknownArrow(label.to_string()))
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn arrow_label(&self, a: usize) -> &str {
        &self.arrows[a].label
    }

    pub fn outgoing(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.source == v)
            .map(|(i, _)| i)
    }

    pub fn incoming(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.arrows
            .iter()
            .enumerate()
            .filter(move |(_, a)| a.target == v)
            .map(|(i, _)| i)
    }

    /// Same vertices, every arrow reversed, labels kept.
    pub fn opposite(&self) -> Quiver {
        let arrows: Vec<_> = self
            .arrows
            .iter()
            .map(|a| {
                (
                    a.label.clone(),
                    self.vertices[a.target].clone(),
                    self.vertices[a.source].clone(),
                )
            })
            .collect();
        Quiver::new(self.vertices.clone(), arrows).expect("opposite of a valid quiver")
    }

    /// Length of the longest path, or `None` when the quiver has an oriented
    /// cycle.
    pub fn longest_path(&self) -> Option<usize> {
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut order: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for a in self.outgoing(v).collect::<Vec<_>>() {
                let t = self.arrows[a].target;
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    order.push(t);
                }
            }
        }
        if order.len() < n {
            return None;
        }
        let mut longest = vec![0usize; n];
        for &v in &order {
            for a in self.outgoing(v) {
                let t = self.arrows[a].target;
                longest[t] = longest[t].max(longest[v] + 1);
            }
        }
        Some(longest.into_iter().max().unwrap_or(0))
    }

    /// The full subquiver on the given vertex labels.
    pub fn full_subquiver<I, L>(&self, labels: I) -> Result<Quiver>
    where
        I: IntoIterator<Item = L>,
        L: AsRef<str>,
    {
        let mut keep = vec![false; self.vertices.len()];
        for l in labels {
            keep[self.vertex(l.as_ref())?] = true;
        }
        let vertices: Vec<String> = self
            .vertices
            .iter()
            .zip(&keep)
            .filter(|(_, k)| **k)
            .map(|(v, _)| v.clone())
            .collect();
        let arrows: Vec<_> = self
            .arrows
            .iter()
            .filter(|a| keep[a.source] && keep[a.target])
            .map(|a| {
                (
                    a.label.clone(),
                    self.vertices[a.source].clone(),
                    self.vertices[a.target].clone(),
                )
            })
            .collect();
        Quiver::new(vertices, arrows)
    }

    /// Whether every vertex and arrow of `self` occurs in `other` with the
    /// same endpoints.
    pub fn is_subquiver_of(&self, other: &Quiver) -> bool {
        self.vertices.iter().all(|v| other.vertex(v).is_ok())
            && self.arrows.iter().all(|a| match other.arrow(&a.label) {
                Ok(b) => {
                    let b = &other.arrows[b];
                    other.vertices[b.source] == self.vertices[a.source]
                        && other.vertices[b.target] == self.vertices[a.target]
                }
                Err(_) => false,
            })
    }

    /// `1 -> 2 -> ... -> n` with arrows `a1, ..., a(n-1)`.
    pub fn linear_a(n: usize) -> Quiver {
        let vertices: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let arrows: Vec<_> = (1..n)
            .map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()))
            .collect();
        Quiver::new(vertices, arrows).expect("linear quiver")
    }

    /// Vertices `lo..=hi` of the doubly infinite line, arrows `a{i}: i -> i+1`.
    pub fn line_segment(lo: i64, hi: i64) -> Quiver {
        let vertices: Vec<String> = (lo..=hi).map(|i| i.to_string()).collect();
        let arrows: Vec<_> = (lo..hi)
            .map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()))
            .collect();
        Quiver::new(vertices, arrows).expect("line segment")
    }

    /// One vertex `v` with a loop `x`.
    pub fn single_loop() -> Quiver {
        Quiver::new(["v"], [("x", "v", "v")]).expect("loop quiver")
    }

    /// The D-infinity quiver cut off at vertex `last`: vertices
    /// `0, 0', 1, ..., last`, arrows `a0: 0 -> 1`, `a0': 0' -> 1` and
    /// `a{i}: i -> i+1`.
    pub fn d_infinity_truncated(last: usize) -> Quiver {
        let mut vertices = vec!["0".to_string(), "0'".to_string()];
        vertices.extend((1..=last).map(|i| i.to_string()));
        let mut arrows = vec![
            ("a0".to_string(), "0".to_string(), "1".to_string()),
            ("a0'".to_string(), "0'".to_string(), "1".to_string()),
        ];
        arrows.extend((1..last).map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string())));
        Quiver::new(vertices, arrows).expect("D-infinity truncation")
    }
}

use std::fmt::Write as _;

use serde::Serialize;

use ars_core::coalg::WindowRef;
use ars_core::linalg::Mat;
use ars_core::repcat::{Rep, RepMap};
use ars_core::Scalar;

/// Vertex-indexed matrices as strings, row-major.
pub type Matrices = Vec<(String, Vec<Vec<String>>)>;

fn rows<S: Scalar>(m: &Mat<S>) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| m.row(r).iter().map(Scalar::to_text).collect())
        .collect()
}

#[derive(Serialize)]
pub struct RepJson {
    pub dims: Vec<(String, usize)>,
    pub matrices: Matrices,
}

pub fn rep_json<S: Scalar>(m: &Rep<S>) -> RepJson {
    let w = m.window();
    RepJson {
        dims: m.dim_vector(),
        matrices: m
            .mats()
            .iter()
            .enumerate()
            .filter(|(_, x)| x.rows() > 0 && x.cols() > 0)
            .map(|(a, x)| (w.arrow_label(a).to_string(), rows(x)))
            .collect(),
    }
}

pub fn map_json<S: Scalar>(f: &RepMap<S>) -> Matrices {
    let w = f.source().window();
    f.comps()
        .iter()
        .enumerate()
        .filter(|(_, x)| x.rows() > 0 && x.cols() > 0)
        .map(|(v, x)| (w.vertex_label(v).to_string(), rows(x)))
        .collect()
}

/// Rows of dimension vectors under a header of vertex labels.
pub fn dims_table(w: &WindowRef, entries: &[(String, Vec<usize>)]) -> String {
    let labels: Vec<&str> = (0..w.vertex_count()).map(|v| w.vertex_label(v)).collect();
    let name_width = entries.iter().map(|(n, _)| n.len()).max().unwrap_or(0);
    let widths: Vec<usize> = labels
        .iter()
        .enumerate()
        .map(|(v, l)| {
            entries
                .iter()
                .map(|(_, d)| d[v].to_string().len())
                .chain([l.len()])
                .max()
                .unwrap_or(1)
        })
        .collect();
    let mut out = String::new();
    let _ = write!(out, "{:name_width$}", "");
    for (l, wd) in labels.iter().zip(&widths) {
        let _ = write!(out, "  {l:>wd$}");
    }
    out.push('\n');
    for (name, dims) in entries {
        let _ = write!(out, "{name:name_width$}");
        for (d, wd) in dims.iter().zip(&widths) {
            let _ = write!(out, "  {d:>wd$}");
        }
        out.push('\n');
    }
    out
}

pub fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

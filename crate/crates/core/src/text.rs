//! Line-oriented text formats.
//!
//! Quivers: `vertex <label>` and `arrow <label> : <source> -> <target>`.
//! Representations, over a given window: `dim <vertex> = <n>` and
//! `matrix <arrow> = [[..], [..]]` (row-major, `dims(target) x dims(source)`).
//! Omitted dimensions are 0 and omitted matrices are zero.
//! Sequences: `term A|B|C` sections in representation syntax, then `map f|g`
//! sections of `at <vertex> = [[..]]` components.
//! Linear towers: `level <a> <b> <c>` followed by `f = ..` and `g = ..`; a
//! `connect` section between two levels lists `a`, `b`, `c` running from the
//! later level to the earlier one.
//! Entries are integers or fractions `p/q` reduced into the active field.
//! `#` starts a comment.

use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::coalg::{Quiver, WindowRef};
use crate::error::{ArsError, Result};
use crate::field::Scalar;
use crate::linalg::Mat;
use crate::repcat::{Rep, RepMap, ShortExact};
use crate::towers::{LinearSeq, LinearTower};

fn err(line: usize, column: usize, message: impl Into<String>) -> ArsError {
    ArsError::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// A non-blank line with its comment stripped; `line` is 1-based.
struct Line<'a> {
    line: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    /// 1-based column of a sub-slice of this line.
    fn col(&self, part: &str) -> usize {
        part.as_ptr() as usize - self.text.as_ptr() as usize + 1
    }

    fn err(&self, part: &str, message: impl Into<String>) -> ArsError {
        err(self.line, self.col(part), message)
    }

    fn keyword(&self) -> (&'a str, &'a str) {
        let t = self.text;
        match t.find(char::is_whitespace) {
            Some(i) => (&t[..i], t[i..].trim_start()),
            None => (t, &t[t.len()..]),
        }
    }

    /// `<name> = <value>`.
    fn assignment(&self, rest: &'a str) -> Result<(&'a str, &'a str)> {
        let eq = rest.find('=').ok_or_else(|| self.err(rest, "expected `=`"))?;
        let name = rest[..eq].trim();
        if name.is_empty() {
            return Err(self.err(rest, "missing name before `=`"));
        }
        Ok((name, rest[eq + 1..].trim_start()))
    }
}

fn lines(text: &str) -> impl Iterator<Item = Line<'_>> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim();
        if trimmed.is_empty() {
            return None;
        }
        let start = body.len() - body.trim_start().len();
        Some(Line {
            line: i + 1,
            text: &raw[start..start + trimmed.len()],
        })
    })
}

fn parse_scalar<S: Scalar>(l: &Line, tok: &str) -> Result<S> {
    let (num, den) = match tok.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (tok, "1"),
    };
    let n: BigInt = num.parse().map_err(|_| l.err(tok, format!("bad number `{tok}`")))?;
    let d: BigInt = den.parse().map_err(|_| l.err(tok, format!("bad number `{tok}`")))?;
    S::from_fraction(&n, &d).ok_or_else(|| l.err(tok, format!("`{tok}` has a vanishing denominator")))
}

/// `[[..], ..]` into rows of entries, checked against the expected shape.
fn parse_matrix<S: Scalar>(l: &Line, src: &str, rows: usize, cols: usize) -> Result<Mat<S>> {
    let s = src.trim();
    let inner = s
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| l.err(src, "a matrix is written `[[..], ..]`"))?;
    let mut parsed: Vec<Vec<S>> = Vec::new();
    let mut rest = inner.trim_start();
    while !rest.is_empty() {
        let body = rest
            .strip_prefix('[')
            .ok_or_else(|| l.err(rest, "expected `[` opening a row"))?;
        let close = body.find(']').ok_or_else(|| l.err(rest, "unclosed row"))?;
        let row = &body[..close];
        let entries = if row.trim().is_empty() {
            Vec::new()
        } else {
            row.split(',')
                .map(|tok| parse_scalar(l, tok.trim()))
                .collect::<Result<Vec<S>>>()?
        };
        parsed.push(entries);
        rest = body[close + 1..].trim_start();
        if let Some(r) = rest.strip_prefix(',') {
            rest = r.trim_start();
        } else if !rest.is_empty() {
            return Err(l.err(rest, "expected `,` between rows"));
        }
    }
    if rows == 0 || cols == 0 {
        if parsed.iter().all(Vec::is_empty) && (parsed.is_empty() || parsed.len() == rows) {
            return Ok(Mat::zeros(rows, cols));
        }
    } else if parsed.len() == rows && parsed.iter().all(|r| r.len() == cols) {
        return Mat::from_rows(parsed);
    }
    Err(l.err(src, format!("expected a {rows}x{cols} matrix")))
}

fn print_matrix<S: Scalar>(m: &Mat<S>) -> String {
    if m.rows() == 0 || m.cols() == 0 {
        return "[]".into();
    }
    let rows: Vec<String> = (0..m.rows())
        .map(|r| {
            let entries: Vec<String> = m.row(r).iter().map(Scalar::to_text).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

pub fn parse_quiver(text: &str) -> Result<Quiver> {
    let mut vertices: Vec<String> = Vec::new();
    let mut arrows: Vec<(String, String, String)> = Vec::new();
    for l in lines(text) {
        let (kw, rest) = l.keyword();
        match kw {
            "vertex" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(l.err(rest, "expected a single vertex label"));
                }
                if vertices.iter().any(|v| v == rest) {
                    return Err(l.err(rest, format!("duplicate vertex `{rest}`")));
                }
                vertices.push(rest.to_string());
            }
            "arrow" => {
                let (label, ends) = rest
                    .split_once(':')
                    .ok_or_else(|| l.err(rest, "expected `arrow <label> : <source> -> <target>`"))?;
                let (s, t) = ends
                    .split_once("->")
                    .ok_or_else(|| l.err(ends, "expected `<source> -> <target>`"))?;
                let (label, s, t) = (label.trim(), s.trim(), t.trim());
                for v in [s, t] {
                    if !vertices.iter().any(|x| x == v) {
                        return Err(l.err(v, format!("unknown vertex `{v}`")));
                    }
                }
                if label.is_empty() {
                    return Err(l.err(rest, "missing arrow label"));
                }
                arrows.push((label.to_string(), s.to_string(), t.to_string()));
            }
            other => return Err(l.err(other, format!("unknown keyword `{other}`"))),
        }
    }
    Quiver::new(vertices, arrows)
}

pub fn print_quiver(q: &Quiver) -> String {
    let mut out = String::new();
    for v in q.vertices() {
        let _ = writeln!(out, "vertex {v}");
    }
    for a in q.arrows() {
        let _ = writeln!(
            out,
            "arrow {} : {} -> {}",
            a.label,
            q.vertex_label(a.source),
            q.vertex_label(a.target)
        );
    }
    out
}

/// Accumulates `dim` and `matrix` lines for one representation.
struct RepBuilder<'w, 'a, S> {
    window: &'w WindowRef,
    dims: Vec<Option<usize>>,
    mats: Vec<Option<(Line<'a>, &'a str)>>,
    _s: std::marker::PhantomData<S>,
}

impl<'w, 'a, S: Scalar> RepBuilder<'w, 'a, S> {
    fn new(window: &'w WindowRef) -> Self {
        RepBuilder {
            window,
            dims: vec![None; window.vertex_count()],
            mats: (0..window.arrow_count()).map(|_| None).collect(),
            _s: std::marker::PhantomData,
        }
    }

    /// Consumes `dim` / `matrix` lines; returns the line back otherwise.
    fn accept(&mut self, l: Line<'a>) -> Result<Option<Line<'a>>> {
        let (kw, rest) = l.keyword();
        match kw {
            "dim" => {
                let (v, n) = l.assignment(rest)?;
                let idx = self
                    .window
                    .vertex(v)
                    .map_err(|_| l.err(v, format!("unknown vertex `{v}`")))?;
                let n: usize = n.parse().map_err(|_| l.err(n, format!("bad dimension `{n}`")))?;
                if self.dims[idx].replace(n).is_some() {
                    return Err(l.err(v, format!("dimension of `{v}` given twice")));
                }
                Ok(None)
            }
            "matrix" => {
                let (a, m) = l.assignment(rest)?;
                let idx = self
                    .window
                    .quiver()
                    .arrow(a)
                    .map_err(|_| l.err(a, format!("unknown arrow `{a}`")))?;
                if self.mats[idx].is_some() {
                    return Err(l.err(a, format!("matrix of `{a}` given twice")));
                }
                self.mats[idx] = Some((l, m));
                Ok(None)
            }
            _ => Ok(Some(l)),
        }
    }

    fn finish(self) -> Result<Rep<S>> {
        let dims: Vec<usize> = self.dims.iter().map(|d| d.unwrap_or(0)).collect();
        let q = self.window.quiver();
        let mats = self
            .mats
            .into_iter()
            .zip(q.arrows())
            .map(|(m, a)| {
                let (r, c) = (dims[a.target], dims[a.source]);
                match m {
                    Some((l, src)) => parse_matrix(&l, src, r, c),
                    None => Ok(Mat::zeros(r, c)),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Rep::new(self.window.clone(), dims, mats)
    }
}

pub fn parse_rep<S: Scalar>(text: &str, window: &WindowRef) -> Result<Rep<S>> {
    let mut b = RepBuilder::new(window);
    for l in lines(text) {
        if let Some(l) = b.accept(l)? {
            let (kw, _) = l.keyword();
            return Err(l.err(kw, format!("unknown keyword `{kw}`")));
        }
    }
    b.finish()
}

pub fn print_rep<S: Scalar>(m: &Rep<S>) -> String {
    let w = m.window();
    let mut out = String::new();
    for v in 0..w.vertex_count() {
        let _ = writeln!(out, "dim {} = {}", w.vertex_label(v), m.dim(v));
    }
    for (a, mat) in m.mats().iter().enumerate() {
        if mat.rows() > 0 && mat.cols() > 0 {
            let _ = writeln!(out, "matrix {} = {}", w.arrow_label(a), print_matrix(mat));
        }
    }
    out
}

pub fn parse_sequence<S: Scalar>(text: &str, window: &WindowRef) -> Result<ShortExact<S>> {
    enum Section<'w, 'a, S> {
        None,
        Term(usize, RepBuilder<'w, 'a, S>),
        Map(usize),
    }
    let mut terms: [Option<Rep<S>>; 3] = [None, None, None];
    let mut comps: [Vec<Option<(Line, &str)>>; 2] = [
        (0..window.vertex_count()).map(|_| None).collect(),
        (0..window.vertex_count()).map(|_| None).collect(),
    ];
    let mut section = Section::None;
    let close = |section: Section<'_, '_, S>, terms: &mut [Option<Rep<S>>; 3]| -> Result<()> {
        if let Section::Term(i, b) = section {
            terms[i] = Some(b.finish()?);
        }
        Ok(())
    };
    for l in lines(text) {
        let (kw, rest) = l.keyword();
        match kw {
            "term" => {
                let i = ["A", "B", "C"]
                    .iter()
                    .position(|t| *t == rest)
                    .ok_or_else(|| l.err(rest, "expected `term A`, `term B` or `term C`"))?;
                if terms[i].is_some() || matches!(section, Section::Term(j, _) if j == i) {
                    return Err(l.err(rest, format!("term {rest} given twice")));
                }
                close(std::mem::replace(&mut section, Section::None), &mut terms)?;
                section = Section::Term(i, RepBuilder::new(window));
            }
            "map" => {
                let i = ["f", "g"]
                    .iter()
                    .position(|t| *t == rest)
                    .ok_or_else(|| l.err(rest, "expected `map f` or `map g`"))?;
                close(std::mem::replace(&mut section, Section::None), &mut terms)?;
                section = Section::Map(i);
            }
            _ => match &mut section {
                Section::Term(_, b) => {
                    if let Some(l) = b.accept(l)? {
                        let (kw, _) = l.keyword();
                        return Err(l.err(kw, format!("unknown keyword `{kw}`")));
                    }
                }
                Section::Map(i) => {
                    if kw != "at" {
                        return Err(l.err(kw, format!("unknown keyword `{kw}` in a map section")));
                    }
                    let (v, m) = l.assignment(rest)?;
                    let idx = window
                        .vertex(v)
                        .map_err(|_| l.err(v, format!("unknown vertex `{v}`")))?;
                    if comps[*i][idx].is_some() {
                        return Err(l.err(v, format!("component at `{v}` given twice")));
                    }
                    comps[*i][idx] = Some((l, m));
                }
                Section::None => {
                    return Err(l.err(kw, "expected a `term` or `map` section"));
                }
            },
        }
    }
    close(section, &mut terms)?;
    let [a, b, c] = terms;
    let missing = |t: &str| err(0, 0, format!("missing term {t}"));
    let (a, b, c) = (a.ok_or_else(|| missing("A"))?, b.ok_or_else(|| missing("B"))?, c.ok_or_else(|| missing("C"))?);
    let [fc, gc] = comps;
    let build = |src: &Rep<S>, tgt: &Rep<S>, cs: Vec<Option<(Line, &str)>>| -> Result<RepMap<S>> {
        let mats = cs
            .into_iter()
            .enumerate()
            .map(|(v, c)| {
                let (r, k) = (tgt.dim(v), src.dim(v));
                match c {
                    Some((l, s)) => parse_matrix(&l, s, r, k),
                    None => Ok(Mat::zeros(r, k)),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        RepMap::new(src.clone(), tgt.clone(), mats)
    };
    let f = build(&a, &b, fc)?;
    let g = build(&b, &c, gc)?;
    ShortExact::new(f, g)
}

pub fn print_sequence<S: Scalar>(d: &ShortExact<S>) -> String {
    let mut out = String::new();
    for (name, t) in [("A", d.a()), ("B", d.b()), ("C", d.c())] {
        let _ = writeln!(out, "term {name}");
        out.push_str(&print_rep(t));
    }
    let w = d.window();
    for (name, m) in [("f", d.f()), ("g", d.g())] {
        let _ = writeln!(out, "map {name}");
        for (v, c) in m.comps().iter().enumerate() {
            if c.rows() > 0 && c.cols() > 0 {
                let _ = writeln!(out, "at {} = {}", w.vertex_label(v), print_matrix(c));
            }
        }
    }
    out
}

pub fn parse_linear_tower<S: Scalar>(text: &str) -> Result<LinearTower<S>> {
    struct Block<'a> {
        head: Option<(Line<'a>, [usize; 3])>,
        entries: Vec<(Line<'a>, &'a str, &'a str)>,
    }
    let mut blocks: Vec<Block> = Vec::new();
    for l in lines(text) {
        let (kw, rest) = l.keyword();
        match kw {
            "level" => {
                let dims: Vec<&str> = rest.split_whitespace().collect();
                if dims.len() != 3 {
                    return Err(l.err(rest, "expected `level <a> <b> <c>`"));
                }
                let mut d = [0; 3];
                for (k, tok) in dims.iter().enumerate() {
                    d[k] = tok.parse().map_err(|_| l.err(tok, format!("bad dimension `{tok}`")))?;
                }
                blocks.push(Block {
                    head: Some((l, d)),
                    entries: Vec::new(),
                });
            }
            "connect" => blocks.push(Block {
                head: None,
                entries: Vec::new(),
            }),
            _ => {
                let (name, value) = l.assignment(l.text)?;
                let block = blocks
                    .last_mut()
                    .ok_or_else(|| l.err(kw, "expected a `level` line first"))?;
                block.entries.push((l, name, value));
            }
        }
    }
    let mut levels: Vec<[usize; 3]> = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        let expect_level = i % 2 == 0;
        match (&b.head, expect_level) {
            (Some((_, d)), true) => levels.push(*d),
            (None, false) => {}
            (Some((l, _)), false) => return Err(l.err(l.text, "expected `connect` between levels")),
            (None, true) => return Err(err(0, 0, "expected a `level` after `connect`")),
        }
    }
    if blocks.len() % 2 == 0 {
        return Err(err(0, 0, "a tower must end with a level"));
    }
    let take = |b: &Block, names: &[&str], shapes: &[(usize, usize)]| -> Result<Vec<Mat<S>>> {
        let mut out: Vec<Option<Mat<S>>> = vec![None; names.len()];
        for (l, name, value) in &b.entries {
            let k = names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| l.err(name, format!("unexpected `{name}`")))?;
            if out[k].is_some() {
                return Err(l.err(name, format!("`{name}` given twice")));
            }
            out[k] = Some(parse_matrix(l, value, shapes[k].0, shapes[k].1)?);
        }
        Ok(out
            .into_iter()
            .zip(shapes)
            .map(|(m, &(r, c))| m.unwrap_or_else(|| Mat::zeros(r, c)))
            .collect())
    };
    let mut seqs = Vec::new();
    let mut maps = Vec::new();
    for (i, b) in blocks.iter().enumerate() {
        if i % 2 == 0 {
            let [a, bb, c] = levels[i / 2];
            let m = take(b, &["f", "g"], &[(bb, a), (c, bb)])?;
            seqs.push(LinearSeq::new(m[0].clone(), m[1].clone())?);
        } else {
            let (lo, hi) = (levels[i / 2], levels[i / 2 + 1]);
            let m = take(b, &["a", "b", "c"], &[(lo[0], hi[0]), (lo[1], hi[1]), (lo[2], hi[2])])?;
            maps.push([m[0].clone(), m[1].clone(), m[2].clone()]);
        }
    }
    LinearTower::new(seqs, maps)
}

pub fn print_linear_tower<S: Scalar>(t: &LinearTower<S>) -> String {
    let mut out = String::new();
    for (i, lvl) in t.levels.iter().enumerate() {
        if i > 0 {
            out.push_str("connect\n");
            for (name, m) in ["a", "b", "c"].iter().zip(&t.maps[i - 1]) {
                let _ = writeln!(out, "{name} = {}", print_matrix(m));
            }
        }
        let [a, b, c] = lvl.dims();
        let _ = writeln!(out, "level {a} {b} {c}");
        let _ = writeln!(out, "f = {}", print_matrix(&lvl.f));
        let _ = writeln!(out, "g = {}", print_matrix(&lvl.g));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coalg::Window;
    use crate::{Rational, F32003};

    const A4: &str = "vertex 1\nvertex 2\nvertex 3\nvertex 4\narrow a1 : 1 -> 2\narrow a2 : 2 -> 3\narrow a3 : 3 -> 4\n";

    #[test]
    fn quiver_round_trip() {
        let q = parse_quiver(A4).unwrap();
        assert_eq!(q.vertex_count(), 4);
        assert_eq!(q.arrow_count(), 3);
        assert_eq!(parse_quiver(&print_quiver(&q)).unwrap(), q);
    }

    #[test]
    fn unknown_vertex_is_reported() {
        let e = parse_quiver("vertex 1\narrow a : 1 -> 7\n").unwrap_err();
        match e {
            ArsError::Parse { line, column, message } => {
                assert_eq!((line, column), (2, 16));
                assert!(message.contains("`7`"));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn interval_rep() {
        let w = Window::full(parse_quiver(A4).unwrap()).unwrap();
        let m: Rep<F32003> = parse_rep("# V23\ndim 2 = 1\ndim 3 = 1\nmatrix a2 = [[1]]\n", &w).unwrap();
        assert_eq!(m.dims(), &[0, 1, 1, 0]);
        assert_eq!(parse_rep::<F32003>(&print_rep(&m), &w).unwrap(), m);
        let bad = parse_rep::<F32003>("dim 2 = 1\ndim 3 = 1\nmatrix a2 = [[1, 2]]\n", &w).unwrap_err();
        assert!(matches!(bad, ArsError::Parse { line: 3, .. }));
    }

    #[test]
    fn fractions() {
        let q = Quiver::linear_a(2);
        let w = Window::full(q).unwrap();
        let m: Rep<Rational> = parse_rep("dim 1 = 1\ndim 2 = 1\nmatrix a1 = [[-3/4]]\n", &w).unwrap();
        assert_eq!(m.mat(0)[(0, 0)], Rational::new(-3, 4));
        assert_eq!(parse_rep::<Rational>(&print_rep(&m), &w).unwrap(), m);
        let z = parse_rep::<Rational>("dim 1 = 1\ndim 2 = 1\nmatrix a1 = [[1/0]]\n", &w);
        assert!(z.is_err());
    }

    #[test]
    fn sequence_round_trip() {
        let w = Window::full(parse_quiver(A4).unwrap()).unwrap();
        let c: Rep<F32003> = Rep::thin(w.clone(), &["1", "2"]).unwrap();
        let d = crate::artheory::almost_split_sequence(&c).unwrap().sequence;
        let text = print_sequence(&d);
        assert_eq!(parse_sequence::<F32003>(&text, &w).unwrap(), d);
    }

    #[test]
    fn tower_round_trip() {
        let text = "level 1 2 1\nf = [[1], [0]]\ng = [[0, 1]]\nconnect\na = [[1]]\nb = [[1, 0], [0, 1]]\nc = [[1]]\nlevel 1 2 1\nf = [[1], [0]]\ng = [[0, 1]]\n";
        let t: LinearTower<F32003> = parse_linear_tower(text).unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(print_linear_tower(&t), text);
        let empty = parse_linear_tower::<F32003>("level 0 1 1\nf = []\ng = [[1]]\n").unwrap();
        assert_eq!(empty.levels[0].dims(), [0, 1, 1]);
    }
}

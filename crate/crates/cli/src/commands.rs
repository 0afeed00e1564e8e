use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use serde::Serialize;

use ars_core::artheory::{almost_split_sequence, knit, AssSummary, Direction};
use ars_core::coalg::{Quiver, Window, WindowRef};
use ars_core::homology::{dtr, trd};
use ars_core::repcat::{decompose, Rep};
use ars_core::text::{parse_linear_tower, parse_quiver, parse_rep, parse_sequence, print_rep, print_sequence};
use ars_core::towers::{
    build_ass_tower, certify_fas, chain, colimit_report, ml_check, transpose_tower, ChainRule, FasCertificate,
};
use ars_core::{FieldSpec, Scalar};

use crate::report::{dims_table, json, map_json, rep_json, Matrices, RepJson};
use crate::{Cli, Command, Format, Input, Outcome, Side, TowerKind};

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_quiver(path: &Path) -> Result<Quiver> {
    parse_quiver(&read(path)?).with_context(|| format!("in {}", path.display()))
}

/// `full`, `full:<maxlen>` or `<subquiver file>:<maxlen>`.
fn resolve_window(q: &Quiver, spec: &str) -> Result<WindowRef> {
    if spec == "full" {
        return Ok(Window::full(q.clone())?);
    }
    let Some((head, len)) = spec.rsplit_once(':') else {
        bail!("window must be `full`, `full:<maxlen>` or `<file>:<maxlen>`, got `{spec}`");
    };
    let maxlen: usize = len.parse().with_context(|| format!("bad maxlen `{len}`"))?;
    if head == "full" {
        return Ok(Window::new(q.clone(), maxlen));
    }
    let sub = load_quiver(Path::new(head))?;
    Ok(Window::new(q.full_subquiver(sub.vertices())?, maxlen))
}

fn window(input: &Input) -> Result<WindowRef> {
    resolve_window(&load_quiver(&input.quiver)?, &input.window)
}

fn load_rep<S: Scalar>(path: &Path, w: &WindowRef) -> Result<Rep<S>> {
    parse_rep(&read(path)?, w).with_context(|| format!("in {}", path.display()))
}

fn dims(m: &Rep<impl Scalar>) -> Vec<usize> {
    m.dims().to_vec()
}

fn no_dot(format: Format) -> Result<()> {
    if format == Format::Dot {
        bail!("DOT output is only available for `knit`");
    }
    Ok(())
}

fn ok(text: String) -> Result<Outcome> {
    Ok(Outcome { text, pass: true })
}

#[derive(Serialize)]
struct SequenceJson {
    a: RepJson,
    b: RepJson,
    c: RepJson,
    f: Matrices,
    g: Matrices,
}

#[derive(Serialize)]
struct AssJson {
    field: FieldSpec,
    summary: AssSummary,
    middle_summands: Vec<(Vec<usize>, usize)>,
    sequence: SequenceJson,
}

pub fn run<S: Scalar>(cli: &Cli) -> Result<Outcome> {
    let format = cli.format;
    match &cli.command {
        Command::Quiver { input } => {
            no_dot(format)?;
            let w = window(input)?;
            #[derive(Serialize)]
            struct Info {
                vertices: Vec<String>,
                arrows: Vec<(String, String, String)>,
                maxlen: usize,
                paths: usize,
            }
            let q = w.quiver();
            let info = Info {
                vertices: q.vertices().to_vec(),
                arrows: q
                    .arrows()
                    .iter()
                    .map(|a| (a.label.clone(), q.vertex_label(a.source).into(), q.vertex_label(a.target).into()))
                    .collect(),
                maxlen: w.maxlen(),
                paths: w.dim(),
            };
            match format {
                Format::Json => ok(json(&info)),
                _ => ok(format!(
                    "vertices {}\narrows   {}\nmaxlen   {}\npaths    {}\n",
                    info.vertices.len(),
                    info.arrows.len(),
                    info.maxlen,
                    info.paths
                )),
            }
        }
        Command::Decompose { input, rep } => {
            no_dot(format)?;
            let w = window(input)?;
            let m: Rep<S> = load_rep(rep, &w)?;
            let d = decompose(&m)?;
            let rows: Vec<(Vec<usize>, usize)> = d.summands.iter().map(|s| (dims(&s.rep), s.multiplicity)).collect();
            match format {
                Format::Json => ok(json(&rows)),
                _ => {
                    let entries: Vec<(String, Vec<usize>)> =
                        rows.iter().map(|(dv, k)| (format!("x{k}"), dv.clone())).collect();
                    ok(dims_table(&w, &entries))
                }
            }
        }
        Command::Dtr { input, rep, inverse } => {
            no_dot(format)?;
            let w = window(input)?;
            let m: Rep<S> = load_rep(rep, &w)?;
            let t = if *inverse { trd(&m)? } else { dtr(&m)? };
            match format {
                Format::Json => ok(json(&rep_json(&t))),
                _ => ok(print_rep(&t)),
            }
        }
        Command::Ass { input, rep, out } => {
            no_dot(format)?;
            let w = window(input)?;
            let c: Rep<S> = load_rep(rep, &w)?;
            let cert = almost_split_sequence(&c)?;
            let seq = &cert.sequence;
            if let Some(path) = out {
                fs::write(path, print_sequence(seq)).with_context(|| format!("writing {}", path.display()))?;
            }
            let middle: Vec<(Vec<usize>, usize)> = decompose(seq.b())?
                .summands
                .iter()
                .map(|s| (dims(&s.rep), s.multiplicity))
                .collect();
            let summary = cert.summary();
            match format {
                Format::Json => ok(json(&AssJson {
                    field: S::field(),
                    summary,
                    middle_summands: middle,
                    sequence: SequenceJson {
                        a: rep_json(seq.a()),
                        b: rep_json(seq.b()),
                        c: rep_json(seq.c()),
                        f: map_json(seq.f()),
                        g: map_json(seq.g()),
                    },
                })),
                _ => {
                    let mut text = String::from("0 -> A -> B -> C -> 0\n");
                    let mut rows = vec![
                        ("A".to_string(), dims(seq.a())),
                        ("B".to_string(), dims(seq.b())),
                        ("C".to_string(), dims(seq.c())),
                    ];
                    for (i, (dv, k)) in middle.iter().enumerate() {
                        rows.push((format!("B{}^{k}", i + 1), dv.clone()));
                    }
                    text.push_str(&dims_table(&w, &rows));
                    let _ = writeln!(
                        text,
                        "dim End(C) = {}, dim rad End(C) = {}, dim Ext1(C, A) = {}, socle = {}",
                        summary.end_dim, summary.radical_dim, summary.ext_dim, summary.socle_dim
                    );
                    ok(text)
                }
            }
        }
        Command::Knit { input, max_dim } => {
            let w = window(input)?;
            let q = knit::<S>(&w, *max_dim)?;
            match format {
                Format::Dot => ok(q.to_dot()),
                Format::Json => ok(json(&q.summary())),
                Format::Human => {
                    let rows: Vec<(String, Vec<usize>)> =
                        q.nodes.iter().enumerate().map(|(i, n)| (format!("n{i}"), dims(n))).collect();
                    let mut text = dims_table(&w, &rows);
                    for (&(a, b), &m) in &q.edges {
                        let _ = writeln!(text, "n{a} -> n{b}{}", if m > 1 { format!(" x{m}") } else { String::new() });
                    }
                    for (&c, &a) in &q.translate {
                        let _ = writeln!(text, "tau n{c} = n{a}");
                    }
                    if !q.complete {
                        text.push_str("incomplete: budget exceeded\n");
                    }
                    ok(text)
                }
            }
        }
        Command::FasCertify { input, seq, side, test_window, max_dim } => {
            no_dot(format)?;
            let q = load_quiver(&input.quiver)?;
            let w = resolve_window(&q, &input.window)?;
            let tw = match test_window {
                Some(spec) => resolve_window(&q, spec)?,
                None => w.clone(),
            };
            let d = parse_sequence::<S>(&read(seq)?, &w).with_context(|| format!("in {}", seq.display()))?;
            let direction = match side {
                Side::Right => Direction::Right,
                Side::Left => Direction::Left,
            };
            let cert: FasCertificate = certify_fas(&d, direction, &tw, *max_dim, None)?;
            let text = match format {
                Format::Json => json(&cert),
                _ => {
                    let mut t = format!(
                        "{} finitely almost split (window {} vertices, maxlen {}, max dim {}): {}\n",
                        match direction {
                            Direction::Right => "right",
                            Direction::Left => "left",
                        },
                        cert.window_vertices,
                        cert.window_maxlen,
                        cert.max_dim,
                        if cert.pass { "pass" } else { "fail" }
                    );
                    let _ = writeln!(t, "tested {}, lifting {}, non-split {}", cert.tested, cert.lifting, cert.non_split);
                    if let Some(sec) = &cert.section {
                        let _ = writeln!(t, "witness: the sequence splits; a section of g is");
                        for (v, m) in sec.iter().enumerate() {
                            if !m.is_empty() && !m[0].is_empty() {
                                let _ = writeln!(t, "  at {}: {:?}", w.vertex_label(v), m);
                            }
                        }
                    }
                    if let Some(wit) = &cert.witness {
                        let _ = writeln!(t, "witness: test object {} with dims {:?}", wit.index, wit.object);
                        for (v, m) in wit.map.iter().enumerate() {
                            if !m.is_empty() && !m[0].is_empty() {
                                let _ = writeln!(t, "  at {}: {:?}", w.vertex_label(v), m);
                            }
                        }
                    }
                    t
                }
            };
            Ok(Outcome { text, pass: cert.pass })
        }
        Command::Tower { chain: spec, rep, kind } => {
            no_dot(format)?;
            let (rule, depth) = spec
                .split_once(':')
                .with_context(|| format!("chain must be `<rule>:<depth>`, got `{spec}`"))?;
            let rule: ChainRule = rule.parse()?;
            let depth: usize = depth.parse().with_context(|| format!("bad depth `{depth}`"))?;
            let c = chain(rule, depth)?;
            let m: Rep<S> = load_rep(rep, &c.windows[0])?;
            match kind {
                TowerKind::Ass => {
                    let t = build_ass_tower(&m, &c)?;
                    let r = colimit_report(&t)?;
                    match format {
                        Format::Json => ok(json(&r)),
                        _ => {
                            let mut text = String::from("level  A  B  C\n");
                            for (i, [a, b, cc]) in r.profile.iter().enumerate() {
                                let _ = writeln!(text, "{i:>5}  {a}  {b}  {cc}");
                            }
                            match r.stabilized_at {
                                Some(l) => {
                                    let _ = writeln!(text, "stabilized at level {l}");
                                }
                                None => {
                                    let _ = writeln!(text, "not stabilized at depth {depth}");
                                }
                            }
                            ok(text)
                        }
                    }
                }
                TowerKind::Transpose => {
                    let (r, _) = transpose_tower(&m, &c)?;
                    match format {
                        Format::Json => ok(json(&r)),
                        _ => {
                            let mut text = String::from("level  vertices  dim Tr  truncation\n");
                            for (i, l) in r.levels.iter().enumerate() {
                                let _ = writeln!(
                                    text,
                                    "{i:>5}  {:>8}  {:>6}  {}",
                                    l.vertices,
                                    l.total,
                                    if l.truncation_agrees { "agrees" } else { "differs" }
                                );
                            }
                            match r.stabilized_at {
                                Some(l) => {
                                    let _ = writeln!(text, "stabilized at level {l}");
                                }
                                None => {
                                    let _ = writeln!(text, "not stabilized at depth {depth}");
                                }
                            }
                            ok(text)
                        }
                    }
                }
            }
        }
        Command::MlCheck { tower } => {
            no_dot(format)?;
            let t = parse_linear_tower::<S>(&read(tower)?).with_context(|| format!("in {}", tower.display()))?;
            let r = ml_check(&t)?;
            let text = match format {
                Format::Json => json(&r),
                _ => {
                    let mut text = String::from("level  dims      stable    depth     exact  lifts\n");
                    for (i, l) in r.levels.iter().enumerate() {
                        let _ = writeln!(
                            text,
                            "{i:>5}  {:<8}  {:<8}  {:<8}  {:<5}  {}",
                            format!("{:?}", l.dims).replace(' ', ""),
                            format!("{:?}", l.stable_dims).replace(' ', ""),
                            format!("{:?}", l.stable_depth).replace(' ', ""),
                            l.level_exact,
                            l.lifts
                        );
                    }
                    let _ = writeln!(text, "limit {:?}", r.limit_dims);
                    let _ = writeln!(text, "{}", r.verdict());
                    text
                }
            };
            Ok(Outcome { text, pass: r.exact })
        }
    }
}

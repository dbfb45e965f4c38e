//! Text format for charts.
//!
//! ```text
//! [vertices]
//! v0 d20 -e0 -e1 ...        # kind, then half-edges counterclockwise: +e outgoing, -e incoming
//! v1 black +e0
//! [edges]
//! e0 1 v1:0 v0:0            # label, tail vertex:slot, head vertex:slot
//! e7 s hoop
//! [nesting]
//! e0:L in outer             # outer face of a component, then its containing region
//! e7:R in e0:L
//! [base]
//! outer
//! ```

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::mcg::word::Generator;

use super::model::{Chart, Edge, EdgeId, End, FaceRef, HalfEdge, Placement, Region, Side, Vertex, VertexId, VertexKind};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseChartError {
    pub line: usize,
    pub message: String,
}

fn err(line: usize, message: impl Into<String>) -> ParseChartError {
    ParseChartError { line, message: message.into() }
}

fn parse_id(tok: &str, prefix: char, line: usize) -> Result<usize, ParseChartError> {
    tok.strip_prefix(prefix)
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| err(line, format!("expected {prefix}<number>, found `{tok}`")))
}

pub fn parse_face(tok: &str, line: usize) -> Result<FaceRef, ParseChartError> {
    let (e, s) = tok.split_once(':').ok_or_else(|| err(line, format!("expected e<id>:L|R, found `{tok}`")))?;
    let edge = parse_id(e, 'e', line)?;
    let side = match s {
        "L" => Side::Left,
        "R" => Side::Right,
        _ => return Err(err(line, format!("face side must be L or R, found `{s}`"))),
    };
    Ok(FaceRef::new(edge, side))
}

pub fn parse_region(tok: &str, line: usize) -> Result<Region, ParseChartError> {
    if tok == "outer" {
        Ok(Region::Outer)
    } else {
        parse_face(tok, line).map(Region::Face)
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Vertices,
    Edges,
    Nesting,
    Base,
}

type EndSpec = Option<(VertexId, usize)>;

pub fn parse_chart(text: &str) -> Result<Chart, ParseChartError> {
    let mut section = Section::None;
    let mut chart = Chart::new();
    let mut ends: BTreeMap<EdgeId, (usize, EndSpec, EndSpec)> = BTreeMap::new();
    let mut saw_base = false;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if content.starts_with('[') {
            section = match content {
                "[vertices]" => Section::Vertices,
                "[edges]" => Section::Edges,
                "[nesting]" => Section::Nesting,
                "[base]" => Section::Base,
                _ => return Err(err(line, format!("unknown section `{content}`"))),
            };
            continue;
        }
        let toks: Vec<&str> = content.split_whitespace().collect();
        match section {
            Section::None => return Err(err(line, "content before the first section header")),
            Section::Vertices => {
                if toks.len() < 2 {
                    return Err(err(line, "vertex line needs an id and a kind"));
                }
                let id = parse_id(toks[0], 'v', line)?;
                let kind = VertexKind::from_token(toks[1])
                    .ok_or_else(|| err(line, format!("unknown vertex kind `{}`", toks[1])))?;
                let mut rotation = Vec::new();
                for t in &toks[2..] {
                    let (end, rest) = match t.split_at(1) {
                        ("+", r) => (End::Tail, r),
                        ("-", r) => (End::Head, r),
                        _ => return Err(err(line, format!("half-edge `{t}` must start with + or -"))),
                    };
                    rotation.push(HalfEdge::new(parse_id(rest, 'e', line)?, end));
                }
                if chart.vertices.insert(id, Vertex { kind, rotation }).is_some() {
                    return Err(err(line, format!("duplicate vertex v{id}")));
                }
            }
            Section::Edges => {
                if toks.len() < 3 {
                    return Err(err(line, "edge line needs an id, a label and endpoints"));
                }
                let id = parse_id(toks[0], 'e', line)?;
                let label = Generator::from_label_token(toks[1])
                    .ok_or_else(|| err(line, format!("unknown label `{}`", toks[1])))?;
                let end_spec = |t: &str| -> Result<EndSpec, ParseChartError> {
                    if t == "boundary" {
                        return Ok(None);
                    }
                    let (v, s) = t.split_once(':').ok_or_else(|| err(line, format!("expected v<id>:<slot>, found `{t}`")))?;
                    let slot = s.parse().map_err(|_| err(line, format!("bad slot `{s}`")))?;
                    Ok(Some((parse_id(v, 'v', line)?, slot)))
                };
                let (tail, head) = match &toks[2..] {
                    ["hoop"] => (None, None),
                    [t, h] => (end_spec(t)?, end_spec(h)?),
                    _ => return Err(err(line, "endpoints must be `hoop` or two of v<id>:<slot>|boundary")),
                };
                if tail.is_none() && head.is_none() && toks[2] != "hoop" {
                    return Err(err(line, "an edge with no endpoints must be written `hoop`"));
                }
                if ends.insert(id, (line, tail, head)).is_some() {
                    return Err(err(line, format!("duplicate edge e{id}")));
                }
                chart.edges.insert(id, Edge { label, tail: tail.map(|t| t.0), head: head.map(|h| h.0) });
            }
            Section::Nesting => {
                if toks.len() != 3 || toks[1] != "in" {
                    return Err(err(line, "nesting line must read `<face> in <region>`"));
                }
                chart.nesting.push(Placement { outer: parse_face(toks[0], line)?, parent: parse_region(toks[2], line)? });
            }
            Section::Base => {
                if toks.len() != 1 || saw_base {
                    return Err(err(line, "base section holds exactly one region"));
                }
                chart.base = parse_region(toks[0], line)?;
                saw_base = true;
            }
        }
    }
    for (&e, &(line, tail, head)) in &ends {
        for (end, spec) in [(End::Tail, tail), (End::Head, head)] {
            let Some((v, slot)) = spec else { continue };
            let listed = chart.vertices.get(&v).and_then(|vx| vx.rotation.get(slot)).copied();
            if listed != Some(HalfEdge::new(e, end)) {
                return Err(err(line, format!("e{e} {end:?} at v{v}:{slot} disagrees with the rotation of v{v}")));
            }
        }
    }
    Ok(chart)
}

fn end_token(c: &Chart, e: EdgeId, end: End) -> String {
    match c.edges[&e].endpoint(end) {
        None => "boundary".to_string(),
        Some(v) => {
            let slot = c.vertices.get(&v).and_then(|vx| vx.rotation.iter().position(|&h| h == HalfEdge::new(e, end)));
            match slot {
                Some(s) => format!("v{v}:{s}"),
                None => format!("v{v}:?"),
            }
        }
    }
}

pub fn print_chart(c: &Chart) -> String {
    let mut s = String::new();
    s.push_str("[vertices]\n");
    for (id, v) in &c.vertices {
        let _ = write!(s, "v{id} {}", v.kind);
        for h in &v.rotation {
            let sign = if h.end == End::Tail { '+' } else { '-' };
            let _ = write!(s, " {sign}e{}", h.edge);
        }
        s.push('\n');
    }
    s.push_str("[edges]\n");
    for (id, e) in &c.edges {
        if e.is_hoop() {
            let _ = writeln!(s, "e{id} {} hoop", e.label.label_token());
        } else {
            let _ = writeln!(s, "e{id} {} {} {}", e.label.label_token(), end_token(c, *id, End::Tail), end_token(c, *id, End::Head));
        }
    }
    s.push_str("[nesting]\n");
    for p in &c.nesting {
        let _ = writeln!(s, "{} in {}", p.outer, p.parent);
    }
    s.push_str("[base]\n");
    let _ = writeln!(s, "{}", c.base);
    s
}

impl fmt::Display for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_chart(self))
    }
}

impl FromStr for Chart {
    type Err = ParseChartError;

    fn from_str(s: &str) -> Result<Chart, ParseChartError> {
        parse_chart(s)
    }
}

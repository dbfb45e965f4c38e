//! Validation of charts: local vertex rules, planarity, nesting and base point.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use super::model::{Chart, EdgeId, End, FaceRef, FaceTable, HalfEdge, Region, VertexId, VertexKind};
use super::pattern;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    DegreeMismatch { vertex: VertexId, kind: VertexKind, degree: usize },
    PatternMismatch { vertex: VertexId, kind: VertexKind, cycle: String },
    MissingVertex { edge: EdgeId, end: End, vertex: VertexId },
    UnattachedEnd { edge: EdgeId, end: End },
    BadRotationEntry { vertex: VertexId, slot: usize },
    BoundaryEdge { edge: EdgeId },
    Euler { component: EdgeId, vertices: usize, edges: usize, faces: usize },
    IsolatedVertex { vertex: VertexId },
    MissingPlacement { component: EdgeId },
    DuplicatePlacement { component: EdgeId },
    BadPlacement { index: usize, reason: String },
    NestingCycle { component: EdgeId },
    BadBase { reason: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DegreeMismatch { vertex, kind, degree } => {
                write!(f, "v{vertex}: {kind} vertex has degree {degree}, expected {}", kind.degree())
            }
            Violation::PatternMismatch { vertex, kind, cycle } => {
                write!(f, "v{vertex}: cycle [{cycle}] does not match the {kind} rule")
            }
            Violation::MissingVertex { edge, end, vertex } => {
                write!(f, "e{edge}: {end:?} refers to missing vertex v{vertex}")
            }
            Violation::UnattachedEnd { edge, end } => {
                write!(f, "e{edge}: {end:?} is not listed in its vertex rotation")
            }
            Violation::BadRotationEntry { vertex, slot } => {
                write!(f, "v{vertex}: slot {slot} names a half-edge not ending at this vertex")
            }
            Violation::BoundaryEdge { edge } => write!(f, "e{edge}: edge meets the boundary of the disk"),
            Violation::Euler { component, vertices, edges, faces } => write!(
                f,
                "component of e{component}: V - E + F = {vertices} - {edges} + {faces} != 2 (not planar)"
            ),
            Violation::IsolatedVertex { vertex } => write!(f, "v{vertex}: vertex without edges"),
            Violation::MissingPlacement { component } => {
                write!(f, "component of e{component}: no nesting entry")
            }
            Violation::DuplicatePlacement { component } => {
                write!(f, "component of e{component}: more than one nesting entry")
            }
            Violation::BadPlacement { index, reason } => write!(f, "nesting entry {index}: {reason}"),
            Violation::NestingCycle { component } => {
                write!(f, "component of e{component}: nesting is cyclic")
            }
            Violation::BadBase { reason } => write!(f, "base: {reason}"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return f.write_str("valid");
        }
        write!(f, "invalid ({} violations)", self.violations.len())?;
        for v in &self.violations {
            write!(f, "\n  {v}")?;
        }
        Ok(())
    }
}

fn structure(c: &Chart, out: &mut Vec<Violation>) {
    for (&e, edge) in &c.edges {
        match (edge.tail, edge.head) {
            (None, None) => {}
            (Some(_), None) | (None, Some(_)) => out.push(Violation::BoundaryEdge { edge: e }),
            _ => {}
        }
        for end in [End::Tail, End::Head] {
            let Some(v) = edge.endpoint(end) else { continue };
            match c.vertices.get(&v) {
                None => out.push(Violation::MissingVertex { edge: e, end, vertex: v }),
                Some(vx) => {
                    let n = vx.rotation.iter().filter(|&&h| h == HalfEdge::new(e, end)).count();
                    if n != 1 {
                        out.push(Violation::UnattachedEnd { edge: e, end });
                    }
                }
            }
        }
    }
    for (&v, vx) in &c.vertices {
        if vx.rotation.is_empty() {
            out.push(Violation::IsolatedVertex { vertex: v });
        }
        for (slot, h) in vx.rotation.iter().enumerate() {
            if c.edges.get(&h.edge).and_then(|e| e.endpoint(h.end)) != Some(v) {
                out.push(Violation::BadRotationEntry { vertex: v, slot });
            }
        }
    }
}

fn local_rules(c: &Chart, out: &mut Vec<Violation>) {
    for (&v, vx) in &c.vertices {
        if vx.rotation.len() != vx.kind.degree() {
            out.push(Violation::DegreeMismatch { vertex: v, kind: vx.kind, degree: vx.rotation.len() });
            continue;
        }
        let cycle = c.vertex_cycle(v);
        if !pattern::admits(vx.kind, &cycle) {
            let cycle = cycle.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(" ");
            out.push(Violation::PatternMismatch { vertex: v, kind: vx.kind, cycle });
        }
    }
}

/// Component index of every edge, with components as returned by [`Chart::components`].
pub(crate) fn component_index(comps: &[BTreeSet<EdgeId>]) -> HashMap<EdgeId, usize> {
    let mut m = HashMap::new();
    for (i, comp) in comps.iter().enumerate() {
        for &e in comp {
            m.insert(e, i);
        }
    }
    m
}

fn euler(c: &Chart, comps: &[BTreeSet<EdgeId>], faces: &FaceTable, out: &mut Vec<Violation>) {
    let idx = component_index(comps);
    let mut face_count = vec![0usize; comps.len()];
    for key in faces.walks.keys() {
        face_count[idx[&key.edge]] += 1;
    }
    for (i, comp) in comps.iter().enumerate() {
        // a hoop is a loop through one virtual vertex
        let hoop = comp.len() == 1 && c.edge(*comp.iter().next().expect("non-empty")).is_hoop();
        let v = c.component_vertices(comp).len() + usize::from(hoop);
        let e = comp.len();
        let f = face_count[i];
        if v as i64 - e as i64 + f as i64 != 2 {
            out.push(Violation::Euler { component: *comp.iter().next().expect("non-empty"), vertices: v, edges: e, faces: f });
        }
    }
}

fn nesting(c: &Chart, comps: &[BTreeSet<EdgeId>], faces: &FaceTable, out: &mut Vec<Violation>) {
    let idx = component_index(comps);
    let mut owner: Vec<Option<usize>> = vec![None; comps.len()];
    for (i, p) in c.nesting.iter().enumerate() {
        let Some(&ci) = idx.get(&p.outer.edge) else {
            out.push(Violation::BadPlacement { index: i, reason: format!("outer face {} names no edge", p.outer) });
            continue;
        };
        if owner[ci].is_some() {
            out.push(Violation::DuplicatePlacement { component: *comps[ci].iter().next().expect("non-empty") });
        } else {
            owner[ci] = Some(i);
        }
    }
    for (ci, o) in owner.iter().enumerate() {
        if o.is_none() {
            out.push(Violation::MissingPlacement { component: *comps[ci].iter().next().expect("non-empty") });
        }
    }
    let outer_of = |ci: usize| owner[ci].map(|i| faces.canonical[&c.nesting[i].outer]);
    let check_region = |r: Region, own: Option<usize>| -> Result<Option<usize>, String> {
        match r {
            Region::Outer => Ok(None),
            Region::Face(fr) => {
                let Some(&pc) = idx.get(&fr.edge) else { return Err(format!("face {fr} names no edge")) };
                if Some(pc) == own {
                    return Err(format!("face {fr} belongs to the placed component itself"));
                }
                if outer_of(pc) == Some(faces.canonical[&fr]) {
                    return Err(format!("face {fr} is the outer face of its component"));
                }
                Ok(Some(pc))
            }
        }
    };
    let mut parent: Vec<Option<usize>> = vec![None; comps.len()];
    for (i, p) in c.nesting.iter().enumerate() {
        let Some(&ci) = idx.get(&p.outer.edge) else { continue };
        if owner[ci] != Some(i) {
            continue;
        }
        match check_region(p.parent, Some(ci)) {
            Ok(pc) => parent[ci] = pc,
            Err(reason) => out.push(Violation::BadPlacement { index: i, reason }),
        }
    }
    for start in 0..comps.len() {
        let mut seen = HashSet::new();
        let mut cur = Some(start);
        while let Some(x) = cur {
            if !seen.insert(x) {
                out.push(Violation::NestingCycle { component: *comps[start].iter().next().expect("non-empty") });
                break;
            }
            cur = parent[x];
        }
    }
    if let Err(reason) = check_region(c.base, None) {
        out.push(Violation::BadBase { reason });
    }
}

/// Checks every condition a chart must satisfy; violations are itemized.
pub fn validate(c: &Chart) -> ValidationReport {
    let mut out = Vec::new();
    structure(c, &mut out);
    if out.is_empty() {
        local_rules(c, &mut out);
        let comps = c.components();
        let faces = c.faces();
        euler(c, &comps, &faces, &mut out);
        nesting(c, &comps, &faces, &mut out);
    }
    ValidationReport { violations: out }
}

/// Canonical face of a face reference, if the edge exists.
pub fn canonical_face(faces: &FaceTable, f: FaceRef) -> Option<FaceRef> {
    faces.canonical.get(&f).copied()
}

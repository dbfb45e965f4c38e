//! The basic charts N0, N1, N2, F1, F2, nucleon recognition, and the
//! registered P2 candidate.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::hurwitz::{basic_system, BasicName, HurwitzSystem};
use crate::mcg::identity::Budget;
use crate::mcg::word::{Generator, Word};

use super::convert::{from_hurwitz, ConvertError};
use super::model::{Chart, EdgeId, End, FaceRef, HalfEdge, Placement, Region, Side, VertexKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasicChart {
    N0,
    N1,
    N2,
    F1,
    F2,
}

impl BasicChart {
    pub const ALL: [BasicChart; 5] = [BasicChart::N0, BasicChart::N1, BasicChart::N2, BasicChart::F1, BasicChart::F2];

    pub fn system(self) -> BasicName {
        match self {
            BasicChart::N0 => BasicName::W0,
            BasicChart::N1 => BasicName::W1,
            BasicChart::N2 => BasicName::W2,
            BasicChart::F1 => BasicName::W1p,
            BasicChart::F2 => BasicName::W2p,
        }
    }
}

impl fmt::Display for BasicChart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BasicChart::N0 => "N0",
            BasicChart::N1 => "N1",
            BasicChart::N2 => "N2",
            BasicChart::F1 => "F1",
            BasicChart::F2 => "F2",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown basic chart `{0}` (expected N0, N1, N2, F1 or F2)")]
pub struct UnknownBasicChart(pub String);

impl FromStr for BasicChart {
    type Err = UnknownBasicChart;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BasicChart::ALL
            .into_iter()
            .find(|b| b.to_string() == s)
            .ok_or_else(|| UnknownBasicChart(s.to_string()))
    }
}

/// A star: one center whose edges all come in from black vertices, with the
/// given counterclockwise labels at the center.
fn star(kind: VertexKind, labels: &[u8]) -> Chart {
    let mut c = Chart::new();
    let center = c.add_vertex(kind);
    let mut rotation = Vec::new();
    for &l in labels {
        let b = c.add_vertex(VertexKind::Black);
        let e = c.add_edge(Generator::zeta(l).expect("chain label"), Some(b), Some(center));
        c.vertices.get_mut(&b).expect("just added").rotation.push(HalfEdge::new(e, End::Tail));
        rotation.push(HalfEdge::new(e, End::Head));
    }
    c.vertices.get_mut(&center).expect("just added").rotation = rotation;
    c.nesting.push(Placement { outer: FaceRef::new(0, Side::Left), parent: Region::Outer });
    c
}

fn free_edge(label: Generator) -> Chart {
    let mut c = Chart::new();
    let a = c.add_vertex(VertexKind::Black);
    let b = c.add_vertex(VertexKind::Black);
    let e = c.add_edge(label, Some(a), Some(b));
    c.vertices.get_mut(&a).expect("just added").rotation.push(HalfEdge::new(e, End::Tail));
    c.vertices.get_mut(&b).expect("just added").rotation.push(HalfEdge::new(e, End::Head));
    c.nesting.push(Placement { outer: FaceRef::new(e, Side::Left), parent: Region::Outer });
    c
}

/// N0: a degree-20 vertex joined to 20 black vertices, every edge pointing
/// away from its black end.
pub fn n0() -> Chart {
    let labels: Vec<u8> = [1, 2, 3, 4, 5, 5, 4, 3, 2, 1].repeat(2);
    star(VertexKind::D20, &labels)
}

/// N1: a degree-30 vertex in the clockwise-inward form, joined to 30 black vertices.
pub fn n1() -> Chart {
    let labels: Vec<u8> = [5, 4, 3, 2, 1].repeat(6);
    star(VertexKind::D30, &labels)
}

pub fn basic_chart(name: BasicChart) -> Chart {
    match name {
        BasicChart::N0 => n0(),
        BasicChart::N1 => n1(),
        BasicChart::N2 => from_hurwitz(&basic_system(BasicName::W2), Budget::default())
            .expect("the W2 system closes off to a chart"),
        BasicChart::F1 => free_edge(Generator::Z1),
        BasicChart::F2 => free_edge(Generator::Sigma),
    }
}

/// `k` disjoint copies of a chart side by side.
pub fn copies(c: &Chart, k: usize) -> Chart {
    (0..k).fold(Chart::new(), |acc, _| acc.product(c))
}

/// Places a whole chart inside region `r` of `host`; returns the edge-id shift.
pub fn insert_chart(host: &mut Chart, x: &Chart, r: Region) -> usize {
    let de = host.next_edge_id();
    let moved = x.shifted(host.next_vertex_id(), de);
    host.vertices.extend(moved.vertices);
    host.edges.extend(moved.edges);
    for p in moved.nesting {
        let parent = if p.parent == Region::Outer { r } else { p.parent };
        host.nesting.push(Placement { outer: p.outer, parent });
    }
    de
}

/// The kind of nucleon a component is: a single degree-20 or degree-30
/// center, every edge running in to it from its own black vertex.
pub fn nucleon_kind(c: &Chart, comp: &BTreeSet<EdgeId>) -> Option<VertexKind> {
    let verts = c.component_vertices(comp);
    let centers: Vec<_> = verts.iter().filter(|v| c.vertex(**v).kind != VertexKind::Black).collect();
    let [&center] = centers[..] else { return None };
    let kind = c.vertex(center).kind;
    if !matches!(kind, VertexKind::D20 | VertexKind::D30) || verts.len() != kind.degree() + 1 {
        return None;
    }
    let inward = c.vertex(center).rotation.iter().all(|h| h.end == End::Head);
    (inward && comp.len() == kind.degree()).then_some(kind)
}

/// Free edge: two black vertices joined by one edge.
pub fn is_free_edge(c: &Chart, comp: &BTreeSet<EdgeId>) -> bool {
    comp.len() == 1
        && c.component_vertices(comp).len() == 2
        && c.component_vertices(comp).iter().all(|v| c.vertex(*v).kind == VertexKind::Black)
}

/// Positive word used for the P2 candidate:
/// (ζ2ζ3ζ4ζ5)² ζ4ζ3ζ2ζ1 ζ5ζ4ζ3ζ2ζ1 ζ2ζ1ζ2, equal to ι² in MC (not in the
/// positive monoid, so it is not just a rewriting of W0's word).
pub fn p2_word() -> Word {
    Word::zetas(&[2, 3, 4, 5, 2, 3, 4, 5, 4, 3, 2, 1, 5, 4, 3, 2, 1, 2, 1, 2])
}

/// The 40-factor system whose chart stands in for P2.
pub fn p2_system() -> HurwitzSystem {
    HurwitzSystem::from_letters(&p2_word().pow(2))
}

/// The registered P2 candidate.
pub fn p2_candidate() -> Result<Chart, ConvertError> {
    from_hurwitz(&p2_system(), Budget::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::monoid::equal_positive;
    use crate::chart::validate::validate;
    use crate::hurwitz::FiberCounts;
    use crate::mcg::is_identity;
    use crate::mcg::word::iota;

    fn indices(w: &Word) -> Vec<u8> {
        w.letters().iter().map(|l| l.gen.index().unwrap()).collect()
    }

    #[test]
    fn basics_validate_with_table_counts() {
        let expect = [
            (BasicChart::N0, FiberCounts::new(20, 0, 0, 0)),
            (BasicChart::N1, FiberCounts::new(30, 0, 0, 0)),
            (BasicChart::N2, FiberCounts::new(28, 0, 1, 0)),
            (BasicChart::F1, FiberCounts::new(1, 1, 0, 0)),
            (BasicChart::F2, FiberCounts::new(0, 0, 1, 1)),
        ];
        for (b, counts) in expect {
            let c = basic_chart(b);
            assert!(validate(&c).is_valid(), "{b}: {}", validate(&c));
            assert_eq!(c.black_counts().unwrap(), counts, "{b}");
        }
    }

    #[test]
    fn nucleons_recognized() {
        let c = n0().product(&n1()).product(&basic_chart(BasicChart::F1));
        let kinds: Vec<_> = c.components().iter().map(|k| nucleon_kind(&c, k)).collect();
        assert_eq!(kinds, vec![Some(VertexKind::D20), Some(VertexKind::D30), None]);
        assert!(is_free_edge(&c, &c.components()[2]));
    }

    #[test]
    fn p2_word_is_iota_squared() {
        assert!(is_identity(&p2_word().concat(&iota().pow(2).inverse()), Budget::default()).is_yes());
        assert!(!equal_positive(&indices(&p2_word()), &indices(&iota().pow(2))));
    }

    #[test]
    fn names_parse() {
        for b in BasicChart::ALL {
            assert_eq!(b.to_string().parse::<BasicChart>().unwrap(), b);
        }
        assert!("N3".parse::<BasicChart>().is_err());
    }
}

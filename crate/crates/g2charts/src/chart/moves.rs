//! The chart-move engine: a catalog of local rewrites, their sites, side
//! conditions and application.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::mcg::word::{Generator, Sign, SignedGenerator};

use super::basics::{basic_chart, insert_chart, nucleon_kind, p2_candidate, BasicChart};
use super::convert::{crossing_letter, RegionMap};
use super::format::parse_region;
use super::model::{Chart, EdgeId, End, FaceRef, HalfEdge, Placement, Region, Side, VertexId, VertexKind};
use super::surgery::{normalize, place_pieces, replace_in_rotation, splice, Remap};
use super::validate::validate;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    C1,
    C2,
    C3,
    C4,
    C5,
    Derived,
    Axiom,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::C1 => "C1",
            Family::C2 => "C2",
            Family::C3 => "C3",
            Family::C4 => "C4",
            Family::C5 => "C5",
            Family::Derived => "derived",
            Family::Axiom => "axiom",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Verified,
    Missing,
}

/// Which kind of [`Site`] an entry takes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SiteShape {
    Vertex,
    Edge,
    Edges(usize),
    Vertices,
    Region,
    Cross,
    Wrap,
}

#[derive(Clone, Copy, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub family: Family,
    pub shape: SiteShape,
    pub status: Status,
    pub summary: &'static str,
}

const fn entry(id: &'static str, family: Family, shape: SiteShape, summary: &'static str) -> CatalogEntry {
    CatalogEntry { id, family, shape, status: Status::Verified, summary }
}

pub const CATALOG: &[CatalogEntry] = &[
    entry("hoop-insert", Family::C1, SiteShape::Region, "add an empty hoop in a region"),
    entry("hoop-remove", Family::C1, SiteShape::Edge, "remove a hoop that encloses nothing"),
    entry("hoop-pair-insert", Family::C1, SiteShape::Wrap, "wrap a component in two oppositely oriented hoops"),
    entry("hoop-pair-cancel", Family::C1, SiteShape::Edges(2), "remove two parallel oppositely oriented hoops"),
    entry("sigma-hoop-expand", Family::C1, SiteShape::Edge, "replace a σ hoop by 12 parallel hoops labeled 1, 2"),
    entry("sigma-hoop-contract", Family::C1, SiteShape::Edges(12), "replace 12 parallel hoops spelling σ by one σ hoop"),
    entry("sigma-edge-expand", Family::C1, SiteShape::Edge, "split a σ edge by a pair of degree-13 vertices"),
    entry("d13-cancel", Family::C1, SiteShape::Vertices, "cancel two degree-13 vertices joined by 12 parallel edges"),
    entry("d4-bigon", Family::C1, SiteShape::Vertices, "uncross two strands that cross twice around an empty bigon"),
    entry("absorb-d4", Family::C2, SiteShape::Vertex, "pass a black vertex through a degree-4 vertex"),
    entry("absorb-d6", Family::C3, SiteShape::Vertex, "pass a black vertex through a degree-6 vertex"),
    entry("absorb-d22", Family::C4, SiteShape::Vertex, "pass a black vertex through a degree-22 vertex"),
    entry("boundary-hoop-add", Family::C5, SiteShape::Region, "add a hoop parallel to the boundary"),
    entry("boundary-hoop-remove", Family::C5, SiteShape::Edge, "remove a hoop parallel to the boundary"),
    entry("transport", Family::Derived, SiteShape::Cross, "move a component across an edge, gaining a hoop"),
    entry("hoop-surround", Family::Derived, SiteShape::Wrap, "add a hoop around a nomadic component"),
    entry("hoop-release", Family::Derived, SiteShape::Edge, "remove a hoop around nomadic contents"),
    entry("free-edge", Family::Derived, SiteShape::Vertices, "saddle two black edges into a free edge"),
    entry("nucleon-swap", Family::Axiom, SiteShape::Edges(3), "replace three N0 by two N1"),
    entry("nucleon-unswap", Family::Axiom, SiteShape::Edges(2), "replace two N1 by three N0"),
    entry("p2-fuse", Family::Axiom, SiteShape::Edges(2), "replace two N0 by the P2 candidate"),
    CatalogEntry {
        id: "fig17",
        family: Family::Derived,
        shape: SiteShape::Vertex,
        status: Status::Missing,
        summary: "split an N2 factor off a type II+ vertex next to P2",
    },
    CatalogEntry {
        id: "fig18",
        family: Family::Derived,
        shape: SiteShape::Vertex,
        status: Status::Missing,
        summary: "remove a degree-6, degree-22, outward degree-20 or outward degree-30 vertex",
    },
];

pub fn catalog_entry(id: &str) -> Option<&'static CatalogEntry> {
    CATALOG.iter().find(|e| e.id == id)
}

/// Where a move applies.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Site {
    /// A vertex and one of its rotation slots.
    Vertex { vertex: VertexId, slot: usize },
    Edge(EdgeId),
    Edges(Vec<EdgeId>),
    Vertices(VertexId, VertexId),
    /// A region plus the label and outer side of a hoop to create there.
    Region { region: Region, label: Generator, side: Side },
    /// The component of an edge, and the face across which it moves.
    Cross { component: EdgeId, face: FaceRef },
    /// The component of an edge, and the label and outer side of a new hoop around it.
    Wrap { component: EdgeId, label: Generator, side: Side },
}

fn side_token(s: Side) -> &'static str {
    match s {
        Side::Left => "L",
        Side::Right => "R",
    }
}

impl fmt::Display for Site {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Site::Vertex { vertex, slot } => write!(f, "vertex v{vertex}:{slot}"),
            Site::Edge(e) => write!(f, "edge e{e}"),
            Site::Edges(es) => {
                f.write_str("edges")?;
                for e in es {
                    write!(f, " e{e}")?;
                }
                Ok(())
            }
            Site::Vertices(a, b) => write!(f, "vertices v{a} v{b}"),
            Site::Region { region, label, side } => {
                write!(f, "region {region} {} {}", label.label_token(), side_token(*side))
            }
            Site::Cross { component, face } => write!(f, "cross e{component} {face}"),
            Site::Wrap { component, label, side } => {
                write!(f, "wrap e{component} {} {}", label.label_token(), side_token(*side))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("bad site `{text}`: {reason}")]
pub struct ParseSiteError {
    pub text: String,
    pub reason: String,
}

fn id_of(tok: &str, prefix: char) -> Result<usize, String> {
    tok.strip_prefix(prefix).and_then(|s| s.parse().ok()).ok_or_else(|| format!("expected {prefix}<number>, found `{tok}`"))
}

fn side_of(tok: &str) -> Result<Side, String> {
    match tok {
        "L" => Ok(Side::Left),
        "R" => Ok(Side::Right),
        _ => Err(format!("expected L or R, found `{tok}`")),
    }
}

fn label_of(tok: &str) -> Result<Generator, String> {
    Generator::from_label_token(tok).ok_or_else(|| format!("expected a label 1..5 or s, found `{tok}`"))
}

fn parse_site(toks: &[&str]) -> Result<Site, String> {
    match toks {
        ["vertex", vs] => {
            let (v, s) = vs.split_once(':').ok_or("expected v<id>:<slot>")?;
            Ok(Site::Vertex { vertex: id_of(v, 'v')?, slot: s.parse().map_err(|_| format!("bad slot `{s}`"))? })
        }
        ["edge", e] => Ok(Site::Edge(id_of(e, 'e')?)),
        ["edges", rest @ ..] if !rest.is_empty() => {
            Ok(Site::Edges(rest.iter().map(|t| id_of(t, 'e')).collect::<Result<_, _>>()?))
        }
        ["vertices", a, b] => Ok(Site::Vertices(id_of(a, 'v')?, id_of(b, 'v')?)),
        ["region", r, l, s] => Ok(Site::Region {
            region: parse_region(r, 0).map_err(|e| e.message)?,
            label: label_of(l)?,
            side: side_of(s)?,
        }),
        ["cross", e, f] => Ok(Site::Cross {
            component: id_of(e, 'e')?,
            face: super::format::parse_face(f, 0).map_err(|e| e.message)?,
        }),
        ["wrap", e, l, s] => Ok(Site::Wrap { component: id_of(e, 'e')?, label: label_of(l)?, side: side_of(s)? }),
        _ => Err("unknown site form".into()),
    }
}

impl FromStr for Site {
    type Err = ParseSiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        parse_site(&toks).map_err(|reason| ParseSiteError { text: s.to_string(), reason })
    }
}

/// A catalog entry applied at a site; written `<entry> <site>`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MoveInstance {
    pub entry: String,
    pub site: Site,
}

impl MoveInstance {
    pub fn new(entry: &str, site: Site) -> MoveInstance {
        MoveInstance { entry: entry.to_string(), site }
    }
}

impl fmt::Display for MoveInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.entry, self.site)
    }
}

impl FromStr for MoveInstance {
    type Err = ParseSiteError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let toks: Vec<&str> = s.split_whitespace().collect();
        let Some((entry, rest)) = toks.split_first() else {
            return Err(ParseSiteError { text: s.to_string(), reason: "empty move".into() });
        };
        let site = parse_site(rest).map_err(|reason| ParseSiteError { text: s.to_string(), reason })?;
        Ok(MoveInstance { entry: entry.to_string(), site })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),
    #[error("catalog entry `{0}` is not installed")]
    NotInstalled(String),
    #[error("input chart is invalid: {0}")]
    InvalidInput(String),
    #[error("{entry}: site does not match: {reason}")]
    Mismatch { entry: String, reason: String },
    #[error("{entry}: side condition fails: {reason}")]
    SideCondition { entry: String, reason: String },
    #[error("{entry}: result fails validation: {report}")]
    InvalidResult { entry: String, report: String },
    #[error("{entry}: black-vertex counts changed from {before} to {after}")]
    Counts { entry: String, before: String, after: String },
}

enum Fail {
    Mismatch(String),
    Side(String),
}

type Step = Result<Chart, Fail>;

fn mismatch<T>(s: impl Into<String>) -> Result<T, Fail> {
    Err(Fail::Mismatch(s.into()))
}

fn side<T>(s: impl Into<String>) -> Result<T, Fail> {
    Err(Fail::Side(s.into()))
}

impl From<String> for Fail {
    fn from(s: String) -> Fail {
        Fail::Side(s)
    }
}

/// Applies a move. The result is validated and its black-vertex counts are
/// compared with the input's.
pub fn apply_move(c: &Chart, m: &MoveInstance) -> Result<Chart, MoveError> {
    let entry = catalog_entry(&m.entry).ok_or_else(|| MoveError::UnknownEntry(m.entry.clone()))?;
    if entry.status == Status::Missing {
        return Err(MoveError::NotInstalled(m.entry.clone()));
    }
    let report = validate(c);
    if !report.is_valid() {
        return Err(MoveError::InvalidInput(report.to_string()));
    }
    let map = RegionMap::new(c);
    let ctx = Ctx { old: c, map: &map };
    let name = m.entry.clone();
    let wrap = |f: Fail| match f {
        Fail::Mismatch(reason) => MoveError::Mismatch { entry: name.clone(), reason },
        Fail::Side(reason) => MoveError::SideCondition { entry: name.clone(), reason },
    };
    let mut out = dispatch(&ctx, entry, &m.site).map_err(wrap)?;
    normalize(&mut out).map_err(|report| MoveError::InvalidResult { entry: name.clone(), report })?;
    let report = validate(&out);
    if !report.is_valid() {
        return Err(MoveError::InvalidResult { entry: name, report: report.to_string() });
    }
    let (before, after) = (c.raw_black_counts(), out.raw_black_counts());
    if before != after {
        return Err(MoveError::Counts { entry: name, before: before.to_string(), after: after.to_string() });
    }
    Ok(out)
}

struct Ctx<'a> {
    old: &'a Chart,
    map: &'a RegionMap,
}

fn dispatch(ctx: &Ctx, entry: &CatalogEntry, site: &Site) -> Step {
    match (entry.id, site) {
        ("hoop-insert", Site::Region { region, label, side }) => ctx.hoop_insert(*region, *label, *side),
        ("hoop-remove", Site::Edge(e)) => ctx.hoop_remove(*e),
        ("hoop-pair-insert", Site::Wrap { component, label, side }) => ctx.hoop_pair_insert(*component, *label, *side),
        ("hoop-pair-cancel", Site::Edges(es)) if es.len() == 2 => ctx.hoop_pair_cancel(es[0], es[1]),
        ("sigma-hoop-expand", Site::Edge(e)) => ctx.sigma_hoop_expand(*e),
        ("sigma-hoop-contract", Site::Edges(es)) if es.len() == 12 => ctx.sigma_hoop_contract(es),
        ("sigma-edge-expand", Site::Edge(e)) => ctx.sigma_edge_expand(*e),
        ("d13-cancel", Site::Vertices(u, w)) => ctx.d13_cancel(*u, *w),
        ("d4-bigon", Site::Vertices(u, w)) => ctx.d4_bigon(*u, *w),
        ("absorb-d4", Site::Vertex { vertex, slot }) => ctx.absorb(VertexKind::D4, *vertex, *slot),
        ("absorb-d6", Site::Vertex { vertex, slot }) => ctx.absorb(VertexKind::D6, *vertex, *slot),
        ("absorb-d22", Site::Vertex { vertex, slot }) => ctx.absorb(VertexKind::D22, *vertex, *slot),
        ("boundary-hoop-add", Site::Region { region, label, side }) => ctx.boundary_hoop_add(*region, *label, *side),
        ("boundary-hoop-remove", Site::Edge(e)) => ctx.boundary_hoop_remove(*e),
        ("transport", Site::Cross { component, face }) => ctx.transport(*component, *face),
        ("hoop-surround", Site::Wrap { component, label, side }) => ctx.hoop_surround(*component, *label, *side),
        ("hoop-release", Site::Edge(e)) => ctx.hoop_release(*e),
        ("free-edge", Site::Vertices(a, b)) => ctx.free_edge(*a, *b),
        ("nucleon-swap", Site::Edges(es)) if es.len() == 3 => ctx.swap_nucleons(es, VertexKind::D20, Replacement::N1Pair),
        ("nucleon-unswap", Site::Edges(es)) if es.len() == 2 => {
            ctx.swap_nucleons(es, VertexKind::D30, Replacement::N0Triple)
        }
        ("p2-fuse", Site::Edges(es)) if es.len() == 2 => ctx.swap_nucleons(es, VertexKind::D20, Replacement::P2),
        (id, s) => mismatch(format!("`{id}` does not take a site of the form `{s}`")),
    }
}

#[derive(Clone, Copy)]
enum Replacement {
    N1Pair,
    N0Triple,
    P2,
}

/// Outer side a hoop needs so that entering it reads `letter`.
fn side_for_inward(letter: SignedGenerator) -> Side {
    if letter.is_positive() {
        Side::Right
    } else {
        Side::Left
    }
}

fn assemble(list: Vec<(usize, Placement)>) -> Vec<Placement> {
    list.into_iter().map(|(_, p)| p).collect()
}

impl<'a> Ctx<'a> {
    fn edge_exists(&self, e: EdgeId) -> Result<(), Fail> {
        if self.old.edges.contains_key(&e) {
            Ok(())
        } else {
            mismatch(format!("no edge e{e}"))
        }
    }

    fn vertex_exists(&self, v: VertexId) -> Result<(), Fail> {
        if self.old.vertices.contains_key(&v) {
            Ok(())
        } else {
            mismatch(format!("no vertex v{v}"))
        }
    }

    fn hoop(&self, e: EdgeId) -> Result<usize, Fail> {
        self.edge_exists(e)?;
        if !self.old.edge(e).is_hoop() {
            return mismatch(format!("e{e} is not a hoop"));
        }
        Ok(self.map.component_of_edge(e))
    }

    fn outer_side(&self, ci: usize) -> Side {
        self.map.outer_face(ci).side
    }

    /// Inner face of a hoop component.
    fn inner(&self, e: EdgeId) -> FaceRef {
        let ci = self.map.component_of_edge(e);
        FaceRef::new(e, self.outer_side(ci).other())
    }

    /// Letter read when entering a hoop from outside.
    fn inward(&self, e: EdgeId) -> SignedGenerator {
        let ci = self.map.component_of_edge(e);
        crossing_letter(self.old, FaceRef::new(e, self.outer_side(ci)).dart())
    }

    fn base_region(&self) -> Region {
        self.map.region_of(self.old.base)
    }

    /// Placements of all components, keyed by component, in nesting order.
    fn carried(&self, remap: &Remap, skip: &BTreeSet<usize>) -> Result<Vec<(usize, Placement)>, Fail> {
        let placed = remap.carry(self.old, skip)?;
        let keys: Vec<usize> = self
            .old
            .nesting
            .iter()
            .map(|p| self.map.component_of_edge(p.outer.edge))
            .filter(|ci| !skip.contains(ci))
            .collect();
        Ok(keys.into_iter().zip(placed).collect())
    }

    /// Removes a component's placement from a keyed list and returns its position.
    fn slot_of(list: &[(usize, Placement)], ci: usize) -> Option<usize> {
        list.iter().position(|(k, _)| *k == ci)
    }

    /// A component may travel without changing the monodromy class when it
    /// contains a degree-20 vertex, or when an N0 lies elsewhere in the chart
    /// to assist.
    fn nomadic(&self, content: &[usize]) -> Result<(), Fail> {
        let has_d20 = content.iter().any(|&ci| {
            self.old.component_vertices(&self.map.comps[ci]).iter().any(|v| self.old.vertex(*v).kind == VertexKind::D20)
        });
        if has_d20 || content.is_empty() {
            return Ok(());
        }
        let helper = (0..self.map.comps.len())
            .filter(|ci| !content.contains(ci))
            .any(|ci| nucleon_kind(self.old, &self.map.comps[ci]) == Some(VertexKind::D20));
        if helper {
            Ok(())
        } else {
            side("the component has no degree-20 vertex and no helper N0 is present")
        }
    }

    fn hoop_insert(&self, region: Region, label: Generator, side: Side) -> Step {
        if let Region::Face(f) = region {
            self.edge_exists(f.edge)?;
        }
        let remap = Remap::new(self.map);
        let mut list = self.carried(&remap, &BTreeSet::new())?;
        let target = remap.region(region).ok_or(Fail::Mismatch("region does not exist".into()))?;
        let mut new = self.old.clone();
        let h = new.add_edge(label, None, None);
        list.push((usize::MAX, Placement { outer: FaceRef::new(h, side), parent: target }));
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        Ok(new)
    }

    fn hoop_remove(&self, e: EdgeId) -> Step {
        let ci = self.hoop(e)?;
        let inner = Region::Face(self.inner(e));
        if !self.map.children(inner).is_empty() {
            return side(format!("hoop e{e} encloses other components"));
        }
        if self.base_region() == inner {
            return side(format!("the base point lies inside hoop e{e}"));
        }
        let mut remap = Remap::new(self.map);
        remap.delete(e);
        let list = self.carried(&remap, &BTreeSet::from([ci]))?;
        let mut new = self.old.clone();
        new.edges.remove(&e);
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        Ok(new)
    }

    fn hoop_pair_insert(&self, ce: EdgeId, label: Generator, side: Side) -> Step {
        self.edge_exists(ce)?;
        let ci = self.map.component_of_edge(ce);
        let remap = Remap::new(self.map);
        let mut list = self.carried(&remap, &BTreeSet::new())?;
        let mut new = self.old.clone();
        let h1 = new.add_edge(label, None, None);
        let h2 = new.add_edge(label, None, None);
        let at = Self::slot_of(&list, ci).expect("component placed");
        let parent = list[at].1.parent;
        list[at].1.parent = Region::Face(FaceRef::new(h2, side));
        list.insert(at, (usize::MAX, Placement { outer: FaceRef::new(h2, side.other()), parent: Region::Face(FaceRef::new(h1, side.other())) }));
        list.insert(at, (usize::MAX, Placement { outer: FaceRef::new(h1, side), parent }));
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        Ok(new)
    }

    fn hoop_pair_cancel(&self, h1: EdgeId, h2: EdgeId) -> Step {
        let (c1, c2) = (self.hoop(h1)?, self.hoop(h2)?);
        if c1 == c2 {
            return mismatch("the two hoops must differ");
        }
        let annulus = Region::Face(self.inner(h1));
        if self.map.children(annulus) != vec![c2] {
            return side(format!("hoop e{h2} is not the only component directly inside e{h1}"));
        }
        if self.base_region() == annulus {
            return side("the base point lies between the hoops");
        }
        if self.old.edge(h1).label != self.old.edge(h2).label || self.inward(h1) != self.inward(h2).inverse() {
            return side("the hoops are not oppositely oriented copies of one label");
        }
        let mut remap = Remap::new(self.map);
        let outside = remap.region(self.map.parent(c1)).ok_or(Fail::Side("parent region lost".into()))?;
        remap.delete(h1);
        remap.delete(h2);
        remap.redirect(Region::Face(self.inner(h2)), outside);
        let list = self.carried(&remap, &BTreeSet::from([c1, c2]))?;
        let mut new = self.old.clone();
        new.edges.remove(&h1);
        new.edges.remove(&h2);
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        Ok(new)
    }

    fn sigma_letters(sign: Sign) -> Vec<SignedGenerator> {
        let (a, b) = match sign {
            Sign::Plus => (Generator::Z1.pos(), Generator::Z2.pos()),
            Sign::Minus => (Generator::Z2.neg(), Generator::Z1.neg()),
        };
        [a, b].repeat(6)
    }

    fn sigma_hoop_expand(&self, e: EdgeId) -> Step {
        let ci = self.hoop(e)?;
        if !self.old.edge(e).label.is_sigma() {
            return mismatch(format!("hoop e{e} is not labeled σ"));
        }
        let letters = Self::sigma_letters(self.inward(e).sign);
        let mut remap = Remap::new(self.map);
        let parent = remap.region(self.map.parent(ci)).ok_or(Fail::Side("parent region lost".into()))?;
        let mut new = self.old.clone();
        new.edges.remove(&e);
        let mut hoops = Vec::new();
        let mut placements = Vec::new();
        let mut around = parent;
        for l in &letters {
            let h = new.add_edge(l.gen, None, None);
            let outer = side_for_inward(*l);
            placements.push((usize::MAX, Placement { outer: FaceRef::new(h, outer), parent: around }));
            around = Region::Face(FaceRef::new(h, outer.other()));
            hoops.push(h);
        }
        remap.delete(e);
        remap.redirect(Region::Face(self.inner(e)), around);
        let mut list = self.carried(&remap, &BTreeSet::from([ci]))?;
        let at = self.map.placement_of(ci).expect("placed").min(list.len());
        list.splice(at..at, placements);
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        Ok(new)
    }

    fn sigma_hoop_contract(&self, hs: &[EdgeId]) -> Step {
        let comps: Vec<usize> = hs.iter().map(|&h| self.hoop(h)).collect::<Result<_, _>>()?;
        for k in 0..hs.len() - 1 {
            let inside = Region::Face(self.inner(hs[k]));
            if self.map.children(inside) != vec![comps[k + 1]] {
                return side(format!("e{} is not the only component directly inside e{}", hs[k + 1], hs[k]));
            }
            if self.base_region() == inside {
                return side("the base point lies between the hoops");
            }
        }
        let read: Vec<SignedGenerator> = hs.iter().map(|&h| self.inward(h)).collect();
        let sign = if read == Self::sigma_letters(Sign::Plus) {
            Sign::Plus
        } else if read == Self::sigma_letters(Sign::Minus) {
            Sign::Minus
        } else {
            return side("the hoops do not spell (ζ1ζ2)^±6");
        };
        let mut remap = Remap::new(self.map);
        let parent = remap.region(self.map.parent(comps[0])).ok_or(Fail::Side("parent region lost".into()))?;
        let mut new = self.old.clone();
        for h in hs {
            new.edges.remove(h);
            remap.delete(*h);
        }
        let letter = SignedGenerator::new(Generator::Sigma, sign);
        let s = new.add_edge(Generator::Sigma, None, None);
        let outer = side_for_inward(letter);
        remap.redirect(Region::Face(self.inner(hs[11])), Region::Face(FaceRef::new(s, outer.other())));
        let mut list = self.carried(&remap, &comps.iter().copied().collect())?;
        let at = self.map.placement_of(comps[0]).expect("placed").min(list.len());
        list.insert(at, (usize::MAX, Placement { outer: FaceRef::new(s, outer), parent }));
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        Ok(new)
    }

    fn sigma_edge_expand(&self, e: EdgeId) -> Step {
        self.edge_exists(e)?;
        let edge = self.old.edge(e);
        if !edge.label.is_sigma() || edge.is_hoop() {
            return mismatch(format!("e{e} is not a σ edge with endpoints"));
        }
        let b = edge.head.expect("edge with endpoints");
        let mut new = self.old.clone();
        let u = new.add_vertex(VertexKind::D13);
        let w = new.add_vertex(VertexKind::D13);
        let f = new.add_edge(Generator::Sigma, Some(w), Some(b));
        replace_in_rotation(&mut new, b, HalfEdge::new(e, End::Head), HalfEdge::new(f, End::Head));
        new.edges.get_mut(&e).expect("present").head = Some(u);
        let bundle: Vec<EdgeId> = (0..12)
            .map(|k| new.add_edge(if k % 2 == 0 { Generator::Z1 } else { Generator::Z2 }, Some(u), Some(w)))
            .collect();
        let mut ru: Vec<HalfEdge> = bundle.iter().map(|&g| HalfEdge::new(g, End::Tail)).collect();
        ru.push(HalfEdge::new(e, End::Head));
        let mut rw: Vec<HalfEdge> = bundle.iter().rev().map(|&g| HalfEdge::new(g, End::Head)).collect();
        rw.push(HalfEdge::new(f, End::Tail));
        new.vertices.get_mut(&u).expect("present").rotation = ru;
        new.vertices.get_mut(&w).expect("present").rotation = rw;
        Ok(new)
    }

    /// Faces strictly between consecutive parallel edges must be empty bigons.
    fn empty_bigon(&self, d: HalfEdge) -> Result<(), Fail> {
        let f = self.map.faces.canonical[&FaceRef::of_dart(d)];
        if self.map.faces.walks[&f].len() != 2 {
            return side(format!("face {f} is not a bigon"));
        }
        let r = Region::Face(f);
        if self.map.region_of(r) != r {
            return side(format!("bigon {f} is an outer face"));
        }
        if !self.map.children(r).is_empty() || self.base_region() == r {
            return side(format!("bigon {f} is not empty"));
        }
        Ok(())
    }

    fn d13_cancel(&self, u: VertexId, w: VertexId) -> Step {
        self.vertex_exists(u)?;
        self.vertex_exists(w)?;
        if u == w || self.old.vertex(u).kind != VertexKind::D13 || self.old.vertex(w).kind != VertexKind::D13 {
            return mismatch("expected two distinct degree-13 vertices");
        }
        let rot = &self.old.vertex(u).rotation;
        let s = rot.iter().position(|h| self.old.edge(h.edge).label.is_sigma()).expect("D13 has a σ slot");
        let bundle: Vec<HalfEdge> = (1..13).map(|k| rot[(s + k) % 13]).collect();
        if bundle.iter().any(|h| self.old.origin(h.twin()) != Some(w)) {
            return side(format!("the twelve chain edges at v{u} do not all run to v{w}"));
        }
        for h in &bundle[..11] {
            self.empty_bigon(*h)?;
        }
        let hu = rot[s];
        let rw = &self.old.vertex(w).rotation;
        let hw = *rw.iter().find(|h| self.old.edge(h.edge).label.is_sigma()).expect("D13 has a σ slot");
        if hu.edge == hw.edge || hu.end == hw.end {
            return side("the σ edges do not continue each other");
        }
        let ci = self.map.component_of_edge(hu.edge);
        let mut new = self.old.clone();
        let mut remap = Remap::new(self.map);
        for h in &bundle {
            new.edges.remove(&h.edge);
            remap.delete(h.edge);
        }
        let (kept, gone) = splice(&mut new, hu, hw);
        remap.rename(gone, kept);
        new.vertices.remove(&u);
        new.vertices.remove(&w);
        let mut list = self.carried(&remap, &BTreeSet::from([ci]))?;
        let p = self.old.nesting[self.map.placement_of(ci).expect("placed")];
        let outer = remap.face(p.outer).ok_or(Fail::Side("the outer face does not survive".into()))?;
        let parent = remap.region(p.parent).ok_or(Fail::Side("parent region lost".into()))?;
        let touched: BTreeSet<EdgeId> = [kept].into();
        let pieces = place_pieces(&new, &touched, outer, parent, None)?;
        let at = self.map.placement_of(ci).expect("placed").min(list.len());
        list.splice(at..at, pieces.into_iter().map(|p| (ci, p)));
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        Ok(new)
    }

    fn d4_bigon(&self, u: VertexId, w: VertexId) -> Step {
        self.vertex_exists(u)?;
        self.vertex_exists(w)?;
        if u == w || self.old.vertex(u).kind != VertexKind::D4 || self.old.vertex(w).kind != VertexKind::D4 {
            return mismatch("expected two distinct degree-4 vertices");
        }
        let ru = self.old.vertex(u).rotation.clone();
        let rw = self.old.vertex(w).rotation.clone();
        let to_w = |h: HalfEdge| self.old.origin(h.twin()) == Some(w);
        let Some(s) = (0..4).find(|&s| {
            let (g, h) = (ru[s], ru[(s + 1) % 4]);
            to_w(g) && to_w(h) && g.edge != h.edge && self.old.next_dart(g) == h.twin()
        }) else {
            return mismatch(format!("v{u} and v{w} do not bound a bigon"));
        };
        self.empty_bigon(ru[s])?;
        let (g, h) = (ru[s], ru[(s + 1) % 4]);
        let slot_w = |x: HalfEdge| rw.iter().position(|&y| y == x.twin()).expect("twin at w");
        let (a, c) = (ru[(s + 2) % 4], ru[(s + 3) % 4]);
        let (b, d) = (rw[(slot_w(g) + 2) % 4], rw[(slot_w(h) + 2) % 4]);
        let outer_edges: BTreeSet<EdgeId> = [a.edge, b.edge, c.edge, d.edge].into();
        if outer_edges.len() != 4 || outer_edges.contains(&g.edge) || outer_edges.contains(&h.edge) {
            return side("the strands leaving the bigon are not four distinct edges");
        }
        let ci = self.map.component_of_edge(g.edge);
        let mut new = self.old.clone();
        let mut remap = Remap::new(self.map);
        for x in [g.edge, h.edge] {
            new.edges.remove(&x);
            remap.delete(x);
        }
        new.vertices.remove(&u);
        new.vertices.remove(&w);
        let (k1, r1) = splice(&mut new, a, b);
        let (k2, r2) = splice(&mut new, c, d);
        remap.rename(r1, k1);
        remap.rename(r2, k2);
        let fa = remap.face(FaceRef::of_dart(a)).expect("renamed edge");
        let fc = remap.face(FaceRef::of_dart(c).opposite()).expect("renamed edge");
        let p = self.old.nesting[self.map.placement_of(ci).expect("placed")];
        let outer = remap.face(p.outer).ok_or(Fail::Side("the outer face does not survive".into()))?;
        let parent = remap.region(p.parent).ok_or(Fail::Side("parent region lost".into()))?;
        let mut list = self.carried(&remap, &BTreeSet::from([ci]))?;
        let pieces = place_pieces(&new, &[k1, k2].into(), outer, parent, Some((fa, fc)))?;
        let at = self.map.placement_of(ci).expect("placed").min(list.len());
        list.splice(at..at, pieces.into_iter().map(|p| (ci, p)));
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        Ok(new)
    }

    /// A black vertex at slot `p` of a degree-2k vertex passes through it:
    /// the edges at `p±t` join up for `t = 1..k−1` and the vertex becomes a
    /// black vertex on the edge at `p+k`.
    fn absorb(&self, kind: VertexKind, v: VertexId, p: usize) -> Step {
        self.vertex_exists(v)?;
        let vx = self.old.vertex(v);
        if vx.kind != kind {
            return mismatch(format!("v{v} is a {} vertex, not {kind}", vx.kind));
        }
        let n = vx.rotation.len();
        if p >= n {
            return mismatch(format!("v{v} has no slot {p}"));
        }
        let k = n / 2;
        let rot = vx.rotation.clone();
        let hp = rot[p];
        let Some(bl) = self.old.origin(hp.twin()) else { return mismatch("slot edge has no far end") };
        if bl == v || self.old.vertex(bl).kind != VertexKind::Black {
            return mismatch(format!("slot {p} of v{v} does not lead to a black vertex"));
        }
        let distinct: BTreeSet<EdgeId> = rot.iter().map(|h| h.edge).collect();
        if distinct.len() != n {
            return side(format!("an edge meets v{v} twice"));
        }
        for t in 1..k {
            let (x, y) = (rot[(p + t) % n], rot[(p + n - t) % n]);
            if self.old.letter_at(x) != self.old.letter_at(y).inverse() {
                return side(format!("slots {} and {} of v{v} do not carry cancelling letters", (p + t) % n, (p + n - t) % n));
            }
        }
        let opposite = rot[(p + k) % n];
        let (was, now) = (self.old.letter_at(hp.twin()), self.old.letter_at(opposite));
        if was.gen.is_sigma() != now.gen.is_sigma() || was.sign != now.sign {
            return side("the black vertex would change type");
        }
        let ci = self.map.component_of_edge(hp.edge);
        let mut new = self.old.clone();
        let mut remap = Remap::new(self.map);
        new.edges.remove(&hp.edge);
        new.vertices.remove(&bl);
        remap.delete(hp.edge);
        let mut kept = BTreeSet::from([opposite.edge]);
        for t in 1..k {
            let (ke, gone) = splice(&mut new, rot[(p + t) % n], rot[(p + n - t) % n]);
            remap.rename(gone, ke);
            kept.insert(ke);
        }
        let nv = new.vertices.get_mut(&v).expect("present");
        nv.kind = VertexKind::Black;
        nv.rotation = vec![opposite];
        let facing_strand = remap.face(FaceRef::of_dart(rot[(p + k - 1) % n])).expect("renamed edge");
        let facing_black = FaceRef::of_dart(opposite);
        let pl = self.old.nesting[self.map.placement_of(ci).expect("placed")];
        let outer = remap.face(pl.outer).ok_or(Fail::Side("the outer face does not survive".into()))?;
        let parent = remap.region(pl.parent).ok_or(Fail::Side("parent region lost".into()))?;
        let mut list = self.carried(&remap, &BTreeSet::from([ci]))?;
        let pieces = place_pieces(&new, &kept, outer, parent, Some((facing_strand, facing_black)))?;
        let at = self.map.placement_of(ci).expect("placed").min(list.len());
        list.splice(at..at, pieces.into_iter().map(|p| (ci, p)));
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        Ok(new)
    }

    fn boundary_hoop_add(&self, region: Region, label: Generator, side: Side) -> Step {
        if region != Region::Outer {
            return mismatch("boundary hoops live in the outer region");
        }
        let remap = Remap::new(self.map);
        let mut list = self.carried(&remap, &BTreeSet::new())?;
        let mut new = self.old.clone();
        let h = new.add_edge(label, None, None);
        for (_, p) in &mut list {
            if p.parent == Region::Outer {
                p.parent = Region::Face(FaceRef::new(h, side.other()));
            }
        }
        list.insert(0, (usize::MAX, Placement { outer: FaceRef::new(h, side), parent: Region::Outer }));
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        Ok(new)
    }

    fn boundary_hoop_remove(&self, e: EdgeId) -> Step {
        let ci = self.hoop(e)?;
        if self.map.children(Region::Outer) != vec![ci] {
            return side(format!("hoop e{e} is not the only component next to the boundary"));
        }
        let mut remap = Remap::new(self.map);
        remap.delete(e);
        remap.redirect(Region::Face(self.inner(e)), Region::Outer);
        let list = self.carried(&remap, &BTreeSet::from([ci]))?;
        let mut new = self.old.clone();
        new.edges.remove(&e);
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        Ok(new)
    }

    /// The component of `ce` moves from its region across the edge of `face`
    /// (whose `face` side is that region) and gets a hoop with the same label
    /// on the far side, oriented so that paths to it read the same word.
    fn transport(&self, ce: EdgeId, face: FaceRef) -> Step {
        self.edge_exists(ce)?;
        self.edge_exists(face.edge)?;
        let ci = self.map.component_of_edge(ce);
        if self.map.component_of_edge(face.edge) == ci {
            return mismatch("a component cannot cross its own edge");
        }
        let here = self.map.parent(ci);
        if self.map.region_of(Region::Face(face)) != here {
            return mismatch(format!("face {face} is not in the region of the component"));
        }
        let there = self.map.region_of(Region::Face(face.opposite()));
        if there == here {
            return side(format!("both sides of e{} are the same region", face.edge));
        }
        let y = crossing_letter(self.old, face.dart());
        let remap = Remap::new(self.map);
        let mut list = self.carried(&remap, &BTreeSet::new())?;
        let target = remap.region(there).ok_or(Fail::Side("target region lost".into()))?;
        let mut new = self.old.clone();
        let h = new.add_edge(y.gen, None, None);
        let outer = side_for_inward(y.inverse());
        let at = Self::slot_of(&list, ci).expect("component placed");
        list[at].1.parent = Region::Face(FaceRef::new(h, outer.other()));
        list.insert(at, (usize::MAX, Placement { outer: FaceRef::new(h, outer), parent: target }));
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        Ok(new)
    }

    fn hoop_surround(&self, ce: EdgeId, label: Generator, side: Side) -> Step {
        self.edge_exists(ce)?;
        let ci = self.map.component_of_edge(ce);
        let mut content = vec![ci];
        for f in self.map.inner_faces(ci) {
            content.extend(self.map.descendants(Region::Face(f)));
        }
        self.nomadic(&content)?;
        let remap = Remap::new(self.map);
        let mut list = self.carried(&remap, &BTreeSet::new())?;
        let mut new = self.old.clone();
        let h = new.add_edge(label, None, None);
        let at = Self::slot_of(&list, ci).expect("component placed");
        let parent = list[at].1.parent;
        list[at].1.parent = Region::Face(FaceRef::new(h, side.other()));
        list.insert(at, (usize::MAX, Placement { outer: FaceRef::new(h, side), parent }));
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        Ok(new)
    }

    fn hoop_release(&self, e: EdgeId) -> Step {
        let ci = self.hoop(e)?;
        let inside = Region::Face(self.inner(e));
        let content = self.map.descendants(inside);
        let base = self.base_region();
        if base == inside || content.iter().any(|&k| self.map.inner_faces(k).iter().any(|f| Region::Face(*f) == base)) {
            return side(format!("the base point lies inside hoop e{e}"));
        }
        self.nomadic(&content)?;
        let mut remap = Remap::new(self.map);
        let outside = remap.region(self.map.parent(ci)).ok_or(Fail::Side("parent region lost".into()))?;
        remap.delete(e);
        remap.redirect(inside, outside);
        let list = self.carried(&remap, &BTreeSet::from([ci]))?;
        let mut new = self.old.clone();
        new.edges.remove(&e);
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        Ok(new)
    }

    /// Saddle between the edge into black vertex `bm` and the edge out of
    /// black vertex `bp` (same label, same region, different components):
    /// the first edge now runs on to the second's head, and the second
    /// becomes a free edge from `bp` to `bm`.
    fn free_edge(&self, bm: VertexId, bp: VertexId) -> Step {
        self.vertex_exists(bm)?;
        self.vertex_exists(bp)?;
        let (vm, vp) = (self.old.vertex(bm), self.old.vertex(bp));
        if vm.kind != VertexKind::Black || vp.kind != VertexKind::Black || bm == bp {
            return mismatch("expected two black vertices");
        }
        let (hm, hp) = (vm.rotation[0], vp.rotation[0]);
        if hm.end != End::Head || hp.end != End::Tail {
            return mismatch(format!("v{bm} must end its edge and v{bp} must start its edge"));
        }
        let (e1, e2) = (hm.edge, hp.edge);
        if self.old.edge(e1).label != self.old.edge(e2).label {
            return side("the two edges carry different labels");
        }
        let (k1, k2) = (self.map.component_of_edge(e1), self.map.component_of_edge(e2));
        if k1 == k2 {
            return side("the black vertices lie in one component");
        }
        let region = self.map.region_of_dart(hm);
        if self.map.region_of_dart(hp) != region {
            return side("the black vertices lie in different regions");
        }
        let w = self.old.edge(e2).head.expect("edge with endpoints");
        let mut remap = Remap::new(self.map);
        remap.delete(e2);
        let target = remap.region(region).ok_or(Fail::Side("region lost".into()))?;
        let keep = if self.map.parent(k2) == region { k1 } else { k2 };
        let pl = self.old.nesting[self.map.placement_of(keep).expect("placed")];
        let outer = remap.face(pl.outer).ok_or(Fail::Side("the outer face does not survive".into()))?;
        let parent = remap.region(pl.parent).ok_or(Fail::Side("parent region lost".into()))?;
        let mut new = self.old.clone();
        replace_in_rotation(&mut new, w, HalfEdge::new(e2, End::Head), HalfEdge::new(e1, End::Head));
        new.edges.get_mut(&e1).expect("present").head = Some(w);
        new.edges.get_mut(&e2).expect("present").head = Some(bm);
        new.vertices.get_mut(&bm).expect("present").rotation = vec![HalfEdge::new(e2, End::Head)];
        let mut list = self.carried(&remap, &BTreeSet::from([k1, k2]))?;
        let at = self.map.placement_of(k1.min(k2)).expect("placed").min(list.len());
        list.insert(at, (usize::MAX, Placement { outer: FaceRef::new(e2, Side::Left), parent: target }));
        list.insert(at, (usize::MAX, Placement { outer, parent }));
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        Ok(new)
    }

    fn swap_nucleons(&self, es: &[EdgeId], kind: VertexKind, with: Replacement) -> Step {
        let mut comps = Vec::new();
        for &e in es {
            self.edge_exists(e)?;
            let ci = self.map.component_of_edge(e);
            if comps.contains(&ci) {
                return mismatch("the edges must lie in distinct components");
            }
            if nucleon_kind(self.old, &self.map.comps[ci]) != Some(kind) {
                return mismatch(format!("the component of e{e} is not a {} nucleon", kind));
            }
            comps.push(ci);
        }
        let region = self.map.parent(comps[0]);
        if comps.iter().any(|&ci| self.map.parent(ci) != region) {
            return side("the nucleons lie in different regions");
        }
        let mut remap = Remap::new(self.map);
        let mut new = self.old.clone();
        for &ci in &comps {
            for e in &self.map.comps[ci] {
                new.edges.remove(e);
                remap.delete(*e);
            }
            for v in self.old.component_vertices(&self.map.comps[ci]) {
                new.vertices.remove(&v);
            }
        }
        let target = remap.region(region).ok_or(Fail::Side("region lost".into()))?;
        let list = self.carried(&remap, &comps.iter().copied().collect())?;
        new.nesting = assemble(list);
        new.base = remap.base(self.old)?;
        let replacement = match with {
            Replacement::N1Pair => super::basics::copies(&basic_chart(BasicChart::N1), 2),
            Replacement::N0Triple => super::basics::copies(&basic_chart(BasicChart::N0), 3),
            Replacement::P2 => p2_candidate().map_err(|e| Fail::Side(format!("no P2 candidate: {e}")))?,
        };
        insert_chart(&mut new, &replacement, target);
        Ok(new)
    }
}

/// Candidate sites for an entry in a chart, each checked by a trial
/// application. Parametric entries are tried with every label and side.
pub fn admissible_sites(c: &Chart, id: &str) -> Vec<MoveInstance> {
    let Some(entry) = catalog_entry(id) else { return Vec::new() };
    if entry.status == Status::Missing || !validate(c).is_valid() {
        return Vec::new();
    }
    candidate_sites(c, entry)
        .into_iter()
        .map(|site| MoveInstance::new(id, site))
        .filter(|m| apply_move(c, m).is_ok())
        .collect()
}

fn candidate_sites(c: &Chart, entry: &CatalogEntry) -> Vec<Site> {
    let map = RegionMap::new(c);
    let hoops: Vec<EdgeId> = c.hoops().collect();
    let sides = [Side::Left, Side::Right];
    let mut regions = vec![Region::Outer];
    regions.extend(map.faces.walks.keys().map(|f| Region::Face(*f)).filter(|r| map.region_of(*r) == *r));
    let comp_edges: Vec<EdgeId> = map.comps.iter().map(|k| *k.iter().next().expect("non-empty")).collect();
    let by_kind = |k: VertexKind| -> Vec<VertexId> {
        c.vertices.iter().filter(|(_, v)| v.kind == k).map(|(&id, _)| id).collect()
    };
    let adjacent_pairs = |k: VertexKind| -> Vec<Site> {
        let mut out = BTreeSet::new();
        for u in by_kind(k) {
            for h in &c.vertex(u).rotation {
                if let Some(w) = c.origin(h.twin()) {
                    if w != u && c.vertex(w).kind == k {
                        out.insert((u, w));
                    }
                }
            }
        }
        out.into_iter().map(|(u, w)| Site::Vertices(u, w)).collect()
    };
    let nucleon_groups = |k: VertexKind, size: usize| -> Vec<Site> {
        let mut by_region: HashMap<Region, Vec<EdgeId>> = HashMap::new();
        for (ci, comp) in map.comps.iter().enumerate() {
            if nucleon_kind(c, comp) == Some(k) {
                by_region.entry(map.parent(ci)).or_default().push(comp_edges[ci]);
            }
        }
        let mut out: Vec<Site> = by_region
            .into_values()
            .filter(|v| v.len() >= size)
            .map(|v| Site::Edges(v[..size].to_vec()))
            .collect();
        out.sort_by_key(|s| s.to_string());
        out
    };
    match entry.id {
        "hoop-insert" => regions
            .iter()
            .flat_map(|&r| {
                Generator::ALL.into_iter().flat_map(move |l| sides.map(|s| Site::Region { region: r, label: l, side: s }))
            })
            .collect(),
        "boundary-hoop-add" => Generator::ALL
            .into_iter()
            .flat_map(|l| sides.map(|s| Site::Region { region: Region::Outer, label: l, side: s }))
            .collect(),
        "hoop-remove" | "sigma-hoop-expand" | "hoop-release" | "boundary-hoop-remove" => {
            hoops.iter().map(|&e| Site::Edge(e)).collect()
        }
        "hoop-pair-insert" | "hoop-surround" => comp_edges
            .iter()
            .flat_map(|&e| {
                Generator::ALL.into_iter().flat_map(move |l| sides.map(|s| Site::Wrap { component: e, label: l, side: s }))
            })
            .collect(),
        "hoop-pair-cancel" => {
            let mut out = Vec::new();
            for &h1 in &hoops {
                let ci = map.component_of_edge(h1);
                let inner = FaceRef::new(h1, map.outer_face(ci).side.other());
                for k in map.children(Region::Face(inner)) {
                    let h2 = comp_edges[k];
                    if c.edge(h2).is_hoop() {
                        out.push(Site::Edges(vec![h1, h2]));
                    }
                }
            }
            out
        }
        "sigma-hoop-contract" => {
            let mut out = Vec::new();
            for &h in &hoops {
                let mut chain = vec![h];
                while chain.len() < 12 {
                    let last = *chain.last().expect("non-empty");
                    let ci = map.component_of_edge(last);
                    let inner = FaceRef::new(last, map.outer_face(ci).side.other());
                    match map.children(Region::Face(inner))[..] {
                        [k] if c.edge(comp_edges[k]).is_hoop() => chain.push(comp_edges[k]),
                        _ => break,
                    }
                }
                if chain.len() == 12 {
                    out.push(Site::Edges(chain));
                }
            }
            out
        }
        "sigma-edge-expand" => c
            .edges
            .iter()
            .filter(|(_, e)| e.label.is_sigma() && !e.is_hoop())
            .map(|(&id, _)| Site::Edge(id))
            .collect(),
        "d13-cancel" => adjacent_pairs(VertexKind::D13),
        "d4-bigon" => adjacent_pairs(VertexKind::D4),
        "absorb-d4" | "absorb-d6" | "absorb-d22" => {
            let kind = match entry.id {
                "absorb-d4" => VertexKind::D4,
                "absorb-d6" => VertexKind::D6,
                _ => VertexKind::D22,
            };
            let mut out = Vec::new();
            for v in by_kind(kind) {
                for (slot, h) in c.vertex(v).rotation.iter().enumerate() {
                    if c.origin(h.twin()).is_some_and(|b| c.vertex(b).kind == VertexKind::Black) {
                        out.push(Site::Vertex { vertex: v, slot });
                    }
                }
            }
            out
        }
        "transport" => {
            let mut out = Vec::new();
            for (ci, &ce) in comp_edges.iter().enumerate() {
                for d in map.walk(map.parent(ci)) {
                    if map.component_of_edge(d.edge) != ci {
                        out.push(Site::Cross { component: ce, face: FaceRef::of_dart(d) });
                    }
                }
            }
            out
        }
        "free-edge" => {
            let blacks: Vec<VertexId> = c.black_vertices().collect();
            let mut out = Vec::new();
            for &a in &blacks {
                for &b in &blacks {
                    if a != b
                        && c.vertex(a).rotation[0].end == End::Head
                        && c.vertex(b).rotation[0].end == End::Tail
                    {
                        out.push(Site::Vertices(a, b));
                    }
                }
            }
            out
        }
        "nucleon-swap" => nucleon_groups(VertexKind::D20, 3),
        "nucleon-unswap" => nucleon_groups(VertexKind::D30, 2),
        "p2-fuse" => nucleon_groups(VertexKind::D20, 2),
        _ => Vec::new(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PassError {
    #[error("no route from the component's region to {0}")]
    NoRoute(Region),
    #[error("the component needs a degree-20 vertex or a helper N0 to travel")]
    MissingHelper,
    #[error(transparent)]
    Move(#[from] MoveError),
}

/// Moves a component into a target region of the same chart by crossing one
/// edge at a time: each crossing adds a hoop that is then released (a σ hoop
/// is first expanded into twelve). Returns the new chart and the moves made.
pub fn pass_component(c: &Chart, component: EdgeId, target: Region) -> Result<(Chart, Vec<MoveInstance>), PassError> {
    let report = validate(c);
    if !report.is_valid() {
        return Err(MoveError::InvalidInput(report.to_string()).into());
    }
    if !c.edges.contains_key(&component) {
        return Err(MoveError::Mismatch { entry: "pass".into(), reason: format!("no edge e{component}") }.into());
    }
    let map = RegionMap::new(c);
    let ci = map.component_of_edge(component);
    let target = map.region_of(target);
    let start = map.parent(ci);
    if start == target {
        return Ok((c.clone(), Vec::new()));
    }
    let route = route(&map, ci, start, target).ok_or(PassError::NoRoute(target))?;
    let mut content = vec![ci];
    for f in map.inner_faces(ci) {
        content.extend(map.descendants(Region::Face(f)));
    }
    let ctx = Ctx { old: c, map: &map };
    if ctx.nomadic(&content).is_err() {
        return Err(PassError::MissingHelper);
    }
    let mut chart = c.clone();
    let mut moves = Vec::new();
    let mut run = |chart: &mut Chart, m: MoveInstance| -> Result<(), PassError> {
        *chart = apply_move(chart, &m)?;
        moves.push(m);
        Ok(())
    };
    for face in route {
        let before = chart.next_edge_id();
        run(&mut chart, MoveInstance::new("transport", Site::Cross { component, face }))?;
        let hoop = before;
        if chart.edge(hoop).label.is_sigma() {
            let first = chart.next_edge_id();
            run(&mut chart, MoveInstance::new("sigma-hoop-expand", Site::Edge(hoop)))?;
            for h in (first..first + 12).rev() {
                run(&mut chart, MoveInstance::new("hoop-release", Site::Edge(h)))?;
            }
        } else {
            run(&mut chart, MoveInstance::new("hoop-release", Site::Edge(hoop)))?;
        }
    }
    Ok((chart, moves))
}

/// Shortest sequence of crossings (faces on the near side) from one region
/// to another that avoids the component's own edges.
fn route(map: &RegionMap, ci: usize, from: Region, to: Region) -> Option<Vec<FaceRef>> {
    let mut prev: HashMap<Region, (Region, FaceRef)> = HashMap::new();
    let mut queue = std::collections::VecDeque::from([from]);
    let mut seen = BTreeSet::from([from]);
    while let Some(r) = queue.pop_front() {
        if r == to {
            let mut path = Vec::new();
            let mut cur = r;
            while cur != from {
                let (p, f) = prev[&cur];
                path.push(f);
                cur = p;
            }
            path.reverse();
            return Some(path);
        }
        for d in map.walk(r) {
            if map.component_of_edge(d.edge) == ci {
                continue;
            }
            let next = map.region_of_dart(d.twin());
            if seen.insert(next) {
                prev.insert(next, (r, FaceRef::of_dart(d)));
                queue.push_back(next);
            }
        }
    }
    None
}

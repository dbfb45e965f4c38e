//! Charts as planar combinatorial maps: rotation systems plus a nesting forest.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use crate::hurwitz::FiberCounts;
use crate::mcg::word::{Generator, Sign, SignedGenerator, Word};

pub type VertexId = usize;
pub type EdgeId = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VertexKind {
    Black,
    D4,
    D6,
    D20,
    D30,
    D22,
    D13,
}

impl VertexKind {
    pub const ALL: [VertexKind; 7] = [
        VertexKind::Black,
        VertexKind::D4,
        VertexKind::D6,
        VertexKind::D20,
        VertexKind::D30,
        VertexKind::D22,
        VertexKind::D13,
    ];

    pub fn degree(self) -> usize {
        match self {
            VertexKind::Black => 1,
            VertexKind::D4 => 4,
            VertexKind::D6 => 6,
            VertexKind::D20 => 20,
            VertexKind::D30 => 30,
            VertexKind::D22 => 22,
            VertexKind::D13 => 13,
        }
    }

    pub fn from_degree(d: usize) -> Option<VertexKind> {
        VertexKind::ALL.into_iter().find(|k| k.degree() == d)
    }

    pub fn token(self) -> &'static str {
        match self {
            VertexKind::Black => "black",
            VertexKind::D4 => "d4",
            VertexKind::D6 => "d6",
            VertexKind::D20 => "d20",
            VertexKind::D30 => "d30",
            VertexKind::D22 => "d22",
            VertexKind::D13 => "d13",
        }
    }

    pub fn from_token(s: &str) -> Option<VertexKind> {
        VertexKind::ALL.into_iter().find(|k| k.token() == s)
    }
}

impl fmt::Display for VertexKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.token())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum End {
    Tail,
    Head,
}

impl End {
    pub fn other(self) -> End {
        match self {
            End::Tail => End::Head,
            End::Head => End::Tail,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfEdge {
    pub edge: EdgeId,
    pub end: End,
}

impl HalfEdge {
    pub fn new(edge: EdgeId, end: End) -> HalfEdge {
        HalfEdge { edge, end }
    }

    pub fn twin(self) -> HalfEdge {
        HalfEdge { edge: self.edge, end: self.end.other() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub kind: VertexKind,
    /// Incident half-edges in counterclockwise order.
    pub rotation: Vec<HalfEdge>,
}

/// A labeled oriented edge from `tail` to `head`; both ends absent for a hoop.
/// A single missing end models an edge running into the boundary of the disk,
/// which is representable only so that validation can reject it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub label: Generator,
    pub tail: Option<VertexId>,
    pub head: Option<VertexId>,
}

impl Edge {
    pub fn is_hoop(&self) -> bool {
        self.tail.is_none() && self.head.is_none()
    }

    pub fn endpoint(&self, end: End) -> Option<VertexId> {
        match end {
            End::Tail => self.tail,
            End::Head => self.head,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// The face lying on one side of an edge (left/right relative to its orientation).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceRef {
    pub edge: EdgeId,
    pub side: Side,
}

impl FaceRef {
    pub fn new(edge: EdgeId, side: Side) -> FaceRef {
        FaceRef { edge, side }
    }

    /// The dart whose left side is this face: leaving the tail for the left
    /// side, leaving the head for the right side.
    pub fn dart(self) -> HalfEdge {
        match self.side {
            Side::Left => HalfEdge::new(self.edge, End::Tail),
            Side::Right => HalfEdge::new(self.edge, End::Head),
        }
    }

    pub fn of_dart(h: HalfEdge) -> FaceRef {
        match h.end {
            End::Tail => FaceRef::new(h.edge, Side::Left),
            End::Head => FaceRef::new(h.edge, Side::Right),
        }
    }

    pub fn opposite(self) -> FaceRef {
        FaceRef::new(self.edge, self.side.other())
    }
}

impl fmt::Display for FaceRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Left => "L",
            Side::Right => "R",
        };
        write!(f, "e{}:{s}", self.edge)
    }
}

/// A complementary region: the outer region touching ∂B, or an inner face.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Region {
    Outer,
    Face(FaceRef),
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Region::Outer => f.write_str("outer"),
            Region::Face(r) => write!(f, "{r}"),
        }
    }
}

/// Placement of one connected component: which of its faces is outer, and
/// which region of the enclosing chart contains it.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Placement {
    pub outer: FaceRef,
    pub parent: Region,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Chart {
    pub vertices: BTreeMap<VertexId, Vertex>,
    pub edges: BTreeMap<EdgeId, Edge>,
    /// One entry per connected component, in a fixed order.
    pub nesting: Vec<Placement>,
    pub base: Region,
}

impl Default for Region {
    fn default() -> Self {
        Region::Outer
    }
}

/// Faces of the embedding, keyed by their canonical (smallest) [`FaceRef`].
#[derive(Clone, Debug)]
pub struct FaceTable {
    pub canonical: HashMap<FaceRef, FaceRef>,
    /// Darts of each face in walk order, starting from the canonical dart.
    pub walks: BTreeMap<FaceRef, Vec<HalfEdge>>,
}

impl Chart {
    pub fn new() -> Chart {
        Chart::default()
    }

    pub fn next_vertex_id(&self) -> VertexId {
        self.vertices.keys().next_back().map_or(0, |k| k + 1)
    }

    pub fn next_edge_id(&self) -> EdgeId {
        self.edges.keys().next_back().map_or(0, |k| k + 1)
    }

    pub fn add_vertex(&mut self, kind: VertexKind) -> VertexId {
        let id = self.next_vertex_id();
        self.vertices.insert(id, Vertex { kind, rotation: Vec::new() });
        id
    }

    pub fn add_edge(&mut self, label: Generator, tail: Option<VertexId>, head: Option<VertexId>) -> EdgeId {
        let id = self.next_edge_id();
        self.edges.insert(id, Edge { label, tail, head });
        id
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[&e]
    }

    pub fn vertex(&self, v: VertexId) -> &Vertex {
        &self.vertices[&v]
    }

    /// Vertex at which a half-edge sits.
    pub fn origin(&self, h: HalfEdge) -> Option<VertexId> {
        self.edges.get(&h.edge).and_then(|e| e.endpoint(h.end))
    }

    pub fn slot_of(&self, h: HalfEdge) -> Option<usize> {
        let v = self.origin(h)?;
        self.vertices.get(&v)?.rotation.iter().position(|&x| x == h)
    }

    /// Letter contributed by a half-edge when read around its vertex:
    /// outward edges give the label, inward edges its inverse.
    pub fn letter_at(&self, h: HalfEdge) -> SignedGenerator {
        let label = self.edge(h.edge).label;
        match h.end {
            End::Tail => label.pos(),
            End::Head => label.neg(),
        }
    }

    /// Letters around a vertex, counterclockwise from slot 0.
    pub fn vertex_cycle(&self, v: VertexId) -> Vec<SignedGenerator> {
        self.vertex(v).rotation.iter().map(|&h| self.letter_at(h)).collect()
    }

    /// Counterclockwise word around a vertex.
    pub fn vertex_boundary_word(&self, v: VertexId) -> Result<Word, ChartError> {
        let vx = self.vertices.get(&v).ok_or(ChartError::NoSuchVertex(v))?;
        if vx.kind == VertexKind::Black {
            return Err(ChartError::BlackVertexWord(v));
        }
        Ok(Word::from_letters(self.vertex_cycle(v)))
    }

    /// Next dart along the face on the left: arrive at the far vertex and turn
    /// to the clockwise-next half-edge there.
    pub fn next_dart(&self, d: HalfEdge) -> HalfEdge {
        let t = d.twin();
        match self.origin(t) {
            None => d,
            Some(u) => {
                let rot = &self.vertices[&u].rotation;
                let i = rot.iter().position(|&x| x == t).expect("half-edge in rotation");
                rot[(i + rot.len() - 1) % rot.len()]
            }
        }
    }

    pub fn faces(&self) -> FaceTable {
        let mut canonical = HashMap::new();
        let mut walks = BTreeMap::new();
        for (&e, edge) in &self.edges {
            for side in [Side::Left, Side::Right] {
                let start = FaceRef::new(e, side);
                if canonical.contains_key(&start) {
                    continue;
                }
                let mut walk = Vec::new();
                if edge.is_hoop() {
                    walk.push(start.dart());
                } else {
                    let mut d = start.dart();
                    loop {
                        walk.push(d);
                        d = self.next_dart(d);
                        if d == start.dart() || walk.len() > 4 * self.edges.len() + 4 {
                            break;
                        }
                    }
                }
                let min_pos = walk
                    .iter()
                    .enumerate()
                    .min_by_key(|(_, &d)| FaceRef::of_dart(d))
                    .map(|(i, _)| i)
                    .unwrap_or(0);
                walk.rotate_left(min_pos);
                let key = FaceRef::of_dart(walk[0]);
                for &d in &walk {
                    canonical.insert(FaceRef::of_dart(d), key);
                }
                walks.insert(key, walk);
            }
        }
        FaceTable { canonical, walks }
    }

    /// Connected components as sorted edge sets, ordered by smallest edge id.
    pub fn components(&self) -> Vec<BTreeSet<EdgeId>> {
        let mut parent: HashMap<EdgeId, EdgeId> = self.edges.keys().map(|&e| (e, e)).collect();
        fn find(p: &mut HashMap<EdgeId, EdgeId>, x: EdgeId) -> EdgeId {
            let mut r = x;
            while p[&r] != r {
                r = p[&r];
            }
            let mut y = x;
            while p[&y] != r {
                let n = p[&y];
                p.insert(y, r);
                y = n;
            }
            r
        }
        for v in self.vertices.values() {
            if let Some(first) = v.rotation.first() {
                for h in &v.rotation[1..] {
                    let (a, b) = (find(&mut parent, first.edge), find(&mut parent, h.edge));
                    if a != b {
                        parent.insert(a.max(b), a.min(b));
                    }
                }
            }
        }
        let mut groups: BTreeMap<EdgeId, BTreeSet<EdgeId>> = BTreeMap::new();
        let keys: Vec<EdgeId> = self.edges.keys().copied().collect();
        for e in keys {
            let r = find(&mut parent, e);
            groups.entry(r).or_default().insert(e);
        }
        let mut out: Vec<BTreeSet<EdgeId>> = groups.into_values().collect();
        out.sort_by_key(|s| *s.iter().next().expect("non-empty"));
        out
    }

    /// Index into `nesting` of the placement for the component containing `e`.
    pub fn placement_index_of_edge(&self, e: EdgeId, comps: &[BTreeSet<EdgeId>]) -> Option<usize> {
        let comp = comps.iter().find(|c| c.contains(&e))?;
        self.nesting.iter().position(|p| comp.contains(&p.outer.edge))
    }

    /// Vertices incident to a set of edges.
    pub fn component_vertices(&self, comp: &BTreeSet<EdgeId>) -> BTreeSet<VertexId> {
        let mut out = BTreeSet::new();
        for e in comp {
            let edge = self.edge(*e);
            out.extend(edge.tail);
            out.extend(edge.head);
        }
        out
    }

    pub fn black_vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().filter(|(_, v)| v.kind == VertexKind::Black).map(|(&id, _)| id)
    }

    /// Singular-fiber type of a black vertex, read from the letter at it.
    pub fn black_type(&self, v: VertexId) -> Option<crate::hurwitz::FiberType> {
        let vx = self.vertices.get(&v)?;
        if vx.kind != VertexKind::Black {
            return None;
        }
        let l = self.letter_at(*vx.rotation.first()?);
        Some(match (l.gen.is_sigma(), l.sign) {
            (false, Sign::Plus) => crate::hurwitz::FiberType::IPlus,
            (false, Sign::Minus) => crate::hurwitz::FiberType::IMinus,
            (true, Sign::Plus) => crate::hurwitz::FiberType::IIPlus,
            (true, Sign::Minus) => crate::hurwitz::FiberType::IIMinus,
        })
    }

    /// Tally of black vertices by label class and orientation (no validity check).
    pub fn raw_black_counts(&self) -> FiberCounts {
        let mut c = FiberCounts::default();
        for v in self.black_vertices() {
            if let Some(t) = self.black_type(v) {
                c.tally(t);
            }
        }
        c
    }

    /// Counts of black vertices; rejects invalid charts.
    pub fn black_counts(&self) -> Result<FiberCounts, ChartError> {
        let report = super::validate::validate(self);
        if !report.is_valid() {
            return Err(ChartError::Invalid(report.to_string()));
        }
        Ok(self.raw_black_counts())
    }

    /// Copy with every vertex and edge id shifted, for disjoint unions.
    pub fn shifted(&self, dv: usize, de: usize) -> Chart {
        let shift_face = |f: FaceRef| FaceRef::new(f.edge + de, f.side);
        let shift_region = |r: Region| match r {
            Region::Outer => Region::Outer,
            Region::Face(f) => Region::Face(shift_face(f)),
        };
        Chart {
            vertices: self
                .vertices
                .iter()
                .map(|(&id, v)| {
                    (
                        id + dv,
                        Vertex {
                            kind: v.kind,
                            rotation: v.rotation.iter().map(|h| HalfEdge::new(h.edge + de, h.end)).collect(),
                        },
                    )
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(&id, e)| {
                    (id + de, Edge { label: e.label, tail: e.tail.map(|v| v + dv), head: e.head.map(|v| v + dv) })
                })
                .collect(),
            nesting: self
                .nesting
                .iter()
                .map(|p| Placement { outer: shift_face(p.outer), parent: shift_region(p.parent) })
                .collect(),
            base: shift_region(self.base),
        }
    }

    /// Renumbers vertices and edges to 0..n in id order.
    pub fn compacted(&self) -> Chart {
        let vmap: HashMap<VertexId, VertexId> = self.vertices.keys().enumerate().map(|(i, &v)| (v, i)).collect();
        let emap: HashMap<EdgeId, EdgeId> = self.edges.keys().enumerate().map(|(i, &e)| (e, i)).collect();
        let face = |f: FaceRef| FaceRef::new(emap[&f.edge], f.side);
        let region = |r: Region| match r {
            Region::Outer => Region::Outer,
            Region::Face(f) => Region::Face(face(f)),
        };
        Chart {
            vertices: self
                .vertices
                .iter()
                .map(|(v, vx)| {
                    (
                        vmap[v],
                        Vertex {
                            kind: vx.kind,
                            rotation: vx.rotation.iter().map(|h| HalfEdge::new(emap[&h.edge], h.end)).collect(),
                        },
                    )
                })
                .collect(),
            edges: self
                .edges
                .iter()
                .map(|(e, ed)| {
                    (
                        emap[e],
                        Edge {
                            label: ed.label,
                            tail: ed.tail.map(|v| vmap[&v]),
                            head: ed.head.map(|v| vmap[&v]),
                        },
                    )
                })
                .collect(),
            nesting: self.nesting.iter().map(|p| Placement { outer: face(p.outer), parent: region(p.parent) }).collect(),
            base: region(self.base),
        }
    }

    /// Γ ⊕ Γ′: side by side in one disk; the base point stays with `self`.
    pub fn product(&self, other: &Chart) -> Chart {
        let moved = other.shifted(self.next_vertex_id(), self.next_edge_id());
        let mut out = self.clone();
        out.vertices.extend(moved.vertices);
        out.edges.extend(moved.edges);
        out.nesting.extend(moved.nesting);
        out
    }

    pub fn is_chiral(&self) -> bool {
        let c = self.raw_black_counts();
        c.n_i_minus == 0 && c.n_ii_minus == 0
    }

    pub fn is_irreducible(&self) -> bool {
        self.edges.values().all(|e| !e.label.is_sigma())
    }

    pub fn count_kind(&self, kind: VertexKind) -> usize {
        self.vertices.values().filter(|v| v.kind == kind).count()
    }

    pub fn hoops(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.iter().filter(|(_, e)| e.is_hoop()).map(|(&id, _)| id)
    }

    /// Whether every incident edge of a vertex points away from it.
    pub fn all_outward(&self, v: VertexId) -> bool {
        self.vertex(v).rotation.iter().all(|h| h.end == End::Tail)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ChartError {
    #[error("no vertex v{0}")]
    NoSuchVertex(VertexId),
    #[error("vertex v{0} is black and has no boundary relator")]
    BlackVertexWord(VertexId),
    #[error("invalid chart: {0}")]
    Invalid(String),
    #[error("chart has no usable base region: {0}")]
    NoBase(String),
}

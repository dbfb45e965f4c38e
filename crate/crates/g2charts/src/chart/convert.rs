//! Conversion between charts and Hurwitz systems.

use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::hurwitz::{HurwitzFactor, HurwitzSystem};
use crate::mcg::identity::Budget;
use crate::mcg::word::{SignedGenerator, Word};

use super::derive::{DeriveError, Filler};
use super::model::{Chart, EdgeId, End, FaceRef, FaceTable, HalfEdge, Region, VertexKind};
use super::movie::{Movie, MovieError};
use super::validate::{component_index, validate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConvertError {
    #[error("invalid chart: {0}")]
    Invalid(String),
    #[error(transparent)]
    Derive(#[from] DeriveError),
    #[error(transparent)]
    Movie(#[from] MovieError),
}

/// Synthesizes a chart whose monodromy is the given system: each factor
/// `w·c^ε·w⁻¹` becomes a black vertex inside nested arcs reading `w`, and the
/// product of all factors is then closed off with vertices, cups and caps.
/// Fails when the closing step finds no filling (in particular when the total
/// monodromy is not trivial).
pub fn from_hurwitz(h: &HurwitzSystem, budget: Budget) -> Result<Chart, ConvertError> {
    let mut movie = Movie::new();
    for f in &h.factors {
        let base = movie.len();
        for (i, &x) in f.conjugator.letters().iter().enumerate() {
            movie.cup(base + i, x)?;
        }
        movie.black(base + f.conjugator.len(), f.class.core_letter())?;
    }
    let n = movie.len();
    Filler { movie: &mut movie, budget }.fill(0, n)?;
    Ok(movie.finish()?)
}

/// Regions of a chart and their boundary walks, for routing arcs.
pub(crate) struct RegionMap {
    pub faces: FaceTable,
    pub comps: Vec<BTreeSet<EdgeId>>,
    comp_of: HashMap<EdgeId, usize>,
    /// Canonical outer face and normalized parent region of each component.
    outer: Vec<FaceRef>,
    parent: Vec<Region>,
    raw_parent: Vec<Region>,
    order: Vec<usize>,
}

impl RegionMap {
    pub fn new(c: &Chart) -> RegionMap {
        let faces = c.faces();
        let comps = c.components();
        let comp_of = component_index(&comps);
        let mut outer = vec![FaceRef::new(0, super::model::Side::Left); comps.len()];
        let mut raw_parent = vec![Region::Outer; comps.len()];
        let mut order = Vec::new();
        for p in &c.nesting {
            let ci = comp_of[&p.outer.edge];
            outer[ci] = faces.canonical[&p.outer];
            raw_parent[ci] = p.parent;
            order.push(ci);
        }
        let mut map = RegionMap { faces, comps, comp_of, outer, parent: raw_parent.clone(), raw_parent, order };
        for ci in 0..map.comps.len() {
            map.parent[ci] = map.region_of(map.raw_parent[ci]);
        }
        map
    }

    /// The region a face reference lies in, with outer faces of components
    /// resolved to the region containing that component.
    pub fn region_of(&self, r: Region) -> Region {
        let mut r = r;
        for _ in 0..=self.comps.len() {
            let Region::Face(f) = r else { return r };
            let f = self.faces.canonical[&f];
            let ci = self.comp_of[&f.edge];
            if self.outer[ci] != f {
                return Region::Face(f);
            }
            r = self.raw_parent[ci];
        }
        r
    }

    pub fn region_of_dart(&self, d: HalfEdge) -> Region {
        self.region_of(Region::Face(FaceRef::of_dart(d)))
    }

    pub fn component_of_edge(&self, e: EdgeId) -> usize {
        self.comp_of[&e]
    }

    pub fn outer_face(&self, ci: usize) -> FaceRef {
        self.outer[ci]
    }

    pub fn parent(&self, ci: usize) -> Region {
        self.parent[ci]
    }

    /// Index into the chart's nesting list of a component's placement.
    pub fn placement_of(&self, ci: usize) -> Option<usize> {
        self.order.iter().position(|&x| x == ci)
    }

    /// Components nested, at any depth, inside a region.
    pub fn descendants(&self, r: Region) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![r];
        while let Some(r) = stack.pop() {
            for ci in self.children(r) {
                out.push(ci);
                for f in self.inner_faces(ci) {
                    stack.push(Region::Face(f));
                }
            }
        }
        out
    }

    /// Canonical faces of a component other than its outer face.
    pub fn inner_faces(&self, ci: usize) -> Vec<FaceRef> {
        self.faces
            .walks
            .keys()
            .copied()
            .filter(|f| self.comp_of[&f.edge] == ci && *f != self.outer[ci])
            .collect()
    }

    /// Components placed directly in a region, in nesting order.
    pub fn children(&self, r: Region) -> Vec<usize> {
        self.order.iter().copied().filter(|&ci| self.parent[ci] == r).collect()
    }

    /// Darts bounding a region with the region on their left: the outer walks
    /// of the components placed in it, then the region's own face walk.
    pub fn walk(&self, r: Region) -> Vec<HalfEdge> {
        let mut out = Vec::new();
        for ci in self.children(r) {
            let f = self.outer[ci];
            out.extend(self.faces.walks[&f].iter().copied());
        }
        if let Region::Face(f) = r {
            out.extend(self.faces.walks[&self.faces.canonical[&f]].iter().copied());
        }
        out
    }
}

/// Letter picked up by a path crossing `d` from its left side to its right.
pub fn crossing_letter(c: &Chart, d: HalfEdge) -> SignedGenerator {
    let x = c.edge(d.edge).label.pos();
    match d.end {
        End::Tail => x.inverse(),
        End::Head => x,
    }
}

/// Reads a Hurwitz system off a chart: arcs leave the base region along a
/// depth-first spanning tree of the dual graph and each black vertex gives
/// `(crossed letters)·(its letter)·(crossed letters)⁻¹`, in walk order.
pub fn to_hurwitz(c: &Chart) -> Result<HurwitzSystem, ConvertError> {
    let report = validate(c);
    if !report.is_valid() {
        return Err(ConvertError::Invalid(report.to_string()));
    }
    let map = RegionMap::new(c);
    let base = map.region_of(c.base);
    let mut visited = HashSet::new();
    visited.insert(base);
    let mut factors = Vec::new();
    visit(c, &map, base, None, &mut Vec::new(), &mut visited, &mut factors);
    Ok(HurwitzSystem::new(factors))
}

fn visit(
    c: &Chart,
    map: &RegionMap,
    r: Region,
    entry: Option<HalfEdge>,
    word: &mut Vec<SignedGenerator>,
    visited: &mut HashSet<Region>,
    out: &mut Vec<HurwitzFactor>,
) {
    let mut walk = map.walk(r);
    if let Some(e) = entry {
        if let Some(p) = walk.iter().position(|&d| d == e) {
            walk.rotate_left(p);
        }
    }
    for d in walk {
        let t = d.twin();
        let beyond = map.region_of_dart(t);
        if !visited.contains(&beyond) {
            visited.insert(beyond);
            word.push(crossing_letter(c, d));
            visit(c, map, beyond, Some(t), word, visited, out);
            word.pop();
        }
        if let Some(v) = c.origin(t) {
            if c.vertex(v).kind == VertexKind::Black {
                let l = c.letter_at(t);
                out.push(HurwitzFactor::new(Word::from_letters(word.clone()).free_reduce(), l.gen, l.sign));
            }
        }
    }
}

//! Bookkeeping shared by the moves: carrying face references and placements
//! across a local edit of the rotation system.

use std::collections::{BTreeSet, HashMap};

use super::convert::RegionMap;
use super::model::{Chart, EdgeId, End, FaceRef, HalfEdge, Placement, Region, VertexId};

/// Translates references into the old chart to references into the edited one.
pub(crate) struct Remap<'a> {
    pub map: &'a RegionMap,
    rename: HashMap<EdgeId, Option<EdgeId>>,
    redirect: HashMap<Region, Region>,
}

impl<'a> Remap<'a> {
    pub fn new(map: &'a RegionMap) -> Remap<'a> {
        Remap { map, rename: HashMap::new(), redirect: HashMap::new() }
    }

    /// The edge is gone, or kept under its id with unrelated faces.
    pub fn delete(&mut self, e: EdgeId) {
        self.rename.insert(e, None);
    }

    /// The edge survives as `to`, oriented the same way.
    pub fn rename(&mut self, from: EdgeId, to: EdgeId) {
        self.rename.insert(from, Some(to));
    }

    /// Anything placed in old region `from` goes to new region `to`.
    pub fn redirect(&mut self, from: Region, to: Region) {
        self.redirect.insert(self.map.region_of(from), to);
    }

    fn translate(&self, f: FaceRef) -> Option<Option<FaceRef>> {
        match self.rename.get(&f.edge) {
            None => Some(Some(f)),
            Some(Some(e)) => Some(Some(FaceRef::new(*e, f.side))),
            Some(None) => None,
        }
    }

    /// A surviving reference to the face `f` lies on, found by walking the
    /// old face when `f`'s own edge is gone.
    pub fn face(&self, f: FaceRef) -> Option<FaceRef> {
        if let Some(t) = self.translate(f) {
            return t;
        }
        let key = self.map.faces.canonical[&f];
        self.map.faces.walks[&key].iter().find_map(|&d| self.translate(FaceRef::of_dart(d)).flatten())
    }

    pub fn region(&self, r: Region) -> Option<Region> {
        let r = self.map.region_of(r);
        if let Some(t) = self.redirect.get(&r) {
            return Some(*t);
        }
        match r {
            Region::Outer => Some(Region::Outer),
            Region::Face(f) => self.face(f).map(Region::Face),
        }
    }

    /// Placements of every component not in `skip`, carried over.
    pub fn carry(&self, old: &Chart, skip: &BTreeSet<usize>) -> Result<Vec<Placement>, String> {
        let mut out = Vec::new();
        for p in &old.nesting {
            let ci = self.map.component_of_edge(p.outer.edge);
            if skip.contains(&ci) {
                continue;
            }
            let outer = self.face(p.outer).ok_or_else(|| format!("outer face {} does not survive", p.outer))?;
            let parent = self.region(p.parent).ok_or_else(|| format!("region {} does not survive", p.parent))?;
            out.push(Placement { outer, parent });
        }
        Ok(out)
    }

    pub fn base(&self, old: &Chart) -> Result<Region, String> {
        self.region(old.base).ok_or_else(|| "the base region does not survive".to_string())
    }
}

/// Placements for what remains of one edited component: the piece holding the
/// old outer face keeps the old placement; a second piece sits in the face of
/// the first that `facing` names for it (one dart per piece, both looking at
/// the region between them).
pub(crate) fn place_pieces(
    new: &Chart,
    touched: &BTreeSet<EdgeId>,
    outer: FaceRef,
    parent: Region,
    facing: Option<(FaceRef, FaceRef)>,
) -> Result<Vec<Placement>, String> {
    let comps = new.components();
    let pieces: Vec<&BTreeSet<EdgeId>> = comps.iter().filter(|k| !k.is_disjoint(touched)).collect();
    match pieces.len() {
        0 => Ok(Vec::new()),
        1 => Ok(vec![Placement { outer, parent }]),
        2 => {
            let (fa, fb) = facing.ok_or("the edit disconnects the component")?;
            let (a, b) = (
                pieces.iter().position(|k| k.contains(&fa.edge)),
                pieces.iter().position(|k| k.contains(&fb.edge)),
            );
            let (Some(a), Some(b)) = (a, b) else { return Err("facing darts are not on the pieces".into()) };
            if a == b {
                return Err("facing darts lie on the same piece".into());
            }
            let first = Placement { outer, parent };
            let second = if pieces[a].contains(&outer.edge) {
                Placement { outer: fb, parent: Region::Face(fa) }
            } else {
                Placement { outer: fa, parent: Region::Face(fb) }
            };
            Ok(vec![first, second])
        }
        n => Err(format!("the edit splits the component into {n} pieces")),
    }
}

/// Resolves every parent and the base to a proper region (never the outer
/// face of a component). Fails on references to missing edges or components
/// without exactly one placement.
pub(crate) fn normalize(c: &mut Chart) -> Result<(), String> {
    let comps = c.components();
    let mut seen = vec![0usize; comps.len()];
    let index = super::validate::component_index(&comps);
    let known = |f: &FaceRef| c.edges.contains_key(&f.edge);
    for p in &c.nesting {
        if !known(&p.outer) {
            return Err(format!("placement refers to missing edge e{}", p.outer.edge));
        }
        if let Region::Face(f) = p.parent {
            if !known(&f) {
                return Err(format!("placement refers to missing edge e{}", f.edge));
            }
        }
        seen[index[&p.outer.edge]] += 1;
    }
    if let Region::Face(f) = c.base {
        if !known(&f) {
            return Err(format!("base refers to missing edge e{}", f.edge));
        }
    }
    if let Some(i) = seen.iter().position(|&n| n != 1) {
        let e = comps[i].iter().next().copied().unwrap_or(0);
        return Err(format!("component of e{e} has {} placements", seen[i]));
    }
    let map = RegionMap::new(c);
    for p in &mut c.nesting {
        p.parent = map.region_of(p.parent);
    }
    c.base = map.region_of(c.base);
    Ok(())
}

/// Replaces one half-edge by another in a vertex rotation.
pub(crate) fn replace_in_rotation(c: &mut Chart, v: VertexId, from: HalfEdge, to: HalfEdge) {
    if let Some(vx) = c.vertices.get_mut(&v) {
        for h in &mut vx.rotation {
            if *h == from {
                *h = to;
            }
        }
    }
}

/// Joins the two edges meeting a vertex that is about to disappear: `a` and
/// `b` are their half-edges at it, one incoming and one outgoing. The incoming
/// edge survives and takes over the far end of the outgoing one, which is
/// deleted. Returns `(kept, removed)`.
pub(crate) fn splice(c: &mut Chart, a: HalfEdge, b: HalfEdge) -> (EdgeId, EdgeId) {
    let (inc, out) = if a.end == End::Head { (a, b) } else { (b, a) };
    debug_assert!(inc.end == End::Head && out.end == End::Tail);
    let far = c.edges[&out.edge].head;
    if let Some(y) = far {
        replace_in_rotation(c, y, HalfEdge::new(out.edge, End::Head), HalfEdge::new(inc.edge, End::Head));
    }
    c.edges.get_mut(&inc.edge).expect("edge present").head = far;
    c.edges.remove(&out.edge);
    (inc.edge, out.edge)
}

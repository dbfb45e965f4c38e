//! Charts built as movies: a horizontal line sweeps downward through the disk
//! and meets strands; each step creates, joins or transforms strands.
//! A strand pointing down reads as a positive letter.

use std::collections::HashMap;

use thiserror::Error;

use crate::mcg::word::{Generator, SignedGenerator, Word};

use super::model::{Chart, Edge, End, FaceRef, HalfEdge, Placement, Region, Side, Vertex, VertexKind};
use super::pattern;
use super::validate::component_index;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MovieError {
    #[error("position {pos} out of range for {len} strands")]
    OutOfRange { pos: usize, len: usize },
    #[error("strands at {pos} do not cancel: {left} {right}")]
    NoCancel { pos: usize, left: SignedGenerator, right: SignedGenerator },
    #[error("no vertex rule accepts top [{top}] over bottom [{bottom}]")]
    BadCell { top: Word, bottom: Word },
    #[error("movie ends with strands left: {0}")]
    Unfinished(Word),
    #[error("inconsistent strand join (engine bug)")]
    Inconsistent,
}

#[derive(Clone, Copy, Debug)]
struct Strand {
    letter: SignedGenerator,
    chain: usize,
}

#[derive(Clone, Debug)]
struct Chain {
    parent: usize,
    label: Generator,
    termini: Vec<(usize, usize, End)>,
    closed: bool,
    /// A strand of this chain read downward, for orienting hoops.
    positive_down: bool,
}

#[derive(Clone, Copy, Debug)]
enum Origin {
    Black(usize),
    Cup { chain: usize, left_positive: bool },
    Top(usize),
}

#[derive(Clone, Copy, Debug)]
struct Event {
    origin: Origin,
    neighbor: Option<(usize, Side)>,
}

#[derive(Clone, Debug, Default)]
pub struct Movie {
    strands: Vec<Strand>,
    chains: Vec<Chain>,
    vertices: Vec<(VertexKind, Vec<Option<(usize, End)>>)>,
    events: Vec<Event>,
}

impl Movie {
    pub fn new() -> Movie {
        Movie::default()
    }

    pub fn len(&self) -> usize {
        self.strands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strands.is_empty()
    }

    pub fn letters(&self) -> Vec<SignedGenerator> {
        self.strands.iter().map(|s| s.letter).collect()
    }

    pub fn letter(&self, i: usize) -> SignedGenerator {
        self.strands[i].letter
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.chains[x].parent != x {
            let p = self.chains[x].parent;
            self.chains[x].parent = self.chains[p].parent;
            x = p;
        }
        x
    }

    fn new_chain(&mut self, letter: SignedGenerator) -> usize {
        let id = self.chains.len();
        self.chains.push(Chain {
            parent: id,
            label: letter.gen,
            termini: Vec::new(),
            closed: false,
            positive_down: letter.is_positive(),
        });
        id
    }

    fn neighbor(&self, pos: usize) -> Option<(usize, Side)> {
        if pos > 0 {
            let s = self.strands[pos - 1];
            Some((s.chain, if s.letter.is_positive() { Side::Left } else { Side::Right }))
        } else {
            self.strands.first().map(|s| (s.chain, if s.letter.is_positive() { Side::Right } else { Side::Left }))
        }
    }

    fn check_pos(&self, pos: usize, width: usize) -> Result<(), MovieError> {
        if pos + width > self.strands.len() {
            return Err(MovieError::OutOfRange { pos, len: self.strands.len() });
        }
        Ok(())
    }

    /// A black vertex whose edge leaves downward as a strand at `pos`.
    pub fn black(&mut self, pos: usize, letter: SignedGenerator) -> Result<(), MovieError> {
        self.check_pos(pos, 0)?;
        let neighbor = self.neighbor(pos);
        let v = self.vertices.len();
        let end = if letter.is_positive() { End::Tail } else { End::Head };
        let chain = self.new_chain(letter);
        self.chains[chain].termini.push((v, 0, end));
        self.vertices.push((VertexKind::Black, vec![Some((chain, end))]));
        self.strands.insert(pos, Strand { letter, chain });
        self.events.push(Event { origin: Origin::Black(v), neighbor });
        Ok(())
    }

    /// A local maximum: strands `x`, `x⁻¹` appear at `pos`, `pos + 1`.
    pub fn cup(&mut self, pos: usize, x: SignedGenerator) -> Result<(), MovieError> {
        self.check_pos(pos, 0)?;
        let neighbor = self.neighbor(pos);
        let chain = self.new_chain(x);
        self.strands.insert(pos, Strand { letter: x.inverse(), chain });
        self.strands.insert(pos, Strand { letter: x, chain });
        self.events.push(Event { origin: Origin::Cup { chain, left_positive: x.is_positive() }, neighbor });
        Ok(())
    }

    /// A local minimum joining the cancelling strands at `pos`, `pos + 1`.
    pub fn cap(&mut self, pos: usize) -> Result<(), MovieError> {
        self.check_pos(pos, 2)?;
        let (a, b) = (self.strands[pos], self.strands[pos + 1]);
        if !a.letter.cancels(b.letter) {
            return Err(MovieError::NoCancel { pos, left: a.letter, right: b.letter });
        }
        let (ra, rb) = (self.find(a.chain), self.find(b.chain));
        if ra == rb {
            if !self.chains[ra].termini.is_empty() {
                return Err(MovieError::Inconsistent);
            }
            self.chains[ra].closed = true;
        } else {
            let (keep, drop) = (ra.min(rb), ra.max(rb));
            let moved = std::mem::take(&mut self.chains[drop].termini);
            self.chains[keep].termini.extend(moved);
            self.chains[drop].parent = keep;
        }
        self.strands.drain(pos..pos + 2);
        Ok(())
    }

    /// Replaces `remove` strands at `pos` by `insert` through one vertex; the
    /// vertex reads the top strands right to left, then the bottom ones left to right.
    pub fn cell(&mut self, pos: usize, remove: usize, insert: &[SignedGenerator]) -> Result<VertexKind, MovieError> {
        self.check_pos(pos, remove)?;
        let top: Vec<SignedGenerator> = self.strands[pos..pos + remove].iter().map(|s| s.letter).collect();
        let mut cycle: Vec<SignedGenerator> = top.iter().rev().map(|l| l.inverse()).collect();
        cycle.extend_from_slice(insert);
        let Some(kind) = pattern::classify(&cycle) else {
            return Err(MovieError::BadCell {
                top: Word::from_letters(top),
                bottom: Word::from_letters(insert.to_vec()),
            });
        };
        let neighbor = if remove == 0 { Some(self.neighbor(pos)) } else { None };
        let v = self.vertices.len();
        let mut slots = Vec::with_capacity(cycle.len());
        let removed: Vec<Strand> = self.strands.drain(pos..pos + remove).collect();
        for s in removed.iter().rev() {
            let end = if s.letter.is_positive() { End::Head } else { End::Tail };
            let r = self.find(s.chain);
            let slot = slots.len();
            self.chains[r].termini.push((v, slot, end));
            slots.push(Some((s.chain, end)));
        }
        let mut new = Vec::with_capacity(insert.len());
        for &l in insert {
            let end = if l.is_positive() { End::Tail } else { End::Head };
            let chain = self.new_chain(l);
            self.chains[chain].termini.push((v, slots.len(), end));
            slots.push(Some((chain, end)));
            new.push(Strand { letter: l, chain });
        }
        self.strands.splice(pos..pos, new);
        self.vertices.push((kind, slots));
        if let Some(neighbor) = neighbor {
            self.events.push(Event { origin: Origin::Top(v), neighbor });
        }
        Ok(kind)
    }

    /// Closes the movie into a chart with the base point in the outer region.
    pub fn finish(mut self) -> Result<Chart, MovieError> {
        if !self.strands.is_empty() {
            return Err(MovieError::Unfinished(Word::from_letters(self.letters())));
        }
        let mut chart = Chart::new();
        for (kind, slots) in &self.vertices {
            chart.vertices.insert(chart.vertices.len(), Vertex { kind: *kind, rotation: Vec::with_capacity(slots.len()) });
        }
        let mut edge_of_root: HashMap<usize, usize> = HashMap::new();
        for c in 0..self.chains.len() {
            let r = self.find(c);
            if r != c {
                continue;
            }
            let ch = &self.chains[r];
            if ch.closed {
                let e = chart.edges.len();
                edge_of_root.insert(r, e);
                chart.edges.insert(e, Edge { label: ch.label, tail: None, head: None });
                continue;
            }
            if ch.termini.len() != 2 {
                return Err(MovieError::Inconsistent);
            }
            let tail = ch.termini.iter().find(|t| t.2 == End::Tail).ok_or(MovieError::Inconsistent)?;
            let head = ch.termini.iter().find(|t| t.2 == End::Head).ok_or(MovieError::Inconsistent)?;
            let e = chart.edges.len();
            edge_of_root.insert(r, e);
            chart.edges.insert(e, Edge { label: ch.label, tail: Some(tail.0), head: Some(head.0) });
        }
        let nverts = self.vertices.len();
        for v in 0..nverts {
            let slots = self.vertices[v].1.clone();
            for s in slots {
                let (chain, end) = s.ok_or(MovieError::Inconsistent)?;
                let r = self.find(chain);
                chart.vertices.get_mut(&v).expect("vertex").rotation.push(HalfEdge::new(edge_of_root[&r], end));
            }
        }
        let faces = chart.faces();
        let comps = chart.components();
        let idx = component_index(&comps);
        let mut placed: Vec<Option<Placement>> = vec![None; comps.len()];
        let mut order = Vec::new();
        for ev in self.events.clone() {
            let (edge, outer) = match ev.origin {
                Origin::Black(v) => {
                    let h = chart.vertices[&v].rotation[0];
                    (h.edge, FaceRef::of_dart(h))
                }
                Origin::Cup { chain, left_positive } => {
                    let e = edge_of_root[&self.find(chain)];
                    let oriented_down = self.chains[chain].positive_down;
                    debug_assert_eq!(oriented_down, left_positive);
                    (e, FaceRef::new(e, if left_positive { Side::Right } else { Side::Left }))
                }
                Origin::Top(v) => {
                    let h = *chart.vertices[&v].rotation.last().expect("non-empty");
                    (h.edge, FaceRef::of_dart(h))
                }
            };
            let ci = idx[&edge];
            if placed[ci].is_some() {
                continue;
            }
            let parent = match ev.neighbor {
                None => Region::Outer,
                Some((chain, side)) => {
                    let e = edge_of_root[&self.find(chain)];
                    let f = FaceRef::new(e, side);
                    let di = idx[&e];
                    let d = placed[di].ok_or(MovieError::Inconsistent)?;
                    if faces.canonical[&f] == faces.canonical[&d.outer] {
                        d.parent
                    } else {
                        Region::Face(f)
                    }
                }
            };
            placed[ci] = Some(Placement { outer, parent });
            order.push(ci);
        }
        for ci in order {
            chart.nesting.push(placed[ci].expect("placed"));
        }
        if chart.nesting.len() != comps.len() {
            return Err(MovieError::Inconsistent);
        }
        chart.base = Region::Outer;
        Ok(chart)
    }
}

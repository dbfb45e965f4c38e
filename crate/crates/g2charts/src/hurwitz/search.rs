//! Breadth-first Hurwitz-equivalence search with invariant-based refutation.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use super::system::{FiberCounts, HurwitzSystem, MoveDirection};
use crate::mcg::symplectic::sp_image;
use crate::mcg::word::Word;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SearchBudget {
    pub max_states: usize,
    /// Longest conjugator allowed in a visited state.
    pub max_conjugator_len: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_states: 200_000, max_conjugator_len: 24 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HurwitzStep {
    Move { index: usize, dir: MoveDirection },
    Conjugate(Word),
}

impl HurwitzStep {
    pub fn apply(&self, h: &HurwitzSystem) -> HurwitzSystem {
        match self {
            HurwitzStep::Move { index, dir } => h.hurwitz_move(*index, *dir).expect("recorded move is in range"),
            HurwitzStep::Conjugate(w) => h.global_conjugate(w),
        }
    }
}

impl fmt::Display for HurwitzStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HurwitzStep::Move { index, dir: MoveDirection::Right } => write!(f, "hurwitz {index} right"),
            HurwitzStep::Move { index, dir: MoveDirection::Left } => write!(f, "hurwitz {index} left"),
            HurwitzStep::Conjugate(w) if w.is_empty() => write!(f, "conjugate e"),
            HurwitzStep::Conjugate(w) => write!(f, "conjugate {w}"),
        }
    }
}

pub fn replay(h: &HurwitzSystem, path: &[HurwitzStep]) -> HurwitzSystem {
    path.iter().fold(h.clone(), |acc, s| s.apply(&acc))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DistinctWitness {
    CountsDiffer(FiberCounts, FiberCounts),
    /// Characteristic polynomials of the homology images of the total monodromies.
    MonodromyDiffers([i64; 4], [i64; 4]),
}

impl fmt::Display for DistinctWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DistinctWitness::CountsDiffer(a, b) => write!(f, "counts differ: ({a}) vs ({b})"),
            DistinctWitness::MonodromyDiffers(a, b) => {
                write!(f, "total monodromy homology classes differ: char poly {a:?} vs {b:?}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Equivalence {
    Equivalent(Vec<HurwitzStep>),
    Distinct(DistinctWitness),
    Unknown { states_explored: usize },
}

/// If `s` equals `target` conjugated by some u, returns u.
fn common_conjugator(s: &HurwitzSystem, target: &HurwitzSystem) -> Option<Word> {
    if s.len() != target.len() {
        return None;
    }
    if s.is_empty() {
        return Some(Word::empty());
    }
    let u = s.factors[0]
        .conjugator
        .concat(&target.factors[0].conjugator.inverse())
        .free_reduce();
    s.factors.iter().zip(&target.factors).all(|(a, b)| {
        a.class == b.class && a.conjugator == u.concat(&b.conjugator).free_reduce()
    })
    .then_some(u)
}

/// Searches for Hurwitz moves (plus a final global conjugation) taking `h1` to `h2`.
pub fn equivalence_search(h1: &HurwitzSystem, h2: &HurwitzSystem, budget: SearchBudget) -> Equivalence {
    let (c1, c2) = (h1.counts(), h2.counts());
    if c1 != c2 {
        return Equivalence::Distinct(DistinctWitness::CountsDiffer(c1, c2));
    }
    let (p1, p2) = (
        sp_image(&h1.total_monodromy()).characteristic_polynomial(),
        sp_image(&h2.total_monodromy()).characteristic_polynomial(),
    );
    if p1 != p2 {
        return Equivalence::Distinct(DistinctWitness::MonodromyDiffers(p1, p2));
    }
    let start = h1.canonical();
    let target = h2.canonical();
    let mut parent: HashMap<HurwitzSystem, Option<(HurwitzSystem, HurwitzStep)>> = HashMap::new();
    let mut queue = VecDeque::new();
    parent.insert(start.clone(), None);
    queue.push_back(start);
    while let Some(s) = queue.pop_front() {
        if let Some(u) = common_conjugator(&s, &target) {
            let mut path = Vec::new();
            let mut cur = s.clone();
            while let Some(Some((prev, step))) = parent.get(&cur) {
                path.push(step.clone());
                cur = prev.clone();
            }
            path.reverse();
            if !u.is_empty() {
                path.push(HurwitzStep::Conjugate(u.inverse()));
            }
            return Equivalence::Equivalent(path);
        }
        for index in 1..s.len() {
            for dir in [MoveDirection::Right, MoveDirection::Left] {
                let next = s.hurwitz_move(index, dir).expect("index in range");
                if next.factors.iter().any(|f| f.conjugator.len() > budget.max_conjugator_len) {
                    continue;
                }
                if parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), Some((s.clone(), HurwitzStep::Move { index, dir })));
                if parent.len() > budget.max_states {
                    return Equivalence::Unknown { states_explored: parent.len() };
                }
                queue.push_back(next);
            }
        }
    }
    Equivalence::Unknown { states_explored: parent.len() }
}

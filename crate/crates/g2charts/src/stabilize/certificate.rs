//! Replayable records of a normalization run.
//!
//! ```text
//! [certificate]
//! status partial
//! stabilizers 3
//! target gamma 60 0 0 0 n2 1 f1 0 f2 0
//! [moves]
//! transport cross e3 e1:L | 21 1 0 0
//! [blocking]
//! fig17: no entry splits an N2 factor off v12
//! ```

use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use thiserror::Error;

use crate::chart::basics::{basic_chart, copies, is_free_edge, nucleon_kind, BasicChart};
use crate::chart::convert::RegionMap;
use crate::chart::moves::{apply_move, MoveError, MoveInstance};
use crate::chart::{Chart, EdgeId, Region, VertexKind};
use crate::hurwitz::{FiberCounts, FiberType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Completeness {
    Full,
    Partial,
}

impl fmt::Display for Completeness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Completeness::Full => "full",
            Completeness::Partial => "partial",
        })
    }
}

/// What a run claims to reach.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// Γ′ ⊕ n2·N2 ⊕ f1·F1 ⊕ f2·F2, with Γ′ given by its counts.
    Decomposition { gamma: FiberCounts, n2: u64, f1: u64, f2: u64 },
    /// n0·N0 ⊕ n1·N1.
    Nucleons { n0: u64, n1: u64 },
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Decomposition { gamma, n2, f1, f2 } => write!(f, "gamma {gamma} n2 {n2} f1 {f1} f2 {f2}"),
            Target::Nucleons { n0, n1 } => write!(f, "n0 {n0} n1 {n1}"),
        }
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: Vec<&str> = s.split_whitespace().collect();
        let num = |x: &str| x.parse::<u64>().map_err(|e| format!("bad number `{x}`: {e}"));
        match t[..] {
            ["gamma", a, b, c, d, "n2", n2, "f1", f1, "f2", f2] => Ok(Target::Decomposition {
                gamma: FiberCounts::new(num(a)?, num(b)?, num(c)?, num(d)?),
                n2: num(n2)?,
                f1: num(f1)?,
                f2: num(f2)?,
            }),
            ["n0", n0, "n1", n1] => Ok(Target::Nucleons { n0: num(n0)?, n1: num(n1)? }),
            _ => Err(format!("unrecognized target `{s}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub mv: MoveInstance,
    /// Black-vertex counts after the move.
    pub counts: FiberCounts,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub status: Completeness,
    /// Copies of N0 added to the input before the first move.
    pub stabilizers: usize,
    pub target: Target,
    pub steps: Vec<Step>,
    /// Steps that could not be carried out, with the reason.
    pub blocking: Vec<String>,
}

impl Certificate {
    pub fn is_full(&self) -> bool {
        self.status == Completeness::Full
    }

    /// Applies the moves to `input ⊕ stabilizers·N0`, checking each count
    /// snapshot; a full certificate must also end in its target.
    pub fn replay(&self, input: &Chart) -> Result<Chart, ReplayError> {
        let mut c = stabilized(input, self.stabilizers);
        for (i, step) in self.steps.iter().enumerate() {
            c = apply_move(&c, &step.mv).map_err(|e| ReplayError::Move(i + 1, e))?;
            let got = c.raw_black_counts();
            if got != step.counts {
                return Err(ReplayError::Snapshot { step: i + 1, expected: step.counts, found: got });
            }
        }
        if self.is_full() {
            let reached = reached_target(&c, &self.target);
            if reached != Some(self.target) {
                return Err(ReplayError::Target {
                    expected: self.target,
                    found: reached.map(|t| t.to_string()).unwrap_or_else(|| "no decomposition".into()),
                });
            }
        }
        Ok(c)
    }
}

/// `c ⊕ m·N0`.
pub fn stabilized(c: &Chart, m: usize) -> Chart {
    c.product(&copies(&basic_chart(BasicChart::N0), m))
}

/// Reads the decomposition a chart displays, in the shape of `like`.
///
/// For a decomposition, F1 and F2 are free edges lying in the outer region,
/// an N2 factor is an outer component with counts (28,0,1,0), and Γ′ is the
/// rest. For nucleons every component must be an N0 or N1.
pub fn reached_target(c: &Chart, like: &Target) -> Option<Target> {
    let map = RegionMap::new(c);
    match like {
        Target::Decomposition { .. } => {
            let (mut n2, mut f1, mut f2) = (0, 0, 0);
            let mut gamma = FiberCounts::default();
            for (ci, comp) in map.comps.iter().enumerate() {
                let counts = component_counts(c, comp);
                let outer = map.parent(ci) == Region::Outer;
                if outer && is_free_edge(c, comp) {
                    if counts.n_ii_plus == 1 {
                        f2 += 1;
                    } else {
                        f1 += 1;
                    }
                } else if outer && counts == FiberCounts::new(28, 0, 1, 0) {
                    n2 += 1;
                } else {
                    gamma = gamma + counts;
                }
            }
            Some(Target::Decomposition { gamma, n2, f1, f2 })
        }
        Target::Nucleons { .. } => {
            let (mut n0, mut n1) = (0, 0);
            for comp in &map.comps {
                match nucleon_kind(c, comp)? {
                    VertexKind::D20 => n0 += 1,
                    _ => n1 += 1,
                }
            }
            Some(Target::Nucleons { n0, n1 })
        }
    }
}

pub(crate) fn component_counts(c: &Chart, comp: &BTreeSet<EdgeId>) -> FiberCounts {
    let mut out = FiberCounts::default();
    for v in c.component_vertices(comp) {
        if let Some(t) = c.black_type(v) {
            out.tally(t);
        }
    }
    out
}

pub(crate) fn is_type(c: &Chart, v: usize, t: FiberType) -> bool {
    c.black_type(v) == Some(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReplayError {
    #[error("step {0}: {1}")]
    Move(usize, MoveError),
    #[error("step {step}: counts are {found}, certificate says {expected}")]
    Snapshot { step: usize, expected: FiberCounts, found: FiberCounts },
    #[error("final chart shows {found}, certificate claims {expected}")]
    Target { expected: Target, found: String },
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        let _ = writeln!(s, "[certificate]\nstatus {}\nstabilizers {}\ntarget {}", self.status, self.stabilizers, self.target);
        s.push_str("[moves]\n");
        for step in &self.steps {
            let _ = writeln!(s, "{} | {}", step.mv, step.counts);
        }
        s.push_str("[blocking]\n");
        for b in &self.blocking {
            let _ = writeln!(s, "{b}");
        }
        f.write_str(&s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseCertificateError {
    pub line: usize,
    pub message: String,
}

impl FromStr for Certificate {
    type Err = ParseCertificateError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |line: usize, message: String| ParseCertificateError { line, message };
        let mut section = "";
        let (mut status, mut stabilizers, mut target) = (None, None, None);
        let (mut steps, mut blocking) = (Vec::new(), Vec::new());
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let l = raw.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            if l.starts_with('[') {
                section = match l {
                    "[certificate]" | "[moves]" | "[blocking]" => l,
                    _ => return Err(err(line, format!("unknown section {l}"))),
                };
                continue;
            }
            match section {
                "[certificate]" => {
                    let (key, value) = l.split_once(' ').ok_or_else(|| err(line, format!("expected `key value`, got `{l}`")))?;
                    match key {
                        "status" => {
                            status = Some(match value {
                                "full" => Completeness::Full,
                                "partial" => Completeness::Partial,
                                _ => return Err(err(line, format!("bad status `{value}`"))),
                            })
                        }
                        "stabilizers" => {
                            stabilizers = Some(value.parse().map_err(|e| err(line, format!("bad stabilizer count: {e}")))?)
                        }
                        "target" => target = Some(value.parse().map_err(|e| err(line, e))?),
                        _ => return Err(err(line, format!("unknown key `{key}`"))),
                    }
                }
                "[moves]" => {
                    let (mv, counts) = l.split_once('|').ok_or_else(|| err(line, "expected `<move> | <counts>`".into()))?;
                    steps.push(Step {
                        mv: mv.trim().parse().map_err(|e| err(line, format!("{e}")))?,
                        counts: counts.trim().parse().map_err(|e| err(line, e))?,
                    });
                }
                "[blocking]" => blocking.push(l.to_string()),
                _ => return Err(err(line, "content before the first section".into())),
            }
        }
        let missing = |what: &str| err(0, format!("missing `{what}`"));
        Ok(Certificate {
            status: status.ok_or_else(|| missing("status"))?,
            stabilizers: stabilizers.ok_or_else(|| missing("stabilizers"))?,
            target: target.ok_or_else(|| missing("target"))?,
            steps,
            blocking,
        })
    }
}

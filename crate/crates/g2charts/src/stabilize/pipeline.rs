//! Constructive normalization of charts after adding copies of N0.

use std::fmt;

use thiserror::Error;

use crate::chart::basics::{basic_chart, copies, is_free_edge, nucleon_kind, p2_candidate, BasicChart};
use crate::chart::convert::RegionMap;
use crate::chart::moves::{admissible_sites, apply_move, pass_component, MoveInstance, PassError, Site};
use crate::chart::{to_hurwitz, validate, Chart, EdgeId, End, Region, VertexId, VertexKind};
use crate::hurwitz::{basic_system, BasicName, FiberCounts, FiberType};
use crate::mcg::identity::{is_identity, Budget, Verdict};

use super::certificate::{component_counts, is_type, reached_target, stabilized, Certificate, Completeness, Step, Target};
use super::normal::{energy, normal_form, NormalForm, NormalFormError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilizeError {
    #[error("input chart is invalid: {0}")]
    Invalid(String),
    #[error(transparent)]
    NormalForm(#[from] NormalFormError),
    #[error("{needed} copies of N0 are needed, got {given}")]
    TooFewStabilizers { needed: u64, given: usize },
    #[error("chart has black vertices of negative type")]
    NotChiral,
    #[error("chart has σ-labeled edges")]
    Reducible,
    #[error("no P2 candidate is available: {0}")]
    NoCandidate(String),
}

/// Result of [`normalize_chart`].
#[derive(Clone, Debug)]
pub struct Normalization {
    pub normal_form: NormalForm,
    pub chart: Chart,
    pub certificate: Certificate,
}

/// Result of [`eliminate_chiral_irreducible`].
#[derive(Clone, Debug)]
pub struct Elimination {
    pub a: i64,
    pub b: u64,
    pub chart: Chart,
    pub certificate: Certificate,
}

struct Run {
    chart: Chart,
    steps: Vec<Step>,
    blocking: Vec<String>,
}

impl Run {
    fn apply(&mut self, m: MoveInstance) -> Result<(), String> {
        self.chart = apply_move(&self.chart, &m).map_err(|e| e.to_string())?;
        self.steps.push(Step { mv: m, counts: self.chart.raw_black_counts() });
        Ok(())
    }

    fn pass(&mut self, edge: EdgeId, target: Region) -> Result<(), PassError> {
        let (next, moves) = pass_component(&self.chart, edge, target)?;
        let counts = next.raw_black_counts();
        self.steps.extend(moves.into_iter().map(|mv| Step { mv, counts }));
        self.chart = next;
        Ok(())
    }

    fn map(&self) -> RegionMap {
        RegionMap::new(&self.chart)
    }

    /// First edge of every N0 component, in component order.
    fn nucleons(&self, kind: VertexKind) -> Vec<(EdgeId, Region)> {
        let map = self.map();
        map.comps
            .iter()
            .enumerate()
            .filter(|(_, k)| nucleon_kind(&self.chart, k) == Some(kind))
            .map(|(ci, k)| (*k.iter().next().expect("non-empty"), map.parent(ci)))
            .collect()
    }

    /// Black vertices of a type outside free edges, by id.
    fn loose_blacks(&self, t: FiberType) -> Vec<VertexId> {
        let map = self.map();
        self.chart
            .black_vertices()
            .filter(|&v| is_type(&self.chart, v, t))
            .filter(|&v| {
                let e = self.chart.vertex(v).rotation[0].edge;
                !is_free_edge(&self.chart, &map.comps[map.component_of_edge(e)])
            })
            .collect()
    }

    fn region_of_black(&self, v: VertexId) -> Region {
        self.map().region_of_dart(self.chart.vertex(v).rotation[0])
    }

    fn component_of(&self, v: VertexId) -> usize {
        self.map().component_of_edge(self.chart.vertex(v).rotation[0].edge)
    }

    /// Turns a negative black vertex into a free edge by pairing it with a
    /// positive black vertex of the same label (from `partner`'s component
    /// when given), then sends the free edge to the outer region.
    fn detach(&mut self, bm: VertexId, bp: VertexId) -> Result<(), String> {
        let (minus, plus) = if self.chart.vertex(bm).rotation[0].end == End::Head { (bm, bp) } else { (bp, bm) };
        self.apply(MoveInstance::new("free-edge", Site::Vertices(minus, plus)))?;
        let free = self.chart.vertex(plus).rotation[0].edge;
        self.pass(free, Region::Outer).map_err(|e| e.to_string())
    }

    fn finish(self, stabilizers: usize, target: Target) -> (Chart, Certificate) {
        let mut blocking = self.blocking;
        if blocking.is_empty() {
            match reached_target(&self.chart, &target) {
                Some(t) if t == target => {}
                found => blocking.push(format!(
                    "final chart shows {}, not the target",
                    found.map(|t| t.to_string()).unwrap_or_else(|| "no decomposition".into())
                )),
            }
        }
        let status = if blocking.is_empty() { Completeness::Full } else { Completeness::Partial };
        (self.chart, Certificate { status, stabilizers, target, steps: self.steps, blocking })
    }
}

/// Separates `c ⊕ m·N0` into Γ′ ⊕ c·N2 ⊕ d·F1 ⊕ e·F2 as far as the installed
/// moves allow. The target always comes from the normal form; the
/// certificate is partial when some step is blocked.
pub fn normalize_chart(c: &Chart, m: usize) -> Result<Normalization, StabilizeError> {
    let report = validate(c);
    if !report.is_valid() {
        return Err(StabilizeError::Invalid(report.to_string()));
    }
    let counts = c.raw_black_counts();
    let nf = normal_form(counts)?;
    let mut run = Run { chart: stabilized(c, m), steps: Vec::new(), blocking: Vec::new() };
    if nf.m0.is_some() {
        let needed = run.loose_blacks(FiberType::IMinus).len() as u64 + 2 * counts.n_ii_plus + 1;
        if (m as u64) < needed {
            return Err(StabilizeError::TooFewStabilizers { needed, given: m });
        }
    }
    let gamma_ip = counts.n_i_plus as i64 + 20 * m as i64 - 28 * nf.c as i64 - nf.d as i64;
    let target = Target::Decomposition {
        gamma: FiberCounts::new(gamma_ip.max(0) as u64, 0, 0, 0),
        n2: nf.c,
        f1: nf.d,
        f2: nf.e,
    };

    let nested_free: Vec<EdgeId> = {
        let map = run.map();
        map.comps
            .iter()
            .enumerate()
            .filter(|(ci, k)| is_free_edge(&run.chart, k) && map.parent(*ci) != Region::Outer)
            .map(|(_, k)| *k.iter().next().expect("non-empty"))
            .collect()
    };
    for e in nested_free {
        if let Err(err) = run.pass(e, Region::Outer) {
            run.blocking.push(format!("transport: free edge e{e} cannot reach the outer region: {err}"));
        }
    }

    while let Some(&bm) = run.loose_blacks(FiberType::IMinus).first() {
        if let Err(why) = detach_negative(&mut run, bm) {
            run.blocking.push(format!("free-edge: type I- vertex v{bm}: {why}"));
            break;
        }
    }

    let mut stuck = Vec::new();
    while let Some(&bm) = run.loose_blacks(FiberType::IIMinus).iter().find(|v| !stuck.contains(*v)) {
        let region = run.region_of_black(bm);
        let home = run.component_of(bm);
        let partner = run
            .loose_blacks(FiberType::IIPlus)
            .into_iter()
            .find(|&bp| run.region_of_black(bp) == region && run.component_of(bp) != home);
        let done = match partner {
            Some(bp) => run.detach(bm, bp),
            None => Err("no type II+ vertex shares its region; clearing a route to one is not installed".into()),
        };
        if let Err(why) = done {
            run.blocking.push(format!("free-edge: type II- vertex v{bm}: {why}"));
            stuck.push(bm);
        }
    }

    for bp in run.loose_blacks(FiberType::IIPlus).into_iter().take(nf.c as usize) {
        let outer: Vec<EdgeId> =
            run.nucleons(VertexKind::D20).into_iter().filter(|(_, r)| *r == Region::Outer).map(|(e, _)| e).collect();
        if outer.len() >= 3 {
            if let Err(why) = run.apply(MoveInstance::new("p2-fuse", Site::Edges(outer[..2].to_vec()))) {
                run.blocking.push(format!("p2-fuse: {why}"));
            }
        }
        run.blocking.push(format!("fig17: no installed entry splits an N2 factor off the type II+ vertex v{bp}"));
    }

    let (chart, certificate) = run.finish(m, target);
    Ok(Normalization { normal_form: nf, chart, certificate })
}

fn detach_negative(run: &mut Run, bm: VertexId) -> Result<(), String> {
    let region = run.region_of_black(bm);
    let label = run.chart.edge(run.chart.vertex(bm).rotation[0].edge).label;
    let nucleons = run.nucleons(VertexKind::D20);
    let (n0, at) = *nucleons
        .iter()
        .find(|(_, r)| *r == region)
        .or_else(|| nucleons.first())
        .ok_or("no N0 is left to pair with")?;
    if at != region {
        run.pass(n0, region).map_err(|e| e.to_string())?;
    }
    let map = run.map();
    let comp = &map.comps[map.component_of_edge(n0)];
    let bp = run
        .chart
        .component_vertices(comp)
        .into_iter()
        .find(|&v| {
            let vx = run.chart.vertex(v);
            vx.kind == VertexKind::Black && vx.rotation[0].end == End::Tail && run.chart.edge(vx.rotation[0].edge).label == label
        })
        .ok_or("the N0 has no black vertex with a matching label")?;
    run.detach(bm, bp)
}

const ELIMINATION_ORDER: [&str; 6] = ["absorb-d6", "absorb-d22", "absorb-d4", "hoop-remove", "hoop-pair-cancel", "d4-bigon"];

/// Reduces `c ⊕ m·N0` for a chiral irreducible chart to N0's and N1's with
/// at most one N1, as far as the installed moves allow.
pub fn eliminate_chiral_irreducible(c: &Chart, m: usize) -> Result<Elimination, StabilizeError> {
    let report = validate(c);
    if !report.is_valid() {
        return Err(StabilizeError::Invalid(report.to_string()));
    }
    let counts = c.raw_black_counts();
    if !counts.is_chiral() {
        return Err(StabilizeError::NotChiral);
    }
    if !counts.is_irreducible() || c.edges.values().any(|e| e.label.is_sigma()) {
        return Err(StabilizeError::Reducible);
    }
    let mut run = Run { chart: stabilized(c, m), steps: Vec::new(), blocking: Vec::new() };
    'reduce: loop {
        for id in ELIMINATION_ORDER {
            if let Some(mv) = admissible_sites(&run.chart, id).into_iter().next() {
                run.apply(mv).expect("admissible sites apply");
                continue 'reduce;
            }
        }
        break;
    }
    let total = counts.n_i_plus + 20 * m as u64;
    let mut target = {
        let b = (total / 10) % 2;
        Target::Nucleons { n0: (total - 30 * b) / 20, n1: b }
    };
    match reached_target(&run.chart, &target) {
        Some(Target::Nucleons { n1, .. }) => {
            for _ in 0..n1 / 2 {
                let mv = admissible_sites(&run.chart, "nucleon-unswap").into_iter().next();
                match mv {
                    Some(mv) => run.apply(mv).expect("admissible sites apply"),
                    None => {
                        run.blocking.push("nucleon-unswap: two N1 do not share a region".into());
                        break;
                    }
                }
            }
            if let Some(t) = reached_target(&run.chart, &target) {
                target = t;
            }
        }
        _ => {
            for (id, v) in &run.chart.vertices {
                let stuck = match v.kind {
                    VertexKind::D6 | VertexKind::D22 => true,
                    VertexKind::D20 | VertexKind::D30 => run.chart.all_outward(*id),
                    _ => false,
                };
                if stuck {
                    run.blocking.push(format!("fig18: no installed entry removes the {} vertex v{id}", v.kind));
                }
            }
            if run.blocking.is_empty() {
                let map = run.map();
                for comp in map.comps.iter().filter(|k| nucleon_kind(&run.chart, k).is_none()) {
                    let e = comp.iter().next().expect("non-empty");
                    run.blocking.push(format!(
                        "fig18: the component of e{e} ({} black vertices) is not reduced by the installed entries",
                        component_counts(&run.chart, comp).total()
                    ));
                }
            }
        }
    }
    let (n0, n1) = match target {
        Target::Nucleons { n0, n1 } => (n0, n1),
        Target::Decomposition { .. } => unreachable!("nucleon target"),
    };
    let (chart, certificate) = run.finish(m, target);
    Ok(Elimination { a: n0 as i64 - m as i64, b: n1, chart, certificate })
}

/// One necessary condition of a candidate for P2 ~ 2N0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lemma17Report {
    pub checks: Vec<Check>,
}

impl Lemma17Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

impl fmt::Display for Lemma17Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "pass" } else { "fail" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Necessary conditions for a chart to be equivalent to 2N0: valid, counts
/// (40,0,0,0), trivial total monodromy, chiral, irreducible.
pub fn check_lemma17_invariants(candidate: &Chart, budget: Budget) -> Lemma17Report {
    let report = validate(candidate);
    let counts = candidate.raw_black_counts();
    let monodromy = if report.is_valid() {
        match to_hurwitz(candidate) {
            Ok(h) => is_identity(&h.total_monodromy(), budget),
            Err(_) => Verdict::No,
        }
    } else {
        Verdict::No
    };
    let sigma_edges = candidate.edges.values().filter(|e| e.label.is_sigma()).count();
    Lemma17Report {
        checks: vec![
            Check { name: "valid", passed: report.is_valid(), detail: report.to_string() },
            Check {
                name: "counts",
                passed: counts == FiberCounts::new(40, 0, 0, 0),
                detail: format!("{counts} (want 40 0 0 0)"),
            },
            Check { name: "monodromy", passed: monodromy.is_yes(), detail: format!("trivial: {monodromy}") },
            Check { name: "chiral", passed: counts.is_chiral(), detail: format!("negative blacks: {}", counts.n_i_minus + counts.n_ii_minus) },
            Check {
                name: "irreducible",
                passed: counts.is_irreducible() && sigma_edges == 0,
                detail: format!("σ edges: {sigma_edges}"),
            },
        ],
    }
}

/// The check run on the registered P2 candidate.
pub fn lemma17_report(budget: Budget) -> Result<Lemma17Report, StabilizeError> {
    let p2 = p2_candidate().map_err(|e| StabilizeError::NoCandidate(e.to_string()))?;
    Ok(check_lemma17_invariants(&p2, budget))
}

/// An equivalence taken as given, with the invariants both sides share.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub name: &'static str,
    pub left: FiberCounts,
    pub right: FiberCounts,
}

impl Axiom {
    pub fn consistent(&self) -> bool {
        self.left == self.right && energy(self.left) == energy(self.right)
    }
}

/// The equivalences the engine assumes: 3·N0 ~ 2·N1 (as 3W0 ~ 2W1) and
/// P2 ~ 2·N0.
pub fn axioms() -> Result<Vec<Axiom>, StabilizeError> {
    let w0 = basic_system(BasicName::W0).counts();
    let w1 = basic_system(BasicName::W1).counts();
    let n0 = basic_chart(BasicChart::N0);
    let p2 = p2_candidate().map_err(|e| StabilizeError::NoCandidate(e.to_string()))?;
    Ok(vec![
        Axiom { name: "3W0 ~ 2W1", left: w0 + w0 + w0, right: w1 + w1 },
        Axiom {
            name: "3N0 ~ 2N1",
            left: copies(&n0, 3).raw_black_counts(),
            right: copies(&basic_chart(BasicChart::N1), 2).raw_black_counts(),
        },
        Axiom { name: "P2 ~ 2N0", left: p2.raw_black_counts(), right: copies(&n0, 2).raw_black_counts() },
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::from_hurwitz;

    #[test]
    fn free_edge_already_split() {
        let f1 = from_hurwitz(&basic_system(BasicName::W1p), Budget::default()).unwrap();
        let out = normalize_chart(&f1, 1).unwrap();
        assert!(out.certificate.is_full(), "{}", out.certificate);
        assert_eq!(
            out.certificate.target,
            Target::Decomposition { gamma: FiberCounts::new(20, 0, 0, 0), n2: 0, f1: 1, f2: 0 }
        );
        assert!(out.certificate.steps.iter().all(|s| s.mv.entry == "transport" || s.mv.entry == "hoop-release"));
    }

    #[test]
    fn too_few_stabilizers() {
        let n2 = basic_chart(BasicChart::N2);
        assert!(matches!(normalize_chart(&n2, 2), Err(StabilizeError::TooFewStabilizers { needed: 3, given: 2 })));
    }

    #[test]
    fn nucleons_are_already_eliminated() {
        let two = copies(&basic_chart(BasicChart::N0), 2);
        let out = eliminate_chiral_irreducible(&two, 0).unwrap();
        assert_eq!((out.a, out.b), (2, 0));
        assert!(out.certificate.steps.is_empty() && out.certificate.is_full());
        let one = eliminate_chiral_irreducible(&basic_chart(BasicChart::N1), 0).unwrap();
        assert_eq!((one.a, one.b), (0, 1));
    }

    #[test]
    fn elimination_rejects_negative_or_separating() {
        let f1 = basic_chart(BasicChart::F1);
        assert!(matches!(eliminate_chiral_irreducible(&f1, 0), Err(StabilizeError::NotChiral)));
        let n2 = basic_chart(BasicChart::N2);
        assert!(matches!(eliminate_chiral_irreducible(&n2, 0), Err(StabilizeError::Reducible)));
    }

    #[test]
    fn unswap_brings_b_below_two() {
        let two = copies(&basic_chart(BasicChart::N1), 2);
        let out = eliminate_chiral_irreducible(&two, 0).unwrap();
        assert_eq!((out.a, out.b), (3, 0));
        assert!(out.certificate.is_full());
        assert_eq!(out.certificate.replay(&two).unwrap(), out.chart);
    }

    #[test]
    fn lemma17_screens() {
        let budget = Budget::default();
        assert!(check_lemma17_invariants(&copies(&basic_chart(BasicChart::N0), 2), budget).passed());
        let short = basic_chart(BasicChart::N0).product(&basic_chart(BasicChart::F1));
        let r = check_lemma17_invariants(&short, budget);
        assert!(!r.checks.iter().find(|c| c.name == "counts").unwrap().passed);
        let r = check_lemma17_invariants(&basic_chart(BasicChart::N2), budget);
        assert!(!r.checks.iter().find(|c| c.name == "irreducible").unwrap().passed);
    }

    #[test]
    fn axioms_agree_on_invariants() {
        assert!(axioms().unwrap().iter().all(Axiom::consistent));
    }
}

mod common;

use common::*;
use g2charts::chart::{basic_chart, from_hurwitz, validate, BasicChart};
use g2charts::hurwitz::{basic_system, BasicName, FiberCounts};
use g2charts::mcg::Budget;
use g2charts::stabilize::{
    axioms, eliminate_chiral_irreducible, normalize_chart, Certificate, Completeness, ReplayError, StabilizeError,
    Target,
};

fn mirror_n0() -> g2charts::chart::Chart {
    let mut c = load_chart("n0.chart");
    let edges: Vec<usize> = c.edges.keys().copied().collect();
    for e in edges {
        reverse_edge(&mut c, e);
    }
    c
}

#[test]
fn certificates_round_trip_through_text() {
    let c = mirror_n0();
    assert!(validate(&c).is_valid());
    assert_eq!(black_counts(&c), FiberCounts::new(0, 20, 0, 0));
    let run = normalize_chart(&c, 21).unwrap();
    assert_eq!(run.certificate.status, Completeness::Full);
    let text = run.certificate.to_string();
    let back: Certificate = text.parse().unwrap();
    assert_eq!(back, run.certificate);
    let end = back.replay(&c).unwrap();
    assert_eq!(end, run.chart);
    assert_eq!(black_counts(&end), black_counts(&c) + FiberCounts::new(420, 0, 0, 0));
}

#[test]
fn replay_catches_tampering() {
    let c = mirror_n0();
    let mut cert = normalize_chart(&c, 21).unwrap().certificate;
    cert.steps[0].counts = FiberCounts::new(0, 0, 0, 0);
    assert!(matches!(cert.replay(&c), Err(ReplayError::Snapshot { step: 1, .. })));
    let mut cert = normalize_chart(&c, 21).unwrap().certificate;
    cert.steps.pop();
    assert!(matches!(cert.replay(&c), Err(ReplayError::Target { .. })));
}

#[test]
fn loose_negative_vertex_with_one_stabilizer() {
    let c = from_hurwitz(&basic_system(BasicName::W1p), Budget::DEFAULT).unwrap();
    let run = normalize_chart(&c, 1).unwrap();
    let nf = run.normal_form;
    assert_eq!(nf.energy % 10, 0);
    run.certificate.replay(&c).unwrap();
    assert!(validate(&run.chart).is_valid());
}

#[test]
fn n2_blocks_on_the_missing_split() {
    let c = basic_chart(BasicChart::N2);
    let run = normalize_chart(&c, 3).unwrap();
    assert_eq!(run.certificate.status, Completeness::Partial);
    assert!(run.certificate.blocking.iter().any(|b| b.starts_with("fig17")));
    run.certificate.replay(&c).unwrap();
}

#[test]
fn free_edges_are_already_normal() {
    let c = load_chart("f1.chart").product(&load_chart("f2.chart"));
    let run = normalize_chart(&c, 3).unwrap();
    assert_eq!(run.certificate.status, Completeness::Full);
    match run.certificate.target {
        Target::Decomposition { f1, f2, .. } => assert_eq!((f1, f2), (1, 1)),
        t => panic!("{t}"),
    }
}

#[test]
fn elimination_of_nucleons() {
    let n1 = load_chart("n1.chart");
    let run = eliminate_chiral_irreducible(&n1.product(&n1), 0).unwrap();
    assert_eq!((run.a, run.b), (3, 0));
    run.certificate.replay(&n1.product(&n1)).unwrap();
    assert!(matches!(
        eliminate_chiral_irreducible(&load_chart("f2.chart"), 0),
        Err(StabilizeError::NotChiral | StabilizeError::Reducible)
    ));
}

#[test]
fn axiom_sides_agree() {
    for a in axioms().unwrap() {
        assert!(a.consistent(), "{}", a.name);
    }
}

//! Shared fixtures and independent checks for the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet};
use std::path::PathBuf;

use g2charts::chart::{apply_move, parse_chart, to_hurwitz, validate, Chart, End, HalfEdge, MoveInstance, VertexKind};
use g2charts::mcg::{is_identity, Budget};
use g2charts::hurwitz::{basic_system, BasicName, FiberCounts, HurwitzFactor, HurwitzSystem, MoveDirection};
use g2charts::mcg::{Generator, Sign, Word};
use rand::Rng;

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

pub fn load_chart(name: &str) -> Chart {
    let text = std::fs::read_to_string(data_path(name)).expect("data file");
    parse_chart(&text).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub const BASIC_CHART_FILES: [&str; 5] = ["n0.chart", "n1.chart", "n2.chart", "f1.chart", "f2.chart"];

pub fn mv(c: &Chart, m: &str) -> Chart {
    let m: MoveInstance = m.parse().unwrap_or_else(|e| panic!("{m}: {e}"));
    apply_move(c, &m).unwrap_or_else(|e| panic!("{m}: {e}"))
}

// ---- chart conditions, read straight off the vertex list ----

/// (label index 1..=5 or 6 for σ, outward) around a vertex, counterclockwise.
fn ring(c: &Chart, v: usize) -> Vec<(u8, bool)> {
    c.vertices[&v]
        .rotation
        .iter()
        .map(|h| {
            let e = &c.edges[&h.edge];
            (e.label.index().unwrap_or(6), h.end == End::Tail)
        })
        .collect()
}

fn rotations_of<T: Copy>(r: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    (0..r.len()).map(move |k| r[k..].iter().chain(&r[..k]).copied().collect())
}

fn d4_ok(r: &[(u8, bool)]) -> bool {
    let (i, j) = (r[0].0, r[1].0);
    r[2].0 == i && r[3].0 == j && r[0].1 != r[2].1 && r[1].1 != r[3].1 && i <= 5 && j <= 5 && i.abs_diff(j) > 1
}

fn d6_ok(r: &[(u8, bool)]) -> bool {
    let (i, j) = (r[0].0, r[1].0);
    let alternating = (0..6).all(|k| r[k].0 == if k % 2 == 0 { i } else { j });
    let outs = rotations_of(r).any(|s| s[..3].iter().all(|x| x.1) && s[3..].iter().all(|x| !x.1));
    alternating && i <= 5 && j <= 5 && i.abs_diff(j) == 1 && outs
}

fn matches_seq(r: &[(u8, bool)], seq: &[u8], out: impl Fn(usize) -> bool) -> bool {
    rotations_of(r).any(|s| s.iter().enumerate().all(|(k, x)| x.0 == seq[k % seq.len()] && x.1 == out(k)))
}

const PAL: [u8; 10] = [1, 2, 3, 4, 5, 5, 4, 3, 2, 1];

fn d20_ok(r: &[(u8, bool)]) -> bool {
    matches_seq(r, &PAL, |_| true) || matches_seq(r, &PAL, |_| false)
}

fn d30_ok(r: &[(u8, bool)]) -> bool {
    matches_seq(r, &[1, 2, 3, 4, 5], |_| true) || matches_seq(r, &[5, 4, 3, 2, 1], |_| false)
}

fn d22_ok(r: &[(u8, bool)]) -> bool {
    (1..=5).any(|i| {
        let mut seq = PAL.to_vec();
        seq.push(i);
        matches_seq(r, &seq, |k| k < 11)
    })
}

fn d13_ok(r: &[(u8, bool)]) -> bool {
    let mut ccw: Vec<u8> = (0..12).map(|k| 1 + (k % 2) as u8).collect();
    ccw.push(6);
    let mut cw = ccw.clone();
    cw.reverse();
    matches_seq(r, &ccw, |k| k < 12) || matches_seq(r, &cw, |k| k == 0)
}

fn local_ok(kind: VertexKind, r: &[(u8, bool)]) -> bool {
    if r.len() != kind.degree() {
        return false;
    }
    match kind {
        VertexKind::Black => true,
        VertexKind::D4 => d4_ok(r),
        VertexKind::D6 => d6_ok(r),
        VertexKind::D20 => d20_ok(r),
        VertexKind::D30 => d30_ok(r),
        VertexKind::D22 => d22_ok(r),
        VertexKind::D13 => d13_ok(r),
    }
}

/// Incidence is consistent: each end of each non-hoop edge sits once in its
/// vertex rotation and rotations name only their own half-edges.
fn incidence_ok(c: &Chart) -> bool {
    let mut seen = HashSet::new();
    for (&v, vx) in &c.vertices {
        if vx.rotation.is_empty() {
            return false;
        }
        for h in &vx.rotation {
            let Some(e) = c.edges.get(&h.edge) else { return false };
            if e.endpoint(h.end) != Some(v) || !seen.insert(*h) {
                return false;
            }
        }
    }
    c.edges.iter().all(|(&id, e)| {
        e.is_hoop()
            || (e.tail.is_some()
                && e.head.is_some()
                && seen.contains(&HalfEdge::new(id, End::Tail))
                && seen.contains(&HalfEdge::new(id, End::Head)))
    })
}

/// V − E + F = 2 on every component, faces traced from the rotations.
fn planar(c: &Chart) -> bool {
    let darts: Vec<HalfEdge> = c.vertices.values().flat_map(|v| v.rotation.iter().copied()).collect();
    let pos: BTreeMap<HalfEdge, (usize, usize)> = c
        .vertices
        .iter()
        .flat_map(|(&v, vx)| vx.rotation.iter().enumerate().map(move |(i, h)| (*h, (v, i))))
        .collect();
    let next = |h: HalfEdge| {
        let twin = HalfEdge::new(h.edge, if h.end == End::Tail { End::Head } else { End::Tail });
        let (w, i) = pos[&twin];
        let rot = &c.vertices[&w].rotation;
        rot[(i + 1) % rot.len()]
    };
    // union-find over vertices for components
    let mut parent: BTreeMap<usize, usize> = c.vertices.keys().map(|&v| (v, v)).collect();
    fn find(p: &mut BTreeMap<usize, usize>, x: usize) -> usize {
        let mut r = x;
        while p[&r] != r {
            r = p[&r];
        }
        p.insert(x, r);
        r
    }
    for e in c.edges.values() {
        if let (Some(a), Some(b)) = (e.tail, e.head) {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            parent.insert(ra, rb);
        }
    }
    let mut tally: BTreeMap<usize, (i64, i64, i64)> = BTreeMap::new();
    for &v in c.vertices.keys() {
        let r = find(&mut parent, v);
        tally.entry(r).or_default().0 += 1;
    }
    for e in c.edges.values() {
        if let Some(a) = e.tail {
            let r = find(&mut parent, a);
            tally.entry(r).or_default().1 += 1;
        }
    }
    let mut done = HashSet::new();
    for &d in &darts {
        if done.contains(&d) {
            continue;
        }
        let mut h = d;
        while done.insert(h) {
            h = next(h);
        }
        let r = find(&mut parent, c.edges[&d.edge].endpoint(d.end).unwrap());
        tally.entry(r).or_default().2 += 1;
    }
    tally.values().all(|&(v, e, f)| v - e + f == 2)
}

/// Whether the chart satisfies the local and global chart conditions that a
/// single-component mutant can break.
pub fn chart_conditions_hold(c: &Chart) -> bool {
    incidence_ok(c) && planar(c) && c.vertices.iter().all(|(&v, vx)| local_ok(vx.kind, &ring(c, v)))
}

/// Black-vertex types tallied directly from edge labels and directions.
pub fn black_counts(c: &Chart) -> FiberCounts {
    let mut out = FiberCounts::default();
    for vx in c.vertices.values().filter(|v| v.kind == VertexKind::Black) {
        let h = vx.rotation[0];
        let outward = h.end == End::Tail;
        let sep = c.edges[&h.edge].label == Generator::Sigma;
        match (sep, outward) {
            (false, true) => out.n_i_plus += 1,
            (false, false) => out.n_i_minus += 1,
            (true, true) => out.n_ii_plus += 1,
            (true, false) => out.n_ii_minus += 1,
        }
    }
    out
}

// ---- move soundness ----

/// Charts up to this many black vertices also get their total monodromy checked.
pub const DESK_SCALE_BLACKS: u64 = 30;

pub fn check_application(c: &Chart, m: &MoveInstance) -> Result<bool, String> {
    let out = apply_move(c, m).map_err(|e| format!("{m}: {e}"))?;
    if !validate(&out).is_valid() || !chart_conditions_hold(&out) {
        return Err(format!("{m}: result invalid: {}", validate(&out)));
    }
    if black_counts(&out) != black_counts(c) {
        return Err(format!("{m}: counts {} -> {}", black_counts(c), black_counts(&out)));
    }
    if black_counts(&out).total() > DESK_SCALE_BLACKS {
        return Ok(false);
    }
    let h = to_hurwitz(&out).map_err(|e| format!("{m}: {e}"))?;
    if h.counts() != black_counts(&out) {
        return Err(format!("{m}: read-back counts {}", h.counts()));
    }
    let v = is_identity(&h.total_monodromy(), Budget::DEFAULT);
    if !v.is_yes() {
        return Err(format!("{m}: total monodromy {v}"));
    }
    Ok(true)
}

// ---- mutations ----

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mutation {
    Label,
    Orientation,
    Rotation,
}

/// One random single-field corruption.
pub fn mutate(c: &Chart, kind: Mutation, rng: &mut impl Rng) -> (String, Chart) {
    let mut m = c.clone();
    let edges: Vec<usize> = c.edges.keys().copied().collect();
    match kind {
        Mutation::Label => {
            let e = edges[rng.gen_range(0..edges.len())];
            let old = m.edges[&e].label;
            let choices: Vec<Generator> = Generator::ALL.into_iter().filter(|g| *g != old).collect();
            let new = choices[rng.gen_range(0..choices.len())];
            m.edges.get_mut(&e).unwrap().label = new;
            (format!("label e{e} {} -> {}", old.label_token(), new.label_token()), m)
        }
        Mutation::Orientation => {
            let e = edges[rng.gen_range(0..edges.len())];
            reverse_edge(&mut m, e);
            (format!("reverse e{e}"), m)
        }
        Mutation::Rotation if c.vertices.values().all(|v| v.rotation.len() < 2) => mutate(c, Mutation::Label, rng),
        Mutation::Rotation => {
            let vs: Vec<usize> = c.vertices.iter().filter(|(_, v)| v.rotation.len() >= 2).map(|(&v, _)| v).collect();
            let v = vs[rng.gen_range(0..vs.len())];
            let n = m.vertices[&v].rotation.len();
            let a = rng.gen_range(0..n);
            let b = (a + rng.gen_range(1..n)) % n;
            m.vertices.get_mut(&v).unwrap().rotation.swap(a, b);
            (format!("swap v{v} slots {a} {b}"), m)
        }
    }
}

/// Flips an edge's direction, keeping rotations consistent.
pub fn reverse_edge(c: &mut Chart, e: usize) {
    let edge = c.edges.get_mut(&e).unwrap();
    std::mem::swap(&mut edge.tail, &mut edge.head);
    for vx in c.vertices.values_mut() {
        for h in vx.rotation.iter_mut().filter(|h| h.edge == e) {
            h.end = if h.end == End::Tail { End::Head } else { End::Tail };
        }
    }
}

// ---- corpora ----

/// One center vertex with a black vertex on every edge; `ring` lists
/// (label, outward from the center) counterclockwise, label 6 meaning σ.
pub fn star(kind: VertexKind, ring: &[(u8, bool)]) -> Chart {
    use g2charts::chart::{FaceRef, Placement, Region, Side};
    let mut c = Chart::new();
    let center = c.add_vertex(kind);
    let mut rotation = Vec::new();
    for &(l, out) in ring {
        let label = Generator::zeta(l).unwrap_or(Generator::Sigma);
        let b = c.add_vertex(VertexKind::Black);
        let (tail, head) = if out { (center, b) } else { (b, center) };
        let e = c.add_edge(label, Some(tail), Some(head));
        let (at_b, at_center) = if out { (End::Head, End::Tail) } else { (End::Tail, End::Head) };
        c.vertices.get_mut(&b).unwrap().rotation.push(HalfEdge::new(e, at_b));
        rotation.push(HalfEdge::new(e, at_center));
    }
    c.vertices.get_mut(&center).unwrap().rotation = rotation;
    c.nesting.push(Placement { outer: FaceRef::new(0, Side::Left), parent: Region::Outer });
    c
}

pub fn d6_star() -> Chart {
    star(VertexKind::D6, &[(2, true), (3, true), (2, true), (3, false), (2, false), (3, false)])
}

pub fn d22_star(i: u8) -> Chart {
    let ring: Vec<(u8, bool)> = (0..22).map(|k| (if k % 11 == 10 { i } else { PAL[k % 11] }, k < 11)).collect();
    star(VertexKind::D22, &ring)
}

/// Two degree-22 vertices joined by their 20 chain edges; each keeps its
/// two `i` edges on black vertices, so absorbing one leaves one piece plus a
/// free edge.
pub fn d22_pair(i: u8) -> Chart {
    use g2charts::chart::{FaceRef, Placement, Region, Side};
    let z = |l: u8| Generator::zeta(l).unwrap();
    let mut c = Chart::new();
    let a = c.add_vertex(VertexKind::D22);
    let b = c.add_vertex(VertexKind::D22);
    let black = |c: &mut Chart, out_of: usize, outward: bool| {
        let bl = c.add_vertex(VertexKind::Black);
        let (t, h) = if outward { (out_of, bl) } else { (bl, out_of) };
        let e = c.add_edge(z(i), Some(t), Some(h));
        c.vertices.get_mut(&bl).unwrap().rotation.push(HalfEdge::new(e, if outward { End::Head } else { End::Tail }));
        HalfEdge::new(e, if outward { End::Tail } else { End::Head })
    };
    let out_bundle: Vec<usize> = PAL.iter().map(|&l| c.add_edge(z(l), Some(a), Some(b))).collect();
    let a_out = black(&mut c, a, true);
    let in_bundle: Vec<usize> = PAL.iter().map(|&l| c.add_edge(z(l), Some(b), Some(a))).collect();
    let a_in = black(&mut c, a, false);
    let b_out = black(&mut c, b, true);
    let b_in = black(&mut c, b, false);
    let mut ra: Vec<HalfEdge> = out_bundle.iter().map(|&e| HalfEdge::new(e, End::Tail)).collect();
    ra.push(a_out);
    ra.extend(in_bundle.iter().map(|&e| HalfEdge::new(e, End::Head)));
    ra.push(a_in);
    let mut rb: Vec<HalfEdge> = in_bundle.iter().rev().map(|&e| HalfEdge::new(e, End::Tail)).collect();
    rb.push(b_out);
    rb.extend(out_bundle.iter().rev().map(|&e| HalfEdge::new(e, End::Head)));
    rb.push(b_in);
    c.vertices.get_mut(&a).unwrap().rotation = ra;
    c.vertices.get_mut(&b).unwrap().rotation = rb;
    c.nesting.push(Placement { outer: FaceRef::new(0, Side::Left), parent: Region::Outer });
    c
}

pub fn d13_star() -> Chart {
    let mut ring: Vec<(u8, bool)> = (0..12).map(|k| (1 + (k % 2) as u8, true)).collect();
    ring.push((6, false));
    star(VertexKind::D13, &ring)
}

/// Small charts, each paired with the catalog entries worth enumerating on it.
pub fn move_corpus() -> Vec<(String, Chart, Vec<&'static str>)> {
    let all: Vec<&'static str> = g2charts::chart::CATALOG
        .iter()
        .filter(|e| e.status == g2charts::chart::moves::Status::Verified)
        .map(|e| e.id)
        .collect();
    let f1 = load_chart("f1.chart");
    let f2 = load_chart("f2.chart");
    let n0 = load_chart("n0.chart");
    let n1 = load_chart("n1.chart");
    let bigon = load_chart("bigon.chart");
    let hooped = mv(&f1, "hoop-insert region outer 2 L");
    let wrapped = mv(&f1, "hoop-pair-insert wrap e0 4 L");
    let sigma_hoop = mv(&f1, "hoop-insert region outer s L");
    let twelve = mv(&sigma_hoop, "sigma-hoop-expand edge e1");
    let split_sigma = mv(&f2, "sigma-edge-expand edge e0");
    let surrounded = mv(&n0.product(&f1), "hoop-surround wrap e20 3 L");
    let boundary = mv(&f1, "boundary-hoop-add region outer 5 R");
    vec![
        ("F1".into(), f1.clone(), all.clone()),
        ("F2".into(), f2.clone(), all.clone()),
        ("N0".into(), n0.clone(), all.clone()),
        ("N1".into(), n1.clone(), all.clone()),
        ("F1+F1".into(), f1.product(&f1), all.clone()),
        ("bigon".into(), bigon.clone(), all.clone()),
        ("bigon+F1+N0".into(), bigon.product(&f1).product(&n0), vec!["transport"]),
        ("F1 in hoop".into(), hooped, all.clone()),
        ("F1 in hoop pair".into(), wrapped, all.clone()),
        ("sigma hoop".into(), sigma_hoop, all.clone()),
        ("twelve hoops".into(), twelve, all.clone()),
        ("split sigma edge".into(), split_sigma, all.clone()),
        ("N0+F1 surrounded".into(), surrounded, vec!["hoop-release", "hoop-remove", "transport"]),
        ("boundary hoop".into(), boundary, all.clone()),
        ("degree-6 star".into(), d6_star(), all.clone()),
        ("degree-22 star".into(), d22_star(3), all.clone()),
        ("degree-22 pair".into(), d22_pair(2), all.clone()),
        ("degree-13 star".into(), d13_star(), all.clone()),
        ("2N0".into(), n0.product(&n0), vec!["p2-fuse", "nucleon-swap"]),
        ("3N0".into(), n0.product(&n0).product(&n0), vec!["nucleon-swap"]),
        ("2N1".into(), n1.product(&n1), vec!["nucleon-unswap"]),
        ("N2".into(), load_chart("n2.chart"), vec!["absorb-d4", "absorb-d6", "absorb-d22"]),
    ]
}

/// A trivial-monodromy system: fiber sums of basics, then cancelling pairs,
/// Hurwitz moves and a global conjugation, all at random.
pub fn random_system(rng: &mut impl Rng, allow_w2: bool) -> HurwitzSystem {
    let names: Vec<BasicName> = BasicName::ALL.into_iter().filter(|n| allow_w2 || *n != BasicName::W2).collect();
    let mut h = HurwitzSystem::empty();
    for _ in 0..rng.gen_range(1..=3) {
        h = h.fiber_sum(&basic_system(names[rng.gen_range(0..names.len())]));
    }
    for _ in 0..rng.gen_range(0..=2) {
        let i = rng.gen_range(0..=h.len());
        let g = Generator::ALL[rng.gen_range(0..6)];
        let conj = Word::zetas(&[rng.gen_range(1..=5), rng.gen_range(1..=5)]);
        let mut fs = h.factors.clone();
        fs.insert(i, HurwitzFactor::new(conj.clone(), g, Sign::Plus));
        fs.insert(i + 1, HurwitzFactor::new(conj, g, Sign::Minus));
        h = HurwitzSystem::new(fs);
    }
    for _ in 0..rng.gen_range(0..16) {
        if h.len() < 2 {
            break;
        }
        let i = rng.gen_range(1..h.len());
        let d = if rng.gen_bool(0.5) { MoveDirection::Left } else { MoveDirection::Right };
        h = h.hurwitz_move(i, d).unwrap();
    }
    h.global_conjugate(&Word::zetas(&[rng.gen_range(1..=5), rng.gen_range(1..=5)]))
}

/// nI+ − nI− − 28(nII+ − nII−), computed from the factor list.
pub fn energy_of(h: &HurwitzSystem) -> i64 {
    h.factors
        .iter()
        .map(|f| {
            let sign = if f.class.core_letter().is_positive() { 1 } else { -1 };
            if f.class.core() == Generator::Sigma { -28 * sign } else { sign }
        })
        .sum()
}

/// Mutants checked by hand against the vertex rules; each breaks one.
pub fn audited_mutants() -> Vec<(&'static str, Chart)> {
    let n0 = load_chart("n0.chart");
    let n1 = load_chart("n1.chart");
    let bigon = load_chart("bigon.chart");
    let mut out = Vec::new();

    let mut m = n0.clone();
    m.edges.get_mut(&4).unwrap().label = Generator::Z4;
    out.push(("N0: fifth edge relabeled 4, breaking the palindrome", m));

    let mut m = n0.clone();
    reverse_edge(&mut m, 7);
    out.push(("N0: one edge reversed at the degree-20 vertex", m));

    let mut m = n0.clone();
    m.vertices.get_mut(&0).unwrap().rotation.swap(0, 1);
    out.push(("N0: labels 1 and 2 swapped around the degree-20 vertex", m));

    let mut m = n0.clone();
    m.edges.get_mut(&0).unwrap().label = Generator::Sigma;
    out.push(("N0: σ label at the degree-20 vertex", m));

    let mut m = n1.clone();
    m.vertices.get_mut(&0).unwrap().rotation.reverse();
    out.push(("N1: inward chain read counterclockwise", m));

    let mut m = n1.clone();
    reverse_edge(&mut m, 0);
    out.push(("N1: mixed orientation at the degree-30 vertex", m));

    let mut m = bigon.clone();
    reverse_edge(&mut m, 2);
    out.push(("bigon: strand 1 incoherent through both crossings", m));

    let mut m = bigon.clone();
    m.edges.get_mut(&1).unwrap().label = Generator::Z2;
    out.push(("bigon: diagonal labels 1 and 2 at a degree-4 vertex", m));

    let mut m = bigon.clone();
    m.vertices.get_mut(&0).unwrap().rotation.swap(1, 2);
    out.push(("bigon: adjacent rather than diagonal equal labels", m));

    let mut m = n1.clone();
    m.edges.get_mut(&2).unwrap().label = Generator::Z4;
    out.push(("N1: chain label 3 replaced by 4", m));
    out
}

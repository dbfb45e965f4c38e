//! Presentation output for charts: DOT text and a static SVG drawn from a
//! force-directed layout with a fixed seed. Neither is read back.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::model::{Chart, VertexId, VertexKind};

const SEED: u64 = 0x6732_6368;
const ITERATIONS: usize = 300;

pub fn to_dot(c: &Chart) -> String {
    let mut s = String::from("digraph chart {\n  node [fontsize=10];\n");
    for (id, v) in &c.vertices {
        let attrs = match v.kind {
            VertexKind::Black => "shape=point, width=0.12".to_string(),
            k => format!("shape=circle, label=\"{k}\""),
        };
        let _ = writeln!(s, "  v{id} [{attrs}];");
    }
    for (id, e) in &c.edges {
        let label = e.label.label_token();
        match (e.tail, e.head) {
            (Some(t), Some(h)) => {
                let _ = writeln!(s, "  v{t} -> v{h} [label=\"{label}\", tooltip=\"e{id}\"];");
            }
            _ => {
                let _ = writeln!(s, "  hoop{id} [shape=point, style=invis];");
                let _ = writeln!(s, "  hoop{id} -> hoop{id} [label=\"{label}\", tooltip=\"e{id} hoop\"];");
            }
        }
    }
    s.push_str("}\n");
    s
}

/// Node positions in the unit square, keyed by vertex; hoops get a point of
/// their own keyed past the last vertex id.
fn layout(c: &Chart) -> (BTreeMap<usize, (f64, f64)>, BTreeMap<usize, usize>) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut nodes: Vec<usize> = c.vertices.keys().copied().collect();
    let mut hoop_node = BTreeMap::new();
    let mut next = c.next_vertex_id();
    for e in c.hoops() {
        hoop_node.insert(e, next);
        nodes.push(next);
        next += 1;
    }
    let mut pos: BTreeMap<usize, (f64, f64)> = nodes.iter().map(|&n| (n, (rng.gen::<f64>(), rng.gen::<f64>()))).collect();
    let links: Vec<(VertexId, VertexId)> =
        c.edges.values().filter_map(|e| Some((e.tail?, e.head?))).filter(|(a, b)| a != b).collect();
    let n = nodes.len().max(1) as f64;
    let k = (1.0 / n).sqrt();
    let mut temp = 0.1;
    for _ in 0..ITERATIONS {
        let mut disp: BTreeMap<usize, (f64, f64)> = nodes.iter().map(|&v| (v, (0.0, 0.0))).collect();
        for (i, &a) in nodes.iter().enumerate() {
            for &b in &nodes[i + 1..] {
                let (pa, pb) = (pos[&a], pos[&b]);
                let (dx, dy) = (pa.0 - pb.0, pa.1 - pb.1);
                let d = (dx * dx + dy * dy).sqrt().max(1e-4);
                let f = k * k / d;
                let (fx, fy) = (dx / d * f, dy / d * f);
                let da = disp.get_mut(&a).expect("node");
                da.0 += fx;
                da.1 += fy;
                let db = disp.get_mut(&b).expect("node");
                db.0 -= fx;
                db.1 -= fy;
            }
        }
        for &(a, b) in &links {
            let (pa, pb) = (pos[&a], pos[&b]);
            let (dx, dy) = (pa.0 - pb.0, pa.1 - pb.1);
            let d = (dx * dx + dy * dy).sqrt().max(1e-4);
            let f = d * d / k;
            let (fx, fy) = (dx / d * f, dy / d * f);
            let da = disp.get_mut(&a).expect("node");
            da.0 -= fx;
            da.1 -= fy;
            let db = disp.get_mut(&b).expect("node");
            db.0 += fx;
            db.1 += fy;
        }
        for (v, (dx, dy)) in disp {
            let d = (dx * dx + dy * dy).sqrt().max(1e-9);
            let step = d.min(temp);
            let p = pos.get_mut(&v).expect("node");
            p.0 = (p.0 + dx / d * step).clamp(0.0, 1.0);
            p.1 = (p.1 + dy / d * step).clamp(0.0, 1.0);
        }
        temp *= 0.98;
    }
    (pos, hoop_node)
}

pub fn to_svg(c: &Chart) -> String {
    const SIZE: f64 = 600.0;
    const PAD: f64 = 30.0;
    let (pos, hoop_node) = layout(c);
    let at = |v: usize| {
        let (x, y) = pos[&v];
        (PAD + x * (SIZE - 2.0 * PAD), PAD + y * (SIZE - 2.0 * PAD))
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    s.push_str(r#"<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z"/></marker></defs>"#);
    s.push('\n');
    for (id, e) in &c.edges {
        let label = e.label.label_token();
        match (e.tail, e.head) {
            (Some(t), Some(h)) if t != h => {
                let ((x1, y1), (x2, y2)) = (at(t), at(h));
                let _ = writeln!(
                    s,
                    r#"<line id="e{id}" x1="{x1:.1}" y1="{y1:.1}" x2="{x2:.1}" y2="{y2:.1}" stroke="black" marker-end="url(#arrow)"/>"#
                );
                let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-size="9">{label}</text>"#, (x1 + x2) / 2.0, (y1 + y2) / 2.0);
            }
            (Some(t), Some(_)) => {
                let (x, y) = at(t);
                let _ = writeln!(s, r#"<circle id="e{id}" cx="{x:.1}" cy="{:.1}" r="8" fill="none" stroke="black"/>"#, y - 8.0);
            }
            _ => {
                let (x, y) = at(hoop_node[id]);
                let _ = writeln!(s, r#"<circle id="e{id}" cx="{x:.1}" cy="{y:.1}" r="14" fill="none" stroke="gray"/>"#);
                let _ = writeln!(s, r#"<text x="{x:.1}" y="{:.1}" font-size="9">{label}</text>"#, y - 16.0);
            }
        }
    }
    for (id, v) in &c.vertices {
        let (x, y) = at(*id);
        match v.kind {
            VertexKind::Black => {
                let _ = writeln!(s, r#"<circle id="v{id}" cx="{x:.1}" cy="{y:.1}" r="3" fill="black"/>"#);
            }
            k => {
                let _ = writeln!(s, r#"<circle id="v{id}" cx="{x:.1}" cy="{y:.1}" r="7" fill="white" stroke="black"/>"#);
                let _ = writeln!(s, r#"<text x="{x:.1}" y="{:.1}" font-size="7" text-anchor="middle">{k}</text>"#, y + 2.5);
            }
        }
    }
    s.push_str("</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chart::basics::{basic_chart, BasicChart};

    #[test]
    fn dot_lists_every_vertex_and_edge() {
        let c = basic_chart(BasicChart::N0);
        let dot = to_dot(&c);
        assert_eq!(dot.matches("->").count(), 20);
        assert_eq!(dot.matches("shape=point").count(), 20);
    }

    #[test]
    fn svg_is_deterministic() {
        let c = basic_chart(BasicChart::F1).product(&basic_chart(BasicChart::N1));
        let a = to_svg(&c);
        assert_eq!(a, to_svg(&c));
        assert!(a.starts_with("<svg") && a.trim_end().ends_with("</svg>"));
    }
}

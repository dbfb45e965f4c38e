//! Local vertex rules: which counterclockwise letter cycles each vertex kind admits.

use crate::mcg::word::{Generator, Sign, SignedGenerator};

use super::model::VertexKind;

const IOTA_LABELS: [u8; 10] = [1, 2, 3, 4, 5, 5, 4, 3, 2, 1];

fn idx(l: SignedGenerator) -> Option<u8> {
    l.gen.index()
}

fn rotations(n: usize) -> impl Iterator<Item = usize> {
    0..n
}

fn at(cycle: &[SignedGenerator], r: usize, i: usize) -> SignedGenerator {
    cycle[(r + i) % cycle.len()]
}

fn is_d4(c: &[SignedGenerator]) -> bool {
    let (Some(i), Some(j)) = (idx(c[0]), idx(c[1])) else { return false };
    c[2].gen == c[0].gen
        && c[3].gen == c[1].gen
        && i.abs_diff(j) > 1
        && c[0].sign != c[2].sign
        && c[1].sign != c[3].sign
}

fn is_d6(c: &[SignedGenerator]) -> bool {
    let (Some(i), Some(j)) = (idx(c[0]), idx(c[1])) else { return false };
    if i.abs_diff(j) != 1 || (0..6).any(|k| c[k].gen != c[k % 2].gen) {
        return false;
    }
    rotations(6).any(|r| (0..6).all(|k| at(c, r, k).is_positive() == (k < 3)))
}

fn is_d20(c: &[SignedGenerator]) -> bool {
    let s = c[0].sign;
    c.iter().all(|l| l.sign == s)
        && rotations(20).any(|r| (0..20).all(|k| idx(at(c, r, k)) == Some(IOTA_LABELS[k % 10])))
}

fn is_d30(c: &[SignedGenerator]) -> bool {
    let s = c[0].sign;
    if !c.iter().all(|l| l.sign == s) {
        return false;
    }
    let step: fn(usize) -> u8 = match s {
        Sign::Plus => |k| (k % 5) as u8 + 1,
        Sign::Minus => |k| 5 - (k % 5) as u8,
    };
    rotations(30).any(|r| (0..30).all(|k| idx(at(c, r, k)) == Some(step(k))))
}

fn is_d22(c: &[SignedGenerator]) -> bool {
    rotations(22).any(|r| {
        let Some(i) = idx(at(c, r, 10)) else { return false };
        (0..22).all(|k| {
            let l = at(c, r, k);
            let want = if k % 11 == 10 { i } else { IOTA_LABELS[k % 11] };
            idx(l) == Some(want) && l.is_positive() == (k < 11)
        })
    })
}

fn is_d13(c: &[SignedGenerator]) -> bool {
    rotations(13).any(|r| {
        let s = at(c, r, 12);
        if !s.gen.is_sigma() {
            return false;
        }
        let (first, chain_sign) = match s.sign {
            Sign::Minus => (1u8, Sign::Plus),
            Sign::Plus => (2u8, Sign::Minus),
        };
        (0..12).all(|k| {
            let l = at(c, r, k);
            let want = if k % 2 == 0 { first } else { 3 - first };
            idx(l) == Some(want) && l.sign == chain_sign
        })
    })
}

/// The non-black vertex kind whose rule accepts this counterclockwise letter
/// cycle (outward edges as the label, inward edges as its inverse).
pub fn classify(cycle: &[SignedGenerator]) -> Option<VertexKind> {
    let kind = VertexKind::from_degree(cycle.len())?;
    let ok = match kind {
        VertexKind::Black => return None,
        VertexKind::D4 => is_d4(cycle),
        VertexKind::D6 => is_d6(cycle),
        VertexKind::D20 => is_d20(cycle),
        VertexKind::D30 => is_d30(cycle),
        VertexKind::D22 => is_d22(cycle),
        VertexKind::D13 => is_d13(cycle),
    };
    ok.then_some(kind)
}

/// Whether a vertex of the given kind may carry this cycle.
pub fn admits(kind: VertexKind, cycle: &[SignedGenerator]) -> bool {
    match kind {
        VertexKind::Black => cycle.len() == 1,
        _ => classify(cycle) == Some(kind),
    }
}

/// A representative cycle for each kind, used to build charts and tests.
pub fn standard_cycle(kind: VertexKind, param: u8, sign: Sign) -> Vec<SignedGenerator> {
    let z = |i: u8| Generator::zeta(i).expect("chain index");
    let signed = |i: u8, s: Sign| SignedGenerator::new(z(i), s);
    match kind {
        VertexKind::Black => vec![signed(param.max(1), sign)],
        VertexKind::D4 => {
            let (i, j) = (1, 3);
            vec![signed(i, sign), signed(j, sign), signed(i, sign.flip()), signed(j, sign.flip())]
        }
        VertexKind::D6 => {
            let (i, j) = (1, 2);
            vec![
                signed(i, sign),
                signed(j, sign),
                signed(i, sign),
                signed(j, sign.flip()),
                signed(i, sign.flip()),
                signed(j, sign.flip()),
            ]
        }
        VertexKind::D20 => (0..20).map(|k| signed(IOTA_LABELS[k % 10], sign)).collect(),
        VertexKind::D30 => (0..30)
            .map(|k| match sign {
                Sign::Plus => signed((k % 5) as u8 + 1, sign),
                Sign::Minus => signed(5 - (k % 5) as u8, sign),
            })
            .collect(),
        VertexKind::D22 => (0..22)
            .map(|k| {
                let s = if k < 11 { Sign::Plus } else { Sign::Minus };
                if k % 11 == 10 {
                    signed(param, s)
                } else {
                    signed(IOTA_LABELS[k % 11], s)
                }
            })
            .collect(),
        VertexKind::D13 => {
            let mut v: Vec<SignedGenerator> = match sign {
                Sign::Plus => (0..12).map(|k| signed(if k % 2 == 0 { 1 } else { 2 }, Sign::Plus)).collect(),
                Sign::Minus => (0..12).map(|k| signed(if k % 2 == 0 { 2 } else { 1 }, Sign::Minus)).collect(),
            };
            v.push(SignedGenerator::new(Generator::Sigma, sign.flip()));
            v
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_cycles_classify() {
        for kind in VertexKind::ALL.into_iter().skip(1) {
            for sign in [Sign::Plus, Sign::Minus] {
                let c = standard_cycle(kind, 3, sign);
                if kind == VertexKind::D22 && sign == Sign::Minus {
                    continue;
                }
                assert_eq!(classify(&c), Some(kind), "{kind:?} {sign:?}");
                let mut r = c.clone();
                r.rotate_left(5 % c.len());
                assert_eq!(classify(&r), Some(kind));
            }
        }
    }

    #[test]
    fn near_misses_rejected() {
        let mut c = standard_cycle(VertexKind::D20, 0, Sign::Plus);
        c[4] = Generator::Z4.pos();
        assert_eq!(classify(&c), None);
        let mut c = standard_cycle(VertexKind::D6, 0, Sign::Plus);
        c.swap(2, 3);
        assert_eq!(classify(&c), None);
        let mut c = standard_cycle(VertexKind::D4, 0, Sign::Plus);
        c[2] = c[2].inverse();
        assert_eq!(classify(&c), None);
        let mut c = standard_cycle(VertexKind::D30, 0, Sign::Plus);
        c.reverse();
        assert_eq!(classify(&c), None);
    }
}

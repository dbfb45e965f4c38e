//! Positive words in ζ1..ζ5 as elements of the braid monoid of the chain:
//! left division by subword reversing and explicit rewriting between equal
//! positive words by commutation and braid steps.

/// `x⁻¹y ↦ y·x⁻¹` (far), `y·x·y⁻¹·x⁻¹` (adjacent), or nothing (equal),
/// applied until no negative letter precedes a positive one.
pub fn reverse(w: &[i8]) -> Vec<i8> {
    let mut w = w.to_vec();
    loop {
        let Some(i) = (0..w.len().saturating_sub(1)).find(|&i| w[i] < 0 && w[i + 1] > 0) else {
            return w;
        };
        let (x, y) = (-w[i], w[i + 1]);
        let rep: Vec<i8> = if x == y {
            vec![]
        } else if (x - y).abs() >= 2 {
            vec![y, -x]
        } else {
            vec![y, x, -y, -x]
        };
        w.splice(i..i + 2, rep);
    }
}

/// If `q` left-divides `p` in the monoid, the quotient `q⁻¹p`.
pub fn left_quotient(q: &[u8], p: &[u8]) -> Option<Vec<u8>> {
    let mut w: Vec<i8> = q.iter().rev().map(|&x| -(x as i8)).collect();
    w.extend(p.iter().map(|&x| x as i8));
    let r = reverse(&w);
    r.iter().all(|&x| x > 0).then(|| r.iter().map(|&x| x as u8).collect())
}

pub fn equal_positive(p: &[u8], q: &[u8]) -> bool {
    p.len() == q.len() && left_quotient(p, q).is_some_and(|r| r.is_empty())
}

/// One rewriting step at `offset`: `from` is replaced by `to`
/// (`y x ↦ x y` for far letters, `y x y ↦ x y x` for adjacent ones).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidStep {
    pub offset: usize,
    pub from: Vec<u8>,
    pub to: Vec<u8>,
}

fn bring(w: &[u8], x: u8, off: usize, steps: &mut Vec<BraidStep>) -> Vec<u8> {
    let y = w[0];
    if y == x {
        return w.to_vec();
    }
    if x.abs_diff(y) >= 2 {
        let rest = bring(&w[1..], x, off + 1, steps);
        steps.push(BraidStep { offset: off, from: vec![y, x], to: vec![x, y] });
        let mut out = vec![x, y];
        out.extend_from_slice(&rest[1..]);
        out
    } else {
        let rest = bring(&w[1..], x, off + 1, steps);
        let rest2 = bring(&rest[1..], y, off + 2, steps);
        steps.push(BraidStep { offset: off, from: vec![y, x, y], to: vec![x, y, x] });
        let mut out = vec![x, y, x];
        out.extend_from_slice(&rest2[1..]);
        out
    }
}

/// Steps rewriting `p` into `q`; `None` unless they are equal in the monoid.
pub fn transform(p: &[u8], q: &[u8]) -> Option<Vec<BraidStep>> {
    if !equal_positive(p, q) {
        return None;
    }
    let mut steps = Vec::new();
    let mut w = p.to_vec();
    for i in 0..q.len() {
        let tail = bring(&w[i..], q[i], i, &mut steps);
        w.truncate(i);
        w.extend(tail);
    }
    debug_assert_eq!(w, q);
    Some(steps)
}

/// Replays steps on a word, checking each `from` is present.
pub fn apply_steps(p: &[u8], steps: &[BraidStep]) -> Option<Vec<u8>> {
    let mut w = p.to_vec();
    for s in steps {
        if w.get(s.offset..s.offset + s.from.len())? != s.from.as_slice() {
            return None;
        }
        w.splice(s.offset..s.offset + s.from.len(), s.to.iter().copied());
    }
    Some(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_and_transform() {
        assert_eq!(left_quotient(&[1], &[2, 1, 2]), Some(vec![2, 1]));
        assert_eq!(left_quotient(&[3], &[1, 2]), None);
        assert!(equal_positive(&[1, 3, 2], &[3, 1, 2]));
        let p = [2, 1, 2, 4];
        let q = [4, 1, 2, 1];
        let steps = transform(&p, &q).expect("equal");
        assert_eq!(apply_steps(&p, &steps), Some(q.to_vec()));
    }

    #[test]
    fn chain_power_is_central() {
        let delta2: Vec<u8> = (0..30).map(|k| (k % 5) as u8 + 1).collect();
        for x in 1..=5u8 {
            let mut a = vec![x];
            a.extend(&delta2);
            let mut b = delta2.clone();
            b.push(x);
            assert!(equal_positive(&a, &b));
        }
    }
}

//! Deciding triviality in MC through the action on the surface group.

use std::collections::{HashSet, VecDeque};
use std::env;
use std::fmt;

use super::surface::{act_bounded, SurfaceAutomorphism, SurfaceLetter, SurfaceWord};
use super::symplectic::sp_image;
use super::word::Word;

/// Search limits for the identity oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Budget {
    /// Longest Dehn-reduced generator image tolerated while composing twists.
    pub max_word_len: usize,
    /// Largest breadth-first frontier tolerated by the conjugator search.
    pub max_frontier: usize,
}

pub const BUDGET_ENV: &str = "G2CHARTS_BUDGET";

impl Budget {
    pub const DEFAULT: Budget = Budget { max_word_len: 1 << 20, max_frontier: 20_000 };

    /// Default budget, overridable by `G2CHARTS_BUDGET=<max_word_len>,<max_frontier>`.
    pub fn from_env() -> Budget {
        env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(Budget::DEFAULT)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

impl fmt::Display for Budget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.max_word_len, self.max_frontier)
    }
}

impl std::str::FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s
            .split_once(',')
            .ok_or_else(|| format!("budget must be `<max_word_len>,<max_frontier>`, got `{s}`"))?;
        let max_word_len = a.trim().parse().map_err(|e| format!("bad word length `{a}`: {e}"))?;
        let max_frontier = b.trim().parse().map_err(|e| format!("bad frontier `{b}`: {e}"))?;
        Ok(Budget { max_word_len, max_frontier })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Yes,
    No,
    Unknown(Budget),
}

impl Verdict {
    pub fn is_yes(self) -> bool {
        self == Verdict::Yes
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Yes => f.write_str("Yes"),
            Verdict::No => f.write_str("No"),
            Verdict::Unknown(b) => write!(f, "Unknown (budget {b} exhausted)"),
        }
    }
}

pub fn is_identity(w: &Word, budget: Budget) -> Verdict {
    if !sp_image(w).is_identity() {
        return Verdict::No;
    }
    let Some(phi) = act_bounded(w, budget.max_word_len) else {
        return Verdict::Unknown(budget);
    };
    match inner_conjugator(&phi, budget) {
        Inner::Yes(_) => Verdict::Yes,
        Inner::No => Verdict::No,
        Inner::Unknown => Verdict::Unknown(budget),
    }
}

pub fn equal(u: &Word, v: &Word, budget: Budget) -> Verdict {
    is_identity(&u.concat(&v.inverse()), budget)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inner {
    /// φ(x) = h x h⁻¹ for every generator.
    Yes(SurfaceWord),
    No,
    Unknown,
}

const P: u128 = (1u128 << 61) - 1;

fn mod_inv(a: u128) -> u128 {
    let (mut r, mut base, mut e) = (1u128, a % P, P - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % P;
        }
        base = base * base % P;
        e >>= 1;
    }
    r
}

/// Affine map x ↦ m x + t over F_p.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Affine {
    m: u128,
    t: u128,
}

impl Affine {
    const ID: Affine = Affine { m: 1, t: 0 };

    /// `self ∘ other`
    fn then_after(self, other: Affine) -> Affine {
        Affine { m: self.m * other.m % P, t: (self.m * other.t + self.t) % P }
    }

    fn inverse(self) -> Affine {
        let mi = mod_inv(self.m);
        Affine { m: mi, t: (P - self.t) % P * mi % P }
    }
}

/// Homomorphism to Aff(F_p): a1, b2 ↦ x + 1 and b1, a2 ↦ 2x. It kills the relator
/// because [a2, b2] maps to the inverse of the image of [a1, b1].
fn affine_image(w: &SurfaceWord) -> Affine {
    let shift = Affine { m: 1, t: 1 };
    let double = Affine { m: 2, t: 0 };
    w.0.iter().fold(Affine::ID, |acc, &x| {
        let g = match x.unsigned_abs() {
            1 | 4 => shift,
            _ => double,
        };
        acc.then_after(if x > 0 { g } else { g.inverse() })
    })
}

fn verify_inner(phi: &SurfaceAutomorphism, h: &SurfaceWord) -> bool {
    (1..=4).all(|x: SurfaceLetter| {
        let expect = h.concat(&SurfaceWord::generator(x)).concat(&h.inverse());
        phi.images[(x - 1) as usize].concat(&expect.inverse()).is_trivial()
    })
}

/// Breadth-first search for t with t·c·t⁻¹ = a1, over cyclically reduced words.
fn conjugate_to_a1(c: &SurfaceWord, budget: Budget) -> Option<Option<SurfaceWord>> {
    let target = SurfaceWord::generator(1);
    let mut seen: HashSet<Vec<SurfaceLetter>> = HashSet::new();
    let mut queue: VecDeque<(SurfaceWord, SurfaceWord)> = VecDeque::new();
    seen.insert(c.0.clone());
    queue.push_back((c.clone(), SurfaceWord::empty()));
    while let Some((u, t)) = queue.pop_front() {
        if u == target {
            return Some(Some(t));
        }
        for x in [1, -1, 2, -2, 3, -3, 4, -4] {
            let conj = SurfaceWord(vec![x]).concat(&u).concat(&SurfaceWord(vec![-x]));
            let (g, r) = conj.cyclic_reduce();
            if r.len() > u.len() + 2 || seen.contains(&r.0) {
                continue;
            }
            seen.insert(r.0.clone());
            // r = g⁻¹ (x u x⁻¹) g, so the accumulated conjugator becomes g⁻¹ x t.
            let nt = g.inverse().concat(&SurfaceWord(vec![x])).concat(&t).dehn_reduce();
            queue.push_back((r, nt));
            if queue.len() > budget.max_frontier {
                return None;
            }
        }
    }
    Some(None)
}

/// Decides whether φ is conjugation by a surface-group element.
pub fn inner_conjugator(phi: &SurfaceAutomorphism, budget: Budget) -> Inner {
    let (g, c) = phi.images[0].cyclic_reduce();
    let g = if c == SurfaceWord::generator(1) {
        g
    } else {
        // φ(a1) = g c g⁻¹; find t with t c t⁻¹ = a1, then φ(a1) = (g t⁻¹) a1 (g t⁻¹)⁻¹.
        match conjugate_to_a1(&c, budget) {
            None => return Inner::Unknown,
            Some(None) => return Inner::No,
            Some(Some(t)) => g.concat(&t.inverse()).dehn_reduce(),
        }
    };
    // Every solution of φ(a1) = h a1 h⁻¹ is h = g a1^k since a1 generates its
    // own centralizer. Then g⁻¹ φ(b1) g = a1^k b1 a1^{-k}, whose affine image is
    // x ↦ 2x − k, which pins down k.
    let u = g.inverse().concat(&phi.images[1]).concat(&g).dehn_reduce();
    let aff = affine_image(&u);
    if aff.m != 2 {
        return Inner::No;
    }
    let neg_k = aff.t;
    let k: i128 = if neg_k > P / 2 { (P - neg_k) as i128 } else { -(neg_k as i128) };
    if k.unsigned_abs() as usize > u.len() + 1 {
        return Inner::No;
    }
    let power: Vec<SurfaceLetter> = if k >= 0 { vec![1; k as usize] } else { vec![-1; (-k) as usize] };
    let h = g.concat(&SurfaceWord(power)).dehn_reduce();
    if verify_inner(phi, &h) {
        Inner::Yes(h)
    } else {
        Inner::No
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mcg::word::{iota, relators, Generator};

    #[test]
    fn relators_are_trivial() {
        for (name, r) in relators() {
            assert_eq!(is_identity(&r, Budget::DEFAULT), Verdict::Yes, "{name}");
        }
    }

    #[test]
    fn generators_are_nontrivial() {
        for g in Generator::ALL {
            assert_eq!(is_identity(&Word::letter(g.pos()), Budget::DEFAULT), Verdict::No);
        }
        assert_eq!(is_identity(&iota(), Budget::DEFAULT), Verdict::No);
    }

    #[test]
    fn torelli_element_is_decided() {
        // σ acts trivially on homology but is not the identity.
        let s: Word = "s".parse().unwrap();
        assert_eq!(is_identity(&s, Budget::DEFAULT), Verdict::No);
    }

    #[test]
    fn inner_witness_is_returned() {
        let g = SurfaceWord(vec![2, -3, 1, 1]);
        let phi = SurfaceAutomorphism {
            images: [1, 2, 3, 4].map(|x| {
                g.concat(&SurfaceWord::generator(x)).concat(&g.inverse()).dehn_reduce()
            }),
        };
        match inner_conjugator(&phi, Budget::DEFAULT) {
            Inner::Yes(h) => assert!(h.concat(&g.inverse()).is_trivial()),
            other => panic!("expected inner, got {other:?}"),
        }
    }

    #[test]
    fn budget_parses() {
        let b: Budget = "100,5".parse().unwrap();
        assert_eq!(b, Budget { max_word_len: 100, max_frontier: 5 });
        assert!("100".parse::<Budget>().is_err());
    }

    #[test]
    fn tiny_budget_gives_unknown() {
        let w = iota().pow(2);
        let b = Budget { max_word_len: 2, max_frontier: 1 };
        assert_eq!(is_identity(&w, b), Verdict::Unknown(b));
    }
}

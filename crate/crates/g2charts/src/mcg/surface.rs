//! The closed genus-2 surface group and the twist automorphisms of the chain.
//!
//! Letters 1..4 stand for a1, b1, a2, b2 and negative values for inverses. The
//! relator is a1 b1 a1⁻¹ b1⁻¹ a2 b2 a2⁻¹ b2⁻¹. The surface is the octagon with
//! this boundary word, base point at the (single) vertex. The chain curves
//! are c1 = a1, c2 = b1, c3 = a1 a2 (the curve through both handles),
//! c4 = b2, c5 = a2, and the twist formulas in [`twist_action`] were derived
//! in that model.

use std::collections::HashMap;
use std::sync::OnceLock;

use super::word::{Generator, Sign, SignedGenerator, Word};

pub type SurfaceLetter = i8;

pub const RELATOR: [SurfaceLetter; 8] = [1, 2, -1, -2, 3, 4, -3, -4];

/// A word in the surface group generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SurfaceWord(pub Vec<SurfaceLetter>);

fn inv_letters(w: &[SurfaceLetter]) -> Vec<SurfaceLetter> {
    w.iter().rev().map(|x| -x).collect()
}

/// Subwords longer than half of a cyclic permutation of R^{±1}, with their
/// shorter equivalents.
fn replacement_table() -> &'static HashMap<Vec<SurfaceLetter>, Vec<SurfaceLetter>> {
    static TABLE: OnceLock<HashMap<Vec<SurfaceLetter>, Vec<SurfaceLetter>>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = HashMap::new();
        for r in [RELATOR.to_vec(), inv_letters(&RELATOR)] {
            for s in 0..8 {
                let mut c = r[s..].to_vec();
                c.extend_from_slice(&r[..s]);
                for k in 5..=8 {
                    t.insert(c[..k].to_vec(), inv_letters(&c[k..]));
                }
            }
        }
        t
    })
}

fn push_reduce(stack: &mut Vec<SurfaceLetter>, x: SurfaceLetter) {
    if stack.last() == Some(&-x) {
        stack.pop();
        return;
    }
    stack.push(x);
    let table = replacement_table();
    let top = stack.len().min(8);
    for k in (5..=top).rev() {
        let start = stack.len() - k;
        if let Some(rep) = table.get(&stack[start..]) {
            let rep = rep.clone();
            stack.truncate(start);
            for y in rep {
                push_reduce(stack, y);
            }
            return;
        }
    }
}

impl SurfaceWord {
    pub fn empty() -> SurfaceWord {
        SurfaceWord(Vec::new())
    }

    pub fn generator(x: SurfaceLetter) -> SurfaceWord {
        SurfaceWord(vec![x])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> SurfaceWord {
        SurfaceWord(inv_letters(&self.0))
    }

    pub fn concat(&self, other: &SurfaceWord) -> SurfaceWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        SurfaceWord(v)
    }

    pub fn free_reduce(&self) -> SurfaceWord {
        let mut out: Vec<SurfaceLetter> = Vec::with_capacity(self.0.len());
        for &x in &self.0 {
            if out.last() == Some(&-x) {
                out.pop();
            } else {
                out.push(x);
            }
        }
        SurfaceWord(out)
    }

    /// Dehn's algorithm: a word is trivial iff its reduction is empty.
    pub fn dehn_reduce(&self) -> SurfaceWord {
        let mut st = Vec::with_capacity(self.0.len());
        for &x in &self.0 {
            push_reduce(&mut st, x);
        }
        SurfaceWord(st)
    }

    pub fn is_trivial(&self) -> bool {
        self.dehn_reduce().is_empty()
    }

    /// Writes the word as g·c·g⁻¹ with c cyclically reduced (no cancelling ends
    /// and no rotation that Dehn-reduces). Returns (g, c).
    pub fn cyclic_reduce(&self) -> (SurfaceWord, SurfaceWord) {
        let mut g: Vec<SurfaceLetter> = Vec::new();
        let mut c = self.dehn_reduce().0;
        loop {
            let mut changed = false;
            while c.len() >= 2 && c[0] == -c[c.len() - 1] {
                g.push(c[0]);
                c = c[1..c.len() - 1].to_vec();
                changed = true;
            }
            let n = c.len();
            for s in 1..n {
                let mut rot = c[s..].to_vec();
                rot.extend_from_slice(&c[..s]);
                let red = SurfaceWord(rot).dehn_reduce().0;
                if red.len() < n {
                    g.extend_from_slice(&c[..s]);
                    c = red;
                    changed = true;
                    break;
                }
            }
            if !changed {
                break;
            }
        }
        (SurfaceWord(g).dehn_reduce(), SurfaceWord(c))
    }
}

/// An endomorphism of the surface group given by the images of a1, b1, a2, b2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceAutomorphism {
    pub images: [SurfaceWord; 4],
}

impl SurfaceAutomorphism {
    pub fn identity() -> SurfaceAutomorphism {
        SurfaceAutomorphism {
            images: [1, 2, 3, 4].map(SurfaceWord::generator),
        }
    }

    fn with(pairs: &[(SurfaceLetter, &[SurfaceLetter])]) -> SurfaceAutomorphism {
        let mut a = SurfaceAutomorphism::identity();
        for (x, img) in pairs {
            a.images[(*x - 1) as usize] = SurfaceWord(img.to_vec());
        }
        a
    }

    /// Image of a word, Dehn-reduced.
    pub fn apply(&self, w: &SurfaceWord) -> SurfaceWord {
        let mut st = Vec::new();
        for &x in &w.0 {
            let img = &self.images[(x.unsigned_abs() - 1) as usize];
            if x > 0 {
                for &y in &img.0 {
                    push_reduce(&mut st, y);
                }
            } else {
                for &y in img.0.iter().rev() {
                    push_reduce(&mut st, -y);
                }
            }
        }
        SurfaceWord(st)
    }

    /// `self ∘ other`
    pub fn compose(&self, other: &SurfaceAutomorphism) -> SurfaceAutomorphism {
        SurfaceAutomorphism {
            images: [0, 1, 2, 3].map(|i| self.apply(&other.images[i])),
        }
    }

    pub fn max_image_len(&self) -> usize {
        self.images.iter().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Image of the relator in the free group on four letters, freely and
    /// cyclically reduced.
    pub fn free_relator_image(&self) -> Vec<SurfaceLetter> {
        let mut w = Vec::new();
        for &x in &RELATOR {
            let img = &self.images[(x.unsigned_abs() - 1) as usize];
            if x > 0 {
                w.extend_from_slice(&img.0);
            } else {
                w.extend(inv_letters(&img.0));
            }
        }
        let mut w = SurfaceWord(w).free_reduce().0;
        while w.len() >= 2 && w[0] == -w[w.len() - 1] {
            w = w[1..w.len() - 1].to_vec();
        }
        w
    }

    /// Whether the relator image is, up to cyclic permutation, the relator.
    pub fn relator_image_is_conjugate(&self) -> bool {
        let img = self.free_relator_image();
        img.len() == 8
            && (0..8).any(|s| {
                let mut c = RELATOR[s..].to_vec();
                c.extend_from_slice(&RELATOR[..s]);
                c == img
            })
    }

    /// Abelianization as a 4×4 integer matrix acting on column vectors.
    pub fn abelianization(&self) -> [[i64; 4]; 4] {
        let mut m = [[0i64; 4]; 4];
        for (col, img) in self.images.iter().enumerate() {
            for &x in &img.0 {
                m[(x.unsigned_abs() - 1) as usize][col] += x.signum() as i64;
            }
        }
        m
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("σ has no twist automorphism of its own; expand it first")]
pub struct SigmaNotExpanded;

/// Automorphism induced by the Dehn twist (or its inverse) along a chain curve.
pub fn twist_action(g: SignedGenerator) -> Result<SurfaceAutomorphism, SigmaNotExpanded> {
    static CACHE: OnceLock<[[SurfaceAutomorphism; 2]; 5]> = OnceLock::new();
    let table = CACHE.get_or_init(|| {
        let pos = [
            SurfaceAutomorphism::with(&[(2, &[2, 1])]),
            SurfaceAutomorphism::with(&[(1, &[1, -2])]),
            SurfaceAutomorphism::with(&[(2, &[3, 1, 2]), (4, &[1, 3, 4])]),
            SurfaceAutomorphism::with(&[(3, &[3, -4])]),
            SurfaceAutomorphism::with(&[(4, &[4, 3])]),
        ];
        let neg = [
            SurfaceAutomorphism::with(&[(2, &[2, -1])]),
            SurfaceAutomorphism::with(&[(1, &[1, 2])]),
            SurfaceAutomorphism::with(&[(2, &[-1, -3, 2]), (4, &[-3, -1, 4])]),
            SurfaceAutomorphism::with(&[(3, &[3, 4])]),
            SurfaceAutomorphism::with(&[(4, &[4, -3])]),
        ];
        [0, 1, 2, 3, 4].map(|i| [pos[i].clone(), neg[i].clone()])
    });
    let i = match g.gen {
        Generator::Sigma => return Err(SigmaNotExpanded),
        z => z.index().expect("zeta") as usize - 1,
    };
    Ok(table[i][if g.sign == Sign::Plus { 0 } else { 1 }].clone())
}

/// act(w) = act(g1) ∘ … ∘ act(gn) with σ expanded. Returns `None` when an
/// intermediate image exceeds `max_len`.
pub fn act_bounded(w: &Word, max_len: usize) -> Option<SurfaceAutomorphism> {
    let w = w.expand_sigma();
    let mut phi = SurfaceAutomorphism::identity();
    for &l in w.letters() {
        phi = phi.compose(&twist_action(l).expect("expanded"));
        if phi.max_image_len() > max_len {
            return None;
        }
    }
    Some(phi)
}

pub fn act(w: &Word) -> SurfaceAutomorphism {
    act_bounded(w, usize::MAX).expect("unbounded")
}

//! Filling a trivial word with chart cells: given strands whose word is the
//! identity in MC, emit movie steps that end every strand.

use std::collections::HashSet;

use thiserror::Error;

use crate::mcg::identity::{is_identity, Budget};
use crate::mcg::symplectic::sp_image;
use crate::mcg::word::{Generator, Sign, SignedGenerator, Word};

use super::monoid;
use super::movie::{Movie, MovieError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeriveError {
    #[error("no chart filling found for {0}")]
    NoFilling(Word),
    #[error(transparent)]
    Movie(#[from] MovieError),
}

const IOTA: [u8; 10] = [1, 2, 3, 4, 5, 5, 4, 3, 2, 1];

fn z(i: u8) -> SignedGenerator {
    Generator::zeta(i).expect("chain index").pos()
}

fn positive(labels: &[u8]) -> Vec<SignedGenerator> {
    labels.iter().map(|&i| z(i)).collect()
}

fn iota_inverse() -> Vec<SignedGenerator> {
    IOTA.iter().map(|&i| z(i).inverse()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Block {
    /// ι rotated left by `s`
    Iota(usize),
    /// (ζ1…ζ5)^6 rotated left by `s`
    Chain(usize),
}

impl Block {
    fn labels(&self) -> Vec<u8> {
        match *self {
            Block::Iota(s) => IOTA[s..].iter().chain(&IOTA[..s]).copied().collect(),
            Block::Chain(s) => (0..30).map(|k| ((k + s) % 5) as u8 + 1).collect(),
        }
    }
}

fn candidates() -> Vec<Block> {
    (0..10).map(Block::Iota).chain((0..30).map(Block::Chain)).collect()
}

fn decompose(w: &[u8], cands: &[Block], dead: &mut HashSet<Vec<u8>>) -> Option<Vec<Block>> {
    if w.is_empty() {
        return Some(Vec::new());
    }
    if dead.contains(w) {
        return None;
    }
    for b in cands {
        let l = b.labels();
        if l.len() > w.len() {
            continue;
        }
        if let Some(rest) = monoid::left_quotient(&l, w) {
            if let Some(mut tail) = decompose(&rest, cands, dead) {
                tail.insert(0, b.clone());
                return Some(tail);
            }
        }
    }
    dead.insert(w.to_vec());
    None
}

pub struct Filler<'a> {
    pub movie: &'a mut Movie,
    pub budget: Budget,
}

impl Filler<'_> {
    fn word(&self, lo: usize, len: usize) -> Vec<SignedGenerator> {
        (lo..lo + len).map(|i| self.movie.letter(i)).collect()
    }

    fn is_trivial(&self, w: &[SignedGenerator]) -> bool {
        let abel: i64 = w.iter().map(|l| if l.gen.is_sigma() { 12 } else { 1 } * l.sign.as_i32() as i64).sum();
        if abel.rem_euclid(10) != 0 {
            return false;
        }
        let w = Word::from_letters(w.to_vec());
        sp_image(&w).is_identity() && is_identity(&w, self.budget).is_yes()
    }

    /// Ends all strands in `lo..lo + len`, whose word must be trivial.
    pub fn fill(&mut self, lo: usize, mut len: usize) -> Result<(), DeriveError> {
        loop {
            let mut i = lo;
            while i + 1 < lo + len {
                if self.movie.letter(i).cancels(self.movie.letter(i + 1)) {
                    self.movie.cap(i)?;
                    len -= 2;
                    i = i.saturating_sub(1).max(lo);
                } else {
                    i += 1;
                }
            }
            if len == 0 {
                return Ok(());
            }
            if let Some(p) = (lo..lo + len).find(|&i| self.movie.letter(i).gen.is_sigma()) {
                let l = self.movie.letter(p);
                let below: Vec<SignedGenerator> = match l.sign {
                    Sign::Plus => positive(&[1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2]),
                    Sign::Minus => positive(&[2, 1, 2, 1, 2, 1, 2, 1, 2, 1, 2, 1]).into_iter().map(|x| x.inverse()).collect(),
                };
                self.movie.cell(p, 1, &below)?;
                len += 11;
                continue;
            }
            break;
        }
        let w = self.word(lo, len);
        if self.movie.cell(lo, len, &[]).is_ok() {
            return Ok(());
        }
        if w[0].cancels(w[len - 1]) {
            self.fill(lo + 1, len - 2)?;
            self.movie.cap(lo)?;
            return Ok(());
        }
        for k in 1..len {
            if self.is_trivial(&w[..k]) {
                self.fill(lo, k)?;
                return self.fill(lo, len - k);
            }
        }
        if w.iter().all(|l| l.is_positive()) {
            let labels: Vec<u8> = w.iter().map(|l| l.gen.index().expect("σ expanded")).collect();
            if self.fill_positive(lo, &labels)? {
                return Ok(());
            }
        }
        Err(DeriveError::NoFilling(Word::from_letters(w)))
    }

    fn fill_positive(&mut self, lo: usize, p: &[u8]) -> Result<bool, DeriveError> {
        let n = p.len();
        let mut rots: Vec<usize> = (0..n).collect();
        rots.sort_by_key(|&r| r.min(n - r));
        let cands = candidates();
        for r in rots {
            let q: Vec<u8> = p[r..].iter().chain(&p[..r]).copied().collect();
            let mut dead = HashSet::new();
            let Some(blocks) = decompose(&q, &cands, &mut dead) else { continue };
            if r == 0 {
                self.fill_blocks(lo, &q, &blocks)?;
            } else if r <= n - r {
                for (i, &x) in p[..r].iter().enumerate() {
                    self.movie.cup(lo + n + i, z(x))?;
                }
                self.fill_blocks(lo + r, &q, &blocks)?;
                self.fill(lo, 2 * r)?;
            } else {
                let s = n - r;
                for i in 0..s {
                    self.movie.cup(lo + i, z(p[n - 1 - i]).inverse())?;
                }
                self.fill_blocks(lo + s, &q, &blocks)?;
                self.fill(lo, 2 * s)?;
            }
            return Ok(true);
        }
        Ok(false)
    }

    fn fill_blocks(&mut self, o: usize, q: &[u8], blocks: &[Block]) -> Result<(), DeriveError> {
        let target: Vec<u8> = blocks.iter().flat_map(|b| b.labels()).collect();
        let steps = monoid::transform(q, &target).ok_or_else(|| {
            DeriveError::NoFilling(Word::from_letters(positive(q)))
        })?;
        for s in &steps {
            self.movie.cell(o + s.offset, s.from.len(), &positive(&s.to))?;
        }
        let mut cursor = o;
        let mut signs = Vec::new();
        for b in blocks {
            match *b {
                Block::Chain(_) => {
                    self.movie.cell(cursor, 30, &[])?;
                }
                Block::Iota(s) => {
                    signs.push(self.standardize_iota(cursor, s)?);
                    cursor += 10;
                }
            }
        }
        for pair in signs.chunks(2) {
            if pair.len() == 2 && pair[0] == pair[1] {
                self.movie.cell(o, 20, &[])?;
            } else {
                self.fill(o, 10 * pair.len())?;
            }
        }
        Ok(())
    }

    /// Turns ι rotated by `s` at `c` into ι or ι⁻¹ occupying the same ten strands.
    fn standardize_iota(&mut self, c: usize, s: usize) -> Result<Sign, DeriveError> {
        if s == 0 {
            return Ok(Sign::Plus);
        }
        if 10 - s <= s {
            let q = &IOTA[s..];
            for (i, &x) in q.iter().enumerate() {
                self.movie.cup(c + 10 + i, z(x))?;
            }
            for i in (0..q.len()).rev() {
                self.movie.cell(c + i, 12, &positive(&IOTA))?;
            }
            Ok(Sign::Plus)
        } else {
            let p = &IOTA[..s];
            for i in 0..s {
                self.movie.cup(c + i, z(p[s - 1 - i]).inverse())?;
            }
            self.movie.cell(c + s, 10, &iota_inverse())?;
            for i in (0..s).rev() {
                self.movie.cell(c + i, 12, &iota_inverse())?;
            }
            Ok(Sign::Minus)
        }
    }
}

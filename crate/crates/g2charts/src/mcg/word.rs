use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// One of the six base symbols: the chain twists ζ1..ζ5 and the separating twist σ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Z1,
    Z2,
    Z3,
    Z4,
    Z5,
    Sigma,
}

impl Generator {
    pub const ALL: [Generator; 6] = [
        Generator::Z1,
        Generator::Z2,
        Generator::Z3,
        Generator::Z4,
        Generator::Z5,
        Generator::Sigma,
    ];
    pub const ZETAS: [Generator; 5] = [
        Generator::Z1,
        Generator::Z2,
        Generator::Z3,
        Generator::Z4,
        Generator::Z5,
    ];

    pub fn zeta(i: u8) -> Option<Generator> {
        match i {
            1 => Some(Generator::Z1),
            2 => Some(Generator::Z2),
            3 => Some(Generator::Z3),
            4 => Some(Generator::Z4),
            5 => Some(Generator::Z5),
            _ => None,
        }
    }

    /// Chain index 1..=5, or `None` for σ.
    pub fn index(self) -> Option<u8> {
        match self {
            Generator::Z1 => Some(1),
            Generator::Z2 => Some(2),
            Generator::Z3 => Some(3),
            Generator::Z4 => Some(4),
            Generator::Z5 => Some(5),
            Generator::Sigma => None,
        }
    }

    pub fn is_sigma(self) -> bool {
        self == Generator::Sigma
    }

    pub fn pos(self) -> SignedGenerator {
        SignedGenerator { gen: self, sign: Sign::Plus }
    }

    pub fn neg(self) -> SignedGenerator {
        SignedGenerator { gen: self, sign: Sign::Minus }
    }

    /// Token used in chart files and labels: `1`..`5` or `s`.
    pub fn label_token(self) -> &'static str {
        match self {
            Generator::Z1 => "1",
            Generator::Z2 => "2",
            Generator::Z3 => "3",
            Generator::Z4 => "4",
            Generator::Z5 => "5",
            Generator::Sigma => "s",
        }
    }

    pub fn from_label_token(s: &str) -> Option<Generator> {
        match s {
            "s" | "σ" | "sigma" => Some(Generator::Sigma),
            _ => s.parse::<u8>().ok().and_then(Generator::zeta),
        }
    }

    fn word_token(self) -> &'static str {
        match self {
            Generator::Z1 => "z1",
            Generator::Z2 => "z2",
            Generator::Z3 => "z3",
            Generator::Z4 => "z4",
            Generator::Z5 => "z5",
            Generator::Sigma => "s",
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.word_token())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    pub fn as_i32(self) -> i32 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedGenerator {
    pub gen: Generator,
    pub sign: Sign,
}

impl SignedGenerator {
    pub fn new(gen: Generator, sign: Sign) -> Self {
        SignedGenerator { gen, sign }
    }

    pub fn inverse(self) -> Self {
        SignedGenerator { gen: self.gen, sign: self.sign.flip() }
    }

    pub fn is_positive(self) -> bool {
        self.sign == Sign::Plus
    }

    pub fn cancels(self, other: SignedGenerator) -> bool {
        self.gen == other.gen && self.sign != other.sign
    }
}

impl fmt::Display for SignedGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sign {
            Sign::Plus => write!(f, "{}", self.gen),
            Sign::Minus => write!(f, "{}'", self.gen),
        }
    }
}

impl FromStr for SignedGenerator {
    type Err = ParseWordError;

    fn from_str(tok: &str) -> Result<Self, Self::Err> {
        let (body, sign) = match tok.strip_suffix('\'') {
            Some(b) => (b, Sign::Minus),
            None => (tok, Sign::Plus),
        };
        let gen = match body {
            "z1" => Generator::Z1,
            "z2" => Generator::Z2,
            "z3" => Generator::Z3,
            "z4" => Generator::Z4,
            "z5" => Generator::Z5,
            "s" => Generator::Sigma,
            _ => {
                return Err(ParseWordError { token: tok.to_string(), position: 0 });
            }
        };
        Ok(SignedGenerator { gen, sign })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unrecognized word token `{token}` at position {position}")]
pub struct ParseWordError {
    pub token: String,
    pub position: usize,
}

/// A finite sequence of signed generators.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<SignedGenerator>);

impl Word {
    pub fn empty() -> Word {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<SignedGenerator>) -> Word {
        Word(letters)
    }

    pub fn letter(l: SignedGenerator) -> Word {
        Word(vec![l])
    }

    /// Positive word on chain indices, e.g. `Word::zetas(&[1, 2, 1])`.
    pub fn zetas(indices: &[u8]) -> Word {
        Word(
            indices
                .iter()
                .map(|&i| Generator::zeta(i).expect("chain index in 1..=5").pos())
                .collect(),
        )
    }

    pub fn letters(&self) -> &[SignedGenerator] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<SignedGenerator> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: SignedGenerator) {
        self.0.push(l);
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.inverse()).collect())
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn pow(&self, n: usize) -> Word {
        let mut v = Vec::with_capacity(self.0.len() * n);
        for _ in 0..n {
            v.extend_from_slice(&self.0);
        }
        Word(v)
    }

    /// `self · core · self⁻¹`
    pub fn conjugate(&self, core: &Word) -> Word {
        self.concat(core).concat(&self.inverse())
    }

    pub fn contains_sigma(&self) -> bool {
        self.0.iter().any(|l| l.gen.is_sigma())
    }

    /// Sum of the signs of all letters.
    pub fn exponent_sum(&self) -> i64 {
        self.0.iter().map(|l| l.sign.as_i32() as i64).sum()
    }

    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<SignedGenerator> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last().is_some_and(|&t| t.cancels(l)) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    pub fn expand_sigma(&self) -> Word {
        let mut out = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if l.gen.is_sigma() {
                let block = sigma_expansion();
                let block = if l.is_positive() { block } else { block.inverse() };
                out.extend_from_slice(&block.0);
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Cyclic rotation moving the first `k` letters to the end.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return self.clone();
        }
        let k = k % self.0.len();
        let mut v = self.0[k..].to_vec();
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// True when `other` is a cyclic rotation of `self`.
    pub fn is_rotation_of(&self, other: &Word) -> bool {
        self.len() == other.len()
            && (self.is_empty() || (0..self.len()).any(|k| self.rotate(k) == *other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = ParseWordError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for (position, tok) in s.split_whitespace().enumerate() {
            let l = tok.parse::<SignedGenerator>().map_err(|mut e| {
                e.position = position;
                e
            })?;
            letters.push(l);
        }
        Ok(Word(letters))
    }
}

impl FromIterator<SignedGenerator> for Word {
    fn from_iter<I: IntoIterator<Item = SignedGenerator>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

/// (ζ1ζ2)^6, the value of σ.
pub fn sigma_expansion() -> Word {
    Word::zetas(&[1, 2]).pow(6)
}

/// ι = ζ1ζ2ζ3ζ4ζ5²ζ4ζ3ζ2ζ1, the hyperelliptic involution.
pub fn iota() -> Word {
    Word::zetas(&[1, 2, 3, 4, 5, 5, 4, 3, 2, 1])
}

/// (ζ1ζ2ζ3ζ4ζ5)^6
pub fn chain_six() -> Word {
    Word::zetas(&[1, 2, 3, 4, 5]).pow(6)
}

/// Every instance of the defining relations of MC, as words equal to 1.
pub fn relators() -> Vec<(String, Word)> {
    let mut out = Vec::new();
    for i in 1..=5u8 {
        for j in (i + 2)..=5u8 {
            let w = Word::zetas(&[i, j]).concat(&Word::zetas(&[i, j]).inverse());
            out.push((format!("commute z{i} z{j}"), w));
        }
    }
    for i in 1..=4u8 {
        let w = Word::zetas(&[i, i + 1, i]).concat(&Word::zetas(&[i + 1, i, i + 1]).inverse());
        out.push((format!("braid z{i} z{}", i + 1), w));
    }
    out.push(("iota squared".to_string(), iota().pow(2)));
    out.push(("chain of six".to_string(), chain_six()));
    for i in 1..=5u8 {
        let z = Word::zetas(&[i]);
        let w = iota().concat(&z).concat(&iota().inverse()).concat(&z.inverse());
        out.push((format!("iota central z{i}"), w));
    }
    out.push((
        "sigma definition".to_string(),
        sigma_expansion().concat(&Word::letter(Generator::Sigma.neg())),
    ));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_print_round_trip() {
        let s = "z1 z2 s' z3";
        let w: Word = s.parse().unwrap();
        assert_eq!(w.to_string(), s);
        assert_eq!(w.len(), 4);
    }

    #[test]
    fn parse_reports_position() {
        let err = "z1 z7".parse::<Word>().unwrap_err();
        assert_eq!(err.position, 1);
    }

    #[test]
    fn free_reduction_examples() {
        let w: Word = "z1 z1'".parse().unwrap();
        assert!(w.free_reduce().is_empty());
        assert!(Word::empty().free_reduce().is_empty());
        let w: Word = "z1 z2 z2' z3".parse().unwrap();
        assert_eq!(w.free_reduce().to_string(), "z1 z3");
    }

    #[test]
    fn sigma_expansion_examples() {
        let w: Word = "s".parse().unwrap();
        assert_eq!(w.expand_sigma().to_string(), "z1 z2 z1 z2 z1 z2 z1 z2 z1 z2 z1 z2");
        let w: Word = "z3".parse().unwrap();
        assert_eq!(w.expand_sigma(), w);
        let w: Word = "s'".parse().unwrap();
        assert_eq!(w.expand_sigma().to_string(), "z2' z1' ".repeat(6).trim_end());
    }
}

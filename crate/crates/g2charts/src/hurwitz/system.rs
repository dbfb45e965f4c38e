use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use thiserror::Error;

use crate::mcg::word::{iota, Generator, ParseWordError, Sign, SignedGenerator, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FactorKind {
    /// Conjugate of ζi, i ∈ 1..=5.
    NonSeparating(u8),
    /// Conjugate of σ.
    Separating,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorClass {
    pub kind: FactorKind,
    pub sign: Sign,
}

impl FactorClass {
    pub fn new(core: Generator, sign: Sign) -> FactorClass {
        let kind = match core.index() {
            Some(i) => FactorKind::NonSeparating(i),
            None => FactorKind::Separating,
        };
        FactorClass { kind, sign }
    }

    pub fn core(self) -> Generator {
        match self.kind {
            FactorKind::NonSeparating(i) => Generator::zeta(i).expect("chain index"),
            FactorKind::Separating => Generator::Sigma,
        }
    }

    pub fn core_letter(self) -> SignedGenerator {
        SignedGenerator::new(self.core(), self.sign)
    }

    pub fn fiber_type(self) -> FiberType {
        match (self.kind, self.sign) {
            (FactorKind::NonSeparating(_), Sign::Plus) => FiberType::IPlus,
            (FactorKind::NonSeparating(_), Sign::Minus) => FiberType::IMinus,
            (FactorKind::Separating, Sign::Plus) => FiberType::IIPlus,
            (FactorKind::Separating, Sign::Minus) => FiberType::IIMinus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FiberType {
    IPlus,
    IMinus,
    IIPlus,
    IIMinus,
}

/// conjugator · core^sign · conjugator⁻¹
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HurwitzFactor {
    pub conjugator: Word,
    pub class: FactorClass,
}

impl HurwitzFactor {
    pub fn new(conjugator: Word, core: Generator, sign: Sign) -> HurwitzFactor {
        HurwitzFactor { conjugator, class: FactorClass::new(core, sign) }
    }

    pub fn plain(l: SignedGenerator) -> HurwitzFactor {
        HurwitzFactor::new(Word::empty(), l.gen, l.sign)
    }

    pub fn word(&self) -> Word {
        self.conjugator.conjugate(&Word::letter(self.class.core_letter()))
    }

    /// Same factor with its conjugator left-multiplied by `w` and freely reduced.
    pub fn conjugated_by(&self, w: &Word) -> HurwitzFactor {
        HurwitzFactor { conjugator: w.concat(&self.conjugator).free_reduce(), class: self.class }
    }
}

impl fmt::Display for HurwitzFactor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let conj = if self.conjugator.is_empty() { "e".to_string() } else { self.conjugator.to_string() };
        let sign = if self.class.sign == Sign::Plus { "+" } else { "-" };
        write!(f, "{conj} | {} | {sign}", self.class.core())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct FiberCounts {
    pub n_i_plus: u64,
    pub n_i_minus: u64,
    pub n_ii_plus: u64,
    pub n_ii_minus: u64,
}

impl FiberCounts {
    pub fn new(n_i_plus: u64, n_i_minus: u64, n_ii_plus: u64, n_ii_minus: u64) -> FiberCounts {
        FiberCounts { n_i_plus, n_i_minus, n_ii_plus, n_ii_minus }
    }

    pub fn total(&self) -> u64 {
        self.n_i_plus + self.n_i_minus + self.n_ii_plus + self.n_ii_minus
    }

    pub fn tally(&mut self, t: FiberType) {
        match t {
            FiberType::IPlus => self.n_i_plus += 1,
            FiberType::IMinus => self.n_i_minus += 1,
            FiberType::IIPlus => self.n_ii_plus += 1,
            FiberType::IIMinus => self.n_ii_minus += 1,
        }
    }

    /// Every singular fiber of positive type.
    pub fn is_chiral(&self) -> bool {
        self.n_i_minus == 0 && self.n_ii_minus == 0
    }

    /// Every singular fiber of type I.
    pub fn is_irreducible(&self) -> bool {
        self.n_ii_plus == 0 && self.n_ii_minus == 0
    }
}

impl Add for FiberCounts {
    type Output = FiberCounts;

    fn add(self, o: FiberCounts) -> FiberCounts {
        FiberCounts::new(
            self.n_i_plus + o.n_i_plus,
            self.n_i_minus + o.n_i_minus,
            self.n_ii_plus + o.n_ii_plus,
            self.n_ii_minus + o.n_ii_minus,
        )
    }
}

impl fmt::Display for FiberCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.n_i_plus, self.n_i_minus, self.n_ii_plus, self.n_ii_minus)
    }
}

impl FromStr for FiberCounts {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(|c: char| c == ',' || c.is_whitespace()).filter(|p| !p.is_empty()).collect();
        if parts.len() != 4 {
            return Err(format!("expected four counts nIp,nIm,nIIp,nIIm, got `{s}`"));
        }
        let mut v = [0u64; 4];
        for (slot, p) in v.iter_mut().zip(&parts) {
            *slot = p.parse().map_err(|e| format!("bad count `{p}`: {e}"))?;
        }
        Ok(FiberCounts::new(v[0], v[1], v[2], v[3]))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MoveDirection {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HurwitzError {
    #[error("move index {index} out of range for a system of {len} factors (need 1 <= i < len)")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("unknown basic system `{0}` (expected W0, W1, W2, W1p or W2p)")]
    UnknownBasic(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseSystemError {
    #[error("line {line}: expected `conjugator | core | sign`")]
    Shape { line: usize },
    #[error("line {line}: {source}")]
    Word { line: usize, source: ParseWordError },
    #[error("line {line}: core must be z1..z5 or s, got `{token}`")]
    Core { line: usize, token: String },
    #[error("line {line}: sign must be + or -, got `{token}`")]
    Sign { line: usize, token: String },
}

/// Ordered factors read around the base point.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HurwitzSystem {
    pub factors: Vec<HurwitzFactor>,
}

impl HurwitzSystem {
    pub fn new(factors: Vec<HurwitzFactor>) -> HurwitzSystem {
        HurwitzSystem { factors }
    }

    pub fn empty() -> HurwitzSystem {
        HurwitzSystem::default()
    }

    /// One plain factor per letter of `w`.
    pub fn from_letters(w: &Word) -> HurwitzSystem {
        HurwitzSystem::new(w.letters().iter().map(|&l| HurwitzFactor::plain(l)).collect())
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn total_monodromy(&self) -> Word {
        let mut w = Word::empty();
        for f in &self.factors {
            w = w.concat(&f.word());
        }
        w
    }

    pub fn counts(&self) -> FiberCounts {
        let mut c = FiberCounts::default();
        for f in &self.factors {
            c.tally(f.class.fiber_type());
        }
        c
    }

    /// Elementary transformation at the 1-based position `i`:
    /// right maps (g_i, g_{i+1}) to (g_i g_{i+1} g_i⁻¹, g_i); left is its inverse.
    pub fn hurwitz_move(&self, i: usize, dir: MoveDirection) -> Result<HurwitzSystem, HurwitzError> {
        if i < 1 || i >= self.factors.len() {
            return Err(HurwitzError::IndexOutOfRange { index: i, len: self.factors.len() });
        }
        let (a, b) = (&self.factors[i - 1], &self.factors[i]);
        let (na, nb) = match dir {
            MoveDirection::Right => (b.conjugated_by(&a.word()), a.clone()),
            MoveDirection::Left => (b.clone(), a.conjugated_by(&b.word().inverse())),
        };
        let mut factors = self.factors.clone();
        factors[i - 1] = na;
        factors[i] = nb;
        Ok(HurwitzSystem { factors })
    }

    pub fn global_conjugate(&self, w: &Word) -> HurwitzSystem {
        HurwitzSystem { factors: self.factors.iter().map(|f| f.conjugated_by(w)).collect() }
    }

    pub fn fiber_sum(&self, other: &HurwitzSystem) -> HurwitzSystem {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        HurwitzSystem { factors }
    }

    /// All conjugators freely reduced.
    pub fn canonical(&self) -> HurwitzSystem {
        HurwitzSystem {
            factors: self
                .factors
                .iter()
                .map(|f| HurwitzFactor { conjugator: f.conjugator.free_reduce(), class: f.class })
                .collect(),
        }
    }
}

impl fmt::Display for HurwitzSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for factor in &self.factors {
            writeln!(f, "{factor}")?;
        }
        Ok(())
    }
}

impl FromStr for HurwitzSystem {
    type Err = ParseSystemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut factors = Vec::new();
        for (idx, raw) in s.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parts: Vec<&str> = line.split('|').map(str::trim).collect();
            if parts.len() != 3 {
                return Err(ParseSystemError::Shape { line: line_no });
            }
            let conjugator = if parts[0] == "e" {
                Word::empty()
            } else {
                parts[0]
                    .parse::<Word>()
                    .map_err(|source| ParseSystemError::Word { line: line_no, source })?
            };
            let core = match parts[1].parse::<SignedGenerator>() {
                Ok(l) if l.is_positive() => l.gen,
                _ => return Err(ParseSystemError::Core { line: line_no, token: parts[1].to_string() }),
            };
            let sign = match parts[2] {
                "+" => Sign::Plus,
                "-" => Sign::Minus,
                t => return Err(ParseSystemError::Sign { line: line_no, token: t.to_string() }),
            };
            factors.push(HurwitzFactor::new(conjugator, core, sign));
        }
        Ok(HurwitzSystem { factors })
    }
}

/// The five basic systems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasicName {
    W0,
    W1,
    W2,
    W1p,
    W2p,
}

impl BasicName {
    pub const ALL: [BasicName; 5] = [BasicName::W0, BasicName::W1, BasicName::W2, BasicName::W1p, BasicName::W2p];
}

impl FromStr for BasicName {
    type Err = HurwitzError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "W0" => Ok(BasicName::W0),
            "W1" => Ok(BasicName::W1),
            "W2" => Ok(BasicName::W2),
            "W1p" | "W1'" => Ok(BasicName::W1p),
            "W2p" | "W2'" => Ok(BasicName::W2p),
            _ => Err(HurwitzError::UnknownBasic(s.to_string())),
        }
    }
}

impl fmt::Display for BasicName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BasicName::W0 => "W0",
            BasicName::W1 => "W1",
            BasicName::W2 => "W2",
            BasicName::W1p => "W1p",
            BasicName::W2p => "W2p",
        };
        f.write_str(s)
    }
}

/// (ζ3, ζ4, ζ5, ζ2, ζ3, ζ4, ζ1, ζ2, ζ3)
pub fn w2_block() -> Word {
    Word::zetas(&[3, 4, 5, 2, 3, 4, 1, 2, 3])
}

pub fn basic_system(name: BasicName) -> HurwitzSystem {
    match name {
        BasicName::W0 => HurwitzSystem::from_letters(&iota().pow(2)),
        BasicName::W1 => HurwitzSystem::from_letters(&Word::zetas(&[1, 2, 3, 4, 5]).pow(6)),
        BasicName::W2 => {
            let w = Word::letter(Generator::Sigma.pos()).concat(&w2_block().pow(2)).concat(&iota());
            HurwitzSystem::from_letters(&w)
        }
        BasicName::W1p => HurwitzSystem::from_letters(&Word::from_letters(vec![
            Generator::Z1.pos(),
            Generator::Z1.neg(),
        ])),
        BasicName::W2p => HurwitzSystem::from_letters(&Word::from_letters(vec![
            Generator::Sigma.pos(),
            Generator::Sigma.neg(),
        ])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_counts_match_table() {
        let expect = [
            (BasicName::W0, FiberCounts::new(20, 0, 0, 0)),
            (BasicName::W1, FiberCounts::new(30, 0, 0, 0)),
            (BasicName::W2, FiberCounts::new(28, 0, 1, 0)),
            (BasicName::W1p, FiberCounts::new(1, 1, 0, 0)),
            (BasicName::W2p, FiberCounts::new(0, 0, 1, 1)),
        ];
        for (n, c) in expect {
            assert_eq!(basic_system(n).counts(), c, "{n}");
        }
        assert_eq!(basic_system(BasicName::W2).len(), 29);
        assert_eq!(HurwitzSystem::empty().counts(), FiberCounts::default());
    }

    #[test]
    fn right_move_unrolls_definition() {
        let h: HurwitzSystem = "e | z1 | +\ne | z3 | +\n".parse().unwrap();
        let m = h.hurwitz_move(1, MoveDirection::Right).unwrap();
        assert_eq!(m.to_string(), "z1 | z3 | +\ne | z1 | +\n");
        assert_eq!(m.hurwitz_move(1, MoveDirection::Left).unwrap(), h);
    }

    #[test]
    fn move_index_checked() {
        let h = basic_system(BasicName::W1p);
        assert!(h.hurwitz_move(0, MoveDirection::Right).is_err());
        assert!(h.hurwitz_move(2, MoveDirection::Right).is_err());
    }

    #[test]
    fn text_round_trip() {
        let text = "z1 z2 | z3 | -\ne | s | +\n";
        let h: HurwitzSystem = text.parse().unwrap();
        assert_eq!(h.to_string(), text);
    }

    #[test]
    fn parse_errors_carry_line() {
        let err = "e | z1 | +\nz1 | z9 | +\n".parse::<HurwitzSystem>().unwrap_err();
        assert!(matches!(err, ParseSystemError::Core { line: 2, .. }));
    }

    #[test]
    fn counts_parse() {
        assert_eq!("28,0,1,0".parse::<FiberCounts>().unwrap(), FiberCounts::new(28, 0, 1, 0));
    }
}

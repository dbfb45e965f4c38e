//! Integral homology action of words, used as a fast non-faithful screen.
//!
//! Basis of H1 is (a1, b1, a2, b2) with the form ⟨a_i, b_i⟩ = −1, ⟨b_i, a_i⟩ = 1,
//! which matches the surface model in [`super::surface`]: abelianizing a twist
//! automorphism gives exactly the transvection below. Chain classes:
//! c1 = a1, c2 = b1, c3 = a1 + a2, c4 = b2, c5 = a2.

use std::fmt;
use std::ops::Mul;

use super::word::{Generator, Sign, SignedGenerator, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct SpMatrix {
    pub entries: [[i64; 4]; 4],
}

/// Gram matrix of the intersection form in the basis (a1, b1, a2, b2).
pub const FORM: [[i64; 4]; 4] = [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 0, -1], [0, 0, 1, 0]];

pub fn chain_class(i: u8) -> [i64; 4] {
    match i {
        1 => [1, 0, 0, 0],
        2 => [0, 1, 0, 0],
        3 => [1, 0, 1, 0],
        4 => [0, 0, 0, 1],
        5 => [0, 0, 1, 0],
        _ => panic!("chain index out of range: {i}"),
    }
}

pub fn pairing(x: &[i64; 4], y: &[i64; 4]) -> i64 {
    let mut s = 0;
    for i in 0..4 {
        for j in 0..4 {
            s += x[i] * FORM[i][j] * y[j];
        }
    }
    s
}

impl SpMatrix {
    pub fn identity() -> SpMatrix {
        let mut e = [[0; 4]; 4];
        for (i, row) in e.iter_mut().enumerate() {
            row[i] = 1;
        }
        SpMatrix { entries: e }
    }

    pub fn neg_identity() -> SpMatrix {
        let mut m = SpMatrix::identity();
        for i in 0..4 {
            m.entries[i][i] = -1;
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        *self == SpMatrix::identity()
    }

    /// x ↦ x + k⟨x, c⟩c
    pub fn transvection(c: &[i64; 4], k: i64) -> SpMatrix {
        let mut e = [[0; 4]; 4];
        for (col, unit) in (0..4).map(|j| {
            let mut u = [0; 4];
            u[j] = 1;
            (j, u)
        }) {
            let t = pairing(&unit, c);
            for row in 0..4 {
                e[row][col] = unit[row] + k * t * c[row];
            }
        }
        SpMatrix { entries: e }
    }

    pub fn transpose(&self) -> SpMatrix {
        let mut e = [[0; 4]; 4];
        for (i, row) in e.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.entries[j][i];
            }
        }
        SpMatrix { entries: e }
    }

    /// Mᵀ J M = J
    pub fn preserves_form(&self) -> bool {
        let j = SpMatrix { entries: FORM };
        self.transpose() * j * *self == j
    }

    /// Inverse of a symplectic matrix, J⁻¹ Mᵀ J.
    pub fn symplectic_inverse(&self) -> SpMatrix {
        let j = SpMatrix { entries: FORM };
        let j_inv = SpMatrix { entries: FORM } * SpMatrix::neg_identity();
        j_inv * self.transpose() * j
    }

    pub fn trace(&self) -> i64 {
        (0..4).map(|i| self.entries[i][i]).sum()
    }

    /// Coefficients (c0, c1, c2, c3) of det(tI − M) = t⁴ + c3 t³ + c2 t² + c1 t + c0.
    pub fn characteristic_polynomial(&self) -> [i64; 4] {
        // Faddeev–LeVerrier, exact over the integers for 4×4.
        let mut coeffs = [0i64; 5];
        coeffs[4] = 1;
        let mut m_k = SpMatrix { entries: [[0; 4]; 4] };
        for k in 1..=4i64 {
            let mut next = *self * m_k;
            for i in 0..4 {
                next.entries[i][i] += coeffs[(4 - k + 1) as usize];
            }
            m_k = next;
            let tr = (*self * m_k).trace();
            coeffs[(4 - k) as usize] = -tr / k;
        }
        [coeffs[0], coeffs[1], coeffs[2], coeffs[3]]
    }

    pub fn apply(&self, v: &[i64; 4]) -> [i64; 4] {
        let mut out = [0; 4];
        for (i, o) in out.iter_mut().enumerate() {
            *o = (0..4).map(|j| self.entries[i][j] * v[j]).sum();
        }
        out
    }
}

impl Mul for SpMatrix {
    type Output = SpMatrix;

    fn mul(self, rhs: SpMatrix) -> SpMatrix {
        let mut e = [[0; 4]; 4];
        for (i, row) in e.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = (0..4).map(|k| self.entries[i][k] * rhs.entries[k][j]).sum();
            }
        }
        SpMatrix { entries: e }
    }
}

impl fmt::Display for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{:>4} {:>4} {:>4} {:>4}", row[0], row[1], row[2], row[3])?;
        }
        Ok(())
    }
}

pub fn letter_matrix(l: SignedGenerator) -> SpMatrix {
    match l.gen {
        Generator::Sigma => {
            let block = super::word::sigma_expansion();
            let m = sp_image(&block);
            match l.sign {
                Sign::Plus => m,
                Sign::Minus => m.symplectic_inverse(),
            }
        }
        g => {
            let c = chain_class(g.index().expect("zeta generator"));
            SpMatrix::transvection(&c, l.sign.as_i32() as i64)
        }
    }
}

/// Homology action of a word; a monoid homomorphism.
pub fn sp_image(w: &Word) -> SpMatrix {
    w.letters()
        .iter()
        .fold(SpMatrix::identity(), |acc, &l| acc * letter_matrix(l))
}

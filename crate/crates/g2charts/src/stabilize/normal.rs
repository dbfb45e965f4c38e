//! Energy and the stabilized normal form of a count vector.

use std::fmt;

use thiserror::Error;

use crate::hurwitz::FiberCounts;

/// `nI+ − nI− − 28(nII+ − nII−)`.
pub fn energy(c: FiberCounts) -> i64 {
    c.n_i_plus as i64 - c.n_i_minus as i64 - 28 * (c.n_ii_plus as i64 - c.n_ii_minus as i64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct NormalForm {
    pub energy: i64,
    pub epsilon: u8,
    pub a: i64,
    pub b: u64,
    pub c: u64,
    pub d: u64,
    pub e: u64,
    /// Number of N0 copies known to suffice; `None` when no bound is known.
    pub m0: Option<u64>,
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "E={} eps={} a={} b={} c={} d={} e={} m0=",
            self.energy, self.epsilon, self.a, self.b, self.c, self.d, self.e
        )?;
        match self.m0 {
            Some(m) => write!(f, "{m}"),
            None => f.write_str("Unknown"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalFormError {
    #[error("normal form needs nII+ >= nII-, got nII+={plus} nII-={minus}")]
    MoreNegativeII { plus: u64, minus: u64 },
    #[error("energy {0} is not a multiple of 10; these counts are not realizable")]
    EnergyNotMultipleOfTen(i64),
}

pub fn normal_form(counts: FiberCounts) -> Result<NormalForm, NormalFormError> {
    if counts.n_ii_plus < counts.n_ii_minus {
        return Err(NormalFormError::MoreNegativeII { plus: counts.n_ii_plus, minus: counts.n_ii_minus });
    }
    let energy = energy(counts);
    if energy % 10 != 0 {
        return Err(NormalFormError::EnergyNotMultipleOfTen(energy));
    }
    let epsilon = (energy / 10).rem_euclid(2) as u8;
    let m0 = (counts.n_ii_minus == 0).then(|| counts.n_i_minus + 2 * counts.n_ii_plus + 1);
    Ok(NormalForm {
        energy,
        epsilon,
        a: (energy - 30 * epsilon as i64) / 20,
        b: epsilon as u64,
        c: counts.n_ii_plus - counts.n_ii_minus,
        d: counts.n_i_minus,
        e: counts.n_ii_minus,
        m0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn energy_of_table_rows() {
        assert_eq!(energy(FiberCounts::new(20, 0, 0, 0)), 20);
        assert_eq!(energy(FiberCounts::new(28, 0, 1, 0)), 0);
        assert_eq!(energy(FiberCounts::default()), 0);
    }

    #[test]
    fn f2_row() {
        let nf = normal_form(FiberCounts::new(28, 0, 1, 0)).unwrap();
        assert_eq!(nf.to_string(), "E=0 eps=0 a=0 b=0 c=1 d=0 e=0 m0=3");
    }

    #[test]
    fn separating_pair_has_no_bound() {
        let nf = normal_form(FiberCounts::new(0, 0, 1, 1)).unwrap();
        assert_eq!((nf.c, nf.d, nf.e, nf.m0), (0, 0, 1, None));
        assert_eq!((nf.energy, nf.a, nf.b), (0, 0, 0));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(normal_form(FiberCounts::new(0, 0, 0, 1)), Err(NormalFormError::MoreNegativeII { .. })));
        assert!(matches!(normal_form(FiberCounts::new(7, 0, 0, 0)), Err(NormalFormError::EnergyNotMultipleOfTen(7))));
    }

    #[test]
    fn negative_energy() {
        let nf = normal_form(FiberCounts::new(0, 10, 0, 0)).unwrap();
        assert_eq!((nf.energy, nf.epsilon, nf.a, nf.b, nf.d, nf.m0), (-10, 1, -2, 1, 10, Some(11)));
    }

    proptest! {
        #[test]
        fn normal_form_balances(ip in 0u64..400, im in 0u64..50, iip in 0u64..10, extra in 0u64..10) {
            let iim = iip.saturating_sub(extra);
            let counts = FiberCounts::new(ip, im, iip, iim);
            if let Ok(nf) = normal_form(counts) {
                prop_assert_eq!(20 * nf.a + 30 * nf.b as i64, nf.energy);
                prop_assert!(nf.b <= 1);
                prop_assert_eq!(nf.epsilon as u64, nf.b);
            } else {
                prop_assert!(energy(counts) % 10 != 0);
            }
        }

        #[test]
        fn energy_is_additive(a in (0u64..99, 0u64..99, 0u64..9, 0u64..9), b in (0u64..99, 0u64..99, 0u64..9, 0u64..9)) {
            let x = FiberCounts::new(a.0, a.1, a.2, a.3);
            let y = FiberCounts::new(b.0, b.1, b.2, b.3);
            prop_assert_eq!(energy(x + y), energy(x) + energy(y));
        }
    }
}

//! Extraction of psi-class intersection numbers against the combinatorial
//! cycles from the coefficients of Kontsevich polynomials: the coefficient
//! of b^{2d} in the unlabeled polynomial is <tau_d> / (2^{5g-6+2n-2M} d!),
//! where M = sum_i m_i (i - 1) and m_i is the number of (2i+1)-valent
//! vertices.

use super::KontsevichEntry;
use crate::exact::{factorial, Rat};
use num_bigint::BigInt;
use num_traits::One;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionNumber {
    /// The psi exponents (d_1, ..., d_n).
    pub d: Vec<u32>,
    /// <tau_d> against the combinatorial cycle of the entry's m_*.
    pub value: Rat,
}

/// All intersection numbers readable off an entry, one per monomial of the
/// unlabeled polynomial, in monomial order.
pub fn intersection_number_report(entry: &KontsevichEntry) -> Vec<IntersectionNumber> {
    // M = sum m_i (i-1) with m_i = mu_{2i+1}(kappa)
    let m_shift: i64 = entry
        .kappa
        .multiplicities()
        .iter()
        .map(|&(v, mult)| {
            let i = (v - 1) / 2;
            mult as i64 * (i - 1)
        })
        .sum();
    let exp = 5 * entry.g as i64 - 6 + 2 * entry.n as i64 - 2 * m_shift;
    let two_pow = if exp >= 0 {
        Rat::from_integer(BigInt::from(2u32).pow(exp as u32))
    } else {
        Rat::one() / Rat::from_integer(BigInt::from(2u32).pow((-exp) as u32))
    };
    let mut out = Vec::new();
    for (exps, coeff) in entry.unlabeled.terms() {
        debug_assert!(exps.iter().all(|&e| e % 2 == 0));
        let d: Vec<u32> = exps.iter().map(|&e| e / 2).collect();
        let mut dfact = Rat::one();
        for &di in &d {
            dfact *= factorial(di as u64);
        }
        out.push(IntersectionNumber {
            d,
            value: coeff * &two_pow * dfact,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};
    use crate::kontsevich::{kontsevich_polynomial, Source};
    use crate::partitions::OddPartition;

    fn kp(parts: &[i64]) -> OddPartition {
        OddPartition::valencies(parts.to_vec()).unwrap()
    }

    #[test]
    fn from_quadratic_entry() {
        // N_{1,1}^{[5,1]} = b^2/8 (unlabeled = b^2/8): m_* has m_0 = 1 and
        // m_2 = 1, so M = -1 + 2 = ... m_0 (i=0): -1; m_2 (i=2): +2; wait:
        // the 5-valent vertex has i = 2 contributing (i-1) = 1, the
        // univalent i = 0 contributing -1: M = 0, and the two-power is
        // 2^{5-6+2} = 2. <tau_1> = 1/8 * 2 * 1! = 1/4.
        let e = kontsevich_polynomial(1, 1, &kp(&[5, 1]), Source::Table).unwrap();
        let report = intersection_number_report(&e);
        assert_eq!(report, vec![IntersectionNumber { d: vec![1], value: rat(1, 4) }]);
    }

    #[test]
    fn from_constant_entry() {
        // N_{0,3}^{[3^2]} = 2, unlabeled 1: trivalent vertices have i = 1,
        // so M = 0 and the two-power is 2^{-6+6} = 1; <tau_{0,0,0}> = 1
        let e = kontsevich_polynomial(0, 3, &kp(&[3, 3]), Source::Table).unwrap();
        let report = intersection_number_report(&e);
        assert_eq!(report.len(), 1);
        assert_eq!(report[0].d, vec![0, 0, 0]);
        assert_eq!(report[0].value, rat_int(1));
        let _ = rat(1, 1);
    }

    #[test]
    fn zero_polynomial_gives_empty_report() {
        let entry = KontsevichEntry {
            g: 0,
            n: 2,
            kappa: kp(&[3, 1]),
            unlabeled: crate::exact::Polynomial::zero(2),
            labeled: crate::exact::Polynomial::zero(2),
        };
        assert!(intersection_number_report(&entry).is_empty());
        let _ = rat_int(0);
    }
}

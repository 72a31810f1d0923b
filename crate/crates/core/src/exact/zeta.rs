use super::{factorial, rat_int, PiValue, Rat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use once_cell::sync::Lazy;
use std::sync::Mutex;

static BERNOULLI_CACHE: Lazy<Mutex<Vec<Rat>>> = Lazy::new(|| Mutex::new(vec![Rat::one()]));

/// Bernoulli number B_n in the convention B_1 = -1/2, via the defining
/// recurrence sum_{k=0}^{n} C(n+1,k) B_k = 0.
pub fn bernoulli(n: u32) -> Rat {
    let mut cache = BERNOULLI_CACHE.lock().unwrap();
    while cache.len() <= n as usize {
        let m = cache.len(); // computing B_m
        let mut acc = Rat::zero();
        for (k, bk) in cache.iter().enumerate() {
            let c = super::binomial(m as u64 + 1, k as u64);
            acc += Rat::from_integer(c) * bk;
        }
        let bm = -acc / Rat::from_integer(BigInt::from(m as u64 + 1));
        cache.push(bm);
    }
    cache[n as usize].clone()
}

/// zeta(2k) as an exact rational multiple of pi^{2k}:
/// zeta(2k) = (-1)^{k+1} B_{2k} (2 pi)^{2k} / (2 (2k)!).
///
/// Odd or non-positive arguments are rejected: they cannot arise from valid
/// graph polynomials, so hitting one is a logic bug upstream.
pub fn zeta_even(arg: i64) -> Result<PiValue> {
    if arg <= 0 || arg % 2 != 0 {
        return Err(Error::OddZeta(arg));
    }
    let two_k = arg as u32;
    let k = two_k / 2;
    let sign = if k % 2 == 1 { Rat::one() } else { -Rat::one() };
    let b = bernoulli(two_k);
    let two_pow = Rat::from_integer(BigInt::from(2u32).pow(two_k));
    let coeff = sign * b * two_pow / (rat_int(2) * factorial(two_k as u64));
    Ok(PiValue::new(coeff, two_k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn bernoulli_small() {
        assert_eq!(bernoulli(0), rat_int(1));
        assert_eq!(bernoulli(1), rat(-1, 2));
        assert_eq!(bernoulli(2), rat(1, 6));
        assert_eq!(bernoulli(3), rat_int(0));
        assert_eq!(bernoulli(4), rat(-1, 30));
        assert_eq!(bernoulli(6), rat(1, 42));
        assert_eq!(bernoulli(12), rat(-691, 2730));
    }

    #[test]
    fn zeta_values() {
        assert_eq!(zeta_even(2).unwrap(), PiValue::new(rat(1, 6), 2));
        assert_eq!(zeta_even(4).unwrap(), PiValue::new(rat(1, 90), 4));
        assert_eq!(zeta_even(6).unwrap(), PiValue::new(rat(1, 945), 6));
        assert_eq!(zeta_even(8).unwrap(), PiValue::new(rat(1, 9450), 8));
        assert!(matches!(zeta_even(3), Err(Error::OddZeta(3))));
        assert!(matches!(zeta_even(0), Err(Error::OddZeta(0))));
        assert!(matches!(zeta_even(-2), Err(Error::OddZeta(-2))));
    }

    /// Partial sums of 1/n^{2k} with an Euler-Maclaurin tail correction agree
    /// with the closed form to relative error < 1e-9.
    #[test]
    fn zeta_matches_partial_sums() {
        for k in 1..=10u32 {
            let s = 2 * k as i64;
            let exact = zeta_even(s).unwrap().approx();
            let n_terms = 1_000_000u64;
            let mut sum = 0.0f64;
            for n in (1..=n_terms).rev() {
                sum += 1.0 / (n as f64).powi(s as i32);
            }
            // tail: integral estimate 1/((s-1) N^{s-1}) plus half-term
            let nf = n_terms as f64;
            let tail = 1.0 / ((s as f64 - 1.0) * nf.powi(s as i32 - 1))
                + 0.5 / nf.powi(s as i32);
            let approx = sum + tail;
            let rel = ((approx - exact) / exact).abs();
            assert!(rel < 1e-9, "zeta({s}): rel err {rel}");
        }
    }
}

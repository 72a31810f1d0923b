//! Exact rational arithmetic, pi-graded values, even zeta values and sparse
//! multivariate polynomials.

mod pivalue;
mod poly;
mod zeta;

pub use pivalue::PiValue;
pub use poly::{Assignment, Monomial, Polynomial};
pub use zeta::{bernoulli, zeta_even};

use num_bigint::BigInt;

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator (guaranteed by `num_rational`).
pub type Rat = num_rational::BigRational;

/// Rational from a pair of machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an integer.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(BigInt::from(num))
}

/// Parse "a/b" or "a" into a rational.
pub fn parse_rat(s: &str) -> crate::Result<Rat> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = n
        .trim()
        .parse()
        .map_err(|_| crate::Error::Parse(format!("bad rational {s:?}")))?;
    let den: BigInt = d
        .trim()
        .parse()
        .map_err(|_| crate::Error::Parse(format!("bad rational {s:?}")))?;
    if den == BigInt::from(0) {
        return Err(crate::Error::Parse(format!("zero denominator in {s:?}")));
    }
    Ok(Rat::new(num, den))
}

/// Renders a rational without the denominator when it is integral.
pub fn rat_display(r: &Rat) -> String {
    if r.denom() == &BigInt::from(1) {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// n! as a rational.
pub fn factorial(n: u64) -> Rat {
    let mut acc = BigInt::from(1);
    for k in 2..=n {
        acc *= BigInt::from(k);
    }
    Rat::from_integer(acc)
}

/// Binomial coefficient C(n, k) as a big integer (0 when k > n).
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let k = k.min(n - k);
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Double factorial n!! with the usual conventions (-1)!! = 0!! = 1.
pub fn double_factorial(n: i64) -> Rat {
    assert!(n >= -1, "double factorial of n < -1");
    let mut acc = BigInt::from(1);
    let mut k = n;
    while k >= 2 {
        acc *= BigInt::from(k);
        k -= 2;
    }
    Rat::from_integer(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorials_and_binomials() {
        assert_eq!(factorial(0), rat_int(1));
        assert_eq!(factorial(5), rat_int(120));
        assert_eq!(binomial(6, 2), BigInt::from(15));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(double_factorial(-1), rat_int(1));
        assert_eq!(double_factorial(7), rat_int(105));
        assert_eq!(double_factorial(6), rat_int(48));
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rat("5/9").unwrap(), rat(5, 9));
        assert_eq!(parse_rat("-7").unwrap(), rat_int(-7));
        assert_eq!(parse_rat("4506281/7144200").unwrap(), rat(4506281, 7144200));
        assert!(parse_rat("1/0").is_err());
    }
}

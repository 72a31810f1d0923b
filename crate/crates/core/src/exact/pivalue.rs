use super::Rat;
use crate::{Error, Result};
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// An exact rational multiple of an integer power of pi.
///
/// Addition is only defined between values of equal `pi_power`; the zero
/// value is stored with `pi_power = 0` and is compatible with every grade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiValue {
    coeff: Rat,
    pi_power: u32,
}

impl PiValue {
    pub fn new(coeff: Rat, pi_power: u32) -> Self {
        if coeff.is_zero() {
            PiValue { coeff, pi_power: 0 }
        } else {
            PiValue { coeff, pi_power }
        }
    }

    pub fn zero() -> Self {
        PiValue::new(Rat::zero(), 0)
    }

    pub fn one() -> Self {
        PiValue::new(Rat::one(), 0)
    }

    pub fn coeff(&self) -> &Rat {
        &self.coeff
    }

    pub fn pi_power(&self) -> u32 {
        self.pi_power
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn checked_add(&self, other: &PiValue) -> Result<PiValue> {
        if self.is_zero() {
            return Ok(other.clone());
        }
        if other.is_zero() {
            return Ok(self.clone());
        }
        if self.pi_power != other.pi_power {
            return Err(Error::MixedPiGrade(self.pi_power, other.pi_power));
        }
        Ok(PiValue::new(&self.coeff + &other.coeff, self.pi_power))
    }

    pub fn mul(&self, other: &PiValue) -> PiValue {
        PiValue::new(&self.coeff * &other.coeff, self.pi_power + other.pi_power)
    }

    pub fn scale(&self, k: &Rat) -> PiValue {
        PiValue::new(&self.coeff * k, self.pi_power)
    }

    /// Approximate double value; for display only, never for assertions.
    pub fn approx(&self) -> f64 {
        let n = self.coeff.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
        let d = self.coeff.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
        n / d * std::f64::consts::PI.powi(self.pi_power as i32)
    }
}

/// Renders as "a/b * pi^d", in lowest terms, e.g. "5/9 * pi^4".
impl fmt::Display for PiValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/{} * pi^{}",
            self.coeff.numer(),
            self.coeff.denom(),
            self.pi_power
        )
    }
}

impl PiValue {
    pub fn parse(s: &str) -> Result<PiValue> {
        let (c, p) = s
            .split_once("* pi^")
            .ok_or_else(|| Error::Parse(format!("bad pi-value {s:?}")))?;
        let coeff = super::parse_rat(c)?;
        let pi_power: u32 = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad pi power in {s:?}")))?;
        Ok(PiValue::new(coeff, pi_power))
    }
}

/// JSON form: {"num": "...", "den": "...", "pi_power": d} with decimal strings.
#[derive(Serialize, Deserialize)]
struct PiValueJson {
    num: String,
    den: String,
    pi_power: u32,
}

impl Serialize for PiValue {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        PiValueJson {
            num: self.coeff.numer().to_string(),
            den: self.coeff.denom().to_string(),
            pi_power: self.pi_power,
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for PiValue {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = PiValueJson::deserialize(de)?;
        let num = raw.num.parse().map_err(serde::de::Error::custom)?;
        let den = raw.den.parse().map_err(serde::de::Error::custom)?;
        Ok(PiValue::new(Rat::new(num, den), raw.pi_power))
    }
}

impl PiValue {
    /// True when the value equals `num/den * pi^power`.
    pub fn eq_parts(&self, num: i64, den: i64, power: u32) -> bool {
        let want = PiValue::new(super::rat(num, den), power);
        *self == want
    }

    pub fn abs(&self) -> PiValue {
        PiValue::new(self.coeff.abs(), self.pi_power)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn grade_rules() {
        let a = PiValue::new(rat(1, 6), 2);
        let b = PiValue::new(rat(1, 3), 2);
        assert_eq!(a.checked_add(&b).unwrap(), PiValue::new(rat(1, 2), 2));
        let c = PiValue::new(rat(1, 90), 4);
        assert!(matches!(
            a.checked_add(&c),
            Err(Error::MixedPiGrade(2, 4))
        ));
        // zero is compatible with every grade and normalizes its own grade
        let z = PiValue::new(rat(0, 1), 7);
        assert_eq!(z.pi_power(), 0);
        assert_eq!(z.checked_add(&c).unwrap(), c);
        assert_eq!(a.mul(&c), PiValue::new(rat(1, 540), 6));
    }

    #[test]
    fn string_round_trip() {
        let v = PiValue::new(rat(5, 9), 4);
        assert_eq!(v.to_string(), "5/9 * pi^4");
        assert_eq!(PiValue::parse("5/9 * pi^4").unwrap(), v);
        let j = serde_json::to_string(&v).unwrap();
        assert_eq!(j, r#"{"num":"5","den":"9","pi_power":4}"#);
        let back: PiValue = serde_json::from_str(&j).unwrap();
        assert_eq!(back, v);
    }
}

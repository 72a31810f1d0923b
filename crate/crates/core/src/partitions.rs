//! Compositions and partitions of singularity / valency data, with the
//! combinatorial constants attached to them and stratum dimension
//! bookkeeping.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Ordered sequence of integer parts. Unlike a partition, the order matters.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Composition(pub Vec<i64>);

impl Composition {
    pub fn weight(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Forget the order (sorts parts descending).
    pub fn to_partition(&self) -> OddPartition {
        OddPartition::new(self.0.clone())
    }
}

/// Multiset of odd integer parts, stored sorted descending.
///
/// Two roles share this type: singularity degrees k (parts >= -1, simple
/// poles allowed) and vertex valencies kappa = k + 2 (parts >= 1).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct OddPartition(Vec<i64>);

impl OddPartition {
    /// Parts sorted descending; panics on even parts (callers validate the
    /// lower bound appropriate to their role via the checked constructors).
    pub fn new(mut parts: Vec<i64>) -> Self {
        assert!(
            parts.iter().all(|p| p % 2 != 0),
            "OddPartition requires odd parts, got {parts:?}"
        );
        parts.sort_unstable_by(|a, b| b.cmp(a));
        OddPartition(parts)
    }

    /// Singularity-degree role: odd parts >= -1.
    pub fn degrees(parts: Vec<i64>) -> Result<Self> {
        for &p in &parts {
            if p % 2 == 0 || p < -1 {
                return Err(Error::NotAStratum(format!(
                    "part {p} is not an odd integer >= -1"
                )));
            }
        }
        Ok(OddPartition::new(parts))
    }

    /// Valency role: odd parts >= 1.
    pub fn valencies(parts: Vec<i64>) -> Result<Self> {
        for &p in &parts {
            if p % 2 == 0 || p < 1 {
                return Err(Error::NotAStratum(format!(
                    "valency {p} is not an odd integer >= 1"
                )));
            }
        }
        Ok(OddPartition::new(parts))
    }

    pub fn parts(&self) -> &[i64] {
        &self.0
    }

    pub fn weight(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Part-wise shift: kappa = k + 2 and back.
    pub fn shift(&self, n: i64) -> OddPartition {
        OddPartition::new(self.0.iter().map(|p| p + n).collect())
    }

    /// Multiplicity of `i` among the parts.
    pub fn mu(&self, i: i64) -> usize {
        self.0.iter().filter(|&&p| p == i).count()
    }

    /// |Aut| = prod over part values of (multiplicity)!.
    pub fn aut_order(&self) -> u64 {
        self.multiplicities()
            .into_iter()
            .map(|(_, m)| factorial_u64(m as u64))
            .product()
    }

    /// c_kappa = prod over part values >= 2 of (multiplicity)!. Only the
    /// multiplicity of 1 is dropped compared to |Aut|.
    pub fn c_kappa(&self) -> u64 {
        self.multiplicities()
            .into_iter()
            .filter(|&(v, _)| v >= 2)
            .map(|(_, m)| factorial_u64(m as u64))
            .product()
    }

    /// Distinct part values with multiplicities, descending.
    pub fn multiplicities(&self) -> Vec<(i64, usize)> {
        let mut out: Vec<(i64, usize)> = Vec::new();
        for &p in &self.0 {
            match out.last_mut() {
                Some((v, m)) if *v == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }

    /// Genus and complex dimension of the stratum Q(k) for singularity data
    /// k: g = |k|/4 + 1 and d = 2g - 2 + l(k).
    pub fn stratum_genus_dim(&self) -> Result<(u32, u32)> {
        let w = self.weight();
        if w % 4 != 0 || w < -4 {
            return Err(Error::NotAStratum(format!(
                "weight {w} of {self} is not a non-negative multiple of 4 minus 4"
            )));
        }
        let g = w / 4 + 1;
        if g < 0 {
            return Err(Error::NotAStratum(format!("negative genus for {self}")));
        }
        let d = 2 * g - 2 + self.len() as i64;
        Ok((g as u32, d as u32))
    }

    /// Euler's relation for ribbon graphs with vertex valencies kappa, genus
    /// g and n boundary components: 2g - 2 + n = |kappa|/2 - l(kappa).
    pub fn euler_check(&self, g: u32, n: u32) -> bool {
        2 * (g as i64) - 2 + n as i64 == self.weight() / 2 - self.len() as i64
    }

    /// Number of boundary components forced by Euler's relation, if positive.
    pub fn euler_n(&self, g: u32) -> Option<u32> {
        let n = self.weight() / 2 - self.len() as i64 - 2 * (g as i64) + 2;
        (n >= 1).then_some(n as u32)
    }
}

fn factorial_u64(n: u64) -> u64 {
    (2..=n).product::<u64>().max(1)
}

/// Canonical rendering: comma-separated descending parts with power
/// shorthand, e.g. "3,-1^3".
impl fmt::Display for OddPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, m) in self.multiplicities() {
            if !first {
                write!(f, ",")?;
            }
            first = false;
            if m == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{m}")?;
            }
        }
        Ok(())
    }
}

/// Parse the CLI stratum syntax: comma-separated parts with optional power
/// shorthand, e.g. "3,-1^3" or "5,3,1,-1".
pub fn parse_parts(s: &str) -> Result<Vec<i64>> {
    let mut parts = Vec::new();
    for piece in s.split(',') {
        let piece = piece.trim();
        if piece.is_empty() {
            return Err(Error::Parse(format!("empty part in {s:?}")));
        }
        let (base, pow) = match piece.split_once('^') {
            Some((b, p)) => {
                let pow: u32 = p
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad power in {piece:?}")))?;
                (b, pow)
            }
            None => (piece, 1),
        };
        let v: i64 = base
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad part {piece:?}")))?;
        if pow == 0 {
            return Err(Error::Parse(format!("zero power in {piece:?}")));
        }
        for _ in 0..pow {
            parts.push(v);
        }
    }
    Ok(parts)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiplicities_and_aut() {
        let p = OddPartition::valencies(vec![5, 1, 1, 1]).unwrap();
        assert_eq!(p.mu(1), 3);
        assert_eq!(p.mu(7), 0);
        assert_eq!(p.aut_order(), 6);
        assert_eq!(p.c_kappa(), 1);

        let q = OddPartition::valencies(vec![5, 5, 1, 1]).unwrap();
        assert_eq!(q.aut_order(), 4);
        assert_eq!(q.c_kappa(), 2);

        let r = OddPartition::valencies(vec![3]).unwrap();
        assert_eq!(r.aut_order(), 1);

        let k = OddPartition::degrees(vec![3, -1, -1, -1]).unwrap();
        assert_eq!(k.mu(-1), 3);
    }

    #[test]
    fn aut_identity() {
        // |Aut(kappa)| = c_kappa * mu_1(kappa)!
        for parts in [
            vec![5, 1, 1, 1],
            vec![3, 3, 3, 1],
            vec![9, 3, 3, 3],
            vec![7, 5],
            vec![1, 1],
            vec![3, 3, 1, 1, 1, 1, 1],
        ] {
            let p = OddPartition::valencies(parts).unwrap();
            assert_eq!(
                p.aut_order(),
                p.c_kappa() * factorial_u64(p.mu(1) as u64)
            );
        }
    }

    #[test]
    fn genus_dim() {
        let k = OddPartition::degrees(vec![3, -1, -1, -1]).unwrap();
        assert_eq!(k.stratum_genus_dim().unwrap(), (1, 4));
        let k = OddPartition::degrees(vec![7, -1, -1, -1]).unwrap();
        assert_eq!(k.stratum_genus_dim().unwrap(), (2, 6));
        let k = OddPartition::degrees(vec![-1, -1, -1, -1]).unwrap();
        assert_eq!(k.stratum_genus_dim().unwrap(), (0, 2));
        let k = OddPartition::degrees(vec![3, -1]).unwrap();
        assert!(k.stratum_genus_dim().is_err());
    }

    #[test]
    fn euler() {
        let kappa = OddPartition::valencies(vec![5, 1, 1, 1]).unwrap();
        assert!(kappa.euler_check(0, 2));
        let kappa = OddPartition::valencies(vec![5, 1]).unwrap();
        assert!(kappa.euler_check(1, 1));
        let kappa = OddPartition::valencies(vec![3]).unwrap();
        assert!(!kappa.euler_check(0, 1));
    }

    #[test]
    fn stratum_syntax_round_trip() {
        for s in ["3,-1^3", "5,3,1,-1", "11,-1^3", "3^2,1^2", "-1^4"] {
            let parts = parse_parts(s).unwrap();
            let p = OddPartition::degrees(parts).unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert!(parse_parts("3,,1").is_err());
        assert!(parse_parts("3,x").is_err());
        assert!(OddPartition::degrees(parse_parts("2,-1").unwrap()).is_err());
        assert!(OddPartition::degrees(parse_parts("3,-3").unwrap()).is_err());
    }
}

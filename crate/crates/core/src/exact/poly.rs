use super::Rat;
use crate::{Error, Result};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

pub type Monomial = Vec<u32>;

/// Variable assignment for evaluation.
pub type Assignment = [Rat];

/// Sparse multivariate polynomial with rational coefficients.
///
/// Exponent vectors all have length `arity`; zero coefficients are never
/// stored. Variables print as b1..bn unless names are set explicitly.
/// Despite mostly housing polynomials with even exponents per variable,
/// arbitrary exponents are allowed (graph polynomials carry an extra single
/// power of each edge variable).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    arity: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(arity: usize, c: Rat) -> Self {
        let mut p = Polynomial::zero(arity);
        if !c.is_zero() {
            p.terms.insert(vec![0; arity], c);
        }
        p
    }

    pub fn one(arity: usize) -> Self {
        Polynomial::constant(arity, Rat::one())
    }

    /// The monomial `vars[i]^exps[i]` with coefficient `c`.
    pub fn monomial(arity: usize, exps: Monomial, c: Rat) -> Self {
        assert_eq!(exps.len(), arity);
        let mut p = Polynomial::zero(arity);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// Variable x_i (0-based) as a polynomial.
    pub fn var(arity: usize, i: usize) -> Self {
        let mut e = vec![0; arity];
        e[i] = 1;
        Polynomial::monomial(arity, e, Rat::one())
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Rat {
        self.terms.get(exps).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, exps: Monomial, c: &Rat) {
        assert_eq!(exps.len(), self.arity);
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            // re-borrow to remove; find the key via a linear probe is wasteful,
            // so do removal lazily
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        Ok(out)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        self.checked_add(other).expect("arity mismatch")
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-Rat::one()))
    }

    pub fn scale(&self, k: &Rat) -> Polynomial {
        if k.is_zero() {
            return Polynomial::zero(self.arity);
        }
        let mut out = Polynomial::zero(self.arity);
        for (e, c) in &self.terms {
            out.terms.insert(e.clone(), c * k);
        }
        out
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch(self.arity, other.arity));
        }
        let mut out = Polynomial::zero(self.arity);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Monomial = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, &(c1 * c2));
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        self.checked_mul(other).expect("arity mismatch")
    }

    /// Substitute variable `from` by variable `to` (exponents merge).
    pub fn substitute_var(&self, from: usize, to: usize) -> Polynomial {
        assert!(from < self.arity && to < self.arity);
        if from == to {
            return self.clone();
        }
        let mut out = Polynomial::zero(self.arity);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[to] += ne[from];
            ne[from] = 0;
            out.add_term(ne, c);
        }
        out
    }

    /// Exact evaluation at a rational point.
    pub fn evaluate(&self, point: &Assignment) -> Result<Rat> {
        if point.len() != self.arity {
            return Err(Error::ArityMismatch(self.arity, point.len()));
        }
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (x, &p) in point.iter().zip(e) {
                for _ in 0..p {
                    t *= x;
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Evaluation at an integer point.
    pub fn evaluate_int(&self, point: &[i64]) -> Rat {
        let pt: Vec<Rat> = point.iter().map(|&x| super::rat_int(x)).collect();
        self.evaluate(&pt).expect("arity")
    }

    pub fn degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum::<u32>())
            .max()
            .unwrap_or(0)
    }

    /// Homogeneous degree-d part.
    pub fn restrict_top_degree(&self, d: u32) -> Polynomial {
        let mut out = Polynomial::zero(self.arity);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() == d {
                out.terms.insert(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        match degs.next() {
            None => true,
            Some(d0) => degs.all(|d| d == d0),
        }
    }

    /// True when every exponent of every variable is even.
    pub fn has_only_even_exponents(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&p| p % 2 == 0))
    }

    /// True when invariant under every permutation of the variables
    /// (equivalently, under all adjacent transpositions).
    pub fn is_symmetric(&self) -> bool {
        for i in 0..self.arity.saturating_sub(1) {
            for (e, c) in &self.terms {
                let mut t = e.clone();
                t.swap(i, i + 1);
                if self.coeff(&t) != *c {
                    return false;
                }
            }
        }
        true
    }

    /// Projects onto a smaller arity by setting variable `i` to zero and
    /// removing it. Used by the string equation (evaluation at b_{n+1}=0).
    pub fn set_var_zero(&self, i: usize) -> Polynomial {
        assert!(i < self.arity);
        let mut out = Polynomial::zero(self.arity - 1);
        for (e, c) in &self.terms {
            if e[i] != 0 {
                continue;
            }
            let mut ne = e.clone();
            ne.remove(i);
            out.add_term(ne, c);
        }
        out
    }

    /// Sum over the orbit of the exponent pattern under variable
    /// permutations, each distinct monomial once: `symmetrize([4,2])` in
    /// arity 3 is `x1^4x2^2 + x1^4x3^2 + x2^4x1^2 + ...` (6 monomials),
    /// while `symmetrize([2,2])` is `x1^2x2^2 + x1^2x3^2 + x2^2x3^2`.
    pub fn symmetrize(arity: usize, pattern: &[u32], c: &Rat) -> Polynomial {
        assert!(pattern.len() <= arity, "pattern longer than arity");
        let mut out = Polynomial::zero(arity);
        let mut exps: Monomial = vec![0; arity];
        distribute(pattern, 0, &mut exps, &mut |e| {
            out.terms.insert(e.to_vec(), c.clone());
        });
        out
    }
}

/// Recursively place pattern entries onto distinct variables, skipping
/// duplicate placements for repeated pattern values (pattern is processed in
/// order; equal consecutive values only go to increasing variable indices).
fn distribute(pattern: &[u32], at: usize, exps: &mut [u32], emit: &mut impl FnMut(&[u32])) {
    if at == pattern.len() {
        emit(exps);
        return;
    }
    let start = if at > 0 && pattern[at] == pattern[at - 1] {
        // enforce increasing variable index among equal values
        exps.iter()
            .enumerate()
            .rev()
            .find(|(_, &x)| x == pattern[at])
            .map(|(i, _)| i + 1)
            .unwrap_or(0)
    } else {
        0
    };
    for i in start..exps.len() {
        if exps[i] != 0 {
            continue;
        }
        exps[i] = pattern[at];
        distribute(pattern, at + 1, exps, emit);
        exps[i] = 0;
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // highest total degree first, then lexicographic on exponents
        let mut items: Vec<_> = self.terms.iter().collect();
        items.sort_by(|(e1, _), (e2, _)| {
            let d1: u32 = e1.iter().sum();
            let d2: u32 = e2.iter().sum();
            d2.cmp(&d1).then_with(|| e2.cmp(e1))
        });
        for (idx, (e, c)) in items.iter().enumerate() {
            let mut mono = String::new();
            for (i, &p) in e.iter().enumerate() {
                if p == 0 {
                    continue;
                }
                if !mono.is_empty() {
                    mono.push('*');
                }
                if p == 1 {
                    mono.push_str(&format!("b{}", i + 1));
                } else {
                    mono.push_str(&format!("b{}^{}", i + 1, p));
                }
            }
            let neg = c.numer().sign() == num_bigint::Sign::Minus;
            let abs = if neg { -(*c).clone() } else { (*c).clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let coeff_str = if abs.denom() == &num_bigint::BigInt::from(1) {
                abs.numer().to_string()
            } else {
                format!("{}/{}", abs.numer(), abs.denom())
            };
            if mono.is_empty() {
                write!(f, "{coeff_str}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coeff_str}*{mono}")?;
            }
        }
        Ok(())
    }
}

/// JSON form: list of terms with exponent vector and rational coefficient
/// strings, in canonical (BTreeMap) order.
#[derive(Serialize, Deserialize)]
struct TermJson {
    exps: Vec<u32>,
    num: String,
    den: String,
}

#[derive(Serialize, Deserialize)]
struct PolyJson {
    arity: usize,
    terms: Vec<TermJson>,
}

impl Serialize for Polynomial {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        PolyJson {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermJson {
                    exps: e.clone(),
                    num: c.numer().to_string(),
                    den: c.denom().to_string(),
                })
                .collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let raw = PolyJson::deserialize(de)?;
        let mut p = Polynomial::zero(raw.arity);
        for t in raw.terms {
            let num: num_bigint::BigInt = t.num.parse().map_err(serde::de::Error::custom)?;
            let den: num_bigint::BigInt = t.den.parse().map_err(serde::de::Error::custom)?;
            p.add_term(t.exps, &Rat::new(num, den));
        }
        Ok(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{rat, rat_int};

    #[test]
    fn evaluate_spec_case() {
        // 3/4 (b1^2 + b2^2) at (2, 2) = 6
        let p = Polynomial::symmetrize(2, &[2], &rat(3, 4));
        assert_eq!(p.evaluate_int(&[2, 2]), rat_int(6));
    }

    #[test]
    fn top_degree_of_homogeneous_is_identity() {
        let p = Polynomial::symmetrize(3, &[4, 2], &rat(1, 2));
        assert!(p.is_homogeneous());
        assert_eq!(p.restrict_top_degree(6), p);
        assert!(p.is_symmetric());
        assert!(p.has_only_even_exponents());
    }

    #[test]
    fn multiply_by_one() {
        let b1 = Polynomial::var(2, 0);
        assert_eq!(b1.mul(&Polynomial::one(2)), b1);
    }

    #[test]
    fn symmetrize_orbits() {
        // [2,2] in 2 vars: single monomial b1^2 b2^2
        let p = Polynomial::symmetrize(2, &[2, 2], &rat_int(1));
        assert_eq!(p.num_terms(), 1);
        // [4,2] in 2 vars: two monomials
        let q = Polynomial::symmetrize(2, &[4, 2], &rat_int(1));
        assert_eq!(q.num_terms(), 2);
        // [2,2] in 3 vars: three monomials
        let r = Polynomial::symmetrize(3, &[2, 2], &rat_int(1));
        assert_eq!(r.num_terms(), 3);
        // [4,2] in 3 vars: six
        let s = Polynomial::symmetrize(3, &[4, 2], &rat_int(1));
        assert_eq!(s.num_terms(), 6);
        // [2,2,2] in 3 vars: one
        let t = Polynomial::symmetrize(3, &[2, 2, 2], &rat_int(1));
        assert_eq!(t.num_terms(), 1);
    }

    #[test]
    fn substitution_merges_exponents() {
        // b1*b2^2 with b2 -> b1 gives b1^3
        let p = Polynomial::monomial(2, vec![1, 2], rat_int(1));
        let q = p.substitute_var(1, 0);
        assert_eq!(q.coeff(&[3, 0]), rat_int(1));
    }

    #[test]
    fn display_canonical() {
        let p = Polynomial::symmetrize(2, &[2], &rat(3, 4));
        assert_eq!(p.to_string(), "3/4*b1^2 + 3/4*b2^2");
        let one = Polynomial::one(1);
        assert_eq!(one.to_string(), "1");
    }
}

//! Expansion of a completed volume into the true volume plus boundary
//! product strata, by the change of variables
//!   [k]bar = [k] + sum over k' < k, k' = k mod 4 of (k'+2) c_{k,k'} [k'],
//! where c_{k,k'} collects products of minimal abelian strata weights:
//!   c_{k,k'} = sum_{m>0} k!!/(k-2m+2)!! 1/(m! 2^m)
//!              sum_{g_1+..+g_m = (k-k')/4, g_i>0} prod (2 g_i - 1) [H(2g_i-2)].
//!
//! Two implementations are kept: the literal substitute-and-expand route,
//! and a closed-form sum over genus vectors with per-part partitions. Both
//! must agree; the cross-check runs in the tests.

use crate::exact::{double_factorial, rat_int, Rat};
use crate::partitions::OddPartition;
use num_traits::One;
use std::collections::BTreeMap;

/// A product of a (possibly smaller) quadratic stratum with minimal abelian
/// strata H(2g-2), g from `abelian` (sorted multiset).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ProductStratumSpec {
    pub quadratic: OddPartition,
    pub abelian: Vec<u32>,
}

impl ProductStratumSpec {
    pub fn plain(quadratic: OddPartition) -> Self {
        ProductStratumSpec {
            quadratic,
            abelian: Vec::new(),
        }
    }

    pub fn is_plain(&self) -> bool {
        self.abelian.is_empty()
    }

    /// Complex dimension: d(quadratic) + sum of 2 g_i.
    pub fn dim(&self) -> u32 {
        let (_, d) = self
            .quadratic
            .stratum_genus_dim()
            .expect("expansion produces valid strata");
        d + 2 * self.abelian.iter().sum::<u32>()
    }

    pub fn render(&self) -> String {
        let mut s = format!("Q({})", self.quadratic);
        for &g in &self.abelian {
            s.push_str(&format!(" x H({})", 2 * g - 2));
        }
        s
    }
}

/// One substitution option for a single part k: it becomes k' and spins off
/// abelian factors with the listed genera, with the given coefficient
/// (the leading option is (k, 1, [])).
fn part_options(k: i64) -> Vec<(i64, Rat, Vec<u32>)> {
    let mut out = vec![(k, Rat::one(), Vec::new())];
    let mut kp = k - 4;
    while kp >= -1 {
        let total_genus = ((k - kp) / 4) as u32;
        // partitions mu of total_genus; each contributes
        // (k'+2) * k!!/(k-2m+2)!! * 1/(2^m prod mult!) * prod (2 mu_j - 1)
        for mu in partitions_of(total_genus) {
            let m = mu.len() as i64;
            let mut coeff = rat_int(kp + 2);
            coeff *= double_factorial(k) / double_factorial(k - 2 * m + 2);
            coeff /= rat_int(1i64 << m);
            let mut mult_run = 1i64;
            let mut prev = 0u32;
            let mut run = 0i64;
            for &gj in &mu {
                coeff *= rat_int(2 * gj as i64 - 1);
                if gj == prev {
                    run += 1;
                } else {
                    prev = gj;
                    run = 1;
                }
                mult_run *= run;
            }
            coeff /= rat_int(mult_run); // 1 / prod (multiplicity!)
            out.push((kp, coeff, mu));
        }
        kp -= 4;
    }
    out
}

fn partitions_of(n: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(left: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for v in (1..=left.min(max)).rev() {
            cur.push(v);
            rec(left - v, v, cur, out);
            cur.pop();
        }
    }
    rec(n, n.max(1), &mut cur, &mut out);
    out
}

/// Literal substitute-and-expand implementation, collecting like terms under
/// partition equivalence. The list starts with the leading term
/// (1, Q(k) itself) and is sorted deterministically.
pub fn theorem1_expand(k: &OddPartition) -> Vec<(Rat, ProductStratumSpec)> {
    let per_part: Vec<Vec<(i64, Rat, Vec<u32>)>> =
        k.parts().iter().map(|&p| part_options(p)).collect();
    let mut acc: BTreeMap<ProductStratumSpec, Rat> = BTreeMap::new();
    let mut choice = vec![0usize; per_part.len()];
    loop {
        // assemble this combination
        let mut parts = Vec::with_capacity(per_part.len());
        let mut coeff = Rat::one();
        let mut abelian: Vec<u32> = Vec::new();
        for (i, &c) in choice.iter().enumerate() {
            let (kp, ref w, ref mu) = per_part[i][c];
            parts.push(kp);
            coeff *= w;
            abelian.extend_from_slice(mu);
        }
        abelian.sort_unstable();
        let spec = ProductStratumSpec {
            quadratic: OddPartition::new(parts),
            abelian,
        };
        *acc.entry(spec).or_insert_with(|| rat_int(0)) += coeff;

        // odometer over the choices
        let mut i = 0;
        loop {
            if i == choice.len() {
                break;
            }
            choice[i] += 1;
            if choice[i] < per_part[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == choice.len() {
            break;
        }
    }
    finish_terms(acc)
}

/// Drops identically-zero terms: zero coefficients, and products whose
/// quadratic factor has negative genus (no such stratum exists, so its
/// volume vanishes; the tabulated rows with equal completed and true
/// volumes confirm this reading).
fn finish_terms(acc: BTreeMap<ProductStratumSpec, Rat>) -> Vec<(Rat, ProductStratumSpec)> {
    let mut out: Vec<(Rat, ProductStratumSpec)> = acc
        .into_iter()
        .filter(|(s, c)| {
            !num_traits::Zero::is_zero(c) && s.quadratic.stratum_genus_dim().is_ok()
        })
        .map(|(s, c)| (c, s))
        .collect();
    // leading term first, then by dimension drop and rendering
    out.sort_by_key(|(_, s)| (!s.is_plain() as u8, std::cmp::Reverse(s.dim()), s.render()));
    out
}

/// Closed-sum implementation: iterate genus vectors g_i per part and
/// per-part partitions directly. Must agree with `theorem1_expand`.
pub fn theorem1_expand_closed(k: &OddPartition) -> Vec<(Rat, ProductStratumSpec)> {
    let parts = k.parts();
    let r = parts.len();
    let mut acc: BTreeMap<ProductStratumSpec, Rat> = BTreeMap::new();
    // genus vectors via odometer with per-part caps
    let caps: Vec<u32> = parts.iter().map(|&p| ((p + 1) / 4) as u32).collect();
    let mut gv = vec![0u32; r];
    loop {
        // per part with g_i > 0: iterate over per-part partitions jointly
        let active: Vec<usize> = (0..r).filter(|&i| gv[i] > 0).collect();
        let mut options: Vec<Vec<Vec<u32>>> = Vec::new();
        for &i in &active {
            options.push(partitions_of(gv[i]));
        }
        let mut pick = vec![0usize; active.len()];
        loop {
            let mut coeff = Rat::one();
            let mut abelian: Vec<u32> = Vec::new();
            let mut new_parts = parts.to_vec();
            for (slot, &i) in active.iter().enumerate() {
                let mu = &options[slot][pick[slot]];
                let kk = parts[i];
                let kp = kk - 4 * gv[i] as i64;
                new_parts[i] = kp;
                let m = mu.len() as i64;
                coeff *= rat_int(kp + 2);
                coeff *= double_factorial(kk) / double_factorial(kk - 2 * m + 2);
                coeff /= rat_int(1i64 << m);
                let mut prev = 0u32;
                let mut run = 0i64;
                for &gj in mu {
                    coeff *= rat_int(2 * gj as i64 - 1);
                    if gj == prev {
                        run += 1;
                    } else {
                        prev = gj;
                        run = 1;
                    }
                    coeff /= rat_int(run);
                }
                abelian.extend_from_slice(mu);
            }
            abelian.sort_unstable();
            let spec = ProductStratumSpec {
                quadratic: OddPartition::new(new_parts),
                abelian,
            };
            *acc.entry(spec).or_insert_with(|| rat_int(0)) += coeff;

            // advance partition picks
            let mut s = 0;
            loop {
                if s == pick.len() {
                    break;
                }
                pick[s] += 1;
                if pick[s] < options[s].len() {
                    break;
                }
                pick[s] = 0;
                s += 1;
            }
            if s == pick.len() {
                break;
            }
        }
        // advance genus vector
        let mut i = 0;
        loop {
            if i == r {
                break;
            }
            gv[i] += 1;
            if gv[i] <= caps[i] && parts[i] - 4 * gv[i] as i64 >= -1 {
                break;
            }
            gv[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    finish_terms(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;
    use crate::partitions::parse_parts;

    fn kd(s: &str) -> OddPartition {
        OddPartition::degrees(parse_parts(s).unwrap()).unwrap()
    }

    #[test]
    fn expansion_of_worked_example() {
        // [3,-1^3]: leading + 1/2 Q(-1^4) x H(0)
        let terms = theorem1_expand(&kd("3,-1^3"));
        assert_eq!(terms.len(), 2);
        assert_eq!(terms[0].0, rat(1, 1));
        assert!(terms[0].1.is_plain());
        assert_eq!(terms[1].0, rat(1, 2));
        assert_eq!(terms[1].1.quadratic, kd("-1^4"));
        assert_eq!(terms[1].1.abelian, vec![1]);
    }

    #[test]
    fn expansion_of_seven() {
        // [7,-1^3]: 1 Q(7,-1^3) + 5/2 Q(3,-1^3)xH(0) + 3/2 Q(-1^4)xH(2)
        //           + 7/8 Q(-1^4)xH(0)^2
        let terms = theorem1_expand(&kd("7,-1^3"));
        assert_eq!(terms.len(), 4);
        let find = |q: &str, ab: &[u32]| -> Rat {
            terms
                .iter()
                .find(|(_, s)| s.quadratic == kd(q) && s.abelian == ab)
                .map(|(c, _)| c.clone())
                .unwrap()
        };
        assert_eq!(find("7,-1^3", &[]), rat(1, 1));
        assert_eq!(find("3,-1^3", &[1]), rat(5, 2));
        assert_eq!(find("-1^4", &[2]), rat(3, 2));
        assert_eq!(find("-1^4", &[1, 1]), rat(7, 8));
    }

    #[test]
    fn single_h0_for_three_minus_one_families() {
        // all parts in {-1, 3}: only single H(0) corrections appear
        let terms = theorem1_expand(&kd("3^3,-1"));
        for (_, s) in &terms {
            assert!(s.abelian.iter().all(|&g| g == 1));
            assert!(s.abelian.len() <= 3);
        }
    }

    #[test]
    fn closed_route_agrees() {
        for s in ["3,-1^3", "7,-1^3", "11,-1^3", "5,3,-1^4", "9,-1^5", "3^3,-1"] {
            let a = theorem1_expand(&kd(s));
            let b = theorem1_expand_closed(&kd(s));
            assert_eq!(a, b, "{s}");
        }
    }
}

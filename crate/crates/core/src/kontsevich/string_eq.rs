//! The evaluation-at-zero recursion for labeled Kontsevich polynomials:
//! setting one perimeter variable to zero relates an (n+1)-face entry to the
//! n-face entries with one valency reduced by two,
//!   N_{g,n+1}^{[k_1..k_r]}(b_1,...,b_n, 0)
//!     = sum over i with k_i >= 3 of (k_i - 2) N_{g,n}^{[.., k_i - 2, ..]}.

use super::{kontsevich_polynomial, Source};
use crate::exact::{rat_int, Polynomial};
use crate::partitions::OddPartition;
use crate::Result;

/// Verifies the recursion exactly for the entry (g, n_plus, kappa) with
/// n_plus >= 2 faces on the left side. Errors with Unavailable when some
/// required entry is missing from the source.
pub fn string_recursion_check(
    g: u32,
    n_plus: usize,
    kappa: &OddPartition,
    source: Source,
) -> Result<bool> {
    assert!(n_plus >= 2, "the recursion relates n+1 faces to n >= 1 faces");
    let lhs_entry = kontsevich_polynomial(g, n_plus, kappa, source)?;
    // evaluate at b_{n_plus} = 0 (symmetric, so the choice does not matter)
    let lhs = lhs_entry.labeled.set_var_zero(n_plus - 1);

    let mut rhs = Polynomial::zero(n_plus - 1);
    for (value, mult) in kappa.multiplicities() {
        if value < 3 {
            continue;
        }
        let mut parts = kappa.parts().to_vec();
        let pos = parts.iter().position(|&p| p == value).unwrap();
        parts[pos] = value - 2;
        let reduced = OddPartition::new(parts);
        let entry = kontsevich_polynomial(g, n_plus - 1, &reduced, source)?;
        let weight = rat_int(mult as i64 * (value - 2));
        rhs = rhs.add(&entry.labeled.scale(&weight));
    }
    Ok(lhs == rhs)
}

/// All (g, n, kappa) triples from the embedded table for which every entry
/// the recursion needs is also tabulated.
pub fn applicable_string_identities() -> Vec<(u32, usize, OddPartition)> {
    let mut out = Vec::new();
    for e in super::table_entries() {
        if e.n < 2 {
            continue;
        }
        let mut all_present = true;
        let mut any_term = false;
        for (value, _) in e.kappa.multiplicities() {
            if value < 3 {
                continue;
            }
            any_term = true;
            let mut parts = e.kappa.parts().to_vec();
            let pos = parts.iter().position(|&p| p == value).unwrap();
            parts[pos] = value - 2;
            let reduced = OddPartition::new(parts);
            if kontsevich_polynomial(e.g, e.n - 1, &reduced, Source::Table).is_err() {
                all_present = false;
                break;
            }
        }
        // identities with an empty right side assert that the left side
        // vanishes at zero, which is still a meaningful check
        let _ = any_term;
        if all_present {
            out.push((e.g, e.n, e.kappa.clone()));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::OddPartition;

    fn kp(parts: &[i64]) -> OddPartition {
        OddPartition::valencies(parts.to_vec()).unwrap()
    }

    #[test]
    fn worked_identity() {
        // N_{0,3}^{[5,1]}(b1,b2,0) = 3 = (5-2) N_{0,2}^{[3,1]}
        assert!(string_recursion_check(0, 3, &kp(&[5, 1]), Source::Table).unwrap());
    }

    #[test]
    fn all_applicable_table_identities_hold() {
        let ids = applicable_string_identities();
        assert!(ids.len() >= 10, "only {} applicable identities", ids.len());
        for (g, n, kappa) in ids {
            assert!(
                string_recursion_check(g, n, &kappa, Source::Table).unwrap(),
                "string recursion fails for N_({g},{n})^[{kappa}]"
            );
        }
    }
}

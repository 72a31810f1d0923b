//! Volumes of minimal abelian strata H(2g-2) in the standard normalization.
//!
//! H(0) = pi^2/3 is anchored. Higher entries are pinned by a linear solver
//! running over the embedded volume table: for each tabulated stratum the
//! completion defect (completed minus true volume) is a known linear
//! combination of products of minimal-strata volumes, so each row either
//! verifies the already-pinned entries or determines exactly one new entry.
//! An inconsistent row is a hard error. Entries beyond the pinnable range
//! must be supplied through overrides.

use super::table1::TABLE1;
use super::{product_volume_with, vol_with_table};
use crate::exact::{parse_rat, rat, PiValue, Rat};
use crate::kontsevich::Source;
use crate::partitions::{parse_parts, OddPartition};
use crate::{Error, Result};
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// Fixed from the worked pillowcase computation.
    Anchored,
    /// Determined by the named table row through the completion defect.
    Pinned { row: String },
    /// Supplied through configuration.
    UserSupplied,
}

#[derive(Clone, Debug)]
pub struct MinimalStratumVolumeTable {
    entries: BTreeMap<u32, (PiValue, Provenance)>,
}

impl MinimalStratumVolumeTable {
    pub fn anchored_only() -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(1u32, (PiValue::new(rat(1, 3), 2), Provenance::Anchored));
        MinimalStratumVolumeTable { entries }
    }

    /// Volume of H(2g-2).
    pub fn get(&self, genus: u32) -> Option<&PiValue> {
        self.entries.get(&genus).map(|(v, _)| v)
    }

    pub fn provenance(&self, genus: u32) -> Option<&Provenance> {
        self.entries.get(&genus).map(|(_, p)| p)
    }

    pub fn insert(&mut self, genus: u32, vol: PiValue, prov: Provenance) {
        self.entries.insert(genus, (vol, prov));
    }

    pub fn entries(&self) -> impl Iterator<Item = (&u32, &(PiValue, Provenance))> {
        self.entries.iter()
    }

    /// Apply user overrides (genus -> volume).
    pub fn with_overrides(mut self, overrides: &BTreeMap<u32, PiValue>) -> Self {
        for (&g, v) in overrides {
            self.entries
                .insert(g, (v.clone(), Provenance::UserSupplied));
        }
        self
    }
}

impl fmt::Display for MinimalStratumVolumeTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (g, (v, p)) in &self.entries {
            writeln!(f, "H({}) = {}  [{:?}]", 2 * g - 2, v, p)?;
        }
        Ok(())
    }
}

/// One verified or pinning row of the solver run.
#[derive(Clone, Debug)]
pub struct PinReport {
    pub stratum: String,
    pub outcome: PinOutcome,
}

#[derive(Clone, Debug)]
pub enum PinOutcome {
    /// Defect identity checked with all entries known.
    Verified,
    /// This row determined H(2g-2).
    Pinned { genus: u32, value: PiValue },
    /// Skipped: needs entries that never became available.
    Deferred { missing: String },
}

/// Runs the pinning solver over the embedded volume table. `max_dim` bounds
/// the rows used (10 covers the whole table). Inconsistency is a hard error.
pub fn pin_minimal_volumes(
    source: Source,
    max_dim: u32,
) -> Result<(MinimalStratumVolumeTable, Vec<PinReport>)> {
    let mut table = MinimalStratumVolumeTable::anchored_only();
    let mut reports: BTreeMap<&'static str, PinReport> = BTreeMap::new();
    let mut rows: Vec<&'static super::table1::VolumeRow> =
        TABLE1.iter().filter(|r| r.0 <= max_dim).collect();
    rows.sort_by_key(|r| r.0);

    let mut progress = true;
    while progress {
        progress = false;
        for row in &rows {
            let (d, _, stratum, vol_str, completed_str) = **row;
            if matches!(
                reports.get(stratum).map(|r| &r.outcome),
                Some(PinOutcome::Verified) | Some(PinOutcome::Pinned { .. })
            ) {
                continue;
            }
            let k = OddPartition::degrees(parse_parts(stratum)?)?;
            let defect = PiValue::new(
                parse_rat(completed_str)? - parse_rat(vol_str)?,
                d,
            );
            match try_row(&k, &defect, &table, source) {
                RowOutcome::Verified => {
                    reports.insert(
                        stratum,
                        PinReport {
                            stratum: stratum.to_string(),
                            outcome: PinOutcome::Verified,
                        },
                    );
                    progress = true;
                }
                RowOutcome::Pinned(genus, value) => {
                    table.insert(
                        genus,
                        value.clone(),
                        Provenance::Pinned {
                            row: stratum.to_string(),
                        },
                    );
                    reports.insert(
                        stratum,
                        PinReport {
                            stratum: stratum.to_string(),
                            outcome: PinOutcome::Pinned { genus, value },
                        },
                    );
                    progress = true;
                }
                RowOutcome::Inconsistent(msg) => {
                    return Err(Error::Unavailable(format!(
                        "pinning solver: row Q({stratum}) inconsistent: {msg}"
                    )));
                }
                RowOutcome::Deferred(missing) => {
                    reports.insert(
                        stratum,
                        PinReport {
                            stratum: stratum.to_string(),
                            outcome: PinOutcome::Deferred { missing },
                        },
                    );
                }
            }
        }
    }
    Ok((table, reports.into_values().collect()))
}

enum RowOutcome {
    Verified,
    Pinned(u32, PiValue),
    Inconsistent(String),
    Deferred(String),
}

/// Evaluates the defect identity of one row with the current table: the sum
/// over expansion terms of coeff * Vol(product). Terms whose abelian factors
/// contain exactly one unknown genus (with multiplicity one) stay symbolic in
/// that unknown; everything else must be computable.
fn try_row(
    k: &OddPartition,
    defect: &PiValue,
    table: &MinimalStratumVolumeTable,
    source: Source,
) -> RowOutcome {
    let terms = super::theorem1_expand(k);
    let mut known = PiValue::zero();
    // unknown genus -> accumulated coefficient PiValue (the defect is linear
    // in each unknown volume: completed and true tabulated values are fixed)
    let mut unknown: BTreeMap<u32, PiValue> = BTreeMap::new();
    for (coeff, spec) in terms.iter().skip(1) {
        let missing: Vec<u32> = spec
            .abelian
            .iter()
            .copied()
            .filter(|g| table.get(*g).is_none())
            .collect();
        if missing.len() > 1 {
            return RowOutcome::Deferred(format!(
                "term {} has several unknown minimal volumes",
                spec.render()
            ));
        }
        let volq = match quadratic_volume(&spec.quadratic, table, source) {
            Ok(v) => v,
            Err(e) => return RowOutcome::Deferred(format!("Vol {}: {e}", spec.render())),
        };
        if missing.is_empty() {
            let v = match product_volume_with(spec, table, &volq) {
                Ok(v) => v,
                Err(e) => return RowOutcome::Deferred(e.to_string()),
            };
            known = match known.checked_add(&v.scale(coeff)) {
                Ok(x) => x,
                Err(e) => return RowOutcome::Inconsistent(e.to_string()),
            };
        } else {
            let g_unknown = missing[0];
            // the unknown enters to the first power: compute the coefficient
            // by evaluating the product with the unknown set to 1 * pi^0
            let mut with_one = table.clone();
            with_one.insert(g_unknown, PiValue::one(), Provenance::UserSupplied);
            let v = match product_volume_with(spec, &with_one, &volq) {
                Ok(v) => v,
                Err(e) => return RowOutcome::Deferred(e.to_string()),
            };
            let slot = unknown.entry(g_unknown).or_insert_with(PiValue::zero);
            *slot = match slot.checked_add(&v.scale(coeff)) {
                Ok(x) => x,
                Err(_) => {
                    return RowOutcome::Deferred(
                        "unknown coefficient mixes grades (several unknowns)".into(),
                    )
                }
            };
        }
    }
    match unknown.len() {
        0 => {
            if known == *defect {
                RowOutcome::Verified
            } else {
                RowOutcome::Inconsistent(format!("defect {defect} but terms sum to {known}"))
            }
        }
        1 => {
            let (g_unknown, coeff) = unknown.into_iter().next().unwrap();
            // defect = known + coeff * x with x = c * pi^grade
            let residue = match defect.checked_add(&known.scale(&-Rat::one())) {
                Ok(r) => r,
                Err(e) => return RowOutcome::Inconsistent(e.to_string()),
            };
            if coeff.is_zero() {
                return RowOutcome::Deferred("unknown has zero coefficient".into());
            }
            let grade = residue.pi_power() as i64 - coeff.pi_power() as i64;
            if residue.is_zero() || grade < 0 {
                return RowOutcome::Inconsistent(format!(
                    "cannot solve for H({}) from residue {residue}",
                    2 * g_unknown - 2
                ));
            }
            let value = PiValue::new(residue.coeff() / coeff.coeff(), grade as u32);
            RowOutcome::Pinned(g_unknown, value)
        }
        _ => RowOutcome::Deferred("several unknown minimal volumes in one row".into()),
    }
}

/// Volume of a plain quadratic stratum for the solver: the embedded table
/// row when present, the pillowcase constant, or the recursive computation
/// with the current minimal table.
fn quadratic_volume(
    k: &OddPartition,
    table: &MinimalStratumVolumeTable,
    source: Source,
) -> Result<PiValue> {
    if k.parts().iter().all(|&p| p == -1) && k.len() == 4 {
        return Ok(PiValue::new(rat(2, 1), 2));
    }
    let s = k.to_string();
    for &(d, _, stratum, vol, _) in TABLE1 {
        if stratum == s {
            return Ok(PiValue::new(parse_rat(vol)?, d));
        }
    }
    vol_with_table(k, table, source).map(|b| b.vol.expect("vol_with_table fills vol"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pins_h2_and_h4() {
        let (table, _reports) = pin_minimal_volumes(Source::Table, 8).unwrap();
        assert_eq!(table.get(1), Some(&PiValue::new(rat(1, 3), 2)));
        assert_eq!(
            table.get(2),
            Some(&PiValue::new(rat(1, 120), 4)),
            "H(2) should pin to pi^4/120"
        );
        assert!(matches!(
            table.provenance(2),
            Some(Provenance::Pinned { row }) if row == "7,-1^3"
        ));
        // H(4) pins from the d=8 row with a part 11
        assert!(table.get(3).is_some());
        assert!(matches!(
            table.provenance(3),
            Some(Provenance::Pinned { row }) if row == "11,-1^3"
        ));
    }
}

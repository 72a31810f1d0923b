//! Assembly of completed and true Masur-Veech volumes: graph polynomials,
//! the zeta-value operator, the stable-graph sum, the boundary expansion and
//! the recursion to true volumes, along with exact square-tiled counts and
//! cylinder distributions.

mod minimal;
mod sqtiled;
pub mod table1;
mod theorem1;

pub use minimal::{pin_minimal_volumes, MinimalStratumVolumeTable, PinOutcome, PinReport, Provenance};
pub use sqtiled::{
    cylinder_distribution, square_tiled_count, square_tiled_count_product, trend_gap,
    volume_trend, CylinderDistribution, DistributionMode, SquareTiledCount, ONE_EDGE_NOTE,
};
pub use theorem1::{theorem1_expand, theorem1_expand_closed, ProductStratumSpec};

use crate::exact::{factorial, rat, rat_int, zeta_even, PiValue, Polynomial, Rat};
use crate::kontsevich::{kontsevich_polynomial, Source};
use crate::partitions::{parse_parts, OddPartition};
use crate::stable::{enumerate_stable_graphs, DecoratedStableGraph};
use crate::{Error, Result};
use once_cell::sync::Lazy;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Mutex;

/// An odd stratum of quadratic differentials in scope: all singularity
/// degrees odd and >= -1, weight 4g - 4, and at least three singularities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StratumSpec {
    pub k: OddPartition,
    pub kappa: OddPartition,
    pub genus: u32,
    pub dim: u32,
    pub poles: usize,
}

impl StratumSpec {
    pub fn new(k: OddPartition) -> Result<Self> {
        let (genus, dim) = k.stratum_genus_dim()?;
        if k.len() < 3 {
            let msg = if k.parts() == [1, -1] || k.parts() == [3, 1] {
                format!("Q({k}) is empty")
            } else {
                format!("Q({k}) has fewer than three singularities; out of scope")
            };
            return Err(Error::NotAStratum(msg));
        }
        let kappa = k.shift(2);
        let poles = k.mu(-1);
        Ok(StratumSpec {
            k,
            kappa,
            genus,
            dim,
            poles,
        })
    }

    pub fn parse(s: &str) -> Result<Self> {
        StratumSpec::new(OddPartition::degrees(parse_parts(s)?)?)
    }

    pub fn render(&self) -> String {
        format!("Q({})", self.k)
    }
}

/// Per stable graph record of the completed-volume sum.
#[derive(Clone, Debug)]
pub struct GraphContribution {
    pub graph: DecoratedStableGraph,
    pub aut: u64,
    pub c_gamma: Rat,
    pub p_gamma: Polynomial,
    pub zeta_value: PiValue,
    pub contribution: PiValue,
}

/// One boundary term of the expansion into true volumes.
#[derive(Clone, Debug)]
pub struct ExpansionTerm {
    pub coeff: Rat,
    pub spec: ProductStratumSpec,
    pub volume: PiValue,
    pub weighted: PiValue,
}

#[derive(Clone, Debug)]
pub struct VolumeBreakdown {
    pub stratum: StratumSpec,
    pub contributions: Vec<GraphContribution>,
    pub completed: PiValue,
    pub expansion: Vec<ExpansionTerm>,
    pub vol: Option<PiValue>,
}

/// The graph polynomial: the product of one power of every edge variable
/// with the labeled Kontsevich polynomials of the vertices, loop edges
/// substituting their variable twice.
pub fn build_p_gamma(graph: &DecoratedStableGraph, source: Source) -> Result<Polynomial> {
    let n_edges = graph.n_edges();
    let mut p = Polynomial::monomial(n_edges, vec![1; n_edges], rat_int(1));
    for (v, vertex) in graph.vertices.iter().enumerate() {
        let n_v = vertex.n_slots as usize;
        let entry = kontsevich_polynomial(graph.vertices[v].genus, n_v, &vertex.kappa, source)
            .map_err(|e| match e {
                Error::Unavailable(msg) => Error::Unavailable(format!(
                    "graph needs N_({},{})^[{}]: {msg}",
                    vertex.genus, n_v, vertex.kappa
                )),
                other => other,
            })?;
        let slots = graph.incident_edges(v);
        debug_assert_eq!(slots.len(), n_v);
        // embed the vertex polynomial into the edge variables; a loop edge
        // occupies two slots, merging exponents
        let mut embedded = Polynomial::zero(n_edges);
        for (exps, c) in entry.labeled.terms() {
            let mut e = vec![0u32; n_edges];
            for (slot, &edge) in slots.iter().enumerate() {
                e[edge] += exps[slot];
            }
            embedded.add_term(e, c);
        }
        p = p.mul(&embedded);
    }
    Ok(p)
}

/// The zeta-value operator: on a monomial prod b_i^{d_i} it yields
/// prod d_i! zeta(d_i + 1) / (sum (d_i + 1))!, extended linearly. Every
/// variable must appear with positive exponent in every monomial.
pub fn zeta_operator(p: &Polynomial) -> Result<PiValue> {
    let mut acc = PiValue::zero();
    for (exps, c) in p.terms() {
        if exps.iter().any(|&e| e == 0) {
            return Err(Error::Parse(format!(
                "zeta operator needs positive exponents in every variable: {p}"
            )));
        }
        let grade: i64 = exps.iter().map(|&e| e as i64 + 1).sum();
        let mut term = PiValue::new(c / factorial(grade as u64), 0);
        for &e in exps {
            let z = zeta_even(e as i64 + 1)?;
            term = term.mul(&z.scale(&factorial(e as u64)));
        }
        acc = acc.checked_add(&term)?;
    }
    Ok(acc)
}

/// c_d = 2^d * 2d.
fn c_d(d: u32) -> Rat {
    rat_int(2).pow(d as i32) * rat_int(2 * d as i64)
}

/// The completed volume as a stable-graph sum, with the full per-graph
/// breakdown. Expansion terms and the true volume are left empty here; see
/// `masur_veech_volume`.
pub fn completed_volume(s: &StratumSpec, source: Source) -> Result<VolumeBreakdown> {
    completed_volume_with(s, source)
}

fn completed_volume_with(s: &StratumSpec, source: Source) -> Result<VolumeBreakdown> {
    let graphs = enumerate_stable_graphs(s.genus, &s.kappa);
    let c_kappa = rat_int(s.kappa.c_kappa() as i64);
    let cd = c_d(s.dim);
    let contributions: Result<Vec<GraphContribution>> = graphs
        .par_iter()
        .map(|graph| {
            let p_gamma = build_p_gamma(graph, source)?;
            let zeta_value = zeta_operator(&p_gamma)?;
            let c_gamma = graph.c_gamma();
            let c_kv: Rat = graph
                .vertices
                .iter()
                .map(|v| rat_int(v.kappa.c_kappa() as i64))
                .product();
            let weight = &cd * &c_kappa / c_kv * &c_gamma;
            let contribution = zeta_value.scale(&weight);
            if !contribution.is_zero() && contribution.pi_power() != s.dim {
                return Err(Error::MixedPiGrade(contribution.pi_power(), s.dim));
            }
            Ok(GraphContribution {
                graph: graph.clone(),
                aut: graph.aut_order(),
                c_gamma,
                p_gamma,
                zeta_value,
                contribution,
            })
        })
        .collect();
    let contributions = contributions?;
    let mut completed = PiValue::zero();
    for c in &contributions {
        completed = completed.checked_add(&c.contribution)?;
    }
    Ok(VolumeBreakdown {
        stratum: s.clone(),
        contributions,
        completed,
        expansion: Vec::new(),
        vol: None,
    })
}

/// Volume of a product stratum from the volume of its quadratic factor and
/// the minimal-strata table:
/// (1/2^r) (d'-1)! VolQ prod 2^{2 g_i} (2 g_i - 1)! Vol H(2 g_i - 2) / (d-1)!.
pub fn product_volume_with(
    spec: &ProductStratumSpec,
    table: &MinimalStratumVolumeTable,
    vol_quadratic: &PiValue,
) -> Result<PiValue> {
    if spec.abelian.is_empty() {
        return Ok(vol_quadratic.clone());
    }
    let (_, d_q) = spec.quadratic.stratum_genus_dim()?;
    let d = spec.dim();
    let r = spec.abelian.len();
    let mut acc = vol_quadratic.scale(
        &(factorial(d_q as u64 - 1) / factorial(d as u64 - 1) / rat_int(1i64 << r)),
    );
    for &g in &spec.abelian {
        let h = table.get(g).ok_or_else(|| {
            Error::Unavailable(format!(
                "Vol H({}) is not pinned; supply it through overrides",
                2 * g - 2
            ))
        })?;
        let factor = rat_int(1i64 << (2 * g)) * factorial(2 * g as u64 - 1);
        acc = acc.mul(&h.scale(&factor));
    }
    Ok(acc)
}

/// The default minimal-strata table: pinned once from the embedded volume
/// table with both Kontsevich sources available.
static DEFAULT_MINIMAL: Lazy<std::result::Result<MinimalStratumVolumeTable, String>> =
    Lazy::new(|| {
        pin_minimal_volumes(Source::Both, 8)
            .map(|(t, _)| t)
            .map_err(|e| e.to_string())
    });

pub fn default_minimal_table() -> Result<MinimalStratumVolumeTable> {
    DEFAULT_MINIMAL
        .clone()
        .map_err(Error::Unavailable)
}

type VolKey = (Vec<i64>, u8);
static VOL_MEMO: Lazy<Mutex<HashMap<VolKey, std::result::Result<PiValue, String>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

fn source_tag(source: Source) -> u8 {
    match source {
        Source::Table => 0,
        Source::Interpolate => 1,
        Source::Both => 2,
    }
}

/// True Masur-Veech volume with the full breakdown: completed volume minus
/// the weighted boundary product volumes, the quadratic factors recursing
/// down to the pillowcase.
pub fn masur_veech_volume(s: &StratumSpec, source: Source) -> Result<VolumeBreakdown> {
    let table = default_minimal_table()?;
    masur_veech_volume_with(s, &table, source)
}

pub fn masur_veech_volume_with(
    s: &StratumSpec,
    table: &MinimalStratumVolumeTable,
    source: Source,
) -> Result<VolumeBreakdown> {
    let mut breakdown = completed_volume_with(s, source)?;
    let terms = theorem1_expand(&s.k);
    let mut vol = breakdown.completed.clone();
    let mut expansion = Vec::new();
    for (coeff, spec) in terms.iter().skip(1) {
        let volq = plain_volume(&spec.quadratic, table, source)?;
        let volume = product_volume_with(spec, table, &volq)?;
        let weighted = volume.scale(coeff);
        vol = vol.checked_add(&weighted.scale(&-rat_int(1)))?;
        expansion.push(ExpansionTerm {
            coeff: coeff.clone(),
            spec: spec.clone(),
            volume,
            weighted,
        });
    }
    breakdown.expansion = expansion;
    breakdown.vol = Some(vol);
    Ok(breakdown)
}

/// Volume of a plain stratum (memoized recursion; the pillowcase is the
/// constant base case).
fn plain_volume(
    k: &OddPartition,
    table: &MinimalStratumVolumeTable,
    source: Source,
) -> Result<PiValue> {
    if k.parts().iter().all(|&p| p == -1) && k.len() == 4 {
        return Ok(PiValue::new(rat(2, 1), 2));
    }
    let key = (k.parts().to_vec(), source_tag(source));
    if let Some(hit) = VOL_MEMO.lock().unwrap().get(&key) {
        return hit.clone().map_err(Error::Unavailable);
    }
    let spec = StratumSpec::new(k.clone())?;
    let res = masur_veech_volume_with(&spec, table, source)
        .map(|b| b.vol.expect("masur_veech_volume_with fills vol"));
    let cached = match &res {
        Ok(v) => Ok(v.clone()),
        Err(e) => Err(e.to_string()),
    };
    VOL_MEMO.lock().unwrap().insert(key, cached);
    res
}

/// Recursion entry point used by the pinning solver, which carries its own
/// (partially built) minimal table; results are not memoized globally
/// because they depend on that table.
pub(crate) fn vol_with_table(
    k: &OddPartition,
    table: &MinimalStratumVolumeTable,
    source: Source,
) -> Result<VolumeBreakdown> {
    let spec = StratumSpec::new(k.clone())?;
    masur_veech_volume_with(&spec, table, source)
}

// ---------------------------------------------------------------------------
// JSON rendering
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct GraphContributionJson {
    graph: String,
    aut: u64,
    c_gamma: String,
    p_gamma: Polynomial,
    zeta: PiValue,
    contribution: PiValue,
}

#[derive(Serialize)]
struct ExpansionTermJson {
    coeff: String,
    stratum: String,
    volume: PiValue,
    weighted: PiValue,
}

#[derive(Serialize)]
struct VolumeBreakdownJson {
    stratum: String,
    d: u32,
    genus: u32,
    graphs: Vec<GraphContributionJson>,
    completed: PiValue,
    expansion: Vec<ExpansionTermJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vol: Option<PiValue>,
}

impl Serialize for VolumeBreakdown {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        VolumeBreakdownJson {
            stratum: self.stratum.k.to_string(),
            d: self.stratum.dim,
            genus: self.stratum.genus,
            graphs: self
                .contributions
                .iter()
                .map(|c| GraphContributionJson {
                    graph: c.graph.render(),
                    aut: c.aut,
                    c_gamma: format!("{}/{}", c.c_gamma.numer(), c.c_gamma.denom()),
                    p_gamma: c.p_gamma.clone(),
                    zeta: c.zeta_value.clone(),
                    contribution: c.contribution.clone(),
                })
                .collect(),
            completed: self.completed.clone(),
            expansion: self
                .expansion
                .iter()
                .map(|t| ExpansionTermJson {
                    coeff: format!("{}/{}", t.coeff.numer(), t.coeff.denom()),
                    stratum: t.spec.render(),
                    volume: t.volume.clone(),
                    weighted: t.weighted.clone(),
                })
                .collect(),
            vol: self.vol.clone(),
        }
        .serialize(ser)
    }
}

/// The embedded volume table parsed into usable form, for regressions:
/// (stratum, d, g, vol, completed).
pub fn embedded_volume_rows() -> Vec<(StratumSpec, PiValue, PiValue)> {
    table1::TABLE1
        .iter()
        .map(|&(d, g, stratum, vol, completed)| {
            let spec = StratumSpec::parse(stratum).expect("table stratum");
            assert_eq!(spec.dim, d);
            assert_eq!(spec.genus, g);
            (
                spec,
                PiValue::new(crate::exact::parse_rat(vol).unwrap(), d),
                PiValue::new(crate::exact::parse_rat(completed).unwrap(), d),
            )
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::parse_rat;
    use std::collections::BTreeMap;

    fn stratum(s: &str) -> StratumSpec {
        StratumSpec::parse(s).unwrap()
    }

    #[test]
    fn stratum_validation() {
        assert!(StratumSpec::parse("3,-1^3").is_ok());
        assert!(matches!(
            StratumSpec::parse("1,-1"),
            Err(Error::NotAStratum(m)) if m.contains("empty")
        ));
        assert!(matches!(
            StratumSpec::parse("3,1"),
            Err(Error::NotAStratum(m)) if m.contains("empty")
        ));
        assert!(StratumSpec::parse("3,-1").is_err());
        assert!(StratumSpec::parse("3,3,-1^3").is_err()); // weight 4 mod 4 != 0
    }

    #[test]
    fn worked_example_breakdown() {
        // Q(3,-1^3): three shapes with P-polynomials 3/2 b^3, b^3/8, 3 b1 b2,
        // zeta values 3/8 z(4), 1/32 z(4), 1/8 z(2)^2 and contributions
        // summing to 2/3 pi^4
        let b = completed_volume(&stratum("3,-1^3"), Source::Table).unwrap();
        assert_eq!(b.contributions.len(), 7);
        assert_eq!(b.completed, PiValue::new(rat(2, 3), 4));

        let mut by_contrib: BTreeMap<String, (usize, String, String)> = BTreeMap::new();
        for c in &b.contributions {
            let e = by_contrib
                .entry(c.p_gamma.to_string())
                .or_insert((0, String::new(), String::new()));
            e.0 += 1;
            e.1 = c.zeta_value.to_string();
            e.2 = c.contribution.to_string();
        }
        // single-vertex loop graph: P = 3/2 b^3, Z = 3/8 zeta(4) = pi^4/240
        let one = by_contrib.get("3/2*b1^3").expect("loop graph present");
        assert_eq!(one.0, 1);
        assert_eq!(one.1, "1/240 * pi^4"); // 3/8 * pi^4/90
        assert_eq!(one.2, "4/15 * pi^4"); // 24 zeta(4)
        // pole-pair edge graph: P = b^3/8, contribution pi^4/45 each (x3)
        let two = by_contrib.get("1/8*b1^3").expect("edge graph present");
        assert_eq!(two.0, 3);
        assert_eq!(two.2, "1/45 * pi^4"); // 2 zeta(4) = pi^4/45
        // loop-plus-edge graph: P = 3 b1 b2, contribution pi^4/9 each (x3)
        let three = by_contrib.get("3*b1*b2").expect("edge+loop graph present");
        assert_eq!(three.0, 3);
        assert_eq!(three.1, "1/288 * pi^4"); // 1/8 zeta(2)^2
        assert_eq!(three.2, "1/9 * pi^4"); // 4 zeta(2)^2
    }

    #[test]
    fn worked_example_volume() {
        let b = masur_veech_volume(&stratum("3,-1^3"), Source::Table).unwrap();
        assert_eq!(b.vol.as_ref().unwrap(), &PiValue::new(rat(5, 9), 4));
        assert_eq!(b.expansion.len(), 1);
        assert_eq!(b.expansion[0].weighted, PiValue::new(rat(1, 9), 4));
    }

    #[test]
    fn pillowcase_from_machinery() {
        // Q(-1^4) through the stable-graph sum equals the constant 2 pi^2
        let b = completed_volume(&stratum("-1^4"), Source::Table).unwrap();
        assert_eq!(b.completed, PiValue::new(rat(2, 1), 2));
        let v = masur_veech_volume(&stratum("-1^4"), Source::Table).unwrap();
        assert_eq!(v.vol.unwrap(), PiValue::new(rat(2, 1), 2));
    }

    #[test]
    fn zeta_operator_examples() {
        // Z(3/2 b^3) = 3/8 zeta(4)
        let p = Polynomial::monomial(1, vec![3], rat(3, 2));
        assert_eq!(
            zeta_operator(&p).unwrap(),
            zeta_even(4).unwrap().scale(&rat(3, 8))
        );
        // Z(3 b1 b2) = 1/8 zeta(2)^2
        let p = Polynomial::monomial(2, vec![1, 1], rat(3, 1));
        let z2 = zeta_even(2).unwrap();
        assert_eq!(zeta_operator(&p).unwrap(), z2.mul(&z2).scale(&rat(1, 8)));
        // Z(b^3) = zeta(4)/4 = pi^4/360
        let p = Polynomial::monomial(1, vec![3], rat_int(1));
        assert_eq!(zeta_operator(&p).unwrap(), PiValue::new(rat(1, 360), 4));
        // zero exponents are rejected
        let p = Polynomial::monomial(2, vec![1, 0], rat_int(1));
        assert!(zeta_operator(&p).is_err());
    }

    #[test]
    fn edge_order_independence() {
        // relabeling the edges of a graph must not change Z(P_Gamma)
        let s = stratum("3,-1^3");
        let graphs = enumerate_stable_graphs(s.genus, &s.kappa);
        for g in graphs.iter().filter(|g| g.n_edges() >= 2) {
            let p = build_p_gamma(g, Source::Table).unwrap();
            let z = zeta_operator(&p).unwrap();
            let mut shuffled = g.clone();
            shuffled.edges.reverse();
            let p2 = build_p_gamma(&shuffled, Source::Table).unwrap();
            let z2 = zeta_operator(&p2).unwrap();
            assert_eq!(z, z2);
        }
    }

    #[test]
    fn second_table_row() {
        // Q(5,-1^5): completed 3/4 pi^6 needs one interpolated entry
        let b = masur_veech_volume(&stratum("5,-1^5"), Source::Both).unwrap();
        assert_eq!(b.completed, PiValue::new(rat(3, 4), 6));
        assert_eq!(
            b.vol.unwrap(),
            PiValue::new(parse_rat("7/10").unwrap(), 6)
        );
    }
}

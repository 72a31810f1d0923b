//! Decorated stable graphs: the combinatorial types of horizontal cylinder
//! decompositions of square-tiled surfaces. Vertices carry a genus and an
//! odd valency partition whose 1-parts are the labeled legs (simple poles);
//! edges are the cylinders.

use crate::exact::Rat;
use crate::partitions::OddPartition;
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StableVertex {
    pub genus: u32,
    /// Valency decoration; its 1-parts correspond one-to-one to the legs.
    pub kappa: OddPartition,
    /// Leg labels at this vertex (0-based, sorted).
    pub legs: Vec<u32>,
    /// Number of edge endpoints at this vertex (loops count twice).
    pub n_slots: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DecoratedStableGraph {
    pub vertices: Vec<StableVertex>,
    /// Unordered vertex pairs, loops allowed, sorted; index = edge label.
    pub edges: Vec<(usize, usize)>,
}

impl DecoratedStableGraph {
    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn first_betti(&self) -> u32 {
        (self.edges.len() + 1 - self.vertices.len()) as u32
    }

    pub fn genus(&self) -> u32 {
        self.first_betti() + self.vertices.iter().map(|v| v.genus).sum::<u32>()
    }

    /// Loops at vertex v.
    pub fn loops_at(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v && b == v).count()
    }

    /// Edges incident to vertex v, loops listed twice; this is the argument
    /// list of the vertex's Kontsevich polynomial.
    pub fn incident_edges(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::new();
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if a == v {
                out.push(i);
            }
            if b == v {
                out.push(i);
            }
        }
        out
    }

    /// Order of the automorphism group: graph maps preserving decorations
    /// and fixing every leg, times the edge symmetries (parallel-edge
    /// permutations and loop flips).
    pub fn aut_order(&self) -> u64 {
        let perms = decoration_preserving_perms(&self.vertices, true);
        let mut graph_autos = 0u64;
        for p in &perms {
            if self.adjacency_counts() == permuted_adjacency(self, p) {
                graph_autos += 1;
            }
        }
        let mut edge_sym = 1u64;
        for (&(a, b), &m) in &self.adjacency_counts() {
            let mf: u64 = (1..=m as u64).product::<u64>().max(1);
            edge_sym *= mf;
            if a == b {
                edge_sym *= 1u64 << m; // each loop flips independently
            }
        }
        graph_autos * edge_sym
    }

    fn adjacency_counts(&self) -> BTreeMap<(usize, usize), usize> {
        let mut m = BTreeMap::new();
        for &e in &self.edges {
            *m.entry(e).or_insert(0) += 1;
        }
        m
    }

    /// Lattice index of the parity sublattice: 2^(|V|-1).
    pub fn lattice_index(&self) -> u64 {
        1u64 << (self.vertices.len() - 1)
    }

    /// c_Gamma = 1 / (2^(|V|-1) |Aut Gamma|).
    pub fn c_gamma(&self) -> Rat {
        Rat::new(
            BigInt::from(1),
            BigInt::from(self.lattice_index() * self.aut_order()),
        )
    }

    /// Canonical text rendering: one vertex per clause with genus,
    /// decoration and leg labels (1-based), then the edge list.
    pub fn render(&self) -> String {
        let mut parts = Vec::new();
        for (i, v) in self.vertices.iter().enumerate() {
            let legs = if v.legs.is_empty() {
                String::new()
            } else {
                format!(
                    " legs {}",
                    v.legs
                        .iter()
                        .map(|l| (l + 1).to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                )
            };
            parts.push(format!("v{}(g={}, [{}]{})", i + 1, v.genus, v.kappa, legs));
        }
        let edges = self
            .edges
            .iter()
            .map(|&(a, b)| format!("v{}-v{}", a + 1, b + 1))
            .collect::<Vec<_>>()
            .join(" ");
        format!("{} | {}", parts.join(" "), edges)
    }
}

impl fmt::Display for DecoratedStableGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

fn permuted_adjacency(
    g: &DecoratedStableGraph,
    p: &[usize],
) -> BTreeMap<(usize, usize), usize> {
    let mut m = BTreeMap::new();
    for &(a, b) in &g.edges {
        let (x, y) = (p[a].min(p[b]), p[a].max(p[b]));
        *m.entry((x, y)).or_insert(0) += 1;
    }
    m
}

/// Permutations of the vertex set preserving (genus, decoration, slots) and,
/// when `with_legs` is set, the leg label sets (for automorphism counting:
/// legs are fixed pointwise by isomorphism). Without legs, the permutations
/// serve canonicalization and the leg sets travel as data.
fn decoration_preserving_perms(vertices: &[StableVertex], with_legs: bool) -> Vec<Vec<usize>> {
    let n = vertices.len();
    let mut groups: HashMap<(u32, &OddPartition, Option<&Vec<u32>>, u32), Vec<usize>> =
        HashMap::new();
    for (i, v) in vertices.iter().enumerate() {
        let legs = with_legs.then_some(&v.legs);
        groups
            .entry((v.genus, &v.kappa, legs, v.n_slots))
            .or_default()
            .push(i);
    }
    let mut out = vec![vec![usize::MAX; n]];
    for members in groups.values() {
        let mut next = Vec::new();
        for base in out {
            permute_into(&mut next, base, members);
        }
        out = next;
    }
    out
}

fn permute_into(sink: &mut Vec<Vec<usize>>, base: Vec<usize>, members: &[usize]) {
    let mut idx: Vec<usize> = members.to_vec();
    permutations_of(&mut idx, 0, &mut |perm| {
        let mut b = base.clone();
        for (src, &dst) in members.iter().zip(perm) {
            b[*src] = dst;
        }
        sink.push(b);
    });
}

fn permutations_of(v: &mut Vec<usize>, at: usize, emit: &mut impl FnMut(&[usize])) {
    if at == v.len() {
        emit(v);
        return;
    }
    for i in at..v.len() {
        v.swap(at, i);
        permutations_of(v, at + 1, emit);
        v.swap(at, i);
    }
}

/// All isomorphism classes of decorated stable graphs with total genus g and
/// total decoration kappa (legs labeled 1..mu_1(kappa) and fixed pointwise
/// by isomorphisms).
pub fn enumerate_stable_graphs(g: u32, kappa: &OddPartition) -> Vec<DecoratedStableGraph> {
    let mut out: HashMap<String, DecoratedStableGraph> = HashMap::new();
    // 1. multiset partitions of the decoration into even-size blocks
    for blocks in even_multiset_partitions(kappa) {
        // 2. genus assignments with valid slot counts
        let max_g: Vec<u32> = blocks
            .iter()
            .map(|b| {
                let c = (b.weight() - 2 * b.len() as i64) / 2 + 2;
                (c.max(0) as u32).div_euclid(2) + 2 // generous upper bound
            })
            .collect();
        let mut gv = vec![0u32; blocks.len()];
        genus_assignments(&blocks, &max_g, 0, &mut gv, &mut |gv: &[u32]| {
            let slots: Vec<i64> = blocks
                .iter()
                .zip(gv)
                .map(|(b, &gg)| (b.weight() - 2 * b.len() as i64) / 2 + 2 - 2 * gg as i64)
                .collect();
            if slots.iter().any(|&s| s < 1) {
                return;
            }
            let total_slots: i64 = slots.iter().sum();
            if total_slots % 2 != 0 {
                return;
            }
            let e = total_slots / 2;
            let v = blocks.len() as i64;
            let h1 = e - v + 1;
            if h1 < 0 {
                return;
            }
            if h1 as u32 + gv.iter().sum::<u32>() != g {
                return;
            }
            // 3. connected multigraphs with this degree sequence
            let degrees: Vec<usize> = slots.iter().map(|&s| s as usize).collect();
            for edges in multigraphs_with_degrees(&degrees) {
                if !connected(blocks.len(), &edges) {
                    continue;
                }
                // 4. leg label distributions
                let leg_counts: Vec<usize> = blocks.iter().map(|b| b.mu(1)).collect();
                let total_legs: usize = leg_counts.iter().sum();
                let labels: Vec<u32> = (0..total_legs as u32).collect();
                distribute_legs(&labels, &leg_counts, &mut |leg_sets: &[Vec<u32>]| {
                    let vertices: Vec<StableVertex> = blocks
                        .iter()
                        .zip(gv)
                        .zip(&degrees)
                        .zip(leg_sets)
                        .map(|(((kappa_v, &genus), &slots), legs)| StableVertex {
                            genus,
                            kappa: kappa_v.clone(),
                            legs: legs.clone(),
                            n_slots: slots as u32,
                        })
                        .collect();
                    let graph = DecoratedStableGraph {
                        vertices,
                        edges: edges.clone(),
                    };
                    let key = canonical_key(&graph);
                    out.entry(key).or_insert(graph);
                });
            }
        });
    }
    let mut list: Vec<DecoratedStableGraph> = out.into_values().collect();
    list.sort_by_key(|g| (g.n_edges(), canonical_key(g)));
    list
}

fn genus_assignments(
    blocks: &[OddPartition],
    max_g: &[u32],
    i: usize,
    gv: &mut Vec<u32>,
    emit: &mut impl FnMut(&[u32]),
) {
    if i == blocks.len() {
        emit(gv);
        return;
    }
    for gg in 0..=max_g[i] {
        // slot count must stay >= 1
        let slots = (blocks[i].weight() - 2 * blocks[i].len() as i64) / 2 + 2 - 2 * gg as i64;
        if slots < 1 {
            break;
        }
        gv[i] = gg;
        genus_assignments(blocks, max_g, i + 1, gv, emit);
    }
    gv[i] = 0;
}

/// Partitions of the multiset of parts into blocks of even length. The
/// canonical chain construction (each block contains a copy of the largest
/// remaining part) yields every unordered block collection exactly once.
fn even_multiset_partitions(kappa: &OddPartition) -> Vec<Vec<OddPartition>> {
    let mut out = Vec::new();
    let mut cur: Vec<OddPartition> = Vec::new();
    fn rec(
        remaining: &[i64],
        cur: &mut Vec<OddPartition>,
        out: &mut Vec<Vec<OddPartition>>,
    ) {
        if remaining.is_empty() {
            out.push(cur.clone());
            return;
        }
        // the block containing remaining[0] (the largest part);
        // enumerate sub-multisets of remaining[1..] of odd size
        let rest: Vec<i64> = remaining[1..].to_vec();
        let mut chosen = vec![false; rest.len()];
        subsets_odd(&rest, 0, &mut chosen, &mut |mask: &[bool]| {
            let mut block = vec![remaining[0]];
            let mut left = Vec::new();
            for (i, &val) in rest.iter().enumerate() {
                if mask[i] {
                    block.push(val);
                } else {
                    left.push(val);
                }
            }
            cur.push(OddPartition::new(block));
            rec(&left, cur, out);
            cur.pop();
        });
    }
    rec(kappa.parts(), &mut cur, &mut out);
    // canonical chain can produce identical block multisets along different
    // mask choices when values repeat: dedupe
    let mut seen = HashSet::new();
    out.retain(|blocks| {
        let mut sig: Vec<String> = blocks.iter().map(|b| b.to_string()).collect();
        sig.sort();
        seen.insert(sig.join("|"))
    });
    out
}

fn subsets_odd(rest: &[i64], i: usize, chosen: &mut Vec<bool>, emit: &mut impl FnMut(&[bool])) {
    if i == rest.len() {
        let c = chosen.iter().filter(|&&x| x).count();
        if c % 2 == 1 {
            emit(chosen);
        }
        return;
    }
    // skip equal values uniformly: if rest[i] == rest[i-1] and i-1 was not
    // chosen, do not choose i (canonical choice among equal parts)
    let may_choose = !(i > 0 && rest[i] == rest[i - 1] && !chosen[i - 1]);
    chosen[i] = false;
    subsets_odd(rest, i + 1, chosen, emit);
    if may_choose {
        chosen[i] = true;
        subsets_odd(rest, i + 1, chosen, emit);
        chosen[i] = false;
    }
}

/// All loopy multigraphs with the given degree sequence, enumerated by
/// filling pair multiplicities in lexicographic order.
fn multigraphs_with_degrees(degrees: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let n = degrees.len();
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut residual: Vec<i64> = degrees.iter().map(|&d| d as i64).collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    fill_pairs(&pairs, 0, &mut residual, &mut edges, &mut out);
    out
}

fn fill_pairs(
    pairs: &[(usize, usize)],
    k: usize,
    residual: &mut Vec<i64>,
    edges: &mut Vec<(usize, usize)>,
    out: &mut Vec<Vec<(usize, usize)>>,
) {
    if k == pairs.len() {
        if residual.iter().all(|&r| r == 0) {
            out.push(edges.clone());
        }
        return;
    }
    let (i, j) = pairs[k];
    let max_m = if i == j {
        residual[i] / 2
    } else {
        residual[i].min(residual[j])
    };
    for m in 0..=max_m {
        if m > 0 {
            if i == j {
                residual[i] -= 2;
            } else {
                residual[i] -= 1;
                residual[j] -= 1;
            }
            edges.push((i, j));
        }
        fill_pairs(pairs, k + 1, residual, edges, out);
        if m == max_m {
            for _ in 0..m {
                edges.pop();
                if i == j {
                    residual[i] += 2;
                } else {
                    residual[i] += 1;
                    residual[j] += 1;
                }
            }
        }
    }
}

fn connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut cnt = 1;
    while let Some(v) = stack.pop() {
        for &(a, b) in edges {
            let w = if a == v {
                b
            } else if b == v {
                a
            } else {
                continue;
            };
            if !seen[w] {
                seen[w] = true;
                cnt += 1;
                stack.push(w);
            }
        }
    }
    cnt == n
}

fn distribute_legs(
    labels: &[u32],
    counts: &[usize],
    emit: &mut impl FnMut(&[Vec<u32>]),
) {
    let mut sets: Vec<Vec<u32>> = vec![Vec::new(); counts.len()];
    fn rec(
        labels: &[u32],
        at: usize,
        counts: &[usize],
        sets: &mut Vec<Vec<u32>>,
        emit: &mut impl FnMut(&[Vec<u32>]),
    ) {
        if at == labels.len() {
            emit(sets);
            return;
        }
        for v in 0..counts.len() {
            if sets[v].len() < counts[v] {
                sets[v].push(labels[at]);
                rec(labels, at + 1, counts, sets, emit);
                sets[v].pop();
            }
        }
    }
    rec(labels, 0, counts, &mut sets, emit);
}

/// Canonical key: vertices are mapped onto slots sorted by their full
/// invariant (genus, decoration, legs, slots), minimizing the adjacency
/// encoding over all slot assignments within equal-invariant groups. Two
/// graphs are isomorphic iff their keys agree.
fn canonical_key(g: &DecoratedStableGraph) -> String {
    let n = g.vertices.len();
    let inv = |v: &StableVertex| format!("g{} k[{}] l{:?} s{}", v.genus, v.kappa, v.legs, v.n_slots);
    // group original indices by invariant, slots assigned in sorted order
    let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, v) in g.vertices.iter().enumerate() {
        groups.entry(inv(v)).or_default().push(i);
    }
    let header: Vec<String> = groups
        .iter()
        .flat_map(|(k, members)| std::iter::repeat(k.clone()).take(members.len()))
        .collect();
    // all assignments: members of each group go to that group's slot range
    let mut perms: Vec<Vec<usize>> = vec![vec![usize::MAX; n]];
    let mut slot = 0usize;
    for members in groups.values() {
        let range: Vec<usize> = (slot..slot + members.len()).collect();
        slot += members.len();
        let mut next = Vec::new();
        for base in perms {
            let mut slots = range.clone();
            permutations_of(&mut slots, 0, &mut |assigned| {
                let mut b = base.clone();
                for (src, &dst) in members.iter().zip(assigned) {
                    b[*src] = dst;
                }
                next.push(b);
            });
        }
        perms = next;
    }
    let mut best: Option<String> = None;
    for p in &perms {
        let mut adj: Vec<(usize, usize)> = g
            .edges
            .iter()
            .map(|&(a, b)| (p[a].min(p[b]), p[a].max(p[b])))
            .collect();
        adj.sort();
        let key = format!("{}||{:?}", header.join(";"), adj);
        if best.as_ref().map_or(true, |b| key < *b) {
            best = Some(key);
        }
    }
    best.unwrap()
}

/// A decorated abelian stable graph for a minimal stratum H(2g-2): one
/// vertex of genus g_v with loops only, decorated [4g-2], and
/// 2g = 2 g_v + n_slots. Its automorphism order is (number of loops)!,
/// not the expected (loops)! * 2^loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianStableGraph {
    pub stratum_genus: u32,
    pub vertex_genus: u32,
    pub loops: u32,
}

impl AbelianStableGraph {
    pub fn n_slots(&self) -> u32 {
        2 * self.loops
    }

    pub fn aut_order(&self) -> u64 {
        (1..=self.loops as u64).product::<u64>().max(1)
    }

    pub fn decoration(&self) -> i64 {
        4 * self.stratum_genus as i64 - 2
    }
}

/// All abelian stable graphs for H(2g-2).
pub fn enumerate_abelian_stable_graphs(g: u32) -> Vec<AbelianStableGraph> {
    (1..=g)
        .map(|loops| AbelianStableGraph {
            stratum_genus: g,
            vertex_genus: g - loops,
            loops,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn kp(parts: &[i64]) -> OddPartition {
        OddPartition::valencies(parts.to_vec()).unwrap()
    }

    #[test]
    fn example_stratum_has_seven_classes() {
        // G_{1,3}^{[5,1^3]}: 7 leg-labeled classes in 3 shapes with
        // multiplicities 1, 3, 3 and c_Gamma = 1/2, 1/2, 1/4
        let graphs = enumerate_stable_graphs(1, &kp(&[5, 1, 1, 1]));
        assert_eq!(graphs.len(), 7);
        let mut by_cg: BTreeMap<String, usize> = BTreeMap::new();
        for g in &graphs {
            *by_cg.entry(g.c_gamma().to_string()).or_insert(0) += 1;
        }
        // shape 1: single vertex with one loop, c = 1/2 (|Aut| = 2), mult 1
        // shape 2: two vertices, one edge, c = 1/2 (|Aut| = 1), mult 3
        // shape 3: two vertices, edge + loop, c = 1/4 (|Aut| = 2), mult 3
        assert_eq!(by_cg.get("1/2"), Some(&4));
        assert_eq!(by_cg.get("1/4"), Some(&3));
        for g in &graphs {
            assert!(g.n_edges() >= 1);
            assert_eq!(g.genus(), 1);
        }
    }

    #[test]
    fn pillowcase_stratum() {
        // Q(-1^4): kappa = [1^4]; three leg-labeled classes of the
        // two-vertex single-edge graph, each with trivial Aut
        let graphs = enumerate_stable_graphs(0, &kp(&[1, 1, 1, 1]));
        assert_eq!(graphs.len(), 3);
        for g in &graphs {
            assert_eq!(g.vertices.len(), 2);
            assert_eq!(g.n_edges(), 1);
            assert_eq!(g.aut_order(), 1);
            assert_eq!(g.c_gamma(), rat(1, 2));
            assert_eq!(g.lattice_index(), 2);
        }
    }

    #[test]
    fn abelian_aut_convention() {
        for g in 1..=6u32 {
            for a in enumerate_abelian_stable_graphs(g) {
                assert_eq!(2 * a.stratum_genus, 2 * a.vertex_genus + a.n_slots());
                let expect: u64 = (1..=a.loops as u64).product::<u64>().max(1);
                assert_eq!(a.aut_order(), expect);
            }
        }
        assert_eq!(enumerate_abelian_stable_graphs(3).len(), 3);
    }

    #[test]
    fn aut_weighted_total() {
        // 1/2 (one-loop vertex) + 3 * 1 (edge pairs) + 3 * 1/2 (edge+loop)
        let graphs = enumerate_stable_graphs(1, &kp(&[5, 1, 1, 1]));
        let total: Rat = graphs
            .iter()
            .map(|g| Rat::new(BigInt::from(1), BigInt::from(g.aut_order())))
            .fold(Rat::new(BigInt::from(0), BigInt::from(1)), |a, b| a + b);
        assert_eq!(total, rat(5, 1));
    }
}

//! Counting-function top parts on walls: the degeneration recursion that
//! expresses the Kontsevich polynomial as the on-wall top part 2V plus
//! contributions of degenerated ribbon graphs (one non-bipartite core plus
//! face-bicolored pieces hanging off zero-length static bridges).

use super::{kontsevich_polynomial, Source};
use crate::exact::{double_factorial, factorial, rat_int, Polynomial, Rat};
use crate::partitions::OddPartition;
use crate::ribbon::{
    cell_signature, face_bicolored_counting, face_bicolored_top_degree, wall_forms,
};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// A wall in the perimeter space of n labeled boundary components, given by
/// the simultaneous equations sum over I0_s of b = sum over I1_s of b for a
/// family of disjoint nonempty index pairs; `rest` may be empty only when
/// the valency partition has at least three parts.
#[derive(Clone, Debug)]
pub struct WallSpec {
    /// Labels not constrained by any equation (I_0; 0-based).
    pub rest: Vec<usize>,
    /// The p equation pairs (I^0_s, I^1_s).
    pub pairs: Vec<(Vec<usize>, Vec<usize>)>,
}

impl WallSpec {
    pub fn validate(&self, n: usize, kappa_len: usize) -> Result<()> {
        let mut seen = vec![false; n];
        let mut mark = |ix: &[usize]| -> Result<()> {
            for &i in ix {
                if i >= n || seen[i] {
                    return Err(Error::Parse(format!("wall spec reuses or overflows label {i}")));
                }
                seen[i] = true;
            }
            Ok(())
        };
        mark(&self.rest)?;
        for (a, b) in &self.pairs {
            if a.is_empty() || b.is_empty() {
                return Err(Error::Parse("wall pair with empty side".into()));
            }
            mark(a)?;
            mark(b)?;
        }
        if !seen.iter().all(|&s| s) {
            return Err(Error::Parse("wall spec must partition all labels".into()));
        }
        if self.pairs.is_empty() {
            return Err(Error::Parse("wall spec needs at least one equation".into()));
        }
        if self.rest.is_empty() && kappa_len < 3 {
            return Err(Error::Unavailable(
                "empty I_0 requires at least three valencies; the recursion does not \
                 cover this wall"
                    .into(),
            ));
        }
        Ok(())
    }

    /// True when b satisfies every wall equation.
    pub fn contains(&self, b: &[i64]) -> bool {
        self.pairs.iter().all(|(i0, i1)| {
            i0.iter().map(|&i| b[i]).sum::<i64>() == i1.iter().map(|&i| b[i]).sum::<i64>()
        })
    }
}

/// Solves the wall recursion for the on-wall top part 2 V^kappa_{g,n} of the
/// counting function at the wall of `spec`, as a polynomial representative
/// valid on that wall (away from lower-dimensional walls). The witness must
/// lie on the wall, off lower-dimensional walls, with even coordinate sum.
pub fn wall_correction(
    g: u32,
    n: usize,
    kappa: &OddPartition,
    spec: &WallSpec,
    witness: &[i64],
    source: Source,
) -> Result<Polynomial> {
    spec.validate(n, kappa.len())?;
    if witness.len() != n || !spec.contains(witness) {
        return Err(Error::CellViolation(format!(
            "witness {witness:?} does not lie on the requested wall"
        )));
    }
    let entry = kontsevich_polynomial(g, n, kappa, source)?;
    let correction = correction_sum(g, n, kappa, spec, witness, source)?;
    Ok(entry.unlabeled.sub(&correction))
}

/// The sum of degeneration terms on the right-hand side of the wall
/// recursion (everything except 2V itself).
fn correction_sum(
    g: u32,
    n: usize,
    kappa: &OddPartition,
    spec: &WallSpec,
    witness: &[i64],
    source: Source,
) -> Result<Polynomial> {
    let p = spec.pairs.len();
    let kparts = kappa.parts(); // fixed composition order for the index sums
    let ell = kparts.len();
    let aut_kappa = Rat::from_integer(BigInt::from(kappa.aut_order()));

    let mut total = Polynomial::zero(n);
    for m in 1..=p {
        // assignments of the p pairs to blocks 0..m (block 0 may be empty,
        // blocks 1..m must be nonempty)
        let mut assign = vec![0usize; p];
        let mut assignments = Vec::new();
        collect_assignments(&mut assign, 0, m, &mut assignments);
        for assignment in &assignments {
            for gsplit in compositions(g, m + 1) {
                let g0 = gsplit[0];
                for eps in 0..(1u32 << p) {
                    let eps_of = |s: usize| (eps >> s) & 1;
                    // attachment maps a: {1..m} -> {1..ell}
                    let mut amap = vec![0usize; m];
                    loop {
                        let term = one_term(
                            g, n, kappa, spec, witness, source, m, assignment, &gsplit, g0, eps_of,
                            &amap, kparts, ell, &aut_kappa,
                        )?;
                        if let Some(t) = term {
                            total = total.add(&t);
                        }
                        // advance the attachment odometer
                        let mut i = 0;
                        loop {
                            if i == m {
                                break;
                            }
                            amap[i] += 1;
                            if amap[i] < ell {
                                break;
                            }
                            amap[i] = 0;
                            i += 1;
                        }
                        if m == 0 || (i == m) {
                            break;
                        }
                    }
                }
            }
        }
    }
    Ok(total)
}

#[allow(clippy::too_many_arguments)]
fn one_term(
    _g: u32,
    n: usize,
    _kappa: &OddPartition,
    spec: &WallSpec,
    witness: &[i64],
    source: Source,
    m: usize,
    assignment: &[usize],
    gsplit: &[u32],
    g0: u32,
    eps_of: impl Fn(usize) -> u32,
    amap: &[usize],
    kparts: &[i64],
    ell: usize,
    aut_kappa: &Rat,
) -> Result<Option<Polynomial>> {
    let p = spec.pairs.len();
    // block data
    let a0: Vec<usize> = (0..p).filter(|&s| assignment[s] == 0).collect();
    let blocks: Vec<Vec<usize>> = (1..=m)
        .map(|j| (0..p).filter(|&s| assignment[s] == j).collect())
        .collect();

    // per-branch black/white sizes
    let mut n_bullet = vec![0usize; m];
    let mut n_circle = vec![0usize; m];
    for (j, block) in blocks.iter().enumerate() {
        for &s in block {
            let (i0, i1) = &spec.pairs[s];
            if eps_of(s) == 0 {
                n_bullet[j] += i0.len();
                n_circle[j] += i1.len();
            } else {
                n_bullet[j] += i1.len();
                n_circle[j] += i0.len();
            }
        }
    }

    // reduced valencies kappa0
    let mut k0 = kparts.to_vec();
    for (j, &ai) in amap.iter().enumerate() {
        let gj = gsplit[j + 1] as i64;
        k0[ai] -= 4 * gj + 2 * (n_bullet[j] + n_circle[j]) as i64;
    }
    if k0.iter().any(|&v| v <= 0) {
        return Ok(None);
    }

    // the combinatorial coefficient
    let mut coeff = rat_int(1);
    for i in 0..ell {
        let preimage: Vec<usize> = (0..m).filter(|&j| amap[j] == i).collect();
        coeff *= rat_int(k0[i]);
        for &j in &preimage {
            coeff *= rat_int(2 * gsplit[j + 1] as i64 - 1 + (n_bullet[j] + n_circle[j]) as i64);
        }
        coeff *= double_factorial(kparts[i] - 2)
            / double_factorial(kparts[i] - 2 * preimage.len() as i64);
    }
    let kappa0 = OddPartition::new(k0);
    let weight = rat_int(1)
        / (factorial(m as u64) * rat_int(1i64 << (m + a0.len())))
        * (Rat::from_integer(BigInt::from(kappa0.aut_order())) / aut_kappa.clone())
        * coeff;

    // core factor 2 V^{kappa0}_{g0, n0} on its own (sub-)wall
    let core_vars: Vec<usize> = {
        let mut v = spec.rest.clone();
        for &s in &a0 {
            v.extend_from_slice(&spec.pairs[s].0);
            v.extend_from_slice(&spec.pairs[s].1);
        }
        v.sort_unstable();
        v
    };
    let n0 = core_vars.len();
    let core = two_v_core(g0, n0, &kappa0, spec, &a0, &core_vars, witness, source)?;
    let Some(core) = core else {
        return Ok(None);
    };
    // embed the core polynomial into the ambient n variables
    let mut term = embed(&core, n, &core_vars);

    // branch factors: top parts of one-vertex bicolored counting functions
    for j in 0..m {
        let bullet_vars: Vec<usize> = blocks[j]
            .iter()
            .flat_map(|&s| {
                let (i0, i1) = &spec.pairs[s];
                if eps_of(s) == 0 { i0.clone() } else { i1.clone() }
            })
            .collect();
        let circle_vars: Vec<usize> = blocks[j]
            .iter()
            .flat_map(|&s| {
                let (i0, i1) = &spec.pairs[s];
                if eps_of(s) == 0 { i1.clone() } else { i0.clone() }
            })
            .collect();
        let factor = bicolored_factor(
            gsplit[j + 1],
            &bullet_vars,
            &circle_vars,
            n,
            witness,
            &blocks[j],
            spec,
        )?;
        let Some(factor) = factor else {
            return Ok(None);
        };
        term = term.mul(&factor);
    }
    Ok(Some(term.scale(&weight)))
}

/// 2 V^{kappa0}_{g0,n0} at the core variables: off every wall when A_0 is
/// empty (the plain Kontsevich polynomial), and recursively on the smaller
/// wall spanned by the A_0 pairs otherwise. Euler-infeasible data gives
/// None, which zeroes the term (no such ribbon graphs).
#[allow(clippy::too_many_arguments)]
fn two_v_core(
    g0: u32,
    n0: usize,
    kappa0: &OddPartition,
    spec: &WallSpec,
    a0: &[usize],
    core_vars: &[usize],
    witness: &[i64],
    source: Source,
) -> Result<Option<Polynomial>> {
    if n0 == 0 || !kappa0.euler_check(g0, n0 as u32) {
        return Ok(None);
    }
    if a0.is_empty() {
        match kontsevich_polynomial(g0, n0, kappa0, source) {
            Ok(e) => return Ok(Some(e.unlabeled.clone())),
            Err(Error::NotAStratum(_)) => return Ok(None),
            Err(e) => return Err(e),
        }
    }
    // recursive wall: remap the A_0 pairs into the core variable space
    let local = |ix: &[usize]| -> Vec<usize> {
        ix.iter()
            .map(|i| core_vars.iter().position(|c| c == i).unwrap())
            .collect()
    };
    let sub_spec = WallSpec {
        rest: local(&spec.rest),
        pairs: a0
            .iter()
            .map(|&s| (local(&spec.pairs[s].0), local(&spec.pairs[s].1)))
            .collect(),
    };
    let sub_witness: Vec<i64> = core_vars.iter().map(|&i| witness[i]).collect();
    match wall_correction(g0, n0, kappa0, &sub_spec, &sub_witness, source) {
        Ok(p) => Ok(Some(p)),
        Err(Error::NotAStratum(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Polynomial representative of the top part V of a one-vertex bicolored
/// counting function on the wall. Genus 0 pieces are constants (validated at
/// a scaled witness). Positive genus is supported when every pair in the
/// block is a singleton pair {x} = {y}: the factor is then a polynomial in
/// the pair values, recovered by a homogeneous fit along scaled witnesses.
fn bicolored_factor(
    gj: u32,
    bullet_vars: &[usize],
    circle_vars: &[usize],
    n: usize,
    witness: &[i64],
    block: &[usize],
    spec: &WallSpec,
) -> Result<Option<Polynomial>> {
    let bb: Vec<i64> = bullet_vars.iter().map(|&i| witness[i]).collect();
    let ww: Vec<i64> = circle_vars.iter().map(|&i| witness[i]).collect();
    if gj == 0 {
        let v1 = face_bicolored_counting(0, bb.len(), ww.len(), &bb, &ww)?;
        let scale = |xs: &[i64], t: i64| xs.iter().map(|&x| t * x).collect::<Vec<_>>();
        let v2 = face_bicolored_counting(0, bb.len(), ww.len(), &scale(&bb, 3), &scale(&ww, 3))?;
        if v1 != v2 {
            return Err(Error::CellViolation(
                "genus-0 bicolored factor is not constant near the witness".into(),
            ));
        }
        if v1.is_zero() {
            return Ok(None);
        }
        return Ok(Some(Polynomial::constant(n, v1)));
    }
    // positive genus: singleton pairs give a polynomial in the pair values
    let singleton = block
        .iter()
        .all(|&s| spec.pairs[s].0.len() == 1 && spec.pairs[s].1.len() == 1);
    if !singleton {
        return Err(Error::Unavailable(format!(
            "positive-genus bicolored factor with non-singleton pairs (g={gj})"
        )));
    }
    let q = block.len();
    let deg = 2 * gj;
    // fit the homogeneous degree-2g polynomial in the q pair values on
    // on-wall points near the witness
    let u0: Vec<i64> = block.iter().map(|&s| witness[spec.pairs[s].0[0]]).collect();
    let basis = homogeneous_monomials(q, deg);
    let forms = wall_forms(q);
    let sig = cell_signature(&forms, &u0);
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    let mut delta = vec![0i64; q];
    let mut done = false;
    sample_box(0, 3, &mut delta, &mut |d: &[i64]| -> Result<bool> {
        let u: Vec<i64> = u0.iter().zip(d).map(|(x, y)| x + 2 * y).collect();
        if cell_signature(&forms, &u) != sig {
            return Ok(true);
        }
        let val = face_bicolored_top_degree(gj, q, q, &u, &u)?;
        rows.push(
            basis
                .iter()
                .map(|mexp| {
                    let mut t = rat_int(1);
                    for (x, &e) in u.iter().zip(mexp) {
                        for _ in 0..e {
                            t *= rat_int(*x);
                        }
                    }
                    t
                })
                .collect(),
        );
        rhs.push(val);
        if rows.len() >= basis.len() + 2 {
            done = true;
            return Ok(false);
        }
        Ok(true)
    })?;
    if !done {
        return Err(Error::Unavailable(
            "not enough on-wall samples for a positive-genus bicolored factor".into(),
        ));
    }
    let coeffs = solve(&rows, &rhs, basis.len()).ok_or_else(|| {
        Error::CellViolation("bicolored factor fit failed validation".into())
    })?;
    // express in the ambient variables through the bullet coordinates
    let mut out = Polynomial::zero(n);
    for (mexp, c) in basis.iter().zip(&coeffs) {
        if c.is_zero() {
            continue;
        }
        let mut exps = vec![0u32; n];
        for (slot, &e) in mexp.iter().enumerate() {
            let var = spec.pairs[block[slot]].0[0];
            exps[var] += e;
        }
        out.add_term(exps, c);
    }
    if out.is_zero() {
        return Ok(None);
    }
    Ok(Some(out))
}

fn homogeneous_monomials(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            cur[i] = 0;
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(0, d, &mut cur, &mut out);
    out
}

fn sample_box(
    i: usize,
    radius: i64,
    delta: &mut Vec<i64>,
    emit: &mut impl FnMut(&[i64]) -> Result<bool>,
) -> Result<bool> {
    if i == delta.len() {
        return emit(delta);
    }
    for v in 0..=radius {
        delta[i] = v;
        if !sample_box(i + 1, radius, delta, emit)? {
            delta[i] = 0;
            return Ok(false);
        }
    }
    delta[i] = 0;
    Ok(true)
}

fn solve(rows: &[Vec<Rat>], rhs: &[Rat], ncols: usize) -> Option<Vec<Rat>> {
    // same exact elimination as the interpolation module; small systems only
    let mut aug: Vec<Vec<Rat>> = rows
        .iter()
        .zip(rhs)
        .map(|(r, y)| {
            let mut v = r.clone();
            v.push(y.clone());
            v
        })
        .collect();
    let nrows = aug.len();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..ncols {
        let Some(p) = (r..nrows).find(|&i| !aug[i][c].is_zero()) else {
            continue;
        };
        aug.swap(r, p);
        let piv = aug[r][c].clone();
        for x in aug[r].iter_mut() {
            *x /= piv.clone();
        }
        for i in 0..nrows {
            if i != r && !aug[i][c].is_zero() {
                let f = aug[i][c].clone();
                for c2 in c..=ncols {
                    let d = &aug[r][c2] * &f;
                    aug[i][c2] -= d;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    if pivots.len() < ncols {
        return None;
    }
    for row in aug.iter().skip(r) {
        if !row[ncols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); ncols];
    for &(pr, pc) in &pivots {
        x[pc] = aug[pr][ncols].clone();
    }
    Some(x)
}

fn embed(p: &Polynomial, n: usize, var_map: &[usize]) -> Polynomial {
    let mut out = Polynomial::zero(n);
    for (exps, c) in p.terms() {
        let mut e = vec![0u32; n];
        for (local, &global) in var_map.iter().enumerate() {
            e[global] = exps[local];
        }
        out.add_term(e, c);
    }
    out
}

fn collect_assignments(assign: &mut Vec<usize>, at: usize, m: usize, out: &mut Vec<Vec<usize>>) {
    if at == assign.len() {
        // blocks 1..m must be nonempty
        for j in 1..=m {
            if !assign.contains(&j) {
                return;
            }
        }
        out.push(assign.clone());
        return;
    }
    for j in 0..=m {
        assign[at] = j;
        collect_assignments(assign, at + 1, m, out);
    }
    assign[at] = 0;
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; parts];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            cur[i] = 0;
            return;
        }
        for v in 0..=left {
            cur[i] = v;
            rec(i + 1, left - v, cur, out);
        }
        cur[i] = 0;
    }
    if parts == 0 {
        if total == 0 {
            out.push(vec![]);
        }
        return out;
    }
    rec(0, total, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kp(parts: &[i64]) -> OddPartition {
        OddPartition::valencies(parts.to_vec()).unwrap()
    }

    #[test]
    fn worked_wall_value() {
        // (0,3,[5,1]) on the wall b2 = b3: N = 3 and the degenerated loop
        // contributes 1, so 2V = 2 (matching the counting function there)
        let spec = WallSpec {
            rest: vec![0],
            pairs: vec![(vec![1], vec![2])],
        };
        let two_v = wall_correction(0, 3, &kp(&[5, 1]), &spec, &[8, 3, 3], Source::Table).unwrap();
        assert_eq!(two_v, Polynomial::constant(3, rat_int(2)));
    }

    #[test]
    fn empty_rest_needs_three_valencies() {
        let spec = WallSpec {
            rest: vec![],
            pairs: vec![(vec![0], vec![1, 2])],
        };
        let r = wall_correction(0, 3, &kp(&[5, 1]), &spec, &[4, 3, 1], Source::Table);
        assert!(matches!(r, Err(Error::Unavailable(_))));
    }

    #[test]
    fn empty_correction_when_rest_empty_and_allowed() {
        // With l(kappa) >= 3 and a single full-split equation the correction
        // sum is empty and 2V equals the unlabeled polynomial. Take
        // kappa = [5,1^3] with (g,n) = (0,2) and wall b1 = b2.
        let kappa = kp(&[5, 1, 1, 1]);
        let spec = WallSpec {
            rest: vec![],
            pairs: vec![(vec![0], vec![1])],
        };
        let two_v = wall_correction(0, 2, &kappa, &spec, &[6, 6], Source::Table).unwrap();
        let n = kontsevich_polynomial(0, 2, &kappa, Source::Table).unwrap();
        assert_eq!(two_v, n.unlabeled);
    }
}

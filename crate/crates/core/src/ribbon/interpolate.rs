//! Exact recovery of the top-degree part of metric counting functions by
//! polynomial interpolation.
//!
//! Two routes are provided. `extract_top_degree_v` fits the full
//! quasi-polynomial of the counting function on one cell and one coset of
//! 2Z^n and extracts its top homogeneous part. `ray_top_degree` exploits
//! that cells are cones: along a ray t*b0 the counting function restricts to
//! a univariate polynomial whose leading coefficient is the top part at b0;
//! leading coefficients at several off-wall base points then pin the
//! (symmetric, even-exponent) top-degree polynomial with a small exact fit.
//! The routes are cross-checked against each other and against tabulated
//! polynomials in the test suites.

use super::count::WallForm;
use super::counting_function_budgeted;
use crate::exact::{factorial, rat_int, Polynomial, Rat};
use crate::partitions::OddPartition;
use crate::{Error, Result};
use num_traits::Zero;

/// All wall forms on n labels: sum_I b_i = sum_J b_j with I, J disjoint and
/// nonempty, up to global sign.
pub fn wall_forms(n: usize) -> Vec<WallForm> {
    let mut out = Vec::new();
    let mut signs = vec![0i8; n];
    fn rec(i: usize, signs: &mut Vec<i8>, out: &mut Vec<WallForm>) {
        if i == signs.len() {
            // normalize: the first nonzero sign is +1
            let first = signs.iter().find(|&&s| s != 0);
            if first != Some(&1) {
                return;
            }
            let plus: Vec<usize> = (0..signs.len()).filter(|&k| signs[k] == 1).collect();
            let minus: Vec<usize> = (0..signs.len()).filter(|&k| signs[k] == -1).collect();
            if !minus.is_empty() {
                out.push(WallForm { plus, minus });
            }
            return;
        }
        for s in [1i8, -1, 0] {
            signs[i] = s;
            rec(i + 1, signs, out);
        }
        signs[i] = 0;
    }
    rec(0, &mut signs, &mut out);
    out
}

/// Signs of all wall forms at b; two points lie in the same cell iff their
/// signatures agree.
pub fn cell_signature(forms: &[WallForm], b: &[i64]) -> Vec<i8> {
    forms.iter().map(|f| f.eval(b).signum() as i8).collect()
}

pub fn is_off_walls(forms: &[WallForm], b: &[i64]) -> bool {
    forms.iter().all(|f| f.eval(b) != 0)
}

/// A strictly off-wall witness with even coordinates: scale * (2^n, ..., 2).
/// Every signed subset sum of distinct powers of two is nonzero, and with
/// scale s the minimal absolute value of any wall form is 2s.
pub fn off_wall_witness(n: usize, scale: i64) -> Vec<i64> {
    (0..n).map(|i| scale * (1i64 << (n - i))).collect()
}

/// Monomials of total degree <= d in n variables, in a fixed order.
fn monomials_up_to(n: usize, d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == cur.len() {
            out.push(cur.clone());
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

/// Exact Gaussian elimination: solves for the unique coefficient vector with
/// rows beyond the rank acting as consistency validation. None when the
/// system is rank-deficient or any held-out row disagrees.
fn solve_exact(rows: &[Vec<Rat>], rhs: &[Rat], ncols: usize) -> Option<Vec<Rat>> {
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
    let mut pivots = Vec::new();
    let mut r = 0usize;
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
                    let delta = &aug[r][c2] * &f;
                    aug[i][c2] -= delta;
                }
            }
        }
        pivots.push((r, c));
        r += 1;
        if r == nrows {
            break;
        }
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

/// Fits the exact quasi-polynomial of the counting function F^kappa_{g,n} of
/// degree d = 2g - 2 + l(kappa) on the coset witness + 2Z^n inside the cell
/// of the witness (all monomials of degree <= d, not only even ones),
/// validates the fit on held-out sample points, and returns the degree-d
/// homogeneous part: 2 V^kappa_{g,n}, the unlabeled Kontsevich polynomial on
/// the witness's cell.
pub fn extract_top_degree_v(
    g: u32,
    n: usize,
    kappa: &OddPartition,
    witness: &[i64],
    budget: u64,
) -> Result<Polynomial> {
    let deg = 2 * g as i64 - 2 + kappa.len() as i64;
    if deg < 0 || !kappa.euler_check(g, n as u32) {
        return Err(Error::NotAStratum(format!(
            "no counting function for g={g} n={n} kappa={kappa}"
        )));
    }
    let deg = deg as u32;
    if witness.iter().sum::<i64>() % 2 != 0 {
        return Err(Error::CellViolation("witness has odd perimeter sum".into()));
    }
    let forms = wall_forms(n);
    if !is_off_walls(&forms, witness) {
        return Err(Error::CellViolation(format!(
            "witness {witness:?} lies on a wall"
        )));
    }
    let signature = cell_signature(&forms, witness);
    let basis = monomials_up_to(n, deg);
    let want = basis.len() + basis.len() / 4 + 4;

    let mut points: Vec<Vec<i64>> = vec![witness.to_vec()];
    'grow: for radius in 1..=10i64 {
        points.truncate(1);
        let mut delta = vec![0i64; n];
        let mut full = false;
        enumerate_box(0, radius, &mut delta, &mut |d: &[i64]| {
            if d.iter().all(|&x| x == 0) {
                return true;
            }
            let p: Vec<i64> = witness.iter().zip(d).map(|(w, x)| w + 2 * x).collect();
            if cell_signature(&forms, &p) == signature {
                points.push(p);
            }
            if points.len() >= want {
                full = true;
                return false;
            }
            true
        });
        if full {
            break 'grow;
        }
    }
    if points.len() < basis.len() + 2 {
        return Err(Error::CellViolation(format!(
            "cell around {witness:?} too tight: {} in-cell points, need {}",
            points.len(),
            basis.len() + 2
        )));
    }

    let mut rows = Vec::with_capacity(points.len());
    let mut rhs = Vec::with_capacity(points.len());
    for p in &points {
        let val = counting_function_budgeted(g, n, kappa, p, budget).ok_or_else(|| {
            Error::Unavailable(format!(
                "counting budget exceeded at {p:?} for g={g} n={n} kappa={kappa}"
            ))
        })?;
        let row: Vec<Rat> = basis
            .iter()
            .map(|m| {
                let mut t = rat_int(1);
                for (x, &e) in p.iter().zip(m) {
                    for _ in 0..e {
                        t *= rat_int(*x);
                    }
                }
                t
            })
            .collect();
        rows.push(row);
        rhs.push(val);
    }
    let coeffs = solve_exact(&rows, &rhs, basis.len()).ok_or_else(|| {
        Error::CellViolation(format!(
            "fit residual nonzero for g={g} n={n} kappa={kappa} at witness {witness:?}"
        ))
    })?;
    let mut fitted = Polynomial::zero(n);
    for (m, c) in basis.iter().zip(&coeffs) {
        fitted.add_term(m.clone(), c);
    }
    let top = fitted.restrict_top_degree(deg);
    if !top.has_only_even_exponents() {
        return Err(Error::CellViolation(format!(
            "top part has odd exponents for g={g} n={n} kappa={kappa}: {top}"
        )));
    }
    Ok(top)
}

fn enumerate_box(i: usize, radius: i64, delta: &mut Vec<i64>, emit: &mut impl FnMut(&[i64]) -> bool) -> bool {
    if i == delta.len() {
        return emit(delta);
    }
    for v in 0..=radius {
        delta[i] = v;
        if !enumerate_box(i + 1, radius, delta, emit) {
            delta[i] = 0;
            return false;
        }
    }
    delta[i] = 0;
    true
}

/// Even-exponent homogeneous degree-d symmetric patterns: 2*mu for mu a
/// partition of d/2 into at most n parts.
fn even_symmetric_patterns(n: usize, d: u32) -> Vec<Vec<u32>> {
    assert!(d % 2 == 0, "top degree is always even in scope");
    if d == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(left: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.iter().map(|&x| 2 * x).collect());
            return;
        }
        if slots == 0 {
            return;
        }
        for v in (1..=left.min(max)).rev() {
            cur.push(v);
            rec(left - v, v, slots - 1, cur, out);
            cur.pop();
        }
    }
    rec(d / 2, d / 2, n, &mut cur, &mut out);
    out
}

/// Value of the top-degree part of F^kappa_{g,n} at the off-wall point b0,
/// by finite differences along the ray t*b0, t = 1..deg+2. The extra sample
/// verifies that the restriction really is a polynomial of degree <= deg.
fn top_value_on_ray(
    g: u32,
    n: usize,
    kappa: &OddPartition,
    b0: &[i64],
    deg: u32,
    budget: u64,
) -> Result<Rat> {
    let mut q: Vec<Rat> = Vec::new();
    for t in 1..=(deg as i64 + 2) {
        let p: Vec<i64> = b0.iter().map(|&x| t * x).collect();
        let v = counting_function_budgeted(g, n, kappa, &p, budget).ok_or_else(|| {
            Error::Unavailable(format!(
                "counting budget exceeded on ray {p:?} for g={g} n={n} kappa={kappa}"
            ))
        })?;
        q.push(v);
    }
    let mut diff = q;
    for _ in 0..deg {
        diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    debug_assert_eq!(diff.len(), 2);
    if diff[0] != diff[1] {
        return Err(Error::CellViolation(format!(
            "ray restriction is not a degree-{deg} polynomial for g={g} n={n} kappa={kappa} along {b0:?}"
        )));
    }
    Ok(&diff[0] / factorial(deg as u64))
}

/// Small even off-wall base points in order of increasing coordinate sum;
/// small sums keep the per-ray counting cheap. Only one representative per
/// coordinate multiset is kept: the counting function is symmetric, so
/// permuted points would give linearly dependent fit rows.
fn base_point_supply(n: usize, forms: &[WallForm], how_many: usize) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = Vec::new();
    let mut total = 2 * n as i64;
    while out.len() < how_many && total < 40 * n as i64 + 200 {
        let mut point = vec![0i64; n];
        collect_even_compositions(total, 0, &mut point, forms, how_many, &mut out);
        total += 2;
    }
    out
}

fn collect_even_compositions(
    left: i64,
    i: usize,
    point: &mut Vec<i64>,
    forms: &[WallForm],
    cap: usize,
    out: &mut Vec<Vec<i64>>,
) {
    if out.len() >= cap {
        return;
    }
    if i + 1 == point.len() {
        // enforce strictly decreasing parts: one representative per multiset
        // (coordinates on a wall are never equal, so strict is no loss)
        if left >= 2 && left % 2 == 0 && (i == 0 || left < point[i - 1]) {
            point[i] = left;
            if is_off_walls(forms, point) {
                out.push(point.clone());
            }
            point[i] = 0;
        }
        return;
    }
    let remaining_slots = (point.len() - i - 1) as i64;
    let mut v = if i == 0 { i64::MAX } else { point[i - 1] - 2 };
    // descending: start from the largest value leaving room for the rest
    let max_v = left - 2 * remaining_slots;
    v = v.min(max_v);
    while v >= 2 {
        point[i] = v;
        collect_even_compositions(left - v, i + 1, point, forms, cap, out);
        point[i] = 0;
        v -= 2;
    }
}

/// The top-degree part of F^kappa_{g,n} (2 V^kappa_{g,n}, equal off-wall to
/// the unlabeled Kontsevich polynomial) via ray leading coefficients at
/// off-wall base points, fitted in the symmetric even-exponent homogeneous
/// basis and validated at held-out base points.
pub fn ray_top_degree(g: u32, n: usize, kappa: &OddPartition, budget: u64) -> Result<Polynomial> {
    let deg = 2 * g as i64 - 2 + kappa.len() as i64;
    if deg < 0 || !kappa.euler_check(g, n as u32) {
        return Err(Error::NotAStratum(format!(
            "no counting function for g={g} n={n} kappa={kappa}"
        )));
    }
    let deg = deg as u32;
    let patterns = even_symmetric_patterns(n, deg);
    let forms = wall_forms(n);
    let bases = base_point_supply(n, &forms, patterns.len() + 6);
    if bases.len() < patterns.len() + 2 {
        return Err(Error::Unavailable(format!(
            "not enough off-wall base points for g={g} n={n} kappa={kappa}"
        )));
    }
    let mut rows: Vec<Vec<Rat>> = Vec::new();
    let mut rhs: Vec<Rat> = Vec::new();
    for b0 in &bases {
        let val = top_value_on_ray(g, n, kappa, b0, deg, budget)?;
        let row: Vec<Rat> = patterns
            .iter()
            .map(|pat| Polynomial::symmetrize(n, pat, &rat_int(1)).evaluate_int(b0))
            .collect();
        rows.push(row);
        rhs.push(val);
        if rows.len() >= patterns.len() + 2 {
            if let Some(coeffs) = solve_exact(&rows, &rhs, patterns.len()) {
                let mut out = Polynomial::zero(n);
                for (pat, c) in patterns.iter().zip(&coeffs) {
                    if !c.is_zero() {
                        out = out.add(&Polynomial::symmetrize(n, pat, c));
                    }
                }
                return Ok(out);
            }
        }
    }
    Err(Error::CellViolation(format!(
        "symmetric even-basis fit failed for g={g} n={n} kappa={kappa} \
         (top part not symmetric-even, or base points degenerate)"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn kp(parts: &[i64]) -> OddPartition {
        OddPartition::valencies(parts.to_vec()).unwrap()
    }

    #[test]
    fn wall_form_count() {
        // non-zero {-1,0,1}-vectors with both signs present, up to flip:
        // (3^n - 2^{n+1} + 1) / 2
        for n in 1..=5usize {
            let expect = (3i64.pow(n as u32) - 2 * 2i64.pow(n as u32) + 1) / 2;
            assert_eq!(wall_forms(n).len() as i64, expect, "n={n}");
        }
    }

    #[test]
    fn witness_off_walls() {
        for n in 1..=5 {
            let w = off_wall_witness(n, 1);
            assert!(is_off_walls(&wall_forms(n), &w), "{w:?}");
        }
    }

    #[test]
    fn base_points_small_and_off_wall() {
        let forms = wall_forms(3);
        let pts = base_point_supply(3, &forms, 5);
        assert_eq!(pts.len(), 5);
        for p in &pts {
            assert!(is_off_walls(&forms, p), "{p:?}");
            assert!(p.iter().all(|&x| x >= 2 && x % 2 == 0));
        }
    }

    #[test]
    fn fit_recovers_constant_family() {
        // N_{0,3}^{[5,1]} = 3 with trivial Aut(kappa): top part is 3
        let kappa = kp(&[5, 1]);
        let w = off_wall_witness(3, 1);
        let top = extract_top_degree_v(0, 3, &kappa, &w, 1 << 24).unwrap();
        assert_eq!(top, Polynomial::constant(3, rat_int(3)));
        assert_eq!(ray_top_degree(0, 3, &kappa, 1 << 24).unwrap(), top);
    }

    #[test]
    fn fit_recovers_quadratic_family() {
        // N_{1,1}^{[5,1]} = b^2/8 with |Aut| = 1
        let kappa = kp(&[5, 1]);
        let top = extract_top_degree_v(1, 1, &kappa, &[6], 1 << 24).unwrap();
        let expect = Polynomial::monomial(1, vec![2], rat(1, 8));
        assert_eq!(top, expect);
        assert_eq!(ray_top_degree(1, 1, &kappa, 1 << 24).unwrap(), expect);
    }

    #[test]
    fn fit_recovers_two_variable_family() {
        // N_{0,2}^{[5,1^3]} = 3/4 (b1^2 + b2^2) labeled, |Aut(kappa)| = 6:
        // unlabeled = (b1^2 + b2^2)/8
        let kappa = kp(&[5, 1, 1, 1]);
        let w = off_wall_witness(2, 1);
        let top = extract_top_degree_v(0, 2, &kappa, &w, 1 << 24).unwrap();
        let expect = Polynomial::symmetrize(2, &[2], &rat(1, 8));
        assert_eq!(top, expect);
        assert_eq!(ray_top_degree(0, 2, &kappa, 1 << 24).unwrap(), expect);
    }

    #[test]
    fn even_pattern_enumeration() {
        assert_eq!(even_symmetric_patterns(2, 6), vec![vec![6], vec![4, 2]]);
        assert_eq!(even_symmetric_patterns(3, 4), vec![vec![4], vec![2, 2]]);
        assert_eq!(
            even_symmetric_patterns(3, 6),
            vec![vec![6], vec![4, 2], vec![2, 2, 2]]
        );
        assert_eq!(even_symmetric_patterns(4, 0), vec![Vec::<u32>::new()]);
    }
}

//! Counting integer metrics on one-vertex face-bicolored ribbon graphs.
//!
//! A face-bicolored ribbon graph has its boundary components properly
//! two-colored (adjacent components differ). Only the one-vertex case
//! enters the wall recursion; Euler's relation then forces the vertex
//! valency kappa = [4g - 2 + 2 n_black + 2 n_white]. The counting function
//! vanishes unless the black and white perimeter sums agree, and is a
//! piecewise polynomial of degree at most 2g on that hyperplane.

use super::compute_faces;
use super::count::count_metrics;
use crate::exact::{factorial, Rat};
use crate::{Error, Result};
use num_bigint::BigInt;
use num_traits::Zero;

/// F_{g,(n_black,n_white)}(b_black; b_white): weighted count of integer
/// metrics on one-vertex face-bicolored ribbon graphs of genus g with
/// labeled boundary components of the given colors and perimeters.
///
/// Evaluated by the orbit formula: fix the single vertex cycle sigma, sum
/// the counts over all matchings, proper colorings and per-color labelings,
/// and divide by the centralizer order of sigma.
pub fn face_bicolored_counting(
    g: u32,
    n_black: usize,
    n_white: usize,
    b_black: &[i64],
    b_white: &[i64],
) -> Result<Rat> {
    assert_eq!(b_black.len(), n_black);
    assert_eq!(b_white.len(), n_white);
    if b_black.iter().any(|&x| x <= 0) || b_white.iter().any(|&x| x <= 0) {
        return Err(Error::Parse("perimeters must be positive".into()));
    }
    let zero = Rat::zero();
    if b_black.iter().sum::<i64>() != b_white.iter().sum::<i64>() {
        return Ok(zero);
    }
    let valency = 4 * g as i64 - 2 + 2 * (n_black + n_white) as i64;
    if valency < 2 {
        return Ok(zero);
    }
    let nh = valency as usize;
    let sigma: Vec<u32> = (0..nh as u32).map(|i| (i + 1) % nh as u32).collect();
    let n = n_black + n_white;
    let e = nh / 2;

    let mut alpha = vec![u32::MAX; nh];
    let mut total = BigInt::from(0);
    rec_matchings(&sigma, &mut alpha, &mut |alpha| {
        let (face_of, nf) = compute_faces(&sigma, alpha);
        if nf != n {
            return;
        }
        let euler = 1 - e as i64 + nf as i64;
        if euler != 2 - 2 * g as i64 {
            return;
        }
        // proper 2-coloring of the faces (adjacent across an edge differ)
        let Some(coloring) = bicolor_faces(&sigma, alpha, &face_of, nf) else {
            return;
        };
        // incidence rows per face
        let graph = super::RibbonGraph {
            sigma: sigma.clone(),
            alpha: alpha.to_vec(),
            face_of,
            n_faces: nf,
            genus: g,
        };
        let inc = graph.face_edge_matrix();
        for flip in [false, true] {
            let color_of = |f: usize| coloring[f] ^ flip;
            let blacks: Vec<usize> = (0..nf).filter(|&f| !color_of(f)).collect();
            let whites: Vec<usize> = (0..nf).filter(|&f| color_of(f)).collect();
            if blacks.len() != n_black || whites.len() != n_white {
                continue;
            }
            // all assignments of labels within each color
            let mut sum_here = BigInt::from(0);
            permute_assign(&blacks, b_black, &mut |bb: &[(usize, i64)]| {
                permute_assign(&whites, b_white, &mut |ww: &[(usize, i64)]| {
                    let mut b = vec![0i64; nf];
                    for &(f, v) in bb.iter().chain(ww.iter()) {
                        b[f] = v;
                    }
                    let cnt = count_metrics(&inc, &b, None).unwrap();
                    sum_here += BigInt::from(cnt);
                });
            });
            total += sum_here;
            // when one color class is empty, flipping changes nothing
            if n_black == 0 || n_white == 0 {
                break;
            }
        }
    });
    // centralizer of a full cycle has order nh
    Ok(Rat::new(total, BigInt::from(nh)))
}

fn rec_matchings(sigma: &[u32], alpha: &mut Vec<u32>, emit: &mut impl FnMut(&Vec<u32>)) {
    let nh = sigma.len();
    let a = match (0..nh).find(|&h| alpha[h] == u32::MAX) {
        None => {
            emit(alpha);
            return;
        }
        Some(a) => a,
    };
    for b in a + 1..nh {
        if alpha[b] != u32::MAX {
            continue;
        }
        alpha[a] = b as u32;
        alpha[b] = a as u32;
        rec_matchings(sigma, alpha, emit);
        alpha[a] = u32::MAX;
        alpha[b] = u32::MAX;
    }
}

/// Proper 2-coloring of the faces, or None when impossible. Colors are
/// booleans with face of half-edge 0 colored false.
fn bicolor_faces(sigma: &[u32], alpha: &[u32], face_of: &[u32], nf: usize) -> Option<Vec<bool>> {
    let _ = sigma;
    let mut color: Vec<Option<bool>> = vec![None; nf];
    color[face_of[0] as usize] = Some(false);
    // adjacency via edges: half-edge h and alpha(h) lie on the two sides
    let mut changed = true;
    while changed {
        changed = false;
        for h in 0..alpha.len() {
            let f = face_of[h] as usize;
            let g = face_of[alpha[h] as usize] as usize;
            match (color[f], color[g]) {
                (Some(a), Some(b)) => {
                    if f == g || a == b {
                        return None;
                    }
                }
                (Some(a), None) => {
                    color[g] = Some(!a);
                    changed = true;
                }
                (None, Some(b)) => {
                    color[f] = Some(!b);
                    changed = true;
                }
                (None, None) => {}
            }
        }
    }
    color.into_iter().collect()
}

fn permute_assign(
    faces: &[usize],
    values: &[i64],
    emit: &mut impl FnMut(&[(usize, i64)]),
) {
    debug_assert_eq!(faces.len(), values.len());
    let mut idx: Vec<usize> = (0..values.len()).collect();
    permute_rec(&mut idx, 0, &mut |perm: &[usize]| {
        let pairs: Vec<(usize, i64)> = faces
            .iter()
            .zip(perm)
            .map(|(&f, &i)| (f, values[i]))
            .collect();
        emit(&pairs);
    });
}

fn permute_rec(idx: &mut Vec<usize>, at: usize, emit: &mut impl FnMut(&[usize])) {
    if at == idx.len() {
        emit(idx);
        return;
    }
    for i in at..idx.len() {
        idx.swap(at, i);
        permute_rec(idx, at + 1, emit);
        idx.swap(at, i);
    }
}

/// Top-degree part (degree 2g) of the one-vertex bicolored counting
/// function, as a value at the given on-support point: computed as the
/// leading coefficient of t -> F(t*b_black; t*b_white), which needs
/// 2g + 2 ray samples. For g = 0 this is just the counting value itself.
pub fn face_bicolored_top_degree(
    g: u32,
    n_black: usize,
    n_white: usize,
    b_black: &[i64],
    b_white: &[i64],
) -> Result<Rat> {
    let deg = 2 * g;
    let mut q = Vec::new();
    for t in 1..=(deg as i64 + 2) {
        let bb: Vec<i64> = b_black.iter().map(|&x| t * x).collect();
        let ww: Vec<i64> = b_white.iter().map(|&x| t * x).collect();
        q.push(face_bicolored_counting(g, n_black, n_white, &bb, &ww)?);
    }
    let mut diff = q;
    for _ in 0..deg {
        diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    if diff[0] != diff[1] {
        return Err(Error::CellViolation(format!(
            "bicolored restriction not polynomial of degree {deg} at ({b_black:?}; {b_white:?})"
        )));
    }
    Ok(&diff[0] / factorial(deg as u64))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_int;

    #[test]
    fn vanishes_off_support() {
        assert_eq!(
            face_bicolored_counting(0, 1, 1, &[3], &[4]).unwrap(),
            rat_int(0)
        );
        assert_eq!(
            face_bicolored_counting(1, 1, 1, &[5], &[6]).unwrap(),
            rat_int(0)
        );
    }

    #[test]
    fn genus0_one_one_is_one() {
        // kappa = [2]: the loop with two faces of equal perimeter; exactly
        // one metric and no color-preserving symmetry
        for m in 1..=12 {
            assert_eq!(
                face_bicolored_counting(0, 1, 1, &[m], &[m]).unwrap(),
                rat_int(1),
                "m={m}"
            );
        }
    }

    #[test]
    fn genus1_one_one_degree_two() {
        // F_{1,(1,1)}(m, m) should be a quasi-polynomial of degree at most
        // 2 in m; check the third difference vanishes on each parity class
        for parity in [0i64, 1] {
            let vals: Vec<Rat> = (1..=6)
                .map(|k| {
                    let m = 2 * k + parity + 2;
                    face_bicolored_counting(1, 1, 1, &[m], &[m]).unwrap()
                })
                .collect();
            let mut diff = vals;
            for _ in 0..3 {
                diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
            }
            for d in &diff {
                assert!(d.is_zero(), "third difference nonzero: {d}");
            }
        }
    }

    #[test]
    fn top_degree_genus0_matches_value() {
        let v = face_bicolored_top_degree(0, 1, 1, &[7], &[7]).unwrap();
        assert_eq!(v, rat_int(1));
    }
}

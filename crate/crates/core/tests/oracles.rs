//! Implementations checked against brute-force oracles that share no code path
//! with them: box scans with rational comparisons, permutation enumeration.

use itertools::Itertools;
use lhall_core::*;
use num_bigint::BigUint;

/// Membership in `Par_s` straight from the barycentric description: `x` is in
/// `Par_s` iff the coefficients `c₁ = x₁/s₁`, `cᵢ = xᵢ/sᵢ − xᵢ₋₁/sᵢ₋₁` lie in `[0,1)`.
/// Fractions are compared as reduced numerator/denominator pairs.
fn in_par_by_coefficients(s: &[u64], x: &[i64]) -> bool {
    let mut prev_num = 0i128;
    let mut prev_den = 1i128;
    for (&si, &xi) in s.iter().zip(x) {
        // c = xi/si − prev_num/prev_den
        let num = xi as i128 * prev_den - prev_num * si as i128;
        let den = si as i128 * prev_den;
        if num < 0 || num >= den {
            return false;
        }
        prev_num = xi as i128;
        prev_den = si as i128;
    }
    true
}

/// All integer points of the box `∏ [0, bound_i]`.
fn box_points(bounds: &[i64]) -> Vec<Vec<i64>> {
    bounds
        .iter()
        .map(|&b| 0..=b)
        .multi_cartesian_product()
        .collect()
}

fn seq(v: &[u64]) -> Seq {
    Seq::from_entries(v.to_vec()).unwrap()
}

#[test]
fn par_enumeration_matches_box_scan() {
    for entries in [
        vec![2, 3],
        vec![3, 1, 2],
        vec![1, 4, 2, 1],
        vec![2, 2, 2],
        vec![5, 3],
        vec![1, 2, 3, 4, 1],
    ] {
        let s = seq(&entries);
        let n = entries.len() as i64;
        // Coordinate i of a member is below (i+1)·sᵢ.
        let bounds: Vec<i64> = entries
            .iter()
            .enumerate()
            .map(|(i, &e)| (i as i64 + 1) * e as i64)
            .collect();
        let mut expected: Vec<LatticePoint> = box_points(&bounds)
            .into_iter()
            .filter(|x| in_par_by_coefficients(&entries, x))
            .map(LatticePoint::new)
            .collect();
        expected.sort();
        let got = enumerate_par(&s, &Limits::default()).unwrap().points();
        assert_eq!(got, expected, "s = {s}, n = {n}");
        assert_eq!(BigUint::from(got.len()), s.product());
    }
}

/// `#(ℤⁿ ∩ tP_s)` by scanning the box `∏[0, t·sᵢ]` with exact chain checks.
fn ehrhart_by_box(s: &[u64], t: u64) -> u64 {
    let bounds: Vec<i64> = s.iter().map(|&e| (t * e) as i64).collect();
    box_points(&bounds)
        .into_iter()
        .filter(|x| {
            x.windows(2)
                .zip(s.windows(2))
                .all(|(xx, ss)| xx[0] as i128 * ss[1] as i128 <= xx[1] as i128 * ss[0] as i128)
        })
        .count() as u64
}

#[test]
fn ehrhart_direct_matches_box_scan() {
    let l = Limits::default();
    for entries in [
        vec![2, 3],
        vec![3, 1, 2],
        vec![1, 4, 2],
        vec![2, 2, 2],
        vec![4],
        vec![2, 1, 3, 1],
    ] {
        let s = seq(&entries);
        for t in 0..=3 {
            let direct = ehrhart_direct(&s, t, &l).unwrap().count;
            assert_eq!(
                direct,
                BigUint::from(ehrhart_by_box(&entries, t)),
                "s = {s}, t = {t}"
            );
        }
    }
}

#[test]
fn delta_matches_series_of_box_counts() {
    // δ from the Ehrhart series: δ_k = Σ_j (−1)^j C(n+1, j) i(k − j).
    let l = Limits::default();
    for entries in [vec![2, 3], vec![3, 1, 2], vec![2, 4], vec![1, 3, 2, 2]] {
        let n = entries.len();
        let counts: Vec<i128> = (0..=n as u64)
            .map(|t| ehrhart_by_box(&entries, t) as i128)
            .collect();
        let choose =
            |a: i128, b: i128| -> i128 { (0..b).fold(1i128, |acc, j| acc * (a - j) / (j + 1)) };
        let expected: Vec<BigUint> = (0..=n)
            .map(|k| {
                let v: i128 = (0..=k)
                    .map(|j| {
                        let sign = if j % 2 == 0 { 1 } else { -1 };
                        sign * choose(n as i128 + 1, j as i128) * counts[k - j]
                    })
                    .sum();
                BigUint::from(v as u64)
            })
            .collect();
        let s = seq(&entries);
        assert_eq!(
            delta_via_parallelepiped(&s, &l).unwrap().entries(),
            expected,
            "s = {s}"
        );
        assert_eq!(
            delta_via_descents(&s, &l).unwrap().entries(),
            expected,
            "s = {s}"
        );
    }
}

#[test]
fn inversion_sequences_are_a_bijection() {
    // Oracle: count, for each value, larger values to its left, directly on the permutation.
    for n in 1..=7usize {
        let mut images = Vec::new();
        for p in (1..=n).permutations(n) {
            let perm = Permutation::new(p.clone()).unwrap();
            let w = inversion_sequence(&perm);
            for v in 1..=n {
                let pos = p.iter().position(|&x| x == v).unwrap();
                let expected = p[..pos].iter().filter(|&&x| x > v).count() as u64;
                assert_eq!(w.digits()[v - 1], expected);
            }
            assert_eq!(perm_from_inversion_sequence(&w).unwrap(), perm);
            images.push(w.digits().to_vec());
        }
        images.sort();
        let all: Vec<Vec<u64>> = enumerate_words(&Seq::anti(n).unwrap(), &Limits::default())
            .unwrap()
            .map(|w| w.digits().to_vec())
            .collect();
        assert_eq!(images, all, "n = {n}");
    }
}

#[test]
fn plain_descents_of_inversion_sequences_are_eulerian() {
    for n in 1..=7 {
        let words = enumerate_words(&Seq::anti(n).unwrap(), &Limits::default()).unwrap();
        let mut hist = vec![0u64; n];
        for w in words {
            hist[des_set(w.digits()).len()] += 1;
        }
        assert_eq!(hist, eulerian_row_by_enumeration(n), "n = {n}");
    }
}

#[test]
fn anti_lecture_weights_do_not_change_comparisons() {
    // For s − s' = 1: r·s' > r'·s ⟺ r > r' over r < s, r' < s'.
    for s in 2..=12u64 {
        let sp = s - 1;
        for r in 0..s {
            for rp in 0..sp {
                let weights = seq(&[s, sp]);
                let weighted = !s_des_set(&weights, &[r, rp]).unwrap().is_empty();
                assert_eq!(weighted, r > rp, "s = {s}, r = {r}, r' = {rp}");
            }
        }
    }
}

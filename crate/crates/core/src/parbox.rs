//! The lecture-hall parallelepiped `Par_s` and its bijections onto `Ψₙ`.
//!
//! `Par_s` is the half-open parallelepiped spanned by the nonzero vertices of
//! `P_s`. Membership uses the cleared-denominator form
//!
//! ```text
//! 0 ≤ x₁ < s₁,    0 ≤ sᵢ·xᵢ₊₁ − sᵢ₊₁·xᵢ < sᵢ·sᵢ₊₁   (1 ≤ i < n)
//! ```
//!
//! so the barycentric coefficients never materialize.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::seq::{KRPair, LatticePoint, Seq, Word};
use crate::stats::s_des_prefix_counts;

/// Names the first violated inequality, or `None` for members of `Par_s ∩ ℤⁿ`.
pub fn par_violation(s: &Seq, x: &LatticePoint) -> Result<Option<String>> {
    s.check_len(x.len())?;
    let s = s.entries();
    let x = x.coords();
    if x[0] < 0 || x[0] as i128 >= s[0] as i128 {
        return Ok(Some(format!(
            "first coordinate condition failed: need 0 <= x_1 < s_1, got x_1 = {}, s_1 = {}",
            x[0], s[0]
        )));
    }
    for i in 0..x.len() - 1 {
        let gap = s[i] as i128 * x[i + 1] as i128 - s[i + 1] as i128 * x[i] as i128;
        let width = s[i] as i128 * s[i + 1] as i128;
        if gap < 0 || gap >= width {
            return Ok(Some(format!(
                "band condition failed at i={}: need 0 <= x_{}/s_{} - x_{}/s_{} < 1",
                i + 1,
                i + 2,
                i + 2,
                i + 1,
                i + 1
            )));
        }
    }
    Ok(None)
}

/// Membership of `x` in `Par_s ∩ ℤⁿ`.
pub fn par_contains(s: &Seq, x: &LatticePoint) -> Result<bool> {
    Ok(par_violation(s, x)?.is_none())
}

fn require_member(s: &Seq, x: &LatticePoint) -> Result<()> {
    match par_violation(s, x)? {
        None => Ok(()),
        Some(reason) => Err(Error::NotInParallelepiped { reason }),
    }
}

fn require_radices(s: &Seq, w: &Word) -> Result<()> {
    if w.radices() != s {
        return Err(Error::RadixMismatch {
            expected: s.to_string(),
            found: w.radices().to_string(),
        });
    }
    Ok(())
}

/// Admissible next coordinates after `xᵢ`: the `sᵢ₊₁` integers in
/// `[⌈sᵢ₊₁xᵢ/sᵢ⌉, ⌊(sᵢ₊₁xᵢ + sᵢsᵢ₊₁ − 1)/sᵢ⌋]`.
#[inline]
fn band(s_i: u64, s_next: u64, x_i: i64) -> (i64, i64) {
    let num = s_next as i128 * x_i as i128;
    let lo = div_ceil(num, s_i as i128);
    let hi = (num + s_i as i128 * s_next as i128 - 1).div_euclid(s_i as i128);
    (lo as i64, hi as i64)
}

#[inline]
fn div_ceil(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

/// Depth-first band enumeration below a fixed first coordinate, in lexicographic order.
fn walk_from(s: &[u64], x1: i64, visit: &mut impl FnMut(&[i64])) {
    let mut x = vec![0i64; s.len()];
    x[0] = x1;
    fn go(s: &[u64], x: &mut [i64], depth: usize, visit: &mut impl FnMut(&[i64])) {
        if depth == s.len() {
            visit(x);
            return;
        }
        let (lo, hi) = band(s[depth - 1], s[depth], x[depth - 1]);
        for v in lo..=hi {
            x[depth] = v;
            go(s, x, depth + 1, visit);
        }
    }
    go(s, &mut x, 1, visit);
}

/// Runs `per_x1` for every first coordinate `0 ≤ x₁ < s₁` and returns the
/// results in `x₁` order, in parallel when allowed.
fn over_first_coordinate<T: Send>(
    s: &Seq,
    limits: &Limits,
    per_x1: impl Fn(i64) -> T + Sync + Send,
) -> Result<Vec<T>> {
    limits.admit(&s.product())?;
    let range = 0..s.first() as i64;
    Ok(if limits.parallel {
        range.into_par_iter().map(per_x1).collect()
    } else {
        range.map(per_x1).collect()
    })
}

/// Lattice points of `Par_s` bucketed by last coordinate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedPointSet {
    s: Seq,
    levels: BTreeMap<i64, Vec<LatticePoint>>,
}

impl GradedPointSet {
    pub fn seq(&self) -> &Seq {
        &self.s
    }

    pub fn levels(&self) -> &BTreeMap<i64, Vec<LatticePoint>> {
        &self.levels
    }

    /// `𝓛ⁱ`: the points at level `i`, in lexicographic order.
    pub fn level(&self, i: i64) -> &[LatticePoint] {
        self.levels.get(&i).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn len(&self) -> usize {
        self.levels.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    /// Every point, lexicographically sorted.
    pub fn points(&self) -> Vec<LatticePoint> {
        let mut all: Vec<LatticePoint> = self.levels.values().flatten().cloned().collect();
        all.sort();
        all
    }
}

/// All of `Par_s ∩ ℤⁿ`: exactly `∏ sᵢ` points.
pub fn enumerate_par(s: &Seq, limits: &Limits) -> Result<GradedPointSet> {
    let chunks = over_first_coordinate(s, limits, |x1| {
        let mut pts = Vec::new();
        walk_from(s.entries(), x1, &mut |x| {
            pts.push(LatticePoint::new(x.to_vec()))
        });
        pts
    })?;
    let mut levels: BTreeMap<i64, Vec<LatticePoint>> = BTreeMap::new();
    // Chunks are ordered by x₁ and each chunk is lexicographic, so every level stays sorted.
    for p in chunks.into_iter().flatten() {
        levels.entry(p.level()).or_default().push(p);
    }
    Ok(GradedPointSet {
        s: s.clone(),
        levels,
    })
}

/// `ℓⁱ` for `i = 0..=max level`.
pub fn grade(pts: &GradedPointSet) -> Vec<u64> {
    let Some(&max) = pts.levels.keys().next_back() else {
        return Vec::new();
    };
    let mut out = vec![0u64; max as usize + 1];
    for (&lvl, list) in &pts.levels {
        out[lvl as usize] = list.len() as u64;
    }
    out
}

/// Same numbers as `grade(&enumerate_par(s))` without storing the points.
pub fn grade_par(s: &Seq, limits: &Limits) -> Result<Vec<u64>> {
    let parts = over_first_coordinate(s, limits, |x1| {
        let mut hist: Vec<u64> = Vec::new();
        walk_from(s.entries(), x1, &mut |x| {
            let lvl = x[x.len() - 1] as usize;
            if hist.len() <= lvl {
                hist.resize(lvl + 1, 0);
            }
            hist[lvl] += 1;
        });
        hist
    })?;
    Ok(parts
        .into_iter()
        .fold(Vec::new(), crate::seq::add_histograms))
}

/// `REM_s`: `rᵢ = xᵢ mod sᵢ`.
pub fn rem(s: &Seq, x: &LatticePoint) -> Result<Word> {
    Ok(kr(s, x)?.r)
}

/// `f_s`: splits `xᵢ = kᵢsᵢ + rᵢ` into quotients and remainders.
pub fn kr(s: &Seq, x: &LatticePoint) -> Result<KRPair> {
    require_member(s, x)?;
    let (k, r): (Vec<u64>, Vec<u64>) = x
        .coords()
        .iter()
        .zip(s.entries())
        .map(|(&xi, &si)| {
            let xi = xi as u64; // members are nonnegative
            (xi / si, xi % si)
        })
        .unzip();
    Ok(KRPair {
        k,
        r: Word::new(s.clone(), r)?,
    })
}

/// `REM_s⁻¹(r)ᵢ = des_s^{<i}(r)·sᵢ + rᵢ`.
pub fn rem_inv(s: &Seq, r: &Word) -> Result<LatticePoint> {
    require_radices(s, r)?;
    let k = s_des_prefix_counts(s.entries(), r.digits());
    let coords = k
        .iter()
        .zip(s.entries())
        .zip(r.digits())
        .map(|((&ki, &si), &ri)| {
            ki.checked_mul(si)
                .and_then(|v| v.checked_add(ri))
                .and_then(|v| i64::try_from(v).ok())
                .ok_or(Error::Overflow { context: "rem_inv" })
        })
        .collect::<Result<Vec<i64>>>()?;
    Ok(LatticePoint::new(coords))
}

/// `Φ_s^q`: `zᵢ = (qᵢ − rᵢ) mod sᵢ`. An involution on `Ψₙ` for fixed `q`.
pub fn phi_q(s: &Seq, q: &Word, r: &Word) -> Result<Word> {
    require_radices(s, q)?;
    require_radices(s, r)?;
    let z = s
        .entries()
        .iter()
        .zip(q.digits().iter().zip(r.digits()))
        .map(|(&si, (&qi, &ri))| if qi >= ri { qi - ri } else { qi + (si - ri) })
        .collect();
    Ok(Word::from_parts_unchecked(s.clone(), z))
}

/// `Φ_s = Φ_s^0`: `zᵢ = sᵢ − rᵢ` for `rᵢ ≠ 0`, else `0`.
pub fn phi(s: &Seq, r: &Word) -> Result<Word> {
    phi_q(s, &Word::zero(s.clone()), r)
}

/// `REM_s^q`: `yᵢ = (xᵢ + qᵢ) mod sᵢ`.
pub fn rem_q(s: &Seq, q: &Word, x: &LatticePoint) -> Result<Word> {
    require_radices(s, q)?;
    let r = rem(s, x)?;
    let y = s
        .entries()
        .iter()
        .zip(q.digits().iter().zip(r.digits()))
        .map(|(&si, (&qi, &ri))| ((qi as u128 + ri as u128) % si as u128) as u64)
        .collect();
    Ok(Word::from_parts_unchecked(s.clone(), y))
}

/// `R̄EM_s^q`: `zᵢ` with `xᵢ + zᵢ ≡ qᵢ (mod sᵢ)`, i.e. `Φ_s^q ∘ REM_s`.
pub fn rem_bar_q(s: &Seq, q: &Word, x: &LatticePoint) -> Result<Word> {
    require_radices(s, q)?;
    require_member(s, x)?;
    let z = s
        .entries()
        .iter()
        .zip(q.digits().iter().zip(x.coords()))
        .map(|(&si, (&qi, &xi))| (qi as i128 - xi as i128).rem_euclid(si as i128) as u64)
        .collect();
    Ok(Word::from_parts_unchecked(s.clone(), z))
}

/// `R̄EM_s = R̄EM_s^0`.
pub fn rem_bar(s: &Seq, x: &LatticePoint) -> Result<Word> {
    rem_bar_q(s, &Word::zero(s.clone()), x)
}

/// Inverse of [`rem_q`].
pub fn rem_q_inv(s: &Seq, q: &Word, y: &Word) -> Result<LatticePoint> {
    require_radices(s, q)?;
    require_radices(s, y)?;
    let r = s
        .entries()
        .iter()
        .zip(q.digits().iter().zip(y.digits()))
        .map(|(&si, (&qi, &yi))| if yi >= qi { yi - qi } else { yi + (si - qi) })
        .collect();
    rem_inv(s, &Word::from_parts_unchecked(s.clone(), r))
}

/// Inverse of [`rem_bar_q`], computed as `REM_s⁻¹ ∘ Φ_s^q`.
pub fn rem_bar_q_inv(s: &Seq, q: &Word, z: &Word) -> Result<LatticePoint> {
    rem_inv(s, &phi_q(s, q, z)?)
}

pub fn rem_bar_inv(s: &Seq, z: &Word) -> Result<LatticePoint> {
    rem_bar_q_inv(s, &Word::zero(s.clone()), z)
}

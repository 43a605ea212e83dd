//! δ-vectors and Ehrhart counts of the `s`-lecture hall polytope
//! `P_s = {λ : 0 ≤ λ₁/s₁ ≤ … ≤ λₙ/sₙ ≤ 1}`.
//!
//! Three independent routes to δ:
//! - grading the lattice points of `Par_{s*}` by last coordinate;
//! - counting `s*`-descents of `Ψₙ×⟨0⟩`;
//! - counting `s`-ascents of `Ψₙ` (only when `s₁ = 1`).
//!
//! Ehrhart values come either from a direct enumeration of `tP_s` or from δ via
//! `i(P,t) = Σᵢ δᵢ·C(t+n−i, n)`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::parbox::grade_par;
use crate::seq::Seq;
use crate::stats::{des_count_distribution, StatMode};

/// `(δ₀, …, δₙ)`, always of length `n + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeltaVector {
    s: Seq,
    entries: Vec<BigUint>,
}

impl DeltaVector {
    /// Wraps raw entries. Shorter inputs are zero-padded to `n + 1`; longer ones
    /// must be zero beyond index `n`.
    pub fn new(s: Seq, entries: Vec<BigUint>) -> Result<Self> {
        let n = s.len();
        let mut entries = entries;
        if entries.len() > n + 1 {
            if entries[n + 1..].iter().any(|e| !e.is_zero()) {
                return Err(Error::LengthMismatch {
                    expected: n + 1,
                    found: entries.len(),
                });
            }
            entries.truncate(n + 1);
        }
        entries.resize(n + 1, BigUint::zero());
        Ok(DeltaVector { s, entries })
    }

    fn from_counts(s: &Seq, counts: Vec<u64>) -> Result<Self> {
        DeltaVector::new(s.clone(), counts.into_iter().map(BigUint::from).collect())
    }

    pub fn seq(&self) -> &Seq {
        &self.s
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.entries
    }

    pub fn sum(&self) -> BigUint {
        self.entries.iter().sum()
    }

    /// Σδᵢ = ∏sᵢ and δ₀ = 1.
    pub fn is_consistent(&self) -> bool {
        self.sum() == self.s.product() && self.entries[0].is_one()
    }
}

/// `δᵢ = ℓⁱ(Par_{s*})`.
pub fn delta_via_parallelepiped(s: &Seq, limits: &Limits) -> Result<DeltaVector> {
    DeltaVector::from_counts(s, grade_par(&s.star(), limits)?)
}

/// `δᵢ = #{r ∈ Ψₙ×⟨0⟩ : des_{s*}(r) = i}`.
///
/// When `sₙ = 1` the unstarred count over `Ψₙ` is also evaluated in debug builds
/// and must agree.
pub fn delta_via_descents(s: &Seq, limits: &Limits) -> Result<DeltaVector> {
    let counts = des_count_distribution(s, StatMode::SDes, true, limits)?;
    if cfg!(debug_assertions) && s.last() == 1 {
        let shortcut = des_count_distribution(s, StatMode::SDes, false, limits)?;
        debug_assert_eq!(
            counts, shortcut,
            "starred and unstarred descent counts differ for s = {s}"
        );
    }
    DeltaVector::from_counts(s, counts)
}

/// `δᵢ = #{r ∈ Ψₙ : des_s(r) = i}`, valid only for `sₙ = 1`.
pub fn delta_via_descents_unstarred(s: &Seq, limits: &Limits) -> Result<DeltaVector> {
    if s.last() != 1 {
        return Err(Error::RequiresLastEntryOne { last: s.last() });
    }
    DeltaVector::from_counts(s, des_count_distribution(s, StatMode::SDes, false, limits)?)
}

/// `δᵢ = #{r ∈ Ψₙ : asc_s(r) = i}`, valid only for `s₁ = 1`.
pub fn delta_via_ascents(s: &Seq, limits: &Limits) -> Result<DeltaVector> {
    if s.first() != 1 {
        return Err(Error::RequiresFirstEntryOne { first: s.first() });
    }
    DeltaVector::from_counts(s, des_count_distribution(s, StatMode::SAsc, false, limits)?)
}

/// A value `i(P_s, t)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartValue {
    pub t: u64,
    pub count: BigUint,
}

/// Counts `ℤⁿ ∩ tP_s` by enumerating `λₙ ∈ [0, t·sₙ]` and then each
/// `λᵢ ∈ [0, ⌊sᵢλᵢ₊₁/sᵢ₊₁⌋]` downward; `λ₁` is counted in closed form.
pub fn ehrhart_direct(s: &Seq, t: u64, limits: &Limits) -> Result<EhrhartValue> {
    let w = s.entries();
    let n = w.len();
    let top = t
        .checked_mul(s.last())
        .filter(|&v| v <= i64::MAX as u64)
        .ok_or(Error::Overflow { context: "t * s_n" })?;
    let cap = limits.max_points;

    // Number of admissible (λ₁,…,λ_{i+1}) given λ_{i+1} ≤ upper (0-based i), with a running budget.
    fn count(w: &[u64], i: usize, upper: u64, used: &mut u64, cap: u64) -> Option<u64> {
        if i == 0 {
            let c = upper + 1;
            *used = used.checked_add(c).filter(|&u| u <= cap)?;
            return Some(c);
        }
        let mut total = 0u64;
        for v in 0..=upper {
            let below = (w[i - 1] as u128 * v as u128 / w[i] as u128) as u64;
            total += count(w, i - 1, below, used, cap)?;
        }
        Some(total)
    }

    let per_top = |v: u64| -> Option<u64> {
        let mut used = 0u64;
        let below = (w[n - 2] as u128 * v as u128 / w[n - 1] as u128) as u64;
        count(w, n - 2, below, &mut used, cap)
    };
    let cap_err = || Error::SizeCap {
        required: BigUint::from(cap) + 1u32,
        cap,
    };
    let total: Option<u64> = if n == 1 {
        (top < cap).then_some(top + 1)
    } else if limits.parallel {
        let parts: Vec<Option<u64>> = (0..=top).into_par_iter().map(per_top).collect();
        parts
            .into_iter()
            .try_fold(0u64, |acc, p| acc.checked_add(p?).filter(|&a| a <= cap))
    } else {
        (0..=top).try_fold(0u64, |acc, v| {
            acc.checked_add(per_top(v)?).filter(|&a| a <= cap)
        })
    };
    let total = total.ok_or_else(cap_err)?;
    Ok(EhrhartValue {
        t,
        count: BigUint::from(total),
    })
}

/// `C(m, k)` by the multiplicative formula; `0` when `m < k`.
pub fn binomial(m: u128, k: u64) -> BigUint {
    if (k as u128) > m {
        return BigUint::zero();
    }
    let k = (k as u128).min(m - k as u128);
    let mut acc = BigUint::one();
    for j in 1..=k {
        acc *= BigUint::from(m - k + j);
        acc /= BigUint::from(j);
    }
    acc
}

/// `i(P,t) = Σᵢ δᵢ·C(t + n − i, n)`.
pub fn ehrhart_from_delta(d: &DeltaVector, t: u64) -> EhrhartValue {
    let n = d.s.len() as u128;
    let count = d
        .entries
        .iter()
        .enumerate()
        .filter(|(_, e)| !e.is_zero())
        .filter_map(|(i, e)| {
            let m = (t as u128 + n).checked_sub(i as u128)?;
            Some(e * binomial(m, n as u64))
        })
        .sum();
    EhrhartValue { t, count }
}

/// Checks `Σ_{t≤T} i(P_s,t)zᵗ · (1−z)^{n+1} ≡ δ(z)` on every coefficient of degree `≤ T`,
/// using the parallelepiped δ.
pub fn series_check(s: &Seq, order: u64, limits: &Limits) -> Result<bool> {
    let d = delta_via_parallelepiped(s, limits)?;
    series_check_with(&d, order, limits)
}

/// Same as [`series_check`] for a caller-supplied δ (e.g. a deliberately wrong one).
pub fn series_check_with(d: &DeltaVector, order: u64, limits: &Limits) -> Result<bool> {
    let s = d.seq();
    let n = s.len() as u64;
    if order < n + 1 {
        return Err(Error::TruncationTooLow { order, min: n + 1 });
    }
    let values: Vec<BigInt> = (0..=order)
        .map(|t| ehrhart_direct(s, t, limits).map(|v| BigInt::from(v.count)))
        .collect::<Result<_>>()?;
    // (1 − z)^{n+1} coefficients.
    let kernel: Vec<BigInt> = (0..=n + 1)
        .map(|j| {
            let c = BigInt::from(binomial((n + 1) as u128, j));
            if j % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    for k in 0..=order as usize {
        let coeff: BigInt = kernel
            .iter()
            .enumerate()
            .take(k + 1)
            .map(|(j, c)| c * &values[k - j])
            .sum();
        let expected = d
            .entries()
            .get(k)
            .map(|e| BigInt::from(e.clone()))
            .unwrap_or_default();
        if coeff != expected {
            return Ok(false);
        }
    }
    Ok(true)
}

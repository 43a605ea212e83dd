//! Reversing `s`: with `u = reverse(s)`, the map `reverse ∘ Φ_s` carries
//! `s*`-descents of `(r,0)` to `u*`-descents, which yields the level-preserving
//! bijection `Γ : Par_{s*} → Par_{u*}`. Also the `s₁ = 1` ascent identity and the
//! bijection from `Par_{s*}` (`s = (1,…,n)`) to inversion sequences.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::parbox::{par_violation, phi, rem, rem_bar, rem_inv};
use crate::seq::{fold_words, LatticePoint, Seq, Word};
use crate::stats::{cmp_ratio, count_asc, count_des, count_s_asc, count_s_des};

/// Outcome of an exhaustive check: how many inputs were tried and every failure,
/// sorted lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BatchReport {
    pub checked: u64,
    pub counterexamples: Vec<Vec<i64>>,
}

impl BatchReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }

    fn merge(mut self, other: BatchReport) -> BatchReport {
        self.checked += other.checked;
        self.counterexamples.extend(other.counterexamples);
        self
    }

    fn finish(mut self) -> BatchReport {
        self.counterexamples.sort();
        self
    }
}

/// Runs `check` on every word of `Ψₙ`, collecting the failing words.
fn batch_over_words(
    s: &Seq,
    limits: &Limits,
    check: impl Fn(&[u64]) -> bool + Sync,
) -> Result<BatchReport> {
    let report = fold_words(
        s,
        limits,
        BatchReport::default,
        |acc, r| {
            acc.checked += 1;
            if !check(r) {
                acc.counterexamples
                    .push(r.iter().map(|&d| d as i64).collect());
            }
        },
        BatchReport::merge,
    )?;
    Ok(report.finish())
}

fn padded(r: &[u64]) -> Vec<u64> {
    let mut v = Vec::with_capacity(r.len() + 1);
    v.extend_from_slice(r);
    v.push(0);
    v
}

fn phi_digits(s: &[u64], r: &[u64]) -> Vec<u64> {
    r.iter()
        .zip(s)
        .map(|(&ri, &si)| if ri == 0 { 0 } else { si - ri })
        .collect()
}

/// `des_{s*}(r, 0)` and `des_{u*}(reverse(Φ_s(r)), 0)`.
fn rev_sides(s: &Seq, r: &[u64]) -> (usize, usize) {
    let s_star = s.star();
    let u_star = s.reverse().star();
    let lhs = count_s_des(s_star.entries(), &padded(r));
    let mut image = phi_digits(s.entries(), r);
    image.reverse();
    let rhs = count_s_des(u_star.entries(), &padded(&image));
    (lhs, rhs)
}

/// `des_{s*}(r,0) = des_{u*}(reverse(Φ_s(r)),0)` for one word.
pub fn check_rev_identity(s: &Seq, r: &Word) -> Result<bool> {
    require_radices(s, r)?;
    let (lhs, rhs) = rev_sides(s, r.digits());
    Ok(lhs == rhs)
}

/// [`check_rev_identity`] over all of `Ψₙ`.
pub fn check_rev_identity_all(s: &Seq, limits: &Limits) -> Result<BatchReport> {
    batch_over_words(s, limits, |r| {
        let (lhs, rhs) = rev_sides(s, r);
        lhs == rhs
    })
}

/// The three quantities `des_{s̃}(r)`, `asc_{s̃}(Φ_{s̃}(r))`, `des_{ũ}(reverse(Φ_{s̃}(r)))`.
fn tilde_sides(tilde: &[u64], r: &[u64]) -> [usize; 3] {
    let z = phi_digits(tilde, r);
    let mut rev_z = z.clone();
    rev_z.reverse();
    let rev_tilde: Vec<u64> = tilde.iter().rev().copied().collect();
    [
        count_s_des(tilde, r),
        count_s_asc(tilde, &z),
        count_s_des(&rev_tilde, &rev_z),
    ]
}

/// Checks `des_{s̃}(r) = asc_{s̃}(Φ_{s̃}(r)) = des_{ũ}(reverse(Φ_{s̃}(r)))` for
/// `r ∈ ⟨0⟩×Ψₙ×⟨0⟩` given over radices `s̃`.
pub fn check_tilde_identity(s: &Seq, r: &Word) -> Result<bool> {
    let tilde = s.tilde();
    if r.len() != tilde.len() || r.radices() != &tilde {
        return Err(Error::NotTildeShape);
    }
    let [a, b, c] = tilde_sides(tilde.entries(), r.digits());
    Ok(a == b && b == c)
}

/// [`check_tilde_identity`] over all of `⟨0⟩×Ψₙ×⟨0⟩`. Counterexamples are the full padded words.
pub fn check_tilde_identity_all(s: &Seq, limits: &Limits) -> Result<BatchReport> {
    let tilde = s.tilde();
    let report = fold_words(
        s,
        limits,
        BatchReport::default,
        |acc, r| {
            acc.checked += 1;
            let mut full = Vec::with_capacity(r.len() + 2);
            full.push(0);
            full.extend_from_slice(r);
            full.push(0);
            let [a, b, c] = tilde_sides(tilde.entries(), &full);
            if !(a == b && b == c) {
                acc.counterexamples
                    .push(full.iter().map(|&d| d as i64).collect());
            }
        },
        BatchReport::merge,
    )?;
    Ok(report.finish())
}

/// Every stage of `Γ` applied to one point of `Par_{s*}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BijectionTrace {
    pub source: LatticePoint,
    /// `REM_{s*}(x) ∈ Ψₙ×⟨0⟩`
    pub remainder: Word,
    /// `π(REM_{s*}(x)) ∈ Ψₙ`
    pub projected: Word,
    /// `Φ_s(…)`
    pub phi: Word,
    /// `reverse(…) ∈ Ψ̄ₙ`, over radices `u`
    pub reversed: Word,
    /// `(…, 0) ∈ Ψ̄ₙ×⟨0⟩`
    pub padded: Word,
    /// `REM_{u*}⁻¹(…) ∈ Par_{u*}`
    pub target: LatticePoint,
    pub source_level: i64,
    pub target_level: i64,
}

/// `Γ(x) = REM_{u*}⁻¹((reverse(Φ_s(π(REM_{s*}(x)))), 0))`.
pub fn gamma(s: &Seq, x: &LatticePoint) -> Result<BijectionTrace> {
    let s_star = s.star();
    let u_star = s.reverse().star();
    let remainder = rem(&s_star, x)?;
    let projected = remainder.drop_last()?;
    let phi = phi(s, &projected)?;
    let reversed = phi.reverse();
    let padded = reversed.pad_zero();
    let target = rem_inv(&u_star, &padded)?;
    debug_assert!(par_violation(&u_star, &target)?.is_none());
    Ok(BijectionTrace {
        source: x.clone(),
        source_level: x.level(),
        target_level: target.level(),
        remainder,
        projected,
        phi,
        reversed,
        padded,
        target,
    })
}

/// Checks `x ∈ tP_s`, i.e. `0 ≤ x₁/s₁ ≤ … ≤ xₙ/sₙ ≤ t`, naming the first violation.
pub fn dilation_violation(s: &Seq, t: u64, x: &LatticePoint) -> Result<Option<String>> {
    s.check_len(x.len())?;
    let w = s.entries();
    let c = x.coords();
    if c[0] < 0 {
        return Ok(Some("need 0 <= x_1".to_string()));
    }
    for i in 0..c.len() - 1 {
        // c ≥ 0 from here on by induction.
        if c[i + 1] < 0
            || cmp_ratio(c[i] as u64, w[i], c[i + 1] as u64, w[i + 1]) == Ordering::Greater
        {
            return Ok(Some(format!(
                "need x_{}/s_{} <= x_{}/s_{}",
                i + 1,
                i + 1,
                i + 2,
                i + 2
            )));
        }
    }
    let n = c.len() - 1;
    if c[n] as u128 > t as u128 * w[n] as u128 {
        return Ok(Some(format!("need x_{}/s_{} <= t", n + 1, n + 1)));
    }
    Ok(None)
}

/// The unimodular map `x ↦ reverse(t·s − x)` from `tP_s` onto `tP_u`.
pub fn reversal_point_map(s: &Seq, t: u64, x: &LatticePoint) -> Result<LatticePoint> {
    if let Some(reason) = dilation_violation(s, t, x)? {
        return Err(Error::NotInDilation { reason });
    }
    let coords = s
        .entries()
        .iter()
        .zip(x.coords())
        .rev()
        .map(|(&si, &xi)| {
            (t as i128 * si as i128 - xi as i128)
                .try_into()
                .map_err(|_| Error::Overflow {
                    context: "t * s - x",
                })
        })
        .collect::<Result<Vec<i64>>>()?;
    Ok(LatticePoint::new(coords))
}

/// Lattice points of `tP_s` in lexicographic order (the enumeration behind
/// `ehrhart_direct`, materialized for point-level checks).
pub fn dilation_points(s: &Seq, t: u64, limits: &Limits) -> Result<Vec<LatticePoint>> {
    // Enforces the size cap before materializing anything.
    crate::ehrhart::ehrhart_direct(s, t, limits)?;
    let w = s.entries();
    let n = w.len();
    let top = (t as i128 * w[n - 1] as i128) as i64;
    let mut out = Vec::new();
    let mut x = vec![0i64; n];
    fn go(w: &[u64], x: &mut Vec<i64>, i: usize, upper: i64, out: &mut Vec<LatticePoint>) {
        for v in 0..=upper {
            x[i] = v;
            if i == 0 {
                out.push(LatticePoint::new(x.clone()));
            } else {
                let below = (w[i - 1] as i128 * v as i128 / w[i] as i128) as i64;
                go(w, x, i - 1, below, out);
            }
        }
    }
    go(w, &mut x, n - 1, top, &mut out);
    out.sort();
    Ok(out)
}

/// Intermediate words of the inversion-sequence bijection for `s = (1,…,n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prop64Trace {
    pub source: LatticePoint,
    /// `R̄EM_{s*}(x)`
    pub rem_bar: Word,
    /// `π(R̄EM_{s*}(x))`
    pub projected: Word,
    /// `reverse(π(R̄EM_{s*}(x)))`, an inversion sequence over `(n,…,1)`
    pub output: Word,
    pub level: i64,
    pub projected_asc: usize,
    pub output_des: usize,
}

/// `reverse ∘ π ∘ R̄EM_{s*}` on `Par_{s*}` for `s = (1,…,n)`.
pub fn prop64_map(n: usize, x: &LatticePoint) -> Result<Prop64Trace> {
    let s = Seq::lecture(n)?;
    let rem_bar = rem_bar(&s.star(), x)?;
    let projected = rem_bar.drop_last()?;
    let output = projected.reverse();
    Ok(Prop64Trace {
        source: x.clone(),
        level: x.level(),
        projected_asc: count_asc(projected.digits()),
        output_des: count_des(output.digits()),
        rem_bar,
        projected,
        output,
    })
}

/// For `s₁ = 1`: `des_{s*}(r,0) = asc_{s*}(Φ_s(r),0) = asc_s(Φ_s(r))`.
pub fn check_s1_identity(s: &Seq, r: &Word) -> Result<bool> {
    if s.first() != 1 {
        return Err(Error::RequiresFirstEntryOne { first: s.first() });
    }
    require_radices(s, r)?;
    let [a, b, c] = s1_sides(s, r.digits());
    Ok(a == b && b == c)
}

fn s1_sides(s: &Seq, r: &[u64]) -> [usize; 3] {
    let s_star = s.star();
    let z = phi_digits(s.entries(), r);
    [
        count_s_des(s_star.entries(), &padded(r)),
        count_s_asc(s_star.entries(), &padded(&z)),
        count_s_asc(s.entries(), &z),
    ]
}

/// [`check_s1_identity`] over all of `Ψₙ`.
pub fn check_s1_identity_all(s: &Seq, limits: &Limits) -> Result<BatchReport> {
    if s.first() != 1 {
        return Err(Error::RequiresFirstEntryOne { first: s.first() });
    }
    batch_over_words(s, limits, |r| {
        let [a, b, c] = s1_sides(s, r);
        a == b && b == c
    })
}

/// Checks that `Γ` maps `Par_{s*}` onto `Par_{u*}` level by level: the sorted
/// images of each source level must equal the sorted target level.
/// Counterexamples are source points whose image changes level, leaves the
/// target level, or collides with another image.
pub fn check_gamma_all(s: &Seq, limits: &Limits) -> Result<BatchReport> {
    let source = crate::parbox::enumerate_par(&s.star(), limits)?;
    let target = crate::parbox::enumerate_par(&s.reverse().star(), limits)?;
    let per_level = |(&lvl, src): (&i64, &Vec<LatticePoint>)| -> Result<BatchReport> {
        let tgt = target.level(lvl);
        let mut pairs: Vec<(LatticePoint, LatticePoint)> = src
            .iter()
            .map(|x| gamma(s, x).map(|tr| (tr.target, tr.source)))
            .collect::<Result<_>>()?;
        pairs.sort();
        let mut report = BatchReport {
            checked: src.len() as u64,
            counterexamples: Vec::new(),
        };
        let images: Vec<&LatticePoint> = pairs.iter().map(|(img, _)| img).collect();
        if images.len() != tgt.len() || images.iter().zip(tgt).any(|(a, b)| *a != b) {
            for (i, (img, x)) in pairs.iter().enumerate() {
                let duplicate = (i > 0 && pairs[i - 1].0 == *img)
                    || pairs.get(i + 1).is_some_and(|p| p.0 == *img);
                if duplicate || tgt.binary_search(img).is_err() {
                    report.counterexamples.push(x.coords().to_vec());
                }
            }
        }
        Ok(report)
    };
    let results: Vec<Result<BatchReport>> = if limits.parallel {
        source.levels().par_iter().map(per_level).collect()
    } else {
        source.levels().iter().map(per_level).collect()
    };
    let mut report = BatchReport::default();
    for r in results {
        report = report.merge(r?);
    }
    // Every target point must be hit; with equal totals, no level may be short.
    if report.passed() && source.len() != target.len() {
        report.counterexamples.push(Vec::new());
    }
    Ok(report.finish())
}

/// Exhaustive check of the inversion-sequence bijection for `s = (1,…,n)`:
/// every point satisfies `level = asc(π(R̄EM(x))) = des(output)`, and no two
/// points share an output. `|Par_{s*}| = n!`, so injectivity gives a bijection
/// onto the inversion sequences.
pub fn check_prop64_all(n: usize, limits: &Limits) -> Result<BatchReport> {
    let s = Seq::lecture(n)?;
    let pts = crate::parbox::enumerate_par(&s.star(), limits)?.points();
    let mut report = BatchReport::default();
    let mut pairs = Vec::with_capacity(pts.len());
    for x in &pts {
        let tr = prop64_map(n, x)?;
        report.checked += 1;
        if tr.level != tr.projected_asc as i64 || tr.level != tr.output_des as i64 {
            report.counterexamples.push(x.coords().to_vec());
        }
        pairs.push((tr.output, x));
    }
    pairs.sort();
    for w in pairs.windows(2) {
        if w[0].0 == w[1].0 {
            report.counterexamples.push(w[0].1.coords().to_vec());
            report.counterexamples.push(w[1].1.coords().to_vec());
        }
    }
    report.counterexamples.dedup();
    Ok(report.finish())
}

fn require_radices(s: &Seq, r: &Word) -> Result<()> {
    if r.radices() != s {
        return Err(Error::RadixMismatch {
            expected: s.to_string(),
            found: r.radices().to_string(),
        });
    }
    Ok(())
}

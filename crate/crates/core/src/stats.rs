//! Descents, ascents, inversion sequences and Eulerian numbers.
//!
//! Index sets are reported 1-based: position `i` compares `rᵢ` with `rᵢ₊₁`.
//! Weighted comparisons `rᵢ/sᵢ` vs `rᵢ₊₁/sᵢ₊₁` are decided by exact cross
//! multiplication; ties are neither descents nor ascents.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::seq::{add_histograms, fold_words, Seq, Word};

/// Compares `a/sa` with `b/sb`. Cannot overflow: both products fit in `u128`.
#[inline]
pub(crate) fn cmp_ratio(a: u64, sa: u64, b: u64, sb: u64) -> Ordering {
    (a as u128 * sb as u128).cmp(&(b as u128 * sa as u128))
}

#[inline]
pub(crate) fn count_s_des(s: &[u64], r: &[u64]) -> usize {
    (0..r.len().saturating_sub(1))
        .filter(|&i| cmp_ratio(r[i], s[i], r[i + 1], s[i + 1]) == Ordering::Greater)
        .count()
}

#[inline]
pub(crate) fn count_s_asc(s: &[u64], r: &[u64]) -> usize {
    (0..r.len().saturating_sub(1))
        .filter(|&i| cmp_ratio(r[i], s[i], r[i + 1], s[i + 1]) == Ordering::Less)
        .count()
}

#[inline]
pub(crate) fn count_des(r: &[u64]) -> usize {
    r.windows(2).filter(|w| w[0] > w[1]).count()
}

#[inline]
pub(crate) fn count_asc(r: &[u64]) -> usize {
    r.windows(2).filter(|w| w[0] < w[1]).count()
}

/// `Des(r) = {i : rᵢ > rᵢ₊₁}`.
pub fn des_set(r: &[u64]) -> Vec<usize> {
    r.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] > w[1])
        .map(|(i, _)| i + 1)
        .collect()
}

/// `Asc(r) = {i : rᵢ < rᵢ₊₁}`.
pub fn asc_set(r: &[u64]) -> Vec<usize> {
    r.windows(2)
        .enumerate()
        .filter(|(_, w)| w[0] < w[1])
        .map(|(i, _)| i + 1)
        .collect()
}

fn weighted_set(s: &Seq, r: &[u64], want: Ordering) -> Result<Vec<usize>> {
    s.check_len(r.len())?;
    let s = s.entries();
    Ok((0..r.len().saturating_sub(1))
        .filter(|&i| cmp_ratio(r[i], s[i], r[i + 1], s[i + 1]) == want)
        .map(|i| i + 1)
        .collect())
}

/// `s`-descents: `i` with `rᵢ/sᵢ > rᵢ₊₁/sᵢ₊₁`.
pub fn s_des_set(s: &Seq, r: &[u64]) -> Result<Vec<usize>> {
    weighted_set(s, r, Ordering::Greater)
}

/// `s`-ascents: `i` with `rᵢ/sᵢ < rᵢ₊₁/sᵢ₊₁`.
pub fn s_asc_set(s: &Seq, r: &[u64]) -> Result<Vec<usize>> {
    weighted_set(s, r, Ordering::Less)
}

pub fn s_des(s: &Seq, r: &[u64]) -> Result<usize> {
    s.check_len(r.len())?;
    Ok(count_s_des(s.entries(), r))
}

pub fn s_asc(s: &Seq, r: &[u64]) -> Result<usize> {
    s.check_len(r.len())?;
    Ok(count_s_asc(s.entries(), r))
}

/// `des_s^{<i}(r)`: the number of `s`-descents with index strictly below `i` (1-based, `1 ≤ i ≤ n`).
pub fn s_des_before(s: &Seq, r: &[u64], i: usize) -> Result<usize> {
    s.check_len(r.len())?;
    if i == 0 || i > r.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: r.len(),
        });
    }
    Ok(count_s_des(&s.entries()[..i], &r[..i]))
}

/// All prefix counts `des_s^{<1}(r), …, des_s^{<n}(r)` in one pass.
pub(crate) fn s_des_prefix_counts(s: &[u64], r: &[u64]) -> Vec<u64> {
    let mut k = Vec::with_capacity(r.len());
    let mut acc = 0u64;
    for i in 0..r.len() {
        k.push(acc);
        if i + 1 < r.len() && cmp_ratio(r[i], s[i], r[i + 1], s[i + 1]) == Ordering::Greater {
            acc += 1;
        }
    }
    k
}

/// Descent, ascent and tie classification of one word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StatReport {
    pub des_set: Vec<usize>,
    pub asc_set: Vec<usize>,
    pub des: usize,
    pub asc: usize,
}

impl StatReport {
    /// Weighted statistics of `r` over `s`.
    pub fn weighted(s: &Seq, r: &[u64]) -> Result<Self> {
        let des_set = s_des_set(s, r)?;
        let asc_set = s_asc_set(s, r)?;
        Ok(StatReport {
            des: des_set.len(),
            asc: asc_set.len(),
            des_set,
            asc_set,
        })
    }

    /// Tie positions, `rᵢ·sᵢ₊₁ = rᵢ₊₁·sᵢ`.
    pub fn ties(&self, n: usize) -> Vec<usize> {
        (1..n)
            .filter(|i| !self.des_set.contains(i) && !self.asc_set.contains(i))
            .collect()
    }
}

/// A permutation of `1..=n` in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let n = one_line.len();
        let mut seen = vec![false; n + 1];
        for &v in &one_line {
            if v == 0 || v > n || seen[v] {
                return Err(Error::NotPermutation { n });
            }
            seen[v] = true;
        }
        Ok(Permutation(one_line))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn descents(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] > w[1]).count()
    }
}

/// `I(π) = (a₁,…,aₙ)` where `aᵢ` counts the entries larger than `i` standing
/// to the left of `i`. The result lives over radices `(n, n−1, …, 1)`.
pub fn inversion_sequence(p: &Permutation) -> Word {
    let n = p.len();
    let mut position = vec![0; n + 1];
    for (idx, &v) in p.0.iter().enumerate() {
        position[v] = idx;
    }
    let digits = (1..=n)
        .map(|v| p.0[..position[v]].iter().filter(|&&u| u > v).count() as u64)
        .collect();
    let radices = Seq::anti(n).expect("inversion sequences are over n >= 1");
    Word::new(radices, digits).expect("a_i <= n - i by construction")
}

/// Inverse of [`inversion_sequence`]. Rebuilds `π` by inserting `n, n−1, …, 1`,
/// each value `i` going after exactly `aᵢ` larger values.
pub fn perm_from_inversion_sequence(w: &Word) -> Result<Permutation> {
    if !w.radices().is_anti() {
        return Err(Error::NotInversionShape);
    }
    let n = w.len();
    let mut line: Vec<usize> = Vec::with_capacity(n);
    for v in (1..=n).rev() {
        line.insert(w.digits()[v - 1] as usize, v);
    }
    Permutation::new(line)
}

/// Eulerian number `A(n, i)`: permutations of `n` with exactly `i − 1` descents.
///
/// Uses `A(n,i) = i·A(n−1,i) + (n−i+1)·A(n−1,i−1)`.
pub fn eulerian(n: usize, i: usize) -> Result<BigUint> {
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, len: n });
    }
    Ok(eulerian_row(n).swap_remove(i - 1))
}

/// The row `A(n,1), …, A(n,n)` by the recurrence.
pub fn eulerian_row(n: usize) -> Vec<BigUint> {
    let mut row = vec![BigUint::from(1u32)];
    for m in 2..=n {
        let mut next = vec![BigUint::zero(); m];
        for i in 1..=m {
            let mut v = BigUint::zero();
            if i < m {
                v += &row[i - 1] * i;
            }
            if i >= 2 {
                v += &row[i - 2] * (m - i + 1);
            }
            next[i - 1] = v;
        }
        row = next;
    }
    if n == 0 {
        row.clear();
    }
    row
}

/// Eulerian row straight from the definition: enumerates all of `𝔖ₙ` and
/// buckets by descent count. Independent of [`eulerian_row`]; meant for small `n`.
pub fn eulerian_row_by_enumeration(n: usize) -> Vec<u64> {
    let mut row = vec![0u64; n];
    if n == 0 {
        return row;
    }
    let mut perm: Vec<usize> = (1..=n).collect();
    loop {
        row[perm.windows(2).filter(|w| w[0] > w[1]).count()] += 1;
        if !next_permutation(&mut perm) {
            break;
        }
    }
    row
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Which statistic [`des_count_distribution`] tallies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StatMode {
    /// `des_s`
    SDes,
    /// `asc_s`
    SAsc,
    Des,
    Asc,
}

/// Histogram of a statistic over `Ψₙ` (or `Ψₙ×⟨0⟩` when `append_zero`, in
/// which case weighted modes use `s*`). Always has length `n + 1`.
pub fn des_count_distribution(
    s: &Seq,
    mode: StatMode,
    append_zero: bool,
    limits: &Limits,
) -> Result<Vec<u64>> {
    let n = s.len();
    let weights = if append_zero { s.star() } else { s.clone() };
    let w = weights.entries();
    let stat = |r: &[u64]| -> usize {
        match mode {
            StatMode::SDes => count_s_des(w, r),
            StatMode::SAsc => count_s_asc(w, r),
            StatMode::Des => count_des(r),
            StatMode::Asc => count_asc(r),
        }
    };
    fold_words(
        s,
        limits,
        || vec![0u64; n + 1],
        |hist, r| {
            let value = if append_zero {
                let mut padded = Vec::with_capacity(n + 1);
                padded.extend_from_slice(r);
                padded.push(0);
                stat(&padded)
            } else {
                stat(r)
            };
            hist[value] += 1;
        },
        add_histograms,
    )
}

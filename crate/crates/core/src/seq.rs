//! Sequences, mixed-radix words and lattice points.
//!
//! Everything here is 0-indexed in storage. Public docs and error messages use
//! the 1-based positions `s₁…sₙ`, so entry `i` (1-based) lives at `[i - 1]`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// Largest admissible sequence entry. Keeps every cross product in `i128`.
pub const MAX_ENTRY: u64 = i64::MAX as u64;

/// A lecture-hall parameter `s = (s₁,…,sₙ)`: nonempty, every entry in `1..=MAX_ENTRY`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Seq(Vec<u64>);

impl Seq {
    /// Validating constructor. Rejects the empty list and any entry `≤ 0`.
    pub fn new(entries: &[i64]) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut out = Vec::with_capacity(entries.len());
        for (i, &e) in entries.iter().enumerate() {
            if e <= 0 {
                return Err(Error::NonPositiveEntry { index: i + 1 });
            }
            out.push(e as u64);
        }
        Ok(Seq(out))
    }

    pub fn from_entries(entries: Vec<u64>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptySequence);
        }
        for (i, &e) in entries.iter().enumerate() {
            if e == 0 {
                return Err(Error::NonPositiveEntry { index: i + 1 });
            }
            if e > MAX_ENTRY {
                return Err(Error::EntryTooLarge {
                    index: i + 1,
                    max: MAX_ENTRY,
                });
            }
        }
        Ok(Seq(entries))
    }

    /// `(1, 2, …, n)`.
    pub fn lecture(n: usize) -> Result<Self> {
        Seq::from_entries((1..=n as u64).collect())
    }

    /// `(n, n−1, …, 1)`.
    pub fn anti(n: usize) -> Result<Self> {
        Seq::from_entries((1..=n as u64).rev().collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[u64] {
        &self.0
    }

    pub fn first(&self) -> u64 {
        self.0[0]
    }

    pub fn last(&self) -> u64 {
        self.0[self.0.len() - 1]
    }

    /// `∏ sᵢ`, the normalized volume of `P_s` and the size of `Ψₙ`.
    pub fn product(&self) -> BigUint {
        self.0.iter().fold(BigUint::from(1u32), |acc, &e| acc * e)
    }

    pub fn reverse(&self) -> Seq {
        Seq(self.0.iter().rev().copied().collect())
    }

    /// `s* = (s₁,…,sₙ,1)`.
    pub fn star(&self) -> Seq {
        let mut v = self.0.clone();
        v.push(1);
        Seq(v)
    }

    /// `s̃ = (1,s₁,…,sₙ,1)`.
    pub fn tilde(&self) -> Seq {
        let mut v = Vec::with_capacity(self.0.len() + 2);
        v.push(1);
        v.extend_from_slice(&self.0);
        v.push(1);
        Seq(v)
    }

    /// True iff `s = (1, 2, …, n)`.
    pub fn is_lecture(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e == i as u64 + 1)
    }

    /// True iff `s = (n, n−1, …, 1)`.
    pub fn is_anti(&self) -> bool {
        let n = self.0.len() as u64;
        self.0.iter().enumerate().all(|(i, &e)| e == n - i as u64)
    }

    pub(crate) fn check_len(&self, found: usize) -> Result<()> {
        if found != self.len() {
            return Err(Error::LengthMismatch {
                expected: self.len(),
                found,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, self.0.iter())
    }
}

/// Parses `"2,3,1"`, `"lecture:n"` (→ `(1,…,n)`) and `"anti:n"` (→ `(n,…,1)`).
impl FromStr for Seq {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let trimmed = text.trim();
        let parse_err = |reason: &str| Error::Parse {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        if let Some((kind, n)) = trimmed.split_once(':') {
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| parse_err("preset length must be a positive integer"))?;
            if n == 0 {
                return Err(Error::EmptySequence);
            }
            return match kind.trim() {
                "lecture" => Seq::lecture(n),
                "anti" => Seq::anti(n),
                _ => Err(parse_err("unknown preset, expected lecture:n or anti:n")),
            };
        }
        if trimmed.is_empty() {
            return Err(Error::EmptySequence);
        }
        let mut entries = Vec::new();
        for (i, part) in trimmed.split(',').enumerate() {
            let value: i128 = part
                .trim()
                .parse()
                .map_err(|_| parse_err(&format!("entry {} is not an integer", i + 1)))?;
            if value <= 0 {
                return Err(Error::NonPositiveEntry { index: i + 1 });
            }
            if value > MAX_ENTRY as i128 {
                return Err(Error::EntryTooLarge {
                    index: i + 1,
                    max: MAX_ENTRY,
                });
            }
            entries.push(value as u64);
        }
        Seq::from_entries(entries)
    }
}

/// Parses a comma-separated list of integers (points, words, `q` vectors).
pub fn parse_int_list(text: &str) -> Result<Vec<i64>> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Vec::new());
    }
    trimmed
        .split(',')
        .enumerate()
        .map(|(i, part)| {
            part.trim().parse::<i64>().map_err(|_| Error::Parse {
                text: text.to_string(),
                reason: format!("entry {} is not a 64-bit integer", i + 1),
            })
        })
        .collect()
}

/// An element of `Ψₙ = ⟨s₁−1⟩×…×⟨sₙ−1⟩`: digit `i` satisfies `0 ≤ rᵢ < sᵢ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    radices: Seq,
    digits: Vec<u64>,
}

impl Word {
    pub fn new(radices: Seq, digits: Vec<u64>) -> Result<Self> {
        radices.check_len(digits.len())?;
        for (i, (&d, &s)) in digits.iter().zip(radices.entries()).enumerate() {
            if d >= s {
                return Err(Error::DigitOutOfRange {
                    index: i + 1,
                    digit: d,
                    max: s - 1,
                });
            }
        }
        Ok(Word { radices, digits })
    }

    /// Like [`Word::new`] but from signed input, as read from text.
    pub fn from_signed(radices: Seq, digits: &[i64]) -> Result<Self> {
        radices.check_len(digits.len())?;
        let mut out = Vec::with_capacity(digits.len());
        for (i, (&d, &s)) in digits.iter().zip(radices.entries()).enumerate() {
            if d < 0 {
                return Err(Error::DigitOutOfRange {
                    index: i + 1,
                    digit: 0,
                    max: s - 1,
                });
            }
            out.push(d as u64);
        }
        Word::new(radices, out)
    }

    pub fn zero(radices: Seq) -> Self {
        let digits = vec![0; radices.len()];
        Word { radices, digits }
    }

    pub(crate) fn from_parts_unchecked(radices: Seq, digits: Vec<u64>) -> Self {
        debug_assert!(digits.len() == radices.len());
        debug_assert!(digits.iter().zip(radices.entries()).all(|(d, s)| d < s));
        Word { radices, digits }
    }

    pub fn radices(&self) -> &Seq {
        &self.radices
    }

    pub fn digits(&self) -> &[u64] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Appends a `0` digit over radix `1`: `Ψₙ → Ψₙ×⟨0⟩`.
    pub fn pad_zero(&self) -> Word {
        let mut digits = self.digits.clone();
        digits.push(0);
        Word {
            radices: self.radices.star(),
            digits,
        }
    }

    /// The projection `π` that forgets the last digit.
    pub fn drop_last(&self) -> Result<Word> {
        if self.digits.len() < 2 {
            return Err(Error::DropLastTooShort);
        }
        let n = self.digits.len() - 1;
        Ok(Word {
            radices: Seq(self.radices.entries()[..n].to_vec()),
            digits: self.digits[..n].to_vec(),
        })
    }

    /// Reverses digits and radices together.
    pub fn reverse(&self) -> Word {
        Word {
            radices: self.radices.reverse(),
            digits: self.digits.iter().rev().copied().collect(),
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, self.digits.iter())
    }
}

/// An integer vector. Membership in any particular set is checked by the
/// operation that consumes it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatticePoint(Vec<i64>);

impl LatticePoint {
    pub fn new(coords: Vec<i64>) -> Self {
        LatticePoint(coords)
    }

    pub fn origin(dim: usize) -> Self {
        LatticePoint(vec![0; dim])
    }

    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<i64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Last coordinate, the grading level of the point.
    pub fn level(&self) -> i64 {
        *self.0.last().expect("lattice points are nonempty")
    }

    pub fn drop_last(&self) -> Result<LatticePoint> {
        if self.0.len() < 2 {
            return Err(Error::DropLastTooShort);
        }
        Ok(LatticePoint(self.0[..self.0.len() - 1].to_vec()))
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_csv(f, self.0.iter())
    }
}

/// A quotient vector `k` with its remainder word `r`, i.e. the image of `x` under `f_s`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KRPair {
    pub k: Vec<u64>,
    pub r: Word,
}

fn write_csv<T: fmt::Display>(
    f: &mut fmt::Formatter<'_>,
    items: impl Iterator<Item = T>,
) -> fmt::Result {
    for (i, item) in items.enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{item}")?;
    }
    Ok(())
}

/// Steps a mixed-radix counter (leftmost digit most significant).
/// Returns `false` after wrapping around from the last word to all zeros.
pub(crate) fn advance(radices: &[u64], digits: &mut [u64]) -> bool {
    for i in (0..digits.len()).rev() {
        digits[i] += 1;
        if digits[i] < radices[i] {
            return true;
        }
        digits[i] = 0;
    }
    false
}

/// The word with lexicographic rank `index`.
pub(crate) fn digits_at(radices: &[u64], mut index: u64) -> Vec<u64> {
    let mut digits = vec![0; radices.len()];
    for i in (0..radices.len()).rev() {
        digits[i] = index % radices[i];
        index /= radices[i];
    }
    digits
}

/// Lexicographic iterator over `Ψₙ`.
#[derive(Debug, Clone)]
pub struct Words {
    radices: Seq,
    next: Option<Vec<u64>>,
}

impl Iterator for Words {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let current = self.next.take()?;
        let mut following = current.clone();
        if advance(self.radices.entries(), &mut following) {
            self.next = Some(following);
        }
        Some(Word::from_parts_unchecked(self.radices.clone(), current))
    }
}

/// All of `Ψₙ` in lexicographic order; exactly `∏ sᵢ` words.
pub fn enumerate_words(s: &Seq, limits: &Limits) -> Result<Words> {
    limits.admit(&s.product())?;
    Ok(Words {
        radices: s.clone(),
        next: Some(vec![0; s.len()]),
    })
}

const CHUNK: u64 = 1 << 14;

/// Folds over every word of `Ψₙ` (as raw digit slices), optionally in parallel.
///
/// `fold` sees words in lexicographic order within each chunk; `merge` must be
/// associative and commutative for the result to be schedule-independent.
pub(crate) fn fold_words<T, F, M>(
    s: &Seq,
    limits: &Limits,
    init: impl Fn() -> T + Sync,
    fold: F,
    merge: M,
) -> Result<T>
where
    T: Send,
    F: Fn(&mut T, &[u64]) + Sync,
    M: Fn(T, T) -> T + Sync,
{
    let total = limits.admit(&s.product())?;
    let radices = s.entries();
    let run_chunk = |start: u64| {
        let end = (start + CHUNK).min(total);
        let mut acc = init();
        let mut digits = digits_at(radices, start);
        for _ in start..end {
            fold(&mut acc, &digits);
            advance(radices, &mut digits);
        }
        acc
    };
    let starts = (0..total.div_ceil(CHUNK)).map(|c| c * CHUNK);
    if limits.parallel && total > CHUNK {
        let starts: Vec<u64> = starts.collect();
        Ok(starts.into_par_iter().map(run_chunk).reduce(&init, &merge))
    } else {
        Ok(starts.map(run_chunk).fold(init(), &merge))
    }
}

/// Adds two histograms elementwise; the shorter one is zero-extended.
pub(crate) fn add_histograms(mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
    a
}

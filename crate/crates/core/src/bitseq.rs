//! Finite binary words and the periodic sequences they generate.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite, nonempty word over {0, 1}, indexed from 0.
///
/// Ordering is lexicographic with `0 < 1`, which for equal lengths is the
/// order used by [`BitSeq::canonical_rotation`].
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitSeq {
    bits: Vec<u8>,
}

impl BitSeq {
    pub fn new(bits: Vec<u8>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = bits.iter().position(|&b| b > 1) {
            return Err(Error::domain(format!(
                "symbol {} at index {index} is not binary",
                bits[index]
            )));
        }
        Ok(BitSeq { bits })
    }

    /// Callers guarantee `bits` is nonempty and binary.
    pub(crate) fn from_vec_unchecked(bits: Vec<u8>) -> Self {
        debug_assert!(!bits.is_empty() && bits.iter().all(|&b| b <= 1));
        BitSeq { bits }
    }

    pub fn parse(text: &str) -> Result<Self> {
        if text.is_empty() {
            return Err(Error::Empty);
        }
        let bits = text
            .chars()
            .enumerate()
            .map(|(index, ch)| match ch {
                '0' => Ok(0),
                '1' => Ok(1),
                found => Err(Error::Parse { index, found }),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(BitSeq { bits })
    }

    /// The `n` low bits of `word`, most significant first, so numeric order
    /// of words agrees with lexicographic order of the sequences.
    pub fn from_word(word: u64, n: usize) -> Self {
        assert!((1..=64).contains(&n), "word length must be in 1..=64");
        let bits = (0..n).map(|i| ((word >> (n - 1 - i)) & 1) as u8).collect();
        BitSeq { bits }
    }

    /// Inverse of [`BitSeq::from_word`]; `None` if longer than 64 symbols.
    pub fn to_word(&self) -> Option<u64> {
        if self.len() > 64 {
            return None;
        }
        Some(self.bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    #[inline]
    pub fn get(&self, i: usize) -> u8 {
        self.bits[i]
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }

    pub fn complement(&self) -> Self {
        BitSeq {
            bits: self.bits.iter().map(|b| b ^ 1).collect(),
        }
    }

    /// `L^k`: symbol `i` of the result is `s[(i + k) mod n]`.
    pub fn rotate_left(&self, k: usize) -> Self {
        let mut bits = self.bits.clone();
        bits.rotate_left(k % self.len());
        BitSeq { bits }
    }

    /// `R^k`: symbol `i` of the result is `s[(i - k) mod n]`.
    pub fn rotate_right(&self, k: usize) -> Self {
        let mut bits = self.bits.clone();
        bits.rotate_right(k % self.len());
        BitSeq { bits }
    }

    /// True iff the word is not a proper power `u^m`, `m >= 2`.
    pub fn is_aperiodic(&self) -> bool {
        is_primitive(&self.bits)
    }

    /// Lexicographically least rotation.
    pub fn canonical_rotation(&self) -> Self {
        let k = least_rotation(&self.bits);
        self.rotate_left(k)
    }

    /// Symbols `start..end` as a new word.
    pub fn slice(&self, start: usize, end: usize) -> Result<Self> {
        BitSeq::new(self.bits[start..end].to_vec())
    }
}

/// Whether `w` is not a proper power of a shorter word. Empty words count
/// as primitive.
pub(crate) fn is_primitive(w: &[u8]) -> bool {
    let n = w.len();
    (1..n)
        .filter(|e| n.is_multiple_of(*e))
        .all(|e| (e..n).any(|i| w[i] != w[i - e]))
}

/// Offset of the lexicographically least rotation (smallest on ties).
pub(crate) fn least_rotation(w: &[u8]) -> usize {
    let n = w.len();
    let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
    while i < n && j < n && k < n {
        let a = w[(i + k) % n];
        let b = w[(j + k) % n];
        if a == b {
            k += 1;
            continue;
        }
        if a > b {
            i += k + 1;
        } else {
            j += k + 1;
        }
        if i == j {
            j += 1;
        }
        k = 0;
    }
    i.min(j)
}

impl FromStr for BitSeq {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BitSeq::parse(s)
    }
}

impl fmt::Display for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            f.write_str(if b == 1 { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitSeq({self})")
    }
}

impl Serialize for BitSeq {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// The infinite sequence `p p p ...` named by its minimal period `p`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PeriodSeq {
    period: BitSeq,
}

impl PeriodSeq {
    /// Fails unless `period` is aperiodic, i.e. really minimal.
    pub fn new(period: BitSeq) -> Result<Self> {
        if !period.is_aperiodic() {
            return Err(Error::domain(format!(
                "{period} is a proper power, not a minimal period"
            )));
        }
        Ok(PeriodSeq { period })
    }

    /// The sequence `w w w ...` for any word `w`, named by its shortest period.
    pub fn repeating(word: BitSeq) -> Self {
        let n = word.len();
        let w = word.bits();
        let e = (1..=n)
            .find(|&e| n.is_multiple_of(e) && (e..n).all(|i| w[i] == w[i - e]))
            .unwrap_or(n);
        PeriodSeq {
            period: BitSeq {
                bits: w[..e].to_vec(),
            },
        }
    }

    pub(crate) fn new_unchecked(period: BitSeq) -> Self {
        debug_assert!(period.is_aperiodic());
        PeriodSeq { period }
    }

    pub fn period(&self) -> &BitSeq {
        &self.period
    }

    pub fn into_period(self) -> BitSeq {
        self.period
    }

    pub fn n(&self) -> usize {
        self.period.len()
    }

    /// The first `len` symbols of the infinite sequence.
    pub fn prefix(&self, len: usize) -> Vec<u8> {
        self.period
            .bits()
            .iter()
            .copied()
            .cycle()
            .take(len)
            .collect()
    }
}

impl fmt::Display for PeriodSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.period.fmt(f)
    }
}

impl fmt::Debug for PeriodSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PeriodSeq({})", self.period)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BitSeq {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(b("01").bits(), &[0, 1]);
        assert_eq!(b("10001101000110100010").len(), 20);
        assert_eq!(
            BitSeq::parse("01a"),
            Err(Error::Parse {
                index: 2,
                found: 'a'
            })
        );
        assert_eq!(BitSeq::parse(""), Err(Error::Empty));
        assert!(BitSeq::new(vec![0, 2]).is_err());
    }

    #[test]
    fn rotations() {
        assert_eq!(b("011").rotate_left(1), b("110"));
        assert_eq!(b("011").rotate_right(1), b("101"));
        assert_eq!(b("01000101").rotate_left(2), b("00010101"));
        assert_eq!(b("01000101").rotate_right(2), b("01010001"));
        let s = b("1011001");
        assert_eq!(s.rotate_left(7), s);
        assert_eq!(s.rotate_right(0), s);
        assert_eq!(s.rotate_left(9), s.rotate_left(2));
    }

    #[test]
    fn aperiodicity() {
        assert!(!b("0101").is_aperiodic());
        assert!(b("010").is_aperiodic());
        assert!(b("1000110").is_aperiodic());
        assert!(b("0").is_aperiodic());
        assert!(!b("00").is_aperiodic());
        assert!(!b("011011").is_aperiodic());
    }

    #[test]
    fn canonical() {
        assert_eq!(b("100").canonical_rotation(), b("001"));
        assert_eq!(b("000").canonical_rotation(), b("000"));
        // rotations: 10110 01101 11010 10101 01011
        assert_eq!(b("10110").canonical_rotation(), b("01011"));
        assert_eq!(b("0101").canonical_rotation(), b("0101"));
    }

    #[test]
    fn canonical_matches_min_over_rotations() {
        for n in 1..=10 {
            for w in 0..1u64 << n {
                let s = BitSeq::from_word(w, n);
                let min = (0..n).map(|k| s.rotate_left(k)).min().unwrap();
                assert_eq!(s.canonical_rotation(), min);
            }
        }
    }

    #[test]
    fn word_conversion() {
        let s = BitSeq::from_word(0b0110, 4);
        assert_eq!(s, b("0110"));
        assert_eq!(s.to_word(), Some(6));
    }

    #[test]
    fn period_seq_requires_primitive() {
        assert!(PeriodSeq::new(b("0101")).is_err());
        let p = PeriodSeq::new(b("001")).unwrap();
        assert_eq!(p.prefix(7), vec![0, 0, 1, 0, 0, 1, 0]);
        assert_eq!(PeriodSeq::repeating(b("010101")).period(), &b("01"));
        assert_eq!(PeriodSeq::repeating(b("0000")).period(), &b("0"));
        assert_eq!(PeriodSeq::repeating(b("0110")).period(), &b("0110"));
    }
}

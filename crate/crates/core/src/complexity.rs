//! Nonlinear complexity of finite and periodic words, membership in the
//! structured sets `B(n, c, d)`, added terms and the tight threshold `c0`.
//!
//! A word `s` of length `n` lies in `B(n, c, d)` when its prefix of length
//! `d` is aperiodic, `s[i] = s[i mod d]` for every `i < c + d - 1`, and
//! `s[c + d - 1]` breaks that pattern. The remaining `n - c - d` symbols are
//! free. Only levels `c >= ceil(n/2)` and spacings `d <= n - c` are used.

use serde::Serialize;

use crate::bitseq::{is_primitive, BitSeq, PeriodSeq};
use crate::error::{Error, Result};

/// `ceil(n / 2)`, the lowest complexity level for which `B(n, c, d)` is defined.
pub fn min_level(n: usize) -> usize {
    n.div_ceil(2)
}

/// `floor(3n / 4)`.
pub fn high_level(n: usize) -> usize {
    3 * n / 4
}

/// One membership fact `s ∈ B(n, c, d)` with its derived quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ClassRecord {
    pub n: usize,
    pub c: usize,
    pub d: usize,
    /// `floor((c + d - 1) / d)`
    pub q: usize,
    /// `(c + d - 1) - q * d`
    pub r: usize,
    pub add: usize,
}

/// Nonlinear complexity of a finite word.
///
/// Equal to one plus the length of the longest window that occurs at two
/// positions with different successors, or 0 for a constant word. The
/// empty window occurs everywhere, so any non-constant word scores >= 1.
pub fn nlc_finite(s: &BitSeq) -> usize {
    nlc_of(s.bits())
}

/// Scans each diagonal `j = i + delta` backwards, tracking the longest
/// common extension of the two positions and whether it ends in a mismatch
/// that still lies inside the word. O(n^2) time, O(1) space.
pub(crate) fn nlc_of(s: &[u8]) -> usize {
    let n = s.len();
    let mut best = 0;
    for delta in 1..n {
        let mut run = 0usize;
        let mut bounded = false;
        for i in (0..n - delta).rev() {
            if s[i] == s[i + delta] {
                run += 1;
            } else {
                run = 0;
                bounded = true;
            }
            if bounded && run + 1 > best {
                best = run + 1;
            }
        }
    }
    best
}

/// Reference implementation: tries every window length from the longest
/// down and every pair of start positions.
pub fn nlc_finite_bruteforce(s: &BitSeq) -> usize {
    let w = s.bits();
    let n = w.len();
    for len in (0..n).rev() {
        for i in 0..n {
            for j in i + 1..n {
                if j + len >= n {
                    break;
                }
                if w[i + len] != w[j + len] && w[i..i + len] == w[j..j + len] {
                    return len + 1;
                }
            }
        }
    }
    0
}

/// Number of position pairs `i < j` whose length-`len` windows agree while
/// their successors (both inside the word) differ.
pub fn witness_pairs(s: &BitSeq, len: usize) -> usize {
    let w = s.bits();
    let n = w.len();
    let mut count = 0;
    for j in 1..n.saturating_sub(len) {
        for i in 0..j {
            if w[i + len] != w[j + len] && w[i..i + len] == w[j..j + len] {
                count += 1;
            }
        }
    }
    count
}

/// Nonlinear complexity of the infinite sequence `p^∞`.
///
/// Any witnessing pair can be translated so that the first occurrence
/// starts in `[0, n)`, the second within `n - 1` positions of it, and the
/// window is shorter than `n`; all of that fits in the first `3n` symbols.
pub fn nlc_periodic_oracle(p: &PeriodSeq) -> usize {
    nlc_of(&p.prefix(3 * p.n()))
}

/// Least `p >= d` with `s[p] != s[p mod d]`, if any.
fn break_point(w: &[u8], d: usize) -> Option<usize> {
    (d..w.len()).find(|&p| w[p] != w[p % d])
}

/// Added terms of a word already known to have spacing `d`: the length of
/// the suffix that keeps following the `d`-periodic pattern, read backwards.
pub(crate) fn added_terms_of(w: &[u8], d: usize) -> usize {
    let n = w.len();
    (0..n)
        .take_while(|&i| w[n - 1 - i] == w[d - 1 - (i % d)])
        .count()
}

/// The record for spacing `d`, if `s` belongs to some `B(n, c, d)`.
pub fn record_for(s: &BitSeq, d: usize) -> Option<ClassRecord> {
    let w = s.bits();
    let n = w.len();
    if d == 0 || d > n / 2 || !is_primitive(&w[..d]) {
        return None;
    }
    let p = break_point(w, d)?;
    let c = p + 1 - d;
    if c < min_level(n) || d > n - c {
        return None;
    }
    let q = c.div_ceil(d);
    Some(ClassRecord {
        n,
        c,
        d,
        q,
        r: (c + d - 1) - q * d,
        add: added_terms_of(w, d),
    })
}

/// Every `(c, d)` with `s ∈ B(n, c, d)`, in ascending `d`.
///
/// All spacings are scanned; that at most one record comes back is a
/// property checked by the oracle, not assumed here.
pub fn classify(s: &BitSeq) -> Vec<ClassRecord> {
    (1..=s.len() / 2).filter_map(|d| record_for(s, d)).collect()
}

/// The record of `s` at level `c`, if `s ∈ B(n, c)`.
pub fn record_at_level(s: &BitSeq, c: usize) -> Option<ClassRecord> {
    classify(s).into_iter().find(|r| r.c == c)
}

/// `add(s)` for `s ∈ B(n, c, d)`.
pub fn added_terms(s: &BitSeq, d: usize) -> Result<usize> {
    record_for(s, d)
        .map(|r| r.add)
        .ok_or_else(|| Error::domain(format!("{s} has no spacing {d} at any level >= ceil(n/2)")))
}

/// Threshold from which every member of `B(n, c)` is a representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TightBound {
    pub c0: usize,
    /// Whether `c0` is known to be the least such threshold.
    pub tight: bool,
}

pub fn tight_bound_c0(n: usize) -> Result<TightBound> {
    if n < 3 {
        return Err(Error::domain(format!("tight bound needs n >= 3, got {n}")));
    }
    let base = high_level(n);
    let bound = match (n % 2, n % 8) {
        (1, _) => TightBound {
            c0: base,
            tight: false,
        },
        (_, 0) => TightBound {
            c0: base - 1,
            tight: true,
        },
        (_, 2) | (_, 6) => TightBound {
            c0: base,
            tight: true,
        },
        // n = 8k + 4: tight only from k = 2 on
        _ if n >= 20 => TightBound {
            c0: base - 2,
            tight: true,
        },
        _ => TightBound {
            c0: base,
            tight: false,
        },
    };
    Ok(bound)
}

/// `nlc(p^∞)` as `c + add(L^i(p))` for the first rotation of the period
/// that lands in some `B(n, c)` with `c >= c0`.
pub fn nlc_periodic_fast(p: &PeriodSeq) -> Result<usize> {
    let n = p.n();
    let c0 = match tight_bound_c0(n) {
        Ok(bound) => bound.c0,
        Err(_) => {
            return Err(Error::BelowFastPathBound {
                n,
                c0: high_level(n),
            })
        }
    };
    (0..n)
        .flat_map(|i| classify(&p.period().rotate_left(i)))
        .find(|r| r.c >= c0)
        .map(|r| r.c + r.add)
        .ok_or(Error::BelowFastPathBound { n, c0 })
}

/// Builds the member of `B(n, c, d)` with prefix `seed` (length `d`) and
/// free tail `tail` (length `n - c - d`).
pub fn build_member(seed: &[u8], c: usize, tail: &[u8]) -> BitSeq {
    let d = seed.len();
    let mut bits = Vec::with_capacity(c + d + tail.len());
    bits.extend((0..c + d - 1).map(|i| seed[i % d]));
    bits.push(seed[(c + d - 1) % d] ^ 1);
    bits.extend_from_slice(tail);
    BitSeq::from_vec_unchecked(bits)
}

/// All aperiodic words of length `d`, in ascending numeric order.
pub fn aperiodic_words(d: usize) -> impl Iterator<Item = Vec<u8>> {
    assert!((1..64).contains(&d), "word length must be in 1..64");
    (0..1u64 << d)
        .map(move |w| word_bits(w, d))
        .filter(|w| is_primitive(w))
}

pub(crate) fn word_bits(word: u64, len: usize) -> Vec<u8> {
    (0..len)
        .map(|i| ((word >> (len - 1 - i)) & 1) as u8)
        .collect()
}

fn check_level(n: usize, c: usize, d: usize) -> Result<()> {
    if c < min_level(n) || c >= n || d == 0 || d > (n - c).min(n / 2) {
        return Err(Error::domain(format!(
            "B({n}, {c}, {d}) needs ceil(n/2) <= c <= n-1 and 1 <= d <= min(n-c, floor(n/2))"
        )));
    }
    Ok(())
}

/// Every member of `B(n, c, d)`: ascending seed, then ascending free tail.
pub fn members(n: usize, c: usize, d: usize) -> Result<impl Iterator<Item = BitSeq>> {
    check_level(n, c, d)?;
    let free = n - c - d;
    Ok(aperiodic_words(d).flat_map(move |seed| {
        (0..1u64 << free).map(move |tail| build_member(&seed, c, &word_bits(tail, free)))
    }))
}

/// Every member of `B(n, c)`, grouped by ascending spacing.
pub fn members_at_level(n: usize, c: usize) -> Result<Vec<BitSeq>> {
    check_level(n, c, 1)?;
    let mut out = Vec::new();
    for d in 1..=(n - c).min(n / 2) {
        out.extend(members(n, c, d)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(s: &str) -> BitSeq {
        s.parse().unwrap()
    }

    fn p(s: &str) -> PeriodSeq {
        PeriodSeq::new(b(s)).unwrap()
    }

    const EXAMPLE: &str = "10001101000110100010";

    #[test]
    fn nlc_finite_examples() {
        assert_eq!(nlc_finite(&b("0000")), 0);
        assert_eq!(nlc_finite(&b(EXAMPLE)), 13);
        assert_eq!(nlc_finite(&b("0001")), 3);
        assert_eq!(nlc_finite(&b("01")), 1);
        assert_eq!(nlc_finite(&b("0")), 0);
    }

    #[test]
    fn nlc_matches_bruteforce_exhaustively() {
        for n in 1..=12 {
            for w in 0..1u64 << n {
                let s = BitSeq::from_word(w, n);
                assert_eq!(nlc_finite(&s), nlc_finite_bruteforce(&s), "{s}");
            }
        }
    }

    #[test]
    fn periodic_oracle_examples() {
        assert_eq!(nlc_periodic_oracle(&p("01")), 1);
        assert_eq!(nlc_periodic_oracle(&p(EXAMPLE)), 15);
        assert_eq!(nlc_periodic_oracle(&p("0001")), 3);
        assert_eq!(nlc_finite_bruteforce(&b("000100010001")), 3);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(
            classify(&b(EXAMPLE)),
            vec![ClassRecord {
                n: 20,
                c: 13,
                d: 7,
                q: 2,
                r: 5,
                add: 2
            }]
        );
        assert_eq!(
            classify(&b("0001")),
            vec![ClassRecord {
                n: 4,
                c: 3,
                d: 1,
                q: 3,
                r: 0,
                add: 0
            }]
        );
        assert_eq!(
            classify(&b("0101011011")),
            vec![ClassRecord {
                n: 10,
                c: 5,
                d: 2,
                q: 3,
                r: 0,
                add: 1
            }]
        );
        assert!(classify(&b("0000")).is_empty());
        assert!(classify(&b("0101")).is_empty());
    }

    #[test]
    fn added_terms_examples() {
        assert_eq!(added_terms(&b(EXAMPLE), 7), Ok(2));
        assert_eq!(added_terms(&b("0001"), 1), Ok(0));
        assert_eq!(added_terms(&b("0101011011"), 2), Ok(1));
        assert!(matches!(added_terms(&b(EXAMPLE), 3), Err(Error::Domain(_))));
    }

    #[test]
    fn tight_bound_table() {
        let tb = |n| tight_bound_c0(n).unwrap();
        assert_eq!(
            tb(16),
            TightBound {
                c0: 11,
                tight: true
            }
        );
        assert_eq!(
            tb(20),
            TightBound {
                c0: 13,
                tight: true
            }
        );
        assert_eq!(tb(10), TightBound { c0: 7, tight: true });
        assert_eq!(
            tb(14),
            TightBound {
                c0: 10,
                tight: true
            }
        );
        assert_eq!(
            tb(12),
            TightBound {
                c0: 9,
                tight: false
            }
        );
        assert_eq!(
            tb(4),
            TightBound {
                c0: 3,
                tight: false
            }
        );
        assert_eq!(
            tb(9),
            TightBound {
                c0: 6,
                tight: false
            }
        );
        assert_eq!(
            tb(28),
            TightBound {
                c0: 19,
                tight: true
            }
        );
        assert!(tight_bound_c0(2).is_err());
    }

    #[test]
    fn fast_path_examples() {
        assert_eq!(nlc_periodic_fast(&p(EXAMPLE)), Ok(15));
        assert_eq!(nlc_periodic_fast(&p("0001")), Ok(3));
        assert!(matches!(
            nlc_periodic_fast(&p("01")),
            Err(Error::BelowFastPathBound { .. })
        ));
        assert_eq!(
            nlc_periodic_fast(&p("0101011011")),
            Ok(nlc_periodic_oracle(&p("0101011011")))
        );
    }

    #[test]
    fn members_carry_their_record() {
        for n in 3..=10 {
            for c in min_level(n)..n {
                for d in 1..=(n - c).min(n / 2) {
                    for s in members(n, c, d).unwrap() {
                        let rec = record_for(&s, d).unwrap();
                        assert_eq!((rec.c, rec.d), (c, d));
                        assert_eq!(nlc_finite(&s), c);
                    }
                }
            }
        }
        assert!(members(8, 3, 1).is_err());
        assert!(members(8, 5, 4).is_err());
    }

    #[test]
    fn witness_pair_count() {
        assert_eq!(witness_pairs(&b(EXAMPLE), 12), 1);
        assert_eq!(witness_pairs(&b("0001"), 2), 1);
    }
}

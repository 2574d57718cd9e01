//! One period for every shift class of `n`-periodic binary sequences with
//! nonlinear complexity `ω >= floor(3n/4)`.
//!
//! Each class has a unique representative in `B(n, ceil(n/2))`; shifting
//! it to level `ω` or to the maximum spacing gives the two emitted shapes:
//!
//! * case i, `1 <= d <= n - ω - 1`: an aperiodic seed of length `d` repeated
//!   up to length `ω + d` with the last symbol flipped, `n - ω - d - 1` free
//!   symbols, and a final symbol forced to differ from `seed[d - 1]`.
//! * case ii, `n - ω <= d <= floor(n/2)`: the seed repeated to length `n`
//!   with the last symbol flipped, where the seed's wrap-around boundary
//!   yields exactly `t = ω + d - n` added terms.
//!
//! Streams are lazy and ordered by `d`, then seed, then free symbols.

use serde::Serialize;

use crate::bitseq::{BitSeq, PeriodSeq};
use crate::complexity::{aperiodic_words, build_member, high_level, word_bits};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Case {
    I,
    II,
}

/// Shape of one `(n, ω, d)` stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StructureSpec {
    pub case: Case,
    pub n: usize,
    pub omega: usize,
    pub d: usize,
    /// Free symbols between the periodic prefix and the forced last symbol
    /// (case i only).
    pub free_len: usize,
    /// Required added terms (case ii only).
    pub t: usize,
    /// `floor((n - 1) / d)` (case ii only).
    pub q_full: usize,
    /// `(n - 1) - q_full * d` (case ii only).
    pub r_full: usize,
}

fn check_omega(n: usize, omega: usize) -> Result<()> {
    let (lo, hi) = (high_level(n), n.saturating_sub(1));
    if n < 3 || omega < lo || omega > hi {
        return Err(Error::StructureInapplicable { n, omega, lo, hi });
    }
    Ok(())
}

pub fn structure_spec(n: usize, omega: usize, d: usize) -> Result<StructureSpec> {
    check_omega(n, omega)?;
    if d == 0 || d > n / 2 {
        return Err(Error::domain(format!(
            "spacing {d} outside [1, {}] for n = {n}",
            n / 2
        )));
    }
    Ok(if d < n - omega {
        StructureSpec {
            case: Case::I,
            n,
            omega,
            d,
            free_len: n - omega - d - 1,
            t: 0,
            q_full: 0,
            r_full: 0,
        }
    } else {
        let q_full = (n - 1) / d;
        StructureSpec {
            case: Case::II,
            n,
            omega,
            d,
            free_len: 0,
            t: omega + d - n,
            q_full,
            r_full: n - 1 - q_full * d,
        }
    })
}

/// Case i stream for spacing `d`.
pub fn generate_case_i(n: usize, omega: usize, d: usize) -> Result<impl Iterator<Item = BitSeq>> {
    let spec = structure_spec(n, omega, d)?;
    if spec.case != Case::I {
        return Err(Error::domain(format!(
            "case i needs 1 <= d <= n - omega - 1 = {}, got {d}",
            n - omega - 1
        )));
    }
    let free = spec.free_len;
    Ok(aperiodic_words(d).flat_map(move |seed| {
        (0..1u64 << free).map(move |bits| {
            let mut tail = word_bits(bits, free);
            tail.push(seed[d - 1] ^ 1);
            build_member(&seed, omega, &tail)
        })
    }))
}

/// Whether `seed` meets the wrap-around conditions for `t` added terms.
fn boundary_holds(seed: &[u8], n: usize, t: usize) -> bool {
    let d = seed.len() as i64;
    let at = |x: i64| seed[x.rem_euclid(d) as usize];
    let n = n as i64;
    let t = t as i64;
    if t == 0 {
        return at(n - 1) == at(d - 1);
    }
    at(n - 1) != at(d - 1)
        && (2..=t).all(|i| at(n - i) == at(d - i))
        && at(n - t - 1) != at(d - t - 1)
}

/// Case ii stream for spacing `d`.
pub fn generate_case_ii(n: usize, omega: usize, d: usize) -> Result<impl Iterator<Item = BitSeq>> {
    let spec = structure_spec(n, omega, d)?;
    if spec.case != Case::II {
        return Err(Error::domain(format!(
            "case ii needs n - omega = {} <= d <= floor(n/2), got {d}",
            n - omega
        )));
    }
    let t = spec.t;
    Ok(aperiodic_words(d)
        .filter(move |seed| boundary_holds(seed, n, t))
        .map(move |seed| build_member(&seed, n - d, &[])))
}

/// Every shift class with periodic complexity `ω`, one period each.
pub fn generate_p(n: usize, omega: usize) -> Result<Box<dyn Iterator<Item = PeriodSeq>>> {
    check_omega(n, omega)?;
    let small = (1..n - omega).map(move |d| generate_case_i(n, omega, d));
    let large = (n - omega..=n / 2).map(move |d| generate_case_ii(n, omega, d));
    let small: Vec<_> = small.collect::<Result<_>>()?;
    let large: Vec<_> = large.collect::<Result<_>>()?;
    let stream = small
        .into_iter()
        .flatten()
        .chain(large.into_iter().flatten())
        .map(PeriodSeq::new_unchecked);
    Ok(Box::new(stream))
}

/// Fully materialized [`generate_p`], refused above the exhaustive limit.
pub fn collect_p(n: usize, omega: usize, limit: usize) -> Result<Vec<PeriodSeq>> {
    if n > limit {
        return Err(Error::ResourceLimit {
            what: "n",
            value: n,
            limit,
        });
    }
    Ok(generate_p(n, omega)?.collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::{classify, nlc_periodic_oracle};

    #[test]
    fn case_i_examples() {
        let all: Vec<BitSeq> = generate_case_i(16, 12, 1).unwrap().collect();
        assert_eq!(all.len(), 8);
        assert_eq!(all[0].to_string(), "0000000000001001");
        assert_eq!(all[3].to_string(), "0000000000001111");
        assert_eq!(generate_case_i(16, 12, 3).unwrap().count(), 6);
        assert!(generate_case_i(16, 12, 4).is_err());
        for d in 1..=3 {
            for s in generate_case_i(16, 12, d).unwrap() {
                let recs = classify(&s);
                assert_eq!(recs.len(), 1);
                assert_eq!((recs[0].c, recs[0].d, recs[0].add), (12, d, 0));
            }
        }
    }

    #[test]
    fn case_ii_examples() {
        assert_eq!(generate_case_ii(16, 12, 4).unwrap().count(), 12);
        assert_eq!(generate_case_ii(16, 12, 8).unwrap().count(), 0);
        let six: Vec<BitSeq> = generate_case_ii(16, 12, 6).unwrap().collect();
        assert_eq!(six.len(), 6);
        for s in &six {
            let recs = classify(s);
            assert_eq!((recs[0].c, recs[0].d, recs[0].add), (10, 6, 2));
        }
        assert!(generate_case_ii(16, 12, 3).is_err());
        assert!(generate_case_ii(16, 12, 9).is_err());
    }

    #[test]
    fn p_16_12() {
        let all: Vec<PeriodSeq> = generate_p(16, 12).unwrap().collect();
        assert_eq!(all.len(), 52);
        for p in &all {
            assert_eq!(nlc_periodic_oracle(p), 12);
        }
        assert!(matches!(
            generate_p(16, 11),
            Err(Error::StructureInapplicable { .. })
        ));
        assert!(matches!(
            collect_p(21, 16, 20),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn spec_shapes() {
        let s = structure_spec(16, 12, 6).unwrap();
        assert_eq!((s.case, s.t, s.q_full, s.r_full), (Case::II, 2, 2, 3));
        let s = structure_spec(16, 12, 2).unwrap();
        assert_eq!((s.case, s.free_len), (Case::I, 1));
    }
}

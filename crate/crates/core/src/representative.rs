//! Shift-equivalence classes inside `B(n, c)` and their representatives.
//!
//! Two members of `B(n, c)` are shift equivalent when one is a rotation of
//! the other. A representative is a member with the most added terms; its
//! periodic extension has complexity `c + add`. Everything here is computed
//! by enumerating rotations, so the structural results can be tested
//! against it.

use rayon::prelude::*;
use serde::Serialize;

use crate::bitseq::{is_primitive, BitSeq};
use crate::complexity::{members, min_level, record_at_level, tight_bound_c0, ClassRecord};
use crate::error::{Error, Result};

/// A rotation `R^offset(base)` that stays in `B(n, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Member {
    pub offset: usize,
    pub seq: BitSeq,
    pub record: ClassRecord,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RepReport {
    pub base: BitSeq,
    pub c: usize,
    /// In ascending rotation offset; offset 0 is `base` itself.
    pub members: Vec<Member>,
    pub representatives: Vec<Member>,
    pub unique: bool,
}

impl RepReport {
    pub fn max_add(&self) -> usize {
        self.representatives[0].record.add
    }

    /// Whether `base` itself attains the maximum.
    pub fn base_is_representative(&self) -> bool {
        self.representatives.iter().any(|m| m.offset == 0)
    }
}

fn level_error(s: &BitSeq, c: usize) -> Error {
    Error::domain(format!(
        "{s} is not in B({}, {c}) with c >= ceil(n/2)",
        s.len()
    ))
}

/// The class `E(s) = {R^k(s)} ∩ B(n, c)` and its representatives.
pub fn shift_class(s: &BitSeq, c: usize) -> Result<RepReport> {
    if record_at_level(s, c).is_none() {
        return Err(level_error(s, c));
    }
    let members: Vec<Member> = (0..s.len())
        .filter_map(|offset| {
            let seq = s.rotate_right(offset);
            record_at_level(&seq, c).map(|record| Member {
                offset,
                seq,
                record,
            })
        })
        .collect();
    let best = members.iter().map(|m| m.record.add).max().unwrap_or(0);
    let representatives: Vec<Member> = members
        .iter()
        .filter(|m| m.record.add == best)
        .cloned()
        .collect();
    let unique = representatives.len() == 1;
    Ok(RepReport {
        base: s.clone(),
        c,
        members,
        representatives,
        unique,
    })
}

/// True iff `s` is the only member of its class with maximal `add`.
pub fn is_unique_representative(s: &BitSeq) -> Result<bool> {
    let c = crate::complexity::classify(s)
        .first()
        .map(|r| r.c)
        .ok_or_else(|| Error::domain(format!("{s} is not in any B(n, c) with c >= ceil(n/2)")))?;
    let report = shift_class(s, c)?;
    Ok(report.unique && report.base_is_representative())
}

/// Tail `s[d..n] = (s[0..period_len])^repeats`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TailPower {
    pub period_len: usize,
    pub repeats: usize,
}

fn max_spacing_record(s: &BitSeq, c: usize) -> Result<ClassRecord> {
    let record = record_at_level(s, c).ok_or_else(|| level_error(s, c))?;
    if record.d != s.len() - c {
        return Err(Error::domain(format!(
            "{s} has spacing {} in B({}, {c}), not the maximum spacing {}",
            record.d,
            s.len(),
            s.len() - c
        )));
    }
    Ok(record)
}

/// For `s ∈ B(n, c, n - c)`: the split of the length-`c` tail into a power
/// of an aperiodic prefix of length `b`, `1 < b < c`, `b | c`, if one exists.
pub fn max_spacing_decomposition(s: &BitSeq, c: usize) -> Result<Option<TailPower>> {
    let record = max_spacing_record(s, c)?;
    let w = s.bits();
    let tail = &w[record.d..];
    let split = (2..c)
        .filter(|b| c.is_multiple_of(*b))
        .find(|&b| is_primitive(&w[..b]) && tail.chunks(b).all(|chunk| chunk == &w[..b]));
    Ok(split.map(|b| TailPower {
        period_len: b,
        repeats: c / b,
    }))
}

/// `ceil((2n - 1) / 3)`, the level from which the tail decomposition
/// decides representativeness for maximum-spacing members.
pub fn max_spacing_level(n: usize) -> usize {
    (2 * n - 1).div_ceil(3)
}

/// `nlc(s^∞)` for `s ∈ B(n, c, n - c)` with `c >= ceil((2n-1)/3)`, read off
/// the tail decomposition instead of a search.
pub fn periodic_nlc_max_spacing(s: &BitSeq, c: usize) -> Result<usize> {
    let n = s.len();
    if c < max_spacing_level(n) {
        return Err(Error::domain(format!(
            "level {c} is below ceil((2n-1)/3) = {} for n = {n}",
            max_spacing_level(n)
        )));
    }
    let record = max_spacing_record(s, c)?;
    let d = record.d;
    Ok(match max_spacing_decomposition(s, c)? {
        Some(TailPower { period_len: b, .. }) => c + n - d - b + record.add,
        None => c + record.add,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Residue {
    /// `n = 8k`
    Eight0,
    /// `n = 8k + 2`
    Eight2,
    /// `n = 8k + 4`
    Eight4,
    /// `n = 8k + 6`
    Eight6,
}

/// Level and spacing a family word is stated to have, with its `add`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Stated {
    pub c: usize,
    pub d: usize,
    pub add: usize,
}

/// The explicit words showing that `c0 - 1` admits a non-representative:
/// `u` and `v` are rotations of `s` at the same level `c0 - 1`, and `v`
/// has strictly more added terms than `u`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Family {
    pub n: usize,
    pub k: usize,
    pub residue: Residue,
    pub s: BitSeq,
    pub u: BitSeq,
    pub v: BitSeq,
    /// `u = R^u_offset(s)`
    pub u_offset: usize,
    /// `v = R^v_offset(s)`
    pub v_offset: usize,
    pub stated_s: Stated,
    pub stated_u: Stated,
    pub stated_v: Stated,
}

fn run(symbol: u8, len: usize) -> impl Iterator<Item = u8> {
    std::iter::repeat_n(symbol, len)
}

/// The counterexample family for even `n` (with `0` for α and `1` for β).
pub fn family_counterexample(n: usize) -> Result<Family> {
    const A: u8 = 0;
    const B: u8 = 1;
    let k = n / 8;
    let mut bits: Vec<u8> = Vec::with_capacity(n);
    let (residue, u_offset, v_offset, stated_s, stated_u, stated_v) = match n % 8 {
        2 | 6 if k >= 1 => {
            // m = 2k for 8k+2 and 2k+1 for 8k+6; block α β^(m-1)
            let m = if n % 8 == 2 { 2 * k } else { 2 * k + 1 };
            for _ in 0..3 {
                bits.push(A);
                bits.extend(run(B, m - 1));
            }
            bits.push(B);
            bits.push(A);
            bits.extend(run(B, m));
            let residue = if n % 8 == 2 { Residue::Eight2 } else { Residue::Eight6 };
            (
                residue,
                m - 1,
                3 * m,
                Stated { c: 2 * m + 1, d: m, add: m - 1 },
                Stated { c: 3 * m, d: m, add: 0 },
                Stated { c: 3 * m, d: m + 1, add: 1 },
            )
        }
        4 if k >= 2 => {
            for _ in 0..3 {
                bits.extend([A, B]);
                bits.extend(run(A, 2 * k - 2));
            }
            bits.extend([A, A, A, B]);
            bits.extend(run(A, 2 * k));
            (
                Residue::Eight4,
                2 * k - 2,
                6 * k,
                Stated { c: 4 * k + 2, d: 2 * k, add: 2 * k - 2 },
                Stated { c: 6 * k, d: 2 * k, add: 0 },
                Stated { c: 6 * k, d: 2 * k + 2, add: 2 },
            )
        }
        0 if k >= 1 => {
            let block = |bits: &mut Vec<u8>, pairs: usize| {
                bits.push(A);
                for _ in 0..pairs {
                    bits.extend([A, B]);
                }
            };
            for _ in 0..3 {
                block(&mut bits, k - 1);
            }
            bits.extend([A, B]);
            block(&mut bits, k);
            (
                Residue::Eight0,
                2 * k - 2,
                6 * k - 2,
                Stated { c: 4 * k, d: 2 * k - 1, add: 2 * k - 2 },
                Stated { c: 6 * k - 2, d: 2 * k - 1, add: 0 },
                Stated { c: 6 * k - 2, d: 2 * k + 1, add: 2 },
            )
        }
        _ => {
            return Err(Error::domain(format!(
                "no counterexample family for n = {n}; need 8k+2 or 8k+6 (k >= 1), 8k+4 (k >= 2) or 8k (k >= 1)"
            )))
        }
    };
    debug_assert_eq!(bits.len(), n);
    let s = BitSeq::from_vec_unchecked(bits);
    Ok(Family {
        n,
        k,
        residue,
        u: s.rotate_right(u_offset),
        v: s.rotate_right(v_offset),
        s,
        u_offset,
        v_offset,
        stated_s,
        stated_u,
        stated_v,
    })
}

/// Outcome of checking a [`Family`] against `classify`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub s: Option<ClassRecord>,
    pub u: Option<ClassRecord>,
    pub v: Option<ClassRecord>,
    /// `u` sits at level `c0 - 1` and is not a representative of its class.
    pub u_below_bound_and_not_representative: bool,
    pub holds: bool,
}

impl Family {
    pub fn check(&self) -> FamilyCheck {
        let got = |w: &BitSeq, st: &Stated| record_at_level(w, st.c).filter(|r| r.d == st.d);
        let (s, u, v) = (
            got(&self.s, &self.stated_s),
            got(&self.u, &self.stated_u),
            got(&self.v, &self.stated_v),
        );
        let matches = |r: &Option<ClassRecord>, st: &Stated| r.is_some_and(|r| r.add == st.add);
        let c0 = tight_bound_c0(self.n).map(|b| b.c0).unwrap_or(usize::MAX);
        let below = self.stated_u.c + 1 == c0
            && shift_class(&self.u, self.stated_u.c).is_ok_and(|r| !r.base_is_representative());
        let holds = matches(&s, &self.stated_s)
            && matches(&u, &self.stated_u)
            && matches(&v, &self.stated_v)
            && self.stated_v.add > self.stated_u.add
            && below;
        FamilyCheck {
            s,
            u,
            v,
            u_below_bound_and_not_representative: below,
            holds,
        }
    }
}

/// A member of `B(n, c, n - c)` with a rotation `R^b` of strictly larger
/// `add` whose spacing is not `b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureCertificate {
    pub n: usize,
    pub c: usize,
    pub s: BitSeq,
    pub b: usize,
    pub d2: usize,
    pub add_s: usize,
    pub add_rotated: usize,
}

/// Every violation of "larger add after `R^b` implies spacing `b`" among
/// maximum-spacing members, for all `n <= n_max`.
pub fn conjecture_scan(n_max: usize, limit: usize) -> Result<Vec<ConjectureCertificate>> {
    if n_max > limit {
        return Err(Error::ResourceLimit {
            what: "n_max",
            value: n_max,
            limit,
        });
    }
    let cases: Vec<(usize, usize)> = (3..=n_max)
        .flat_map(|n| (min_level(n)..n).map(move |c| (n, c)))
        .collect();
    let found = cases
        .par_iter()
        .map(|&(n, c)| {
            let mut out = Vec::new();
            for s in members(n, c, n - c).into_iter().flatten() {
                let add_s = record_at_level(&s, c).map_or(0, |r| r.add);
                for b in 1..n {
                    if let Some(r) = record_at_level(&s.rotate_right(b), c) {
                        if r.add > add_s && r.d != b {
                            out.push(ConjectureCertificate {
                                n,
                                c,
                                s: s.clone(),
                                b,
                                d2: r.d,
                                add_s,
                                add_rotated: r.add,
                            });
                        }
                    }
                }
            }
            out
        })
        .collect::<Vec<_>>();
    Ok(found.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexity::{classify, members_at_level, nlc_periodic_oracle};
    use crate::PeriodSeq;

    fn b(s: &str) -> BitSeq {
        s.parse().unwrap()
    }

    const EXAMPLE: &str = "10001101000110100010";

    #[test]
    fn example_is_its_own_representative() {
        let report = shift_class(&b(EXAMPLE), 13).unwrap();
        assert!(report.base_is_representative());
        assert!(report.unique);
        assert!(is_unique_representative(&b(EXAMPLE)).unwrap());
    }

    #[test]
    fn ten_family_class() {
        let u = b("1010101101");
        let report = shift_class(&u, 6).unwrap();
        let offsets: Vec<(usize, usize)> = report
            .members
            .iter()
            .map(|m| (m.offset, m.record.add))
            .collect();
        assert_eq!(offsets, vec![(0, 0), (5, 1)]);
        assert_eq!(report.representatives.len(), 1);
        assert_eq!(report.representatives[0].offset, 5);
        assert!(report.unique);
        assert!(!is_unique_representative(&u).unwrap());
    }

    #[test]
    fn top_level_classes_are_singletons() {
        for n in 3..=10 {
            for s in members_at_level(n, n - 1).unwrap() {
                let report = shift_class(&s, n - 1).unwrap();
                assert_eq!(report.members.len(), 1);
                assert!(report.unique);
            }
        }
    }

    #[test]
    fn shift_class_rejects_wrong_level() {
        assert!(shift_class(&b(EXAMPLE), 12).is_err());
        assert!(is_unique_representative(&b("0000")).is_err());
    }

    #[test]
    fn decomposition_examples() {
        assert_eq!(max_spacing_decomposition(&b(EXAMPLE), 13), Ok(None));
        assert!(max_spacing_decomposition(&b("0101011011"), 5).is_err());
        let s = b("01000101");
        assert_eq!(classify(&s)[0].c, 4);
        assert_eq!(classify(&s)[0].d, 4);
        assert_eq!(
            max_spacing_decomposition(&s, 4),
            Ok(Some(TailPower {
                period_len: 2,
                repeats: 2
            }))
        );
        // prime level: nothing to split
        for s in members(12, 7, 5).unwrap() {
            assert_eq!(max_spacing_decomposition(&s, 7), Ok(None));
        }
    }

    #[test]
    fn periodic_nlc_from_tail() {
        assert_eq!(periodic_nlc_max_spacing(&b(EXAMPLE), 13), Ok(15));
        let s = members(9, 7, 1).unwrap().next().unwrap();
        assert!(periodic_nlc_max_spacing(&s, 7).is_err());
        for n in 3..=12 {
            for c in max_spacing_level(n)..n {
                for s in members(n, c, n - c).unwrap() {
                    let p = PeriodSeq::new(s.clone()).unwrap();
                    assert_eq!(
                        periodic_nlc_max_spacing(&s, c).unwrap(),
                        nlc_periodic_oracle(&p),
                        "{s}"
                    );
                }
            }
        }
    }

    #[test]
    fn families_match_stated_memberships() {
        let ten = family_counterexample(10).unwrap();
        assert_eq!(ten.s, b("0101011011"));
        assert_eq!(ten.u, b("1010101101"));
        assert_eq!(ten.v, ten.s.rotate_right(6));
        for n in [
            8, 10, 14, 16, 18, 20, 22, 24, 26, 28, 30, 32, 34, 36, 38, 40,
        ] {
            let family = family_counterexample(n).unwrap();
            let check = family.check();
            assert!(check.holds, "n = {n}: {family:?} {check:?}");
        }
        for n in [3, 4, 6, 9, 12, 15] {
            assert!(family_counterexample(n).is_err(), "n = {n}");
        }
    }

    #[test]
    fn conjecture_scan_small() {
        assert_eq!(conjecture_scan(2, 20).unwrap(), vec![]);
        assert_eq!(conjecture_scan(12, 20).unwrap(), vec![]);
        assert!(matches!(
            conjecture_scan(21, 20),
            Err(Error::ResourceLimit { .. })
        ));
    }
}

//! Exhaustive ground truth and the cross-check harness.
//!
//! Everything here enumerates words directly; nothing depends on the
//! structure theorem or the counting formula except as the thing being
//! checked.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::bitseq::{BitSeq, PeriodSeq};
use crate::complexity::{
    classify, high_level, members_at_level, min_level, nlc_finite, nlc_finite_bruteforce, nlc_of,
    nlc_periodic_fast, nlc_periodic_oracle, record_at_level, tight_bound_c0, witness_pairs,
};
use crate::enumeration::{
    aperiodic_count, count_n, count_p, divisors, formula_range, mobius, Count,
};
use crate::error::{Error, Result};
use crate::representative::{
    family_counterexample, max_spacing_decomposition, max_spacing_level, periodic_nlc_max_spacing,
    shift_class,
};
use crate::structgen::generate_p;

/// Largest `d` for which [`brute_count_n`] enumerates `2^d` seeds by default.
pub const DEFAULT_SEED_LIMIT: usize = 24;

fn guard(what: &'static str, value: usize, limit: usize) -> Result<()> {
    if value > limit || value > 40 {
        return Err(Error::ResourceLimit {
            what,
            value,
            limit: limit.min(40),
        });
    }
    Ok(())
}

/// Whether `w` (low `n` bits) is aperiodic and strictly below every other
/// rotation, i.e. the canonical name of its shift class.
#[inline]
fn is_class_name(w: u64, n: usize) -> bool {
    let mask = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    (1..n).all(|k| ((w << k | w >> (n - k)) & mask) > w)
}

/// Canonical class names of length `n`, visited in parallel.
fn class_names(n: usize) -> impl ParallelIterator<Item = u64> {
    (0..1u64 << n)
        .into_par_iter()
        .filter(move |&w| is_class_name(w, n))
}

fn periodic_nlc_word(w: u64, n: usize) -> usize {
    let period = BitSeq::from_word(w, n);
    let bits: Vec<u8> = period.bits().iter().copied().cycle().take(3 * n).collect();
    nlc_of(&bits)
}

/// Number of shift classes of aperiodic period-`n` words at each `ω`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributionTable {
    pub n: usize,
    pub rows: BTreeMap<usize, u64>,
}

impl DistributionTable {
    pub fn classes(&self) -> u64 {
        self.rows.values().sum()
    }

    pub fn get(&self, omega: usize) -> u64 {
        self.rows.get(&omega).copied().unwrap_or(0)
    }
}

pub fn brute_distribution(n: usize, limit: usize) -> Result<DistributionTable> {
    if n == 0 {
        return Err(Error::Empty);
    }
    guard("n", n, limit)?;
    let tally = class_names(n)
        .fold(
            || vec![0u64; n + 1],
            |mut acc, w| {
                acc[periodic_nlc_word(w, n)] += 1;
                acc
            },
        )
        .reduce(
            || vec![0u64; n + 1],
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        );
    let rows = tally
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .collect();
    Ok(DistributionTable { n, rows })
}

/// Canonical class names with periodic complexity `omega`.
pub fn class_representatives(n: usize, omega: usize, limit: usize) -> Result<BTreeSet<BitSeq>> {
    guard("n", n, limit)?;
    let words: Vec<u64> = class_names(n)
        .filter(|&w| periodic_nlc_word(w, n) == omega)
        .collect();
    Ok(words.into_iter().map(|w| BitSeq::from_word(w, n)).collect())
}

/// Aperiodic seeds of length `d` meeting the boundary conditions for
/// exactly `t` added terms at period `n`, counted one by one.
pub fn brute_count_n(n: usize, d: usize, t: usize, limit: usize) -> Result<u64> {
    if d == 0 || n == 0 {
        return Err(Error::domain("brute_count_n needs n, d >= 1"));
    }
    guard("d", d, limit)?;
    let count = (0..1u64 << d)
        .into_par_iter()
        .filter(|&w| {
            let seed = BitSeq::from_word(w, d);
            if !seed.is_aperiodic() {
                return false;
            }
            let x = |i: i64| seed.get(i.rem_euclid(d as i64) as usize);
            let (n, d, t) = (n as i64, d as i64, t as i64);
            if t == 0 {
                return x(n - 1) == x(d - 1);
            }
            // row i: x[n - i] + x[d - i] = b_i, b = (1, 0, .., 0, 1)
            (1..=t + 1).all(|i| {
                let differ = x(n - i) != x(d - i);
                differ == (i == 1 || i == t + 1)
            })
        })
        .count();
    Ok(count as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Unverified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountRow {
    pub omega: usize,
    /// Formula value; absent below `floor(3n/4)`.
    pub formula: Option<Count>,
    pub oracle: u64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountsReport {
    pub n: usize,
    pub rows: Vec<CountRow>,
    pub passed: bool,
}

pub fn verify_counts(n: usize, limit: usize) -> Result<CountsReport> {
    let table = brute_distribution(n, limit)?;
    let mut rows = Vec::new();
    for omega in min_level(n)..n {
        let oracle = table.get(omega);
        if omega < high_level(n) || n < 3 {
            rows.push(CountRow {
                omega,
                formula: None,
                oracle,
                verdict: Verdict::Unverified,
            });
            continue;
        }
        let total = count_p(n, omega)?.total;
        let verdict = if total.0 == BigUint::from(oracle) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        rows.push(CountRow {
            omega,
            formula: Some(total),
            oracle,
            verdict,
        });
    }
    let passed = rows.iter().all(|r| r.verdict != Verdict::Fail);
    Ok(CountsReport { n, rows, passed })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub n: usize,
    pub omega: usize,
    pub generated: usize,
    pub oracle: usize,
    /// Emitted periods whose class was already emitted.
    pub duplicates: Vec<BitSeq>,
    /// Oracle classes the generator never produced.
    pub missing: Vec<BitSeq>,
    /// Generated classes absent from the oracle set.
    pub extra: Vec<BitSeq>,
    pub equal: bool,
}

pub fn verify_structure(n: usize, omega: usize, limit: usize) -> Result<StructureReport> {
    guard("n", n, limit)?;
    let stream = generate_p(n, omega)?;
    let mut seen = BTreeSet::new();
    let mut duplicates = Vec::new();
    let mut generated = 0;
    for p in stream {
        generated += 1;
        let name = p.period().canonical_rotation();
        if !seen.insert(name.clone()) {
            duplicates.push(name);
        }
    }
    let truth = class_representatives(n, omega, limit)?;
    let missing: Vec<BitSeq> = truth.difference(&seen).cloned().collect();
    let extra: Vec<BitSeq> = seen.difference(&truth).cloned().collect();
    let equal = duplicates.is_empty() && missing.is_empty() && extra.is_empty();
    Ok(StructureReport {
        n,
        omega,
        generated,
        oracle: truth.len(),
        duplicates,
        missing,
        extra,
        equal,
    })
}

/// Outcome of one law over every instance of size `n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub name: &'static str,
    pub checked: u64,
    pub failed: u64,
    pub counterexample: Option<String>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertiesReport {
    pub n: usize,
    pub laws: Vec<LawReport>,
    pub passed: bool,
}

#[derive(Debug, Clone, Default)]
struct Tally {
    checked: u64,
    failed: u64,
    first: Option<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.first.is_none() {
                self.first = Some(witness());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checked += other.checked;
        self.failed += other.failed;
        if self.first.is_none() {
            self.first = other.first;
        }
        self
    }

    fn into_law(self, name: &'static str) -> LawReport {
        LawReport {
            name,
            checked: self.checked,
            failed: self.failed,
            counterexample: self.first,
        }
    }
}

/// Runs `f` over `items` in parallel, merging tallies in input order.
fn par_tally<T: Sync>(items: &[T], f: impl Fn(&T, &mut Tally) + Sync) -> Tally {
    items
        .par_iter()
        .fold(Tally::default, |mut t, x| {
            f(x, &mut t);
            t
        })
        .reduce(Tally::default, Tally::merge)
}

fn all_words(n: usize) -> Vec<BitSeq> {
    (0..1u64 << n).map(|w| BitSeq::from_word(w, n)).collect()
}

/// Largest `n` for which laws quantified over all `2^n` words with a
/// cubic-time check are run on every word rather than on `B(n, c)` only.
const BRUTE_WORD_LIMIT: usize = 14;

/// Every law this crate claims, checked exhaustively at size `n`.
pub fn verify_properties(n: usize, limit: usize) -> Result<PropertiesReport> {
    if n == 0 {
        return Err(Error::Empty);
    }
    guard("n", n, limit)?;
    let mut laws = Vec::new();
    let words = all_words(n);
    let lo = min_level(n);
    // (c, member) for every member of B(n, c), c >= ceil(n/2); the sets
    // are only considered from n = 3 on
    let mut members: Vec<(usize, BitSeq)> = Vec::new();
    if n >= 3 {
        for c in lo..n {
            members.extend(members_at_level(n, c)?.into_iter().map(|s| (c, s)));
        }
    }

    laws.push(
        par_tally(&words, |s, t| {
            let k = 3 % n + 1;
            let ok = s.rotate_right(k).rotate_left(k) == *s
                && s.rotate_left(k) == s.rotate_right(n - (k % n))
                && s.rotate_left(k).weight() == s.weight()
                && s.rotate_left(k).canonical_rotation() == s.canonical_rotation();
            t.check(ok, || s.to_string());
            let distinct: BTreeSet<BitSeq> = (0..n).map(|k| s.rotate_left(k)).collect();
            t.check(s.is_aperiodic() == (distinct.len() == n), || s.to_string());
        })
        .into_law("rotation laws"),
    );

    let nlc_sample: Vec<BitSeq> = if n <= BRUTE_WORD_LIMIT {
        words.clone()
    } else {
        members.iter().map(|(_, s)| s.clone()).collect()
    };
    laws.push(
        par_tally(&nlc_sample, |s, t| {
            t.check(nlc_finite(s) == nlc_finite_bruteforce(s), || s.to_string())
        })
        .into_law("finite nlc matches brute force"),
    );

    laws.push(
        par_tally(&members, |(c, s), t| {
            let recs = classify(s);
            t.check(
                nlc_finite(s) == *c && recs.len() == 1 && recs[0].c == *c,
                || format!("{s} at c={c}"),
            );
        })
        .into_law("members of B(n,c,d) have nlc c and one record"),
    );

    laws.push(
        par_tally(&words, |s, t| {
            let recs = classify(s);
            if !recs.is_empty() {
                t.check(recs.len() == 1 && recs[0].c == nlc_finite(s), || {
                    s.to_string()
                });
            }
        })
        .into_law("classify returns at most one record"),
    );

    laws.push(
        par_tally(&members, |(c, s), t| {
            let r = record_at_level(s, *c).expect("member");
            for k in 1..*c {
                if c - k < lo {
                    break;
                }
                let shifted = s.rotate_left(k);
                let got = record_at_level(&shifted, c - k);
                t.check(
                    got.is_some_and(|g| g.d == r.d && g.add == r.add + k)
                        && nlc_finite(&shifted) == c - k,
                    || format!("L^{k}({s}) at c={c}"),
                );
            }
            for k in 1..=r.add.min(n - c - r.d) {
                let shifted = s.rotate_right(k);
                let got = record_at_level(&shifted, c + k);
                t.check(
                    got.is_some_and(|g| g.d == r.d && g.add == r.add - k)
                        && nlc_finite(&shifted) == c + k,
                    || format!("R^{k}({s}) at c={c}"),
                );
            }
        })
        .into_law("shift laws L^k and R^k"),
    );

    let witness_sample: Vec<BitSeq> = if n <= BRUTE_WORD_LIMIT + 2 {
        words.clone()
    } else {
        members.iter().map(|(_, s)| s.clone()).collect()
    };
    laws.push(
        par_tally(&witness_sample, |s, t| {
            let c = nlc_finite(s);
            if c >= 1 && 2 * c >= n {
                t.check(witness_pairs(s, c - 1) == 1, || s.to_string());
            }
        })
        .into_law("one witness pair when nlc >= n/2"),
    );

    let classes: Vec<(usize, BitSeq)> = members
        .par_iter()
        .filter(|(c, s)| shift_class(s, *c).is_ok_and(|r| r.base_is_representative()))
        .cloned()
        .collect();
    laws.push(
        par_tally(&classes, |(c, s), t| {
            let add = record_at_level(s, *c).expect("member").add;
            let p = PeriodSeq::new(s.clone());
            t.check(
                p.is_ok_and(|p| nlc_periodic_oracle(&p) == c + add) && nlc_finite(s) == *c,
                || format!("{s} at c={c}"),
            );
        })
        .into_law("representatives: periodic nlc = c + add"),
    );

    let periods: Vec<PeriodSeq> = if n >= 3 {
        (0..1u64 << n)
            .filter(|&w| is_class_name(w, n))
            .map(|w| PeriodSeq::new(BitSeq::from_word(w, n)).expect("class names are aperiodic"))
            .collect()
    } else {
        Vec::new()
    };
    laws.push(
        par_tally(&periods, |p, t| match nlc_periodic_fast(p) {
            Ok(v) => t.check(v == nlc_periodic_oracle(p), || p.to_string()),
            Err(Error::BelowFastPathBound { .. }) => {
                let c0 = tight_bound_c0(n).map(|b| b.c0).unwrap_or(usize::MAX);
                let reaches = (0..n).any(|i| {
                    classify(&p.period().rotate_left(i))
                        .iter()
                        .any(|r| r.c >= c0)
                });
                t.check(!reaches, || p.to_string());
            }
            Err(_) => t.check(false, || p.to_string()),
        })
        .into_law("fast path agrees with oracle"),
    );

    let max_spacing: Vec<(usize, BitSeq)> = members
        .iter()
        .filter(|(c, s)| {
            *c >= max_spacing_level(n) && record_at_level(s, *c).is_some_and(|r| r.d == n - c)
        })
        .cloned()
        .collect();
    laws.push(
        par_tally(&max_spacing, |(c, s), t| {
            let split = max_spacing_decomposition(s, *c).ok().flatten();
            let rep = shift_class(s, *c)
                .map(|r| r.base_is_representative())
                .unwrap_or(false);
            t.check(split.is_none() == rep, || format!("{s} at c={c}"));
            let via = periodic_nlc_max_spacing(s, *c).ok();
            let truth = PeriodSeq::new(s.clone())
                .map(|p| nlc_periodic_oracle(&p))
                .ok();
            t.check(via.is_some() && via == truth, || format!("{s} at c={c}"));
        })
        .into_law("maximum spacing: representative iff no tail power"),
    );

    let spaced: Vec<(usize, BitSeq)> = members
        .iter()
        .filter(|(c, s)| record_at_level(s, *c).is_some_and(|r| r.d == n - c))
        .cloned()
        .collect();
    laws.push(
        par_tally(&spaced, |(c, s), t| {
            let d = n - c;
            let add_s = record_at_level(s, *c).expect("member").add;
            for b in 1..n {
                let Some(r) = record_at_level(&s.rotate_right(b), *c) else {
                    continue;
                };
                if r.d == b && r.add > add_s {
                    let ok =
                        b < d && (n - d).is_multiple_of(b) && (2 * d == n || !d.is_multiple_of(b));
                    t.check(ok, || format!("{s} at c={c}, b={b}"));
                }
            }
        })
        .into_law("divisibility of the offset for larger add"),
    );

    let base: Vec<BitSeq> = members
        .iter()
        .filter(|(c, _)| *c == lo)
        .map(|(_, s)| s.clone())
        .collect();
    laws.push(
        par_tally(&base, |s, t| {
            let r1 = record_at_level(s, lo).expect("member");
            let a = (n - lo - r1.d) as i64;
            for h in 1..n {
                let Some(r2) = record_at_level(&s.rotate_right(h), lo) else {
                    continue;
                };
                let b = h as i64 - a;
                let ok = r1.add as i64 <= b && b < (r1.d + r2.d) as i64 - r2.add as i64;
                t.check(ok, || format!("{s}, h={h}"));
            }
        })
        .into_law("offset bound t1 <= b < d1 + d2 - t2"),
    );

    laws.push(
        par_tally(&spaced, |(c, s), t| {
            let r1 = record_at_level(s, *c).expect("member");
            for b in 1..n {
                let Some(r2) = record_at_level(&s.rotate_right(b), *c) else {
                    continue;
                };
                if r2.add >= r1.add && r1.d + r2.d <= c + r1.add + r2.add + 1 {
                    t.check(b == r2.d, || format!("{s} at c={c}, b={b}"));
                }
            }
        })
        .into_law("offset equals spacing under the sum condition"),
    );

    let hi = high_level(n);
    laws.push(
        par_tally(&members, |(c, s), t| {
            let add = record_at_level(s, *c).expect("member").add;
            let applies = (*c == lo && lo + add >= hi) || *c >= hi;
            if applies {
                let unique =
                    shift_class(s, *c).is_ok_and(|r| r.unique && r.base_is_representative());
                t.check(unique, || format!("{s} at c={c}"));
            }
        })
        .into_law("unique representative at high complexity"),
    );

    let mut tight = Tally::default();
    if let Ok(bound) = tight_bound_c0(n) {
        let reps = par_tally(&members, |(c, s), t| {
            if *c >= bound.c0 {
                t.check(
                    shift_class(s, *c).is_ok_and(|r| r.base_is_representative()),
                    || format!("{s} at c={c}"),
                );
            }
        });
        tight = tight.merge(reps);
        if bound.tight {
            let below = members.iter().any(|(c, s)| {
                *c + 1 == bound.c0 && shift_class(s, *c).is_ok_and(|r| !r.base_is_representative())
            });
            tight.check(below, || {
                format!("no non-representative at c={}", bound.c0 - 1)
            });
        }
    }
    laws.push(tight.into_law("tight bound c0"));

    let mut fam = Tally::default();
    if let Ok(family) = family_counterexample(n) {
        let check = family.check();
        fam.check(check.holds, || format!("{check:?}"));
    }
    laws.push(fam.into_law("counterexample family"));

    let mut necklace = Tally::default();
    for m in 1..=64usize {
        let mut signed = num_bigint::BigInt::zero();
        for e in divisors(m) {
            let mu = mobius(e).unwrap_or(0);
            signed += num_bigint::BigInt::from(mu) * (num_bigint::BigInt::one() << (m / e));
        }
        let a = aperiodic_count(m);
        let total: BigUint = divisors(m).map(aperiodic_count).sum();
        necklace.check(
            signed == num_bigint::BigInt::from(a.clone()) && total == BigUint::one() << m,
            || format!("m={m}"),
        );
    }
    laws.push(necklace.into_law("Mobius and necklace identities"));

    let mut direct = Tally::default();
    let mut period = Tally::default();
    let mut gap = Tally::default();
    for d in 1..=(n / 2).min(12) {
        for t in 0..=d {
            let formula = count_n(n, d, t)?;
            let brute = brute_count_n(n, d, t, DEFAULT_SEED_LIMIT)?;
            direct.check(formula == BigUint::from(brute), || {
                format!("N({n},{d},{t}): {formula} vs {brute}")
            });
            period.check(count_n(n + d, d, t)? == formula, || {
                format!("N({n},{d},{t})")
            });
            let l = n % d;
            if l != 0 {
                let mirror = n - l + (d - l);
                let other = count_n(mirror, d, t)?;
                gap.check(other == formula, || {
                    format!("N({n},{d},{t}) vs N({mirror},{d},{t})")
                });
            }
        }
    }
    laws.push(direct.into_law("N(n,d,t) matches direct count"));
    laws.push(period.into_law("N(n,d,t) = N(n+d,d,t)"));
    laws.push(gap.into_law("N(n,d,t) symmetric in n mod d"));

    laws.push(
        par_tally(&words, |s, t| {
            let s_bar = s.complement();
            let same_class = classify(s)
                .iter()
                .map(|r| (r.c, r.d, r.add))
                .eq(classify(&s_bar).iter().map(|r| (r.c, r.d, r.add)));
            t.check(nlc_finite(s) == nlc_finite(&s_bar) && same_class, || {
                s.to_string()
            });
        })
        .into_law("complement preserves nlc and classes"),
    );
    {
        let mut tallies = vec![[0u64; 2]; n + 1];
        for p in &periods {
            let flipped =
                PeriodSeq::new(p.period().complement()).expect("complement stays aperiodic");
            tallies[nlc_periodic_oracle(p)][0] += 1;
            tallies[nlc_periodic_oracle(&flipped)][1] += 1;
        }
        let mut sym = Tally::default();
        for (omega, [a, b]) in tallies.into_iter().enumerate() {
            sym.check(a == b, || format!("omega={omega}: {a} vs {b}"));
        }
        laws.push(sym.into_law("complement preserves periodic nlc tallies"));
    }

    let table = brute_distribution(n, limit)?;
    let mut identity = Tally::default();
    identity.check(
        BigUint::from(table.classes() * n as u64) == aperiodic_count(n),
        || format!("{} classes", table.classes()),
    );
    laws.push(identity.into_law("classes times n = aperiodic words"));

    let mut structure = Tally::default();
    if n >= 3 {
        let (flo, fhi) = formula_range(n);
        let mut emitted_total = 0u64;
        for omega in flo..=fhi {
            let emitted: Vec<PeriodSeq> = generate_p(n, omega)?.collect();
            emitted_total += emitted.len() as u64;
            let names: BTreeSet<BitSeq> = emitted
                .iter()
                .map(|p| p.period().canonical_rotation())
                .collect();
            structure.check(names.len() == emitted.len(), || {
                format!("duplicate class at omega={omega}")
            });
            for p in &emitted {
                structure.check(nlc_periodic_oracle(p) == omega, || {
                    format!("{p} at omega={omega}")
                });
                let s = p.period();
                let c = classify(s).first().map(|r| r.c);
                let rep = c.is_some_and(|c| {
                    let base = s.rotate_left(c - lo);
                    shift_class(&base, lo).is_ok_and(|r| r.base_is_representative())
                });
                structure.check(rep, || format!("{p} not representative at level ceil(n/2)"));
            }
            structure.check(
                count_p(n, omega)?.total.0 == BigUint::from(emitted.len()),
                || format!("count vs generated at omega={omega}"),
            );
        }
        let truth: u64 = (flo..n).map(|w| table.get(w)).sum();
        structure.check(emitted_total == truth, || {
            format!("{emitted_total} generated vs {truth} classes")
        });
    }
    laws.push(structure.into_law("generated periods are distinct, correct and representative"));

    let passed = laws.iter().all(LawReport::passed);
    Ok(PropertiesReport { n, laws, passed })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_distributions() {
        let t = brute_distribution(3, 20).unwrap();
        assert_eq!(t.rows, BTreeMap::from([(2, 2)]));
        let t = brute_distribution(16, 20).unwrap();
        assert_eq!(t.get(12), 52);
        for n in 1..=12 {
            let t = brute_distribution(n, 20).unwrap();
            assert_eq!(BigUint::from(t.classes() * n as u64), aperiodic_count(n));
        }
        assert!(matches!(
            brute_distribution(25, 20),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn direct_n_counts() {
        assert_eq!(brute_count_n(16, 6, 2, 24), Ok(6));
        assert_eq!(brute_count_n(16, 8, 4, 24), Ok(0));
        for n in 2..10 {
            assert_eq!(brute_count_n(n, 1, 0, 24), Ok(2));
        }
        assert!(brute_count_n(40, 30, 1, 24).is_err());
    }

    #[test]
    fn counts_and_structure_small() {
        let r = verify_counts(16, 20).unwrap();
        assert!(r.passed);
        assert!(r.rows.iter().any(|r| r.verdict == Verdict::Unverified));
        assert!(verify_counts(3, 20).unwrap().passed);
        assert!(verify_counts(25, 20).is_err());
        let s = verify_structure(16, 12, 20).unwrap();
        assert!(s.equal);
        assert_eq!(s.generated, 52);
        assert!(verify_structure(16, 11, 20).is_err());
    }

    #[test]
    fn properties_small() {
        for n in [2, 10] {
            let r = verify_properties(n, 20).unwrap();
            let failing: Vec<_> = r.laws.iter().filter(|l| !l.passed()).collect();
            assert!(failing.is_empty(), "n={n}: {failing:#?}");
        }
    }
}

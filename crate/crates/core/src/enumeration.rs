//! Exact counts of shift classes of `n`-periodic sequences with high
//! nonlinear complexity.
//!
//! `|P(n, ω)|` for `floor(3n/4) <= ω <= n - 1` splits by spacing `d`:
//!
//! * `d < n - ω`: `|A(d)| * 2^(n-ω-1-d)` (aperiodic seed, free middle).
//! * `d >= n - ω`: `|N(n, d, ω + d - n)|`, the aperiodic seeds of length `d`
//!   whose wrap-around boundary produces exactly `ω + d - n` added terms.
//!
//! `N` is evaluated with the divisor recursion, falling back to the rank of
//! a GF(2) constraint system when the recursion does not apply.

use std::collections::HashMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{CheckedSub, One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::complexity::high_level;
use crate::error::{Error, Result};

/// Möbius function.
pub fn mobius(m: usize) -> Result<i8> {
    if m == 0 {
        return Err(Error::domain("mobius is undefined at 0"));
    }
    let mut rest = m;
    let mut sign = 1i8;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if rest > 1 {
        sign = -sign;
    }
    Ok(sign)
}

pub(crate) fn divisors(m: usize) -> impl Iterator<Item = usize> {
    (1..=m).filter(move |e| m.is_multiple_of(*e))
}

/// Divisors `e` of `m` with `1 < e < m`.
fn proper_divisors(m: usize) -> impl Iterator<Item = usize> {
    (2..m).filter(move |e| m.is_multiple_of(*e))
}

pub(crate) fn is_prime(m: usize) -> bool {
    m >= 2
        && (2..)
            .take_while(|p| p * p <= m)
            .all(|p| !m.is_multiple_of(p))
}

fn pow2(e: usize) -> BigUint {
    BigUint::one() << e
}

/// Number of aperiodic binary words of length `d >= 1`.
pub fn aperiodic_count(d: usize) -> BigUint {
    assert!(d >= 1, "aperiodic_count needs d >= 1");
    let sum: BigInt = divisors(d)
        .map(|e| BigInt::from(mobius(e).unwrap_or(0)) * BigInt::from(pow2(d / e)))
        .sum();
    sum.to_biguint().expect("necklace sum is nonnegative")
}

/// Dense matrix over GF(2), rows packed into 64-bit blocks.
#[derive(Clone, PartialEq, Eq)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<u64>>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let blocks = cols.div_ceil(64);
        Gf2Matrix {
            rows,
            cols,
            data: vec![vec![0; blocks]; rows],
        }
    }

    pub fn identity(size: usize) -> Self {
        let mut m = Self::zeros(size, size);
        for i in 0..size {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        (self.data[row][col / 64] >> (col % 64)) & 1 == 1
    }

    pub fn set(&mut self, row: usize, col: usize, value: bool) {
        let mask = 1u64 << (col % 64);
        if value {
            self.data[row][col / 64] |= mask;
        } else {
            self.data[row][col / 64] &= !mask;
        }
    }

    pub fn row(&self, row: usize) -> Vec<u8> {
        (0..self.cols).map(|j| self.get(row, j) as u8).collect()
    }

    /// `[self | column]`.
    pub fn augment(&self, column: &[u8]) -> Self {
        assert_eq!(column.len(), self.rows);
        let mut out = Self::zeros(self.rows, self.cols + 1);
        for (i, &b) in column.iter().enumerate() {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
            out.set(i, self.cols, b == 1);
        }
        out
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut rows = self.data.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            let (block, bit) = (col / 64, 1u64 << (col % 64));
            let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][block] & bit != 0) else {
                continue;
            };
            rows.swap(rank, pivot);
            let pivot_row = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && row[block] & bit != 0 {
                    row.iter_mut().zip(&pivot_row).for_each(|(a, b)| *a ^= b);
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let line: String = self
                .row(i)
                .iter()
                .map(|&b| if b == 1 { '1' } else { '0' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

pub fn gf2_rank(m: &Gf2Matrix) -> usize {
    m.rank()
}

/// The boundary conditions behind `N(n, d, t)`, `t >= 1`, as `A x = b`
/// over the seed `x = (s_0, .., s_{d-1})`.
///
/// Row `i` (1-based, `1 <= i <= t + 1`) relates `s[(n - i) mod d]` and
/// `s[(d - i) mod d]`; when both indices coincide the row has a single 1.
/// `b = (1, 0, .., 0, 1)`.
pub fn build_constraint_system(n: usize, d: usize, t: usize) -> Result<(Gf2Matrix, Vec<u8>)> {
    if d == 0 || t == 0 {
        return Err(Error::domain(format!(
            "constraint system needs d >= 1 and t >= 1, got d = {d}, t = {t}"
        )));
    }
    let mut a = Gf2Matrix::zeros(t + 1, d);
    for i in 1..=t + 1 {
        a.set(i - 1, wrap(n as i64 - i as i64, d), true);
        a.set(i - 1, wrap(d as i64 - i as i64, d), true);
    }
    let mut b = vec![0u8; t + 1];
    b[0] = 1;
    b[t] = 1;
    Ok((a, b))
}

#[inline]
fn wrap(x: i64, d: usize) -> usize {
    x.rem_euclid(d as i64) as usize
}

/// Memoized evaluator for `|N(n, d, t)|`. Values depend on `n` only
/// through `n mod d`, which is the cache key together with `d` and `t`.
#[derive(Debug, Default)]
pub struct NCounter {
    cache: HashMap<(usize, usize, usize), BigUint>,
}

impl NCounter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn count(&mut self, n: usize, d: usize, t: usize) -> Result<BigUint> {
        if d == 0 || d > n / 2 {
            return Err(Error::domain(format!(
                "N(n, d, t) needs 1 <= d <= floor(n/2), got n = {n}, d = {d}"
            )));
        }
        self.count_inner(n, d, t)
    }

    fn count_inner(&mut self, n: usize, d: usize, t: usize) -> Result<BigUint> {
        let key = (n % d, d, t);
        if let Some(v) = self.cache.get(&key) {
            return Ok(v.clone());
        }
        let value = self.evaluate(n, d, t)?;
        self.cache.insert(key, value.clone());
        Ok(value)
    }

    fn sub_divisors(&mut self, n: usize, d: usize, t: usize, from: BigUint) -> Result<BigUint> {
        let mut acc = from;
        for e in proper_divisors(d) {
            let part = self.count_inner(n, e, t)?;
            acc = acc.checked_sub(&part).ok_or_else(|| {
                Error::domain(format!("N({n}, {d}, {t}) recursion went negative"))
            })?;
        }
        Ok(acc)
    }

    fn evaluate(&mut self, n: usize, d: usize, t: usize) -> Result<BigUint> {
        let divides = n.is_multiple_of(d);
        if t == 0 {
            return if d == 1 {
                Ok(BigUint::from(2u8))
            } else if divides {
                Ok(aperiodic_count(d))
            } else if is_prime(d) {
                Ok(pow2(d - 1) - 2u8)
            } else {
                self.sub_divisors(n, d, 0, pow2(d - 1) - 2u8)
            };
        }
        if d == 1 || divides {
            return Ok(BigUint::zero());
        }
        if is_prime(d) {
            return Ok(match t {
                t if t >= d => BigUint::zero(),
                t if t == d - 1 => BigUint::from(2u8),
                t => pow2(d - t - 1),
            });
        }
        let largest = proper_divisors(d)
            .max()
            .expect("composite d has a proper divisor");
        if t < largest {
            return self.sub_divisors(n, d, t, pow2(d - t - 1));
        }
        let (a, b) = build_constraint_system(n, d, t)?;
        let rank_a = a.rank();
        if rank_a != a.augment(&b).rank() {
            return Ok(BigUint::zero());
        }
        Ok(pow2(d - rank_a))
    }
}

/// `|N(n, d, t)|` with a fresh cache.
pub fn count_n(n: usize, d: usize, t: usize) -> Result<BigUint> {
    NCounter::new().count(n, d, t)
}

/// A nonnegative integer of any size, written as a bare JSON number.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Count(pub BigUint);

impl Serialize for Count {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let raw = serde_json::value::RawValue::from_string(self.0.to_string())
            .map_err(serde::ser::Error::custom)?;
        raw.serialize(serializer)
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Term {
    pub d: usize,
    /// Added terms required of the seed (always 0 for small spacings).
    pub t: usize,
    pub value: Count,
}

/// An exact probability, reduced, with a 12-significant-digit rendering.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Probability {
    pub fraction: String,
    pub decimal: String,
    #[serde(skip)]
    pub exact: BigRational,
}

impl Probability {
    pub fn new(num: BigUint, den: BigUint) -> Self {
        let exact = BigRational::new(BigInt::from(num), BigInt::from(den));
        let fraction = format!("{}/{}", exact.numer(), exact.denom());
        let decimal = scientific(&exact, 12);
        Probability {
            fraction,
            decimal,
            exact,
        }
    }
}

/// `x` in `d.ddd...e±k` form with `sig` significant digits, rounded half up.
pub(crate) fn scientific(x: &BigRational, sig: usize) -> String {
    if x.is_zero() {
        return format!("{:.*}e0", sig - 1, 0.0);
    }
    let negative = x.is_negative();
    let x = x.abs();
    let ten = BigInt::from(10);
    // estimate the exponent from digit counts, then correct it
    let mut exp = x.numer().to_string().len() as i64 - x.denom().to_string().len() as i64;
    let scaled = |exp: i64| -> BigRational {
        if exp >= 0 {
            &x / BigRational::from_integer(num_traits::pow(ten.clone(), exp as usize))
        } else {
            &x * BigRational::from_integer(num_traits::pow(ten.clone(), (-exp) as usize))
        }
    };
    let one = BigRational::one();
    let ten_r = BigRational::from_integer(ten.clone());
    let mut m = scaled(exp);
    while m >= ten_r {
        exp += 1;
        m = scaled(exp);
    }
    while m < one {
        exp -= 1;
        m = scaled(exp);
    }
    let factor = BigRational::from_integer(num_traits::pow(ten.clone(), sig - 1));
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let mut digits = (m * factor + half).floor().to_integer();
    if digits >= num_traits::pow(ten.clone(), sig) {
        digits /= &ten;
        exp += 1;
    }
    let digits = digits.to_string();
    let sign = if negative { "-" } else { "" };
    if sig == 1 {
        return format!("{sign}{digits}e{exp}");
    }
    format!("{sign}{}.{}e{exp}", &digits[..1], &digits[1..])
}

/// Every term of the count of `P(n, ω)`, the total and the probability
/// that a random `n`-periodic sequence has complexity `ω`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CountBreakdown {
    pub n: usize,
    pub omega: usize,
    pub case_i_terms: Vec<Term>,
    pub case_ii_terms: Vec<Term>,
    pub total: Count,
    pub probability: Probability,
}

impl CountBreakdown {
    pub fn case_i_total(&self) -> BigUint {
        self.case_i_terms.iter().map(|t| &t.value.0).sum()
    }
}

/// Inclusive range of `ω` for which the count formula holds.
pub fn formula_range(n: usize) -> (usize, usize) {
    (high_level(n), n.saturating_sub(1))
}

pub fn count_p(n: usize, omega: usize) -> Result<CountBreakdown> {
    count_p_with(&mut NCounter::new(), n, omega)
}

pub fn count_p_with(counter: &mut NCounter, n: usize, omega: usize) -> Result<CountBreakdown> {
    let (lo, hi) = formula_range(n);
    if n < 3 || omega < lo || omega > hi {
        return Err(Error::FormulaInapplicable { n, omega, lo, hi });
    }
    let case_i_terms: Vec<Term> = (1..n - omega)
        .map(|d| Term {
            d,
            t: 0,
            value: Count(aperiodic_count(d) * pow2(n - omega - 1 - d)),
        })
        .collect();
    let case_ii_terms = (n - omega..=n / 2)
        .map(|d| {
            let t = omega + d - n;
            counter.count(n, d, t).map(|v| Term {
                d,
                t,
                value: Count(v),
            })
        })
        .collect::<Result<Vec<Term>>>()?;
    let total: BigUint = case_i_terms
        .iter()
        .chain(&case_ii_terms)
        .map(|t| &t.value.0)
        .sum();
    let probability = Probability::new(&total * n, aperiodic_count(n));
    Ok(CountBreakdown {
        n,
        omega,
        case_i_terms,
        case_ii_terms,
        total: Count(total),
        probability,
    })
}

/// `count_p` for every `ω` in the formula range, ascending.
pub fn count_table(n: usize) -> Result<Vec<CountBreakdown>> {
    let (lo, hi) = formula_range(n);
    if n < 3 {
        return Err(Error::FormulaInapplicable {
            n,
            omega: lo,
            lo,
            hi,
        });
    }
    let mut counter = NCounter::new();
    (lo..=hi)
        .map(|omega| count_p_with(&mut counter, n, omega))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    #[test]
    fn mobius_values() {
        assert_eq!(mobius(1), Ok(1));
        assert_eq!(mobius(6), Ok(1));
        assert_eq!(mobius(12), Ok(0));
        assert_eq!(mobius(2), Ok(-1));
        assert_eq!(mobius(30), Ok(-1));
        assert!(mobius(0).is_err());
    }

    #[test]
    fn aperiodic_counts() {
        assert_eq!(aperiodic_count(1), big(2));
        assert_eq!(aperiodic_count(4), big(12));
        assert_eq!(aperiodic_count(6), big(54));
        let by_filter = (0..64u64)
            .filter(|&w| crate::BitSeq::from_word(w, 6).is_aperiodic())
            .count();
        assert_eq!(by_filter, 54);
    }

    #[test]
    fn constraint_matrix_shapes() {
        let (a, b) = build_constraint_system(16, 5, 1).unwrap();
        assert_eq!((a.rows(), a.cols()), (2, 5));
        assert_eq!(a.row(0), vec![1, 0, 0, 0, 1]);
        assert_eq!(a.row(1), vec![0, 0, 0, 1, 1]);
        assert_eq!(b, vec![1, 1]);
        let (a, b) = build_constraint_system(16, 7, 3).unwrap();
        assert_eq!((a.rows(), a.cols()), (4, 7));
        assert_eq!(b, vec![1, 0, 0, 1]);
        // each row is the previous one shifted left by one column
        for i in 1..a.rows() {
            let mut prev = a.row(i - 1);
            prev.rotate_left(1);
            assert_eq!(a.row(i), prev);
        }
        assert!(build_constraint_system(16, 5, 0).is_err());
    }

    #[test]
    fn rank_basics() {
        assert_eq!(Gf2Matrix::zeros(3, 4).rank(), 0);
        assert_eq!(Gf2Matrix::identity(5).rank(), 5);
        assert_eq!(Gf2Matrix::identity(70).rank(), 70);
        for d in [5, 7, 11, 13] {
            for t in 1..=d - 2 {
                let (a, _) = build_constraint_system(3 * d + 1, d, t).unwrap();
                assert_eq!(a.rank(), t + 1, "d = {d}, t = {t}");
            }
        }
    }

    #[test]
    fn n_counts_from_worked_example() {
        let n = |d, t| count_n(16, d, t).unwrap();
        assert_eq!(n(4, 0), big(12));
        assert_eq!(n(5, 1), big(8));
        assert_eq!(n(6, 2), big(6));
        assert_eq!(n(7, 3), big(8));
        assert_eq!(n(8, 4), big(0));
        assert_eq!(n(3, 2), big(2));
        assert_eq!(n(2, 2), big(0));
        assert!(count_n(16, 9, 0).is_err());
        assert!(count_n(16, 0, 0).is_err());
    }

    #[test]
    fn n_symmetric_under_negated_residue() {
        for d in 2..=12 {
            for l in 1..d {
                for t in 0..=d {
                    let a = count_n(2 * d + l, d, t).unwrap();
                    let b = count_n(3 * d - l, d, t).unwrap();
                    assert_eq!(a, b, "d={d} l={l} t={t}");
                }
            }
        }
    }

    #[test]
    fn count_16_12() {
        let c = count_p(16, 12).unwrap();
        assert_eq!(c.total.0, big(52));
        assert_eq!(c.case_i_total(), big(18));
        let ii: Vec<u64> = c
            .case_ii_terms
            .iter()
            .map(|t| t.value.0.to_u64().unwrap())
            .collect();
        assert_eq!(ii, vec![12, 8, 6, 8, 0]);
        assert!(matches!(
            count_p(16, 11),
            Err(Error::FormulaInapplicable { .. })
        ));
        assert!(matches!(
            count_p(16, 16),
            Err(Error::FormulaInapplicable { .. })
        ));
    }

    #[test]
    fn scientific_rendering() {
        let r = |a: i64, b: i64| BigRational::new(BigInt::from(a), BigInt::from(b));
        assert_eq!(scientific(&r(1, 2), 12), "5.00000000000e-1");
        assert_eq!(scientific(&r(2, 3), 4), "6.667e-1");
        assert_eq!(scientific(&r(9999, 1000), 3), "1.00e1");
        assert_eq!(scientific(&r(52, 1), 2), "5.2e1");
        assert_eq!(scientific(&r(0, 1), 3), "0.00e0");
    }

    #[test]
    fn large_n_is_exact() {
        let c = count_p(200, 199).unwrap();
        assert!(c.total.0 > BigUint::zero());
        assert_eq!(count_table(40).unwrap().len(), 10);
    }

    #[test]
    fn count_serializes_as_number() {
        let json = serde_json::to_string(&Count(pow2(100))).unwrap();
        assert_eq!(json, "1267650600228229401496703205376");
    }
}

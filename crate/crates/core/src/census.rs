//! Exact counts over the `2^(2^n)` truth tables on `n` atoms.
//!
//! Row `m` is the first true row of exactly `2^(2^n - m)` tables, so the
//! share of satisfiable classes answered within the first `m` rows is
//! `r(m) = 100 (2^m - 1) / 2^m` percent. Everything is computed in big
//! integers and rationals; decimals are rendered only for display.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::{binomial, Integer};
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{Error, Result};

/// `2^(2^n)` has `2^n` bits; beyond this it stops being a practical number.
pub const MAX_CENSUS_ATOMS: u32 = 30;
/// Largest `n` for [`empirical_first_true`].
pub const MAX_EMPIRICAL_ATOMS: u32 = 4;
/// Default significant digits for decimal rendering.
pub const DEFAULT_DIGITS: usize = 15;

/// Exact rational in lowest terms with a positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRatio(BigRational);

impl ExactRatio {
    pub fn new(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Result<Self> {
        let denom = denom.into();
        if denom.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        Ok(ExactRatio(BigRational::new(numer.into(), denom)))
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        ExactRatio(BigRational::from_integer(value.into()))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn scale(&self, factor: i64) -> Self {
        ExactRatio(&self.0 * BigRational::from_integer(factor.into()))
    }

    /// Rounded half-up to `digits` significant digits, trailing zeros
    /// dropped. Magnitudes below `1e-6` or from `1e21` up use `E` notation.
    pub fn to_significant(&self, digits: usize) -> String {
        self.render(digits, false)
    }

    /// Always `E` notation: `1.84467E+19`.
    pub fn to_scientific(&self, digits: usize) -> String {
        self.render(digits, true)
    }

    fn render(&self, digits: usize, force_scientific: bool) -> String {
        assert!(digits >= 1, "need at least one significant digit");
        if self.0.is_zero() {
            return "0".into();
        }
        let sign = if self.0.is_negative() { "-" } else { "" };
        let abs = self.0.abs();
        let mut e = decimal_exponent(&abs);
        let mut mantissa = round_half_up(&shift(&abs, digits as i64 - 1 - e));
        if mantissa == pow10(digits as u32) {
            mantissa /= 10u32;
            e += 1;
        }
        let s = mantissa.to_string();
        if force_scientific || !(-6..21).contains(&e) {
            let (head, tail) = s.split_at(1);
            let tail = tail.trim_end_matches('0');
            let dot = if tail.is_empty() { "" } else { "." };
            let esign = if e < 0 { '-' } else { '+' };
            return format!("{sign}{head}{dot}{tail}E{esign}{}", e.abs());
        }
        let int_digits = e + 1;
        let body = if int_digits >= s.len() as i64 {
            format!("{s}{}", "0".repeat(int_digits as usize - s.len()))
        } else if int_digits <= 0 {
            trim_fraction(format!("0.{}{s}", "0".repeat((-int_digits) as usize)))
        } else {
            let (i, f) = s.split_at(int_digits as usize);
            trim_fraction(format!("{i}.{f}"))
        };
        format!("{sign}{body}")
    }

    /// Rounded half-up to `decimals` places, trailing zeros dropped.
    pub fn to_fixed(&self, decimals: usize) -> String {
        let sign = if self.0.is_negative() { "-" } else { "" };
        let scaled = round_half_up(&shift(&self.0.abs(), decimals as i64));
        if scaled.is_zero() {
            return "0".into();
        }
        let s = format!("{:0>width$}", scaled.to_string(), width = decimals + 1);
        let (i, f) = s.split_at(s.len() - decimals);
        format!("{sign}{}", trim_fraction(format!("{i}.{f}")))
    }
}

impl fmt::Display for ExactRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_significant(DEFAULT_DIGITS))
    }
}

fn trim_fraction(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10u32).pow(k)
}

/// `x * 10^k`.
fn shift(x: &BigRational, k: i64) -> BigRational {
    let p = BigRational::from_integer(pow10(k.unsigned_abs() as u32));
    if k >= 0 {
        x * p
    } else {
        x / p
    }
}

/// `floor(x + 1/2)` for `x >= 0`.
fn round_half_up(x: &BigRational) -> BigInt {
    let two = BigInt::from(2u32);
    (x.numer() * &two + x.denom()).div_floor(&(x.denom() * two))
}

/// `floor(log10(x))` for `x > 0`.
fn decimal_exponent(x: &BigRational) -> i64 {
    let bits = x.numer().bits() as i64 - x.denom().bits() as i64;
    let mut e = (bits as f64 * std::f64::consts::LOG10_2).floor() as i64;
    let at_least = |e: i64| shift(x, -e) >= BigRational::one();
    while !at_least(e) {
        e -= 1;
    }
    while at_least(e + 1) {
        e += 1;
    }
    e
}

fn two_pow(k: u64) -> BigUint {
    BigUint::one() << k
}

fn check_census_atoms(n: u32) -> Result<()> {
    if n > MAX_CENSUS_ATOMS {
        Err(Error::capacity("census atoms", n, MAX_CENSUS_ATOMS))
    } else {
        Ok(())
    }
}

fn check_row(n: u32, m: u64) -> Result<()> {
    check_census_atoms(n)?;
    let u = 1u64 << n;
    if m == 0 || m > u {
        Err(Error::out_of_range("row", m, format!("1..={u}")))
    } else {
        Ok(())
    }
}

/// Rows in a truth table on `n` atoms, `u = 2^n`.
pub fn rows_in_table(n: u32) -> Result<u64> {
    check_census_atoms(n)?;
    Ok(1u64 << n)
}

/// Number of truth tables, hence equivalence classes, on `n` atoms.
pub fn class_count(n: u32) -> Result<BigUint> {
    Ok(two_pow(rows_in_table(n)?))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CensusRow {
    pub n: u32,
    pub u: u64,
    pub class_count: BigUint,
}

pub fn census_row(n: u32) -> Result<CensusRow> {
    let u = rows_in_table(n)?;
    Ok(CensusRow {
        n,
        u,
        class_count: two_pow(u),
    })
}

/// Tables whose first true row is `m`: `2^(2^n - m)`.
pub fn first_true_count(n: u32, m: u64) -> Result<BigUint> {
    check_row(n, m)?;
    Ok(two_pow((1u64 << n) - m))
}

/// Tables true somewhere in rows `1..=m`: `2^(2^n) - 2^(2^n - m)`.
pub fn q_sum(n: u32, m: u64) -> Result<BigUint> {
    check_row(n, m)?;
    let u = 1u64 << n;
    Ok(two_pow(u) - two_pow(u - m))
}

/// `r(m) = 100 (2^m - 1) / 2^m`, in percent.
pub fn r_ratio(m: u64) -> ExactRatio {
    let den = two_pow(m);
    let num = &den - BigUint::one();
    ExactRatio(BigRational::new(
        BigInt::from_biguint(Sign::Plus, num) * 100,
        BigInt::from_biguint(Sign::Plus, den),
    ))
}

/// `r(m)` for an exponent too large to expand: `1 - 2^-m` on the fraction
/// scale, kept symbolic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RValue {
    m: u64,
}

/// Largest `m` for which [`RValue::fraction`] expands `2^m`.
pub const MAX_EXACT_EXPONENT: u64 = 1 << 16;

impl RValue {
    pub fn new(m: u64) -> Self {
        RValue { m }
    }

    pub fn exponent(&self) -> u64 {
        self.m
    }

    /// `(2^m - 1) / 2^m`.
    pub fn fraction(&self) -> Result<ExactRatio> {
        if self.m > MAX_EXACT_EXPONENT {
            return Err(Error::capacity("r exponent", self.m, MAX_EXACT_EXPONENT));
        }
        let den = two_pow(self.m);
        let num = &den - BigUint::one();
        ExactRatio::new(BigInt::from(num), BigInt::from(den))
    }

    pub fn percent(&self) -> Result<ExactRatio> {
        Ok(self.fraction()?.scale(100))
    }

    /// `2^-m` below half a unit in the last place always rounds to 1, so
    /// large exponents never need expanding.
    fn rounds_to_one(&self, places: usize) -> bool {
        self.m > 4 * places as u64 + 8
    }

    pub fn fraction_fixed(&self, decimals: usize) -> String {
        if self.rounds_to_one(decimals) {
            return "1".into();
        }
        self.fraction().expect("small exponent").to_fixed(decimals)
    }

    pub fn fraction_significant(&self, digits: usize) -> String {
        if self.rounds_to_one(digits) {
            return "1".into();
        }
        self.fraction()
            .expect("small exponent")
            .to_significant(digits)
    }
}

/// `r(n^s)`. The formula only counts real rows when `n^s <= 2^n`; beyond
/// that the value is still returned but flagged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PolyRatio {
    Applicable(RValue),
    NotApplicable(RValue),
}

impl PolyRatio {
    pub fn is_applicable(&self) -> bool {
        matches!(self, PolyRatio::Applicable(_))
    }

    pub fn value(&self) -> &RValue {
        match self {
            PolyRatio::Applicable(r) | PolyRatio::NotApplicable(r) => r,
        }
    }
}

fn poly_rows(n: u32, s: u32) -> Result<u64> {
    (n as u64)
        .checked_pow(s)
        .ok_or_else(|| Error::capacity("n^s", format!("{n}^{s}"), u64::MAX))
}

pub fn r_poly(n: u32, s: u32) -> Result<PolyRatio> {
    check_census_atoms(n)?;
    let m = poly_rows(n, s)?;
    let r = RValue::new(m);
    Ok(if m <= 1u64 << n {
        PolyRatio::Applicable(r)
    } else {
        PolyRatio::NotApplicable(r)
    })
}

/// Tables whose first true row lies beyond row `n^s`: `2^(2^n - n^s)`, or
/// `None` when `n^s > 2^n` leaves no such rows to speak of.
pub fn poly_tail_count(n: u32, s: u32) -> Result<Option<BigUint>> {
    check_census_atoms(n)?;
    let m = poly_rows(n, s)?;
    let u = 1u64 << n;
    Ok((m <= u).then(|| two_pow(u - m)))
}

/// Share of row orders that list the `m` true rows of a table first:
/// `m! (2^n - m)! / (2^n)! = 1 / C(2^n, m)`.
pub fn lucky_ratio(n: u32, m: u64) -> Result<ExactRatio> {
    check_census_atoms(n)?;
    let u = 1u64 << n;
    if m > u {
        return Err(Error::out_of_range("true rows", m, format!("0..={u}")));
    }
    let c = binomial(BigUint::from(u), BigUint::from(m));
    ExactRatio::new(BigInt::one(), BigInt::from(c))
}

/// Tally of first-true-row positions over every result vector on `n`
/// atoms, found by enumeration. `None` counts the all-false vector.
pub fn empirical_first_true(n: u32) -> Result<BTreeMap<Option<u64>, u64>> {
    if n > MAX_EMPIRICAL_ATOMS {
        return Err(Error::capacity("enumerated atoms", n, MAX_EMPIRICAL_ATOMS));
    }
    let rows = 1u32 << n;
    let mut tally = BTreeMap::new();
    for vector in 0..1u64 << rows {
        // Bit `k - 1` of `vector` is the result in row `k`.
        let first = (vector != 0).then(|| vector.trailing_zeros() as u64 + 1);
        *tally.entry(first).or_insert(0) += 1;
    }
    Ok(tally)
}

impl fmt::Display for CensusRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.n, self.u, self.class_count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(s: &str) -> BigUint {
        s.parse().unwrap()
    }

    fn ratio(n: i64, d: i64) -> ExactRatio {
        ExactRatio::new(n, d).unwrap()
    }

    #[test]
    fn class_counts() {
        let expected = ["4", "16", "256", "65536", "4294967296"];
        for (n, e) in (1..=5).zip(expected) {
            assert_eq!(class_count(n).unwrap(), big(e));
        }
        assert_eq!(class_count(10).unwrap().to_string().len(), 309);
        assert!(class_count(31).is_err());
        let row = census_row(4).unwrap();
        assert_eq!(row.to_string(), "4,16,65536");
    }

    #[test]
    fn first_true_and_q() {
        assert_eq!(first_true_count(2, 1).unwrap(), big("8"));
        assert_eq!(first_true_count(2, 4).unwrap(), big("1"));
        let total: BigUint = (1..=8).map(|m| first_true_count(3, m).unwrap()).sum();
        assert_eq!(total + 1u32, big("256"));
        assert_eq!(q_sum(2, 4).unwrap(), big("15"));
        assert_eq!(q_sum(1, 1).unwrap(), big("2"));
        assert_eq!(q_sum(3, 8).unwrap(), big("255"));
        for n in 1..=4 {
            assert_eq!(q_sum(n, 1 << n).unwrap(), class_count(n).unwrap() - 1u32);
        }
        assert!(first_true_count(2, 0).is_err());
        assert!(q_sum(2, 5).is_err());
    }

    #[test]
    fn r_values() {
        assert_eq!(r_ratio(1), ratio(50, 1));
        assert_eq!(r_ratio(2), ratio(75, 1));
        assert_eq!(r_ratio(4), ratio(375, 4));
        assert_eq!(r_ratio(4).to_string(), "93.75");
        assert_eq!(r_ratio(20), ratio(100 * ((1 << 20) - 1), 1 << 20));
        assert_eq!(r_ratio(20).to_fixed(7), "99.9999046");
        for m in 1..40 {
            assert!(r_ratio(m) < r_ratio(m + 1));
            assert!(r_ratio(m) < ExactRatio::from_integer(100));
        }
    }

    #[test]
    fn poly_ratios() {
        let r = r_poly(3, 1).unwrap();
        assert!(r.is_applicable());
        assert_eq!(r.value().percent().unwrap().to_string(), "87.5");
        let twenty = r_poly(20, 1).unwrap();
        assert_eq!(twenty.value().fraction_fixed(9), "0.999999046");
        let na = r_poly(2, 3).unwrap();
        assert!(!na.is_applicable());
        assert_eq!(na.value().fraction_fixed(9), "0.99609375");
        let huge = r_poly(20, 10).unwrap();
        assert_eq!(huge.value().exponent(), 20u64.pow(10));
        assert_eq!(huge.value().fraction_fixed(9), "1");
        assert!(huge.value().fraction().is_err());
        let exponents: Vec<u64> = (1..=20)
            .map(|n| r_poly(n, 2).unwrap().value().exponent())
            .collect();
        assert!(exponents.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn tail_counts() {
        assert_eq!(poly_tail_count(1, 7).unwrap(), Some(big("2")));
        assert_eq!(poly_tail_count(3, 1).unwrap(), Some(big("32")));
        assert_eq!(poly_tail_count(3, 2).unwrap(), None);
        assert_eq!(poly_tail_count(10, 3).unwrap(), Some(big("16777216")));
        assert_eq!(poly_tail_count(16, 4).unwrap(), Some(big("1")));
        assert_eq!(poly_tail_count(10, 4).unwrap(), None);
    }

    #[test]
    fn lucky() {
        assert_eq!(lucky_ratio(1, 1).unwrap(), ratio(1, 2));
        assert_eq!(lucky_ratio(2, 2).unwrap(), ratio(1, 6));
        assert_eq!(lucky_ratio(3, 4).unwrap(), ratio(1, 70));
        assert_eq!(lucky_ratio(3, 0).unwrap(), ratio(1, 1));
        assert!(lucky_ratio(2, 5).is_err());
        let fact = |k: u64| (1..=k).fold(BigInt::one(), |a, b| a * b);
        for n in 1..=4u32 {
            let u = 1u64 << n;
            for m in 0..=u {
                let via_factorials = ExactRatio::new(fact(m) * fact(u - m), fact(u)).unwrap();
                assert_eq!(lucky_ratio(n, m).unwrap(), via_factorials);
            }
        }
    }

    #[test]
    fn empirical_matches_formula() {
        let one: BTreeMap<_, _> = [(Some(1), 2), (Some(2), 1), (None, 1)].into();
        assert_eq!(empirical_first_true(1).unwrap(), one);
        for n in 1..=3 {
            let tally = empirical_first_true(n).unwrap();
            assert_eq!(tally[&None], 1);
            for m in 1..=1u64 << n {
                assert_eq!(
                    BigUint::from(tally[&Some(m)]),
                    first_true_count(n, m).unwrap()
                );
            }
        }
        assert!(empirical_first_true(5).is_err());
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(ratio(1, 3).to_string(), "0.333333333333333");
        assert_eq!(ratio(2, 3).to_string(), "0.666666666666667");
        assert_eq!(ratio(1, 70).to_significant(6), "0.0142857");
        assert_eq!(ratio(-5, 2).to_string(), "-2.5");
        assert_eq!(ratio(0, 7).to_string(), "0");
        assert_eq!(ratio(99999, 1).to_significant(3), "100000");
        assert_eq!(ratio(1, 10_000_000).to_string(), "1E-7");
        let c6 = ExactRatio::from_integer(BigInt::from(class_count(6).unwrap()));
        assert_eq!(c6.to_scientific(6), "1.84467E+19");
        assert_eq!(c6.to_string(), "18446744073709600000");
        assert_eq!(c6.numer().to_string(), "18446744073709551616");
        let c9 = ExactRatio::from_integer(BigInt::from(class_count(9).unwrap()));
        assert_eq!(c9.to_scientific(5), "1.3408E+154");
        assert_eq!(ratio(2047, 2048).to_fixed(9), "0.999511719");
        assert_eq!(ratio(1, 2).to_fixed(9), "0.5");
        assert_eq!(ratio(1, 1).to_fixed(3), "1");
        assert_eq!(ratio(1, 1000).to_fixed(2), "0");
        assert_eq!(ratio(5, 1000).to_fixed(2), "0.01");
    }
}

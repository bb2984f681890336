use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::limits::limits;

/// Largest supported variable count; monomials are `u64` subsets.
pub const MAX_VARS: u32 = 64;

/// A 0/1 point `(x1, ..., xn)`.
pub type BinaryPoint = Vec<bool>;

/// Integer polynomial in which every exponent is 0 or 1.
///
/// Terms are keyed by the subset of their variables (bit `i - 1` stands for
/// `x_i`); the empty subset holds the constant. Products are reduced with
/// `x^2 = x` as they are formed, so no term ever carries a higher power and the
/// term count never exceeds `2^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultilinearPoly {
    nvars: u32,
    terms: BTreeMap<u64, BigInt>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveResult {
    Value(BigRational),
    /// The variable drops out and a nonzero constant remains (`1 = 0`).
    Inconsistent,
    /// The variable drops out and the equation reads `0 = 0`.
    Indeterminate,
}

impl fmt::Display for SolveResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveResult::Value(v) => write!(f, "{v}"),
            SolveResult::Inconsistent => f.write_str("inconsistent"),
            SolveResult::Indeterminate => f.write_str("indeterminate"),
        }
    }
}

fn check_nvars(nvars: u32) -> Result<()> {
    if nvars > MAX_VARS {
        Err(Error::capacity(
            "polynomial variable count",
            nvars,
            MAX_VARS,
        ))
    } else {
        Ok(())
    }
}

fn full_mask(nvars: u32) -> u64 {
    if nvars == 64 {
        u64::MAX
    } else {
        (1u64 << nvars) - 1
    }
}

pub fn mask_to_point(mask: u64, nvars: u32) -> BinaryPoint {
    (0..nvars).map(|i| mask >> i & 1 == 1).collect()
}

pub fn point_to_mask(point: &[bool]) -> u64 {
    point
        .iter()
        .enumerate()
        .fold(0, |m, (i, &b)| if b { m | 1 << i } else { m })
}

impl MultilinearPoly {
    pub fn zero(nvars: u32) -> Result<Self> {
        check_nvars(nvars)?;
        Ok(MultilinearPoly {
            nvars,
            terms: BTreeMap::new(),
        })
    }

    pub fn constant(nvars: u32, c: impl Into<BigInt>) -> Result<Self> {
        let mut p = Self::zero(nvars)?;
        p.add_term(0, c.into());
        Ok(p)
    }

    /// The variable `x_index` (1-based).
    pub fn var(nvars: u32, index: u32) -> Result<Self> {
        let mut p = Self::zero(nvars)?;
        if index == 0 || index > nvars {
            return Err(Error::out_of_range(
                "variable",
                index,
                format!("1..={nvars}"),
            ));
        }
        p.add_term(1 << (index - 1), BigInt::one());
        Ok(p)
    }

    /// Builds from `(variables, coefficient)` pairs; repeated variables in a
    /// term collapse (`x1*x1 = x1`) and like terms merge.
    pub fn from_terms<I, V>(nvars: u32, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (V, i64)>,
        V: AsRef<[u32]>,
    {
        let mut p = Self::zero(nvars)?;
        for (vars, c) in terms {
            let mut mask = 0u64;
            for &v in vars.as_ref() {
                if v == 0 || v > nvars {
                    return Err(Error::out_of_range("variable", v, format!("1..={nvars}")));
                }
                mask |= 1 << (v - 1);
            }
            p.add_term(mask, BigInt::from(c));
        }
        Ok(p)
    }

    fn add_term(&mut self, mask: u64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn nvars(&self) -> u32 {
        self.nvars
    }

    /// Same polynomial in a wider ambient space.
    pub fn widen(mut self, nvars: u32) -> Result<Self> {
        check_nvars(nvars)?;
        if nvars < self.nvars && self.terms.keys().any(|m| m & !full_mask(nvars) != 0) {
            return Err(Error::Invalid(format!(
                "polynomial uses variables beyond x{nvars}"
            )));
        }
        self.nvars = nvars;
        Ok(self)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the monomial over `mask`.
    pub fn coeff(&self, mask: u64) -> BigInt {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coeff(0)
    }

    /// Terms in mask order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigInt)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    /// Terms in display order: by degree, then lexicographically by variable
    /// list, constant last.
    pub fn terms_graded(&self) -> Vec<(Vec<u32>, BigInt)> {
        let mut out: Vec<(Vec<u32>, BigInt)> = self
            .terms
            .iter()
            .filter(|(m, _)| **m != 0)
            .map(|(m, c)| (mask_vars(*m), c.clone()))
            .collect();
        out.sort_by(|(a, _), (b, _)| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        if let Some(c) = self.terms.get(&0) {
            out.push((Vec::new(), c.clone()));
        }
        out
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == 0)
    }

    fn same_space(&self, other: &Self) -> u32 {
        self.nvars.max(other.nvars)
    }

    /// Value at the binary point whose set coordinates are `mask`.
    pub fn eval_binary(&self, mask: u64) -> BigInt {
        self.terms
            .iter()
            .filter(|(m, _)| *m & !mask == 0)
            .map(|(_, c)| c)
            .sum()
    }

    /// Exact value at an arbitrary rational point of length `n`.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        if point.len() != self.nvars as usize {
            return Err(Error::Invalid(format!(
                "point has {} coordinates, polynomial has {} variables",
                point.len(),
                self.nvars
            )));
        }
        let binary = point.iter().enumerate().try_fold(0u64, |m, (i, x)| {
            if x.is_zero() {
                Some(m)
            } else if x.is_one() {
                Some(m | 1 << i)
            } else {
                None
            }
        });
        if let Some(mask) = binary {
            return Ok(BigRational::from_integer(self.eval_binary(mask)));
        }
        let mut total = BigRational::zero();
        for (mask, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for v in mask_vars(*mask) {
                term *= &point[(v - 1) as usize];
            }
            total += term;
        }
        Ok(total)
    }

    /// Every 0/1 point where the polynomial vanishes, by exhaustive sweep.
    pub fn binary_roots(&self) -> Result<BTreeSet<BinaryPoint>> {
        limits().check_atoms(self.nvars as usize)?;
        Ok((0..1u64 << self.nvars)
            .filter(|&m| self.eval_binary(m).is_zero())
            .map(|m| mask_to_point(m, self.nvars))
            .collect())
    }

    /// Solves `p = 0` for `x_var` with every other variable fixed.
    ///
    /// Multilinearity makes `p = A * x_var + B` where `A`, `B` depend only on
    /// the other variables. `others` lists those in index order, skipping
    /// `var`.
    pub fn solve_for(&self, var: u32, others: &[BigRational]) -> Result<SolveResult> {
        if var == 0 || var > self.nvars {
            return Err(Error::out_of_range(
                "variable",
                var,
                format!("1..={}", self.nvars),
            ));
        }
        if others.len() + 1 != self.nvars as usize {
            return Err(Error::Invalid(format!(
                "expected {} fixed values, got {}",
                self.nvars - 1,
                others.len()
            )));
        }
        let value_of = |v: u32| -> &BigRational {
            let idx = if v < var { v - 1 } else { v - 2 };
            &others[idx as usize]
        };
        let var_bit = 1u64 << (var - 1);
        let mut slope = BigRational::zero();
        let mut offset = BigRational::zero();
        for (mask, c) in &self.terms {
            let mut term = BigRational::from_integer(c.clone());
            for v in mask_vars(mask & !var_bit) {
                term *= value_of(v);
            }
            if mask & var_bit != 0 {
                slope += term;
            } else {
                offset += term;
            }
        }
        Ok(if !slope.is_zero() {
            SolveResult::Value(-offset / slope)
        } else if !offset.is_zero() {
            SolveResult::Inconsistent
        } else {
            SolveResult::Indeterminate
        })
    }

    /// Imposes `x_from = x_to`: every occurrence of `x_from` becomes `x_to`,
    /// then `x_to^2` reduces to `x_to` and like terms merge.
    pub fn substitute_equal(&self, from: u32, to: u32) -> Result<Self> {
        for v in [from, to] {
            if v == 0 || v > self.nvars {
                return Err(Error::out_of_range(
                    "variable",
                    v,
                    format!("1..={}", self.nvars),
                ));
            }
        }
        if from == to {
            return Err(Error::Invalid(
                "substitution needs two distinct variables".into(),
            ));
        }
        let from_bit = 1u64 << (from - 1);
        let to_bit = 1u64 << (to - 1);
        let mut out = Self::zero(self.nvars)?;
        for (mask, c) in &self.terms {
            let m = if mask & from_bit != 0 {
                (mask & !from_bit) | to_bit
            } else {
                *mask
            };
            out.add_term(m, c.clone());
        }
        Ok(out)
    }

    /// Checks that raising variables to odd powers leaves the values on
    /// `{0,1}^n` unchanged. Sweeps the cube exhaustively within the atom cap,
    /// otherwise tests `trials` seeded random points.
    pub fn exponent_variant_agrees(&self, variant: &ExponentVariant, trials: u64) -> Result<bool> {
        variant.validate()?;
        let check = |mask: u64| self.eval_binary(mask) == variant.eval_binary(self, mask);
        if limits().check_atoms(self.nvars as usize).is_ok() {
            Ok((0..1u64 << self.nvars).all(check))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            let full = full_mask(self.nvars);
            Ok((0..trials).all(|_| check(rng.random::<u64>() & full)))
        }
    }
}

/// Variables of a monomial in ascending order.
pub fn mask_vars(mask: u64) -> Vec<u32> {
    (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

/// Per-occurrence exponents for a polynomial's variables. Occurrences not
/// listed keep exponent 1.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExponentVariant {
    exponents: BTreeMap<(u64, u32), u32>,
}

impl ExponentVariant {
    pub fn new() -> Self {
        Self::default()
    }

    /// Exponent for `x_var` inside the term over `term_mask`.
    pub fn set(&mut self, term_mask: u64, var: u32, exponent: u32) -> &mut Self {
        self.exponents.insert((term_mask, var), exponent);
        self
    }

    /// Same exponent for `x_var` in every term of `p` that contains it.
    pub fn for_variable(p: &MultilinearPoly, var: u32, exponent: u32) -> Self {
        let mut v = Self::new();
        for (mask, _) in p.terms() {
            if var >= 1 && mask >> (var - 1) & 1 == 1 {
                v.set(mask, var, exponent);
            }
        }
        v
    }

    fn validate(&self) -> Result<()> {
        match self.exponents.iter().find(|(_, e)| **e % 2 == 0) {
            Some(((_, var), e)) => Err(Error::Invalid(format!(
                "exponent {e} on x{var} is not odd; even powers change values at -1"
            ))),
            None => Ok(()),
        }
    }

    fn eval_binary(&self, p: &MultilinearPoly, point: u64) -> BigInt {
        let mut total = BigInt::zero();
        for (mask, c) in p.terms() {
            let mut term = c.clone();
            for v in mask_vars(mask) {
                let e = self.exponents.get(&(mask, v)).copied().unwrap_or(1);
                let x = BigInt::from(point >> (v - 1) & 1);
                term *= num_traits::pow(x, e as usize);
            }
            total += term;
        }
        total
    }
}

impl Add for &MultilinearPoly {
    type Output = MultilinearPoly;

    fn add(self, rhs: &MultilinearPoly) -> MultilinearPoly {
        let mut out = self.clone();
        out.nvars = self.same_space(rhs);
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl Neg for &MultilinearPoly {
    type Output = MultilinearPoly;

    fn neg(self) -> MultilinearPoly {
        MultilinearPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Sub for &MultilinearPoly {
    type Output = MultilinearPoly;

    fn sub(self, rhs: &MultilinearPoly) -> MultilinearPoly {
        self + &(-rhs)
    }
}

impl Mul for &MultilinearPoly {
    type Output = MultilinearPoly;

    fn mul(self, rhs: &MultilinearPoly) -> MultilinearPoly {
        let mut out = MultilinearPoly {
            nvars: self.same_space(rhs),
            terms: BTreeMap::new(),
        };
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                // x^2 = x: the product monomial is the union of variables.
                out.add_term(ma | mb, ca * cb);
            }
        }
        out
    }
}

impl fmt::Display for MultilinearPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms_graded();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (vars, c)) in terms.iter().enumerate() {
            let magnitude = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            write!(f, "{magnitude}")?;
            for v in vars {
                write!(f, "*x{v}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// g(A) for the running example, written out by hand.
    fn g_example() -> MultilinearPoly {
        MultilinearPoly::from_terms(
            3,
            [
                (vec![1], 1),
                (vec![2], 1),
                (vec![3], 1),
                (vec![1, 2], -2),
                (vec![1, 3], -2),
                (vec![2, 3], -2),
                (vec![1, 2, 3], 3),
                (vec![], -1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn display_graded_order() {
        assert_eq!(
            g_example().to_string(),
            "1*x1 + 1*x2 + 1*x3 - 2*x1*x2 - 2*x1*x3 - 2*x2*x3 + 3*x1*x2*x3 - 1"
        );
        assert_eq!(MultilinearPoly::zero(2).unwrap().to_string(), "0");
        assert_eq!(MultilinearPoly::constant(0, -1).unwrap().to_string(), "-1");
    }

    #[test]
    fn multiplication_reduces_exponents() {
        let x1 = MultilinearPoly::var(2, 1).unwrap();
        let one = MultilinearPoly::constant(2, 1).unwrap();
        let one_minus = &one - &x1;
        // (1 - x1)^2 = 1 - 2x1 + x1^2 -> 1 - x1
        assert_eq!(&one_minus * &one_minus, one_minus);
        // x1 (1 - x1) -> 0
        assert!((&x1 * &one_minus).is_zero());
    }

    #[test]
    fn eval_at_rational_and_binary_points() {
        let g = g_example();
        assert_eq!(g.eval(&[q(0), q(0), q(1)]).unwrap(), q(0));
        assert_eq!(g.eval(&[q(1), q(1), q(1)]).unwrap(), q(-1));
        let half = BigRational::new(1.into(), 2.into());
        // 3/2 - 3/2 + 3/8 - 1 = -5/8
        assert_eq!(
            g.eval(&[half.clone(), half.clone(), half]).unwrap(),
            BigRational::new((-5).into(), 8.into())
        );
        assert!(g.eval(&[q(0)]).is_err());
    }

    #[test]
    fn binary_roots_of_g() {
        let roots = g_example().binary_roots().unwrap();
        let expected: BTreeSet<BinaryPoint> = [
            vec![false, false, true],
            vec![false, true, false],
            vec![true, false, false],
        ]
        .into_iter()
        .collect();
        assert_eq!(roots, expected);
        assert!(MultilinearPoly::constant(2, -1)
            .unwrap()
            .binary_roots()
            .unwrap()
            .is_empty());
    }

    #[test]
    fn solve_for_x1() {
        let g = g_example();
        assert_eq!(
            g.solve_for(1, &[q(1), q(1)]).unwrap(),
            SolveResult::Inconsistent
        );
        assert_eq!(
            g.solve_for(1, &[q(0), q(0)]).unwrap(),
            SolveResult::Value(q(1))
        );
        assert_eq!(
            g.solve_for(1, &[q(1), q(0)]).unwrap(),
            SolveResult::Value(q(0))
        );
        assert_eq!(
            g.solve_for(1, &[q(0), q(1)]).unwrap(),
            SolveResult::Value(q(0))
        );
        // Off the cube: x1 = (2*x2*x3 - x2 - x3 + 1) / (3*x2*x3 - 2(x2 + x3) + 1)
        // at x2 = 2, x3 = 0: (-2 + 1) / (-4 + 1) = 1/3
        assert_eq!(
            g.solve_for(1, &[q(2), q(0)]).unwrap(),
            SolveResult::Value(BigRational::new(1.into(), 3.into()))
        );
        let zero = MultilinearPoly::zero(2).unwrap();
        assert_eq!(
            zero.solve_for(2, &[q(5)]).unwrap(),
            SolveResult::Indeterminate
        );
        assert!(g.solve_for(4, &[q(0), q(0)]).is_err());
        assert!(g.solve_for(1, &[q(0)]).is_err());
    }

    #[test]
    fn substitute_equal_examples() {
        let reduced = g_example().substitute_equal(2, 1).unwrap();
        let expected =
            MultilinearPoly::from_terms(3, [(vec![3], 1), (vec![1, 3], -1), (vec![], -1)]).unwrap();
        assert_eq!(reduced, expected);
        assert_eq!(reduced.to_string(), "1*x3 - 1*x1*x3 - 1");

        let c = MultilinearPoly::constant(2, 7).unwrap();
        assert_eq!(c.substitute_equal(2, 1).unwrap(), c);

        let p = MultilinearPoly::from_terms(2, [(vec![1, 2], 1), (vec![1], 1)]).unwrap();
        let two_x1 = MultilinearPoly::from_terms(2, [(vec![1], 2)]).unwrap();
        assert_eq!(p.substitute_equal(2, 1).unwrap(), two_x1);
        assert!(p.substitute_equal(1, 1).is_err());
    }

    #[test]
    fn exponent_variants() {
        let g = g_example();
        assert!(g
            .exponent_variant_agrees(&ExponentVariant::new(), 0)
            .unwrap());
        let cubed = ExponentVariant::for_variable(&g, 1, 3);
        assert_eq!(cubed.exponents.len(), 4);
        assert!(g.exponent_variant_agrees(&cubed, 0).unwrap());
        let mut even = ExponentVariant::new();
        even.set(0b11, 1, 2);
        assert!(matches!(
            g.exponent_variant_agrees(&even, 0),
            Err(Error::Invalid(_))
        ));
    }

    #[test]
    fn too_many_variables() {
        assert!(matches!(
            MultilinearPoly::zero(65),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn point_mask_conversions() {
        assert_eq!(point_to_mask(&[true, false, true]), 0b101);
        assert_eq!(mask_to_point(0b110, 3), vec![false, true, true]);
        assert_eq!(mask_vars(0b1010), vec![2, 4]);
    }
}

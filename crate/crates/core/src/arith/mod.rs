//! Arithmetization of formulas into multilinear integer polynomials.
//!
//! `h` maps each atom `p_i` to the variable `x_i` and each connective to a
//! polynomial identity that agrees with its truth function on `{0,1}`:
//!
//! ```text
//! h(~A)      = 1 - h(A)
//! h(A & B)   = h(A) h(B)
//! h(A | B)   = h(A) + h(B) - h(A) h(B)
//! h(A -> B)  = (1 - h(A)) (1 - h(B)) + h(B)
//! h(A <-> B) = (1 - h(A)) (1 - h(B)) (1 + h(A) + h(B)) + h(A) h(B)
//! ```
//!
//! The characteristic polynomial `g = h - 1` vanishes on a 0/1 point exactly
//! when the formula is true there.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::formula::{Connective, Formula};
use crate::limits::limits;

mod poly;

pub use poly::{
    mask_to_point, mask_vars, point_to_mask, BinaryPoint, ExponentVariant, MultilinearPoly,
    SolveResult, MAX_VARS,
};

/// `h(f)` in `max_atom(f)` variables.
pub fn arithmetize(f: &Formula) -> Result<MultilinearPoly> {
    arithmetize_in(f, f.max_atom())
}

/// `h(f)` in an ambient space of `nvars` variables (at least `max_atom(f)`).
pub fn arithmetize_in(f: &Formula, nvars: u32) -> Result<MultilinearPoly> {
    if f.max_atom() > nvars {
        return Err(Error::Invalid(format!(
            "formula uses p{} but only {nvars} variables requested",
            f.max_atom()
        )));
    }
    let one = MultilinearPoly::constant(nvars, 1)?;
    build(f, nvars, &one)
}

fn build(f: &Formula, nvars: u32, one: &MultilinearPoly) -> Result<MultilinearPoly> {
    Ok(match f {
        Formula::Atom(i) => MultilinearPoly::var(nvars, *i)?,
        Formula::Top => one.clone(),
        Formula::Bottom => MultilinearPoly::zero(nvars)?,
        Formula::Not(inner) => one - &build(inner, nvars, one)?,
        Formula::Binary(op, l, r) => {
            let a = build(l, nvars, one)?;
            let b = build(r, nvars, one)?;
            match op {
                Connective::And => &a * &b,
                Connective::Or => &(&a + &b) - &(&a * &b),
                Connective::Implies => &(&(one - &a) * &(one - &b)) + &b,
                Connective::Iff => {
                    let both_false = &(one - &a) * &(one - &b);
                    let spread = &(one + &a) + &b;
                    &(&both_false * &spread) + &(&a * &b)
                }
            }
        }
    })
}

/// `g(f) = h(f) - 1`.
pub fn characteristic(f: &Formula) -> Result<MultilinearPoly> {
    characteristic_in(f, f.max_atom())
}

pub fn characteristic_in(f: &Formula, nvars: u32) -> Result<MultilinearPoly> {
    let h = arithmetize_in(f, nvars)?;
    Ok(&h - &MultilinearPoly::constant(nvars, 1)?)
}

/// Number of values describing an expanded polynomial in `n` variables:
/// `2^n` terms, each with one coefficient and `n` exponents.
pub fn expanded_input_size(n: u32) -> BigUint {
    BigUint::from(n + 1) << n
}

/// `h(f)` kept as a product, one factor per top-level conjunct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactoredPoly {
    nvars: u32,
    factors: Vec<MultilinearPoly>,
}

/// Zeros of a factored polynomial found factor by factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SieveReport {
    pub roots: BTreeSet<BinaryPoint>,
    /// Single-factor evaluations performed.
    pub evaluations: u64,
    /// Zeros found more than once (shared by several factors).
    pub duplicates: u64,
}

pub fn factored_arithmetize(f: &Formula) -> Result<FactoredPoly> {
    let nvars = f.max_atom();
    let factors = f
        .conjuncts()
        .into_iter()
        .map(|c| arithmetize_in(c, nvars))
        .collect::<Result<Vec<_>>>()?;
    Ok(FactoredPoly { nvars, factors })
}

impl FactoredPoly {
    pub fn nvars(&self) -> u32 {
        self.nvars
    }

    pub fn factors(&self) -> &[MultilinearPoly] {
        &self.factors
    }

    /// Product of all factors, reduced.
    pub fn expand(&self) -> Result<MultilinearPoly> {
        let one = MultilinearPoly::constant(self.nvars, 1)?;
        Ok(self.factors.iter().fold(one, |acc, p| &acc * p))
    }

    pub fn eval_binary(&self, mask: u64) -> num_bigint::BigInt {
        self.factors.iter().map(|p| p.eval_binary(mask)).product()
    }

    /// A product vanishes where any factor does: sweeps each factor over the
    /// cube and merges the zero sets, dropping repeats.
    pub fn sieve_roots(&self) -> Result<SieveReport> {
        limits().check_atoms(self.nvars as usize)?;
        let mut roots = BTreeSet::new();
        let mut evaluations = 0;
        let mut duplicates = 0;
        for factor in &self.factors {
            for mask in 0..1u64 << self.nvars {
                evaluations += 1;
                if num_traits::Zero::is_zero(&factor.eval_binary(mask))
                    && !roots.insert(mask_to_point(mask, self.nvars))
                {
                    duplicates += 1;
                }
            }
        }
        Ok(SieveReport {
            roots,
            evaluations,
            duplicates,
        })
    }
}

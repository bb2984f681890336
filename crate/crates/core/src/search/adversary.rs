//! Formulas built against a fixed search order.
//!
//! Because a blind order visits rows independently of the formula, the
//! conjunction of literals matching the assignment at position `m` is true
//! there and nowhere else, forcing `L = m`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::One;

use super::SearchOrder;
use crate::error::{Error, Result};
use crate::formula::Formula;

/// True only at the last position of `order`: each atom is required to take
/// the value it is tried with second.
pub fn worst_case_formula(order: &SearchOrder) -> Formula {
    let n = order.num_atoms() as u32;
    Formula::conjunction((1..=n).map(|k| Formula::literal(k, !order.first_value(k))))
}

/// True only at explored position `m`.
pub fn adversary_single_row(order: &SearchOrder, m: u64) -> Result<Formula> {
    let mask = order.explored_mask(m)?;
    let n = order.num_atoms() as u32;
    Ok(Formula::conjunction(
        (1..=n).map(|k| Formula::literal(k, mask >> (k - 1) & 1 == 1)),
    ))
}

/// True exactly at the given explored positions; disjuncts in ascending
/// position order.
pub fn adversary_rows(order: &SearchOrder, rows: &BTreeSet<u64>) -> Result<Formula> {
    if rows.is_empty() {
        return Err(Error::Invalid("adversary needs at least one row".into()));
    }
    let parts = rows
        .iter()
        .map(|&m| adversary_single_row(order, m))
        .collect::<Result<Vec<_>>>()?;
    Ok(Formula::disjunction(parts))
}

/// Number of distinct blind orders on `n` atoms, `n! * 2^n`.
pub fn count_orders(n: u32) -> BigUint {
    let factorial: BigUint = (1..=n)
        .map(BigUint::from)
        .fold(BigUint::one(), |a, b| a * b);
    factorial << n
}

/// Tally of `L` over every truth table on `n` atoms. `None` counts the
/// all-false table.
pub type LDistribution = BTreeMap<Option<u64>, u64>;

pub const MAX_DISTRIBUTION_ATOMS: usize = 4;

/// `L` under `order` for each of the `2^(2^n)` truth tables, `n <= 4`.
pub fn l_distribution(order: &SearchOrder) -> Result<LDistribution> {
    let n = order.num_atoms();
    if n > MAX_DISTRIBUTION_ATOMS {
        return Err(Error::capacity(
            "truth tables to enumerate (atoms)",
            n,
            MAX_DISTRIBUTION_ATOMS,
        ));
    }
    let rows = order.num_rows();
    // Natural row index (first atom most significant) of each explored position.
    let natural: Vec<u64> = (1..=rows)
        .map(|t| {
            let mask = order.explored_mask(t).expect("in range");
            (1..=n as u64).fold(0, |r, k| r << 1 | (mask >> (k - 1) & 1))
        })
        .collect();
    let mut tally = LDistribution::new();
    for table in 0..1u64 << rows {
        let l = natural
            .iter()
            .position(|r| table >> r & 1 == 1)
            .map(|i| i as u64 + 1);
        *tally.entry(l).or_default() += 1;
    }
    Ok(tally)
}

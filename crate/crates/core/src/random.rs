//! Seeded generators for experiments and tests. The same seed always yields
//! the same output.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dnf::{DnfFormula, Literal};
use crate::error::{Error, Result};
use crate::formula::{Connective, Formula};
use crate::limits::limits;

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random formula over `p1..pn` with at most `depth` nested connectives.
pub fn random_formula<R: Rng>(rng: &mut R, n: u32, depth: u32) -> Formula {
    assert!(n >= 1, "need at least one atom");
    if depth == 0 || rng.random_bool(0.25) {
        return match rng.random_range(0..40) {
            0 => Formula::Top,
            1 => Formula::Bottom,
            _ => Formula::atom(rng.random_range(1..=n)),
        };
    }
    if rng.random_bool(0.2) {
        return random_formula(rng, n, depth - 1).not();
    }
    let op = Connective::ALL[rng.random_range(0..Connective::ALL.len())];
    let lhs = random_formula(rng, n, depth - 1);
    let rhs = random_formula(rng, n, depth - 1);
    Formula::binary(op, lhs, rhs)
}

pub fn random_literal<R: Rng>(rng: &mut R, n: u32) -> Literal {
    Literal::new(rng.random_range(1..=n), rng.random_bool(0.5))
}

/// Random DNF over `p1..pn`: `1..=max_disjuncts` disjuncts of
/// `1..=max_len` literals each. Atoms may repeat inside a disjunct, so
/// complementary pairs occur.
pub fn random_dnf<R: Rng>(rng: &mut R, n: u32, max_disjuncts: usize, max_len: usize) -> DnfFormula {
    assert!(n >= 1 && max_disjuncts >= 1 && max_len >= 1);
    let count = rng.random_range(1..=max_disjuncts);
    let disjuncts = (0..count)
        .map(|_| {
            let len = rng.random_range(1..=max_len);
            (0..len).map(|_| random_literal(rng, n)).collect()
        })
        .collect();
    DnfFormula::new(disjuncts).expect("disjuncts are nonempty")
}

/// `size` distinct positions drawn from `1..=2^n`.
pub fn random_row_set<R: Rng>(rng: &mut R, n: u32, size: u64) -> Result<BTreeSet<u64>> {
    limits().check_atoms(n as usize)?;
    let total = 1u64 << n;
    if size > total {
        return Err(Error::out_of_range(
            "row set size",
            size,
            format!("0..={total}"),
        ));
    }
    Ok(sample(rng, total as usize, size as usize)
        .into_iter()
        .map(|i| i as u64 + 1)
        .collect())
}

//! Equivalence, essential atoms and irreducible representatives.
//!
//! A formula is irreducible when no equivalent formula uses fewer atoms. That
//! minimum is the number of essential atoms: the complete DNF over them
//! attains it, and no equivalent formula can drop an atom its truth function
//! depends on. So irreducibility is decided by one sweep of the truth table.

use std::collections::BTreeSet;

use super::{Formula, TruthTable};
use crate::error::Result;

/// True iff both formulas agree on every row over the union of their atoms.
pub fn equivalent(f: &Formula, g: &Formula) -> Result<bool> {
    let atoms: Vec<u32> = f.atoms().union(&g.atoms()).copied().collect();
    let tf = TruthTable::new(f, &atoms)?;
    let tg = TruthTable::new(g, &atoms)?;
    Ok(tf == tg)
}

fn essential_positions(table: &TruthTable) -> Vec<usize> {
    let n = table.num_atoms();
    (0..n)
        .filter(|&j| {
            let bit = 1u64 << (n - 1 - j);
            (0..table.num_rows())
                .filter(|row| row & bit == 0)
                .any(|row| table.at(row) != table.at(row | bit))
        })
        .collect()
}

/// Atoms whose value can change the formula's result.
pub fn essential_atoms(f: &Formula) -> Result<BTreeSet<u32>> {
    let table = TruthTable::of(f)?;
    Ok(essential_positions(&table)
        .into_iter()
        .map(|j| table.atoms()[j])
        .collect())
}

/// Quasi-norm of the equivalence class: the fewest atoms any member uses.
pub fn class_quasinorm(f: &Formula) -> Result<usize> {
    Ok(essential_atoms(f)?.len())
}

pub fn is_irreducible(f: &Formula) -> Result<bool> {
    Ok(f.quasinorm() == class_quasinorm(f)?)
}

/// Canonical irreducible member of `f`'s class: `BOT` or `TOP` for the
/// constant classes, otherwise the complete DNF over the essential atoms with
/// minterms in row order and literals in ascending atom order.
pub fn irreducible_representative(f: &Formula) -> Result<Formula> {
    let table = TruthTable::of(f)?;
    if table.is_tautology() {
        return Ok(Formula::Top);
    }
    if table.is_contradiction() {
        return Ok(Formula::Bottom);
    }
    let n = table.num_atoms();
    let positions = essential_positions(&table);
    let k = positions.len();
    let essential: Vec<u32> = positions.iter().map(|&j| table.atoms()[j]).collect();

    let minterms = (0..1u64 << k).filter_map(|r| {
        // Lift the row over essential atoms to a full row; inessential atoms
        // are held at 0 since they cannot change the result.
        let full = positions
            .iter()
            .enumerate()
            .filter(|(i, _)| (r >> (k - 1 - i)) & 1 == 1)
            .fold(0u64, |acc, (_, &j)| acc | 1 << (n - 1 - j));
        table.at(full).then(|| {
            Formula::conjunction(
                essential
                    .iter()
                    .enumerate()
                    .map(|(i, &a)| Formula::literal(a, (r >> (k - 1 - i)) & 1 == 1)),
            )
        })
    });
    Ok(Formula::disjunction(minterms))
}

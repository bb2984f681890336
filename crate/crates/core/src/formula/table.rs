use std::collections::{BTreeSet, HashMap};

use bitvec::prelude::*;

use super::{Assignment, Formula};
use crate::error::{Error, Result};
use crate::limits::limits;

/// Results of a formula over every assignment of an ordered atom list.
///
/// Row `k` (1-based) gives the `j`-th listed atom the `j`-th most significant
/// bit of `k - 1`, so row 1 is all-false and row `2^n` is all-true.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    atoms: Vec<u32>,
    results: BitVec<u64, Lsb0>,
}

impl TruthTable {
    /// Table over `atoms`, which must contain every atom of `formula`.
    pub fn new(formula: &Formula, atoms: &[u32]) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for &a in atoms {
            if a == 0 {
                return Err(Error::Invalid("atom index 0 in atom list".into()));
            }
            if !seen.insert(a) {
                return Err(Error::Invalid(format!("atom p{a} listed twice")));
            }
        }
        if let Some(missing) = formula.atoms().into_iter().find(|a| !seen.contains(a)) {
            return Err(Error::MissingAtom(missing));
        }
        limits().check_atoms(atoms.len())?;

        let n = atoms.len();
        let position: HashMap<u32, usize> =
            atoms.iter().enumerate().map(|(j, &a)| (a, j)).collect();
        let rows = 1u64 << n;
        let mut results = BitVec::with_capacity(rows as usize);
        for row in 0..rows {
            let value = |a: u32| (row >> (n - 1 - position[&a])) & 1 == 1;
            results.push(formula.eval_with(&value));
        }
        Ok(TruthTable {
            atoms: atoms.to_vec(),
            results,
        })
    }

    /// Table over the formula's own atoms in ascending index order.
    pub fn of(formula: &Formula) -> Result<Self> {
        let atoms: Vec<u32> = formula.atoms().into_iter().collect();
        Self::new(formula, &atoms)
    }

    pub fn atoms(&self) -> &[u32] {
        &self.atoms
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn num_rows(&self) -> u64 {
        self.results.len() as u64
    }

    /// Result in 1-based row `k`.
    pub fn result(&self, k: u64) -> Result<bool> {
        if k == 0 || k > self.num_rows() {
            return Err(Error::out_of_range(
                "row",
                k,
                format!("1..={}", self.num_rows()),
            ));
        }
        Ok(self.results[(k - 1) as usize])
    }

    /// Result by 0-based row index; panics when out of range.
    pub fn at(&self, row: u64) -> bool {
        self.results[row as usize]
    }

    pub fn results(&self) -> impl Iterator<Item = bool> + '_ {
        self.results.iter().by_vals()
    }

    /// Assignment of 1-based row `k`.
    pub fn assignment(&self, k: u64) -> Assignment {
        Assignment::from_row(&self.atoms, k - 1)
    }

    pub fn count_true(&self) -> u64 {
        self.results.count_ones() as u64
    }

    /// 1-based indices of the true rows.
    pub fn true_rows(&self) -> impl Iterator<Item = u64> + '_ {
        self.results.iter_ones().map(|i| i as u64 + 1)
    }

    pub fn is_tautology(&self) -> bool {
        self.results.all()
    }

    pub fn is_contradiction(&self) -> bool {
        self.results.not_any()
    }
}

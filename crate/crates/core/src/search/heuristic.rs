use std::collections::BTreeSet;

use super::{adversary_single_row, SearchOrder};
use crate::error::{Error, Result};
use crate::formula::{Assignment, Formula};

/// Explores a fixed subset of positions of a search order, the same subset
/// for every formula.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeuristicAlgorithm {
    n: u32,
    rows: BTreeSet<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeuristicOutcome {
    Found {
        position: u64,
        assignment: Assignment,
    },
    /// No explored row is true; unexplored rows may still be.
    Miss,
}

impl HeuristicAlgorithm {
    pub fn new(n: u32, rows: BTreeSet<u64>) -> Result<Self> {
        if n as usize > super::MAX_ORDER_ATOMS {
            return Err(Error::capacity(
                "heuristic atoms",
                n,
                super::MAX_ORDER_ATOMS,
            ));
        }
        let total = 1u64 << n;
        if let Some(bad) = rows.iter().find(|&&r| r == 0 || r > total) {
            return Err(Error::out_of_range("row", bad, format!("1..={total}")));
        }
        Ok(HeuristicAlgorithm { n, rows })
    }

    /// Explores positions `1..=count`.
    pub fn first_rows(n: u32, count: u64) -> Result<Self> {
        Self::new(n, (1..=count).collect())
    }

    /// Explores the first `min(n^s, 2^n)` positions.
    pub fn polynomial(n: u32, s: u32) -> Result<Self> {
        let total = 1u64 << n;
        let budget = (n as u64).checked_pow(s).unwrap_or(u64::MAX).min(total);
        Self::first_rows(n, budget)
    }

    pub fn num_atoms(&self) -> u32 {
        self.n
    }

    pub fn rows(&self) -> &BTreeSet<u64> {
        &self.rows
    }

    /// Same heuristic with `row` checked as well.
    pub fn extend(&self, row: u64) -> Result<Self> {
        let mut rows = self.rows.clone();
        rows.insert(row);
        Self::new(self.n, rows)
    }

    fn check_order(&self, order: &SearchOrder) -> Result<()> {
        if order.num_atoms() != self.n as usize {
            return Err(Error::Invalid(format!(
                "heuristic is for {} atoms, order has {}",
                self.n,
                order.num_atoms()
            )));
        }
        Ok(())
    }

    pub fn run(&self, order: &SearchOrder, f: &Formula) -> Result<HeuristicOutcome> {
        self.check_order(order)?;
        if let Some(a) = f.atoms().into_iter().find(|a| *a > self.n) {
            return Err(Error::Invalid(format!(
                "formula uses p{a} but the heuristic covers p1..p{}",
                self.n
            )));
        }
        for &t in &self.rows {
            let mask = order.explored_mask(t)?;
            if f.eval_with(&|a| mask >> (a - 1) & 1 == 1) {
                return Ok(HeuristicOutcome::Found {
                    position: t,
                    assignment: order.explored_assignment(t)?,
                });
            }
        }
        Ok(HeuristicOutcome::Miss)
    }

    /// Smallest position the heuristic never explores.
    pub fn first_unexplored(&self) -> Option<u64> {
        (1..=1u64 << self.n).find(|t| !self.rows.contains(t))
    }

    /// A satisfiable formula true only at an unexplored position, hence
    /// always missed.
    pub fn adversary(&self, order: &SearchOrder) -> Result<Formula> {
        self.check_order(order)?;
        let t = self
            .first_unexplored()
            .ok_or_else(|| Error::Exhausted("heuristic explores every row".into()))?;
        adversary_single_row(order, t)
    }
}

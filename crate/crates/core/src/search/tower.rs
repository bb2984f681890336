//! Blind search preceded by a checklist of known worst cases.
//!
//! Each checklist entry costs one row; a hit answers at once. The `k`-th
//! entry added is the formula true exactly on the last `k + 1` positions of
//! the base order, so after `k` extensions the formula true only at position
//! `2^n - k` slips past every check and still costs `k + (2^n - k)` rows.

use std::collections::BTreeSet;

use super::{adversary_rows, adversary_single_row, SearchOrder};
use crate::error::{Error, Result};
use crate::formula::{equivalent, Formula};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerAlgorithm {
    order: SearchOrder,
    checklist: Vec<Formula>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TowerOutcome {
    pub rows_charged: u64,
    /// Position of the satisfying assignment in the base order.
    pub first_success: Option<u64>,
    /// Index of the checklist entry that matched, if any.
    pub checklist_hit: Option<usize>,
}

impl TowerAlgorithm {
    pub fn new(order: SearchOrder) -> Self {
        TowerAlgorithm {
            order,
            checklist: Vec::new(),
        }
    }

    /// Base order extended `k` times.
    pub fn with_size(order: SearchOrder, k: usize) -> Result<Self> {
        (0..k).try_fold(TowerAlgorithm::new(order), |tw, _| tw.extend())
    }

    pub fn order(&self) -> &SearchOrder {
        &self.order
    }

    pub fn checklist(&self) -> &[Formula] {
        &self.checklist
    }

    pub fn size(&self) -> usize {
        self.checklist.len()
    }

    /// Adds the formula true exactly from position `2^n - k` onward.
    pub fn extend(&self) -> Result<Self> {
        let total = self.order.num_rows();
        let k = self.checklist.len() as u64;
        if k + 1 >= total {
            return Err(Error::Exhausted(format!(
                "tower already checks {k} of {total} suffixes"
            )));
        }
        let rows: BTreeSet<u64> = (total - k..=total).collect();
        let mut next = self.clone();
        next.checklist.push(adversary_rows(&self.order, &rows)?);
        Ok(next)
    }

    /// The formula that defeats this tower: true only at position `2^n - k`.
    pub fn next_adversary(&self) -> Result<Formula> {
        let total = self.order.num_rows();
        let k = self.checklist.len() as u64;
        if k >= total {
            return Err(Error::Exhausted(
                "no position left below the checklist".into(),
            ));
        }
        adversary_single_row(&self.order, total - k)
    }

    pub fn run(&self, f: &Formula) -> Result<TowerOutcome> {
        let total = self.order.num_rows();
        for (i, known) in self.checklist.iter().enumerate() {
            if equivalent(known, f)? {
                return Ok(TowerOutcome {
                    rows_charged: i as u64 + 1,
                    first_success: Some(total - i as u64),
                    checklist_hit: Some(i),
                });
            }
        }
        let trace = self.order.run(f)?;
        Ok(TowerOutcome {
            rows_charged: self.checklist.len() as u64 + trace.explored(),
            first_success: trace.first_success(),
            checklist_hit: None,
        })
    }
}

//! Blind sequential search over truth tables.
//!
//! A [`SearchOrder`] fixes, independently of any formula, the order in which
//! the `2^n` assignments are visited: a permutation of the atoms (outermost
//! first, as in a depth-first walk of the binary tree) and, per atom, which
//! truth value is tried first. The `L` statistic of a run is the 1-based
//! position of the first satisfying assignment.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::formula::{Assignment, Formula};
use crate::limits::limits;

mod adversary;
mod heuristic;
mod tower;

pub use adversary::{
    adversary_rows, adversary_single_row, count_orders, l_distribution, worst_case_formula,
    LDistribution,
};
pub use heuristic::{HeuristicAlgorithm, HeuristicOutcome};
pub use tower::{TowerAlgorithm, TowerOutcome};

/// Row positions are `u64`, so `2^n` must fit.
pub const MAX_ORDER_ATOMS: usize = 63;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SearchOrder {
    /// `sigma[r]` is the atom decided at depth `r`.
    sigma: Vec<u32>,
    /// `first[k - 1]` is the value atom `p_k` takes first.
    first: Vec<bool>,
}

impl SearchOrder {
    pub fn new(sigma: Vec<u32>, first: Vec<bool>) -> Result<Self> {
        let n = sigma.len();
        if n > MAX_ORDER_ATOMS {
            return Err(Error::capacity("search order atoms", n, MAX_ORDER_ATOMS));
        }
        if first.len() != n {
            return Err(Error::Invalid(format!(
                "permutation has {n} atoms but {} first values given",
                first.len()
            )));
        }
        let mut seen = vec![false; n];
        for &a in &sigma {
            let slot = (a as usize)
                .checked_sub(1)
                .filter(|i| *i < n)
                .ok_or_else(|| Error::Invalid(format!("p{a} is not one of p1..p{n}")))?;
            if std::mem::replace(&mut seen[slot], true) {
                return Err(Error::Invalid(format!("p{a} appears twice in permutation")));
            }
        }
        Ok(SearchOrder { sigma, first })
    }

    /// Identity permutation, every atom tried at 0 first.
    pub fn natural(n: u32) -> Self {
        SearchOrder::new((1..=n).collect(), vec![false; n as usize]).expect("valid order")
    }

    /// All `n! * 2^n` orders; first values follow the binary digits of
    /// `j = d_1 d_2 ... d_n`.
    pub fn all(n: u32) -> impl Iterator<Item = SearchOrder> {
        let nn = n as usize;
        (1..=n)
            .permutations(nn)
            .cartesian_product(0..1u64 << n)
            .map(move |(sigma, j)| {
                let first = (0..nn).map(|k| (j >> (nn - 1 - k)) & 1 == 1).collect();
                SearchOrder { sigma, first }
            })
    }

    pub fn num_atoms(&self) -> usize {
        self.sigma.len()
    }

    pub fn num_rows(&self) -> u64 {
        1u64 << self.sigma.len()
    }

    pub fn permutation(&self) -> &[u32] {
        &self.sigma
    }

    pub fn first_values(&self) -> &[bool] {
        &self.first
    }

    /// First value of atom `p_k`.
    pub fn first_value(&self, k: u32) -> bool {
        self.first[(k - 1) as usize]
    }

    fn check_position(&self, t: u64) -> Result<()> {
        if t == 0 || t > self.num_rows() {
            Err(Error::out_of_range(
                "explored position",
                t,
                format!("1..={}", self.num_rows()),
            ))
        } else {
            Ok(())
        }
    }

    /// Assignment visited at position `t` as a mask, bit `k - 1` for `p_k`.
    ///
    /// The bits `c_1..c_n` of `t - 1` (most significant first) drive the atoms
    /// in permutation order: the atom at depth `r` takes its first value
    /// XOR `c_r`.
    pub fn explored_mask(&self, t: u64) -> Result<u64> {
        self.check_position(t)?;
        let n = self.sigma.len();
        let c = t - 1;
        Ok(self
            .sigma
            .iter()
            .enumerate()
            .fold(0u64, |mask, (r, &atom)| {
                let flip = (c >> (n - 1 - r)) & 1 == 1;
                if self.first_value(atom) ^ flip {
                    mask | 1 << (atom - 1)
                } else {
                    mask
                }
            }))
    }

    pub fn explored_assignment(&self, t: u64) -> Result<Assignment> {
        let mask = self.explored_mask(t)?;
        Ok(mask_assignment(mask, self.sigma.len()))
    }

    fn check_formula(&self, f: &Formula) -> Result<()> {
        let n = self.sigma.len() as u32;
        match f.atoms().into_iter().find(|a| *a > n) {
            Some(a) => Err(Error::Invalid(format!(
                "formula uses p{a} but the order covers p1..p{n}"
            ))),
            None => Ok(()),
        }
    }

    /// Evaluates `f` along the order, stopping at the first success.
    pub fn run(&self, f: &Formula) -> Result<SearchTrace> {
        self.check_formula(f)?;
        limits().check_atoms(self.num_atoms())?;
        let mut results = Vec::new();
        let mut first_success = None;
        for t in 1..=self.num_rows() {
            let mask = self.explored_mask(t)?;
            let value = f.eval_with(&|a| mask >> (a - 1) & 1 == 1);
            results.push(value);
            if value {
                first_success = Some(t);
                break;
            }
        }
        Ok(SearchTrace {
            order: self.clone(),
            results,
            first_success,
        })
    }
}

pub(crate) fn mask_assignment(mask: u64, n: usize) -> Assignment {
    (1..=n as u32)
        .map(|k| (k, mask >> (k - 1) & 1 == 1))
        .collect()
}

/// `sigma=3,1,2;d=101` with `d` in atom-index order.
impl fmt::Display for SearchOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d: String = self
            .first
            .iter()
            .map(|b| if *b { '1' } else { '0' })
            .collect();
        write!(f, "sigma={};d={d}", self.sigma.iter().join(","))
    }
}

impl FromStr for SearchOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Invalid(format!("expected sigma=<perm>;d=<bits>, got {s:?}"));
        let (sigma_part, d_part) = s.trim().split_once(';').ok_or_else(bad)?;
        let sigma_text = sigma_part.trim().strip_prefix("sigma=").ok_or_else(bad)?;
        let d_text = d_part.trim().strip_prefix("d=").ok_or_else(bad)?;
        let sigma = sigma_text
            .split(',')
            .map(str::trim)
            .filter(|x| !x.is_empty())
            .map(|x| x.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let first = d_text
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(bad()),
            })
            .collect::<Result<Vec<_>>>()?;
        SearchOrder::new(sigma, first)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchTrace {
    order: SearchOrder,
    results: Vec<bool>,
    first_success: Option<u64>,
}

impl SearchTrace {
    pub fn order(&self) -> &SearchOrder {
        &self.order
    }

    /// `L`: position of the first satisfying assignment, `None` when the
    /// whole table is false.
    pub fn first_success(&self) -> Option<u64> {
        self.first_success
    }

    /// Rows evaluated.
    pub fn explored(&self) -> u64 {
        self.results.len() as u64
    }

    /// `(t, assignment, result)` for each explored row.
    pub fn steps(&self) -> impl Iterator<Item = (u64, Assignment, bool)> + '_ {
        self.results.iter().enumerate().map(|(i, r)| {
            let t = i as u64 + 1;
            let a = self
                .order
                .explored_assignment(t)
                .expect("explored row in range");
            (t, a, *r)
        })
    }

    pub fn found(&self) -> Option<Assignment> {
        self.first_success
            .map(|t| self.order.explored_assignment(t).expect("in range"))
    }
}

/// True when the order visits each of the `2^n` assignments exactly once.
pub fn visits_every_assignment(order: &SearchOrder) -> bool {
    let seen: BTreeSet<u64> = (1..=order.num_rows())
        .filter_map(|t| order.explored_mask(t).ok())
        .collect();
    seen.len() as u64 == order.num_rows()
}

//! Propositional-logic workbench: formulas and truth tables, arithmetization
//! into multilinear integer polynomials, blind sequential truth-table search
//! with adversarial formula constructions, CNF to DNF distribution, and an
//! exact census of equivalence classes.
//!
//! Every exponential sweep is guarded by the caps in [`limits`].

pub mod arith;
pub mod census;
pub mod dnf;
pub mod error;
pub mod formula;
pub mod limits;
pub mod random;
pub mod search;

pub use arith::{FactoredPoly, MultilinearPoly, SolveResult};
pub use census::{ExactRatio, PolyRatio};
pub use dnf::{Clause, CnfFormula, DnfFormula, Literal, Satisfiability};
pub use error::{Error, Result};
pub use formula::{parse, Assignment, Connective, Formula, TruthTable};
pub use limits::{limits, Limits};
pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
pub use search::{HeuristicAlgorithm, SearchOrder, SearchTrace, TowerAlgorithm};

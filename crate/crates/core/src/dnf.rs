//! CNF to DNF by distribution, and satisfiability read straight off a DNF.
//!
//! Distribution picks one literal from every clause, so a CNF with clause
//! sizes `m_1..m_k` yields exactly `m_1 * ... * m_k` disjuncts of `k`
//! literals each. Nothing is simplified: the raw count is the quantity of
//! interest.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::One;
use rand::seq::index::sample;
use rand::Rng;

use crate::error::{Error, Result};
use crate::formula::{Assignment, Formula, TruthTable};
use crate::limits::limits;
use crate::random::seeded;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub atom: u32,
    pub positive: bool,
}

impl Literal {
    pub fn new(atom: u32, positive: bool) -> Self {
        assert!(atom >= 1, "atoms are numbered from 1");
        Literal { atom, positive }
    }

    /// DIMACS convention: `3` is `p3`, `-3` is `~p3`.
    pub fn from_dimacs(value: i64) -> Result<Self> {
        let atom = u32::try_from(value.unsigned_abs())
            .ok()
            .filter(|a| *a >= 1)
            .ok_or_else(|| Error::Invalid(format!("{value} is not a literal")))?;
        Ok(Literal::new(atom, value > 0))
    }

    pub fn to_dimacs(self) -> i64 {
        if self.positive {
            self.atom as i64
        } else {
            -(self.atom as i64)
        }
    }

    pub fn negate(self) -> Self {
        Literal::new(self.atom, !self.positive)
    }

    pub fn holds(self, assignment: &Assignment) -> Option<bool> {
        assignment.get(self.atom).map(|v| v == self.positive)
    }

    pub fn to_formula(self) -> Formula {
        Formula::literal(self.atom, self.positive)
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "p{}", self.atom)
        } else {
            write!(f, "~p{}", self.atom)
        }
    }
}

fn write_group(f: &mut fmt::Formatter<'_>, lits: &[Literal], sep: &str) -> fmt::Result {
    if lits.len() == 1 {
        write!(f, "{}", lits[0])
    } else {
        write!(f, "({})", lits.iter().join(sep))
    }
}

/// A disjunction of literals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause(Vec<Literal>);

impl Clause {
    pub fn new(literals: Vec<Literal>) -> Result<Self> {
        if literals.is_empty() {
            return Err(Error::Invalid("empty clause".into()));
        }
        let mut seen = BTreeSet::new();
        if let Some(dup) = literals.iter().find(|l| !seen.insert(**l)) {
            return Err(Error::Invalid(format!("literal {dup} repeated in clause")));
        }
        Ok(Clause(literals))
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_formula(&self) -> Formula {
        Formula::disjunction(self.0.iter().map(|l| l.to_formula()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    clauses: Vec<Clause>,
}

impl CnfFormula {
    pub fn new(clauses: Vec<Clause>) -> Result<Self> {
        if clauses.is_empty() {
            return Err(Error::Invalid("a CNF needs at least one clause".into()));
        }
        Ok(CnfFormula { clauses })
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn max_atom(&self) -> u32 {
        self.literals().map(|l| l.atom).max().unwrap_or(0)
    }

    fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.clauses.iter().flat_map(|c| c.0.iter())
    }

    pub fn to_formula(&self) -> Formula {
        Formula::conjunction(self.clauses.iter().map(Clause::to_formula))
    }

    /// Number of disjuncts distribution produces: the product of clause sizes.
    pub fn disjunct_count(&self) -> BigUint {
        self.clauses
            .iter()
            .fold(BigUint::one(), |acc, c| acc * BigUint::from(c.len()))
    }

    /// Parses DIMACS CNF: `c` comment lines, a `p cnf <atoms> <clauses>`
    /// header, then 0-terminated clauses of signed integers.
    pub fn parse_dimacs(text: &str) -> Result<Self> {
        let mut header: Option<(u32, usize)> = None;
        let mut clauses = Vec::new();
        let mut current = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') {
                continue;
            }
            if line.starts_with('%') {
                break;
            }
            if line.starts_with('p') {
                if header.is_some() {
                    return Err(dimacs_error(lineno, "second header"));
                }
                let fields: Vec<&str> = line.split_whitespace().collect();
                let parsed = match fields.as_slice() {
                    ["p", "cnf", n, k] => n.parse().ok().zip(k.parse().ok()),
                    _ => None,
                };
                header =
                    Some(parsed.ok_or_else(|| {
                        dimacs_error(lineno, "expected `p cnf <atoms> <clauses>`")
                    })?);
                continue;
            }
            let (n, _) = header.ok_or_else(|| dimacs_error(lineno, "clause before header"))?;
            for token in line.split_whitespace() {
                let value: i64 = token
                    .parse()
                    .map_err(|_| dimacs_error(lineno, &format!("bad literal {token:?}")))?;
                if value == 0 {
                    let lits = std::mem::take(&mut current);
                    clauses
                        .push(Clause::new(lits).map_err(|e| dimacs_error(lineno, &e.to_string()))?);
                    continue;
                }
                let lit = Literal::from_dimacs(value)?;
                if lit.atom > n {
                    return Err(dimacs_error(
                        lineno,
                        &format!("atom {} exceeds header count {n}", lit.atom),
                    ));
                }
                current.push(lit);
            }
        }
        let (_, k) = header.ok_or_else(|| dimacs_error(0, "missing `p cnf` header"))?;
        if !current.is_empty() {
            clauses.push(Clause::new(current)?);
        }
        if clauses.len() != k {
            return Err(Error::Invalid(format!(
                "DIMACS header promises {k} clauses, found {}",
                clauses.len()
            )));
        }
        CnfFormula::new(clauses)
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.max_atom(), self.clauses.len());
        for c in &self.clauses {
            for l in &c.0 {
                out.push_str(&format!("{} ", l.to_dimacs()));
            }
            out.push_str("0\n");
        }
        out
    }
}

fn dimacs_error(line: usize, msg: &str) -> Error {
    Error::Invalid(format!("DIMACS line {line}: {msg}"))
}

/// Formula-grammar text, e.g. `(p1 | ~p2) & p3`.
impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(" & ")?;
            }
            write_group(f, &c.0, " | ")?;
        }
        Ok(())
    }
}

/// A disjunction of conjunctions of literals. No disjuncts means `BOT`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DnfFormula {
    disjuncts: Vec<Vec<Literal>>,
}

impl DnfFormula {
    pub fn new(disjuncts: Vec<Vec<Literal>>) -> Result<Self> {
        if let Some(i) = disjuncts.iter().position(Vec::is_empty) {
            return Err(Error::Invalid(format!("disjunct {} is empty", i + 1)));
        }
        Ok(DnfFormula { disjuncts })
    }

    pub fn disjuncts(&self) -> &[Vec<Literal>] {
        &self.disjuncts
    }

    pub fn len(&self) -> usize {
        self.disjuncts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disjuncts.is_empty()
    }

    pub fn max_atom(&self) -> u32 {
        self.disjuncts
            .iter()
            .flatten()
            .map(|l| l.atom)
            .max()
            .unwrap_or(0)
    }

    pub fn to_formula(&self) -> Formula {
        Formula::disjunction(
            self.disjuncts
                .iter()
                .map(|d| Formula::conjunction(d.iter().map(|l| l.to_formula()))),
        )
    }
}

/// Formula-grammar text, e.g. `(p1 & p2) | ~p3`.
impl fmt::Display for DnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.disjuncts.is_empty() {
            return f.write_str("BOT");
        }
        for (i, d) in self.disjuncts.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write_group(f, d, " & ")?;
        }
        Ok(())
    }
}

/// Lazily yields the disjuncts of the distribution of a CNF, odometer
/// style: the last clause varies fastest.
#[derive(Debug, Clone)]
pub struct Disjuncts<'a> {
    cnf: &'a CnfFormula,
    digits: Option<Vec<usize>>,
}

impl Iterator for Disjuncts<'_> {
    type Item = Vec<Literal>;

    fn next(&mut self) -> Option<Vec<Literal>> {
        let digits = self.digits.as_mut()?;
        let item = digits
            .iter()
            .zip(&self.cnf.clauses)
            .map(|(&d, c)| c.0[d])
            .collect();
        let mut advanced = false;
        for (d, c) in digits.iter_mut().zip(&self.cnf.clauses).rev() {
            *d += 1;
            if *d < c.len() {
                advanced = true;
                break;
            }
            *d = 0;
        }
        if !advanced {
            self.digits = None;
        }
        Some(item)
    }
}

pub fn disjuncts(cnf: &CnfFormula) -> Disjuncts<'_> {
    Disjuncts {
        cnf,
        digits: Some(vec![0; cnf.clauses.len()]),
    }
}

/// Full distribution, refused when the disjunct count exceeds the cap.
pub fn distribute(cnf: &CnfFormula) -> Result<DnfFormula> {
    let count = cnf.disjunct_count();
    let cap = limits().max_disjuncts;
    if count > BigUint::from(cap) {
        return Err(Error::capacity("disjunct count", count, cap));
    }
    DnfFormula::new(disjuncts(cnf).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Satisfiability {
    /// `disjunct` is the 0-based index of the first disjunct without a
    /// complementary pair.
    Satisfiable {
        disjunct: usize,
        assignment: Assignment,
    },
    Unsatisfiable,
}

fn has_complementary_pair(disjunct: &[Literal]) -> bool {
    let mut seen = BTreeSet::new();
    disjunct.iter().any(|l| {
        seen.insert(*l);
        seen.contains(&l.negate())
    })
}

/// Scans disjuncts left to right; the first one free of complementary pairs
/// is made true by setting its literals, every other atom of `p1..pn` set
/// to 0.
pub fn dnf_satisfying_assignment(f: &DnfFormula) -> Satisfiability {
    match f.disjuncts.iter().position(|d| !has_complementary_pair(d)) {
        None => Satisfiability::Unsatisfiable,
        Some(i) => {
            let mut assignment: Assignment = (1..=f.max_atom()).map(|a| (a, false)).collect();
            for l in &f.disjuncts[i] {
                assignment.set(l.atom, l.positive);
            }
            Satisfiability::Satisfiable {
                disjunct: i,
                assignment,
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classification {
    Tautology,
    Contradiction,
    Contingency,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::Tautology => "tautology",
            Classification::Contradiction => "contradiction",
            Classification::Contingency => "contingency",
        })
    }
}

/// Truth-table sweep over `p1..pn`.
pub fn classify(f: &DnfFormula) -> Result<Classification> {
    let atoms: Vec<u32> = (1..=f.max_atom()).collect();
    let table = TruthTable::new(&f.to_formula(), &atoms)?;
    Ok(if table.is_tautology() {
        Classification::Tautology
    } else if table.is_contradiction() {
        Classification::Contradiction
    } else {
        Classification::Contingency
    })
}

/// `k` clauses of `m` distinct atoms drawn from `p1..pn`, random signs.
pub fn blowup_instance(n: u32, k: usize, m: usize, seed: u64) -> Result<CnfFormula> {
    if m == 0 || m > n as usize {
        return Err(Error::out_of_range(
            "literals per clause",
            m,
            format!("1..={n}"),
        ));
    }
    if k == 0 {
        return Err(Error::Invalid("a CNF needs at least one clause".into()));
    }
    let mut rng = seeded(seed);
    let clauses = (0..k)
        .map(|_| {
            let mut atoms: Vec<u32> = sample(&mut rng, n as usize, m)
                .into_iter()
                .map(|i| i as u32 + 1)
                .collect();
            atoms.sort_unstable();
            let lits = atoms
                .into_iter()
                .map(|a| Literal::new(a, rng.random_bool(0.5)))
                .collect();
            Clause::new(lits)
        })
        .collect::<Result<Vec<_>>>()?;
    CnfFormula::new(clauses)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{equivalent, parse};

    fn lit(v: i64) -> Literal {
        Literal::from_dimacs(v).unwrap()
    }

    fn dnf(groups: &[&[i64]]) -> DnfFormula {
        DnfFormula::new(
            groups
                .iter()
                .map(|g| g.iter().map(|&v| lit(v)).collect())
                .collect(),
        )
        .unwrap()
    }

    fn example_a_cnf() -> CnfFormula {
        CnfFormula::parse_dimacs("c example A\np cnf 3 4\n1 2 3 0\n-1 -2 0\n-1 -3 0\n-2 -3 0\n")
            .unwrap()
    }

    #[test]
    fn counts() {
        let three = blowup_instance(3, 3, 3, 0).unwrap();
        assert_eq!(three.clauses().len(), 3);
        assert!(three.clauses().iter().all(|c| c.len() == 3));
        assert_eq!(distribute(&three).unwrap().len(), 27);
        assert_eq!(
            distribute(&blowup_instance(5, 5, 4, 9).unwrap())
                .unwrap()
                .len(),
            1024
        );
        assert_eq!(
            distribute(&blowup_instance(4, 4, 4, 2).unwrap())
                .unwrap()
                .len(),
            256
        );
        let unit = blowup_instance(4, 1, 1, 5).unwrap();
        assert_eq!(unit.clauses().len(), 1);
        assert_eq!(unit.clauses()[0].len(), 1);
        assert!(blowup_instance(3, 2, 4, 0).is_err());
        assert!(blowup_instance(3, 0, 1, 0).is_err());
    }

    #[test]
    fn single_clause() {
        let cnf = CnfFormula::new(vec![Clause::new(vec![lit(1), lit(2)]).unwrap()]).unwrap();
        let d = distribute(&cnf).unwrap();
        assert_eq!(d, dnf(&[&[1], &[2]]));
        assert_eq!(d.to_string(), "p1 | p2");
    }

    #[test]
    fn distribution_shape_and_equivalence() {
        let cnf = example_a_cnf();
        assert_eq!(cnf.disjunct_count(), BigUint::from(24u32));
        let d = distribute(&cnf).unwrap();
        assert_eq!(d.len(), 24);
        assert!(d.disjuncts().iter().all(|x| x.len() == 4));
        assert_eq!(d.disjuncts()[0], vec![lit(1), lit(-1), lit(-1), lit(-2)]);
        let a = parse("(p1 | p2 | p3) & ~(p1 & p2) & ~(p1 & p3) & ~(p2 & p3)").unwrap();
        assert!(equivalent(&d.to_formula(), &a).unwrap());
        assert!(equivalent(&cnf.to_formula(), &a).unwrap());
        assert_eq!(parse(&d.to_string()).unwrap(), d.to_formula());
        assert_eq!(parse(&cnf.to_string()).unwrap(), cnf.to_formula());
    }

    #[test]
    fn satisfying_assignment() {
        let f = dnf(&[&[1, -1], &[2, 3]]);
        match dnf_satisfying_assignment(&f) {
            Satisfiability::Satisfiable {
                disjunct,
                assignment,
            } => {
                assert_eq!(disjunct, 1);
                assert_eq!(assignment.to_string(), "p1=0,p2=1,p3=1");
            }
            Satisfiability::Unsatisfiable => panic!(),
        }
        let none = dnf(&[&[1, -1], &[2, -2, 3]]);
        assert_eq!(
            dnf_satisfying_assignment(&none),
            Satisfiability::Unsatisfiable
        );

        let a = parse("(p1 | p2 | p3) & ~(p1 & p2) & ~(p1 & p3) & ~(p2 & p3)").unwrap();
        match dnf_satisfying_assignment(&distribute(&example_a_cnf()).unwrap()) {
            Satisfiability::Satisfiable { assignment, .. } => {
                assert!(a.evaluate(&assignment).unwrap())
            }
            Satisfiability::Unsatisfiable => panic!(),
        }
    }

    #[test]
    fn classification() {
        assert_eq!(
            classify(&dnf(&[&[1], &[-1]])).unwrap(),
            Classification::Tautology
        );
        assert_eq!(
            classify(&dnf(&[&[1, -1]])).unwrap(),
            Classification::Contradiction
        );
        assert_eq!(
            classify(&dnf(&[&[1, 2]])).unwrap(),
            Classification::Contingency
        );
        assert_eq!(
            classify(&DnfFormula::new(vec![]).unwrap()).unwrap(),
            Classification::Contradiction
        );
    }

    #[test]
    fn dimacs_round_trip_and_errors() {
        let cnf = example_a_cnf();
        assert_eq!(CnfFormula::parse_dimacs(&cnf.to_dimacs()).unwrap(), cnf);
        let spread = CnfFormula::parse_dimacs("p cnf 2 2\n1\n-2 0 2 0\n").unwrap();
        assert_eq!(spread.to_string(), "(p1 | ~p2) & p2");
        for bad in [
            "1 2 0\n",
            "p cnf 2 1\n1 3 0\n",
            "p cnf 2 2\n1 0\n",
            "p cnf 2 1\n1 1 0\n",
            "p cnf 2 1\n0\n",
            "p cnf x 1\n1 0\n",
            "p cnf 2 1\n1 a 0\n",
        ] {
            assert!(CnfFormula::parse_dimacs(bad).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn lazy_iterator_matches_count() {
        let cnf = blowup_instance(6, 4, 3, 1).unwrap();
        assert_eq!(disjuncts(&cnf).count(), 81);
        let all: Vec<_> = disjuncts(&cnf).collect();
        assert_eq!(all.iter().collect::<BTreeSet<_>>().len(), 81);
    }

    #[test]
    fn capacity_refusal() {
        let big = blowup_instance(30, 30, 2, 0).unwrap();
        assert_eq!(big.disjunct_count(), BigUint::from(1u64 << 30));
        assert!(matches!(distribute(&big), Err(Error::Capacity { .. })));
        assert_eq!(disjuncts(&big).take(3).count(), 3);
    }
}

//! Propositional formulas over indexed atoms `p1, p2, ...` plus the two
//! zero-letter constants `TOP` and `BOT`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

mod analysis;
mod parse;
mod table;

pub use analysis::{
    class_quasinorm, equivalent, essential_atoms, irreducible_representative, is_irreducible,
};
pub use parse::parse;
pub use table::TruthTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Connective {
    And,
    Or,
    Implies,
    Iff,
}

impl Connective {
    pub const ALL: [Connective; 4] = [
        Connective::And,
        Connective::Or,
        Connective::Implies,
        Connective::Iff,
    ];

    pub fn apply(self, a: bool, b: bool) -> bool {
        match self {
            Connective::And => a && b,
            Connective::Or => a || b,
            Connective::Implies => !a || b,
            Connective::Iff => a == b,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Connective::And => "&",
            Connective::Or => "|",
            Connective::Implies => "->",
            Connective::Iff => "<->",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    /// Propositional letter `p<k>`, `k >= 1`.
    Atom(u32),
    Top,
    Bottom,
    Not(Box<Formula>),
    Binary(Connective, Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(index: u32) -> Formula {
        assert!(index >= 1, "atom indices start at 1");
        Formula::Atom(index)
    }

    /// `p<index>` when `positive`, `~p<index>` otherwise.
    pub fn literal(index: u32, positive: bool) -> Formula {
        let a = Formula::atom(index);
        if positive {
            a
        } else {
            a.not()
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }

    pub fn binary(op: Connective, lhs: Formula, rhs: Formula) -> Formula {
        Formula::Binary(op, Box::new(lhs), Box::new(rhs))
    }

    pub fn and(self, rhs: Formula) -> Formula {
        Formula::binary(Connective::And, self, rhs)
    }

    pub fn or(self, rhs: Formula) -> Formula {
        Formula::binary(Connective::Or, self, rhs)
    }

    pub fn implies(self, rhs: Formula) -> Formula {
        Formula::binary(Connective::Implies, self, rhs)
    }

    pub fn iff(self, rhs: Formula) -> Formula {
        Formula::binary(Connective::Iff, self, rhs)
    }

    /// Left-nested conjunction; `TOP` when empty.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `BOT` when empty.
    pub fn disjunction<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        parts
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bottom)
    }

    pub fn atoms(&self) -> BTreeSet<u32> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<u32>) {
        match self {
            Formula::Atom(i) => {
                out.insert(*i);
            }
            Formula::Top | Formula::Bottom => {}
            Formula::Not(inner) => inner.collect_atoms(out),
            Formula::Binary(_, l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Largest atom index present, 0 for constant formulas.
    pub fn max_atom(&self) -> u32 {
        self.atoms().last().copied().unwrap_or(0)
    }

    /// Number of distinct atoms occurring syntactically.
    pub fn quasinorm(&self) -> usize {
        self.atoms().len()
    }

    pub fn evaluate(&self, assignment: &Assignment) -> Result<bool> {
        if let Some(missing) = self
            .atoms()
            .into_iter()
            .find(|a| assignment.get(*a).is_none())
        {
            return Err(Error::MissingAtom(missing));
        }
        Ok(self.eval_with(&|a| assignment.get(a).unwrap_or(false)))
    }

    /// Evaluates with a caller-supplied valuation. The valuation must answer
    /// for every atom of the formula.
    pub fn eval_with<V: Fn(u32) -> bool>(&self, value: &V) -> bool {
        match self {
            Formula::Atom(i) => value(*i),
            Formula::Top => true,
            Formula::Bottom => false,
            Formula::Not(inner) => !inner.eval_with(value),
            Formula::Binary(op, l, r) => op.apply(l.eval_with(value), r.eval_with(value)),
        }
    }

    /// Top-level conjuncts of a left- or right-nested `&` chain.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            match f {
                Formula::Binary(Connective::And, l, r) => {
                    stack.push(r);
                    stack.push(l);
                }
                other => out.push(other),
            }
        }
        out
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(i) => write!(f, "p{i}"),
            Formula::Top => f.write_str("TOP"),
            Formula::Bottom => f.write_str("BOT"),
            Formula::Not(inner) => write!(f, "~{inner}"),
            Formula::Binary(op, l, r) => write!(f, "({l} {} {r})", op.symbol()),
        }
    }
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}

/// Truth values for a set of atoms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment(BTreeMap<u32, bool>);

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn get(&self, atom: u32) -> Option<bool> {
        self.0.get(&atom).copied()
    }

    pub fn set(&mut self, atom: u32, value: bool) {
        self.0.insert(atom, value);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, bool)> + '_ {
        self.0.iter().map(|(a, v)| (*a, *v))
    }

    /// Values as a `0`/`1` string in ascending atom order.
    pub fn bit_string(&self) -> String {
        self.0
            .values()
            .map(|v| if *v { '1' } else { '0' })
            .collect()
    }

    /// Assigns `atoms[j]` the `j`-th most significant of `n` bits of `row`.
    pub fn from_row(atoms: &[u32], row: u64) -> Self {
        let n = atoms.len();
        atoms
            .iter()
            .enumerate()
            .map(|(j, &a)| (a, (row >> (n - 1 - j)) & 1 == 1))
            .collect()
    }
}

impl FromIterator<(u32, bool)> for Assignment {
    fn from_iter<T: IntoIterator<Item = (u32, bool)>>(iter: T) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (a, v) in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "p{a}={}", v as u8)?;
        }
        Ok(())
    }
}

/// Parses `p1=1,p2=0`. The empty string is the empty assignment.
impl FromStr for Assignment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut out = Assignment::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Invalid(format!("expected p<k>=<0|1>, got {part:?}")))?;
            let index = name
                .trim()
                .strip_prefix('p')
                .and_then(|k| k.parse::<u32>().ok())
                .filter(|k| *k >= 1)
                .ok_or_else(|| Error::Invalid(format!("bad atom name {name:?}")))?;
            let value = match value.trim() {
                "0" => false,
                "1" => true,
                other => return Err(Error::Invalid(format!("bad truth value {other:?}"))),
            };
            out.set(index, value);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example_a() -> Formula {
        parse("(p1 | p2 | p3) & ~(p1 & p2) & ~(p1 & p3) & ~(p2 & p3)").unwrap()
    }

    fn assign(bits: &[(u32, bool)]) -> Assignment {
        bits.iter().copied().collect()
    }

    #[test]
    fn evaluate_constants_and_example() {
        assert!(Formula::Top.evaluate(&Assignment::new()).unwrap());
        assert!(!Formula::Bottom.evaluate(&Assignment::new()).unwrap());
        let a = example_a();
        assert!(a
            .evaluate(&assign(&[(1, true), (2, false), (3, false)]))
            .unwrap());
        assert!(!a
            .evaluate(&assign(&[(1, true), (2, true), (3, false)]))
            .unwrap());
    }

    #[test]
    fn evaluate_reports_missing_atom() {
        let f = parse("p1 & p4").unwrap();
        assert_eq!(
            f.evaluate(&assign(&[(1, true)])),
            Err(Error::MissingAtom(4))
        );
    }

    #[test]
    fn quasinorm_counts_syntactic_atoms() {
        assert_eq!(Formula::Bottom.quasinorm(), 0);
        assert_eq!(parse("p1 & ~p2").unwrap().quasinorm(), 2);
        assert_eq!(parse("p1 | (p1 & p2)").unwrap().quasinorm(), 2);
        assert_eq!(parse("TOP -> BOT").unwrap().quasinorm(), 0);
    }

    #[test]
    fn printer_is_fully_parenthesized() {
        let f = parse("p1 & ~p2 | ~(p3 -> TOP)").unwrap();
        assert_eq!(f.to_string(), "((p1 & ~p2) | ~(p3 -> TOP))");
    }

    #[test]
    fn conjuncts_flatten_and_chains() {
        let a = example_a();
        let parts = a.conjuncts();
        assert_eq!(parts.len(), 4);
        assert_eq!(parts[0].to_string(), "((p1 | p2) | p3)");
        assert_eq!(parts[3].to_string(), "~(p2 & p3)");
        assert_eq!(Formula::atom(1).conjuncts().len(), 1);
    }

    #[test]
    fn assignment_text_round_trip() {
        let a: Assignment = "p1=1, p2=0,p10=1".parse().unwrap();
        assert_eq!(a.get(10), Some(true));
        assert_eq!(a.to_string(), "p1=1,p2=0,p10=1");
        assert_eq!(a.bit_string(), "101");
        assert!("".parse::<Assignment>().unwrap().is_empty());
        assert!("p0=1".parse::<Assignment>().is_err());
        assert!("p1=2".parse::<Assignment>().is_err());
    }

    #[test]
    fn from_row_uses_msb_first() {
        let a = Assignment::from_row(&[1, 2, 3], 0b011);
        assert_eq!(a.bit_string(), "011");
        let b = Assignment::from_row(&[3, 1], 0b10);
        assert_eq!(b.get(3), Some(true));
        assert_eq!(b.get(1), Some(false));
    }
}

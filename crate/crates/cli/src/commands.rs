use std::collections::BTreeSet;
use std::fmt;
use std::io::Read;
use std::ops::RangeInclusive;
use std::path::Path;

use blindsat_core::arith;
use blindsat_core::census::{self, RValue, MAX_EXACT_EXPONENT};
use blindsat_core::dnf::{self, Classification};
use blindsat_core::formula::{self as fm};
use blindsat_core::random::{random_row_set, seeded};
use blindsat_core::search::{
    adversary_rows, adversary_single_row, worst_case_formula, HeuristicOutcome,
};
use blindsat_core::{
    Assignment, BigRational, CnfFormula, Error, Formula, HeuristicAlgorithm, PolyRatio,
    Satisfiability, SearchOrder, TowerAlgorithm, TruthTable,
};

use crate::output::{Cell, Layout, Table};
use crate::{CensusTable, Command};

/// Upper bound on rows a table subcommand will materialize.
const MAX_OUTPUT_ROWS: u64 = 1 << 20;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(Error),
}

impl CliError {
    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Usage(_) => "usage",
            CliError::Core(e) => match e {
                Error::Parse { .. } => "parse",
                Error::MissingAtom(_) => "missing_atom",
                Error::Capacity { .. } => "capacity",
                Error::OutOfRange { .. } => "out_of_range",
                Error::Invalid(_) => "invalid",
                Error::Exhausted(_) => "exhausted",
            },
        }
    }

    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Core(Error::Parse { .. }) => 2,
            CliError::Core(Error::Capacity { .. }) => 3,
            CliError::Core(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => write!(f, "{e}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn parse_list<T: std::str::FromStr>(text: &str, what: &str) -> Result<Vec<T>> {
    text.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().map_err(|_| usage(format!("bad {what} {s:?}"))))
        .collect()
}

/// `a..b`, `a..=b` (both inclusive) or a single value.
fn parse_range(text: &str, what: &str) -> Result<RangeInclusive<u64>> {
    let num = |s: &str| {
        s.trim()
            .parse::<u64>()
            .map_err(|_| usage(format!("bad {what} range {text:?}")))
    };
    let range = match text.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.strip_prefix('=').unwrap_or(b))?,
        None => {
            let v = num(text)?;
            v..=v
        }
    };
    if range.is_empty() {
        return Err(usage(format!("empty {what} range {text:?}")));
    }
    Ok(range)
}

fn small(v: u64, what: &str) -> Result<u32> {
    u32::try_from(v).map_err(|_| usage(format!("{what} {v} too large")))
}

fn check_rows(count: u64) -> Result<()> {
    if count > MAX_OUTPUT_ROWS {
        return Err(Error::Capacity {
            what: "output rows",
            requested: count.to_string(),
            limit: MAX_OUTPUT_ROWS.to_string(),
        }
        .into());
    }
    Ok(())
}

fn formula(text: &str) -> Result<Formula> {
    Ok(fm::parse(text)?)
}

fn bits(point: &[bool]) -> String {
    point.iter().map(|b| if *b { '1' } else { '0' }).collect()
}

fn atom_list(atoms: impl IntoIterator<Item = u32>) -> String {
    atoms
        .into_iter()
        .map(|a| format!("p{a}"))
        .collect::<Vec<_>>()
        .join(" ")
}

fn row_list(rows: &BTreeSet<u64>) -> String {
    rows.iter()
        .map(u64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn l_cell(l: Option<u64>) -> Cell {
    l.map_or_else(|| "none".into(), Cell::from)
}

fn ratio_cells(r: &blindsat_core::ExactRatio) -> [Cell; 3] {
    [
        Cell::Big(r.numer().to_string()),
        Cell::Big(r.denom().to_string()),
        r.to_string().into(),
    ]
}

pub fn run(command: Command) -> Result<Vec<Table>> {
    match command {
        Command::Eval { formula: f, assign } => {
            let f = formula(&f)?;
            let a: Assignment = assign.parse()?;
            Ok(vec![Table::scalar("eval", "value", f.evaluate(&a)?)])
        }
        Command::Table {
            formula: f,
            atoms,
            analyze,
        } => table(&formula(&f)?, atoms.as_deref(), analyze),
        Command::Poly {
            formula: f,
            characteristic,
            factored,
        } => {
            let f = formula(&f)?;
            let text = if factored {
                let fp = arith::factored_arithmetize(&f)?;
                fp.factors()
                    .iter()
                    .map(|p| format!("({p})"))
                    .collect::<Vec<_>>()
                    .join(" * ")
            } else if characteristic {
                arith::characteristic(&f)?.to_string()
            } else {
                arith::arithmetize(&f)?.to_string()
            };
            Ok(vec![Table::scalar("poly", "polynomial", text)])
        }
        Command::Roots {
            formula: f,
            characteristic,
            sieve,
        } => roots(&formula(&f)?, characteristic, sieve),
        Command::Solve {
            formula: f,
            var,
            at,
            characteristic,
        } => {
            let f = formula(&f)?;
            let p = if characteristic {
                arith::characteristic(&f)?
            } else {
                arith::arithmetize(&f)?
            };
            let others: Vec<BigRational> = parse_list(&at, "rational")?;
            let result = p.solve_for(var, &others)?;
            Ok(vec![Table::scalar("solve", "result", result.to_string())])
        }
        Command::Adversary {
            order,
            row,
            rows,
            worst,
        } => {
            let f = match (row, rows, worst) {
                (Some(m), _, _) => adversary_single_row(&order, m)?,
                (_, Some(list), _) => {
                    let set: BTreeSet<u64> = parse_list(&list, "row")?.into_iter().collect();
                    adversary_rows(&order, &set)?
                }
                (_, _, true) => worst_case_formula(&order),
                _ => return Err(usage("one of --row, --rows or --worst is required")),
            };
            Ok(vec![Table::scalar("adversary", "formula", f.to_string())])
        }
        Command::Search { formula: f, order } => {
            let f = formula(&f)?;
            let order = order.unwrap_or_else(|| SearchOrder::natural(f.max_atom()));
            let trace = order.run(&f)?;
            let mut steps =
                Table::new("search_trace", &["t", "assignment", "result"], Layout::Rows);
            for (t, a, r) in trace.steps() {
                steps.push(vec![t.into(), a.bit_string().into(), r.into()]);
            }
            let mut summary = Table::new("search_summary", &["L"], Layout::Summary);
            summary.push(vec![l_cell(trace.first_success())]);
            Ok(vec![steps, summary])
        }
        Command::Tower {
            formula: f,
            order,
            size,
        } => {
            let tower = TowerAlgorithm::with_size(order, size)?;
            let f = match f {
                Some(text) => formula(&text)?,
                None => tower.next_adversary()?,
            };
            let out = tower.run(&f)?;
            let mut t = Table::new(
                "tower",
                &["size", "formula", "rows_charged", "L", "checklist_hit"],
                Layout::Summary,
            );
            t.push(vec![
                size.into(),
                f.to_string().into(),
                out.rows_charged.into(),
                l_cell(out.first_success),
                out.checklist_hit.into(),
            ]);
            Ok(vec![t])
        }
        Command::Heuristic {
            formula: f,
            order,
            rows,
            random,
            seed,
        } => {
            let n = order.num_atoms() as u32;
            let set: BTreeSet<u64> = match (rows, random) {
                (Some(list), _) => parse_list(&list, "row")?.into_iter().collect(),
                (None, Some(k)) => random_row_set(&mut seeded(seed), n, k)?,
                (None, None) => return Err(usage("one of --rows or --random is required")),
            };
            let h = HeuristicAlgorithm::new(n, set)?;
            let f = match f {
                Some(text) => formula(&text)?,
                None => h.adversary(&order)?,
            };
            let (outcome, position, assignment) = match h.run(&order, &f)? {
                HeuristicOutcome::Found {
                    position,
                    assignment,
                } => ("found", Some(position), Some(assignment.bit_string())),
                HeuristicOutcome::Miss => ("miss", None, None),
            };
            let mut t = Table::new(
                "heuristic",
                &["rows", "formula", "outcome", "position", "assignment"],
                Layout::Summary,
            );
            t.push(vec![
                row_list(h.rows()).into(),
                f.to_string().into(),
                outcome.into(),
                position.into(),
                assignment.into(),
            ]);
            Ok(vec![t])
        }
        Command::Dnf {
            file,
            blowup,
            seed,
            count_only,
        } => {
            let cnf = match (file, blowup) {
                (_, Some(params)) => {
                    let v: Vec<u64> = parse_list(&params, "blowup parameter")?;
                    let [n, k, m] = v[..] else {
                        return Err(usage("--blowup takes n,k,m"));
                    };
                    dnf::blowup_instance(small(n, "n")?, k as usize, m as usize, seed)?
                }
                (Some(path), None) => CnfFormula::parse_dimacs(&read_input(&path)?)?,
                (None, None) => return Err(usage("give a DIMACS file or --blowup")),
            };
            dnf_report(&cnf, count_only)
        }
        Command::Census { table, n, s, m } => census_table(table, &n, &s, m.as_deref()),
    }
}

fn read_input(path: &Path) -> Result<String> {
    let mut text = String::new();
    let read = if path == Path::new("-") {
        std::io::stdin().read_to_string(&mut text).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| text = t)
    };
    read.map_err(|e| usage(format!("cannot read {}: {e}", path.display())))?;
    Ok(text)
}

fn table(f: &Formula, atoms: Option<&str>, analyze: bool) -> Result<Vec<Table>> {
    let tt = match atoms {
        Some(list) => TruthTable::new(f, &parse_list::<u32>(list, "atom")?)?,
        None => TruthTable::of(f)?,
    };
    let mut rows = Table::new(
        "truth_table",
        &["row", "assignment", "result"],
        Layout::Rows,
    );
    for k in 1..=tt.num_rows() {
        rows.push(vec![
            k.into(),
            tt.assignment(k).bit_string().into(),
            tt.result(k)?.into(),
        ]);
    }
    let mut out = vec![rows];
    if analyze {
        let mut a = Table::new(
            "analysis",
            &[
                "quasinorm",
                "class_quasinorm",
                "essential",
                "irreducible",
                "representative",
            ],
            Layout::Summary,
        );
        a.push(vec![
            f.quasinorm().into(),
            fm::class_quasinorm(f)?.into(),
            atom_list(fm::essential_atoms(f)?).into(),
            fm::is_irreducible(f)?.into(),
            fm::irreducible_representative(f)?.to_string().into(),
        ]);
        out.push(a);
    }
    Ok(out)
}

fn roots(f: &Formula, characteristic: bool, sieve: bool) -> Result<Vec<Table>> {
    let mut t = Table::new("roots", &["point"], Layout::Rows);
    if sieve {
        let report = arith::factored_arithmetize(f)?.sieve_roots()?;
        for p in &report.roots {
            t.push(vec![bits(p).into()]);
        }
        let mut s = Table::new(
            "sieve",
            &["factors", "roots", "evaluations", "duplicates"],
            Layout::Summary,
        );
        s.push(vec![
            f.conjuncts().len().into(),
            report.roots.len().into(),
            report.evaluations.into(),
            report.duplicates.into(),
        ]);
        return Ok(vec![t, s]);
    }
    let p = if characteristic {
        arith::characteristic(f)?
    } else {
        arith::arithmetize(f)?
    };
    for r in p.binary_roots()? {
        t.push(vec![bits(&r).into()]);
    }
    Ok(vec![t])
}

fn dnf_report(cnf: &CnfFormula, count_only: bool) -> Result<Vec<Table>> {
    let count = cnf.disjunct_count();
    let mut t = Table::new(
        "dnf",
        &[
            "clauses",
            "disjuncts",
            "satisfiable",
            "disjunct",
            "assignment",
            "class",
        ],
        Layout::Summary,
    );
    if count_only {
        t.push(vec![
            cnf.clauses().len().into(),
            Cell::Big(count.to_string()),
            Cell::Na,
            Cell::Na,
            Cell::Na,
            Cell::Na,
        ]);
        return Ok(vec![t]);
    }
    let d = dnf::distribute(cnf)?;
    let (sat, index, assignment) = match dnf::dnf_satisfying_assignment(&d) {
        Satisfiability::Satisfiable {
            disjunct,
            assignment,
        } => (
            true,
            Some(disjunct as u64 + 1),
            Some(assignment.bit_string()),
        ),
        Satisfiability::Unsatisfiable => (false, None, None),
    };
    let class: Classification = dnf::classify(&d)?;
    t.push(vec![
        cnf.clauses().len().into(),
        Cell::Big(count.to_string()),
        sat.into(),
        index.into(),
        assignment.into(),
        class.to_string().into(),
    ]);
    Ok(vec![t, Table::scalar("dnf_text", "dnf", d.to_string())])
}

fn rtable_row(n: u32, s: u32, r: &PolyRatio) -> Vec<Cell> {
    let mut row = vec![n.into(), s.into()];
    match r {
        PolyRatio::NotApplicable(_) => row.extend([Cell::Na, Cell::Na, Cell::Na]),
        PolyRatio::Applicable(v) => row.extend(r_cells(v)),
    }
    row
}

fn r_cells(v: &RValue) -> [Cell; 3] {
    let m = v.exponent();
    let decimal = v.fraction_significant(census::DEFAULT_DIGITS).into();
    if m > MAX_EXACT_EXPONENT {
        [
            Cell::Text(format!("2^{m}-1")),
            Cell::Text(format!("2^{m}")),
            decimal,
        ]
    } else {
        let exact = v.fraction().expect("small exponent");
        [
            Cell::Big(exact.numer().to_string()),
            Cell::Big(exact.denom().to_string()),
            decimal,
        ]
    }
}

fn census_table(which: CensusTable, n: &str, s: &str, m: Option<&str>) -> Result<Vec<Table>> {
    let ns = parse_range(n, "n")?;
    let m_range = m.map(|m| parse_range(m, "m")).transpose()?;
    let rows_for = |n: u32, first: u64| -> Result<RangeInclusive<u64>> {
        let u = census::rows_in_table(n)?;
        Ok(m_range.clone().unwrap_or(first..=u))
    };
    let table = match which {
        CensusTable::Classes => {
            let mut t = Table::new("census", &["n", "u", "class_count"], Layout::Rows);
            for n in ns {
                let row = census::census_row(small(n, "n")?)?;
                t.push(vec![
                    row.n.into(),
                    row.u.into(),
                    Cell::Big(row.class_count.to_string()),
                ]);
            }
            t
        }
        CensusTable::Rtable => {
            let ss = parse_range(s, "s")?;
            let mut t = Table::new(
                "rtable",
                &["n", "s", "ratio_num", "ratio_den", "decimal"],
                Layout::Rows,
            );
            for n in ns {
                for s in ss.clone() {
                    let (n, s) = (small(n, "n")?, small(s, "s")?);
                    t.push(rtable_row(n, s, &census::r_poly(n, s)?));
                }
            }
            t
        }
        CensusTable::Firsttrue => {
            let mut t = Table::new("firsttrue", &["n", "m", "count"], Layout::Rows);
            for n in ns {
                let n = small(n, "n")?;
                let ms = rows_for(n, 1)?;
                check_rows(ms.end() - ms.start() + 1)?;
                for m in ms {
                    let c = census::first_true_count(n, m)?;
                    t.push(vec![n.into(), m.into(), Cell::Big(c.to_string())]);
                }
                if m_range.is_none() {
                    t.push(vec![n.into(), Cell::Na, 1u32.into()]);
                }
            }
            t
        }
        CensusTable::Lucky => {
            let mut t = Table::new(
                "lucky",
                &["n", "m", "ratio_num", "ratio_den", "decimal"],
                Layout::Rows,
            );
            for n in ns {
                let n = small(n, "n")?;
                let ms = rows_for(n, 0)?;
                check_rows(ms.end() - ms.start() + 1)?;
                for m in ms {
                    let r = census::lucky_ratio(n, m)?;
                    let mut row = vec![n.into(), m.into()];
                    row.extend(ratio_cells(&r));
                    t.push(row);
                }
            }
            t
        }
    };
    Ok(vec![table])
}

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Int(i128),
    /// Integer too large for JSON numbers; emitted as a string.
    Big(String),
    Bool(bool),
    Na,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Text(s) | Cell::Big(s) => s.clone(),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => (*b as u8).to_string(),
            Cell::Na => "NA".into(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Text(s) | Cell::Big(s) => Value::String(s.clone()),
            Cell::Int(i) => json!(*i as i64),
            Cell::Bool(b) => json!(*b as u8),
            Cell::Na => Value::Null,
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.into())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

macro_rules! int_cell {
    ($($t:ty),*) => {$(
        impl From<$t> for Cell {
            fn from(v: $t) -> Self {
                Cell::Int(v as i128)
            }
        }
    )*};
}
int_cell!(u32, u64, usize, i64);

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Na, Into::into)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Layout {
    /// Header line, then one line per row.
    Rows,
    /// `key=value` pairs on one line per row.
    Summary,
    /// Bare value of the single column.
    Scalar,
}

#[derive(Debug, Clone)]
pub struct Table {
    pub schema: &'static str,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub layout: Layout,
}

impl Table {
    pub fn new(schema: &'static str, columns: &[&'static str], layout: Layout) -> Self {
        Table {
            schema,
            columns: columns.to_vec(),
            rows: Vec::new(),
            layout,
        }
    }

    pub fn scalar(schema: &'static str, column: &'static str, value: impl Into<Cell>) -> Self {
        let mut t = Table::new(schema, &[column], Layout::Scalar);
        t.push(vec![value.into()]);
        t
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    fn csv(&self, out: &mut String) {
        match self.layout {
            Layout::Rows => {
                out.push_str(&self.columns.join(","));
                out.push('\n');
                for row in &self.rows {
                    let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
            }
            Layout::Summary => {
                for row in &self.rows {
                    let pairs: Vec<String> = self
                        .columns
                        .iter()
                        .zip(row)
                        .map(|(c, v)| format!("{c}={}", v.csv()))
                        .collect();
                    out.push_str(&pairs.join(","));
                    out.push('\n');
                }
            }
            Layout::Scalar => {
                for row in &self.rows {
                    out.push_str(&row[0].csv());
                    out.push('\n');
                }
            }
        }
    }

    fn records(&self) -> impl Iterator<Item = Value> + '_ {
        self.rows.iter().map(|row| {
            let mut rec = Map::new();
            rec.insert("schema".into(), Value::String(self.schema.into()));
            for (c, v) in self.columns.iter().zip(row) {
                rec.insert((*c).into(), v.json());
            }
            Value::Object(rec)
        })
    }
}

pub fn render(tables: &[Table], format: Format) -> String {
    match format {
        Format::Csv => {
            let mut out = String::new();
            for t in tables {
                t.csv(&mut out);
            }
            out
        }
        Format::Json => {
            let records: Vec<Value> = tables.iter().flat_map(Table::records).collect();
            let mut s = serde_json::to_string_pretty(&Value::Array(records)).expect("serializable");
            s.push('\n');
            s
        }
    }
}

pub fn error_record(kind: &str, message: &str, format: Format) -> String {
    match format {
        Format::Csv => format!("error,{kind},{}\n", message.replace('\n', " ")),
        Format::Json => {
            let v = json!([{ "schema": "error", "kind": kind, "message": message }]);
            format!(
                "{}\n",
                serde_json::to_string_pretty(&v).expect("serializable")
            )
        }
    }
}

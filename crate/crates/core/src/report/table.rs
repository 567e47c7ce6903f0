use std::fmt::Write as _;
use std::io::{self, Write};
use std::str::FromStr;

/// One table cell. Floats are written with 17 significant digits so they read
/// back bit-exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!(
                "unknown output format '{other}' (expected csv or json)"
            )),
        }
    }
}

/// Rows sharing one schema, in output order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        self.rows.push(row);
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

pub fn format_float(v: f64) -> String {
    if v.is_nan() {
        "NaN".into()
    } else if v.is_infinite() {
        if v > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        }
    } else {
        format!("{v:.16e}")
    }
}

fn csv_field(cell: &Cell) -> String {
    match cell {
        Cell::Int(i) => i.to_string(),
        Cell::Float(v) => format_float(*v),
        Cell::Text(s) if s.contains([',', '"', '\n']) => format!("\"{}\"", s.replace('"', "\"\"")),
        Cell::Text(s) => s.clone(),
    }
}

fn json_value(cell: &Cell) -> String {
    match cell {
        Cell::Int(i) => i.to_string(),
        Cell::Float(v) if v.is_finite() => format_float(*v),
        Cell::Float(_) => "null".into(),
        Cell::Text(s) => serde_json::Value::from(s.as_str()).to_string(),
    }
}

/// Renders `table` as CSV (header plus rows) or as a JSON array of objects.
pub fn render_table(table: &Table, format: OutputFormat) -> io::Result<String> {
    if let Some((i, row)) = table
        .rows
        .iter()
        .enumerate()
        .find(|(_, r)| r.len() != table.columns.len())
    {
        return Err(io::Error::new(
            io::ErrorKind::InvalidInput,
            format!(
                "row {i} has {} cells, schema has {} columns",
                row.len(),
                table.columns.len()
            ),
        ));
    }
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str(&table.columns.join(","));
            out.push('\n');
            for row in &table.rows {
                let fields: Vec<String> = row.iter().map(csv_field).collect();
                out.push_str(&fields.join(","));
                out.push('\n');
            }
        }
        OutputFormat::Json => {
            out.push('[');
            for (i, row) in table.rows.iter().enumerate() {
                out.push_str(if i == 0 { "\n  {" } else { ",\n  {" });
                for (j, (key, cell)) in table.columns.iter().zip(row).enumerate() {
                    if j > 0 {
                        out.push_str(", ");
                    }
                    let key = serde_json::Value::from(key.as_str());
                    let _ = write!(out, "{key}: {}", json_value(cell));
                }
                out.push('}');
            }
            out.push_str(if table.rows.is_empty() {
                "]\n"
            } else {
                "\n]\n"
            });
        }
    }
    Ok(out)
}

/// Writes `table` to `dest` in `format`.
pub fn emit_table(table: &Table, format: OutputFormat, dest: &mut dyn Write) -> io::Result<()> {
    let text = render_table(table, format)?;
    dest.write_all(text.as_bytes())?;
    dest.flush()
}

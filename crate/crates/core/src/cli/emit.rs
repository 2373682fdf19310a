//! Text and CSV rendering.
//!
//! Floats carry 9 significant digits: fixed notation for `1e-3 ≤ |x| < 1e4`,
//! scientific otherwise.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::backreaction::LimitBreakdown;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Csv,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}` (expected text or csv)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Value {
    fn from(x: f64) -> Self {
        Value::Num(x)
    }
}

impl From<u64> for Value {
    fn from(x: u64) -> Self {
        Value::Int(x)
    }
}

impl From<usize> for Value {
    fn from(x: usize) -> Self {
        Value::Int(x as u64)
    }
}

impl From<bool> for Value {
    fn from(x: bool) -> Self {
        Value::Bool(x)
    }
}

impl From<String> for Value {
    fn from(x: String) -> Self {
        Value::Text(x)
    }
}

impl From<&str> for Value {
    fn from(x: &str) -> Self {
        Value::Text(x.to_owned())
    }
}

impl Value {
    pub fn render(&self) -> String {
        match self {
            Value::Num(x) => format_number(*x),
            Value::Int(i) => i.to_string(),
            Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
        }
    }
}

pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let a = x.abs();
    if (1e-3..1e4).contains(&a) {
        let exp = a.log10().floor() as i32;
        let decimals = (8 - exp).max(0) as usize;
        let s = format!("{x:.decimals$}");
        // rounding can carry into the next decade, e.g. 9999.999999999
        let rounded: f64 = s.parse().unwrap_or(x);
        if rounded.abs() >= 10f64.powi(exp + 1) && decimals > 0 {
            return format!("{x:.prec$}", prec = decimals - 1);
        }
        s
    } else {
        format!("{x:.8e}")
    }
}

/// Ordered named values, one logical result.
pub type Record = Vec<(&'static str, Value)>;

/// Text: one `key=value` line per field. CSV: header and a single row.
pub fn emit(record: &Record, format: Format) -> String {
    match format {
        Format::Text => {
            let mut s = String::new();
            for (k, v) in record {
                let _ = writeln!(s, "{k}={}", v.render());
            }
            s
        }
        Format::Csv => {
            let header: Vec<&str> = record.iter().map(|(k, _)| *k).collect();
            let row: Vec<Value> = record.iter().map(|(_, v)| v.clone()).collect();
            emit_table(&header, &[row])
        }
    }
}

/// Header line followed by one line per row.
pub fn emit_table(header: &[&str], rows: &[Vec<Value>]) -> String {
    let mut s = header.join(",");
    s.push('\n');
    for row in rows {
        let cells: Vec<String> = row.iter().map(csv_cell).collect();
        s.push_str(&cells.join(","));
        s.push('\n');
    }
    s
}

fn csv_cell(v: &Value) -> String {
    let s = v.render();
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

/// `# key=value` lines appended after a table.
pub fn emit_footer(record: &Record) -> String {
    emit(record, Format::Text)
        .lines()
        .map(|l| format!("# {l}\n"))
        .collect()
}

pub const MAP_HEADER: [&str; 8] = [
    "l",
    "tau",
    "rho",
    "regime",
    "delta_E_abs",
    "Q_opt",
    "lambda",
    "subregions",
];

pub fn limit_row(l: f64, tau: f64, b: &LimitBreakdown) -> Vec<Value> {
    vec![
        l.into(),
        tau.into(),
        b.rho.into(),
        b.regime.to_string().into(),
        b.delta_e_abs.into(),
        b.q_opt.into(),
        b.lambda.into(),
        b.subregion_count.into(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backreaction::absolute_limit;
    use crate::units::UnitSystem;

    #[test]
    fn number_formats() {
        assert_eq!(format_number(2.0), "2.00000000");
        assert_eq!(format_number(0.17087), "0.170870000");
        assert_eq!(format_number(1234.5), "1234.50000");
        assert_eq!(format_number(1e4), "1.00000000e4");
        assert_eq!(format_number(-2.5e-4), "-2.50000000e-4");
        assert_eq!(format_number(0.001), "0.00100000000");
        assert_eq!(format_number(9999.9999999), "10000.0000");
        assert_eq!(format_number(0.0), "0");
    }

    #[test]
    fn nine_digit_round_trip() {
        for x in [std::f64::consts::PI, 1.0 / 137.0, 6.02e23, -1.6e-19, 42.0, 0.0123456789] {
            let back: f64 = format_number(x).parse().unwrap();
            assert!(((back - x) / x).abs() <= 5e-9, "{x} -> {back}");
        }
    }

    #[test]
    fn text_and_csv() {
        let r: Record = vec![("delta_min", 2.0.into()), ("regime", "quantum".into())];
        assert_eq!(emit(&r, Format::Text), "delta_min=2.00000000\nregime=quantum\n");
        assert_eq!(emit(&r, Format::Csv), "delta_min,regime\n2.00000000,quantum\n");
    }

    #[test]
    fn empty_table_is_header_only() {
        assert_eq!(emit_table(&MAP_HEADER, &[]), format!("{}\n", MAP_HEADER.join(",")));
    }

    #[test]
    fn limit_row_matches_header() {
        let b = absolute_limit(1.0, 1.0, &UnitSystem::natural()).unwrap();
        let row = limit_row(1.0, 1.0, &b);
        assert_eq!(row.len(), MAP_HEADER.len());
        let table = emit_table(&MAP_HEADER, &[row]);
        let line = table.lines().nth(1).unwrap();
        assert_eq!(line.split(',').count(), 8);
        assert!(line.contains("Acausal"));
    }
}

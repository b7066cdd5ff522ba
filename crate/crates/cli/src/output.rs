//! Output record and the three renderers (table, JSON, CSV).
//!
//! Every command produces one [`OutputRecord`]: the command name, a
//! lossless echo of the effective parameters, one or more result rows,
//! per-field unit annotations, and free-text notes. Rendering is fully
//! deterministic — fields keep insertion order and floats are formatted
//! with fixed rules — so identical runs emit identical bytes.
//!
//! Machine formats (JSON, CSV) print floats in scientific notation with
//! 13 significant digits, enough to reconstruct the exact value. The
//! table format targets humans: adaptive precision and second-counts
//! annotated with a human-readable duration.

use std::fmt::Write as _;

/// One output field value.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Num(f64),
    Int(u64),
    Bool(bool),
    Text(String),
}

impl Value {
    fn machine(&self) -> String {
        match self {
            Value::Num(v) => format_machine_f64(*v),
            Value::Int(v) => v.to_string(),
            Value::Bool(v) => v.to_string(),
            Value::Text(v) => v.clone(),
        }
    }

    fn human(&self) -> String {
        match self {
            Value::Num(v) => format_human_f64(*v),
            Value::Int(v) => v.to_string(),
            Value::Bool(v) => if *v { "yes" } else { "no" }.to_string(),
            Value::Text(v) => v.clone(),
        }
    }
}

/// 13 significant digits, scientific notation; lossless for f64.
fn format_machine_f64(v: f64) -> String {
    format!("{v:.12e}")
}

/// Adaptive human formatting: plain decimal in a comfortable range,
/// scientific outside it.
fn format_human_f64(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    let magnitude = v.abs();
    if (1e-4..1e7).contains(&magnitude) {
        let s = format!("{v:.6}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{v:.4e}")
    }
}

/// "1e8 s" is easier to read as "~3.2 years".
fn humanize_seconds(s: f64) -> Option<String> {
    const MINUTE: f64 = 60.0;
    const HOUR: f64 = 3600.0;
    const DAY: f64 = 86_400.0;
    const YEAR: f64 = 365.25 * DAY;
    if !(s.is_finite() && s >= MINUTE) {
        return None;
    }
    let (value, unit) = if s >= YEAR {
        (s / YEAR, "years")
    } else if s >= DAY {
        (s / DAY, "days")
    } else if s >= HOUR {
        (s / HOUR, "hours")
    } else {
        (s / MINUTE, "minutes")
    };
    Some(format!("~{value:.1} {unit}"))
}

/// Structured result of one CLI invocation.
#[derive(Debug, Clone, Default)]
pub struct OutputRecord {
    pub command: String,
    pub tool_version: String,
    /// Effective inputs, echoed losslessly.
    pub parameters: Vec<(String, Value)>,
    /// Field name -> unit string, covering numeric fields of both the
    /// parameter echo and the result rows.
    pub units: Vec<(String, String)>,
    /// One row for plain commands, many for sweeps.
    pub results: Vec<Vec<(String, Value)>>,
    /// Warnings and annotations (not part of the CSV table).
    pub notes: Vec<String>,
}

impl OutputRecord {
    pub fn new(command: &str) -> Self {
        OutputRecord {
            command: command.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            ..OutputRecord::default()
        }
    }

    pub fn param(&mut self, key: &str, value: Value) -> &mut Self {
        self.parameters.push((key.to_string(), value));
        self
    }

    pub fn unit(&mut self, key: &str, unit: &str) -> &mut Self {
        self.units.push((key.to_string(), unit.to_string()));
        self
    }

    pub fn note(&mut self, note: impl Into<String>) -> &mut Self {
        self.notes.push(note.into());
        self
    }

    fn unit_of(&self, key: &str) -> Option<&str> {
        self.units
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, u)| u.as_str())
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "qlink {} (v{})", self.command, self.tool_version);
        let _ = writeln!(out);
        let _ = writeln!(out, "parameters:");
        for (key, value) in &self.parameters {
            self.table_line(&mut out, key, value);
        }
        for (i, row) in self.results.iter().enumerate() {
            if self.results.len() > 1 {
                let _ = writeln!(out, "results[{i}]:");
            } else {
                let _ = writeln!(out, "results:");
            }
            for (key, value) in row {
                self.table_line(&mut out, key, value);
            }
        }
        if !self.notes.is_empty() {
            let _ = writeln!(out, "notes:");
            for note in &self.notes {
                let _ = writeln!(out, "  - {note}");
            }
        }
        out
    }

    fn table_line(&self, out: &mut String, key: &str, value: &Value) {
        let unit = self.unit_of(key).unwrap_or("");
        let mut rendered = value.human();
        if unit == "s" {
            if let Value::Num(seconds) = value {
                if let Some(annotation) = humanize_seconds(*seconds) {
                    let _ = write!(rendered, " ({annotation})");
                }
            }
        }
        if unit.is_empty() || unit == "s" {
            let _ = writeln!(out, "  {key:<28} {rendered}");
        } else {
            let _ = writeln!(out, "  {key:<28} {rendered} {unit}");
        }
    }

    fn render_json(&self) -> String {
        let mut out = String::new();
        out.push_str("{\n");
        let _ = writeln!(out, "  \"command\": {},", json_string(&self.command));
        let _ = writeln!(out, "  \"tool_version\": {},", json_string(&self.tool_version));
        out.push_str("  \"parameters\": ");
        json_object(&mut out, &self.parameters, 2);
        out.push_str(",\n  \"units\": ");
        let units: Vec<(String, Value)> = self
            .units
            .iter()
            .map(|(k, u)| (k.clone(), Value::Text(u.clone())))
            .collect();
        json_object(&mut out, &units, 2);
        out.push_str(",\n  \"results\": [");
        for (i, row) in self.results.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            out.push_str("\n    ");
            json_object(&mut out, row, 4);
        }
        out.push_str("\n  ],\n  \"notes\": [");
        for (i, note) in self.notes.iter().enumerate() {
            if i > 0 {
                out.push_str(", ");
            }
            out.push_str(&json_string(note));
        }
        out.push_str("]\n}\n");
        out
    }

    fn render_csv(&self) -> String {
        let mut out = String::new();
        let mut header: Vec<&str> = Vec::new();
        for (key, _) in &self.parameters {
            header.push(key);
        }
        if let Some(first) = self.results.first() {
            for (key, _) in first {
                header.push(key);
            }
        }
        out.push_str(
            &header
                .iter()
                .map(|h| csv_field(h))
                .collect::<Vec<_>>()
                .join(","),
        );
        out.push('\n');
        for row in &self.results {
            let mut fields: Vec<String> = self
                .parameters
                .iter()
                .map(|(_, v)| csv_field(&v.machine()))
                .collect();
            // Sweeps may produce ragged rows (e.g. out-of-domain entries);
            // align on the header keys of the first row.
            let keys: Vec<&str> = self
                .results
                .first()
                .map(|r| r.iter().map(|(k, _)| k.as_str()).collect())
                .unwrap_or_default();
            for key in keys {
                let cell = row
                    .iter()
                    .find(|(k, _)| k == key)
                    .map(|(_, v)| csv_field(&v.machine()))
                    .unwrap_or_default();
                fields.push(cell);
            }
            out.push_str(&fields.join(","));
            out.push('\n');
        }
        out
    }
}

/// Output format of a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
    Csv,
}

fn json_object(out: &mut String, fields: &[(String, Value)], indent: usize) {
    if fields.is_empty() {
        out.push_str("{}");
        return;
    }
    let pad = " ".repeat(indent + 2);
    out.push_str("{\n");
    for (i, (key, value)) in fields.iter().enumerate() {
        let _ = write!(out, "{pad}{}: {}", json_string(key), json_value(value));
        if i + 1 < fields.len() {
            out.push(',');
        }
        out.push('\n');
    }
    let _ = write!(out, "{}}}", " ".repeat(indent));
}

fn json_value(value: &Value) -> String {
    match value {
        Value::Num(v) if v.is_finite() => format_machine_f64(*v),
        Value::Num(v) => json_string(&v.to_string()),
        Value::Int(v) => v.to_string(),
        Value::Bool(v) => v.to_string(),
        Value::Text(v) => json_string(v),
    }
}

fn json_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('"');
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> OutputRecord {
        let mut record = OutputRecord::new("rate");
        record.tool_version = "0.0.0-test".to_string();
        record
            .param("scheme", Value::Text("qkd".to_string()))
            .param("distance_km", Value::Num(200.0))
            .unit("distance_km", "km")
            .unit("output_rate_bps", "bit/s");
        record.results.push(vec![
            ("output_rate_bps".to_string(), Value::Num(14.427671804503519)),
            ("ok".to_string(), Value::Bool(true)),
        ]);
        record.note("example note");
        record
    }

    #[test]
    fn machine_floats_carry_13_significant_digits() {
        assert_eq!(format_machine_f64(0.01), "1.000000000000e-2");
        assert_eq!(format_machine_f64(2.56e10), "2.560000000000e10");
        let formatted = format_machine_f64(14.427671804503519);
        assert_eq!(formatted, "1.442767180450e1");
    }

    #[test]
    fn json_is_deterministic_and_escaped() {
        let a = sample().render(Format::Json);
        let b = sample().render(Format::Json);
        assert_eq!(a, b);
        assert!(a.contains("\"command\": \"rate\""));
        assert!(a.contains("\"output_rate_bps\": 1.442767180450e1"));
        assert!(json_string("a\"b\\c\n").contains("\\\""));
    }

    #[test]
    fn csv_has_header_then_rows() {
        let csv = sample().render(Format::Csv);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "scheme,distance_km,output_rate_bps,ok");
        assert_eq!(
            lines.next().unwrap(),
            "qkd,2.000000000000e2,1.442767180450e1,true"
        );
        assert!(lines.next().is_none());
    }

    #[test]
    fn table_annotates_durations() {
        let mut record = OutputRecord::new("scenario");
        record.unit("key_accumulation_s", "s");
        record.results.push(vec![(
            "key_accumulation_s".to_string(),
            Value::Num(1e8),
        )]);
        let table = record.render(Format::Table);
        assert!(table.contains("~3.2 years"), "table was:\n{table}");
    }

    #[test]
    fn human_float_formatting() {
        assert_eq!(format_human_f64(0.0), "0");
        assert_eq!(format_human_f64(25.6), "25.6");
        assert_eq!(format_human_f64(1e-9), "1.0000e-9");
        assert_eq!(format_human_f64(2.56e10), "2.5600e10");
    }

    #[test]
    fn csv_quotes_awkward_fields() {
        assert_eq!(csv_field("plain"), "plain");
        assert_eq!(csv_field("a,b"), "\"a,b\"");
        assert_eq!(csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
    }
}

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::poly::{format_rational, Rational};

/// Counterexample or failure note attached to a failed check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub graph6: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub clause: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Witness {
    pub fn note(note: String) -> Self {
        Witness { graph6: None, clause: None, t: None, note: Some(note) }
    }

    pub fn graph(graph6: String, note: String) -> Self {
        Witness { graph6: Some(graph6), clause: None, t: None, note: Some(note) }
    }

    pub fn at(graph6: &str, clause: &str, t: &Rational) -> Self {
        Witness {
            graph6: Some(graph6.to_string()),
            clause: Some(clause.to_string()),
            t: Some(format_rational(t)),
            note: None,
        }
    }
}

/// A labelled point for the number-line plot.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Marker {
    pub label: String,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub instances: u64,
    pub detail: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub markers: Vec<Marker>,
}

impl Check {
    pub fn single(name: &str, passed: bool, detail: Value, witness: Option<Witness>) -> Self {
        Check { name: name.to_string(), passed, instances: 1, detail, witness, markers: Vec::new() }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub params: Value,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn new(command: &str, params: Value) -> Self {
        Report {
            tool: "chromaroot".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            params,
            passed: true,
            checks: Vec::new(),
            timing_ms: None,
        }
    }

    pub fn push(&mut self, check: Check) {
        debug_assert!(check.passed || check.witness.is_some(), "failed check without witness");
        self.passed &= check.passed;
        self.checks.push(check);
    }

    pub fn extend(&mut self, checks: impl IntoIterator<Item = Check>) {
        for c in checks {
            self.push(c);
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serialises");
        s.push('\n');
        s
    }

    /// One row per check.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,passed,instances,witness_graph6,witness_clause,witness_t,witness_note\n");
        for c in &self.checks {
            let w = c.witness.clone().unwrap_or(Witness { graph6: None, clause: None, t: None, note: None });
            let cells = [
                c.name.clone(),
                c.passed.to_string(),
                c.instances.to_string(),
                w.graph6.unwrap_or_default(),
                w.clause.unwrap_or_default(),
                w.t.unwrap_or_default(),
                w.note.unwrap_or_default(),
            ];
            let row: Vec<String> = cells.iter().map(|s| csv_cell(s)).collect();
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }

    /// Number line of every marker in the report.
    pub fn to_svg(&self) -> String {
        let mut marks: Vec<&Marker> = self.checks.iter().flat_map(|c| &c.markers).collect();
        marks.sort_by(|a, b| a.value.total_cmp(&b.value).then_with(|| a.label.cmp(&b.label)));
        marks.dedup_by(|a, b| a.label == b.label && a.value == b.value);
        let (lo, hi) = match (marks.first(), marks.last()) {
            (Some(a), Some(b)) if b.value > a.value => {
                let pad = (b.value - a.value) * 0.05;
                (a.value - pad, b.value + pad)
            }
            (Some(a), _) => (a.value - 0.05, a.value + 0.05),
            _ => (1.0, 2.0),
        };
        let (width, left, right) = (960.0, 40.0, 920.0);
        let x = |v: f64| left + (v - lo) / (hi - lo) * (right - left);
        let height = 120 + 18 * marks.len();
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" font-family="monospace" font-size="11">"#
        );
        let _ = writeln!(s, r#"<text x="{left}" y="20">chromaroot {}</text>"#, xml_escape(&self.command));
        let _ = writeln!(s, r#"<line x1="{left}" y1="60" x2="{right}" y2="60" stroke="black"/>"#);
        for (tick, label) in [(lo, lo), (hi, hi)] {
            let _ = writeln!(s, r#"<text x="{:.1}" y="78" text-anchor="middle">{label:.4}</text>"#, x(tick));
        }
        for (i, m) in marks.iter().enumerate() {
            let px = x(m.value);
            let ly = 100 + 18 * i;
            let _ = writeln!(s, r#"<line x1="{px:.1}" y1="52" x2="{px:.1}" y2="68" stroke="crimson"/>"#);
            let _ = writeln!(s, r##"<line x1="{px:.1}" y1="68" x2="{px:.1}" y2="{}" stroke="#bbb"/>"##, ly - 10);
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{ly}">{} = {:.9}</text>"#,
                px + 3.0,
                xml_escape(&m.label),
                m.value
            );
        }
        s.push_str("</svg>\n");
        s
    }
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

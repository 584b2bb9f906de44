//! Report assembly and JSON/CSV output.

use std::io::Write;

use serde::Serialize;
use serde_json::Value;
use sgt_core::Verdict;

use crate::params::{Params, Preset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

/// One checked statement about one graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub suite: String,
    pub graph: String,
    pub check: String,
    pub verdict: Verdict,
    pub value: Option<f64>,
    pub bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
}

impl Row {
    pub fn new(suite: &str, graph: &str, check: &str, verdict: Verdict) -> Self {
        Row { suite: suite.into(), graph: graph.into(), check: check.into(), verdict, value: None, bound: None, detail: None }
    }

    pub fn value(mut self, value: f64) -> Self {
        self.value = Some(value);
        self
    }

    pub fn bound(mut self, bound: f64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn detail(mut self, detail: impl Serialize) -> Self {
        self.detail = Some(serde_json::to_value(detail).expect("report details serialize"));
        self
    }

    /// A row recording an analysis error. Errors count as failures.
    pub fn error(suite: &str, graph: &str, check: &str, err: impl std::fmt::Display) -> Self {
        Row::new(suite, graph, check, Verdict::Fail).detail(serde_json::json!({ "error": err.to_string() }))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub not_applicable: usize,
    pub total: usize,
}

impl Summary {
    pub fn of(rows: &[Row]) -> Self {
        let mut s = Summary { total: rows.len(), ..Summary::default() };
        for r in rows {
            match r.verdict {
                Verdict::Pass => s.pass += 1,
                Verdict::Fail => s.fail += 1,
                Verdict::NotApplicable => s.not_applicable += 1,
            }
        }
        s
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub preset: Preset,
    pub params: Params,
    pub rows: Vec<Row>,
    pub summary: Summary,
}

#[derive(Serialize)]
struct CsvRow<'a> {
    suite: &'a str,
    graph: &'a str,
    check: &'a str,
    verdict: &'static str,
    value: Option<f64>,
    bound: Option<f64>,
    detail: String,
}

impl Report {
    pub fn new(preset: Preset, params: Params, rows: Vec<Row>) -> Self {
        let summary = Summary::of(&rows);
        Report { tool: "sgt", version: env!("CARGO_PKG_VERSION"), preset, params, rows, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        for r in &self.rows {
            w.serialize(CsvRow {
                suite: &r.suite,
                graph: &r.graph,
                check: &r.check,
                verdict: r.verdict.as_str(),
                value: r.value,
                bound: r.bound,
                detail: r.detail.as_ref().map(Value::to_string).unwrap_or_default(),
            })?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn render(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Json => self.to_json().into_bytes(),
            Format::Csv => {
                let mut buf = Vec::new();
                self.write_csv(&mut buf).expect("writing to memory");
                buf
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_and_formats() {
        let rows = vec![
            Row::new("s", "g", "a", Verdict::Pass).value(1.0),
            Row::new("s", "g", "b", Verdict::NotApplicable),
            Row::error("s", "g", "c", "boom"),
        ];
        let r = Report::new(Preset::Desk, Params::preset(Preset::Desk), rows);
        assert_eq!(r.summary, Summary { pass: 1, fail: 1, not_applicable: 1, total: 3 });
        assert!(!r.passed());
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, ["tool", "version", "preset", "params", "rows", "summary"]);
        let csv = String::from_utf8(r.render(Format::Csv)).unwrap();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("suite,graph,check,verdict,value,bound,detail"));
        assert_eq!(lines.count(), 3);
    }
}

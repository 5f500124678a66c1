//! Text serialization of analysis results.
//!
//! Structured format (schema version 1):
//!
//! ```text
//! # cointoss-report
//! schema_version = 1
//! [config]
//! command = bias
//! ...
//! [result]
//! p_win_exact = 0.750000000000
//! ...
//! [table]
//! col_a,col_b
//! 1,2
//! ```
//!
//! Sections appear in insertion order; keys are unique within a section. The
//! `[table]` section is present only for outputs with rows (scans, Monte
//! Carlo summaries, optimizations) and holds comma-separated values with a
//! header row.
//!
//! Tabular format: the same key-value pairs as `# section.key = value`
//! comment lines, then the table as plain CSV. Without a table, the pairs are
//! emitted as CSV rows `section,key,value`.
//!
//! Probabilities are written with 12 significant digits.

use std::fmt::Write as _;

use super::exact::BiasReport;
use super::montecarlo::{Frequency, MonteCarloReport};
use super::optimize::OptimizationResult;
use super::sensitivity::SensitivityPoint;
use crate::protocol::format_probability;
use crate::scalar::Scalar;

pub const SCHEMA_VERSION: u32 = 1;
pub const REPORT_HEADER: &str = "# cointoss-report";

pub fn prob<T: Scalar>(x: T) -> String {
    format_probability(x.to_f64_lossy())
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Section {
    pub name: String,
    pub entries: Vec<(String, String)>,
}

impl Section {
    pub fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.entries
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            out.push_str(&row.join(","));
            out.push('\n');
        }
        out
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub sections: Vec<Section>,
    pub table: Option<Table>,
}

impl Report {
    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    pub fn to_structured(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{REPORT_HEADER}");
        let _ = writeln!(out, "schema_version = {SCHEMA_VERSION}");
        for s in &self.sections {
            let _ = writeln!(out, "[{}]", s.name);
            for (k, v) in &s.entries {
                let _ = writeln!(out, "{k} = {v}");
            }
        }
        if let Some(t) = &self.table {
            out.push_str("[table]\n");
            out.push_str(&t.to_csv());
        }
        out
    }

    pub fn to_tabular(&self) -> String {
        let mut out = String::new();
        match &self.table {
            Some(t) => {
                let _ = writeln!(out, "# schema_version = {SCHEMA_VERSION}");
                for s in &self.sections {
                    for (k, v) in &s.entries {
                        let _ = writeln!(out, "# {}.{k} = {v}", s.name);
                    }
                }
                out.push_str(&t.to_csv());
            }
            None => {
                out.push_str("section,key,value\n");
                let _ = writeln!(out, "meta,schema_version,{SCHEMA_VERSION}");
                for s in &self.sections {
                    for (k, v) in &s.entries {
                        let _ = writeln!(out, "{},{k},{v}", s.name);
                    }
                }
            }
        }
        out
    }

    /// Parses the structured form back into sections and table.
    pub fn parse_structured(text: &str) -> Option<Report> {
        let mut lines = text.lines();
        if lines.next()? != REPORT_HEADER {
            return None;
        }
        let version = lines.next()?.strip_prefix("schema_version = ")?;
        if version.parse::<u32>().ok()? != SCHEMA_VERSION {
            return None;
        }
        let mut report = Report::default();
        let mut in_table = false;
        for line in lines {
            if line == "[table]" {
                in_table = true;
                report.table = Some(Table::default());
                continue;
            }
            if in_table {
                let cells: Vec<String> = line.split(',').map(str::to_string).collect();
                let table = report.table.as_mut()?;
                if table.columns.is_empty() {
                    table.columns = cells;
                } else {
                    table.rows.push(cells);
                }
            } else if let Some(name) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
                report.sections.push(Section::new(name));
            } else {
                let (k, v) = line.split_once(" = ")?;
                report.sections.last_mut()?.push(k, v);
            }
        }
        Some(report)
    }
}

impl<T: Scalar> BiasReport<T> {
    pub fn to_section(&self) -> Section {
        let mut s = Section::new("result");
        s.push(
            "party",
            match self.party {
                crate::qstate::Party::Alice => "A",
                crate::qstate::Party::Bob => "B",
            },
        )
        .push("target", self.target)
        .push("p_win_exact", prob(self.p_win_exact))
        .push("p_abort_exact", prob(self.p_abort_exact))
        .push("epsilon", prob(self.epsilon))
        .push("analytic_bound", prob(self.analytic_bound))
        .push("kitaev_reference", prob(self.kitaev_reference))
        .push("within_bound", self.respects_bound());
        s
    }
}

impl<T: Scalar> OptimizationResult<T> {
    pub fn to_section(&self) -> Section {
        let mut s = Section::new("result");
        s.push("value", prob(self.value))
            .push("grid_value", prob(self.grid_value))
            .push("a00", prob(self.argmax.a00))
            .push("a01", prob(self.argmax.a01))
            .push("a10", prob(self.argmax.a10))
            .push("a11", prob(self.argmax.a11))
            .push("grid_resolution", self.grid_resolution)
            .push(
                "refinement_tolerance",
                format!("{:e}", self.refinement_tolerance.to_f64_lossy()),
            )
            .push("evaluations", self.evaluations);
        s
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&[
            "grid_resolution",
            "value",
            "grid_value",
            "a00",
            "a01",
            "a10",
            "a11",
        ]);
        let a = self.argmax;
        t.push_row(vec![
            self.grid_resolution.to_string(),
            prob(self.value),
            prob(self.grid_value),
            prob(a.a00),
            prob(a.a01),
            prob(a.a10),
            prob(a.a11),
        ]);
        t
    }
}

fn push_frequency(s: &mut Section, name: &str, f: Frequency) {
    s.push(&format!("{name}_frequency"), prob(f.value))
        .push(&format!("{name}_standard_error"), prob(f.standard_error));
}

impl MonteCarloReport {
    pub fn to_section(&self) -> Section {
        let mut s = Section::new("montecarlo");
        s.push("trials", self.trials)
            .push("root_seed", self.root_seed)
            .push("heads", self.heads)
            .push("tails", self.tails)
            .push("aborts", self.aborts)
            .push("wins", self.wins());
        push_frequency(&mut s, "heads", self.heads_frequency());
        push_frequency(&mut s, "win", self.win_frequency());
        push_frequency(&mut s, "abort", self.abort_frequency());
        s
    }

    pub fn to_table(&self) -> Table {
        let mut t = Table::new(&[
            "trials",
            "heads",
            "tails",
            "aborts",
            "win_frequency",
            "win_standard_error",
            "abort_frequency",
            "abort_standard_error",
        ]);
        let (w, a) = (self.win_frequency(), self.abort_frequency());
        t.push_row(vec![
            self.trials.to_string(),
            self.heads.to_string(),
            self.tails.to_string(),
            self.aborts.to_string(),
            prob(w.value),
            prob(w.standard_error),
            prob(a.value),
            prob(a.standard_error),
        ]);
        t
    }
}

pub fn scan_table<T: Scalar>(points: &[SensitivityPoint<T>]) -> Table {
    let mut t = Table::new(&[
        "step", "t", "a00", "a01", "a10", "a11", "p_win", "p_lose", "p_detect",
    ]);
    for (i, p) in points.iter().enumerate() {
        let c = p.coefficients;
        t.push_row(vec![
            i.to_string(),
            prob(p.t),
            prob(c.a00),
            prob(c.a01),
            prob(c.a10),
            prob(c.a11),
            prob(p.p_win),
            prob(p.p_lose),
            prob(p.p_detect),
        ]);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::exact_win_probability;
    use crate::qstate::Bit;
    use crate::strategies::{optimal_alice, Scenario};

    fn sample() -> Report {
        let mut config = Section::new("config");
        config.push("command", "bias").push("seed", 0);
        let r = exact_win_probability(
            &Scenario::CheatingAlice(optimal_alice::<f64>(Bit::Zero)),
            Bit::Zero,
        )
        .unwrap();
        Report {
            sections: vec![config, r.to_section()],
            table: None,
        }
    }

    #[test]
    fn structured_round_trip() {
        let mut report = sample();
        let text = report.to_structured();
        assert!(text.contains("p_win_exact = 0.750000000000"));
        assert!(text.contains("kitaev_reference = 0.207106781187"));
        assert_eq!(Report::parse_structured(&text).unwrap(), report);

        let mut table = Table::new(&["a", "b"]);
        table.push_row(vec!["1".into(), "2".into()]);
        report.table = Some(table);
        assert_eq!(
            Report::parse_structured(&report.to_structured()).unwrap(),
            report
        );
    }

    #[test]
    fn tabular_forms() {
        let report = sample();
        let csv = report.to_tabular();
        assert!(csv.starts_with("section,key,value\n"));
        assert!(csv.contains("result,p_win_exact,0.750000000000"));
    }
}

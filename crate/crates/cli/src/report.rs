//! The result of one command, as a table for people or a record for programs.

use std::fmt::Write as _;

use hfk_core::format::to_lines;
use hfk_core::GradedGroup;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Field {
    pub name: String,
    pub value: String,
}

/// One group of a result; `alexander` is set for groups of a knot at a filtration level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupEntry {
    pub section: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alexander: Option<i64>,
    pub poincare: String,
    pub group: GradedGroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Check {
    pub subject: String,
    pub name: String,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<Field>,
    #[serde(default)]
    pub groups: Vec<GroupEntry>,
    #[serde(default)]
    pub values: Vec<Field>,
    #[serde(default)]
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            ..Report::default()
        }
    }

    pub fn input(&mut self, name: &str, value: impl ToString) {
        self.inputs.push(Field {
            name: name.into(),
            value: value.to_string(),
        });
    }

    pub fn value(&mut self, name: &str, value: impl ToString) {
        self.values.push(Field {
            name: name.into(),
            value: value.to_string(),
        });
    }

    pub fn group(&mut self, section: &str, alexander: Option<i64>, group: &GradedGroup) {
        self.groups.push(GroupEntry {
            section: section.into(),
            alexander,
            poincare: group.poincare_string(),
            group: group.clone(),
        });
    }

    pub fn check(&mut self, subject: &str, name: &str, outcome: Result<(), String>) {
        let (passed, detail) = match outcome {
            Ok(()) => (true, String::new()),
            Err(d) => (false, d),
        };
        self.checks.push(Check {
            subject: subject.into(),
            name: name.into(),
            passed,
            detail,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn to_record(&self) -> String {
        to_lines(self)
    }

    pub fn from_record(text: &str) -> serde_json::Result<Report> {
        serde_json::from_str(text)
    }

    pub fn to_table(&self) -> String {
        let mut out = String::new();
        writeln!(out, "$ {}", self.command).unwrap();
        write_fields(&mut out, "inputs", &self.inputs);
        if !self.groups.is_empty() {
            out.push_str("results:\n");
            let width = self.groups.iter().map(|g| g.poincare.len()).max().unwrap_or(0);
            let mut section = None;
            for g in &self.groups {
                if section != Some(&g.section) {
                    writeln!(out, "  {}", g.section).unwrap();
                    section = Some(&g.section);
                }
                let label = g.alexander.map_or(String::new(), |a| format!("A = {a:>2}  "));
                writeln!(out, "    {label}{:<width$}  {}", g.poincare, g.group).unwrap();
            }
        }
        write_fields(&mut out, "values", &self.values);
        if !self.checks.is_empty() {
            let failed = self.checks.iter().filter(|c| !c.passed).count();
            writeln!(out, "checks: {} passed, {failed} failed", self.checks.len() - failed).unwrap();
            for c in &self.checks {
                let mark = if c.passed { "PASS" } else { "FAIL" };
                write!(out, "  {mark}  {}: {}", c.subject, c.name).unwrap();
                if !c.detail.is_empty() {
                    write!(out, " ({})", c.detail).unwrap();
                }
                out.push('\n');
            }
        }
        out
    }
}

fn write_fields(out: &mut String, title: &str, fields: &[Field]) {
    if fields.is_empty() {
        return;
    }
    writeln!(out, "{title}:").unwrap();
    let width = fields.iter().map(|f| f.name.len()).max().unwrap_or(0);
    for f in fields {
        writeln!(out, "  {:<width$}  {}", f.name, f.value).unwrap();
    }
}

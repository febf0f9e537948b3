//! Versioned JSON reports and their plain-text rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use lockit_core::{ElemSet, Report};
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub source: String,
    pub sha256: String,
}

impl Input {
    pub fn new(source: impl Into<String>, bytes: &[u8]) -> Self {
        Input {
            source: source.into(),
            sha256: hex::encode(Sha256::digest(bytes)),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOut {
    pub name: String,
    pub cases: u64,
    pub failed: u64,
    pub passed: bool,
    pub details: Vec<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Section {
    pub subject: String,
    pub facts: BTreeMap<String, Value>,
    pub notes: Vec<String>,
    pub checks: Vec<CheckOut>,
}

impl Section {
    pub fn new(subject: impl Into<String>) -> Self {
        Section {
            subject: subject.into(),
            ..Default::default()
        }
    }

    pub fn fact(&mut self, key: &str, v: impl Serialize) {
        self.facts.insert(key.into(), serde_json::to_value(v).expect("serializable fact"));
    }

    pub fn add_report(&mut self, r: &Report) {
        for c in &r.checks {
            self.checks.push(CheckOut {
                name: c.name.clone(),
                cases: c.cases,
                failed: c.failed,
                passed: c.passed(),
                details: c.details.clone(),
            });
        }
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Document {
    pub schema: u32,
    pub tool: Tool,
    pub input: Input,
    pub command: String,
    pub sections: Vec<Section>,
    pub ok: bool,
}

impl Document {
    pub fn new(command: &str, input: Input, sections: Vec<Section>) -> Self {
        let ok = sections.iter().all(Section::ok);
        Document {
            schema: SCHEMA,
            tool: Tool {
                name: env!("CARGO_PKG_NAME"),
                version: env!("CARGO_PKG_VERSION"),
            },
            input,
            command: command.into(),
            sections,
            ok,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable report");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{} {} {} {} (sha256 {})",
            self.tool.name,
            self.tool.version,
            self.command,
            self.input.source,
            &self.input.sha256[..16]
        )
        .unwrap();
        for s in &self.sections {
            writeln!(out, "== {}", s.subject).unwrap();
            for (k, v) in &s.facts {
                writeln!(out, "  {k}: {}", compact(v)).unwrap();
            }
            for n in &s.notes {
                writeln!(out, "  note: {n}").unwrap();
            }
            for c in &s.checks {
                if c.passed {
                    writeln!(out, "  PASS {} [{}]", c.name, c.cases).unwrap();
                } else {
                    writeln!(out, "  FAIL {} [{}/{}]", c.name, c.failed, c.cases).unwrap();
                    for d in &c.details {
                        writeln!(out, "       {d}").unwrap();
                    }
                }
            }
        }
        writeln!(out, "result: {}", if self.ok { "PASS" } else { "FAIL" }).unwrap();
        out
    }
}

fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Sorted element ids.
pub fn ids(set: &ElemSet) -> Vec<usize> {
    set.to_vec()
}

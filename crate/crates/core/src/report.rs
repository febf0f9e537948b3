//! Named pass/fail checks with bounded failure lists.

use alloc::string::String;
use alloc::vec::Vec;

const MAX_DETAILS: usize = 16;

/// One named property tested over a number of cases.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub cases: u64,
    pub failed: u64,
    pub details: Vec<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.failed == 0
    }
}

/// An ordered list of checks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    fn slot(&mut self, name: &str) -> &mut Check {
        if let Some(i) = self.checks.iter().position(|c| c.name == name) {
            &mut self.checks[i]
        } else {
            self.checks.push(Check {
                name: name.into(),
                ..Default::default()
            });
            self.checks.last_mut().unwrap()
        }
    }

    /// Records one case of `name`; `detail` is only built on failure.
    pub fn case(&mut self, name: &str, ok: bool, detail: impl FnOnce() -> String) {
        let c = self.slot(name);
        c.cases += 1;
        if !ok {
            c.failed += 1;
            if c.details.len() < MAX_DETAILS {
                c.details.push(detail());
            }
        }
    }

    /// Registers `name` with no cases, so that it shows up even if vacuous.
    pub fn touch(&mut self, name: &str) {
        self.slot(name);
    }

    pub fn fail(&mut self, name: &str, detail: String) {
        self.case(name, false, || detail);
    }

    pub fn merge(&mut self, prefix: &str, other: Report) {
        for c in other.checks {
            let name = if prefix.is_empty() {
                c.name
            } else {
                alloc::format!("{prefix}/{}", c.name)
            };
            let s = self.slot(&name);
            s.cases += c.cases;
            s.failed += c.failed;
            for d in c.details {
                if s.details.len() < MAX_DETAILS {
                    s.details.push(d);
                }
            }
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed())
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

//! Pass/fail reports shared by all verification suites.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn push(&mut self, id: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { id: id.into(), passed, detail: detail.into() });
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn len(&self) -> usize {
        self.checks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.checks.is_empty()
    }

    /// Orders checks by id, keeping the original order among equal ids.
    pub fn sorted(mut self) -> Self {
        self.checks.sort_by(|a, b| a.id.cmp(&b.id));
        self
    }

    /// `check_id,status,detail` rows with a header line.
    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["check_id", "status", "detail"]).expect("in-memory write");
        for c in &self.checks {
            w.write_record([c.id.as_str(), status(c), c.detail.as_str()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 input")
    }
}

fn status(c: &Check) -> &'static str {
    if c.passed {
        "PASS"
    } else {
        "FAIL"
    }
}

impl fmt::Display for Report {
    /// One line per check: `PASS id detail` or `FAIL(detail) id`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.passed {
                if c.detail.is_empty() {
                    writeln!(f, "PASS {}", c.id)?;
                } else {
                    writeln!(f, "PASS {} {}", c.id, c.detail)?;
                }
            } else {
                writeln!(f, "FAIL({}) {}", c.detail, c.id)?;
            }
        }
        Ok(())
    }
}

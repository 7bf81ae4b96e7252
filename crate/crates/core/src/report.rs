//! Verification reports: named checks with pass/fail/skipped status, optional
//! witnesses in canonical text, and per-phase timings.

use std::fmt;
use std::time::Instant;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub phase: String,
    pub seconds: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    /// Family spec or command descriptor.
    pub subject: String,
    pub checks: Vec<Check>,
    pub timings: Vec<Timing>,
}

impl VerificationReport {
    pub fn new(subject: impl Into<String>) -> Self {
        VerificationReport { subject: subject.into(), checks: Vec::new(), timings: Vec::new() }
    }

    pub fn add(&mut self, name: impl Into<String>, status: Status) -> &mut Check {
        self.checks.push(Check { name: name.into(), status, witness: None, detail: None });
        self.checks.last_mut().expect("just pushed")
    }

    /// Records a pass when `ok`, a fail otherwise.
    pub fn check(&mut self, name: impl Into<String>, ok: bool) -> &mut Check {
        self.add(name, if ok { Status::Pass } else { Status::Fail })
    }

    pub fn skip(&mut self, name: impl Into<String>, reason: impl Into<String>) {
        self.add(name, Status::Skipped).detail = Some(reason.into());
    }

    /// Runs `f` and records its wall-clock time under `phase`.
    pub fn timed<T>(&mut self, phase: &str, f: impl FnOnce(&mut Self) -> T) -> T {
        let start = Instant::now();
        let out = f(self);
        self.timings.push(Timing { phase: phase.to_string(), seconds: start.elapsed().as_secs_f64() });
        out
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
        self.timings.extend(other.timings);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

impl Check {
    pub fn witness(&mut self, w: impl Into<String>) -> &mut Self {
        self.witness = Some(w.into());
        self
    }

    pub fn detail(&mut self, d: impl Into<String>) -> &mut Self {
        self.detail = Some(d.into());
        self
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for c in &self.checks {
            write!(f, "  [{}] {}", c.status, c.name)?;
            if let Some(d) = &c.detail {
                write!(f, ": {d}")?;
            }
            writeln!(f)?;
            if let Some(w) = &c.witness {
                for line in w.lines() {
                    writeln!(f, "      {line}")?;
                }
            }
        }
        writeln!(f, "  overall: {}", if self.passed() { "pass" } else { "fail" })
    }
}

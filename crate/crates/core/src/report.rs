//! Deterministic check reports.
//!
//! A report collects named checks with verdicts and renders to a stable
//! byte-identical text form; anything nondeterministic (timings) belongs
//! on stderr, never in the report body.

use std::fmt;

/// Outcome of one check, ordered by severity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    /// Budget exhaustion or otherwise not decided.
    Unknown,
    Fail,
    /// An observation contradicting a proved statement: always an
    /// implementation bug, never new mathematics.
    Falsification,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => write!(f, "pass"),
            Verdict::Unknown => write!(f, "unknown"),
            Verdict::Fail => write!(f, "fail"),
            Verdict::Falsification => write!(f, "FALSIFICATION"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub verdict: Verdict,
    /// Supporting lines: instance counts, counterexample dumps on
    /// failure, skip reasons on unknown.
    pub details: Vec<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, verdict: Verdict) -> Check {
        Check {
            name: name.into(),
            verdict,
            details: Vec::new(),
        }
    }

    pub fn detail(mut self, line: impl Into<String>) -> Check {
        self.details.push(line.into());
        self
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub config_lines: Vec<String>,
    pub checks: Vec<Check>,
    /// Free-form result sections (minor bases, Betti tables, …) printed
    /// between the config echo and the checks.
    pub body: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            ..Report::default()
        }
    }

    pub fn config(&mut self, key: &str, value: impl fmt::Display) {
        self.config_lines.push(format!("{key}: {value}"));
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn section(&mut self, text: impl Into<String>) {
        self.body.push(text.into());
    }

    /// Worst verdict across all checks; a report with no checks passes.
    pub fn overall(&self) -> Verdict {
        self.checks
            .iter()
            .map(|c| c.verdict)
            .max()
            .unwrap_or(Verdict::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        match self.overall() {
            Verdict::Pass => 0,
            Verdict::Fail | Verdict::Falsification => 1,
            Verdict::Unknown => 2,
        }
    }

    /// Stable text rendering. Identical inputs and config produce
    /// identical bytes.
    pub fn render(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        for line in &self.config_lines {
            out.push_str(line);
            out.push('\n');
        }
        for section in &self.body {
            out.push('\n');
            out.push_str(section);
            if !section.ends_with('\n') {
                out.push('\n');
            }
        }
        if !self.checks.is_empty() {
            out.push('\n');
            for check in &self.checks {
                out.push_str(&format!("check {}: {}\n", check.name, check.verdict));
                for d in &check.details {
                    out.push_str(&format!("  {d}\n"));
                }
            }
            if self.overall() == Verdict::Falsification {
                out.push_str(
                    "\nFALSIFICATION indicates an implementation bug, not a mathematical event.\n",
                );
            }
            out.push_str(&format!("\noverall: {}\n", self.overall()));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn severity_order_and_exit_codes() {
        assert!(Verdict::Pass < Verdict::Unknown);
        assert!(Verdict::Unknown < Verdict::Fail);
        assert!(Verdict::Fail < Verdict::Falsification);

        let mut r = Report::new("verify all");
        assert_eq!(r.exit_code(), 0);
        r.push(Check::new("a", Verdict::Pass));
        r.push(Check::new("b", Verdict::Unknown));
        assert_eq!(r.overall(), Verdict::Unknown);
        assert_eq!(r.exit_code(), 2);
        r.push(Check::new("c", Verdict::Fail));
        assert_eq!(r.exit_code(), 1);
        r.push(Check::new("d", Verdict::Falsification));
        assert_eq!(r.overall(), Verdict::Falsification);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn rendering_is_stable() {
        let mut r = Report::new("verify prop1");
        r.config("seed", 42);
        r.push(Check::new("prop1/ranks", Verdict::Pass).detail("200 instances"));
        let a = r.render();
        let b = r.render();
        assert_eq!(a, b);
        assert!(a.starts_with("command: verify prop1\nseed: 42\n"));
        assert!(a.contains("check prop1/ranks: pass\n  200 instances\n"));
        assert!(a.ends_with("overall: pass\n"));
    }
}

//! A small runner for acceptance criteria. Each criterion prints exactly one
//! `PASS`/`FAIL` line; exceeding the runtime budget counts as a failure.

use std::time::{Duration, Instant};

use dunkl::verify::CheckReport;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub passed: bool,
    /// Short summary shown after the verdict.
    pub detail: String,
}

impl Outcome {
    pub fn pass(detail: impl Into<String>) -> Outcome {
        Outcome { passed: true, detail: detail.into() }
    }

    pub fn fail(detail: impl Into<String>) -> Outcome {
        Outcome { passed: false, detail: detail.into() }
    }

    /// Passes when every report passed. The detail is the case count, or the
    /// first counterexample.
    pub fn from_reports(reports: &[CheckReport]) -> Outcome {
        let cases: usize = reports.iter().map(|r| r.cases).sum();
        match reports.iter().find(|r| !r.passed) {
            None if reports.is_empty() => Outcome::fail("no checks ran"),
            None => Outcome::pass(format!("{} checks, {cases} cases", reports.len())),
            Some(r) => {
                let ce = r
                    .counterexample
                    .as_ref()
                    .map(|c| format!(": n={} {} lhs={} rhs={}", c.n, c.inputs, c.lhs, c.rhs))
                    .unwrap_or_default();
                Outcome::fail(format!("{} failed{ce}", r.id))
            }
        }
    }

    /// Combines outcomes; all must pass.
    pub fn all(parts: impl IntoIterator<Item = Outcome>) -> Outcome {
        let parts: Vec<Outcome> = parts.into_iter().collect();
        let passed = !parts.is_empty() && parts.iter().all(|o| o.passed);
        let detail = parts.iter().map(|o| o.detail.as_str()).collect::<Vec<_>>().join("; ");
        Outcome { passed, detail }
    }
}

/// Result of one timed criterion.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub number: usize,
    pub title: &'static str,
    pub outcome: Outcome,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        self.outcome.passed && self.within_budget()
    }

    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    pub fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let over = if self.within_budget() { "" } else { " OVER BUDGET" };
        format!(
            "criterion {:>2} {status} {} [{:.2?} / {:?}{over}] {}",
            self.number, self.title, self.elapsed, self.budget, self.outcome.detail
        )
    }
}

/// Runs `f`, timing it against `budget`, and prints the verdict line.
pub fn run(number: usize, title: &'static str, budget: Duration, f: impl FnOnce() -> Outcome) -> Verdict {
    let start = Instant::now();
    let outcome = f();
    let v = Verdict { number, title, outcome, elapsed: start.elapsed(), budget };
    println!("{}", v.line());
    v
}

pub fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub fn mins(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(id: &str, passed: bool) -> CheckReport {
        CheckReport { id: id.into(), passed, cases: 2, counterexample: None }
    }

    #[test]
    fn reports_combine() {
        assert!(Outcome::from_reports(&[report("a", true), report("b", true)]).passed);
        let o = Outcome::from_reports(&[report("a", true), report("b", false)]);
        assert!(!o.passed);
        assert!(o.detail.starts_with("b failed"));
        assert!(!Outcome::from_reports(&[]).passed);
    }

    #[test]
    fn budget_overrun_fails() {
        let v = Verdict {
            number: 1,
            title: "x",
            outcome: Outcome::pass(""),
            elapsed: secs(2),
            budget: secs(1),
        };
        assert!(!v.passed());
        assert!(v.line().contains("OVER BUDGET"));
    }

    #[test]
    fn all_needs_every_part() {
        assert!(Outcome::all([Outcome::pass("a"), Outcome::pass("b")]).passed);
        assert!(!Outcome::all([Outcome::pass("a"), Outcome::fail("b")]).passed);
        assert!(!Outcome::all(Vec::new()).passed);
    }
}

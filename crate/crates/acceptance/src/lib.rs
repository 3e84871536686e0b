//! Bookkeeping for the acceptance run. A criterion records named checks; the
//! suite prints one `PASS` or `FAIL` line per criterion and turns the tally
//! into the process exit code.

use std::fmt::Display;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

#[derive(Debug, Clone)]
struct Check {
    pass: bool,
    text: String,
}

/// Checks collected while evaluating one criterion.
#[derive(Debug, Default)]
pub struct Checks {
    items: Vec<Check>,
}

impl Checks {
    pub fn check(&mut self, pass: bool, text: impl Into<String>) -> bool {
        self.items.push(Check {
            pass,
            text: text.into(),
        });
        pass
    }

    /// `|value - target| <= tol`
    pub fn within(&mut self, label: &str, value: f64, target: f64, tol: f64) -> bool {
        let pass = (value - target).abs() <= tol;
        self.check(pass, format!("{label} = {value:.10} (target {target} ± {tol:e})"))
    }

    /// `value <= bound`
    pub fn at_most(&mut self, label: &str, value: f64, bound: f64) -> bool {
        self.check(value <= bound, format!("{label} = {value:.3e} <= {bound:e}"))
    }

    /// `value >= bound`
    pub fn at_least(&mut self, label: &str, value: f64, bound: f64) -> bool {
        self.check(value >= bound, format!("{label} = {value:.10} >= {bound:.10}"))
    }

    pub fn passed(&self) -> bool {
        !self.items.is_empty() && self.items.iter().all(|c| c.pass)
    }

    /// Failing checks first, each marked, then the passing ones.
    pub fn summary(&self) -> String {
        let failed = self.items.iter().filter(|c| !c.pass).map(|c| format!("NOT {}", c.text));
        let passed = self.items.iter().filter(|c| c.pass).map(|c| c.text.clone());
        failed.chain(passed).collect::<Vec<_>>().join("; ")
    }
}

#[derive(Debug, Default)]
pub struct Suite {
    outcomes: Vec<(u32, bool)>,
}

impl Suite {
    pub fn new() -> Self {
        Self::default()
    }

    /// Runs one criterion. An error or a panic counts as a failure.
    pub fn run<E, F>(&mut self, id: u32, title: &str, body: F)
    where
        E: Display,
        F: FnOnce(&mut Checks) -> Result<(), E>,
    {
        let t0 = Instant::now();
        let mut checks = Checks::default();
        let outcome = panic::catch_unwind(AssertUnwindSafe(|| body(&mut checks)));
        let (pass, detail) = match outcome {
            Ok(Ok(())) => (checks.passed(), checks.summary()),
            Ok(Err(e)) => (false, format!("error: {e}; {}", checks.summary())),
            Err(p) => {
                let msg = p
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_else(|| "panic".into());
                (false, format!("panicked: {msg}"))
            }
        };
        println!(
            "criterion {id:>2} {} {title} [{:.2} s]: {detail}",
            if pass { "PASS" } else { "FAIL" },
            t0.elapsed().as_secs_f64()
        );
        self.outcomes.push((id, pass));
    }

    pub fn failed(&self) -> Vec<u32> {
        self.outcomes.iter().filter(|(_, p)| !p).map(|(id, _)| *id).collect()
    }

    pub fn finish(self) -> ExitCode {
        let failed = self.failed();
        let total = self.outcomes.len();
        println!("acceptance: {}/{total} criteria passed", total - failed.len());
        if failed.is_empty() {
            ExitCode::SUCCESS
        } else {
            println!("acceptance: failed criteria {failed:?}");
            ExitCode::FAILURE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn summary_lists_failures_first() {
        let mut c = Checks::default();
        c.at_most("a", 1.0, 2.0);
        c.within("b", 1.0, 3.0, 0.5);
        assert!(!c.passed());
        assert!(c.summary().starts_with("NOT b = "));
    }

    #[test]
    fn empty_criterion_does_not_pass() {
        assert!(!Checks::default().passed());
    }

    #[test]
    fn suite_counts_errors_and_panics() {
        let mut s = Suite::new();
        s.run(1, "ok", |c| {
            c.check(true, "fine");
            Ok::<_, String>(())
        });
        s.run(2, "err", |_| Err("boom".to_string()));
        s.run(3, "panic", |_| -> Result<(), String> { panic!("oops") });
        assert_eq!(s.failed(), vec![2, 3]);
    }
}

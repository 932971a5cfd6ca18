//! Bookkeeping for the acceptance run: each criterion collects named
//! checks and prints one summary line.

use std::fmt::Write;
use std::time::{Duration, Instant};

pub struct Criterion {
    number: u32,
    title: &'static str,
    start: Instant,
    failures: Vec<String>,
    checks: usize,
}

impl Criterion {
    pub fn new(number: u32, title: &'static str) -> Self {
        Criterion { number, title, start: Instant::now(), failures: Vec::new(), checks: 0 }
    }

    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    /// Record an `Err` as a failed check and pass `Ok` values through.
    pub fn ok<T, E: std::fmt::Debug>(&mut self, r: Result<T, E>, what: &str) -> Option<T> {
        match r {
            Ok(v) => Some(v),
            Err(e) => {
                self.checks += 1;
                self.failures.push(format!("{what}: {e:?}"));
                None
            }
        }
    }

    pub fn elapsed(&self) -> Duration {
        self.start.elapsed()
    }

    /// Fails the criterion if it has run longer than `limit`.
    pub fn within(&mut self, limit: Duration) {
        let t = self.elapsed();
        self.check(t < limit, || format!("took {:.2}s, limit {:.0}s", t.as_secs_f64(), limit.as_secs_f64()));
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    /// The summary line, followed by one indented line per failure.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "criterion {:>2}: {} {} ({} checks, {:.2}s)",
            self.number,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.checks,
            self.elapsed().as_secs_f64()
        );
        for f in &self.failures {
            let _ = write!(s, "\n    {f}");
        }
        s
    }
}

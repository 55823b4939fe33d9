//! Runner for numbered acceptance criteria.
//!
//! Each criterion prints exactly one line, `PASS` or `FAIL`, with a short
//! detail string and its wall-clock time.

use std::time::{Duration, Instant};

pub type Check = fn() -> Result<String, String>;

pub struct Criterion {
    pub id: u32,
    pub title: &'static str,
    /// Upper bound on wall-clock time, if the criterion has one.
    pub limit: Option<Duration>,
    pub check: Check,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub id: u32,
    pub passed: bool,
    pub line: String,
}

pub fn evaluate(c: &Criterion) -> Outcome {
    let start = Instant::now();
    let result = std::panic::catch_unwind(c.check).unwrap_or_else(|_| Err("panicked".to_string()));
    let elapsed = start.elapsed();
    let result = match (result, c.limit) {
        (Ok(_), Some(limit)) if elapsed > limit => Err(format!(
            "took {} ms, limit {} ms",
            elapsed.as_millis(),
            limit.as_millis()
        )),
        (r, _) => r,
    };
    let (passed, detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    Outcome {
        id: c.id,
        passed,
        line: format!(
            "criterion {:>2}  {}  {}  [{} ms]  {}",
            c.id,
            if passed { "PASS" } else { "FAIL" },
            c.title,
            elapsed.as_millis(),
            detail
        ),
    }
}

/// Evaluates every criterion in order, printing one line each. Returns
/// whether all passed.
pub fn run_all(criteria: &[Criterion]) -> bool {
    let mut all = true;
    for c in criteria {
        let o = evaluate(c);
        println!("{}", o.line);
        all &= o.passed;
    }
    all
}

/// `Err` with `msg` unless `cond` holds.
pub fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

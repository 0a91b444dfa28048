//! Helpers for the acceptance report: in-process CLI calls and the per-criterion lines.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

/// Exit code and standard output of one `ucslab` invocation, with stderr chatter off.
pub fn ucslab(args: &[&str]) -> (u8, Vec<u8>) {
    let mut out = Vec::new();
    let argv = std::iter::once("ucslab").chain(args.iter().copied()).chain(["--quiet"]);
    let code = ucslab_cli::run(argv, &mut out);
    (code, out)
}

/// Same as [`ucslab`], also returning the wall time.
pub fn timed(args: &[&str]) -> (u8, Vec<u8>, Duration) {
    let t0 = Instant::now();
    let (code, out) = ucslab(args);
    (code, out, t0.elapsed())
}

pub struct Verdict {
    pub passed: bool,
    pub detail: String,
}

impl Verdict {
    pub fn new(passed: bool, detail: impl Into<String>) -> Self {
        Verdict { passed, detail: detail.into() }
    }
}

#[derive(Default)]
pub struct Report {
    lines: Vec<(u32, &'static str, Verdict)>,
}

impl Report {
    /// Runs one criterion; a panic inside counts as a failure with the panic message.
    pub fn check(&mut self, id: u32, name: &'static str, f: impl FnOnce() -> Verdict) {
        let t0 = Instant::now();
        let v = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Verdict::new(false, format!("panicked: {msg}"))
        });
        let tag = if v.passed { "PASS" } else { "FAIL" };
        println!("{tag} {id} {name} ({:.1}s): {}", t0.elapsed().as_secs_f64(), v.detail);
        self.lines.push((id, name, v));
    }

    pub fn failures(&self) -> usize {
        self.lines.iter().filter(|l| !l.2.passed).count()
    }

    pub fn total(&self) -> usize {
        self.lines.len()
    }
}

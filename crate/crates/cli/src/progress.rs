//! Periodic progress lines on standard error while a scan runs.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Arc;
use std::thread::JoinHandle;
use std::time::{Duration, Instant};

pub struct Progress {
    stop: Arc<AtomicBool>,
    handle: Option<JoinHandle<()>>,
}

impl Progress {
    /// `counter` counts finished units out of `total`.
    pub fn start(label: String, counter: Arc<AtomicU64>, total: u64, interval: Duration, enabled: bool) -> Self {
        let stop = Arc::new(AtomicBool::new(false));
        if !enabled || interval.is_zero() {
            return Progress { stop, handle: None };
        }
        let flag = Arc::clone(&stop);
        let handle = std::thread::spawn(move || {
            let t0 = Instant::now();
            let mut next = interval;
            while !flag.load(Ordering::Relaxed) {
                std::thread::sleep(Duration::from_millis(50));
                if t0.elapsed() >= next {
                    let done = counter.load(Ordering::Relaxed);
                    eprintln!(
                        "ucslab: {label}: {done}/{total} units ({:.1}%), {:.0}s",
                        100.0 * done as f64 / total.max(1) as f64,
                        t0.elapsed().as_secs_f64()
                    );
                    next += interval;
                }
            }
        });
        Progress { stop, handle: Some(handle) }
    }
}

impl Drop for Progress {
    fn drop(&mut self) {
        self.stop.store(true, Ordering::Relaxed);
        if let Some(h) = self.handle.take() {
            let _ = h.join();
        }
    }
}

//! Parallel execution of surveys over the family stream.
//!
//! The stream is cut into a fixed number of units (independent of the worker count). Units
//! are processed in batches; inside a batch workers take units in any order, but the
//! per-unit tallies are merged strictly by unit index. After each batch the running state
//! can be written to a checkpoint, and a later run with the same checkpoint path picks up
//! from the first unprocessed unit.

use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::survey::{Evaluator, ScanMode, Tally};
use crate::analysis::FamilyClassSelector;
use crate::enumerate::{check_exhaustive, Checkpoint, EnumerationCursor, PermTable, Strategy};
use crate::error::{Error, Result};

/// Units per stream: the smallest split depth giving at least this many.
const TARGET_UNITS: u64 = 512;

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub mode: ScanMode,
    pub workers: usize,
    /// Hard stop on `n` for exhaustive runs.
    pub max_n: u32,
    /// Units per batch; a checkpoint is written after every batch.
    pub batch_units: u64,
    pub checkpoint: Option<PathBuf>,
    /// Stop (leaving the checkpoint in place) after this many batches of this invocation.
    pub halt_after_batches: Option<u64>,
    /// Incremented once per finished unit.
    pub progress: Option<Arc<AtomicU64>>,
}

impl ScanConfig {
    pub fn for_n(n: u32) -> Self {
        ScanConfig {
            mode: ScanMode::default_for(n),
            workers: default_workers(),
            max_n: crate::enumerate::DEFAULT_MAX_N,
            batch_units: 128,
            checkpoint: None,
            halt_after_batches: None,
            progress: None,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers.max(1);
        self
    }

    pub fn with_mode(mut self, mode: ScanMode) -> Self {
        self.mode = mode;
        self
    }
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
}

pub fn scan_depth(n: u32) -> u32 {
    let free = (1u32 << n) - 2;
    (0..=free).find(|&d| ((1u64 << n) - 1) << d >= TARGET_UNITS).unwrap_or(free)
}

#[derive(Clone, Debug)]
pub struct SurveyOutcome {
    pub tallies: Vec<Tally>,
    pub units_done: u64,
    pub units_total: u64,
    pub resumed_from: Option<u64>,
}

impl SurveyOutcome {
    pub fn is_complete(&self) -> bool {
        self.units_done == self.units_total
    }

    pub fn into_complete(self) -> Result<Vec<Tally>> {
        if self.is_complete() {
            Ok(self.tallies)
        } else {
            Err(Error::Halted { done: self.units_done, total: self.units_total })
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
struct SurveyState {
    mode: ScanMode,
    depth: u32,
    selectors: Vec<FamilyClassSelector>,
    next_unit: u64,
    tallies: Vec<Tally>,
}

pub fn run_survey(n: u32, selectors: &[FamilyClassSelector], cfg: &ScanConfig) -> Result<SurveyOutcome> {
    check_exhaustive(n, Strategy::Recursive, cfg.max_n)?;
    let eval = Evaluator::new(n, selectors)?;
    let depth = scan_depth(n);
    let total = ((1u64 << n) - 1) << depth;

    let mut state =
        SurveyState { mode: cfg.mode, depth, selectors: selectors.to_vec(), next_unit: 0, tallies: eval.fresh() };
    let mut resumed_from = None;
    if let Some(path) = cfg.checkpoint.as_ref().filter(|p| p.exists()) {
        let cp = Checkpoint::read(path, n, Strategy::Recursive)?;
        let saved: SurveyState =
            serde_json::from_str(&cp.payload).map_err(|e| Error::CheckpointCorrupt(format!("payload: {e}")))?;
        if saved.mode != state.mode || saved.depth != depth || saved.selectors != state.selectors {
            return Err(Error::CheckpointMismatch("scan mode, split or selectors differ".into()));
        }
        if cp.token.units() != (saved.next_unit..total) || cp.token.depth() != depth {
            return Err(Error::CheckpointCorrupt("token disagrees with payload".into()));
        }
        resumed_from = Some(saved.next_unit);
        state = saved;
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .map_err(|e| Error::Io(format!("thread pool: {e}")))?;
    let table = match cfg.mode {
        ScanMode::Canonical => Some(PermTable::new(n)?),
        ScanMode::Labeled => None,
    };
    let scan_unit = |unit: u64| -> Vec<Tally> {
        let mut tallies = eval.fresh();
        let cursor = EnumerationCursor::range(n, Strategy::Recursive, depth, unit, unit + 1).expect("unit in range");
        for bits in cursor.stream() {
            let weight = match &table {
                Some(t) => match t.orbit_if_canonical(bits) {
                    Some(orbit) => orbit,
                    None => continue,
                },
                None => 1,
            };
            eval.observe(&mut tallies, bits, weight);
        }
        if let Some(p) = &cfg.progress {
            p.fetch_add(1, Ordering::Relaxed);
        }
        tallies
    };

    let batch = cfg.batch_units.max(1);
    let mut batches = 0u64;
    while state.next_unit < total {
        let hi = (state.next_unit + batch).min(total);
        let parts: Vec<Vec<Tally>> = pool.install(|| (state.next_unit..hi).into_par_iter().map(scan_unit).collect());
        for part in &parts {
            for (acc, t) in state.tallies.iter_mut().zip(part) {
                acc.merge(t);
            }
        }
        state.next_unit = hi;
        batches += 1;
        if let Some(path) = &cfg.checkpoint {
            if state.next_unit < total {
                let token = EnumerationCursor::range(n, Strategy::Recursive, depth, state.next_unit, total)?;
                let payload = serde_json::to_string(&state).map_err(|e| Error::Io(e.to_string()))?;
                Checkpoint { n, strategy: Strategy::Recursive, token, payload }.write(path)?;
            }
        }
        if cfg.halt_after_batches == Some(batches) && state.next_unit < total {
            break;
        }
    }
    if state.next_unit == total {
        if let Some(path) = cfg.checkpoint.as_ref().filter(|p| p.exists()) {
            std::fs::remove_file(path)?;
        }
    }
    Ok(SurveyOutcome { tallies: state.tallies, units_done: state.next_unit, units_total: total, resumed_from })
}

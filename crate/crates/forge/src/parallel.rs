//! Multi-threaded exploration over the work units of an exploration plan.
//!
//! Units are disjoint subtrees, so results merge without conflicts and the
//! final store does not depend on the number of workers or the order in
//! which they finish.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use omegaforge_core::explorer::{
    explore_subtree, plan, subtree_delta, ExploreBudget, ExploreError, NodeRecord, NodeStore, Plan,
    DEFAULT_SPLIT_DEPTH,
};
use omegaforge_core::omega::LedgerDelta;
use omegaforge_core::Program;

/// Run `work` on every unit with `threads` workers; results come back in
/// unit order.
fn run_units<T: Send>(units: &[Program], threads: usize, work: impl Fn(&Program) -> T + Sync) -> Vec<T> {
    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<T>>> = Mutex::new((0..units.len()).map(|_| None).collect());
    thread::scope(|s| {
        for _ in 0..threads.max(1).min(units.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(u) = units.get(i) else { break };
                let r = work(u);
                slots.lock().expect("worker panicked")[i] = Some(r);
            });
        }
    });
    slots.into_inner().expect("worker panicked").into_iter().map(|r| r.expect("every unit ran")).collect()
}

/// Result of a possibly interrupted exploration.
#[derive(Debug, Clone)]
pub struct Exploration {
    pub store: NodeStore,
    pub units_total: usize,
    pub units_done: usize,
}

impl Exploration {
    pub fn is_complete(&self) -> bool {
        self.units_done == self.units_total
    }
}

/// Explore with `threads` workers. With `stop_after = Some(k)` only the
/// first `k` units are explored, leaving a store that a later call can
/// resume.
pub fn explore_parallel(
    budget: ExploreBudget,
    resume: Option<NodeStore>,
    threads: usize,
    stop_after: Option<usize>,
) -> Result<Exploration, ExploreError> {
    let Plan { mut base, units } = plan(budget, resume, DEFAULT_SPLIT_DEPTH)?;
    let take = stop_after.unwrap_or(units.len()).min(units.len());
    let results: Vec<Vec<NodeRecord>> = run_units(&units[..take], threads, |u| explore_subtree(u, &budget));
    for r in results {
        base.extend(r);
    }
    Ok(Exploration { store: base, units_total: units.len(), units_done: take })
}

/// Ledger-only exploration; memory stays small at any depth.
pub fn delta_parallel(budget: ExploreBudget, threads: usize) -> Result<LedgerDelta, ExploreError> {
    let Plan { base, units } = plan(budget, None, DEFAULT_SPLIT_DEPTH)?;
    let mut delta = base.delta();
    for d in run_units(&units, threads, |u| subtree_delta(u, &budget)) {
        delta.merge(&d);
    }
    Ok(delta)
}

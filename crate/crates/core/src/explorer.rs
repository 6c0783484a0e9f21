//! Enumeration of the program prefix tree.
//!
//! Every node is a bit string. Running it either halts having read exactly
//! its bits, needs another bit (the node is expanded into its two
//! children), faults, provably diverges, or exhausts the step budget. Nodes
//! below `max_len` that still need bits are recorded as `UNKNOWN`.
//!
//! Exploration is split into independent units (disjoint subtrees) so that
//! callers can run them on any number of threads. The resulting
//! [`NodeStore`] is a sorted map and does not depend on the order in which
//! units were finished.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::{Bits, Program};
use crate::bitvm::{run_plain, DivergenceProof, Machine, Output, RunOutcome, Stop};
use crate::omega::{LedgerDelta, MassLedger};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExploreBudget {
    /// Longest program explored. `0` explores only the empty program.
    pub max_len: usize,
    pub max_steps: u64,
}

impl ExploreBudget {
    pub fn new(max_len: usize, max_steps: u64) -> Result<Self, ExploreError> {
        if max_steps == 0 {
            return Err(ExploreError::InvalidBudget);
        }
        Ok(ExploreBudget { max_len, max_steps })
    }

    /// `self` explores at least everything `other` does.
    pub fn covers(&self, other: &ExploreBudget) -> bool {
        self.max_len >= other.max_len && self.max_steps >= other.max_steps
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeStatus {
    Halt,
    DivergeCycle,
    DivergeMono,
    Invalid,
    Unknown,
    Expanded,
}

impl NodeStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            NodeStatus::Halt => "HALT",
            NodeStatus::DivergeCycle => "DIVERGE_CYCLE",
            NodeStatus::DivergeMono => "DIVERGE_MONO",
            NodeStatus::Invalid => "INVALID",
            NodeStatus::Unknown => "UNKNOWN",
            NodeStatus::Expanded => "EXPANDED",
        }
    }

    pub fn parse(s: &str) -> Option<NodeStatus> {
        Some(match s {
            "HALT" => NodeStatus::Halt,
            "DIVERGE_CYCLE" => NodeStatus::DivergeCycle,
            "DIVERGE_MONO" => NodeStatus::DivergeMono,
            "INVALID" => NodeStatus::Invalid,
            "UNKNOWN" => NodeStatus::Unknown,
            "EXPANDED" => NodeStatus::Expanded,
            _ => return None,
        })
    }

    pub fn is_divergent(self) -> bool {
        matches!(self, NodeStatus::DivergeCycle | NodeStatus::DivergeMono)
    }

    /// Halting, divergent or invalid: fixed for every larger budget.
    pub fn is_decided(self) -> bool {
        matches!(
            self,
            NodeStatus::Halt | NodeStatus::DivergeCycle | NodeStatus::DivergeMono | NodeStatus::Invalid
        )
    }
}

impl fmt::Display for NodeStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeRecord {
    pub program: Program,
    pub status: NodeStatus,
    /// Present for `HALT` only.
    pub output: Option<Output>,
    /// Steps used when the status was decided.
    pub steps: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExploreError {
    InvalidBudget,
    /// A resumed store was explored with a larger budget than requested.
    BudgetShrunk { stored: ExploreBudget, requested: ExploreBudget },
}

impl fmt::Display for ExploreError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExploreError::InvalidBudget => f.write_str("step budget must be at least 1"),
            ExploreError::BudgetShrunk { stored, requested } => write!(
                f,
                "cannot resume a max_len={} max_steps={} store with the smaller budget max_len={} max_steps={}",
                stored.max_len, stored.max_steps, requested.max_len, requested.max_steps
            ),
        }
    }
}

fn record_status(program: &Program, stop: Stop, budget: &ExploreBudget) -> NodeStatus {
    match stop {
        Stop::Halted => NodeStatus::Halt,
        Stop::NeedsBit if program.len() >= budget.max_len => NodeStatus::Unknown,
        Stop::NeedsBit => NodeStatus::Expanded,
        Stop::Invalid(_) => NodeStatus::Invalid,
        Stop::Diverges(DivergenceProof::Cycle) => NodeStatus::DivergeCycle,
        Stop::Diverges(DivergenceProof::MonotoneCycle) => NodeStatus::DivergeMono,
        Stop::Unknown => NodeStatus::Unknown,
    }
}

fn record(program: &Program, stop: Stop, machine: &Machine, budget: &ExploreBudget) -> NodeRecord {
    let status = record_status(program, stop, budget);
    let output = (status == NodeStatus::Halt).then(|| machine.state().output.clone());
    NodeRecord { program: program.clone(), status, output, steps: machine.state().steps }
}

/// Classify one node by running it from scratch.
pub fn classify_node(program: &Program, budget: &ExploreBudget) -> NodeRecord {
    let mut m = Machine::new(true);
    let stop = m.resume(program.as_slice(), budget.max_steps);
    record(program, stop, &m, budget)
}

/// Explore the subtree rooted at `root`, depth-first with children in
/// 0-then-1 order. Children of expanded nodes at depth `split_at` are not
/// entered but returned as deferred roots.
pub fn explore_tree(
    root: &Program,
    budget: &ExploreBudget,
    split_at: Option<usize>,
) -> (Vec<NodeRecord>, Vec<Program>) {
    let mut records = Vec::new();
    let mut deferred = Vec::new();
    let mut m = Machine::new(true);
    let stop = m.resume(root.as_slice(), budget.max_steps);
    let mut stack = vec![(root.clone(), m, stop)];
    while let Some((program, machine, stop)) = stack.pop() {
        let rec = record(&program, stop, &machine, budget);
        let expand = rec.status == NodeStatus::Expanded;
        records.push(rec);
        if !expand {
            continue;
        }
        if split_at.is_some_and(|d| program.len() + 1 >= d) {
            deferred.push(program.child(false));
            deferred.push(program.child(true));
            continue;
        }
        // push 1 first so 0 is visited first
        for bit in [true, false] {
            let child = program.child(bit);
            let mut cm = machine.clone();
            let cs = cm.resume(child.as_slice(), budget.max_steps);
            stack.push((child, cm, cs));
        }
    }
    (records, deferred)
}

/// All nodes below `root`, including `root` itself.
pub fn explore_subtree(root: &Program, budget: &ExploreBudget) -> Vec<NodeRecord> {
    explore_tree(root, budget, None).0
}

/// Visit every node below `root` (including `root`) without keeping any of
/// them, so memory stays proportional to the tree depth. Nodes are visited
/// in the same order as [`explore_subtree`].
pub fn walk_subtree(root: &Program, budget: &ExploreBudget, mut visit: impl FnMut(&Program, NodeStatus, &Machine)) {
    let mut m = Machine::new(true);
    let stop = m.resume(root.as_slice(), budget.max_steps);
    let mut stack = vec![(root.clone(), m, stop)];
    while let Some((program, machine, stop)) = stack.pop() {
        let status = record_status(&program, stop, budget);
        visit(&program, status, &machine);
        if status == NodeStatus::Expanded {
            for bit in [true, false] {
                let child = program.child(bit);
                let mut cm = machine.clone();
                let cs = cm.resume(child.as_slice(), budget.max_steps);
                stack.push((child, cm, cs));
            }
        }
    }
}

/// Per-length counts of the subtree at `root`.
pub fn subtree_delta(root: &Program, budget: &ExploreBudget) -> LedgerDelta {
    let mut delta = LedgerDelta::default();
    walk_subtree(root, budget, |p, status, _| delta.record(status, p.len()));
    delta
}

/// Sequential ledger-only exploration of the whole tree.
pub fn explore_delta(budget: ExploreBudget) -> Result<LedgerDelta, ExploreError> {
    let Plan { base, units } = plan(budget, None, DEFAULT_SPLIT_DEPTH)?;
    let mut delta = base.delta();
    for u in &units {
        delta.merge(&subtree_delta(u, &budget));
    }
    Ok(delta)
}

/// Re-run a divergent node without the divergence detector for
/// `factor` times the steps it took to decide (at least `floor` steps).
/// Returns `false` if the program halts or faults within that budget,
/// which would make the divergence proof unsound.
pub fn recheck_divergence(record: &NodeRecord, factor: u64, floor: u64) -> bool {
    debug_assert!(record.status.is_divergent());
    let budget = record.steps.saturating_mul(factor).max(floor);
    matches!(run_plain(&record.program, budget), RunOutcome::Unknown { .. })
}

/// The classified nodes of one exploration, keyed by program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeStore {
    budget: ExploreBudget,
    records: BTreeMap<Program, NodeRecord>,
}

impl NodeStore {
    pub fn new(budget: ExploreBudget) -> Self {
        NodeStore { budget, records: BTreeMap::new() }
    }

    pub fn from_records(budget: ExploreBudget, records: impl IntoIterator<Item = NodeRecord>) -> Self {
        let mut s = NodeStore::new(budget);
        s.extend(records);
        s
    }

    pub fn budget(&self) -> ExploreBudget {
        self.budget
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }

    pub fn get(&self, program: &Program) -> Option<&NodeRecord> {
        self.records.get(program)
    }

    /// Records in lexicographic program order.
    pub fn records(&self) -> impl Iterator<Item = &NodeRecord> {
        self.records.values()
    }

    pub fn extend(&mut self, records: impl IntoIterator<Item = NodeRecord>) {
        for r in records {
            self.records.insert(r.program.clone(), r);
        }
    }

    /// Union of two stores over disjoint subtrees. Order-independent.
    pub fn merge(&mut self, other: NodeStore) {
        self.extend(other.records.into_values());
    }

    pub fn halting(&self) -> impl Iterator<Item = &NodeRecord> {
        self.records().filter(|r| r.status == NodeStatus::Halt)
    }

    /// Programs whose fate has not been looked at yet: the root of an empty
    /// store, and missing children of expanded nodes.
    pub fn open_roots(&self) -> Vec<Program> {
        if self.records.is_empty() {
            return vec![Bits::new()];
        }
        let mut open = Vec::new();
        for r in self.records.values().filter(|r| r.status == NodeStatus::Expanded) {
            for bit in [false, true] {
                let child = r.program.child(bit);
                if !self.records.contains_key(&child) {
                    open.push(child);
                }
            }
        }
        open
    }

    /// No expanded node is missing a child.
    pub fn is_closed(&self) -> bool {
        !self.records.is_empty() && self.open_roots().is_empty()
    }

    /// Per-length counts of halting, refuted and unknown nodes.
    pub fn delta(&self) -> LedgerDelta {
        let mut d = LedgerDelta::default();
        for r in self.records.values() {
            d.record(r.status, r.program.len());
        }
        d
    }

    pub fn ledger(&self) -> MassLedger {
        MassLedger::from_delta(&self.delta())
    }

    /// How `program`, taken as a complete input, fares according to this
    /// store. Programs that extend a halting or refuted node, or that stop
    /// asking for bits before their end, are not halting programs.
    pub fn verdict(&self, program: &Program) -> Verdict {
        if let Some(r) = self.records.get(program) {
            return match r.status {
                NodeStatus::Halt => Verdict::Halts,
                NodeStatus::Expanded => Verdict::NeverHalts,
                NodeStatus::Unknown => {
                    // either it wants more bits (never halts as given) or
                    // it ran out of steps
                    let mut m = Machine::new(true);
                    match m.resume(program.as_slice(), self.budget.max_steps) {
                        Stop::NeedsBit => Verdict::NeverHalts,
                        _ => Verdict::Undecided,
                    }
                }
                _ => Verdict::NeverHalts,
            };
        }
        for n in (0..program.len()).rev() {
            if let Some(r) = self.records.get(&program.prefix(n)) {
                return match r.status {
                    NodeStatus::Expanded => Verdict::Undecided,
                    NodeStatus::Unknown if n >= self.budget.max_len => Verdict::Undecided,
                    _ => Verdict::NeverHalts,
                };
            }
        }
        Verdict::Undecided
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Halts,
    NeverHalts,
    Undecided,
}

/// Default depth at which fresh explorations are cut into work units.
pub const DEFAULT_SPLIT_DEPTH: usize = 10;

/// Work that remains after the shared trunk of an exploration.
#[derive(Debug, Clone)]
pub struct Plan {
    /// Records already classified (resumed or trunk).
    pub base: NodeStore,
    /// Disjoint subtree roots still to explore, in lexicographic order.
    pub units: Vec<Program>,
}

/// Prepare an exploration, optionally continuing `resume`.
///
/// A resumed store keeps every decided node (halting, divergent, invalid and
/// expanded nodes never change under a larger budget). Its unknown nodes are
/// re-queued when the budget grew, along with any subtree that was never
/// reached.
pub fn plan(budget: ExploreBudget, resume: Option<NodeStore>, split_depth: usize) -> Result<Plan, ExploreError> {
    if budget.max_steps == 0 {
        return Err(ExploreError::InvalidBudget);
    }
    let mut units = Vec::new();
    let base = match resume {
        Some(stored) if !stored.is_empty() => {
            if !budget.covers(&stored.budget) {
                return Err(ExploreError::BudgetShrunk { stored: stored.budget, requested: budget });
            }
            let grew = budget != stored.budget;
            let mut base = NodeStore::new(budget);
            units.extend(stored.open_roots());
            for (p, r) in stored.records {
                if grew && r.status == NodeStatus::Unknown {
                    units.push(p);
                } else {
                    base.records.insert(p, r);
                }
            }
            base
        }
        _ => {
            let (records, deferred) = explore_tree(&Bits::new(), &budget, Some(split_depth.max(1)));
            units = deferred;
            NodeStore::from_records(budget, records)
        }
    };
    units.sort();
    Ok(Plan { base, units })
}

/// Sequential exploration. Equivalent to running every unit of [`plan`]
/// on any number of workers and merging.
pub fn explore(budget: ExploreBudget, resume: Option<NodeStore>) -> Result<NodeStore, ExploreError> {
    let Plan { mut base, units } = plan(budget, resume, DEFAULT_SPLIT_DEPTH)?;
    for u in &units {
        base.extend(explore_subtree(u, &budget));
    }
    Ok(base)
}

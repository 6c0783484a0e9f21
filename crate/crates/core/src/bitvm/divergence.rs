//! Sound non-termination proofs for runs that have stopped requesting bits.
//!
//! Two rules are implemented:
//!
//! * **Cycle**: an exact control state `(pc, A, B, frontier)` recurs. The
//!   output is excluded from the state because no instruction reads it.
//! * **Monotone cycle**: the same `(pc, frontier)` recurs with both registers
//!   no smaller than before, and every `DECJNZ` executed in between took its
//!   register-positive branch. Replaying the segment from larger registers
//!   takes the same branches, so the segment repeats forever.
//!
//! [`Detector`] applies both rules online in constant space per step;
//! [`prove_divergence`] applies them exhaustively to a recorded trace.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DivergenceProof {
    Cycle,
    MonotoneCycle,
}

/// The part of the machine state that determines control flow.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ControlState {
    pub pc: usize,
    pub reg_a: u64,
    pub reg_b: u64,
    pub frontier: usize,
}

/// One entry per executed instruction: the state before it ran, and whether
/// it was a `DECJNZ` that found its register at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TraceEntry {
    pub state: ControlState,
    pub zero_branch: bool,
}

type Sighting = (u64, u64, u64);

/// Scan a trace for the first point at which either rule fires.
pub fn prove_divergence(trace: &[TraceEntry]) -> Option<DivergenceProof> {
    // (pc, frontier) -> visits as (A, B, zero branches before it)
    let mut visits: BTreeMap<(usize, usize), Vec<Sighting>> = BTreeMap::new();
    let mut zeros_before = 0u64;
    for entry in trace {
        let s = entry.state;
        let seen = visits.entry((s.pc, s.frontier)).or_default();
        if seen.iter().any(|&(a, b, _)| a == s.reg_a && b == s.reg_b) {
            return Some(DivergenceProof::Cycle);
        }
        if seen
            .iter()
            .any(|&(a, b, z)| a <= s.reg_a && b <= s.reg_b && z == zeros_before)
        {
            return Some(DivergenceProof::MonotoneCycle);
        }
        seen.push((s.reg_a, s.reg_b, zeros_before));
        if entry.zero_branch {
            zeros_before += 1;
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Visit {
    reg_a: u64,
    reg_b: u64,
    zero_branches: u64,
}

/// Online detector. Compares each state against the previous visit to the
/// same instruction (catches both rules for simple loops) and runs Brent's
/// cycle finder over full control states (catches exact cycles whose period
/// spans several visits to one instruction).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Detector {
    frontier: usize,
    last_visit: Vec<Option<Visit>>,
    zero_branches: u64,
    saved: Option<ControlState>,
    power: u64,
    lam: u64,
}

impl Detector {
    pub fn new() -> Self {
        Self::default()
    }

    fn reset(&mut self, frontier: usize) {
        self.frontier = frontier;
        self.last_visit.clear();
        self.saved = None;
        self.power = 1;
        self.lam = 0;
    }

    /// Record that a `DECJNZ` just took its zero branch.
    pub fn note_zero_branch(&mut self) {
        self.zero_branches += 1;
    }

    /// Observe the state about to execute.
    pub fn observe(&mut self, s: ControlState) -> Option<DivergenceProof> {
        if s.frontier != self.frontier || self.saved.is_none() {
            // a new instruction was decoded: nothing earlier can recur
            self.reset(s.frontier);
        }

        if self.last_visit.len() <= s.pc {
            self.last_visit.resize(s.pc + 1, None);
        }
        if let Some(v) = self.last_visit[s.pc] {
            if v.reg_a == s.reg_a && v.reg_b == s.reg_b {
                return Some(DivergenceProof::Cycle);
            }
            if v.reg_a <= s.reg_a && v.reg_b <= s.reg_b && v.zero_branches == self.zero_branches {
                return Some(DivergenceProof::MonotoneCycle);
            }
        }
        self.last_visit[s.pc] = Some(Visit {
            reg_a: s.reg_a,
            reg_b: s.reg_b,
            zero_branches: self.zero_branches,
        });

        if self.saved == Some(s) {
            return Some(DivergenceProof::Cycle);
        }
        self.lam += 1;
        if self.saved.is_none() || self.lam == self.power {
            self.saved = Some(s);
            self.power *= 2;
            self.lam = 0;
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(pc: usize, a: u64, b: u64) -> ControlState {
        ControlState { pc, reg_a: a, reg_b: b, frontier: 10 }
    }

    fn entry(pc: usize, a: u64, b: u64, zero: bool) -> TraceEntry {
        TraceEntry { state: st(pc, a, b), zero_branch: zero }
    }

    #[test]
    fn exact_recurrence_is_a_cycle() {
        let t = [entry(0, 0, 0, false), entry(1, 1, 0, false), entry(0, 0, 0, false)];
        assert_eq!(prove_divergence(&t), Some(DivergenceProof::Cycle));
    }

    #[test]
    fn growth_without_zero_branch_is_monotone() {
        let t = [entry(0, 1, 0, false), entry(1, 2, 0, false), entry(0, 2, 0, false)];
        assert_eq!(prove_divergence(&t), Some(DivergenceProof::MonotoneCycle));
    }

    #[test]
    fn zero_branch_blocks_monotone_rule() {
        let t = [
            entry(0, 1, 0, false),
            entry(1, 2, 0, true),
            entry(2, 2, 0, false),
            entry(0, 2, 0, false),
        ];
        assert_eq!(prove_divergence(&t), None);
    }

    #[test]
    fn frontier_separates_states() {
        let mut t = vec![entry(0, 0, 0, false)];
        t.push(TraceEntry { state: ControlState { frontier: 14, ..st(0, 0, 0) }, zero_branch: false });
        assert_eq!(prove_divergence(&t), None);
    }

    #[test]
    fn online_detector_finds_long_period_cycle() {
        // period-3 cycle through pc 0 with varying registers at pc 0
        let seq = [st(0, 0, 0), st(1, 1, 0), st(0, 1, 1), st(1, 0, 1), st(0, 1, 0), st(1, 0, 0)];
        let mut d = Detector::new();
        let mut found = None;
        for s in seq.iter().cycle().take(100) {
            if let Some(p) = d.observe(*s) {
                found = Some(p);
                break;
            }
            // every step is a zero-branch DECJNZ, so only exact recurrence counts
            d.note_zero_branch();
        }
        assert_eq!(found, Some(DivergenceProof::Cycle));
    }
}

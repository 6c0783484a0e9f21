//! Exact mass accounting over the program tree and the halting-probability
//! bits it pins down.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::bits::{Bits, Program};
use crate::dyadic::Dyadic;
use crate::explorer::{plan, walk_subtree, ExploreBudget, ExploreError, NodeStatus, Plan, DEFAULT_SPLIT_DEPTH};

/// Per-length node counts. Merging two deltas is plain addition, so deltas
/// from disjoint subtrees combine in any order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LedgerDelta {
    pub halt: Vec<u64>,
    pub refuted: Vec<u64>,
    pub unknown: Vec<u64>,
}

fn bump(v: &mut Vec<u64>, len: usize, by: u64) {
    if v.len() <= len {
        v.resize(len + 1, 0);
    }
    v[len] += by;
}

impl LedgerDelta {
    /// Account one classified node of length `len`. Expanded nodes carry no
    /// mass of their own: their children do.
    pub fn record(&mut self, status: NodeStatus, len: usize) {
        match status {
            NodeStatus::Halt => bump(&mut self.halt, len, 1),
            NodeStatus::DivergeCycle | NodeStatus::DivergeMono | NodeStatus::Invalid => {
                bump(&mut self.refuted, len, 1)
            }
            NodeStatus::Unknown => bump(&mut self.unknown, len, 1),
            NodeStatus::Expanded => {}
        }
    }

    pub fn merge(&mut self, other: &LedgerDelta) {
        for (dst, src) in [
            (&mut self.halt, &other.halt),
            (&mut self.refuted, &other.refuted),
            (&mut self.unknown, &other.unknown),
        ] {
            for (len, &c) in src.iter().enumerate() {
                if c != 0 {
                    bump(dst, len, c);
                }
            }
        }
    }

    pub fn halt_mass(&self) -> Dyadic {
        Dyadic::from_length_counts(&self.halt)
    }

    pub fn refuted_mass(&self) -> Dyadic {
        Dyadic::from_length_counts(&self.refuted)
    }

    /// Mass of explicitly unknown nodes (equals the ledger's unknown mass
    /// only when the tree is closed).
    pub fn unknown_mass(&self) -> Dyadic {
        Dyadic::from_length_counts(&self.unknown)
    }
}

/// Exact split of the unit interval of infinite bit streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MassLedger {
    pub halt: Dyadic,
    pub refuted: Dyadic,
    /// Everything not yet halting or refuted, explored or not.
    pub unknown: Dyadic,
}

impl MassLedger {
    pub fn vacuous() -> Self {
        MassLedger { halt: Dyadic::zero(), refuted: Dyadic::zero(), unknown: Dyadic::one() }
    }

    pub fn from_delta(d: &LedgerDelta) -> Self {
        let halt = d.halt_mass();
        let refuted = d.refuted_mass();
        let decided = &halt + &refuted;
        let unknown = Dyadic::one()
            .checked_sub(&decided)
            .expect("decided mass of a prefix-free set exceeds 1");
        MassLedger { halt, refuted, unknown }
    }

    /// All three masses add up to exactly one.
    pub fn is_partition(&self) -> bool {
        &(&self.halt + &self.refuted) + &self.unknown == Dyadic::one()
    }

    pub fn lower(&self) -> Dyadic {
        self.halt.clone()
    }

    pub fn upper(&self) -> Dyadic {
        &self.halt + &self.unknown
    }
}

/// Leading bits of the halting probability that every value in
/// `[lower, upper]` shares.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaBits {
    pub certified: Bits,
    pub lower: Dyadic,
    pub upper: Dyadic,
}

impl OmegaBits {
    pub fn len(&self) -> usize {
        self.certified.len()
    }

    pub fn is_empty(&self) -> bool {
        self.certified.is_empty()
    }

    /// The first `n` certified bits, keeping the same enclosing interval.
    pub fn truncate(&self, n: usize) -> OmegaBits {
        OmegaBits { certified: self.certified.prefix(n), ..self.clone() }
    }

    /// `0.b₁b₂…b_k` as an exact dyadic.
    pub fn value(&self) -> Dyadic {
        bits_value(&self.certified)
    }

    /// `0.b₁b₂…` text form.
    pub fn binary_text(&self) -> String {
        use core::fmt::Write;
        let mut s = String::from("0.");
        let _ = write!(s, "{}", self.certified);
        s
    }
}

/// `Σ bᵢ 2^-i`.
pub fn bits_value(bits: &Bits) -> Dyadic {
    let mut counts = alloc::vec![0u64; bits.len() + 1];
    for (i, b) in bits.iter().enumerate() {
        counts[i + 1] = b as u64;
    }
    Dyadic::from_length_counts(&counts)
}

/// Certify leading bits: bit `i` is certified when `⌊lower·2^i⌋` equals
/// `⌊upper·2^i⌋`, and certification stops at the first disagreement. A
/// point interval certifies exactly the digits of its finite expansion.
pub fn certify_bits(ledger: &MassLedger) -> OmegaBits {
    let lower = ledger.lower();
    let upper = ledger.upper();
    let limit = lower.exponent().max(upper.exponent());
    let mut certified = Bits::new();
    for i in 1..=limit {
        let lo = lower.floor_scaled(i);
        if lo != upper.floor_scaled(i) {
            break;
        }
        certified.push(lo.bit(0));
    }
    OmegaBits { certified, lower, upper }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleAnswer {
    Halts,
    Diverges,
}

impl OracleAnswer {
    pub fn as_str(self) -> &'static str {
        match self {
            OracleAnswer::Halts => "HALTS",
            OracleAnswer::Diverges => "DIVERGES",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleError {
    /// Halting mass never reached the target within the ladder.
    NotConverged { reached: ExploreBudget },
    /// Upper bound fell below the claimed bits: they are not this machine's.
    InconsistentBits { upper: Dyadic, target: Dyadic },
    QueryTooLong { query_len: usize, certified: usize },
    Explore(ExploreError),
}

impl fmt::Display for OracleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleError::NotConverged { reached } => write!(
                f,
                "NOT_CONVERGED: halting mass stayed below the target up to max_len={} max_steps={}",
                reached.max_len, reached.max_steps
            ),
            OracleError::InconsistentBits { upper, target } => write!(
                f,
                "NOT_CONVERGED: supplied bits claim at least {} but at most {} can halt",
                target, upper
            ),
            OracleError::QueryTooLong { query_len, certified } => write!(
                f,
                "query has {} bits but only {} bits are certified",
                query_len, certified
            ),
            OracleError::Explore(e) => write!(f, "{}", e),
        }
    }
}

/// Budgets tried, in order, while dovetailing towards the target mass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleLadder {
    pub start: ExploreBudget,
    pub len_step: usize,
    pub steps_factor: u64,
    pub cap: ExploreBudget,
}

impl OracleLadder {
    pub fn up_to(cap: ExploreBudget) -> Self {
        OracleLadder {
            start: ExploreBudget { max_len: cap.max_len.min(8), max_steps: cap.max_steps.min(1000) },
            len_step: 2,
            steps_factor: 10,
            cap,
        }
    }

    fn rungs(&self) -> Vec<ExploreBudget> {
        let mut out = Vec::new();
        let mut cur = self.start;
        loop {
            out.push(cur);
            if cur == self.cap {
                return out;
            }
            cur = ExploreBudget {
                max_len: (cur.max_len + self.len_step.max(1)).min(self.cap.max_len),
                max_steps: cur.max_steps.saturating_mul(self.steps_factor.max(2)).min(self.cap.max_steps),
            };
        }
    }
}

/// The halting set for all programs up to `N` bits, recovered from `N`
/// certified bits by exploring until the halting mass reaches `0.b₁…b_N`.
/// Any program of at most `N` bits not found by then would add at least
/// `2^-N`, pushing the mass past the truncation of the true value.
#[derive(Debug, Clone)]
pub struct HaltingOracle {
    n: usize,
    halting: Vec<Program>,
    reached: ExploreBudget,
}

impl HaltingOracle {
    pub fn converge(bits: &OmegaBits, ladder: &OracleLadder) -> Result<HaltingOracle, OracleError> {
        let n = bits.len();
        let target = bits.value();
        let mut reached = ladder.start;
        for rung in ladder.rungs() {
            let Plan { base, units } = plan(rung, None, DEFAULT_SPLIT_DEPTH).map_err(OracleError::Explore)?;
            let mut delta = base.delta();
            let mut halting: Vec<Program> =
                base.halting().filter(|r| r.program.len() <= n).map(|r| r.program.clone()).collect();
            for u in &units {
                walk_subtree(u, &rung, |p, status, _| {
                    delta.record(status, p.len());
                    if status == NodeStatus::Halt && p.len() <= n {
                        halting.push(p.clone());
                    }
                });
            }
            reached = rung;
            let ledger = MassLedger::from_delta(&delta);
            if ledger.halt >= target {
                halting.sort();
                return Ok(HaltingOracle { n, halting, reached });
            }
            let upper = ledger.upper();
            if upper < target {
                return Err(OracleError::InconsistentBits { upper, target });
            }
        }
        Err(OracleError::NotConverged { reached })
    }

    pub fn certified_len(&self) -> usize {
        self.n
    }

    /// The budget at which the halting mass reached the target.
    pub fn converged_at(&self) -> ExploreBudget {
        self.reached
    }

    pub fn query(&self, program: &Program) -> Result<OracleAnswer, OracleError> {
        if program.len() > self.n {
            return Err(OracleError::QueryTooLong { query_len: program.len(), certified: self.n });
        }
        Ok(if self.halting.binary_search(program).is_ok() {
            OracleAnswer::Halts
        } else {
            OracleAnswer::Diverges
        })
    }
}

/// Decide whether `query` halts using certified bits alone.
pub fn halting_oracle_from_omega(
    bits: &OmegaBits,
    query: &Program,
    ladder: &OracleLadder,
) -> Result<OracleAnswer, OracleError> {
    if query.len() > bits.len() {
        return Err(OracleError::QueryTooLong { query_len: query.len(), certified: bits.len() });
    }
    HaltingOracle::converge(bits, ladder)?.query(query)
}

/// Overlapping block counts over a bit string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockFrequencies {
    pub block_size: usize,
    pub windows: u64,
    /// Observed blocks only.
    pub counts: BTreeMap<Bits, u64>,
}

impl BlockFrequencies {
    pub fn frequency(&self, block: &Bits) -> f64 {
        self.counts.get(block).copied().unwrap_or(0) as f64 / self.windows as f64
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrefixTooShort {
    pub len: usize,
    pub block_size: usize,
}

impl fmt::Display for PrefixTooShort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "prefix of {} bits is shorter than block size {}", self.len, self.block_size)
    }
}

/// Relative frequencies of every `block_size`-bit window. Reported, never
/// judged: a finite prefix says nothing about limiting frequencies.
pub fn block_frequency_report(bits: &Bits, block_size: usize) -> Result<BlockFrequencies, PrefixTooShort> {
    if block_size == 0 || block_size > bits.len() {
        return Err(PrefixTooShort { len: bits.len(), block_size });
    }
    let mut counts = BTreeMap::new();
    let s = bits.as_slice();
    for w in s.windows(block_size) {
        *counts.entry(Bits::from(w)).or_insert(0) += 1;
    }
    Ok(BlockFrequencies { block_size, windows: (s.len() - block_size + 1) as u64, counts })
}

#[derive(Debug, Clone)]
pub struct ProgressInput {
    pub machine_version: String,
    pub budget: ExploreBudget,
    pub ledger: MassLedger,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProgressRow {
    pub budget: ExploreBudget,
    pub certified_bits: usize,
    pub unknown_mass: Dyadic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixedVersions {
    pub expected: String,
    pub found: String,
}

impl fmt::Display for MixedVersions {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "machine version {} does not match {}", self.found, self.expected)
    }
}

/// One row per checkpoint: budget, number of certified bits, unknown mass.
pub fn progress_report(checkpoints: &[ProgressInput]) -> Result<Vec<ProgressRow>, MixedVersions> {
    if let Some(first) = checkpoints.first() {
        if let Some(bad) = checkpoints.iter().find(|c| c.machine_version != first.machine_version) {
            return Err(MixedVersions {
                expected: first.machine_version.clone(),
                found: bad.machine_version.clone(),
            });
        }
    }
    Ok(checkpoints
        .iter()
        .map(|c| ProgressRow {
            budget: c.budget,
            certified_bits: certify_bits(&c.ledger).len(),
            unknown_mass: c.ledger.unknown.clone(),
        })
        .collect())
}

/// Rows whose budgets form a refinement chain never lose certified bits.
pub fn is_monotone(rows: &[ProgressRow]) -> bool {
    rows.windows(2).all(|w| !w[1].budget.covers(&w[0].budget) || w[1].certified_bits >= w[0].certified_bits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn d(s: &str) -> Dyadic {
        s.parse().unwrap()
    }

    #[test]
    fn vacuous_ledger_certifies_nothing() {
        let o = certify_bits(&MassLedger::vacuous());
        assert!(o.is_empty());
        assert_eq!(o.lower, Dyadic::zero());
        assert_eq!(o.upper, Dyadic::one());
    }

    #[test]
    fn point_interval() {
        let l = MassLedger { halt: d("1/2^3"), refuted: d("7/2^3"), unknown: Dyadic::zero() };
        let o = certify_bits(&l);
        assert_eq!(o.certified.to_string(), "001");
        assert_eq!(o.lower, o.upper);
        assert_eq!(o.value(), d("1/2^3"));
    }

    #[test]
    fn boundary_is_conservative() {
        // [0.0111, 0.1000]: the first bit is not certified
        let l = MassLedger { halt: d("7/2^4"), refuted: d("1/2^1"), unknown: d("1/2^4") };
        assert!(l.is_partition());
        assert!(certify_bits(&l).is_empty());
        // [0.0100, 0.0110]: "01" certified
        let l = MassLedger { halt: d("1/2^2"), refuted: d("5/2^3"), unknown: d("1/2^3") };
        assert_eq!(certify_bits(&l).certified.to_string(), "01");
    }

    #[test]
    fn blocks() {
        let f = block_frequency_report(&"0101".parse().unwrap(), 1).unwrap();
        assert_eq!(f.windows, 4);
        assert_eq!(f.frequency(&"0".parse().unwrap()), 0.5);
        assert_eq!(f.frequency(&"1".parse().unwrap()), 0.5);
        let f = block_frequency_report(&"0000".parse().unwrap(), 2).unwrap();
        assert_eq!(f.counts.len(), 1);
        assert_eq!(f.frequency(&"00".parse().unwrap()), 1.0);
        assert!(block_frequency_report(&"01".parse().unwrap(), 3).is_err());
    }

    #[test]
    fn progress_rejects_mixed_versions() {
        let b = ExploreBudget { max_len: 1, max_steps: 1 };
        let mk = |v: &str| ProgressInput {
            machine_version: v.into(),
            budget: b,
            ledger: MassLedger::vacuous(),
        };
        assert!(progress_report(&[mk("a"), mk("b")]).is_err());
        let rows = progress_report(&[mk("a")]).unwrap();
        assert_eq!(rows[0].certified_bits, 0);
    }

    #[test]
    fn delta_merge_is_commutative() {
        let mut a = LedgerDelta::default();
        a.record(NodeStatus::Halt, 3);
        a.record(NodeStatus::Unknown, 7);
        let mut b = LedgerDelta::default();
        b.record(NodeStatus::Invalid, 5);
        b.record(NodeStatus::Halt, 9);
        let mut ab = a.clone();
        ab.merge(&b);
        let mut ba = b.clone();
        ba.merge(&a);
        assert_eq!(ab.halt_mass(), ba.halt_mass());
        assert_eq!(ab.refuted_mass(), ba.refuted_mass());
        assert_eq!(ab.unknown_mass(), ba.unknown_mass());
        assert_eq!(ab.halt_mass().to_string(), "65/2^9");
    }
}
